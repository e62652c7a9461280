#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

#include "rca/clopen.hpp"

namespace rca {

uint64_t checked_pow(uint64_t base, int exp, uint64_t cap) {
  uint64_t v = 1;
  for (int i = 0; i < exp; ++i) {
    if (v > cap / base) return cap;
    v *= base;
  }
  return std::min(v, cap);
}

std::string Word::str() const {
  std::ostringstream os;
  bool digits = alphabet.size() <= 10;
  for (int i = 0; i < size(); ++i) {
    if (!digits && i) os << ',';
    os << static_cast<int>(symbols[i]);
  }
  return os.str();
}

Word Word::parse(const Alphabet& a, const std::string& text) {
  std::vector<Symbol> syms;
  if (a.size() <= 10 && text.find(',') == std::string::npos) {
    for (char c : text) {
      if (c == ' ') continue;
      if (c < '0' || c > '9') throw std::invalid_argument("bad word literal");
      syms.push_back(static_cast<Symbol>(c - '0'));
    }
  } else if (!text.empty()) {
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ',')) syms.push_back(static_cast<Symbol>(std::stoi(part)));
  }
  return Word(a, std::move(syms));
}

uint64_t word_rank(const Word& w) {
  uint64_t r = 0;
  for (int i = 0; i < w.size(); ++i) r = r * w.alphabet.size() + w[i];
  return r;
}

Word word_unrank(const Alphabet& a, int len, uint64_t rank) {
  std::vector<Symbol> s(len);
  for (int i = len - 1; i >= 0; --i) {
    s[i] = static_cast<Symbol>(rank % a.size());
    rank /= a.size();
  }
  return Word(a, std::move(s));
}

bool SupportedConfig::equals(const SupportedConfig& o) const {
  if (!alphabet.same_symbols(o.alphabet)) return false;
  long long a = std::min(center_start, o.center_start);
  long long b = std::max(center_end(), o.center_end());
  long long pl = std::lcm<long long>(left.size(), o.left.size());
  long long pr = std::lcm<long long>(right.size(), o.right.size());
  for (long long i = a - pl; i < b + pr; ++i)
    if (cell(i) != o.cell(i)) return false;
  return true;
}

std::string SupportedConfig::str() const {
  std::string s = left.str() + "|" + center.str() + "|" + right.str();
  if (center_start != 0) s += "@" + std::to_string(center_start);
  return s;
}

SupportedConfig SupportedConfig::parse(const Alphabet& a, const std::string& text) {
  std::string body = text;
  long long start = 0;
  if (auto at = body.rfind('@'); at != std::string::npos) {
    start = std::stoll(body.substr(at + 1));
    body = body.substr(0, at);
  }
  auto p1 = body.find('|');
  auto p2 = body.rfind('|');
  if (p1 == std::string::npos || p2 == p1) throw std::invalid_argument("expected L|C|R");
  return SupportedConfig(Word::parse(a, body.substr(0, p1)),
                         Word::parse(a, body.substr(p1 + 1, p2 - p1 - 1)),
                         Word::parse(a, body.substr(p2 + 1)), start);
}

namespace {

// Does w overlap a translate of itself by s? Shifts past the end always do.
bool self_overlap(const Word& w, int s) {
  if (s >= w.size()) return true;
  for (int j = 0; j + s < w.size(); ++j)
    if (w[j] != w[j + s]) return false;
  return true;
}

}  // namespace

bool word_is_unbordered(const Word& w, int m) {
  if (w.empty()) throw std::invalid_argument("empty word");
  for (int s = 1; s < m; ++s)
    if (self_overlap(w, s)) return false;
  return true;
}

bool clopen_is_unbordered(const ClopenSet& f, int m) {
  for (int s = 1; s < m; ++s) {
    if (s >= f.width) return false;  // disjoint windows always intersect
    for (const auto& u : f.words)
      for (const auto& v : f.words) {
        // x in [u]_off cap [v]_{off-s}: v[t+s] == u[t] on the overlap
        bool ok = true;
        for (int t = 0; t + s < f.width; ++t)
          if (v[t + s] != u[t]) {
            ok = false;
            break;
          }
        if (ok) return false;
      }
  }
  return true;
}

Word canonical_unbordered(int l, const Alphabet& a) {
  if (l < 2) throw std::invalid_argument("length must be >= 2");
  if (a.size() < 2) throw std::invalid_argument("alphabet too small");
  std::vector<Symbol> s(l, 0);
  s[0] = 1;
  return Word(a, std::move(s));
}

ClopenSet ClopenSet::refined(long long new_offset, int new_width) const {
  if (new_offset > offset || new_offset + new_width < offset + width)
    throw std::invalid_argument("refinement must contain the original window");
  int pre = static_cast<int>(offset - new_offset);
  int post = new_width - pre - width;
  uint64_t free_count = checked_pow(alphabet.size(), pre + post, 1ull << 26);
  if (free_count >= (1ull << 26)) throw std::invalid_argument("refinement too large");
  std::set<Word> out;
  for (const auto& w : words)
    for (uint64_t r = 0; r < free_count; ++r) {
      Word pad = word_unrank(alphabet, pre + post, r);
      std::vector<Symbol> v;
      v.insert(v.end(), pad.symbols.begin(), pad.symbols.begin() + pre);
      v.insert(v.end(), w.symbols.begin(), w.symbols.end());
      v.insert(v.end(), pad.symbols.begin() + pre, pad.symbols.end());
      out.insert(Word(alphabet, std::move(v)));
    }
  return ClopenSet(alphabet, new_offset, std::move(out));
}

ClopenSet ClopenSet::intersect(const ClopenSet& a, const ClopenSet& b) {
  long long off = std::min(a.offset, b.offset);
  long long end = std::max(a.offset + a.width, b.offset + b.width);
  ClopenSet ra = a.refined(off, static_cast<int>(end - off));
  ClopenSet rb = b.refined(off, static_cast<int>(end - off));
  std::set<Word> common;
  std::set_intersection(ra.words.begin(), ra.words.end(), rb.words.begin(), rb.words.end(),
                        std::inserter(common, common.begin()));
  if (common.empty()) throw std::invalid_argument("empty intersection is not a ClopenSet");
  return ClopenSet(a.alphabet, off, std::move(common));
}

}  // namespace rca
