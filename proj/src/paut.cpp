#include "rca/paut.hpp"

#include <sstream>

namespace rca {

GeneratorToken GeneratorToken::inverse() const {
  GeneratorToken t = *this;
  switch (kind) {
    case Kind::PartialShift:
    case Kind::Named: t.exponent = -exponent; break;
    case Kind::SymbolPerm: t.perm = perm.inverse(); break;
  }
  return t;
}

bool GeneratorToken::operator==(const GeneratorToken& o) const {
  if (kind != o.kind) return false;
  switch (kind) {
    case Kind::PartialShift: return track == o.track && exponent == o.exponent;
    case Kind::SymbolPerm: return perm == o.perm;
    case Kind::Named: return name == o.name && exponent == o.exponent;
  }
  return false;
}

GroupWord GroupWord::operator*(const GroupWord& o) const {
  GroupWord w(alphabet, tokens);
  w.tokens.insert(w.tokens.end(), o.tokens.begin(), o.tokens.end());
  return w;
}

GroupWord GroupWord::inverse() const {
  GroupWord w(alphabet);
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) w.tokens.push_back(it->inverse());
  return w;
}

GroupWord GroupWord::conjugated_by(const GroupWord& h) const { return h.inverse() * (*this) * h; }

GroupWord GroupWord::commutator(const GroupWord& g, const GroupWord& h) {
  return g.inverse() * h.inverse() * g * h;
}

GroupWord GroupWord::power(long long e) const {
  GroupWord base = e < 0 ? inverse() : *this;
  GroupWord w(alphabet);
  for (long long i = 0; i < std::llabs(e); ++i) w = w * base;
  return w;
}

GroupWord GroupWord::reduced() const {
  GroupWord out(alphabet);
  auto& ts = out.tokens;
  for (const auto& tok : tokens) {
    bool merged = false;
    if (!ts.empty() && ts.back().kind == tok.kind) {
      auto& top = ts.back();
      using K = GeneratorToken::Kind;
      if (tok.kind == K::PartialShift && top.track == tok.track) {
        top.exponent += tok.exponent;
        if (top.exponent == 0) ts.pop_back();
        merged = true;
      } else if (tok.kind == K::SymbolPerm) {
        top.perm = top.perm * tok.perm;
        if (top.perm.is_identity()) ts.pop_back();
        merged = true;
      } else if (tok.kind == K::Named && top.name == tok.name) {
        top.exponent += tok.exponent;
        if (top.exponent == 0) ts.pop_back();
        merged = true;
      }
    }
    if (!merged) {
      if (tok.kind == GeneratorToken::Kind::SymbolPerm && tok.perm.is_identity()) continue;
      if (tok.kind != GeneratorToken::Kind::SymbolPerm && tok.exponent == 0) continue;
      ts.push_back(tok);
    }
  }
  return out;
}

std::string GroupWord::str() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& t : tokens) {
    if (!first) os << " * ";
    first = false;
    switch (t.kind) {
      case GeneratorToken::Kind::PartialShift:
        os << "s" << t.track;
        if (t.exponent != 1) os << "^" << t.exponent;
        break;
      case GeneratorToken::Kind::SymbolPerm: {
        os << "p([";
        for (int i = 0; i < t.perm.size(); ++i) os << (i ? "," : "") << t.perm(i);
        os << "])";
        break;
      }
      case GeneratorToken::Kind::Named:
        os << "N(" << t.name << ")";
        if (t.exponent != 1) os << "^" << t.exponent;
        break;
    }
  }
  if (first) os << "1";
  return os.str();
}

GroupWord GroupWord::parse(const Alphabet& a, const std::string& text,
                           const std::map<std::string, Permutation>& perms) {
  GroupWord w(a);
  std::string s;
  for (char c : text)
    if (!isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty() || s == "1") return w;
  size_t pos = 0;
  auto parseExp = [&]() -> long long {
    if (pos < s.size() && s[pos] == '^') {
      ++pos;
      size_t start = pos;
      if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
      while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      return std::stoll(s.substr(start, pos - start));
    }
    return 1;
  };
  while (pos < s.size()) {
    if (s[pos] == '*') {
      ++pos;
      continue;
    }
    if (s[pos] == 's') {
      ++pos;
      size_t start = pos;
      while (pos < s.size() && isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      int track = std::stoi(s.substr(start, pos - start));
      w.tokens.push_back(GeneratorToken::partial_shift(track, parseExp()));
    } else if (s[pos] == 'p' || s[pos] == 'N') {
      char kind = s[pos];
      pos += 2;  // skip "p(" / "N("
      size_t close = s.find(')', pos);
      if (close == std::string::npos) throw std::invalid_argument("unterminated token");
      std::string name = s.substr(pos, close - pos);
      pos = close + 1;
      long long e = parseExp();
      if (kind == 'p') {
        auto it = perms.find(name);
        if (it == perms.end()) throw std::invalid_argument("unknown permutation: " + name);
        Permutation p = it->second;
        if (e < 0) {
          p = p.inverse();
          e = -e;
        }
        for (long long i = 0; i < e; ++i) w.tokens.push_back(GeneratorToken::symbol_perm(p));
      } else {
        w.tokens.push_back(GeneratorToken::named(name, e));
      }
    } else {
      throw std::invalid_argument("bad word syntax near: " + s.substr(pos));
    }
  }
  return w;
}

CellularAutomaton make_partial_shift(const Alphabet& a, int track) {
  int k = a.track_count();
  if (track < 1 || track > k) throw std::invalid_argument("bad track index");
  int n = a.size();
  std::vector<Symbol> table(static_cast<size_t>(n) * n);
  for (int s0 = 0; s0 < n; ++s0)
    for (int s1 = 0; s1 < n; ++s1)
      table[static_cast<size_t>(s0) * n + s1] =
          a.with_track(static_cast<Symbol>(s0), track - 1,
                       a.track_of(static_cast<Symbol>(s1), track - 1));
  return CellularAutomaton::from_table(a, 0, 1, std::move(table));
}

CellularAutomaton make_symbol_perm(const Alphabet& a, const Permutation& p) {
  if (p.size() != a.size()) throw std::invalid_argument("permutation domain mismatch");
  std::vector<Symbol> table(a.size());
  for (int i = 0; i < a.size(); ++i) table[i] = static_cast<Symbol>(p(i));
  return CellularAutomaton::from_table(a, 0, 0, std::move(table));
}

CellularAutomaton eval_word(const GroupWord& w, const WordEnv& env) {
  CellularAutomaton acc = CellularAutomaton::identity(w.alphabet);
  for (const auto& t : w.tokens) {
    CellularAutomaton g;
    switch (t.kind) {
      case GeneratorToken::Kind::PartialShift:
        g = make_partial_shift(w.alphabet, t.track).power(t.exponent);
        break;
      case GeneratorToken::Kind::SymbolPerm:
        g = make_symbol_perm(w.alphabet, t.perm);
        break;
      case GeneratorToken::Kind::Named: {
        auto it = env.find(t.name);
        if (it == env.end()) throw std::invalid_argument("unresolved named generator: " + t.name);
        g = it->second.power(t.exponent);
        break;
      }
    }
    acc = acc.compose(g);
  }
  return acc;
}

std::pair<CellularAutomaton, CellularAutomaton> conjugate_decomposition(const Alphabet& from,
                                                                        const Alphabet& to,
                                                                        const Permutation& pi) {
  if (from.size() != to.size() || pi.size() != from.size())
    throw std::invalid_argument("size mismatch");
  std::vector<Symbol> fwd(from.size()), bwd(from.size());
  for (int i = 0; i < from.size(); ++i) {
    fwd[i] = static_cast<Symbol>(pi(i));
    bwd[pi(i)] = static_cast<Symbol>(i);
  }
  return {CellularAutomaton::from_table(to, 0, 0, std::move(fwd)),
          CellularAutomaton::from_table(from, 0, 0, std::move(bwd))};
}

}  // namespace rca
