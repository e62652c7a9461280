#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace rca {

/// Bijection of {0..N-1} stored as an image table.
class Permutation {
public:
  Permutation() = default;
  explicit Permutation(int n) : img_(n) {
    for (int i = 0; i < n; ++i) img_[i] = i;
  }
  explicit Permutation(std::vector<int> images) : img_(std::move(images)) { validate(); }

  static Permutation identity(int n) { return Permutation(n); }

  /// Cycle notation: each list rotates a -> b -> c -> a.
  static Permutation from_cycles(int n, const std::vector<std::vector<int>>& cycles) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    for (const auto& cyc : cycles) {
      for (size_t k = 0; k < cyc.size(); ++k) {
        int from = cyc[k], to = cyc[(k + 1) % cyc.size()];
        if (from < 0 || from >= n) throw std::out_of_range("cycle element");
        img[from] = to;
      }
    }
    Permutation p(std::move(img));
    return p;
  }

  static Permutation transposition(int n, int a, int b) { return from_cycles(n, {{a, b}}); }

  int size() const { return static_cast<int>(img_.size()); }
  int operator()(int x) const { return img_[x]; }
  const std::vector<int>& images() const { return img_; }

  Permutation inverse() const {
    std::vector<int> inv(img_.size());
    for (int i = 0; i < size(); ++i) inv[img_[i]] = i;
    return Permutation(std::move(inv));
  }

  /// Function composition: (p*q)(x) = p(q(x)).
  Permutation operator*(const Permutation& q) const {
    if (size() != q.size()) throw std::invalid_argument("domain mismatch");
    std::vector<int> r(img_.size());
    for (int i = 0; i < size(); ++i) r[i] = img_[q.img_[i]];
    return Permutation(std::move(r));
  }

  /// g^h = h^-1 g h.
  Permutation conjugated_by(const Permutation& h) const { return h.inverse() * (*this) * h; }

  static Permutation commutator(const Permutation& g, const Permutation& h) {
    return g.inverse() * h.inverse() * g * h;
  }

  bool is_identity() const {
    for (int i = 0; i < size(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  bool operator==(const Permutation& o) const { return img_ == o.img_; }
  bool operator!=(const Permutation& o) const { return img_ != o.img_; }
  bool operator<(const Permutation& o) const { return img_ < o.img_; }

  /// +1 for even, -1 for odd, via cycle decomposition.
  int sign() const {
    std::vector<bool> seen(img_.size(), false);
    int parity = 0;
    for (int i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      int len = 0, j = i;
      while (!seen[j]) {
        seen[j] = true;
        j = img_[j];
        ++len;
      }
      parity ^= (len - 1) & 1;
    }
    return parity ? -1 : +1;
  }

  std::vector<std::vector<int>> cycles(bool include_fixed = false) const {
    std::vector<bool> seen(img_.size(), false);
    std::vector<std::vector<int>> out;
    for (int i = 0; i < size(); ++i) {
      if (seen[i]) continue;
      std::vector<int> cyc;
      int j = i;
      while (!seen[j]) {
        seen[j] = true;
        cyc.push_back(j);
        j = img_[j];
      }
      if (cyc.size() > 1 || include_fixed) out.push_back(std::move(cyc));
    }
    return out;
  }

private:
  void validate() const {
    std::vector<bool> hit(img_.size(), false);
    for (int v : img_) {
      if (v < 0 || v >= size() || hit[v]) throw std::invalid_argument("not a bijection");
      hit[v] = true;
    }
  }

  std::vector<int> img_;
};

inline int perm_sign(const Permutation& p) { return p.sign(); }

/// Permutation given by a callable; used where image tables would be huge
/// (block permutations on C^l). Sign is computed by a cycle walk with a
/// visited bitmap.
class BigPerm {
public:
  BigPerm() = default;
  BigPerm(uint64_t n, std::function<uint64_t(uint64_t)> fwd)
      : n_(n), fwd_(std::move(fwd)) {}

  uint64_t size() const { return n_; }
  uint64_t operator()(uint64_t x) const { return fwd_(x); }

  int sign() const {
    std::vector<bool> seen(n_, false);
    int parity = 0;
    for (uint64_t i = 0; i < n_; ++i) {
      if (seen[i]) continue;
      uint64_t j = i, len = 0;
      while (!seen[j]) {
        seen[j] = true;
        j = fwd_(j);
        ++len;
      }
      parity ^= static_cast<int>((len - 1) & 1);
    }
    return parity ? -1 : +1;
  }

  bool is_identity() const {
    for (uint64_t i = 0; i < n_; ++i)
      if (fwd_(i) != i) return false;
    return true;
  }

private:
  uint64_t n_ = 0;
  std::function<uint64_t(uint64_t)> fwd_;
};

}  // namespace rca
