#include "rca/random.hpp"

namespace rca {

Word random_word(Rng& rng, const Alphabet& a, int len) {
  std::vector<Symbol> s(len);
  for (auto& x : s) x = static_cast<Symbol>(rng.below(a.size()));
  return Word(a, std::move(s));
}

SupportedConfig random_config(Rng& rng, const Alphabet& a, int min_period, int max_period,
                              int center_len) {
  int pl = rng.range(min_period, max_period);
  int pr = rng.range(min_period, max_period);
  Word c = random_word(rng, a, center_len);
  long long start = -(center_len / 2);
  return SupportedConfig(random_word(rng, a, pl), std::move(c), random_word(rng, a, pr), start);
}

Permutation random_permutation(Rng& rng, int n) {
  std::vector<int> img(n);
  for (int i = 0; i < n; ++i) img[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(img[i], img[rng.below(i + 1)]);
  return Permutation(std::move(img));
}

Permutation random_even_permutation(Rng& rng, int n) {
  Permutation p = random_permutation(rng, n);
  if (p.sign() < 0) {
    auto img = p.images();
    std::swap(img[0], img[1]);
    p = Permutation(std::move(img));
  }
  return p;
}

}  // namespace rca
