#pragma once

#include <random>

#include "gcdh/form.hpp"

namespace gcdh::testing {

inline Gaussian random_gaussian(std::mt19937& rng, int range = 3) {
  std::uniform_int_distribution<int> d(-range, range);
  return {Rational(d(rng)), Rational(d(rng))};
}

inline Form random_form(std::mt19937& rng, int n, int max_terms = 6, int degree = -1) {
  Form f(n);
  std::uniform_int_distribution<Mask> mask(0, n == 0 ? 0 : (Mask{1} << n) - 1);
  std::uniform_int_distribution<int> count(1, max_terms);
  for (int t = count(rng); t > 0; --t) {
    Mask m = mask(rng);
    if (degree >= 0 && mask_degree(m) != degree) continue;
    f.add(m, Scalar(random_gaussian(rng)));
  }
  return f;
}

inline Form random_real_two_form(std::mt19937& rng, int n) {
  Form b(n);
  std::uniform_int_distribution<int> d(-3, 3);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng() % 2 == 0) b.add((Mask{1} << i) | (Mask{1} << j), Scalar(Gaussian(d(rng))));
  return b;
}

inline WVector random_wvector(std::mt19937& rng, int n) {
  WVector v(static_cast<std::size_t>(2 * n));
  for (auto& x : v) x = random_gaussian(rng);
  return v;
}

}  // namespace gcdh::testing
