#pragma once

#include <random>

#include "gcdh/dgamodel.hpp"
#include "oracle.hpp"
#include "random_forms.hpp"

namespace gcdh::testing {

inline Form e(int n, std::initializer_list<int> idx, Scalar c = 1) {
  Mask m = 0;
  for (int i : idx) m |= Mask{1} << (i - 1);
  return Form::monomial(n, m, c);
}

/// Nilpotent models with d e_k = e_1^e_2 for the third generator.
inline Model heisenberg(Form h = {}) {
  std::vector<Form> table(3, Form(3));
  table[2] = e(3, {1, 2});
  return {Model::default_names(3), table, h.generators() == 0 ? Form(3) : h};
}

inline Model kodaira_thurston(Form h = {}) {
  std::vector<Form> table(4, Form(4));
  table[2] = e(4, {1, 2});
  return {Model::default_names(4), table, h.generators() == 0 ? Form(4) : h};
}

inline oracle::RealModel to_oracle(const Model& m) {
  auto dense = [](const Form& f) {
    oracle::Dense out;
    for (const auto& [mask, c] : f.terms()) {
      Gaussian g = c.constant_value();
      if (!g.is_real()) throw std::runtime_error("oracle handles real models only");
      out[oracle::Index(mask_indices(mask))] = g.re();
    }
    return out;
  };
  oracle::RealModel r;
  r.n = m.generators();
  for (const auto& f : m.d_table()) r.d_table.push_back(dense(f));
  r.h = dense(m.h());
  return r;
}

inline Form random_real_form(std::mt19937& rng, int n, int degree, int terms = 4) {
  Form f(n);
  std::uniform_int_distribution<int> d(-3, 3);
  std::uniform_int_distribution<Mask> mask(0, (Mask{1} << n) - 1);
  for (int t = 0; t < terms * 8 && static_cast<int>(f.terms().size()) < terms; ++t) {
    Mask m = mask(rng);
    if (mask_degree(m) == degree) f.add(m, Scalar(Gaussian(d(rng))));
  }
  return f;
}

/// Random closed real 3-form on the model (rejection sampling, may return 0).
inline Form random_closed_h(std::mt19937& rng, const Model& m) {
  for (int attempt = 0; attempt < 20; ++attempt) {
    Form h = random_real_form(rng, m.generators(), 3, 2);
    if (d(m, h).is_zero()) return h;
  }
  return Form(m.generators());
}

}  // namespace gcdh::testing
