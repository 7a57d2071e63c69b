#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gcdh/dgamodel.hpp"
#include "gcdh/form.hpp"
#include "gcdh/gclinear.hpp"

namespace gcdh {

/// Rational values for some of the parameters of a Scalar.
using Sample = std::map<std::string, Rational>;

Scalar substitute(const Scalar& s, const Sample& sample);
Form substitute(const Form& f, const Sample& sample);

struct GCYStructure {
  Model model;
  Form rho;
  int n = 0;
  /// Top coefficient of sigma(rho) ^ conj(rho).
  Scalar pairing;
  std::vector<Sample> samples;
  /// Lowest degree present in rho.
  int type = 0;
  /// Annihilator flags at the first sample.
  bool maximal_isotropic = false;
  bool transverse = false;
};

/// d_H rho = 0 symbolically and a nonzero pairing at every sample (the empty
/// sample when none are given). Throws DomainError with the residual.
GCYStructure gcy_check(const Model& m, const Form& rho, std::vector<Sample> samples = {});

/// (-1)^n / (2i)^n sigma(rho) ^ conj(rho), as a top form.
Form volume_form(const GCYStructure& g);

struct GCYFamily {
  GCYStructure structure;
  std::string parameter;
  Form c;
};

/// rho_t = e^{-i t c} ^ rho. Throws when c is not a closed 2-form.
GCYFamily quotient_family(const Model& m, const Form& rho, const Form& c, const std::string& t,
                          std::vector<Sample> samples = {});

struct DHResult {
  Scalar density;
  Scalar normalization;
  int n = 0;
  int k = 0;
  int degree_bound = 0;
  bool real = true;
  std::vector<std::string> diagnostics;
};

/// (-1)^{n + k(k+1)/2} (2 pi)^k / (2i)^{n-k}.
Scalar dh_normalization(int n, int k);

/// Density of the family on a quotient with 2(n - k) generators. Throws when
/// the degree in the family parameter exceeds n - k - constant_type.
DHResult dh_density(const GCYFamily& fam, int n, int k, int orientation, int constant_type = 0);

/// omega^{n-1} ^ . on 1-forms; throws for degenerate omega.
Diagnostics lefschetz_check(const Model& m, const Form& omega);

}  // namespace gcdh
