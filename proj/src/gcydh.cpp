#include "gcdh/gcydh.hpp"

#include <bit>

#include "gcdh/error.hpp"
#include "gcdh/linalg.hpp"

namespace gcdh {

namespace {

std::string describe(const Sample& s) {
  std::string out;
  for (const auto& [name, v] : s) {
    if (!out.empty()) out += ", ";
    out += name + "=" + v.get_str();
  }
  return out.empty() ? "no parameters" : out;
}

Scalar power(const Scalar& a, int k) {
  Scalar r(1);
  for (int i = 0; i < k; ++i) r *= a;
  return r;
}

int degree_in(const Scalar& s, const std::string& name) {
  int deg = -1;
  for (Scalar t = s; !t.is_zero(); t = t.derivative(name)) ++deg;
  return deg;
}

}  // namespace

Scalar substitute(const Scalar& s, const Sample& sample) {
  Scalar r = s;
  for (const auto& [name, v] : sample) r = r.substitute(name, v);
  return r;
}

Form substitute(const Form& f, const Sample& sample) {
  return f.map_coefficients([&](const Scalar& c) { return substitute(c, sample); });
}

GCYStructure gcy_check(const Model& m, const Form& rho, std::vector<Sample> samples) {
  int gens = m.generators();
  if (gens % 2 != 0) throw DomainError("a generalized Calabi-Yau model needs an even number of generators");
  if (rho.generators() != gens) throw DomainError("rho does not live on the model");
  if (rho.is_zero()) throw DomainError("rho is zero");
  Form closed = d_twisted(m, rho);
  if (!closed.is_zero()) throw DomainError("rho is not d_H-closed", m.print(closed));

  GCYStructure g;
  g.model = m;
  g.rho = rho;
  g.n = gens / 2;
  g.pairing = mukai(rho, rho.conj());
  if (samples.empty()) samples.emplace_back();
  g.samples = std::move(samples);
  for (const auto& s : g.samples) {
    Scalar v = substitute(g.pairing, s);
    if (v.is_zero()) throw DomainError("mukai(rho, conj rho) vanishes at " + describe(s), g.pairing.to_string());
  }
  g.type = gens;
  for (const auto& [mask, c] : rho.terms()) g.type = std::min(g.type, std::popcount(mask));
  Form at_sample = substitute(rho, g.samples.front());
  bool numeric = true;
  for (const auto& [mask, c] : at_sample.terms()) numeric = numeric && c.is_constant();
  if (numeric) {
    AnnihilatorResult a = annihilator(at_sample);
    g.maximal_isotropic = a.maximal_isotropic;
    g.transverse = a.transverse;
    if (!a.maximal_isotropic)
      throw DomainError("rho is not pure at " + describe(g.samples.front()), m.print(at_sample));
  }
  return g;
}

Form volume_form(const GCYStructure& g) {
  Scalar two_i = Scalar(2) * Scalar::i();
  Scalar factor = Scalar(g.n % 2 == 0 ? 1 : -1) / power(two_i, g.n);
  return Form::monomial(g.model.generators(), g.rho.top_mask(), factor * g.pairing);
}

GCYFamily quotient_family(const Model& m, const Form& rho, const Form& c, const std::string& t,
                          std::vector<Sample> samples) {
  if (c.generators() != m.generators() || !(c.is_zero() || c.is_homogeneous(2)))
    throw DomainError("c is not a 2-form on the model");
  Form dc = d(m, c);
  if (!dc.is_zero()) throw DomainError("c is not closed", m.print(dc));
  Scalar coeff = -Scalar::i() * Scalar::parameter(t);
  Form rho_t = c.is_zero() ? rho : wedge(exp_two_form(c * coeff), rho);
  GCYFamily fam;
  fam.structure = gcy_check(m, rho_t, std::move(samples));
  fam.parameter = t;
  fam.c = c;
  return fam;
}

Scalar dh_normalization(int n, int k) {
  int sign_exp = n + k * (k + 1) / 2;
  Scalar num = power(Scalar(2) * Scalar::pi(), k);
  if (sign_exp % 2 != 0) num = -num;
  return num / power(Scalar(2) * Scalar::i(), n - k);
}

DHResult dh_density(const GCYFamily& fam, int n, int k, int orientation, int constant_type) {
  const GCYStructure& g = fam.structure;
  if (k < 0 || n < k) throw DomainError("need 0 <= k <= n");
  if (g.model.generators() != 2 * (n - k))
    throw DomainError("quotient has " + std::to_string(g.model.generators()) + " generators, expected 2(n-k) = " +
                      std::to_string(2 * (n - k)));
  DHResult r;
  r.n = n;
  r.k = k;
  r.degree_bound = n - k - constant_type;
  r.normalization = dh_normalization(n, k);
  Form pairing_top = Form::monomial(g.model.generators(), g.rho.top_mask(), g.pairing);
  r.density = r.normalization * integrate(pairing_top, g.model.volume(), orientation);
  int deg = degree_in(r.density, fam.parameter);
  if (deg > r.degree_bound)
    throw DomainError("density has degree " + std::to_string(deg) + " in " + fam.parameter + ", above the bound " +
                          std::to_string(r.degree_bound),
                      r.density.to_string());
  if (!r.density.imag_part().is_zero()) {
    r.real = false;
    r.diagnostics.push_back("density is not real: imaginary part " + r.density.imag_part().to_string());
  }
  return r;
}

Diagnostics lefschetz_check(const Model& m, const Form& omega) {
  int gens = m.generators();
  if (gens % 2 != 0 || omega.generators() != gens || !omega.is_homogeneous(2))
    throw DomainError("omega is not a 2-form on an even-dimensional model");
  int n = gens / 2;
  Form top = wedge_power(omega, n);
  if (top.is_zero()) throw DomainError("omega is degenerate: omega^" + std::to_string(n) + " = 0");
  Form lef = wedge_power(omega, n - 1);
  linalg::LinearMap map;
  map.domain_dim = static_cast<std::size_t>(gens);
  for (int i = 0; i < gens; ++i) map.columns.push_back(linalg::to_vector(wedge(lef, Form::generator(gens, i))));
  auto ki = linalg::analyze(map);
  Diagnostics diag;
  if (!ki.kernel.empty()) {
    Form w(gens);
    for (const auto& [idx, v] : ki.kernel.front()) w += Form::generator(gens, static_cast<int>(idx)) * Scalar(v);
    diag.fail("Lefschetz map omega^" + std::to_string(n - 1) + " is not injective on 1-forms", m.print(w));
  }
  return diag;
}

}  // namespace gcdh
