#include "gcdh/form.hpp"

#include <algorithm>
#include <bit>

#include "gcdh/error.hpp"

namespace gcdh {

bool mask_less(Mask a, Mask b) {
  int da = std::popcount(a);
  int db = std::popcount(b);
  if (da != db) return da < db;
  Mask diff = a ^ b;
  if (diff == 0) return false;
  Mask low = diff & (~diff + 1);
  return (a & low) != 0;
}

std::vector<int> mask_indices(Mask m) {
  std::vector<int> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

int mask_degree(Mask m) { return std::popcount(m); }

int wedge_sign(Mask a, Mask b) {
  if ((a & b) != 0) return 0;
  int swaps = 0;
  for (Mask rest = b; rest != 0; rest &= rest - 1) {
    int bit = std::countr_zero(rest);
    swaps += std::popcount(bit == 63 ? Mask{0} : a >> (bit + 1));
  }
  return (swaps & 1) != 0 ? -1 : 1;
}

Form::Form(int generators) : n_(generators) {
  if (generators < 0 || generators > kMaxGenerators)
    throw DomainError("generator count out of range: " + std::to_string(generators));
}

Form::Form(int generators, const Scalar& constant) : Form(generators) { add(0, constant); }

Form Form::generator(int generators, int index) {
  if (index < 0 || index >= generators)
    throw DomainError("generator index out of range: " + std::to_string(index));
  return monomial(generators, Mask{1} << index);
}

Form Form::monomial(int generators, Mask mask, const Scalar& coefficient) {
  Form f(generators);
  if ((mask & ~f.top_mask()) != 0) throw DomainError("monomial uses undeclared generators");
  f.add(mask, coefficient);
  return f;
}

void Form::add(Mask m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar Form::coefficient(Mask m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar{} : it->second;
}

Form Form::homogeneous(int degree) const {
  Form r(n_);
  for (const auto& [m, c] : terms_)
    if (std::popcount(m) == degree) r.terms_.emplace(m, c);
  return r;
}

Form Form::even_part() const {
  Form r(n_);
  for (const auto& [m, c] : terms_)
    if (std::popcount(m) % 2 == 0) r.terms_.emplace(m, c);
  return r;
}

Form Form::odd_part() const {
  Form r(n_);
  for (const auto& [m, c] : terms_)
    if (std::popcount(m) % 2 == 1) r.terms_.emplace(m, c);
  return r;
}

bool Form::is_homogeneous(int degree) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [degree](const auto& t) { return std::popcount(t.first) == degree; });
}

int Form::max_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, std::popcount(m));
  return d;
}

Form Form::conj() const {
  return map_coefficients([](const Scalar& c) { return c.conj(); });
}

Form Form::substitute(const std::string& parameter, const Rational& value) const {
  return map_coefficients([&](const Scalar& c) { return c.substitute(parameter, value); });
}

Form Form::operator-() const {
  Form r(n_);
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

namespace {

void require_same(const Form& a, const Form& b) {
  if (a.generators() != b.generators())
    throw DomainError("generator count mismatch: " + std::to_string(a.generators()) + " vs " +
                      std::to_string(b.generators()));
}

/// True when the text has a top-level + or - after its first character.
bool is_sum_text(const std::string& s) {
  int depth = 0;
  for (std::size_t k = 0; k < s.size(); ++k) {
    char ch = s[k];
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && k > 0 && (ch == '+' || ch == '-') && s[k - 1] != '^') return true;
  }
  return false;
}

}  // namespace

Form& Form::operator+=(const Form& o) {
  require_same(*this, o);
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

Form& Form::operator-=(const Form& o) {
  require_same(*this, o);
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

Form& Form::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  Terms r;
  for (auto& [m, c] : terms_) {
    Scalar p = c * s;
    if (!p.is_zero()) r.emplace(m, std::move(p));
  }
  terms_ = std::move(r);
  return *this;
}

std::string Form::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::vector<Mask> order;
  order.reserve(terms_.size());
  for (const auto& [m, c] : terms_) order.push_back(m);
  std::sort(order.begin(), order.end(), mask_less);

  std::string out;
  for (Mask m : order) {
    const Scalar& c = terms_.at(m);
    std::string basis;
    for (int idx : mask_indices(m)) {
      if (!basis.empty()) basis += "^";
      basis += idx < static_cast<int>(names.size()) ? names[idx] : "e" + std::to_string(idx + 1);
    }
    std::string coeff = c.to_string();
    if (is_sum_text(coeff)) coeff = "(" + coeff + ")";
    std::string term;
    if (basis.empty()) {
      term = coeff;
    } else if (coeff == "1") {
      term = basis;
    } else if (coeff == "-1") {
      term = "-" + basis;
    } else {
      term = coeff + "*" + basis;
    }
    if (!out.empty()) term = term.front() == '-' ? " - " + term.substr(1) : " + " + term;
    out += term;
  }
  return out;
}

Form wedge(const Form& a, const Form& b) {
  require_same(a, b);
  Form r(a.generators());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      int s = wedge_sign(ma, mb);
      if (s == 0) continue;
      Scalar c = ca * cb;
      if (s < 0) c = -c;
      r.add(ma | mb, c);
    }
  }
  return r;
}

Form contract(int index, const Form& a) {
  if (index < 0 || index >= a.generators())
    throw DomainError("contraction index out of range: " + std::to_string(index));
  Mask bit = Mask{1} << index;
  Form r(a.generators());
  for (const auto& [m, c] : a.terms()) {
    if ((m & bit) == 0) continue;
    int below = std::popcount(m & (bit - 1));
    r.add(m & ~bit, below % 2 == 0 ? c : -c);
  }
  return r;
}

Form contract(std::span<const Gaussian> vector, const Form& a) {
  if (static_cast<int>(vector.size()) != a.generators())
    throw DomainError("vector dimension does not match generator count");
  Form r(a.generators());
  for (int i = 0; i < a.generators(); ++i) {
    if (vector[i].is_zero()) continue;
    r += contract(i, a) * Scalar(vector[i]);
  }
  return r;
}

Form reversal(const Form& a) {
  Form r(a.generators());
  for (const auto& [m, c] : a.terms()) {
    int q = std::popcount(m);
    r.add(m, (q * (q - 1) / 2) % 2 == 0 ? c : -c);
  }
  return r;
}

Scalar mukai(const Form& a, const Form& b) {
  require_same(a, b);
  // Only complementary pairs reach the top; avoid forming the full product.
  Mask top = a.top_mask();
  Scalar sum;
  for (const auto& [ma, ca] : a.terms()) {
    auto it = b.terms().find(top & ~ma);
    if (it == b.terms().end()) continue;
    int q = std::popcount(ma);
    int s = wedge_sign(ma, it->first) * ((q * (q - 1) / 2) % 2 == 0 ? 1 : -1);
    Scalar c = ca * it->second;
    sum += s > 0 ? c : -c;
  }
  return sum;
}

Form wedge_power(const Form& a, int k) {
  Form r(a.generators(), Scalar(1));
  for (int j = 0; j < k; ++j) r = wedge(r, a);
  return r;
}

Form exp_nilpotent(const Form& a) {
  if (!a.coefficient(0).is_zero()) throw DomainError("exp of a form with nonzero constant part");
  if (!a.odd_part().is_zero()) throw DomainError("exp of a form with odd-degree part");
  Form sum(a.generators(), Scalar(1));
  Form power(a.generators(), Scalar(1));
  for (long k = 1; k <= a.generators(); ++k) {
    power = wedge(power, a) * Scalar(Gaussian(Rational(1, k)));
    if (power.is_zero()) break;
    sum += power;
  }
  return sum;
}

Form exp_two_form(const Form& b) {
  if (!b.is_homogeneous(2)) throw DomainError("exponent is not a pure 2-form", b.to_string());
  return exp_nilpotent(b);
}

Form clifford(std::span<const Gaussian> v, const Form& a) {
  int n = a.generators();
  if (static_cast<int>(v.size()) != 2 * n)
    throw DomainError("Clifford vector has dimension " + std::to_string(v.size()) + ", expected " +
                      std::to_string(2 * n));
  Form r = contract(v.first(n), a);
  r += wedge(covector_part(v), a);
  return r;
}

Gaussian pairing(std::span<const Gaussian> u, std::span<const Gaussian> v) {
  if (u.size() != v.size() || u.size() % 2 != 0) throw DomainError("pairing dimension mismatch");
  std::size_t n = u.size() / 2;
  Gaussian s;
  for (std::size_t i = 0; i < n; ++i) {
    s += v[n + i] * u[i];
    s += u[n + i] * v[i];
  }
  return s * Gaussian(Rational(1, 2));
}

WVector conj(std::span<const Gaussian> v) {
  WVector r;
  r.reserve(v.size());
  for (const auto& g : v) r.push_back(g.conj());
  return r;
}

Form covector_part(std::span<const Gaussian> v) {
  int n = static_cast<int>(v.size() / 2);
  Form xi(n);
  for (int i = 0; i < n; ++i) xi.add(Mask{1} << i, Scalar(v[n + i]));
  return xi;
}

Scalar integrate(const Form& a, const Scalar& volume, int orientation) {
  if (orientation != 1 && orientation != -1) throw DomainError("orientation must be +1 or -1");
  Scalar r = a.top() * volume;
  return orientation > 0 ? r : -r;
}

Form pullback(const Form& a, std::span<const Form> images) {
  if (static_cast<int>(images.size()) != a.generators())
    throw DomainError("pullback needs one image per generator");
  int target = images.empty() ? 0 : images.front().generators();
  for (const auto& img : images) {
    if (img.generators() != target) throw DomainError("pullback images disagree on generator count");
    if (!img.is_homogeneous(1)) throw DomainError("pullback image is not a 1-form", img.to_string());
  }
  Form r(target);
  for (const auto& [m, c] : a.terms()) {
    Form prod(target, c);
    for (int idx : mask_indices(m)) prod = wedge(prod, images[idx]);
    r += prod;
  }
  return r;
}

}  // namespace gcdh
