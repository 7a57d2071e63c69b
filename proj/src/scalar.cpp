#include "gcdh/scalar.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gcdh/error.hpp"

namespace gcdh {

// ---- Gaussian -------------------------------------------------------------

Gaussian Gaussian::inverse() const {
  Rational n = norm();
  if (sgn(n) == 0) throw DomainError("division by zero");
  return {Rational(re_ / n), Rational(-im_ / n)};
}

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  Rational re = re_ * o.re_ - im_ * o.im_;
  Rational im = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(re);
  im_ = std::move(im);
  return *this;
}

namespace {

std::string imag_text(const Rational& im) {
  if (im == 1) return "i";
  if (im == -1) return "-i";
  return im.get_str() + "*i";
}

}  // namespace

std::string Gaussian::to_string() const {
  if (sgn(im_) == 0) return re_.get_str();
  if (sgn(re_) == 0) return imag_text(im_);
  std::string im = imag_text(im_);
  return "(" + re_.get_str() + (im.front() == '-' ? "" : "+") + im + ")";
}

std::ostream& operator<<(std::ostream& os, const Gaussian& g) { return os << g.to_string(); }

// ---- Monomial -------------------------------------------------------------

Monomial Monomial::variable(const std::string& name, int power) {
  Monomial m;
  if (power > 0) m.factors_.emplace_back(name, power);
  return m;
}

int Monomial::degree() const {
  int d = 0;
  for (const auto& [name, e] : factors_) d += e;
  return d;
}

int Monomial::degree_without_pi() const {
  int d = 0;
  for (const auto& [name, e] : factors_)
    if (name != "pi") d += e;
  return d;
}

int Monomial::exponent(const std::string& name) const {
  for (const auto& [n, e] : factors_)
    if (n == name) return e;
  return 0;
}

Monomial Monomial::operator*(const Monomial& o) const {
  Monomial r;
  auto a = factors_.begin();
  auto b = o.factors_.begin();
  while (a != factors_.end() || b != o.factors_.end()) {
    if (b == o.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      r.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      r.factors_.push_back(*b++);
    } else {
      r.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return r;
}

Monomial Monomial::without(const std::string& name) const {
  Monomial r;
  for (const auto& f : factors_)
    if (f.first != name) r.factors_.push_back(f);
  return r;
}

Monomial Monomial::gcd(const Monomial& o) const {
  Monomial r;
  for (const auto& [name, e] : factors_) {
    int other = o.exponent(name);
    if (other > 0) r.factors_.emplace_back(name, std::min(e, other));
  }
  return r;
}

Monomial Monomial::divide(const Monomial& o) const {
  Monomial r;
  for (const auto& [name, e] : factors_) {
    int left = e - o.exponent(name);
    if (left > 0) r.factors_.emplace_back(name, left);
  }
  return r;
}

std::string Monomial::to_string() const {
  std::string s;
  for (const auto& [name, e] : factors_) {
    if (!s.empty()) s += "*";
    s += name;
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  int da = a.degree();
  int db = b.degree();
  if (da != db) return da > db;
  return a < b;
}

// ---- Scalar ---------------------------------------------------------------

Scalar::Scalar(const Gaussian& g) {
  if (!g.is_zero()) terms_.emplace(Monomial{}, g);
}

Scalar::Scalar(const Gaussian& g, const Monomial& m) {
  if (!g.is_zero()) terms_.emplace(m, g);
}

void Scalar::add_term(const Monomial& m, const Gaussian& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

bool Scalar::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Gaussian Scalar::constant_value() const {
  if (!is_constant()) throw DomainError("scalar is not parameter-free", to_string());
  return terms_.empty() ? Gaussian{} : terms_.begin()->second;
}

bool Scalar::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(), [](const auto& t) { return t.second.is_real(); });
}

int Scalar::parameter_degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree_without_pi());
  return d;
}

Scalar Scalar::conj() const {
  Scalar r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.conj());
  return r;
}

Scalar Scalar::real_part() const {
  Scalar r;
  for (const auto& [m, c] : terms_) r.add_term(m, Gaussian(c.re()));
  return r;
}

Scalar Scalar::imag_part() const {
  Scalar r;
  for (const auto& [m, c] : terms_) r.add_term(m, Gaussian(c.im()));
  return r;
}

Scalar Scalar::substitute(const std::string& name, const Rational& value) const {
  Scalar r;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(name);
    Rational p = 1;
    for (int k = 0; k < e; ++k) p *= value;
    r.add_term(m.without(name), c * Gaussian(p));
  }
  return r;
}

Scalar Scalar::derivative(const std::string& name) const {
  Scalar r;
  for (const auto& [m, c] : terms_) {
    int e = m.exponent(name);
    if (e == 0) continue;
    r.add_term(m.without(name) * Monomial::variable(name, e - 1), c * Gaussian(e));
  }
  return r;
}

std::vector<std::string> Scalar::parameters() const {
  std::set<std::string> names;
  for (const auto& [m, c] : terms_)
    for (const auto& [n, e] : m.factors()) names.insert(n);
  return {names.begin(), names.end()};
}

Scalar Scalar::operator-() const {
  Scalar r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
  return r;
}

Scalar& Scalar::operator+=(const Scalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero()) return *this;
  if (o.is_constant() && !o.is_zero() && o.terms_.begin()->second.is_one()) return *this;
  Scalar r;
  for (const auto& [ma, ca] : terms_)
    for (const auto& [mb, cb] : o.terms_) r.add_term(ma * mb, ca * cb);
  terms_ = std::move(r.terms_);
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (!o.is_constant()) throw DomainError("division by a parameter-dependent scalar", o.to_string());
  Gaussian inv = o.constant_value().inverse();
  for (auto& [m, c] : terms_) c *= inv;
  return *this;
}

namespace {

std::string term_text(const Monomial& m, const Gaussian& c) {
  if (m.is_one()) return c.to_string();
  if (c.is_one()) return m.to_string();
  if (c == Gaussian(-1)) return "-" + m.to_string();
  return c.to_string() + "*" + m.to_string();
}

std::string join_terms(const Scalar::Terms& terms) {
  std::string s;
  for (const auto& [m, c] : terms) {
    std::string t = term_text(m, c);
    if (!s.empty() && t.front() != '-') s += "+";
    s += t;
  }
  return s;
}

Rational rational_gcd(const Rational& a, const Rational& b) {
  if (sgn(a) == 0) return abs(b);
  if (sgn(b) == 0) return abs(a);
  mpz_class num = gcd(a.get_num(), b.get_num());
  mpz_class den = lcm(a.get_den(), b.get_den());
  return Rational(num, den);
}

}  // namespace

std::string Scalar::to_expanded_string() const {
  if (terms_.empty()) return "0";
  return join_terms(terms_);
}

std::string Scalar::to_string() const {
  if (terms_.size() <= 1) return to_expanded_string();
  Monomial common = terms_.begin()->first;
  Rational content = 0;
  for (const auto& [m, c] : terms_) {
    common = common.gcd(m);
    content = rational_gcd(content, c.re());
    content = rational_gcd(content, c.im());
  }
  const Gaussian& lead = terms_.begin()->second;
  int lead_sign = sgn(lead.re()) != 0 ? sgn(lead.re()) : sgn(lead.im());
  if (lead_sign < 0) content = -content;
  if (content == 1 && common.is_one()) return to_expanded_string();

  Terms rest;
  Gaussian inv = Gaussian(Rational(1 / content));
  for (const auto& [m, c] : terms_) rest.emplace(m.divide(common), c * inv);
  std::string prefix;
  if (content == -1) {
    prefix = common.is_one() ? "-" : "-" + common.to_string() + "*";
  } else if (content == 1) {
    prefix = common.to_string() + "*";
  } else {
    prefix = content.get_str() + "*";
    if (!common.is_one()) prefix += common.to_string() + "*";
  }
  return prefix + "(" + join_terms(rest) + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace gcdh
