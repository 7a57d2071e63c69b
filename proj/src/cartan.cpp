#include "gcdh/cartan.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "gcdh/error.hpp"

namespace gcdh {

int total_degree(const Exponent& e) { return std::accumulate(e.begin(), e.end(), 0); }

bool ExponentOrder::operator()(const Exponent& a, const Exponent& b) const {
  int da = total_degree(a);
  int db = total_degree(b);
  if (da != db) return da < db;
  return a > b;
}

// ---- EqForm ---------------------------------------------------------------

EqForm::EqForm(int rank, int generators, int trunc) : k_(rank), n_(generators), trunc_(trunc) {
  if (rank < 0 || trunc < 0) throw DomainError("torus rank and truncation must be nonnegative");
}

EqForm EqForm::constant(int rank, int trunc, const Form& f) {
  EqForm r(rank, f.generators(), trunc);
  r.add(Exponent(static_cast<std::size_t>(rank), 0), f);
  return r;
}

Form EqForm::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Form(n_) : it->second;
}

void EqForm::add(const Exponent& e, const Form& f) {
  if (static_cast<int>(e.size()) != k_) throw DomainError("exponent length does not match torus rank");
  if (f.generators() != n_) throw DomainError("equivariant coefficient has the wrong generator count");
  if (f.is_zero()) return;
  if (total_degree(e) > trunc_) {
    truncated_ = true;
    return;
  }
  auto [it, inserted] = terms_.try_emplace(e, f);
  if (inserted) return;
  it->second += f;
  if (it->second.is_zero()) terms_.erase(it);
}

EqForm EqForm::times_x(int j) const {
  EqForm r(k_, n_, trunc_);
  r.truncated_ = truncated_;
  for (const auto& [e, f] : terms_) {
    Exponent shifted = e;
    ++shifted[static_cast<std::size_t>(j)];
    r.add(shifted, f);
  }
  return r;
}

EqForm EqForm::with_trunc(int trunc) const {
  EqForm r(k_, n_, trunc);
  r.truncated_ = truncated_;
  for (const auto& [e, f] : terms_) r.add(e, f);
  return r;
}

void EqForm::require_compatible(const EqForm& o) const {
  if (o.k_ != k_ || o.n_ != n_) throw DomainError("equivariant forms over different data");
}

EqForm EqForm::operator-() const {
  return map([](const Form& f) { return -f; });
}

EqForm& EqForm::operator+=(const EqForm& o) {
  require_compatible(o);
  truncated_ = truncated_ || o.truncated_;
  for (const auto& [e, f] : o.terms_) add(e, f);
  return *this;
}

EqForm& EqForm::operator-=(const EqForm& o) { return *this += -o; }

std::string EqForm::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [e, f] : terms_) {
    std::string mono;
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(j + 1);
      if (e[j] > 1) mono += "^" + std::to_string(e[j]);
    }
    std::string form = f.to_string(names);
    bool single = f.terms().size() == 1;
    std::string term;
    if (mono.empty()) {
      term = form;
    } else if (form == "1") {
      term = mono;
    } else if (form == "-1") {
      term = "-" + mono;
    } else if (single && f.terms().begin()->second == Scalar(1)) {
      term = mono + "*" + form;
    } else if (single && f.terms().begin()->second == Scalar(-1)) {
      term = "-" + mono + "*" + form.substr(1);
    } else {
      term = mono + "*(" + form + ")";
    }
    if (!out.empty()) term = term.front() == '-' ? " - " + term.substr(1) : " + " + term;
    out += term;
  }
  return out;
}

EqForm wedge(const EqForm& a, const EqForm& b) {
  if (a.rank() != b.rank() || a.generators() != b.generators())
    throw DomainError("equivariant forms over different data");
  EqForm r(a.rank(), a.generators(), std::min(a.trunc(), b.trunc()));
  for (const auto& [ea, fa] : a.terms())
    for (const auto& [eb, fb] : b.terms()) {
      Exponent e = ea;
      for (std::size_t j = 0; j < e.size(); ++j) e[j] += eb[j];
      r.add(e, wedge(fa, fb));
    }
  return r;
}

EqForm wedge(const Form& a, const EqForm& b) {
  return b.map([&](const Form& f) { return wedge(a, f); });
}

// ---- torus actions --------------------------------------------------------

TorusAction::TorusAction(const Model& m, std::vector<std::vector<Rational>> xi, std::vector<Form> mu_diff,
                         std::vector<Form> alpha)
    : n_(m.generators()) {
  auto k = xi.size();
  for (const auto& v : xi) {
    if (static_cast<int>(v.size()) != n_) throw DomainError("vector field has the wrong number of components");
    xi_.emplace_back(v.begin(), v.end());
  }
  auto fill = [&](std::vector<Form> given, const char* what) {
    if (given.empty()) given.assign(k, Form(n_));
    if (given.size() != k) throw DomainError(std::string(what) + " needs one entry per circle factor");
    for (auto& f : given) {
      if (f.generators() == 0 && f.is_zero()) f = Form(n_);
      if (f.generators() != n_) throw DomainError(std::string(what) + " has the wrong generator count");
      if (!f.is_homogeneous(1)) throw DomainError(std::string(what) + " is not a 1-form", m.print(f));
    }
    return given;
  };
  mu_diff_ = fill(std::move(mu_diff), "mu_diff");
  alpha_ = fill(std::move(alpha), "alpha");
  for (int j = 0; j < rank(); ++j) {
    for (int i = 0; i < n_; ++i) {
      Form lie = contract(j, m.d_table()[static_cast<std::size_t>(i)]);
      if (!lie.is_zero())
        throw DomainError("action does not preserve the model: L_xi" + std::to_string(j + 1) + " " +
                              m.names()[static_cast<std::size_t>(i)] + " != 0",
                          m.print(lie));
    }
    Form lie_h = d(m, contract(j, m.h()));
    if (!lie_h.is_zero()) throw DomainError("action does not preserve H", m.print(lie_h));
    Form dm = d(m, mu_diff_[static_cast<std::size_t>(j)]);
    if (!dm.is_zero()) throw DomainError("mu_diff " + std::to_string(j + 1) + " is not closed", m.print(dm));
  }
}

Form TorusAction::contract(int j, const Form& a) const { return gcdh::contract(xi(j), a); }

EqForm d_equivariant(const Model& m, const TorusAction& act, const EqForm& eta) {
  EqForm r = eta.map([](const Form& f) { return Form(f.generators()); });  // keeps the truncation flag
  for (const auto& [e, f] : eta.terms()) {
    r.add(e, d(m, f));
    for (int j = 0; j < act.rank(); ++j) {
      Exponent up = e;
      ++up[static_cast<std::size_t>(j)];
      r.add(up, -act.contract(j, f));
    }
  }
  return r;
}

EqForm d_equivariant_twisted(const Model& m, const TorusAction& act, const EqForm& h_g, const EqForm& eta) {
  return d_equivariant(m, act, eta) - wedge(h_g.with_trunc(eta.trunc()), eta);
}

EqForm h_equivariant(const Model& m, const TorusAction& act, int trunc) {
  EqForm h = EqForm::constant(act.rank(), trunc, m.h());
  for (int j = 0; j < act.rank(); ++j) h += EqForm::constant(act.rank(), trunc, act.alpha(j)).times_x(j);
  return h;
}

void require_equivariantly_closed(const Model& m, const TorusAction& act, const EqForm& h_g) {
  EqForm r = d_equivariant(m, act, h_g);
  if (!r.is_zero()) throw DomainError("H_G is not equivariantly closed", r.to_string(m.names()));
}

EqForm moment_operator(const TorusAction& act, const EqForm& gamma) {
  EqForm r(gamma.rank(), gamma.generators(), gamma.trunc());
  for (const auto& [e, f] : gamma.terms()) {
    for (int j = 0; j < act.rank(); ++j) {
      Exponent up = e;
      ++up[static_cast<std::size_t>(j)];
      Form shift = act.mu_diff(j) * Scalar::i() - act.alpha(j);
      r.add(up, wedge(shift, f) - act.contract(j, f));
    }
  }
  return r;
}

EqForm d_moment(const Model& m, const TorusAction& act, const EqForm& gamma) {
  return gamma.map([&](const Form& f) { return d_twisted(m, f); }) + moment_operator(act, gamma);
}

EqForm moment_twist(const Model& m, const TorusAction& act, int trunc) {
  EqForm h = EqForm::constant(act.rank(), trunc, m.h());
  for (int j = 0; j < act.rank(); ++j)
    h += EqForm::constant(act.rank(), trunc, act.alpha(j) - act.mu_diff(j) * Scalar::i()).times_x(j);
  return h;
}

Diagnostics hamiltonian_check(const Model& m, const TorusAction& act, const Form& rho) {
  Diagnostics diag;
  if (rho.generators() != m.generators()) throw DomainError("spinor does not match the model");
  for (int j = 0; j < act.rank(); ++j) {
    Form residual = wedge(act.mu_diff(j) * Scalar::i() - act.alpha(j), rho) - act.contract(j, rho);
    if (!residual.is_zero())
      diag.fail("xi" + std::to_string(j + 1) + " - i(dmu + i alpha) does not annihilate rho", m.print(residual));
  }
  EqForm closed = d_equivariant(m, act, h_equivariant(m, act, 2));
  if (!closed.is_zero()) diag.fail("H + x alpha is not equivariantly closed", closed.to_string(m.names()));
  return diag;
}

std::string mu_symbol(int j) { return "mu" + std::to_string(j + 1); }

Form d_formal(const Model& m, const TorusAction& act, const Form& a) {
  Form r = d(m, a);
  for (int j = 0; j < act.rank(); ++j) {
    std::string mu = mu_symbol(j);
    Form da = a.map_coefficients([&](const Scalar& c) { return c.derivative(mu); });
    if (!da.is_zero()) r += wedge(act.mu_diff(j), da);
  }
  return r;
}

EqForm d_moment_formal(const Model& m, const TorusAction& act, const EqForm& gamma) {
  return gamma.map([&](const Form& f) { return d_formal(m, act, f) - wedge(m.h(), f); }) +
         moment_operator(act, gamma);
}

EqForm d_equivariant_twisted_formal(const Model& m, const TorusAction& act, const EqForm& h_g,
                                    const EqForm& eta) {
  EqForm r = eta.map([&](const Form& f) { return d_formal(m, act, f); });
  for (const auto& [e, f] : eta.terms())
    for (int j = 0; j < act.rank(); ++j) {
      Exponent up = e;
      ++up[static_cast<std::size_t>(j)];
      r.add(up, -act.contract(j, f));
    }
  return r - wedge(h_g.with_trunc(eta.trunc()), eta);
}

EqForm exp_moment(int rank, int generators, int trunc, int sign) {
  EqForm sum = EqForm::constant(rank, trunc, Form(generators, 1));
  EqForm power = sum;
  for (long p = 1; p <= trunc; ++p) {
    EqForm next(rank, generators, trunc);
    for (int j = 0; j < rank; ++j)
      next += power.times_x(j) * (Scalar::parameter(mu_symbol(j)) * Scalar::i() * Scalar(sign));
    power = next * Scalar(Gaussian(Rational(1, p)));
    sum += power;
  }
  return sum;
}

// ---- truncated equivariant cohomology ---------------------------------------

namespace {

std::vector<Exponent> monomials_up_to(int k, int degree) {
  std::vector<Exponent> out;
  Exponent e(static_cast<std::size_t>(k), 0);
  // Enumerate all exponent vectors with entries <= degree, keep those of small total degree.
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos == e.size()) {
      out.push_back(e);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[pos] = v;
      rec(pos + 1, left - v);
    }
    e[pos] = 0;
  };
  rec(0, degree);
  std::sort(out.begin(), out.end(), ExponentOrder{});
  return out;
}

long binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (long j = 1; j <= k; ++j) r = r * (n - k + j) / j;
  return r;
}

// Rank of the image of H(C_{trunc + reach}) in H(C_p) for p = 0..trunc.
std::vector<BettiPair> cumulative_ranks(const Model& m, const TorusAction& act, const EqForm& h_g, int report) {
  int k = act.rank();
  int n = m.generators();
  // A cocycle of C_p that survives this many further x-degrees extends to all of them:
  // each step lowers the form degree of the correction.
  int trunc = report + n / 2 + 1;
  std::size_t forms = std::size_t{1} << n;
  std::vector<Exponent> monos = monomials_up_to(k, trunc);
  std::map<Exponent, std::size_t> index;
  for (std::size_t i = 0; i < monos.size(); ++i) index[monos[i]] = i;
  EqForm h = h_g.with_trunc(trunc);

  // Columns of the truncated differential, split by parity of the source.
  std::vector<linalg::SparseVector> columns[2];
  std::vector<std::size_t> sources[2];
  for (std::size_t mi = 0; mi < monos.size(); ++mi) {
    for (std::size_t mask = 0; mask < forms; ++mask) {
      EqForm basis(k, n, trunc);
      basis.add(monos[mi], Form::monomial(n, static_cast<Mask>(mask)));
      EqForm image = d_equivariant_twisted(m, act, h, basis);
      linalg::SparseVector col;
      for (const auto& [e, f] : image.terms())
        for (const auto& [idx, v] : linalg::to_vector(f)) col.emplace_back(index.at(e) * forms + idx, v);
      std::sort(col.begin(), col.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      int parity = std::popcount(mask) % 2;
      columns[parity].push_back(std::move(col));
      sources[parity].push_back(mi * forms + mask);
    }
  }
  auto truncate = [](const linalg::SparseVector& v, std::size_t limit) {
    linalg::SparseVector r;
    for (const auto& entry : v)
      if (entry.first < limit) r.push_back(entry);
    return r;
  };
  std::vector<BettiPair> out(static_cast<std::size_t>(report + 1));
  for (int parity = 0; parity < 2; ++parity) {
    linalg::LinearMap map{columns[parity].size(), columns[parity]};
    std::vector<linalg::SparseVector> cycles;
    for (const auto& z : linalg::analyze(map).kernel) {
      linalg::SparseVector global;
      for (const auto& [local, v] : z) global.emplace_back(sources[parity][local], v);
      std::sort(global.begin(), global.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      cycles.push_back(std::move(global));
    }
    std::size_t prefix_monos = 0;
    for (int p = 0; p <= report; ++p) {
      while (prefix_monos < monos.size() && total_degree(monos[prefix_monos]) <= p) ++prefix_monos;
      std::size_t limit = prefix_monos * forms;
      linalg::Echelon boundaries;
      int other = 1 - parity;
      for (std::size_t c = 0; c < columns[other].size(); ++c)
        if (sources[other][c] < limit) boundaries.insert(truncate(columns[other][c], limit));
      std::size_t base = boundaries.rank();
      for (const auto& z : cycles) boundaries.insert(truncate(z, limit));
      std::size_t r = boundaries.rank() - base;
      (parity == 0 ? out[static_cast<std::size_t>(p)].even : out[static_cast<std::size_t>(p)].odd) = r;
    }
  }
  return out;
}

}  // namespace

EquivariantRanks equivariant_cohomology(const Model& m, const TorusAction& act, const EqForm& h_g, int trunc) {
  if (trunc < 1) throw DomainError("truncation degree must be at least 1");
  if (act.rank() < 1) throw DomainError("equivariant cohomology needs a torus of rank >= 1");
  if (m.generators() > 10) throw DomainError("equivariant cohomology limited to 10 generators");
  require_equivariantly_closed(m, act, h_g.with_trunc(trunc + m.generators() / 2 + 2));
  EquivariantRanks r;
  r.trunc = trunc;
  r.cumulative = cumulative_ranks(m, act, h_g, trunc);
  for (int p = 0; p < trunc; ++p) {
    BettiPair step = r.cumulative[static_cast<std::size_t>(p)];
    if (p > 0) {
      step.even -= r.cumulative[static_cast<std::size_t>(p - 1)].even;
      step.odd -= r.cumulative[static_cast<std::size_t>(p - 1)].odd;
    }
    r.per_degree.push_back(step);
  }
  r.total = r.cumulative[static_cast<std::size_t>(trunc - 1)];
  std::vector<BettiPair> next = cumulative_ranks(m, act, h_g, trunc + 1);
  r.stable = std::equal(r.cumulative.begin(), r.cumulative.end() - 1, next.begin());
  r.model_betti = twisted_cohomology(m.with_h(h_g.at_zero()));
  r.free = true;
  for (int p = 0; p < trunc; ++p) {
    auto mult = static_cast<std::size_t>(binomial(p + act.rank() - 1, act.rank() - 1));
    const BettiPair& got = r.per_degree[static_cast<std::size_t>(p)];
    if (got.even != mult * r.model_betti.even || got.odd != mult * r.model_betti.odd) r.free = false;
  }
  return r;
}

// ---- connections, Cartan map, descent --------------------------------------

Connection::Connection(const Model& m, const TorusAction& act, std::vector<Form> theta) : theta_(std::move(theta)) {
  if (static_cast<int>(theta_.size()) != act.rank()) throw DomainError("connection needs one theta per circle factor");
  for (int j = 0; j < rank(); ++j) {
    const Form& t = theta_[static_cast<std::size_t>(j)];
    if (t.generators() != m.generators() || !t.is_homogeneous(1))
      throw DomainError("theta" + std::to_string(j + 1) + " is not a 1-form on the model");
    for (int i = 0; i < act.rank(); ++i) {
      Form pairing_value = act.contract(i, t);
      Form expected(m.generators(), Scalar(i == j ? 1 : 0));
      if (!(pairing_value == expected))
        throw DomainError("theta" + std::to_string(j + 1) + "(xi" + std::to_string(i + 1) + ") is not " +
                              (i == j ? "1" : "0"),
                          m.print(pairing_value));
    }
    Form c = d(m, t);
    for (int i = 0; i < act.rank(); ++i) {
      Form lie = act.contract(i, c);
      if (!lie.is_zero()) throw DomainError("connection is not invariant", m.print(lie));
    }
    curvature_.push_back(c);
  }
}

Form horizontal_part(const TorusAction& act, const Connection& conn, const Form& a) {
  Form r = a;
  for (int j = 0; j < act.rank(); ++j) r -= wedge(conn.theta(j), act.contract(j, r));
  return r;
}

bool is_basic(const Model& m, const TorusAction& act, const Form& a) {
  Form da = d(m, a);
  for (int j = 0; j < act.rank(); ++j)
    if (!act.contract(j, a).is_zero() || !act.contract(j, da).is_zero()) return false;
  return true;
}

Form cartan_map(const TorusAction& act, const Connection& conn, const EqForm& eta) {
  if (eta.rank() != act.rank()) throw DomainError("equivariant form does not match the action");
  Form out(eta.generators());
  for (const auto& [e, f] : eta.terms()) {
    Form term = horizontal_part(act, conn, f);
    for (int j = 0; j < act.rank() && !term.is_zero(); ++j)
      term = wedge(wedge_power(conn.curvature(j), e[static_cast<std::size_t>(j)]), term);
    out += term;
  }
  return out;
}

GammaResult gamma_from_connection(const Model& m, const TorusAction& act, const Connection& conn) {
  int n = m.generators();
  GammaResult r{Form(n), Form(n)};
  for (int j = 0; j < act.rank(); ++j)
    for (int i = 0; i < act.rank(); ++i) {
      Form v = act.contract(i, act.alpha(j));
      if (!v.is_zero())
        throw DomainError("alpha" + std::to_string(j + 1) + " is not horizontal", m.print(act.alpha(j)));
    }
  for (int j = 0; j < act.rank(); ++j) r.gamma += wedge(conn.theta(j), act.alpha(j));
  for (int i = 0; i < act.rank(); ++i) {
    Form v = act.contract(i, r.gamma);
    if (!(v == act.alpha(i))) throw DomainError("i_xi Gamma != alpha", m.print(v - act.alpha(i)));
  }
  int trunc = 2;
  EqForm total = h_equivariant(m, act, trunc) + d_equivariant(m, act, EqForm::constant(act.rank(), trunc, r.gamma));
  r.basic_h = total.at_zero();
  if (!(total == EqForm::constant(act.rank(), trunc, r.basic_h)))
    throw DomainError("H + x alpha + d_G Gamma has x-dependent terms", total.to_string(m.names()));
  if (!is_basic(m, act, r.basic_h)) throw DomainError("H + d Gamma is not basic", m.print(r.basic_h));
  return r;
}

namespace {

Form restrict_generators(const Form& a, int keep, const std::string& what) {
  Form r(keep);
  Mask allowed = keep == 64 ? ~Mask{0} : (Mask{1} << keep) - 1;
  for (const auto& [mask, c] : a.terms()) {
    if ((mask & ~allowed) != 0) throw DomainError(what + " is not basic", a.to_string());
    r.add(mask, c);
  }
  return r;
}

}  // namespace

Quotient quotient_model(const Model& m, const TorusAction& act, const Connection& conn) {
  int n = m.generators();
  int k = act.rank();
  linalg::LinearMap xi_map;
  xi_map.domain_dim = static_cast<std::size_t>(n);
  for (int i = 0; i < n; ++i) {
    std::vector<Gaussian> col;
    for (int j = 0; j < k; ++j) col.push_back(act.xi(j)[static_cast<std::size_t>(i)]);
    xi_map.columns.push_back(linalg::from_dense(col));
  }
  auto horizontal = linalg::analyze(xi_map).kernel;
  if (static_cast<int>(horizontal.size()) != n - k) throw DomainError("action is not free on the model frame");

  // New frame: horizontal basis then theta, each as a 1-form in the old frame.
  linalg::LinearMap frame;
  frame.domain_dim = static_cast<std::size_t>(n);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < horizontal.size(); ++a) {
    frame.columns.push_back(horizontal[a]);
    const auto& v = horizontal[a];
    bool unit = v.size() == 1 && v.front().second.is_one();
    names.push_back(unit ? m.names()[v.front().first] : "h" + std::to_string(a + 1));
  }
  for (int j = 0; j < k; ++j) {
    linalg::SparseVector t;
    for (const auto& [mask, c] : conn.theta(j).terms())
      t.emplace_back(static_cast<std::size_t>(std::countr_zero(mask)), c.constant_value());
    frame.columns.push_back(t);
  }
  Quotient q;
  for (int i = 0; i < n; ++i) {
    auto coeffs = linalg::solve(frame, linalg::unit(static_cast<std::size_t>(i)));
    if (!coeffs) throw DomainError("connection forms are not independent of the horizontal forms");
    q.change_of_frame.push_back(linalg::to_form(n, [&] {
      linalg::SparseVector v;
      for (const auto& [a, c] : *coeffs) v.emplace_back(std::size_t{1} << a, c);
      std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      return v;
    }()));
  }
  int nq = n - k;
  std::vector<Form> table;
  for (std::size_t a = 0; a < horizontal.size(); ++a) {
    Form h = linalg::to_form(n, [&] {
      linalg::SparseVector v;
      for (const auto& [i, c] : horizontal[a]) v.emplace_back(std::size_t{1} << i, c);
      return v;
    }());
    Form dh = pullback(d(m, h), q.change_of_frame);
    table.push_back(restrict_generators(dh, nq, "d of a horizontal generator"));
  }
  q.model = Model(names, table, Form(nq));
  return q;
}

Form descend(const Quotient& q, const Model& m, const TorusAction& act, const Form& a) {
  if (!is_basic(m, act, a)) throw DomainError("form is not basic", m.print(a));
  return restrict_generators(pullback(a, q.change_of_frame), q.model.generators(), "form");
}

Form descend(const Model& m, const TorusAction& act, const Connection& conn, const Form& a) {
  return descend(quotient_model(m, act, conn), m, act, a);
}

Morphism identity_morphism(const Model& m) {
  Morphism f{m, {}};
  for (int i = 0; i < m.generators(); ++i) f.images.push_back(Form::generator(m.generators(), i));
  return f;
}

void require_morphism(const Model& source, const Morphism& f) {
  if (static_cast<int>(f.images.size()) != source.generators())
    throw DomainError("morphism needs one image per source generator");
  for (int i = 0; i < source.generators(); ++i) {
    Form lhs = pullback(source.d_table()[static_cast<std::size_t>(i)], f.images);
    Form rhs = d(f.target, f.images[static_cast<std::size_t>(i)]);
    if (!(lhs == rhs))
      throw DomainError("morphism does not commute with d on " + source.names()[static_cast<std::size_t>(i)],
                        f.target.print(lhs - rhs));
  }
  Form h = pullback(source.h(), f.images);
  if (!(h == f.target.h())) throw DomainError("morphism does not carry H to H", f.target.print(h - f.target.h()));
}

EqForm pullback(const Morphism& f, const EqForm& eta) {
  EqForm r(eta.rank(), f.target.generators(), eta.trunc());
  for (const auto& [e, form] : eta.terms()) r.add(e, pullback(form, f.images));
  return r;
}

Form kirwan_map(const Model& source, const Morphism& sub, const TorusAction& target_action,
                const Connection& target_connection, const EqForm& eta) {
  require_morphism(source, sub);
  EqForm pulled = pullback(sub, eta);
  Form basic = cartan_map(target_action, target_connection, pulled);
  return descend(sub.target, target_action, target_connection, basic);
}

// ---- canonical extension ---------------------------------------------------

ExtensionResult canonical_extension(const Model& m, const TorusAction& act, const GCMap& j, const Form& phi,
                                    int trunc) {
  DelOperators ops = del_operators(m, j);
  int n = m.generators();
  linalg::SparseVector v = linalg::to_vector(phi);
  linalg::SparseVector del_phi = linalg::apply(ops.del, v);
  linalg::SparseVector delbar_phi = linalg::apply(ops.delbar, v);
  if (!del_phi.empty()) throw DomainError("phi is not del-closed", m.print(linalg::to_form(n, del_phi)));
  if (!delbar_phi.empty()) throw DomainError("phi is not delbar-closed", m.print(linalg::to_form(n, delbar_phi)));
  for (int i = 0; i < act.rank(); ++i) {
    Form lie = act.contract(i, d(m, phi));
    if (!lie.is_zero()) throw DomainError("phi is not invariant", m.print(lie));
  }

  linalg::LinearMap ddbar{ops.del.domain_dim, {}};
  for (const auto& col : ops.del.columns) ddbar.columns.push_back(linalg::apply(ops.delbar, col));

  ExtensionResult r;
  r.phi_g = EqForm::constant(act.rank(), trunc, phi);
  EqForm rhs = moment_operator(act, r.phi_g);
  while (!rhs.is_zero()) {
    if (r.steps > trunc + 1) throw DomainError("canonical extension did not terminate");
    EqForm correction(act.rank(), n, trunc);
    for (const auto& [e, f] : rhs.terms()) {
      auto gamma = linalg::solve(ddbar, linalg::to_vector(-f));
      if (!gamma)
        throw DomainError("delbar del gamma = -A(phi) has no solution in x-degree " + std::to_string(total_degree(e)),
                          m.print(f));
      correction.add(e, linalg::to_form(n, linalg::apply(ops.del, *gamma)));
    }
    r.phi_g += correction;
    rhs = moment_operator(act, correction);
    ++r.steps;
  }
  r.residual = d_moment(m, act, r.phi_g);
  return r;
}

}  // namespace gcdh
