#include "gcdh/dgamodel.hpp"

#include <bit>
#include <optional>

#include "gcdh/error.hpp"

namespace gcdh {

namespace {

Form d_monomial(const Model& m, Mask mask) {
  int n = m.generators();
  Form out(n);
  std::vector<int> idx = mask_indices(mask);
  for (std::size_t p = 0; p < idx.size(); ++p) {
    const Form& dg = m.d_table()[static_cast<std::size_t>(idx[p])];
    if (dg.is_zero()) continue;
    Mask before = 0, after = 0;
    for (std::size_t q = 0; q < idx.size(); ++q) {
      if (q < p) before |= Mask{1} << idx[q];
      if (q > p) after |= Mask{1} << idx[q];
    }
    Form term = wedge(wedge(Form::monomial(n, before), dg), Form::monomial(n, after));
    out += p % 2 == 0 ? term : -term;
  }
  return out;
}

void require_model_form(const Model& m, const Form& a) {
  if (a.generators() != m.generators())
    throw DomainError("form has " + std::to_string(a.generators()) + " generators, model has " +
                      std::to_string(m.generators()));
}

std::vector<linalg::SparseVector> columns_of_parity(const Model& m, const Form& h, int parity) {
  std::vector<linalg::SparseVector> cols;
  std::size_t forms = std::size_t{1} << m.generators();
  for (std::size_t mask = 0; mask < forms; ++mask)
    if (std::popcount(mask) % 2 == parity)
      cols.push_back(linalg::to_vector(d_twisted(m, h, Form::monomial(m.generators(), static_cast<Mask>(mask)))));
  return cols;
}

}  // namespace

Model::Model(std::vector<std::string> names, std::vector<Form> d_table, Form h, Scalar volume, int orientation)
    : names_(std::move(names)),
      d_table_(std::move(d_table)),
      h_(std::move(h)),
      volume_(std::move(volume)),
      orientation_(orientation) {
  int n = generators();
  if (n > 20) throw DomainError("models are limited to 20 generators");
  if (d_table_.size() != names_.size()) throw DomainError("d table needs one entry per generator");
  if (orientation_ != 1 && orientation_ != -1) throw DomainError("orientation must be +1 or -1");
  if (h_.generators() == 0 && n > 0 && h_.is_zero()) h_ = Form(n);
  require_model_form(*this, h_);
  for (std::size_t i = 0; i < d_table_.size(); ++i) {
    if (d_table_[i].generators() == 0 && n > 0 && d_table_[i].is_zero()) d_table_[i] = Form(n);
    require_model_form(*this, d_table_[i]);
    if (!d_table_[i].is_homogeneous(2)) throw DomainError("d " + names_[i] + " is not a 2-form", print(d_table_[i]));
  }
  for (std::size_t i = 0; i < d_table_.size(); ++i) {
    Form dd = d(*this, d_table_[i]);
    if (!dd.is_zero()) throw DomainError("d^2 != 0 on " + names_[i], print(dd));
  }
  if (!h_.is_homogeneous(3)) throw DomainError("H is not a 3-form", print(h_));
  Form dh = d(*this, h_);
  if (!dh.is_zero()) throw DomainError("H not closed", print(dh));
}

std::vector<std::string> Model::default_names(int n) {
  std::vector<std::string> names;
  for (int i = 1; i <= n; ++i) names.push_back("e" + std::to_string(i));
  return names;
}

Model Model::torus(int n, Form h) {
  return {default_names(n), std::vector<Form>(static_cast<std::size_t>(n), Form(n)), h.generators() == 0 ? Form(n) : h};
}

Model Model::with_h(Form h) const { return {names_, d_table_, std::move(h), volume_, orientation_}; }

Form d(const Model& m, const Form& a) {
  require_model_form(m, a);
  Form out(m.generators());
  for (const auto& [mask, c] : a.terms()) {
    Form dm = d_monomial(m, mask);
    if (!dm.is_zero()) out += dm * c;
  }
  return out;
}

Form d_twisted(const Model& m, const Form& h, const Form& a) { return d(m, a) - wedge(h, a); }

Form d_twisted(const Model& m, const Form& a) { return d_twisted(m, m.h(), a); }

BettiPair twisted_cohomology(const Model& m) {
  std::size_t forms = std::size_t{1} << m.generators();
  std::size_t even_dim = m.generators() == 0 ? 1 : forms / 2;
  std::size_t odd_dim = forms - even_dim;
  std::size_t r_even = linalg::rank(columns_of_parity(m, m.h(), 0));
  std::size_t r_odd = linalg::rank(columns_of_parity(m, m.h(), 1));
  return {even_dim - r_even - r_odd, odd_dim - r_odd - r_even};
}

std::vector<std::size_t> betti_numbers(const Model& m) {
  if (!m.h().is_zero()) throw DomainError("Z-graded Betti numbers need H = 0");
  int n = m.generators();
  std::vector<std::size_t> dims(static_cast<std::size_t>(n + 1)), ranks(static_cast<std::size_t>(n + 2));
  std::vector<std::vector<linalg::SparseVector>> cols(static_cast<std::size_t>(n + 1));
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    auto deg = static_cast<std::size_t>(std::popcount(mask));
    ++dims[deg];
    cols[deg].push_back(linalg::to_vector(d(m, Form::monomial(n, static_cast<Mask>(mask)))));
  }
  for (std::size_t p = 0; p <= static_cast<std::size_t>(n); ++p) ranks[p + 1] = linalg::rank(cols[p]);
  std::vector<std::size_t> betti;
  for (std::size_t p = 0; p <= static_cast<std::size_t>(n); ++p) betti.push_back(dims[p] - ranks[p + 1] - ranks[p]);
  return betti;
}

Form exp_lambda_transport(const Model& m, const Form& lambda, const Form& a) {
  require_model_form(m, lambda);
  require_model_form(m, a);
  if (!lambda.is_homogeneous(2)) throw DomainError("lambda is not a 2-form", m.print(lambda));
  return wedge(exp_two_form(lambda), a);
}

Form module_wedge(const Model& m, const Form& a, const Form& b) {
  Form da = d(m, a);
  if (!da.is_zero()) throw DomainError("first factor is not d-closed", m.print(da));
  Form db = d_twisted(m, b);
  if (!db.is_zero()) throw DomainError("second factor is not d_H-closed", m.print(db));
  Form prod = wedge(a, b);
  Form residual = d_twisted(m, prod);
  if (!residual.is_zero()) throw DomainError("product is not d_H-closed", m.print(residual));
  return prod;
}

Form sigma_twist(const Model& m, const Form& a) {
  Form da = d_twisted(m, a);
  if (!da.is_zero()) throw DomainError("form is not d_H-closed", m.print(da));
  Form s = reversal(a);
  Form residual = d_twisted(m, -m.h(), s);
  if (!residual.is_zero()) throw DomainError("reversal is not d_{-H}-closed", m.print(residual));
  return s;
}

bool sigma_clifford_check(const WVector& v, const Form& a) {
  if (!clifford(v, a).is_zero()) return true;
  WVector flipped = v;
  for (std::size_t i = v.size() / 2; i < v.size(); ++i) flipped[i] = -flipped[i];
  return clifford(flipped, reversal(a)).is_zero();
}

// ---- U^k graded operators -------------------------------------------------

GradedBasis::GradedBasis(const GCMap& j)
    : generators_(j.dim()), half_(j.dim() / 2), components_(uk_grading(j)) {
  for (const auto& comp : components_) {
    for (const auto& f : comp.basis) {
      echelon_.insert(linalg::to_vector(f), linalg::unit(slots_.size()));
      owner_.push_back(comp.k + half_);
      slots_.push_back(f);
    }
  }
}

std::vector<Form> GradedBasis::decompose(const Form& a) const {
  if (a.generators() != generators_) throw DomainError("form does not match the structure's dimension");
  linalg::SparseVector combination;
  if (!echelon_.reduce(linalg::to_vector(a), &combination).empty())
    throw DomainError("U^k eigenvectors do not span the exterior algebra");
  std::vector<Form> parts(static_cast<std::size_t>(2 * half_ + 1), Form(generators_));
  for (const auto& [slot, c] : combination)
    parts[static_cast<std::size_t>(owner_[slot])] -= slots_[slot] * Scalar(c);
  return parts;
}

DelDelbar del_delbar_split(const Model& m, const GradedBasis& basis, const Form& a) {
  require_model_form(m, a);
  int half = basis.half();
  DelDelbar out{Form(m.generators()), Form(m.generators())};
  std::vector<Form> parts = basis.decompose(a);
  for (int k = -half; k <= half; ++k) {
    const Form& ak = parts[static_cast<std::size_t>(k + half)];
    if (ak.is_zero()) continue;
    std::vector<Form> image = basis.decompose(d_twisted(m, ak));
    for (int j = -half; j <= half; ++j) {
      const Form& piece = image[static_cast<std::size_t>(j + half)];
      if (piece.is_zero()) continue;
      if (j == k - 1) {
        out.del += piece;
      } else if (j == k + 1) {
        out.delbar += piece;
      } else {
        throw DomainError("structure is not integrable: d_H maps U^" + std::to_string(k) + " into U^" +
                              std::to_string(j),
                          m.print(piece));
      }
    }
  }
  return out;
}

DelDelbar del_delbar_split(const Model& m, const GCMap& j, const Form& a) {
  if (j.dim() != m.generators()) throw DomainError("structure dimension does not match the model");
  return del_delbar_split(m, GradedBasis(j), a);
}

DelOperators del_operators(const Model& m, const GCMap& j) {
  if (j.dim() != m.generators()) throw DomainError("structure dimension does not match the model");
  if (m.generators() > 8) throw DomainError("del/delbar operators limited to 8 generators");
  GradedBasis basis(j);
  int n = m.generators();
  DelOperators maps;
  std::size_t forms = std::size_t{1} << n;
  maps.del.domain_dim = maps.delbar.domain_dim = forms;
  for (std::size_t mask = 0; mask < forms; ++mask) {
    DelDelbar split = del_delbar_split(m, basis, Form::monomial(n, static_cast<Mask>(mask)));
    maps.del.columns.push_back(linalg::to_vector(split.del));
    maps.delbar.columns.push_back(linalg::to_vector(split.delbar));
  }
  return maps;
}

namespace {

std::vector<linalg::SparseVector> composite_columns(const linalg::LinearMap& outer, const linalg::LinearMap& inner) {
  std::vector<linalg::SparseVector> out;
  for (const auto& col : inner.columns) out.push_back(linalg::apply(outer, col));
  return out;
}

/// First vector of `a` (in order) outside span(b).
std::optional<linalg::SparseVector> first_outside(const std::vector<linalg::SparseVector>& a,
                                                  const std::vector<linalg::SparseVector>& b) {
  linalg::Echelon e;
  for (const auto& v : b) e.insert(v);
  for (const auto& v : a)
    if (!e.contains(v)) return v;
  return std::nullopt;
}

}  // namespace

DdbarResult ddbar_lemma_check(const Model& m, const GCMap& j) {
  DelOperators maps = del_operators(m, j);
  int n = m.generators();
  auto del = linalg::analyze(maps.del);
  auto delbar = linalg::analyze(maps.delbar);
  std::vector<linalg::SparseVector> im_dd = composite_columns(maps.delbar, maps.del);
  linalg::Echelon dd;
  for (const auto& v : im_dd) dd.insert(v);
  std::vector<linalg::SparseVector> im_dd_basis = dd.basis();

  auto first = linalg::intersection(del.kernel, delbar.image);
  auto second = linalg::intersection(del.image, delbar.kernel);
  DdbarResult r;
  r.ker_del_im_delbar = first.size();
  r.im_del_ker_delbar = second.size();
  r.im_delbar_del = im_dd_basis.size();
  r.witness = Form(n);
  if (auto w = first_outside(first, im_dd_basis)) {
    r.ok = false;
    r.failed = "ker del ∩ im delbar != im delbar del";
    r.witness = linalg::to_form(n, *w);
  } else if (auto w2 = first_outside(second, im_dd_basis)) {
    r.ok = false;
    r.failed = "im del ∩ ker delbar != im delbar del";
    r.witness = linalg::to_form(n, *w2);
  }
  return r;
}

BettiPair delbar_closed_cohomology(const Model& m, const GCMap& j) {
  DelOperators maps = del_operators(m, j);
  int n = m.generators();
  std::size_t forms = std::size_t{1} << n;
  std::size_t dims[2] = {0, 0};
  std::size_t ranks[2] = {0, 0};
  for (int parity = 0; parity < 2; ++parity) {
    // ker delbar restricted to one parity.
    std::vector<std::size_t> masks;
    linalg::LinearMap restricted;
    for (std::size_t mask = 0; mask < forms; ++mask) {
      if (std::popcount(mask) % 2 != parity) continue;
      masks.push_back(mask);
      restricted.columns.push_back(maps.delbar.columns[mask]);
    }
    restricted.domain_dim = masks.size();
    std::vector<linalg::SparseVector> images;
    auto kernel = linalg::analyze(restricted).kernel;
    dims[parity] = kernel.size();
    for (const auto& v : kernel) {
      linalg::SparseVector global;
      for (const auto& [idx, x] : v) global.emplace_back(masks[idx], x);
      images.push_back(linalg::to_vector(d_twisted(m, linalg::to_form(n, global))));
    }
    ranks[parity] = linalg::rank(images);
  }
  return {dims[0] - ranks[0] - ranks[1], dims[1] - ranks[1] - ranks[0]};
}

}  // namespace gcdh
