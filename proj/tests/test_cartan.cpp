#include <random>

#include "doctest.h"
#include "gcdh/cartan.hpp"
#include "gcdh/error.hpp"
#include "test_models.hpp"

using namespace gcdh;
using testing::e;

namespace {

const Scalar I = Scalar::i();

std::vector<Rational> unit_vector(int n, int i) {
  std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
  v[static_cast<std::size_t>(i - 1)] = 1;
  return v;
}

EqForm x_times(const Form& f, int trunc = 3) { return EqForm::constant(1, trunc, f).times_x(0); }

BettiPair pair(std::size_t e, std::size_t o) { return {e, o}; }

}  // namespace

TEST_CASE("equivariant differential") {
  Model t2 = Model::torus(2);
  TorusAction trivial(t2, {std::vector<Rational>(2, Rational(0))});
  EqForm a = EqForm::constant(1, 3, e(2, {1}));
  CHECK(d_equivariant(t2, trivial, a).is_zero());

  TorusAction s1(t2, {unit_vector(2, 1)});
  CHECK(d_equivariant(t2, s1, a) == x_times(Form(2, -1)));
  CHECK(d_equivariant(t2, s1, x_times(e(2, {2}))).is_zero());
  EqForm top = EqForm::constant(1, 1, e(2, {1})).times_x(0);
  EqForm dropped = d_equivariant(t2, s1, top);
  CHECK(dropped.is_zero());
  CHECK(dropped.truncated());
}

TEST_CASE("twisted equivariant differential") {
  Model t3 = Model::torus(3);
  TorusAction act(t3, {unit_vector(3, 1)}, {}, {e(3, {2})});
  EqForm h_g = h_equivariant(t3, act, 3);
  CHECK(h_g == x_times(e(3, {2})));
  CHECK_NOTHROW(require_equivariantly_closed(t3, act, h_g));
  CHECK(d_equivariant_twisted(t3, act, h_g, EqForm::constant(1, 3, Form(3, 1))) == -x_times(e(3, {2})));
  CHECK(d_equivariant_twisted(t3, act, EqForm(1, 3, 3), x_times(e(3, {1}))) == d_equivariant(t3, act, x_times(e(3, {1}))));

  Model twisted = Model::torus(3, e(3, {1, 2, 3}));
  TorusAction bad(twisted, {unit_vector(3, 1)});
  CHECK_THROWS_AS(require_equivariantly_closed(twisted, bad, h_equivariant(twisted, bad, 3)), DomainError);
}

TEST_CASE("d_G squares to zero below the truncation") {
  std::mt19937 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    Model m = trial % 2 == 0 ? Model::torus(3) : testing::heisenberg();
    int axis = trial % 2 == 0 ? 1 + trial % 3 : 3;
    TorusAction act(m, {unit_vector(3, axis)});
    EqForm eta(1, 3, 4);
    for (int p = 0; p <= 2; ++p) {
      Exponent ex{p};
      eta.add(ex, testing::random_form(rng, 3, 4));
    }
    CHECK(d_equivariant(m, act, d_equivariant(m, act, eta)).is_zero());
    EqForm h_g = h_equivariant(m, act, 4);
    CHECK(d_equivariant_twisted(m, act, h_g, d_equivariant_twisted(m, act, h_g, eta)).is_zero());
  }
}

TEST_CASE("moment operator and Hamiltonian check") {
  Model t2 = Model::torus(2);
  TorusAction omega_data(t2, {unit_vector(2, 1)}, {e(2, {2})});
  EqForm a = moment_operator(omega_data, x_times(Form(2, 1)));
  CHECK(a == x_times(e(2, {2}, I)).times_x(0));

  TorusAction no_moment(t2, {unit_vector(2, 1)});
  CHECK(moment_operator(no_moment, EqForm::constant(1, 3, e(2, {1, 2}))) == x_times(-e(2, {2})));

  Form rho = Form(2, 1) + e(2, {1, 2}, I);
  CHECK(hamiltonian_check(t2, omega_data, rho).ok);
  Diagnostics fail = hamiltonian_check(t2, no_moment, rho);
  CHECK_FALSE(fail.ok);
  CHECK(fail.residual == "-i*e2");
  TorusAction trivial(t2, {std::vector<Rational>(2, Rational(0))});
  CHECK(hamiltonian_check(t2, trivial, rho).ok);

  // D_G^2 vanishes for Hamiltonian data and not when i_xi H != d alpha.
  for (std::size_t mask = 0; mask < 4; ++mask) {
    EqForm basis = EqForm::constant(1, 3, Form::monomial(2, mask));
    CHECK(d_moment(t2, omega_data, d_moment(t2, omega_data, basis)).is_zero());
  }
  Model t3h = Model::torus(3, e(3, {1, 2, 3}));
  TorusAction broken(t3h, {unit_vector(3, 1)});
  CHECK_FALSE(hamiltonian_check(t3h, broken, Form(3, 1)).ok);
  CHECK_FALSE(d_moment(t3h, broken, d_moment(t3h, broken, EqForm::constant(1, 3, Form(3, 1)))).is_zero());
}

TEST_CASE("conjugation by the formal moment map") {
  // D_G(e^{-i mu} g) = e^{-i mu} d_{G,H_G}(g), with d mu = m.
  std::mt19937 rng(29);
  Model t2 = Model::torus(2);
  TorusAction omega_data(t2, {unit_vector(2, 1)}, {e(2, {2})});
  Model t4 = Model::torus(4);
  TorusAction two(t4, {unit_vector(4, 1), unit_vector(4, 3)}, {e(4, {2}), e(4, {4})}, {e(4, {4}), Form(4)});
  struct Case {
    const Model* m;
    const TorusAction* act;
  };
  for (const Case& c : {Case{&t2, &omega_data}, Case{&t4, &two}}) {
    int trunc = 3;
    int k = c.act->rank();
    int n = c.m->generators();
    EqForm h_g = h_equivariant(*c.m, *c.act, trunc);
    EqForm conj = exp_moment(k, n, trunc, -1);
    for (int trial = 0; trial < 5; ++trial) {
      EqForm g = EqForm::constant(k, trunc, testing::random_form(rng, n, 5));
      g += EqForm::constant(k, trunc, testing::random_form(rng, n, 3)).times_x(0);
      EqForm lhs = d_moment_formal(*c.m, *c.act, wedge(conj, g));
      EqForm rhs = wedge(conj, d_equivariant_twisted_formal(*c.m, *c.act, h_g, g));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("truncated equivariant cohomology") {
  Model t2 = Model::torus(2);
  TorusAction trivial(t2, {std::vector<Rational>(2, Rational(0))});
  EquivariantRanks tr = equivariant_cohomology(t2, trivial, EqForm(1, 2, 3), 3);
  CHECK(tr.per_degree == std::vector<BettiPair>{pair(2, 2), pair(2, 2), pair(2, 2)});
  CHECK(tr.free);
  CHECK(tr.stable);

  TorusAction s1(t2, {unit_vector(2, 1)});
  for (int trunc : {2, 3}) {
    EquivariantRanks fr = equivariant_cohomology(t2, s1, EqForm(1, 2, trunc), trunc);
    CHECK(fr.total == pair(1, 1));
    CHECK(fr.stable);
    CHECK_FALSE(fr.free);
  }

  Model t4 = Model::torus(4, e(4, {2, 3, 4}));
  TorusAction on_t4(t4, {unit_vector(4, 1)});
  EquivariantRanks tw = equivariant_cohomology(t4, on_t4, h_equivariant(t4, on_t4, 2), 2);
  CHECK(tw.total == pair(3, 3));
  CHECK(tw.stable);

  // Circle bundle with Euler class e1^e2: H_G of the Heisenberg model is H(T^2).
  Model heis = testing::heisenberg();
  TorusAction fiber(heis, {unit_vector(3, 3)});
  CHECK(equivariant_cohomology(heis, fiber, EqForm(1, 3, 3), 3).total == pair(2, 2));

  // Two-torus acting trivially: per-degree multiplicities 1, 2, 3.
  TorusAction trivial2(t2, {std::vector<Rational>(2, Rational(0)), std::vector<Rational>(2, Rational(0))});
  EquivariantRanks t2r = equivariant_cohomology(t2, trivial2, EqForm(2, 2, 3), 3);
  CHECK(t2r.per_degree == std::vector<BettiPair>{pair(2, 2), pair(4, 4), pair(6, 6)});
  CHECK(t2r.free);
}

TEST_CASE("free circle actions match the quotient") {
  for (int m = 2; m <= 4; ++m) {
    Model tm = Model::torus(m);
    TorusAction act(tm, {unit_vector(m, 1)});
    BettiPair quotient = twisted_cohomology(Model::torus(m - 1));
    for (int trunc : {2, 3}) {
      EquivariantRanks r = equivariant_cohomology(tm, act, EqForm(1, m, trunc), trunc);
      CHECK(r.total == quotient);
      CHECK(r.stable);
    }
  }
}

TEST_CASE("Cartan map") {
  Model t2 = Model::torus(2);
  TorusAction s1(t2, {unit_vector(2, 1)});
  Connection conn(t2, s1, {e(2, {1})});
  CHECK(cartan_map(s1, conn, EqForm::constant(1, 3, Form(2, 1))) == Form(2, 1));
  CHECK(cartan_map(s1, conn, x_times(Form(2, 1))).is_zero());
  CHECK(cartan_map(s1, conn, EqForm::constant(1, 3, e(2, {1, 2}))).is_zero());
  CHECK(cartan_map(s1, conn, EqForm::constant(1, 3, e(2, {2}))) == e(2, {2}));
  CHECK_THROWS_AS(Connection(t2, s1, {e(2, {2})}), DomainError);

  // Nontrivial curvature: chain map on the Heisenberg circle bundle.
  Model heis = testing::heisenberg();
  TorusAction fiber(heis, {unit_vector(3, 3)});
  Connection theta(heis, fiber, {e(3, {3})});
  CHECK(theta.curvature(0) == e(3, {1, 2}));
  CHECK(cartan_map(fiber, theta, x_times(Form(3, 1))) == e(3, {1, 2}));
  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    EqForm eta = EqForm::constant(1, 3, testing::random_form(rng, 3, 4));
    eta += x_times(testing::random_form(rng, 3, 3));
    Form lhs = cartan_map(fiber, theta, d_equivariant(heis, fiber, eta));
    Form rhs = d(heis, cartan_map(fiber, theta, eta));
    CHECK(lhs == rhs);
  }
}

TEST_CASE("Gamma and descent") {
  Model t3 = Model::torus(3);
  TorusAction act(t3, {unit_vector(3, 1)}, {}, {e(3, {2})});
  Connection conn(t3, act, {e(3, {1})});
  GammaResult g = gamma_from_connection(t3, act, conn);
  CHECK(g.gamma == e(3, {1, 2}));
  CHECK(act.contract(0, g.gamma) == e(3, {2}));
  CHECK(g.basic_h.is_zero());
  CHECK(descend(t3, act, conn, g.basic_h).is_zero());

  TorusAction zero(t3, {unit_vector(3, 1)});
  CHECK(gamma_from_connection(t3, zero, conn).gamma.is_zero());
  TorusAction vertical(t3, {unit_vector(3, 1)}, {}, {e(3, {1})});
  CHECK_THROWS_AS(gamma_from_connection(t3, vertical, conn), DomainError);

  Model t4 = Model::torus(4);
  TorusAction on_t4(t4, {unit_vector(4, 1)});
  Connection c4(t4, on_t4, {e(4, {1})});
  Quotient q = quotient_model(t4, on_t4, c4);
  CHECK(q.model.generators() == 3);
  CHECK(q.model.names() == std::vector<std::string>{"e2", "e3", "e4"});
  CHECK(descend(q, t4, on_t4, Form(4, 1)) == Form(3, 1));
  CHECK(descend(q, t4, on_t4, e(4, {2, 3, 4})) == e(3, {1, 2, 3}));
  CHECK_THROWS_AS(descend(q, t4, on_t4, e(4, {1, 2})), DomainError);

  // Heisenberg over T^2: the quotient is a torus.
  Model heis = testing::heisenberg();
  TorusAction fiber(heis, {unit_vector(3, 3)});
  Quotient qh = quotient_model(heis, fiber, Connection(heis, fiber, {e(3, {3})}));
  CHECK(betti_numbers(qh.model) == std::vector<std::size_t>{1, 2, 1});
}

TEST_CASE("Kirwan map") {
  Model t4 = Model::torus(4, e(4, {2, 3, 4}));
  TorusAction act(t4, {unit_vector(4, 1)});
  Connection conn(t4, act, {e(4, {1})});
  Morphism id = identity_morphism(t4);
  CHECK(kirwan_map(t4, id, act, conn, EqForm::constant(1, 2, Form(4, 1))) == Form(3, 1));
  CHECK(kirwan_map(t4, id, act, conn, x_times(Form(4, 1), 2)).is_zero());
  CHECK(kirwan_map(t4, id, act, conn, EqForm::constant(1, 2, e(4, {2, 3, 4}))) == e(3, {1, 2, 3}));

  Morphism bad = id;
  bad.images[0] = e(4, {2});
  bad.images[1] = e(4, {1});
  CHECK_THROWS_AS(require_morphism(t4, bad), DomainError);
}

TEST_CASE("canonical extension") {
  Model t2 = Model::torus(2);
  GCMap jw = GCMap::symplectic(e(2, {1, 2}));
  TorusAction data(t2, {unit_vector(2, 1)}, {e(2, {2})});
  ExtensionResult r = canonical_extension(t2, data, jw, e(2, {2}), 3);
  CHECK(r.phi_g == EqForm::constant(1, 3, e(2, {2})));
  CHECK(r.residual.is_zero());
  CHECK(r.steps == 0);

  TorusAction trivial(t2, {std::vector<Rational>(2, Rational(0))});
  ExtensionResult r1 = canonical_extension(t2, trivial, jw, Form(2, 1) + e(2, {1, 2}, I), 3);
  CHECK(r1.residual.is_zero());

  // On a torus del = delbar = 0, so a nonzero A(omega) cannot be delbar-del exact.
  Model t4 = Model::torus(4);
  Form omega = e(4, {1, 2}) + e(4, {3, 4});
  TorusAction ham(t4, {unit_vector(4, 1)}, {e(4, {2})});
  CHECK_THROWS_AS(canonical_extension(t4, ham, GCMap::symplectic(omega), omega, 2), DomainError);
}
