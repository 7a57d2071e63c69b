#include "doctest.h"
#include "gcdh/error.hpp"
#include "gcdh/gcydh.hpp"
#include "test_models.hpp"

using namespace gcdh;
using testing::e;

namespace {

const Scalar I = Scalar::i();
const Scalar PI = Scalar::pi();
const Scalar T = Scalar::parameter("t");

Form dz(int n, int a, int b) { return e(n, {a}) + e(n, {b}, I); }

Form rho1() { return wedge(exp_two_form(e(4, {1, 2}) * -I), dz(4, 3, 4)); }
Form rho2() { return wedge(dz(4, 1, 2), dz(4, 3, 4)); }

}  // namespace

TEST_CASE("generalized Calabi-Yau check") {
  Model t2 = Model::torus(2);
  GCYStructure g = gcy_check(t2, exp_two_form(e(2, {1, 2}) * I));
  CHECK(g.pairing == Scalar(-2) * I);
  CHECK(g.n == 1);
  CHECK(g.type == 0);
  CHECK(g.maximal_isotropic);
  CHECK(g.transverse);

  Model t4 = Model::torus(4);
  GCYStructure g1 = gcy_check(t4, rho1());
  CHECK(g1.pairing == Scalar(4));
  CHECK(g1.type == 1);
  CHECK(gcy_check(t4, rho2()).type == 2);
  CHECK_THROWS_AS(gcy_check(t4, dz(4, 3, 4)), DomainError);

  Model kt = testing::kodaira_thurston();
  CHECK_NOTHROW(gcy_check(kt, exp_two_form(e(4, {1, 3}) * I + e(4, {2, 4}) * I)));
  CHECK_THROWS_AS(gcy_check(kt, exp_two_form(e(4, {3, 4}) * I)), DomainError);
}

TEST_CASE("volume form") {
  Model t2 = Model::torus(2);
  CHECK(volume_form(gcy_check(t2, exp_two_form(e(2, {1, 2}) * I))) == e(2, {1, 2}));
  Model t4 = Model::torus(4);
  CHECK(volume_form(gcy_check(t4, rho2())) == e(4, {1, 2, 3, 4}));
  for (int n = 1; n <= 3; ++n) {
    Model tm = Model::torus(2 * n);
    Form omega(2 * n);
    for (int a = 0; a < n; ++a) omega += e(2 * n, {2 * a + 1, 2 * a + 2});
    Form expected = wedge_power(omega, n);
    for (int f = 2; f <= n; ++f) expected = expected * Scalar(Gaussian(Rational(1, f)));
    CHECK(volume_form(gcy_check(tm, exp_two_form(omega * I))) == expected);
  }
}

TEST_CASE("quotient families and DH densities") {
  Model t4 = Model::torus(4);
  Form c = e(4, {1, 2});
  GCYFamily f1 = quotient_family(t4, rho1(), c, "t", {{{"t", Rational(0)}}, {{"t", Rational(2)}}});
  CHECK(f1.structure.pairing == Scalar(4) * (T + Scalar(1)));
  CHECK(dh_normalization(3, 1) == -PI / Scalar(2));
  DHResult d1 = dh_density(f1, 3, 1, +1);
  CHECK(d1.density == Scalar(-2) * PI * (T + Scalar(1)));
  CHECK(d1.degree_bound == 2);
  CHECK(d1.real);

  GCYFamily f2 = quotient_family(t4, rho2(), c, "t");
  CHECK(f2.structure.rho == rho2());
  CHECK(f2.structure.pairing == Scalar(-4));
  CHECK(dh_density(f2, 3, 1, -1).density == Scalar(-2) * PI);

  GCYFamily constant = quotient_family(t4, rho2(), Form(4), "t");
  CHECK(constant.structure.rho == rho2());

  // The pairing vanishes at t = -1, so a sample there is rejected.
  CHECK_THROWS_AS(quotient_family(t4, rho1(), c, "t", {{{"t", Rational(-1)}}}), DomainError);
  Model kt = testing::kodaira_thurston();
  CHECK_THROWS_AS(quotient_family(kt, exp_two_form(e(4, {1, 3}) * I), e(4, {3, 4}), "t"), DomainError);

  // A closed parameter-free B-field leaves the density unchanged.
  Form b = e(4, {1, 3}) + e(4, {2, 4}) * Scalar(3);
  GCYFamily shifted = f1;
  shifted.structure = gcy_check(t4, wedge(exp_two_form(-b), f1.structure.rho), f1.structure.samples);
  CHECK(dh_density(shifted, 3, 1, +1).density == d1.density);

  // Symplectic torus with no fiber: constant density equal to the volume.
  GCYFamily sym = quotient_family(Model::torus(2), exp_two_form(e(2, {1, 2}) * I), Form(2), "t");
  CHECK(dh_density(sym, 1, 0, +1).density == Scalar(1));

  CHECK_THROWS_AS(dh_density(f1, 3, 1, +1, 2), DomainError);
  CHECK_THROWS_AS(dh_density(f1, 2, 1, +1), DomainError);
}

TEST_CASE("Lefschetz check") {
  CHECK(lefschetz_check(Model::torus(2), e(2, {1, 2})).ok);
  CHECK(lefschetz_check(Model::torus(4), e(4, {1, 2}) + e(4, {3, 4})).ok);
  CHECK_THROWS_AS(lefschetz_check(Model::torus(4), e(4, {1, 2})), DomainError);
  CHECK(lefschetz_check(testing::kodaira_thurston(), e(4, {1, 3}) + e(4, {2, 4})).ok);
}
