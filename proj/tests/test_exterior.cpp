#include <random>

#include "doctest.h"
#include "gcdh/error.hpp"
#include "gcdh/form.hpp"
#include "random_forms.hpp"

using namespace gcdh;

namespace {

// e(n, {1, 2}) = e1^e2, one-based as in the usual notation.
Form e(int n, std::initializer_list<int> idx, Scalar c = 1) {
  Mask m = 0;
  for (int i : idx) m |= Mask{1} << (i - 1);
  return Form::monomial(n, m, c);
}

const Scalar I = Scalar::i();
const Scalar t = Scalar::parameter("t");

}  // namespace

TEST_CASE("scalar arithmetic and printing") {
  Scalar pi = Scalar::pi();
  CHECK((Scalar(-2) * pi * (t + 1)).to_string() == "-2*pi*(t+1)");
  CHECK((Scalar(4) * (t + 1)).to_string() == "4*(t+1)");
  CHECK((Scalar(-2) * pi * (t + 1)).to_expanded_string() == "-2*pi*t-2*pi");
  CHECK((I * I) == Scalar(-1));
  CHECK((t + I).conj() == t - I);
  CHECK(Scalar(Gaussian(Rational(1), Rational(2))).to_string() == "(1+2*i)");
  CHECK((t * t).derivative("t") == Scalar(2) * t);
  CHECK_THROWS_AS(Scalar(1) / t, DomainError);
  CHECK((Scalar(3) / Scalar(6)).to_string() == "1/2");
}

TEST_CASE("wedge") {
  CHECK(wedge(e(2, {1}), e(2, {2})) == e(2, {1, 2}));
  CHECK(wedge(e(2, {2}), e(2, {1})) == -e(2, {1, 2}));
  Form a = Form(4, 1) + e(4, {1, 2});
  Form b = Form(4, 1) + e(4, {3, 4});
  CHECK(wedge(a, b) == Form(4, 1) + e(4, {1, 2}) + e(4, {3, 4}) + e(4, {1, 2, 3, 4}));
  CHECK_THROWS_AS(wedge(e(2, {1}), e(3, {1})), DomainError);
}

TEST_CASE("contract") {
  CHECK(contract(0, e(2, {1})) == Form(2, 1));
  CHECK(contract(0, e(2, {2})).is_zero());
  CHECK(contract(1, e(2, {1, 2})) == -e(2, {1}));
  CHECK_THROWS_AS(contract(2, e(2, {1})), DomainError);
}

TEST_CASE("reversal") {
  CHECK(reversal(e(3, {1})) == e(3, {1}));
  CHECK(reversal(e(3, {1, 2})) == -e(3, {1, 2}));
  CHECK(reversal(e(3, {1, 2, 3})) == -e(3, {1, 2, 3}));
}

TEST_CASE("mukai golden values") {
  CHECK(mukai(e(4, {1, 2, 3, 4}), Form(4, 1)) == Scalar(1));
  Form c = e(4, {1, 2});
  Form dz1 = e(4, {1}) + e(4, {2}, I);
  Form dz2 = e(4, {3}) + e(4, {4}, I);
  Form rho1 = wedge(exp_nilpotent(c * (-I * (t + 1))), dz2);
  CHECK(mukai(rho1, rho1.conj()) == Scalar(4) * (t + 1));
  Form rho2 = wedge(dz1, dz2);
  CHECK(mukai(rho2, rho2.conj()) == Scalar(-4));
}

TEST_CASE("exp of two-forms") {
  CHECK(exp_two_form(Form(4)) == Form(4, 1));
  CHECK(exp_two_form(e(4, {1, 2})) == Form(4, 1) + e(4, {1, 2}));
  CHECK(exp_two_form(e(4, {1, 2}) + e(4, {3, 4})) ==
        Form(4, 1) + e(4, {1, 2}) + e(4, {3, 4}) + e(4, {1, 2, 3, 4}));
  CHECK_THROWS_AS(exp_two_form(e(4, {1})), DomainError);
}

TEST_CASE("clifford action") {
  WVector d1{1, 0, 0, 0};
  CHECK(clifford(WVector{1, 0}, e(1, {1})) == Form(1, 1));
  CHECK(clifford(WVector{0, 1}, Form(1, 1)) == e(1, {1}));
  WVector v{1, 0, 0, -Gaussian::i()};
  CHECK(clifford(v, Form(2, 1) + e(2, {1, 2}, I)).is_zero());
  CHECK_THROWS_AS(clifford(WVector{1, 0}, Form(2, 1)), DomainError);
}

TEST_CASE("integrate") {
  CHECK(integrate(e(3, {1, 2, 3}), 1, 1) == Scalar(1));
  CHECK(integrate(e(3, {1}), 5, 1).is_zero());
  CHECK(integrate(e(4, {1, 2, 3, 4}, Scalar(4) * (t + 1)), 1, 1) == Scalar(4) * (t + 1));
  CHECK(integrate(e(2, {1, 2}), 1, -1) == Scalar(-1));
}

TEST_CASE("printing") {
  Form f = Form(2, 1) + e(2, {1, 2}, I) - e(2, {2}, 2);
  CHECK(f.to_string() == "1 - 2*e2 + i*e1^e2");
  CHECK(e(2, {1}, t + 1).to_string() == "(t+1)*e1");
}

TEST_CASE("exterior properties") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 5;
    int p = static_cast<int>(rng() % 4), q = static_cast<int>(rng() % 4);
    Form a = testing::random_form(rng, n, 5, p);
    Form b = testing::random_form(rng, n, 5, q);
    Form c = testing::random_form(rng, n, 4);
    int s = (p * q) % 2 == 0 ? 1 : -1;
    CHECK(wedge(a, b) == wedge(b, a) * Scalar(s));
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    CHECK(reversal(wedge(a, b)) == wedge(reversal(b), reversal(a)));
    int i = static_cast<int>(rng() % static_cast<unsigned>(n));
    CHECK(contract(i, contract(i, c)).is_zero());
    Form sign_a = p % 2 == 0 ? a : -a;
    CHECK(contract(i, wedge(a, b)) == wedge(contract(i, a), b) + wedge(sign_a, contract(i, b)));
  }
}
