#include "doctest.h"
#include "gcdh/error.hpp"
#include "gcdh/parser.hpp"
#include "test_models.hpp"

using namespace gcdh;
using testing::e;

namespace {

const std::vector<std::string> G4{"e1", "e2", "e3", "e4"};

void check_parse_error(const std::string& text, int line, int column) {
  try {
    parse_model(text);
    FAIL("no parse error for: " << text);
  } catch (const ParseError& err) {
    CHECK(err.line() == line);
    CHECK(err.column() == column);
  }
}

}  // namespace

TEST_CASE("expressions") {
  std::vector<std::string> g3{"e1", "e2", "e3"};
  CHECK(parse_form("1 * e1^e2^e3", g3) == e(3, {1, 2, 3}));
  CHECK(parse_form("e1 + i*e2", g3) == e(3, {1}) + e(3, {2}, Scalar::i()));
  CHECK(parse_form("-e1^e2 + 1/2*e3", g3) == -e(3, {1, 2}) + e(3, {3}, Scalar(Gaussian(Rational(1, 2)))));
  CHECK(parse_form("e2^e1", g3) == -e(3, {1, 2}));
  CHECK(parse_form("(e1 + e2)^2", g3).is_zero());
  Scalar t = Scalar::parameter("t");
  CHECK(parse_form("t^2*e1 - pi", g3, {"t"}) == e(3, {1}, t * t) - Form(3, Scalar::pi()));
  CHECK(parse_form("conj((1+i)*e3)", g3) == e(3, {3}, Scalar(Gaussian(1, -1))));

  Form c = e(4, {1, 2});
  Form rho1 = parse_form("exp(-i*(t+1)*c) ^ (e3 + i*e4)", G4, {"t"}, {{"c", c}});
  Form expected = wedge(exp_two_form(c * (-Scalar::i() * (t + Scalar(1)))), e(4, {3}) + e(4, {4}, Scalar::i()));
  CHECK(rho1 == expected);
  CHECK(parse_form(rho1.to_string(), G4, {"t"}) == rho1);

  CHECK_THROWS_AS(parse_form("e5", G4), ParseError);
  CHECK_THROWS_AS(parse_form("e1 / e2", G4), ParseError);
  CHECK_THROWS_AS(parse_form("exp(e1)", G4), ParseError);
  CHECK_THROWS_AS(parse_form("(e1", G4), ParseError);
}

TEST_CASE("model files") {
  const char* text = R"(model heis
# a comment
generators e1 e2 e3
d e3 = e1^e2
action
  xi 1 = 0 0 1
end
connection
  theta 1 = e3
end
option trunc = 3
eqform eta
  1 = e1
  x1 = e3
end
)";
  ModelFile f = parse_model(text);
  CHECK(f.name == "heis");
  CHECK(f.model.generators() == 3);
  CHECK(f.model.d_table()[2] == e(3, {1, 2}));
  REQUIRE(f.action);
  CHECK(f.action->rank() == 1);
  REQUIRE(f.connection);
  CHECK(f.connection->curvature(0) == e(3, {1, 2}));
  REQUIRE(f.eqforms.size() == 1);
  CHECK(f.eqforms[0].second.trunc() == 3);
  CHECK(f.eqforms[0].second.coefficient({1}) == e(3, {3}));

  std::string canon = print_model(f);
  CHECK(print_model(parse_model(canon)) == canon);

  const char* gc = R"(generators e1 e2 e3 e4
parameters t
let c = e1^e2
spinor rho1 = exp(-i*c) ^ (e3 + i*e4)
family f1 = quotient rho1 c t
sample t = 0
sample t = 2/3
gcmap J = symplectic e1^e2 + e3^e4
gcmap K = complex
  row 0 -1 0 0
  row 1 0 0 0
  row 0 0 0 -1
  row 0 0 1 0
end
gcmap L = btransform J e1^e3
volume = 1
orientation = -1
option n = 3
option k = 1
)";
  ModelFile g = parse_model(gc);
  CHECK(g.structures.size() == 3);
  CHECK(g.samples.size() == 2);
  CHECK(g.model.orientation() == -1);
  CHECK(g.option("n", 0) == 3);
  std::string canon2 = print_model(g);
  CHECK(print_model(parse_model(canon2)) == canon2);
  CHECK(*parse_model(canon2).form("rho1") == *g.form("rho1"));
}

TEST_CASE("parse errors carry locations") {
  check_parse_error("generators e1 e2\nH = e1 $ e2\n", 2, 8);
  check_parse_error("generators e1 e2\nlet a = e1 + e3\n", 2, 14);
  check_parse_error("d e1 = 0\n", 1, 1);
  check_parse_error("generators e1 i\n", 1, 15);
  check_parse_error("generators e1 e2\naction\n  xi 1 = 1 0\n", 2, 1);
  check_parse_error("generators e1 e2\nfrobnicate\n", 2, 1);
  check_parse_error("generators e1 e2\nlet a = (e1 + e2\n", 2, 17);
  check_parse_error("generators e1 e2\ngcmap J = matrix\n  row 0 1\nend\n", 3, 3);
}

TEST_CASE("validation failures name the line") {
  try {
    parse_model("generators e1 e2 e3 e4 e5\nd e3 = e1^e2\nH = e3^e4^e5\n");
    FAIL("accepted a non-closed H");
  } catch (const ModelValidationError& err) {
    CHECK(std::string(err.what()) == "H not closed");
    CHECK(err.line() == 3);
    CHECK(err.residual() == "e1^e2^e4^e5");
  }
  try {
    parse_model("generators e1 e2 e3 e4\nd e4 = e1^e2\nd e1 = e3^e4\n");
    FAIL("accepted d^2 != 0");
  } catch (const ModelValidationError& err) {
    CHECK(err.line() > 0);
  }
  CHECK_THROWS_AS(parse_model("generators e1 e2\ngcmap J = symplectic e1^e1\n"), ModelValidationError);
  CHECK_THROWS_AS(parse_model("generators e1 e2 e3\nH = e1^e2^e3\naction\n  xi 1 = 1 0 0\nend\nconnection\n  theta 1 = e2\nend\n"),
                  ModelValidationError);
}
