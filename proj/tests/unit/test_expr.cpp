#include "catch_amalgamated.hpp"

#include "pcm/jet.hpp"
#include "pcm/sampling.hpp"

using namespace pcm;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

const std::vector<std::string> xyz = {"x", "y", "z"};

double at(const std::string& src, std::vector<double> p, const std::vector<std::string>& coords = xyz) {
  return evaluate(parse(src, coords), std::span<const double>(p));
}

}  // namespace

TEST_CASE("precedence and associativity") {
  CHECK(at("1 + 2*x^2 - y/4", {3, 2, 0}) == 18.5);
  CHECK(at("-x^2", {3, 0, 0}) == 9.0);  // unary minus binds tighter than ^
  CHECK_THAT(at("2^3^2", {0, 0, 0}), WithinRel(512.0, 1e-14));  // not (2^3)^2 = 64
  CHECK(at("x - y - z", {1, 2, 3}) == -4.0);
  CHECK(at("x / y / z", {12, 2, 3}) == 2.0);
  CHECK(at("(x + y) * z", {1, 2, 3}) == 9.0);
  CHECK(at("2e-1 * 10", {0, 0, 0}) == 2.0);
}

TEST_CASE("functions and constants") {
  CHECK_THAT(at("sin(pi/2) + exp(0) + log(e)", {0, 0, 0}), WithinAbs(3.0, 1e-15));
  CHECK_THAT(at("sqrt(x) + cosh(0) + tanh(0) + tan(0) + sinh(0)", {4, 0, 0}), WithinAbs(3.0, 1e-15));
  CHECK_THAT(at("x^0.5", {9, 0, 0}), WithinRel(3.0, 1e-14));
  CHECK(at("x^-2", {2, 0, 0}) == 0.25);
}

TEST_CASE("parse errors carry a reason and an offset") {
  CHECK_THROWS_AS(parse("x +", xyz), ParseError);
  CHECK_THROWS_WITH(parse("foo + 1", xyz), ContainsSubstring("unknown identifier 'foo'"));
  CHECK_THROWS_WITH(parse("sin(x, y)", xyz), ContainsSubstring("arity mismatch"));
  CHECK_THROWS_WITH(parse("x(2)", xyz), ContainsSubstring("not a function"));
  CHECK_THROWS_WITH(parse("sin", xyz), ContainsSubstring("requires one argument"));
  CHECK_THROWS_WITH(parse("(x + y", xyz), ContainsSubstring("expected ')'"));
  CHECK_THROWS_WITH(parse("x", std::vector<std::string>{"sin"}), ContainsSubstring("reserved"));
  try {
    parse("x + $", xyz);
    FAIL("no exception");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 4);
  }
}

TEST_CASE("domain errors name the point") {
  auto e = parse("log(x)", xyz);
  std::vector<double> p = {-1, 0.5, 0};
  CHECK_THROWS_AS(evaluate(e, std::span<const double>(p)), DomainError);
  CHECK_THROWS_WITH(evaluate(e, std::span<const double>(p)), ContainsSubstring("x=-1"));
  CHECK_THROWS_AS(at("1/(x - 1)", {1, 0, 0}), DomainError);
  CHECK_THROWS_AS(at("x^0.5", {-1, 0, 0}), DomainError);
}

TEST_CASE("printing round-trips to identical evaluation") {
  const std::vector<std::string> sources = {
      "y^2/4 + exp(-z)/4", "-(x - y)*(x + y)", "sin(x)^2 + cos(x)^2", "x^-3 + 0.1*x^2", "2^(x*y)",
      "x/(y/z)", "x - (y - z)", "-x^2", "(-x)^3", "1e-07*x + 123456.789", "pi*e*x", "tan(x)/sqrt(2 + y^2)"};
  Rng rng(5);
  for (const auto& s : sources) {
    INFO(s);
    auto a = parse(s, xyz);
    auto b = parse(to_string(a), xyz);
    CHECK(structurally_equal(a, b));
    CHECK(to_string(b) == to_string(a));
    for (int k = 0; k < 5; ++k) {
      Vec p = rng.uniform_vector(3, 0.2, 1.2);
      CHECK(eval_value(a, p) == eval_value(b, p));
    }
  }
}

TEST_CASE("builders fold constants") {
  auto coords = std::make_shared<const std::vector<std::string>>(xyz);
  auto x = Expression::coordinate(0, coords);
  auto zero = Expression::constant(0.0, coords);
  auto one = Expression::constant(1.0, coords);
  CHECK((x * zero).is_zero());
  CHECK(structurally_equal(x * one, x));
  CHECK(structurally_equal(x + zero, x));
  CHECK((Expression::constant(2.0, coords) * Expression::constant(3.0, coords)).constant_value() == 6.0);
}

TEST_CASE("second-order jets agree with finite differences") {
  const std::vector<std::string> sources = {"x^2*y + sin(z)*x", "exp(x*y - z)/(2 + cos(y))", "log(1 + x^2 + y^2)*z^3",
                                            "sqrt(2 + x*y*z)", "tan(0.3*x) + sinh(y)*cosh(z) - tanh(x*z)",
                                            "x^y + 2^z"};
  Rng rng(11);
  const double h = 1e-5;
  for (const auto& s : sources) {
    INFO(s);
    auto e = parse(s, xyz);
    for (int k = 0; k < 4; ++k) {
      Vec p = rng.uniform_vector(3, 0.3, 1.0);
      Jet2 j = eval_jet2(e, p);
      CHECK_THAT(j.value, WithinRel(eval_value(e, p), 1e-14));
      for (int i = 0; i < 3; ++i) {
        Vec a = p, b = p;
        a[i] += h;
        b[i] -= h;
        const double fd = (eval_value(e, a) - eval_value(e, b)) / (2 * h);
        CHECK_THAT(j.grad[i], WithinAbs(fd, 1e-7 * std::max(1.0, std::abs(fd))));
        const Vec fd_row = (eval_jet2(e, a).grad - eval_jet2(e, b).grad) / (2 * h);
        for (int m = 0; m < 3; ++m) CHECK_THAT(j.hess(i, m), WithinAbs(fd_row[m], 1e-6 * std::max(1.0, std::abs(fd_row[m]))));
      }
      CHECK((j.hessian() - j.hessian().transpose()).norm() == 0.0);
    }
  }
}

TEST_CASE("symbolic derivative matches the jet gradient") {
  Rng rng(3);
  for (const std::string s : {"x^3*y - z/x", "sin(x*y)*exp(z)", "(x + y)^-2 + sqrt(z + 3)", "2^(x + y*z)"}) {
    auto e = parse(s, xyz);
    for (int k = 0; k < 3; ++k) {
      Vec p = rng.uniform_vector(3, 0.5, 1.5);
      Jet2 j = eval_jet2(e, p);
      for (int i = 0; i < 3; ++i) CHECK_THAT(eval_value(differentiate(e, i), p), WithinAbs(j.grad[i], 1e-12));
    }
  }
}

TEST_CASE("substitution composes") {
  auto coords = std::make_shared<const std::vector<std::string>>(xyz);
  auto e = parse("x*y + z", coords);
  std::vector<Expression> repl = {parse("x + y", coords), parse("2", coords), parse("z^2", coords)};
  auto f = substitute(e, repl);
  Vec p(3);
  p << 1.5, -0.5, 2.0;
  CHECK_THAT(eval_value(f, p), WithinAbs((1.5 - 0.5) * 2 + 4.0, 1e-15));
}

TEST_CASE("jets of higher-dimensional charts") {
  std::vector<std::string> c;
  for (int i = 0; i < 9; ++i) c.push_back("u" + std::to_string(i));
  auto e = parse("u0*u8^2 + sin(u4)*u5", c);
  Vec p = Vec::Constant(9, 0.5);
  Jet2 j = eval_jet2(e, p);
  CHECK_THAT(j.grad[8], WithinAbs(2 * 0.5 * 0.5, 1e-15));
  CHECK_THAT(j.hess(0, 8), WithinAbs(1.0, 1e-15));
  CHECK_THAT(j.hess(4, 5), WithinAbs(std::cos(0.5), 1e-15));
  CHECK(j.hess(1, 2) == 0.0);
}
