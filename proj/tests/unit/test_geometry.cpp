#include "catch_amalgamated.hpp"

#include "pcm/geometry.hpp"
#include "pcm/sampling.hpp"

using namespace pcm;
using Catch::Matchers::WithinAbs;

namespace {

ChartManifold chart(const std::vector<std::string>& names, const std::vector<std::vector<std::string>>& g,
                    double lo = 0.5, double hi = 1.5) {
  ChartManifold M;
  M.name = "test";
  M.coords = std::make_shared<const std::vector<std::string>>(names);
  const int n = static_cast<int>(names.size());
  M.metric.assign(n, std::vector<Expression>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) M.metric[i][j] = parse(g[std::min(i, j)][std::max(i, j)], M.coords);
  M.sample_box.assign(n, Interval{lo, hi});
  M.validate();
  return M;
}

std::vector<Expression> fields(const ChartManifold& M, const std::vector<std::string>& src) {
  std::vector<Expression> out;
  for (const auto& s : src) out.push_back(parse(s, M.coords));
  return out;
}

// a generic Riemannian metric and an indefinite one on R^3
ChartManifold generic3() {
  return chart({"x", "y", "z"}, {{"1 + x^2", "0.3*y*z", "0.1*sin(x)"},
                                 {"", "2 + cos(x*z)", "0.2*x"},
                                 {"", "", "1 + exp(-y^2)"}});
}
ChartManifold lorentz3() {
  return chart({"x", "y", "z"}, {{"-1 - 0.2*y^2", "0.1*x", "0"}, {"", "1 + z^2", "0.3*x*y"}, {"", "", "2"}});
}

}  // namespace

TEST_CASE("polar coordinates on the plane") {
  auto M = chart({"r", "th"}, {{"1", "0"}, {"", "r^2"}});
  Vec x(2);
  x << 1.7, 0.4;
  auto p = point_geometry(M, x);
  CHECK_THAT(p.conn.gamma(0, 1, 1), WithinAbs(-1.7, 1e-14));
  CHECK_THAT(p.conn.gamma(1, 0, 1), WithinAbs(1 / 1.7, 1e-14));
  CHECK_THAT(p.conn.gamma(1, 1, 0), WithinAbs(1 / 1.7, 1e-14));
  CHECK(p.R.max_abs() < 1e-14);
}

TEST_CASE("round 2-sphere") {
  auto M = chart({"th", "ph"}, {{"1", "0"}, {"", "sin(th)^2"}});
  Vec x(2);
  x << 0.9, 2.0;
  auto p = point_geometry(M, x);
  const double s2 = std::pow(std::sin(0.9), 2);
  CHECK_THAT(p.R4(0, 1, 0, 1), WithinAbs(-s2, 1e-13));
  CHECK_THAT(p.R4(0, 1, 1, 0), WithinAbs(s2, 1e-13));
  CHECK((p.ric - p.g()).cwiseAbs().maxCoeff() < 1e-13);
  CHECK_THAT(p.scalar, WithinAbs(2.0, 1e-13));
  // R(X,Y)Z = g(Y,Z)X - g(X,Z)Y on the unit sphere
  Rng rng(2);
  for (int k = 0; k < 5; ++k) {
    Vec X = rng.uniform_vector(2), Y = rng.uniform_vector(2), Z = rng.uniform_vector(2);
    Vec expect = Y.dot(p.g() * Z) * X - X.dot(p.g() * Z) * Y;
    CHECK((p.curvature(X, Y, Z) - expect).norm() < 1e-13);
  }
}

TEST_CASE("hyperbolic plane has Ric = -g") {
  auto M = chart({"x", "y"}, {{"1/y^2", "0"}, {"", "1/y^2"}});
  Vec x(2);
  x << 0.3, 1.3;
  auto p = point_geometry(M, x);
  CHECK((p.ric + p.g()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THAT(p.scalar, WithinAbs(-2.0, 1e-12));
}

TEST_CASE("curvature symmetries on generic metrics") {
  Rng rng(4);
  for (const auto& M : {generic3(), lorentz3()}) {
    for (int k = 0; k < 4; ++k) {
      Vec x = rng.in_box(M.sample_box);
      auto p = point_geometry(M, x);
      CHECK(p.R.max_abs() > 1e-3);  // not flat, so the checks below mean something
      CHECK(riemann_antisym_xy(p) < 1e-12);
      CHECK(riemann_antisym_zw(p) < 1e-12);
      CHECK(riemann_pair_symmetry(p) < 1e-12);
      CHECK(first_bianchi(p) < 1e-12);
      CHECK(ricci_symmetry(p) < 1e-12);
      CHECK(second_bianchi(M, x) < 1e-6);
      // metric compatibility
      for (const auto& D : covariant_derivative_metric(p.metric, p.conn.gamma)) CHECK(D.cwiseAbs().maxCoeff() < 1e-13);
    }
  }
}

TEST_CASE("Christoffel symbols agree with finite differences of the metric") {
  Rng rng(5);
  for (const auto& M : {generic3(), lorentz3()}) {
    Vec x = rng.in_box(M.sample_box);
    CHECK((christoffel(M, x) - christoffel_fd(M, x)).max_abs() < 1e-7);
  }
}

TEST_CASE("exterior derivative normalization") {
  auto M = chart({"x", "y"}, {{"1", "0"}, {"", "1"}});
  auto w = fields(M, {"0", "x"});  // x dy
  Vec x(2);
  x << 0.7, -0.2;
  auto j = form_jet(w, x);
  CHECK_THAT(exterior_derivative(j, DEtaConvention::Half)(0, 1), WithinAbs(0.5, 1e-15));
  CHECK_THAT(exterior_derivative(j, DEtaConvention::One)(0, 1), WithinAbs(1.0, 1e-15));
  CHECK_THAT(exterior_derivative(j, DEtaConvention::One)(1, 0), WithinAbs(-1.0, 1e-15));
  // dx ^ dy
  CHECK_THAT(wedge(Vec(Vec::Unit(2, 0)), Vec(Vec::Unit(2, 1)))(0, 1), WithinAbs(0.5, 1e-15));
}

TEST_CASE("d squared vanishes") {
  auto M = generic3();
  auto w = fields(M, {"x*y^2 + sin(z)", "exp(x*z)", "y*z^3 - cos(x*y)"});
  Rng rng(6);
  for (auto c : {DEtaConvention::Half, DEtaConvention::One}) {
    Vec x = rng.in_box(M.sample_box);
    auto dw = exterior_derivative_jet(form_jet(w, x), c);
    CHECK(dw.w.cwiseAbs().maxCoeff() > 0.1);
    CHECK(exterior_derivative(dw, c).max_abs() < 1e-12);
  }
}

TEST_CASE("Lie derivatives via partials and via the connection agree") {
  auto M = generic3();
  auto V = fields(M, {"y*z", "x^2 - z", "sin(x + y)"});
  auto w = fields(M, {"x*y", "z^2", "exp(-x)"});
  EndoField A = {fields(M, {"x", "y*z", "1"}), fields(M, {"0", "x*y", "z"}), fields(M, {"sin(z)", "0", "x^2"})};
  Rng rng(7);
  for (int k = 0; k < 3; ++k) {
    Vec x = rng.in_box(M.sample_box);
    auto p = point_geometry(M, x);
    auto Vj = vector_jet(V, x);
    Mat nV = covariant_derivative(Vj, p.conn.gamma);
    CHECK((lie_derivative(p.metric, Vj) - lie_derivative_connection_metric(p.g(), nV)).cwiseAbs().maxCoeff() < 1e-12);
    auto wj = form_jet(w, x);
    CHECK((lie_derivative(wj, Vj) - lie_derivative_connection(wj.w, covariant_derivative(wj, p.conn.gamma), Vj.v, nV))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    auto Aj = endo_jet(A, x);
    CHECK((lie_derivative(Aj, Vj) - lie_derivative_connection(Aj.a, covariant_derivative(Aj, p.conn.gamma), Vj.v, nV))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }
}

TEST_CASE("rotations are Killing fields of the flat plane") {
  auto M = chart({"x", "y"}, {{"1", "0"}, {"", "1"}});
  auto V = fields(M, {"-y", "x"});
  Vec x(2);
  x << 0.4, 1.1;
  CHECK(lie_derivative(metric_jet(M, x), vector_jet(V, x)).cwiseAbs().maxCoeff() == 0.0);
  auto U = fields(M, {"x", "0"});
  CHECK(lie_derivative(metric_jet(M, x), vector_jet(U, x))(0, 0) == 2.0);
}
