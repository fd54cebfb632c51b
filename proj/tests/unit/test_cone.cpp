#include "catch_amalgamated.hpp"

#include "pcm/cone.hpp"
#include "pcm/examples.hpp"

using namespace pcm;

namespace {

const std::vector<std::string> small_examples = {"sasakian-r3", "paracontact-r3", "kenmotsu-warped",
                                                 "cosymplectic-flat", "hopf-s3", "contact-nonk-r3"};

}  // namespace

TEST_CASE("cone chart layout") {
  auto C = build_cone(load_builtin("sasakian-r3"));
  CHECK(C.t_name == "t");
  CHECK(C.dim() == 4);
  CHECK(C.chart.coords->at(0) == "t");
  CHECK(C.chart.sample_box[0].lo == 0.5);
  CHECK(C.chart.sample_box[0].hi == 2.0);

  // a base coordinate named t forces a rename
  auto src = detail::sasakian_r3();
  src.coords[0] = "t";
  auto S = build_structure(src);
  auto D = build_cone(S);
  CHECK(D.t_name == "t_");
  CHECK(D.chart.coords->at(1) == "t");

  auto H = build_cone(load_builtin("hopf-s3"));
  CHECK(H.chart.exclude.size() == 2);
}

TEST_CASE("cone formulas hold on the three-dimensional examples") {
  for (const auto& name : small_examples) {
    INFO(name);
    auto C = build_cone(load_builtin(name));
    auto pts = sample_cone(C, 6, derive_seed(1, name));
    Rng rng(derive_seed(2, name));
    for (const auto& p : pts) {
      CHECK(cone_metric_block(p) < 1e-12);
      CHECK(cone_J_square(p) < 1e-12);
      CHECK(cone_J_hermitian(p) < 1e-12);
      CHECK(cone_omega(p) < 1e-12);
      CHECK(cone_omega_derivative(p) < 1e-10);
      for (int k = 0; k < 6; ++k) {
        Vec X = rng.uniform_vector(4), Y = rng.uniform_vector(4), Z = rng.uniform_vector(4);
        CHECK(cone_J_definition(p, X) < 1e-12);
        CHECK(cone_connection(p, X, Y) < 1e-10);
        CHECK(cone_nabla_J(p, X, Y) < 1e-10);
        CHECK(cone_curvature(p, X, Y, Z) < 1e-8);
        CHECK(cone_curvature_J(p, X, Y, Z) < 1e-8);
        CHECK(cone_nijenhuis(p, X, Y) < 1e-10);
        CHECK(cone_nijenhuis_antisym(p, X, Y) < 1e-12);
      }
    }
  }
}

TEST_CASE("cone over a Sasakian manifold is flat in the round case") {
  // the cone over the unit sphere is flat space
  auto C = build_cone(load_builtin("hopf-s3"));
  for (const auto& p : sample_cone(C, 4, 3)) CHECK(p.geo.R.max_abs() < 1e-9);
}

TEST_CASE("cone is (para-)Kaehler exactly for Sasakian bases") {
  for (const auto& name : builtin_names()) {
    INFO(name);
    auto S = load_builtin(name);
    auto c = classify(S);
    auto pts = sample_cone(build_cone(S), 6, derive_seed(4, name));
    double nj = 0.0, dom = 0.0;
    for (const auto& p : pts) {
      nj = std::max(nj, cone_nabla_J_size(p));
      dom = std::max(dom, cone_omega_closedness(p));
    }
    CHECK((nj < 1e-8) == c.sasakian);
    CHECK((dom < 1e-8) == c.contact_metric);
  }
}

TEST_CASE("Gray-type identity on cones satisfying the condition") {
  struct Case {
    std::string name;
    int delta;
  };
  for (const auto& [name, delta] : std::vector<Case>{{"sasakian-r3", 1}, {"paracontact-r3", -1}, {"contact-nonk-r3", -1}}) {
    INFO(name << " delta " << delta);
    auto C = build_cone(load_builtin(name));
    Rng rng(derive_seed(5, name));
    for (const auto& p : sample_cone(C, 4, derive_seed(6, name))) {
      for (int k = 0; k < 8; ++k) {
        Vec X = rng.uniform_vector(4), Y = rng.uniform_vector(4), V = rng.uniform_vector(4);
        CHECK(cone_condition_residual(p, delta, X, Y) < 1e-9);
        CHECK(gray_residual(p, delta, X, Y, V) < 1e-7);
      }
    }
  }
}

TEST_CASE("Gray-type identity is not vacuous") {
  // wrong sign of delta on a non-Kaehler cone leaves a visible residual
  auto C = build_cone(load_builtin("paracontact-r3"));
  Rng rng(9);
  double worst_cond = 0.0;
  for (const auto& p : sample_cone(C, 4, 8))
    for (int k = 0; k < 8; ++k) {
      Vec X = rng.uniform_vector(4), Y = rng.uniform_vector(4);
      worst_cond = std::max(worst_cond, cone_condition_residual(p, 1, X, Y));
    }
  CHECK(worst_cond > 1e-3);
}
