#include "catch_amalgamated.hpp"

#include "pcm/examples.hpp"

using namespace pcm;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;

TEST_CASE("built-in examples satisfy the structure axioms") {
  for (const auto& name : builtin_names()) {
    INFO(name);
    auto S = load_builtin(name);
    auto pts = sample_structure(S, 64, derive_seed(3, name));
    REQUIRE(pts.size() == 64);
    CHECK_NOTHROW(check_axioms(S, pts, 1e-9));
    for (const auto& p : pts) CHECK(frame_defect(p.frame, p.g()) < 1e-10);
  }
}

TEST_CASE("classification matches the documented class") {
  for (const auto& name : builtin_names()) {
    INFO(name);
    auto c = classify(load_builtin(name));
    INFO(describe(c));
    CHECK(builtin_spec(name).expected.matches(c));
    // Sasakian implies normal and contact metric
    if (c.sasakian) CHECK((c.normal && c.contact_metric));
  }
}

TEST_CASE("classification does not depend on the seed") {
  for (const std::string name : {"paracontact-r3", "kenmotsu-h5", "hopf-s3"}) {
    auto S = load_builtin(name);
    CHECK(classify(S, 16, 1e-7, 1) == classify(S, 16, 1e-7, 99));
  }
}

TEST_CASE("the operator h on contact metric structures") {
  for (const auto& name : builtin_names()) {
    auto S = load_builtin(name);
    auto c = classify(S);
    auto pts = sample_structure(S, 8, 5);
    if (!c.contact_metric) {
      CHECK_THROWS_AS(h_operator(pts[0], c), NotApplicable);
      continue;
    }
    INFO(name);
    double hmax = 0.0;
    for (const auto& p : pts) {
      const Mat& h = h_operator(p, c);
      const Mat gh = p.g() * h;
      CHECK(compare(gh, Mat(gh.transpose())) < 1e-10);        // self-adjoint
      CHECK(compare(Mat(h * p.phi_m()), Mat(-p.phi_m() * h)) < 1e-10);  // anticommutes with phi
      CHECK(std::abs(h.trace()) < 1e-10);
      CHECK(compare(h * p.xi(), Vec::Zero(p.dim())) < 1e-10);
      hmax = std::max(hmax, h.cwiseAbs().maxCoeff());
    }
    // h vanishes exactly on the K-contact (here Sasakian) examples
    if (c.sasakian) CHECK(hmax < 1e-10);
    else CHECK(hmax > 1e-3);
  }
}

TEST_CASE("Ric(xi, xi) = 2n on a Sasakian manifold") {
  auto S = load_builtin("sasakian-r3");
  for (const auto& p : sample_structure(S, 16, 11)) CHECK_THAT(p.Ric(p.xi(), p.xi()), WithinAbs(2.0 * p.n(), 1e-8));
}

TEST_CASE("a rescaled Reeb field violates the axioms") {
  auto S = load_builtin("sasakian-r3");
  for (auto& e : S.xi) e = 2.0 * e;
  auto pts = sample_structure(S, 4, 1);
  CHECK_THROWS_AS(check_axioms(S, pts), AxiomError);
  CHECK_THROWS_WITH(check_axioms(S, pts), ContainsSubstring("eta(xi) = 1"));
  CHECK_THROWS_AS(classify(S), AxiomError);
}

TEST_CASE("normality agrees with the nabla phi criterion") {
  for (const auto& name : builtin_names()) {
    INFO(name);
    auto S = load_builtin(name);
    auto pts = sample_structure(S, 16, 21);
    auto c = classify(S, pts, 1e-7);
    double crit = 0.0;
    for (const auto& p : pts)
      crit = std::max(crit, max_over_basis_pairs(p, [&](const Vec& X, const Vec& Y) {
                        return normality_criterion_residual(p, X, Y);
                      }));
    CHECK(c.normal == (crit < 1e-7));
    if (!c.normal) CHECK(crit > 1e-3);
  }
}

TEST_CASE("the Nijenhuis tensor is antisymmetric") {
  auto S = load_builtin("contact-nonk-r3");
  Rng rng(2);
  for (const auto& p : sample_structure(S, 4, 3)) {
    Vec X = rng.uniform_vector(3), Y = rng.uniform_vector(3);
    CHECK(compare(p.N(X, Y), Vec(-p.N(Y, X))) < 1e-12);
    CHECK(compare(p.N1(X, Y), Vec(-p.N1(Y, X))) < 1e-12);
  }
}

TEST_CASE("d eta convention changes the contact verdict") {
  auto S = load_builtin("sasakian-r3");
  auto half = classify(S, 8, 1e-7, 0, DEtaConvention::Half);
  auto one = classify(S, 8, 1e-7, 0, DEtaConvention::One);
  CHECK(half.contact_metric);
  CHECK_FALSE(one.contact_metric);
}

TEST_CASE("structure validation") {
  auto S = load_builtin("sasakian-r3");
  S.eps0 = 2;
  CHECK_THROWS_AS(S.validate(), std::invalid_argument);
  auto T = load_builtin("sasakian-r3");
  T.xi.pop_back();
  CHECK_THROWS_AS(T.validate(), std::invalid_argument);
}
