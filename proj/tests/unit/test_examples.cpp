#include "catch_amalgamated.hpp"

#include "pcm/examples.hpp"
#include "pcm/identities.hpp"

using namespace pcm;
using Catch::Matchers::ContainsSubstring;

TEST_CASE("example registry") {
  const auto names = builtin_names();
  CHECK(names.size() == 8);
  for (const std::string n : {"sasakian-r3", "paracontact-r3", "kenmotsu-warped", "cosymplectic-flat"})
    CHECK(is_builtin(n));
  for (const auto& n : names) {
    auto S = load_builtin(n);
    CHECK(S.name == n);
    CHECK(builtin_spec(n).name == n);
    CHECK_FALSE(builtin_spec(n).notes.empty());
  }
  CHECK(load_builtin("kenmotsu-h5").dim() == 5);
  CHECK_FALSE(is_builtin("nope"));
  CHECK_THROWS_AS(load_builtin("nope"), UnknownExample);
  CHECK_THROWS_WITH(builtin_spec("nope"), ContainsSubstring("unknown example 'nope'"));

  // only a spacelike Reeb field is realized
  const auto missing = uncovered_sign_classes();
  CHECK(missing == std::vector<std::pair<int, int>>{{-1, 1}, {-1, -1}});
}

TEST_CASE("pullbacks preserve the classification and pointwise scalars") {
  for (const std::string name : {"sasakian-r3", "paracontact-r3", "kenmotsu-warped", "cosymplectic-flat"}) {
    auto S = load_builtin(name);
    const auto cls = classify(S, 16);
    for (const auto& D : shipped_diffeos(*S.base.coords)) {
      INFO(name << " via " << D.name);
      auto P = pullback(S, D);
      CHECK(P.name == name + "@" + D.name);
      CHECK(classify(P, 16) == cls);

      std::vector<Expression> F;
      for (const auto& s : D.forward) F.push_back(parse(s, S.base.coords));
      Rng rng(derive_seed(1, P.name));
      for (int k = 0; k < 4; ++k) {
        const Vec x = rng.in_box(S.base.sample_box);
        Vec y(S.dim());
        for (int i = 0; i < S.dim(); ++i) y[i] = eval_value(F[i], x);
        auto a = evaluate_structure(S, x);
        auto b = evaluate_structure(P, y);
        CHECK(std::abs(b.geo.scalar - a.geo.scalar) <= 1e-9 * std::max(1.0, std::abs(a.geo.scalar)));
        CHECK(std::abs(star_scalar(b) - star_scalar(a)) <= 1e-9 * std::max(1.0, std::abs(star_scalar(a))));
        CHECK(std::abs(nabla_phi_trace(b) - nabla_phi_trace(a)) <= 1e-9 * std::max(1.0, nabla_phi_trace(a)));
        CHECK(std::abs(b.Ric(b.xi(), b.xi()) - a.Ric(a.xi(), a.xi())) < 1e-9);
      }
    }
  }
}

TEST_CASE("identity verdicts survive a change of chart") {
  CheckOptions opt;
  opt.points = 6;
  opt.vectors = 2;
  for (const std::string name : {"sasakian-r3", "paracontact-r3"}) {
    auto S = load_builtin(name);
    Context base(S, opt);
    auto ref = run_suites(base, {"structure", "contact", "normal"});
    for (const auto& D : shipped_diffeos(*S.base.coords)) {
      Context moved(pullback(S, D), opt);
      auto res = run_suites(moved, {"structure", "contact", "normal"});
      REQUIRE(res.size() == ref.size());
      for (std::size_t i = 0; i < res.size(); ++i) {
        INFO(name << " via " << D.name << ": " << res[i].id);
        CHECK(res[i].status == ref[i].status);
        if (ref[i].status == Status::Pass && !ref[i].equivalence) CHECK(res[i].max_residual <= 1e-6);
      }
    }
  }
}

TEST_CASE("a map that is not inverted by its claimed inverse is rejected") {
  auto S = load_builtin("sasakian-r3");
  Diffeo bad{"bad", {"x", "y", "z"}, {"2*x", "y", "z"}};
  CHECK_THROWS_AS(pullback(S, bad), PullbackError);
  Diffeo fold{"fold", {"x^2", "y", "z"}, {"x", "y", "z"}};
  CHECK_THROWS_AS(pullback(S, fold), PullbackError);
}
