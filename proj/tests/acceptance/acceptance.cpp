// Acceptance run: one PASS/FAIL line per criterion A1..A11.  Exit status is
// the number of failed criteria.

#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "pcm/pcm.hpp"

using namespace pcm;

namespace {

// Pinned tolerances.
constexpr double kAxiomTol = 1e-9;
constexpr double kChristoffelTol = 1e-6;
constexpr double kRiemannSymTol = 1e-9;
constexpr double kConeTol = 1e-8;
constexpr double kRunTol = 1e-7;
constexpr double kWn3Tol = 1e-8;
constexpr double kWn4Tol = 1e-6;
constexpr double kNormalCriterionTol = 1e-9;
constexpr double kFlatTol = 1e-12;
constexpr double kGrayHypothesisTol = 1e-8;
constexpr double kFuzzTol = 1e-6;
constexpr double kConstCurvTol = 1e-7;
constexpr double kTrpTol = 1e-6;

constexpr int kAxiomPoints = 64;
constexpr int kPoints = 32;
constexpr int kVectors = 8;
constexpr std::uint64_t kSeed = 2024;

const std::string E1 = "sasakian-r3", E2 = "paracontact-r3", E3 = "kenmotsu-warped", E4 = "cosymplectic-flat",
                  E5 = "hopf-s3";

struct Criterion {
  bool ok = true;
  double worst = 0.0;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      problems.push_back(what);
    }
  }
  void bound(double value, double tol, const std::string& what) {
    worst = std::max(worst, value);
    if (!(value <= tol)) {
      char buf[64];
      std::snprintf(buf, sizeof buf, " = %.3e > %.0e", value, tol);
      require(false, what + buf);
    }
  }
};

CheckOptions options(double tol = kRunTol) {
  CheckOptions o;
  o.points = kPoints;
  o.vectors = kVectors;
  o.seed = kSeed;
  o.tol = tol;
  return o;
}

// One context per example, shared between criteria.
Context& ctx(const std::string& name) {
  static std::map<std::string, std::unique_ptr<Context>> cache;
  auto& slot = cache[name];
  if (!slot) slot = std::make_unique<Context>(load_builtin(name), options());
  return *slot;
}

CheckResult row(Context& c, const std::string& id) { return run_identity(c, find_identity(id)); }

// The row must run (not be skipped), pass, and stay below tol.
void row_bound(Criterion& cr, const std::string& example, const std::string& id, double tol) {
  auto r = row(ctx(example), id);
  cr.require(r.status != Status::Skipped, example + " " + id + " skipped: " + r.note);
  if (r.status == Status::Skipped) return;
  cr.bound(r.max_residual, tol, example + " " + id);
}

// Equivalence row that passes with both sides holding.
void both_hold(Criterion& cr, const std::string& example, const std::string& id) {
  auto r = row(ctx(example), id);
  cr.require(r.status == Status::Pass, example + " " + id + ": " + r.note);
  cr.require(r.lhs_max < kRunTol && r.rhs_max < kRunTol, example + " " + id + " does not hold on both sides");
}

Criterion a1() {
  Criterion cr;
  for (const auto& name : {E1, E2, E3, E4, E5}) {
    auto S = load_builtin(name);
    for (const auto& p : sample_structure(S, kAxiomPoints, derive_seed(kSeed, name + "/a1")))
      for (const auto& a : axiom_residuals(p)) cr.bound(a.residual, kAxiomTol, name + " " + a.id);
  }
  return cr;
}

Criterion a2() {
  Criterion cr;
  for (const auto& name : builtin_names()) {
    auto S = load_builtin(name);
    for (const auto& p : ctx(name).points()) {
      const auto ad = christoffel(S.base, p.geo.x);
      const auto fd = christoffel_fd(S.base, p.geo.x);
      cr.bound((ad - fd).max_abs() / std::max(1.0, ad.max_abs()), kChristoffelTol, name + " christoffel");
      cr.bound(riemann_antisym_xy(p.geo), kRiemannSymTol, name + " antisym xy");
      cr.bound(riemann_antisym_zw(p.geo), kRiemannSymTol, name + " antisym zw");
      cr.bound(riemann_pair_symmetry(p.geo), kRiemannSymTol, name + " pair symmetry");
      cr.bound(first_bianchi(p.geo), kRiemannSymTol, name + " first Bianchi");
    }
  }
  return cr;
}

Criterion a3() {
  Criterion cr;
  for (const auto& name : {E1, E2, E3, E4}) {
    Context& c = ctx(name);
    for (const auto& p : c.cone_points()) cr.require(p.t >= 0.5 && p.t <= 2.0, name + " cone point outside t range");
    for (const std::string id : {"cone-J-definition", "cone-omega", "cone-omega-d", "cone-connection", "cone-nabla-J",
                                 "cone-curvature", "cone-curvature-J", "cone-nijenhuis"})
      row_bound(cr, name, id, kConeTol);
  }
  return cr;
}

Criterion a4() {
  Criterion cr;
  for (const auto& name : builtin_names())
    for (const std::string id : {"prop-kaehler", "prop-almost-kaehler", "prop-condition[delta=+1]",
                                 "prop-condition[delta=-1]"}) {
      auto r = row(ctx(name), id);
      cr.require(r.status == Status::Pass, name + " " + id + ": " + r.note);
    }
  both_hold(cr, E1, "prop-kaehler");
  both_hold(cr, E1, "prop-almost-kaehler");
  both_hold(cr, E2, "prop-almost-kaehler");
  both_hold(cr, E3, "prop-condition[delta=+1]");
  both_hold(cr, E4, "prop-condition[delta=+1]");
  both_hold(cr, E1, "prop-condition[delta=-1]");
  both_hold(cr, E2, "prop-condition[delta=-1]");
  return cr;
}

Criterion a5() {
  Criterion cr;
  row_bound(cr, E1, "thm-a0[delta=+1]", kRunTol);
  row_bound(cr, E2, "thm-a0[delta=-1]", kRunTol);
  for (const auto& name : {E1, E2}) {
    row_bound(cr, name, "thm-w0", kRunTol);
    row_bound(cr, name, "thm-rcw2", kRunTol);
  }
  return cr;
}

Criterion a6() {
  Criterion cr;
  for (const auto& name : {E1, E2}) {
    row_bound(cr, name, "cor-wn1a", kRunTol);
    row_bound(cr, name, "cor-wn1b", kRunTol);
    row_bound(cr, name, "cor-wn2", kRunTol);
    row_bound(cr, name, "cor-wn4", kWn4Tol);
  }
  for (const auto& p : ctx(E1).points()) cr.bound(std::abs(p.Ric(p.xi(), p.xi()) - 2.0), kWn3Tol, E1 + " Ric(xi,xi) - 2");
  return cr;
}

Criterion a7() {
  Criterion cr;
  for (const auto& name : {E1, E3, E4}) row_bound(cr, name, "normal-nabla-phi", kNormalCriterionTol);
  for (const std::string id : {"thm-n3", "thm-opkrzyw", "cor-nr9a", "cor-nr9b"}) {
    row_bound(cr, E1, id, kRunTol);
    row_bound(cr, E3, id, kRunTol);
    row_bound(cr, E4, id, kFlatTol);
  }
  return cr;
}

Criterion a8() {
  Criterion cr;
  cr.bound(ctx(E1).cone_condition_defect(1), kGrayHypothesisTol, E1 + " cone condition delta=+1");
  cr.bound(ctx(E2).cone_condition_defect(-1), kGrayHypothesisTol, E2 + " cone condition delta=-1");
  row_bound(cr, E1, "thm-gray[delta=+1]", kRunTol);
  row_bound(cr, E2, "thm-gray[delta=-1]", kRunTol);
  return cr;
}

Criterion a9() {
  Criterion cr;
  for (const auto& name : {E1, E2, E3, E4}) {
    auto S = load_builtin(name);
    const auto ref = run_suites(ctx(name), suite_names());
    for (const auto& D : shipped_diffeos(*S.base.coords)) {
      Context moved(pullback(S, D), options());
      const auto res = run_suites(moved, suite_names());
      if (res.size() != ref.size()) {
        cr.require(false, name + "@" + D.name + " row count differs");
        continue;
      }
      for (std::size_t i = 0; i < res.size(); ++i) {
        const std::string what = name + "@" + D.name + " " + res[i].id;
        cr.require(res[i].status == ref[i].status, what + " verdict " + to_string(ref[i].status) + " -> " +
                                                     to_string(res[i].status));
        if (res[i].status != Status::Skipped && !res[i].equivalence)
          cr.bound(std::abs(res[i].max_residual - ref[i].max_residual), kFuzzTol, what + " residual change");
      }
    }
  }
  return cr;
}

Criterion a10() {
  Criterion cr;
  Context& c = ctx(E5);
  cr.bound(c.constant_curvature_defect(), kConstCurvTol, E5 + " constant curvature");
  row_bound(cr, E5, "cor-trp", kTrpTol);
  return cr;
}

Criterion a11() {
  Criterion cr;
  for (const auto& name : {E1, E2, E3, E4, E5}) {
    RunConfig rc;
    rc.manifold = name;
    rc.points = 8;
    rc.vectors = 4;
    rc.seed = kSeed;
    rc.format = "json";
    const auto a = to_json(run(rc));
    const auto b = to_json(run(rc));
    cr.require(a == b, name + " JSON differs between runs");
    cr.require(a.find("\"exit_code\": 0") != std::string::npos, name + " run did not exit cleanly");
  }
  return cr;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Criterion()>>> criteria = {
      {"A1 axioms hold on the examples (64 points, 1e-9)", a1},
      {"A2 Christoffel FD agreement (1e-6) and Riemann symmetries (1e-9)", a2},
      {"A3 cone formulas on E1-E4 cones (1e-8)", a3},
      {"A4 cone equivalences agree on all examples", a4},
      {"A5 main identities on E1 and E2 (1e-7)", a5},
      {"A6 corollaries: wn1, wn2 (1e-7), Ric(xi,xi) = 2 (1e-8), wn4 (1e-6)", a6},
      {"A7 normal suite (criterion 1e-9, identities 1e-7, flat case 1e-12)", a7},
      {"A8 Gray-type identity on the E1 and E2 cones (1e-7)", a8},
      {"A9 verdicts and residuals stable under 3 diffeomorphisms (1e-6)", a9},
      {"A10 cor-trp on the round 3-sphere (1e-6)", a10},
      {"A11 byte-identical JSON for identical seeds", a11},
  };
  int failed = 0;
  for (const auto& [title, fn] : criteria) {
    Criterion cr;
    try {
      cr = fn();
    } catch (const std::exception& e) {
      cr.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s  %-72s  worst %.3e\n", cr.ok ? "PASS" : "FAIL", title.c_str(), cr.worst);
    for (std::size_t i = 0; i < cr.problems.size() && i < 10; ++i) std::printf("        %s\n", cr.problems[i].c_str());
    if (cr.problems.size() > 10) std::printf("        ... %zu more\n", cr.problems.size() - 10);
    if (!cr.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed;
}
