#pragma once

// Built-in example structures and the pullback used for tensoriality fuzzing.

#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "pcm/structure.hpp"

namespace pcm {

class UnknownExample : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ExpectedClass {
  bool contact_metric = false;
  bool normal = false;
  bool sasakian = false;
  bool condition15_plus = false;
  bool condition15_minus = false;

  bool matches(const StructureClass& c) const {
    return c.axioms_ok && c.contact_metric == contact_metric && c.normal == normal && c.sasakian == sasakian &&
           c.condition15_plus == condition15_plus && c.condition15_minus == condition15_minus;
  }
};

struct ExampleSpec {
  std::string name;
  std::string notes;
  ExpectedClass expected;
  bool constant_curvature = false;  // curvature is constant and equal to -eps0 eps1
};

/// Components given as source text; parsed against `coords`.
struct StructureSource {
  std::string name;
  std::vector<std::string> coords;
  int eps0 = 1, eps1 = -1;
  std::vector<std::vector<std::string>> metric;  // upper triangle is read
  std::vector<std::vector<std::string>> phi;
  std::vector<std::string> xi, eta;
  std::vector<Interval> box;
  std::vector<std::string> exclude;
};

inline PCStructure build_structure(const StructureSource& src) {
  auto coords = std::make_shared<const std::vector<std::string>>(src.coords);
  const int d = static_cast<int>(src.coords.size());
  PCStructure S;
  S.name = src.name;
  S.eps0 = src.eps0;
  S.eps1 = src.eps1;
  S.base.name = src.name;
  S.base.coords = coords;
  S.base.metric.assign(d, std::vector<Expression>(d));
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) S.base.metric[i][j] = S.base.metric[j][i] = parse(src.metric[i][j], coords);
  S.base.sample_box = src.box;
  for (const auto& e : src.exclude) S.base.exclude.push_back(parse(e, coords));
  S.phi.assign(d, std::vector<Expression>(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) S.phi[i][j] = parse(src.phi[i][j], coords);
  for (int i = 0; i < d; ++i) {
    S.xi.push_back(parse(src.xi[i], coords));
    S.eta.push_back(parse(src.eta[i], coords));
  }
  S.validate();
  return S;
}

namespace detail {

inline std::vector<Interval> cube(int d, double a) { return std::vector<Interval>(d, Interval{-a, a}); }

inline StructureSource sasakian_r3() {
  return {"sasakian-r3", {"x", "y", "z"}, 1, -1,
          {{"y^2/4 + 1/4", "0", "-y/4"}, {"0", "1/4", "0"}, {"-y/4", "0", "1/4"}},
          {{"0", "1", "0"}, {"-1", "0", "0"}, {"0", "y", "0"}},
          {"0", "0", "2"}, {"-y/2", "0", "1/2"}, cube(3, 1.5), {}};
}

inline StructureSource paracontact_r3() {
  return {"paracontact-r3", {"x", "y", "z"}, 1, 1,
          {{"y^2/4 + exp(-z)/4", "0", "-y/4"}, {"0", "-exp(z)/4", "0"}, {"-y/4", "0", "1/4"}},
          {{"0", "exp(z)", "0"}, {"exp(-z)", "0", "0"}, {"0", "y*exp(z)", "0"}},
          {"0", "0", "2"}, {"-y/2", "0", "1/2"}, cube(3, 1.5), {}};
}

inline StructureSource kenmotsu_warped() {
  return {"kenmotsu-warped", {"x", "y", "z"}, 1, -1,
          {{"exp(2*z)", "0", "0"}, {"0", "exp(2*z)", "0"}, {"0", "0", "1"}},
          {{"0", "-1", "0"}, {"1", "0", "0"}, {"0", "0", "0"}},
          {"0", "0", "1"}, {"0", "0", "1"}, cube(3, 1.0), {}};
}

inline StructureSource cosymplectic_flat() {
  return {"cosymplectic-flat", {"x", "y", "z"}, 1, -1,
          {{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}},
          {{"0", "-1", "0"}, {"1", "0", "0"}, {"0", "0", "0"}},
          {"0", "0", "1"}, {"0", "0", "1"}, cube(3, 1.0), {}};
}

inline StructureSource hopf_s3() {
  return {"hopf-s3", {"th", "p1", "p2"}, 1, -1,
          {{"1", "0", "0"}, {"0", "sin(th)^2", "0"}, {"0", "0", "cos(th)^2"}},
          {{"0", "sin(th)*cos(th)", "-sin(th)*cos(th)"}, {"-cos(th)/sin(th)", "0", "0"}, {"sin(th)/cos(th)", "0", "0"}},
          {"0", "1", "1"}, {"0", "sin(th)^2", "cos(th)^2"},
          {{0.3, 1.2}, {-3.0, 3.0}, {-3.0, 3.0}}, {"sin(th)", "cos(th)"}};
}

inline StructureSource contact_nonk_r3() {
  return {"contact-nonk-r3", {"x", "y", "z"}, 1, -1,
          {{"y^2/4 + exp(-z)/4", "0", "-y/4"}, {"0", "exp(z)/4", "0"}, {"-y/4", "0", "1/4"}},
          {{"0", "exp(z)", "0"}, {"-exp(-z)", "0", "0"}, {"0", "y*exp(z)", "0"}},
          {"0", "0", "2"}, {"-y/2", "0", "1/2"}, cube(3, 1.5), {}};
}

inline StructureSource para_sasakian_r3() {
  return {"para-sasakian-r3", {"x", "y", "z"}, 1, 1,
          {{"y^2/4 + 1/4", "0", "-y/4"}, {"0", "-1/4", "0"}, {"-y/4", "0", "1/4"}},
          {{"0", "1", "0"}, {"1", "0", "0"}, {"0", "y", "0"}},
          {"0", "0", "2"}, {"-y/2", "0", "1/2"}, cube(3, 1.5), {}};
}

inline StructureSource kenmotsu_h5() {
  const std::string w = "exp(2*z)";
  return {"kenmotsu-h5", {"x1", "x2", "x3", "x4", "z"}, 1, -1,
          {{w, "0", "0", "0", "0"}, {"0", w, "0", "0", "0"}, {"0", "0", w, "0", "0"},
           {"0", "0", "0", w, "0"}, {"0", "0", "0", "0", "1"}},
          {{"0", "-1", "0", "0", "0"}, {"1", "0", "0", "0", "0"}, {"0", "0", "0", "-1", "0"},
           {"0", "0", "1", "0", "0"}, {"0", "0", "0", "0", "0"}},
          {"0", "0", "0", "0", "1"}, {"0", "0", "0", "0", "1"}, cube(5, 1.0), {}};
}

struct Registry {
  std::string name;
  StructureSource (*source)();
  ExampleSpec spec;
};

inline const std::vector<Registry>& registry() {
  static const std::vector<Registry> r = {
      {"sasakian-r3", sasakian_r3,
       {"sasakian-r3", "standard Sasakian structure on R^3", {true, true, true, true, true}, false}},
      {"paracontact-r3", paracontact_r3,
       {"paracontact-r3", "paracontact metric structure on R^3 with h != 0, not normal",
        {true, false, false, false, true}, false}},
      {"kenmotsu-warped", kenmotsu_warped,
       {"kenmotsu-warped", "warped product dz^2 + e^{2z}(dx^2 + dy^2), normal, not contact metric",
        {false, true, false, true, false}, false}},
      {"cosymplectic-flat", cosymplectic_flat,
       {"cosymplectic-flat", "flat R^3 with constant phi; normal with nabla phi = 0",
        {false, true, false, true, false}, false}},
      {"hopf-s3", hopf_s3,
       {"hopf-s3", "round unit 3-sphere in Hopf coordinates; Sasakian, curvature +1",
        {true, true, true, true, true}, true}},
      {"contact-nonk-r3", contact_nonk_r3,
       {"contact-nonk-r3", "contact metric structure on R^3 with h != 0, not normal",
        {true, false, false, false, true}, false}},
      {"para-sasakian-r3", para_sasakian_r3,
       {"para-sasakian-r3", "para-Sasakian structure on R^3", {true, true, true, true, true}, false}},
      {"kenmotsu-h5", kenmotsu_h5,
       {"kenmotsu-h5", "hyperbolic 5-space as a Kenmotsu warped product; conformally flat and normal",
        {false, true, false, true, false}, false}},
  };
  return r;
}

inline const Registry& find(const std::string& name) {
  for (const auto& r : registry())
    if (r.name == name) return r;
  throw UnknownExample("unknown example '" + name + "'");
}

}  // namespace detail

inline std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& r : detail::registry()) out.push_back(r.name);
  return out;
}

inline bool is_builtin(const std::string& name) {
  for (const auto& r : detail::registry())
    if (r.name == name) return true;
  return false;
}

inline PCStructure load_builtin(const std::string& name) { return build_structure(detail::find(name).source()); }

inline const ExampleSpec& builtin_spec(const std::string& name) { return detail::find(name).spec; }

/// (eps0, eps1) pairs that no built-in example realizes.
inline std::vector<std::pair<int, int>> uncovered_sign_classes() {
  std::vector<std::pair<int, int>> out;
  for (int e0 : {1, -1})
    for (int e1 : {1, -1}) {
      bool seen = false;
      for (const auto& r : detail::registry()) {
        const auto src = r.source();
        seen = seen || (src.eps0 == e0 && src.eps1 == e1);
      }
      if (!seen) out.emplace_back(e0, e1);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Pullback along a diffeomorphism F (new coordinates as functions of old ones)
// with inverse G.  Both are written in the same coordinate names.

class PullbackError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Diffeo {
  std::string name;
  std::vector<std::string> forward;
  std::vector<std::string> inverse;
};

/// Three polynomial diffeomorphisms acting on the first three coordinates.
inline std::vector<Diffeo> shipped_diffeos(const std::vector<std::string>& coords) {
  const int d = static_cast<int>(coords.size());
  auto identity = [&] { return std::vector<std::string>(coords.begin(), coords.end()); };
  const std::string& a = coords[0];
  const std::string& b = coords[1];
  const std::string& c = coords[2];
  std::vector<Diffeo> out(3);
  out[0].name = "shear";
  out[0].forward = out[0].inverse = identity();
  out[0].forward[1] = b + " + 0.1*" + a + "^2";
  out[0].inverse[1] = b + " - 0.1*" + a + "^2";
  out[1].name = "bilinear";
  out[1].forward = out[1].inverse = identity();
  out[1].forward[2] = c + " + 0.2*" + a + "*" + b;
  out[1].inverse[2] = c + " - 0.2*" + a + "*" + b;
  out[2].name = "cubic";
  out[2].forward = out[2].inverse = identity();
  out[2].forward[0] = "1.2*" + a + " + 0.05*" + b + "^3";
  out[2].inverse[0] = "(" + a + " - 0.05*" + b + "^3)/1.2";
  (void)d;
  return out;
}

inline PCStructure pullback(const PCStructure& S, const std::vector<Expression>& F,
                            const std::vector<Expression>& G, const std::string& new_name) {
  const int d = S.dim();
  if (static_cast<int>(F.size()) != d || static_cast<int>(G.size()) != d)
    throw PullbackError("diffeomorphism has wrong component count");
  auto coords = S.base.coords;

  // Check G(F(x)) = x and det dF != 0 on sample points of the original chart.
  {
    Rng rng(derive_seed(0, S.name + "/pullback-check"));
    int checked = 0;
    for (int attempt = 0; attempt < 160 && checked < 16; ++attempt) {
      Vec x;
      try {
        x = S.base.chart_point(rng.in_box(S.base.sample_box));
      } catch (const DomainError&) {
        continue;
      }
      Vec y(d), z(d);
      Mat J(d, d);
      for (int i = 0; i < d; ++i) {
        Jet2 f = eval_jet2(F[i], x);
        y[i] = f.value;
        J.row(i) = f.grad.transpose();
      }
      for (int i = 0; i < d; ++i) z[i] = eval_value(G[i], y);
      if ((z - x).cwiseAbs().maxCoeff() > 1e-9) throw PullbackError("inverse check failed: G(F(x)) != x");
      if (std::fabs(J.determinant()) < 1e-10) throw PullbackError("singular Jacobian");
      ++checked;
    }
    if (checked < 16) throw PullbackError("could not sample points for the inverse check");
  }

  auto compose = [&](const Expression& e) { return substitute(e, G); };
  // dG[i][a] = d_a G^i (new coords); dF[a][i] = (d_i F^a) o G
  std::vector<std::vector<Expression>> dG(d, std::vector<Expression>(d)), dF(d, std::vector<Expression>(d));
  for (int i = 0; i < d; ++i)
    for (int a = 0; a < d; ++a) {
      dG[i][a] = differentiate(G[i], a);
      dF[a][i] = compose(differentiate(F[a], i));
    }
  std::vector<std::vector<Expression>> g0(d, std::vector<Expression>(d)), phi0 = g0;
  std::vector<Expression> xi0(d), eta0(d);
  for (int i = 0; i < d; ++i) {
    xi0[i] = compose(S.xi[i]);
    eta0[i] = compose(S.eta[i]);
    for (int j = 0; j < d; ++j) {
      g0[i][j] = compose(S.base.metric[i][j]);
      phi0[i][j] = compose(S.phi[i][j]);
    }
  }
  const Expression zero = Expression::constant(0.0, coords);

  PCStructure P = S;
  P.name = new_name;
  P.base.name = new_name;
  for (int a = 0; a < d; ++a)
    for (int b = a; b < d; ++b) {
      Expression s = zero;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s = s + g0[i][j] * dG[i][a] * dG[j][b];
      P.base.metric[a][b] = P.base.metric[b][a] = s;
    }
  for (int a = 0; a < d; ++a) {
    Expression xs = zero, es = zero;
    for (int i = 0; i < d; ++i) {
      xs = xs + dF[a][i] * xi0[i];
      es = es + eta0[i] * dG[i][a];
    }
    P.xi[a] = xs;
    P.eta[a] = es;
    for (int b = 0; b < d; ++b) {
      Expression s = zero;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s = s + dF[a][i] * phi0[i][j] * dG[j][b];
      P.phi[a][b] = s;
    }
  }
  P.base.exclude.clear();
  for (const auto& e : S.base.exclude) P.base.exclude.push_back(compose(e));
  P.base.sample_map.clear();
  for (int a = 0; a < d; ++a)
    P.base.sample_map.push_back(S.base.sample_map.empty() ? F[a] : substitute(F[a], S.base.sample_map));
  P.validate();
  return P;
}

inline PCStructure pullback(const PCStructure& S, const Diffeo& D) {
  std::vector<Expression> F, G;
  for (const auto& s : D.forward) F.push_back(parse(s, S.base.coords));
  for (const auto& s : D.inverse) G.push_back(parse(s, S.base.coords));
  return pullback(S, F, G, S.name + "@" + D.name);
}

}  // namespace pcm
