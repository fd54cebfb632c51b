#pragma once

// The cone R+ x M with metric -eps0 eps1 dt^2 + t^2 g and the almost
// (para)complex structure
//   J d_t = -(eps0/t) xi,   J X = phi X - eps0 eps1 t eta(X) d_t.
// Cone coordinates are (t, x^1, ..., x^d); cone vectors keep the d_t
// component at index 0.

#include <string>
#include <vector>

#include "pcm/structure.hpp"

namespace pcm {

struct ConeManifold {
  PCStructure base;
  ChartManifold chart;
  EndoField J;
  std::string t_name;
  int dim() const { return chart.dim(); }
};

inline ConeManifold build_cone(const PCStructure& S) {
  const int d = S.dim();
  const double e0 = S.eps0, e1 = S.eps1;
  ConeManifold C;
  C.base = S;
  std::string t = "t";
  auto clashes = [&](const std::string& s) {
    for (const auto& c : *S.base.coords)
      if (c == s) return true;
    return false;
  };
  while (clashes(t)) t += "_";
  C.t_name = t;
  std::vector<std::string> names{t};
  names.insert(names.end(), S.base.coords->begin(), S.base.coords->end());
  auto coords = std::make_shared<const std::vector<std::string>>(names);

  std::vector<Expression> lift_map;
  for (int i = 0; i < d; ++i) lift_map.push_back(Expression::coordinate(i + 1, coords));
  auto lift = [&](const Expression& e) { return substitute(e, lift_map); };
  const Expression T = Expression::coordinate(0, coords);
  auto num = [&](double v) { return Expression::constant(v, coords); };

  ChartManifold& M = C.chart;
  M.name = S.name + "/cone";
  M.coords = coords;
  M.metric.assign(d + 1, std::vector<Expression>(d + 1, num(0.0)));
  M.metric[0][0] = num(-e0 * e1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M.metric[i + 1][j + 1] = T * T * lift(S.base.metric[i][j]);
  M.sample_box.push_back({0.5, 2.0});
  M.sample_box.insert(M.sample_box.end(), S.base.sample_box.begin(), S.base.sample_box.end());
  for (const auto& e : S.base.exclude) M.exclude.push_back(lift(e));
  if (!S.base.sample_map.empty()) {
    M.sample_map.push_back(T);
    for (const auto& e : S.base.sample_map) M.sample_map.push_back(lift(e));
  }

  C.J.assign(d + 1, std::vector<Expression>(d + 1, num(0.0)));
  for (int i = 0; i < d; ++i) {
    C.J[i + 1][0] = (num(-e0) / T) * lift(S.xi[i]);
    C.J[0][i + 1] = num(-e0 * e1) * T * lift(S.eta[i]);
    for (int j = 0; j < d; ++j) C.J[i + 1][j + 1] = lift(S.phi[i][j]);
  }
  return C;
}

struct ConePoint {
  double t = 1.0;
  int eps0 = 1, eps1 = -1;
  PointGeometry geo;
  EndoJet JJ;
  std::vector<Mat> nabla_J;  // [k](a,b)
  Rank3 Nt;
  Mat Omega;
  TensorValue dOmega;  // (a,b,c), default normalization
  StructurePoint base;

  int dim() const { return geo.dim(); }
  int base_dim() const { return dim() - 1; }
  const Mat& g() const { return geo.g(); }
  Vec J(const Vec& v) const { return JJ.a * v; }
  Vec dt() const { return Vec::Unit(dim(), 0); }
  Vec lift(const Vec& v) const {
    Vec out = Vec::Zero(dim());
    out.tail(base_dim()) = v;
    return out;
  }
  static Vec lower(const Vec& v) { return v.tail(v.size() - 1); }
  /// (nabla_X J) Y on the cone
  Vec nJ(const Vec& X, const Vec& Y) const { return along(nabla_J, X) * Y; }
  Vec R(const Vec& a, const Vec& b, const Vec& c) const { return geo.curvature(a, b, c); }
  /// [R(A,B), J] V
  Vec RJ(const Vec& A, const Vec& B, const Vec& V) const { return R(A, B, J(V)) - J(R(A, B, V)); }
};

inline ConePoint evaluate_cone(const ConeManifold& C, const Vec& x, DEtaConvention conv = DEtaConvention::Half) {
  ConePoint p;
  const int D = C.dim();
  p.t = x[0];
  p.eps0 = C.base.eps0;
  p.eps1 = C.base.eps1;
  p.geo = point_geometry(C.chart, x);
  p.JJ = endo_jet(C.J, x);
  p.nabla_J = covariant_derivative(p.JJ, p.geo.conn.gamma);
  p.Nt = nijenhuis(p.JJ);
  p.Omega = p.g() * p.JJ.a;
  TwoFormJet om{p.Omega, std::vector<Mat>(D)};
  for (int k = 0; k < D; ++k) om.dw[k] = p.geo.metric.dg[k] * p.JJ.a + p.g() * p.JJ.da[k];
  p.dOmega = exterior_derivative(om, DEtaConvention::Half);
  p.base = evaluate_structure(C.base, x.tail(D - 1), conv);
  return p;
}

inline std::vector<ConePoint> sample_cone(const ConeManifold& C, int count, std::uint64_t seed,
                                          DEtaConvention conv = DEtaConvention::Half) {
  return sample_points(C.chart, count, seed, [&](const Vec& x) { return evaluate_cone(C, x, conv); });
}

// ---------------------------------------------------------------------------
// Block structure of the cone data (point level).

inline double cone_metric_block(const ConePoint& p) {
  const int d = p.base_dim();
  Mat expected = Mat::Zero(d + 1, d + 1);
  expected(0, 0) = -p.eps0 * p.eps1;
  expected.bottomRightCorner(d, d) = p.t * p.t * p.base.g();
  return compare(p.g(), expected);
}

inline double cone_J_square(const ConePoint& p) {
  return compare(p.JJ.a * p.JJ.a, p.eps1 * Mat::Identity(p.dim(), p.dim()));
}

inline double cone_J_hermitian(const ConePoint& p) {
  return compare(p.JJ.a.transpose() * p.g() * p.JJ.a, -p.eps1 * p.g());
}

/// J X~ for X~ = a d_t + X from the defining formulas.
inline Vec cone_J_predicted(const ConePoint& p, const Vec& Xt) {
  const double a = Xt[0];
  const Vec X = ConePoint::lower(Xt);
  const StructurePoint& b = p.base;
  Vec out = p.lift(b.phi(X) - (a * p.eps0 / p.t) * b.xi());
  out[0] = -p.eps0 * p.eps1 * p.t * b.eta(X);
  return out;
}

inline double cone_J_definition(const ConePoint& p, const Vec& X) { return compare(p.J(X), cone_J_predicted(p, X)); }

/// Omega = t^2 Phi - 2 t eta ^ dt
inline double cone_omega(const ConePoint& p) {
  const int d = p.base_dim();
  Mat expected = Mat::Zero(d + 1, d + 1);
  expected.bottomRightCorner(d, d) = p.t * p.t * p.base.Phi;
  expected -= 2.0 * p.t * wedge(p.lift(p.base.eta_v()), p.dt());
  return compare(p.Omega, expected);
}

/// dOmega = t^2 dPhi + 2 t dt ^ (Phi - d eta), all with the default normalization.
inline double cone_omega_derivative(const ConePoint& p) {
  const int d = p.base_dim();
  const StructurePoint& b = p.base;
  TwoFormJet Phi{b.Phi, std::vector<Mat>(d)};
  for (int k = 0; k < d; ++k) Phi.dw[k] = b.geo.metric.dg[k] * b.phiJ.a + b.g() * b.phiJ.da[k];
  TensorValue dPhi = exterior_derivative(Phi, DEtaConvention::Half);
  Mat diff = Mat::Zero(d + 1, d + 1);
  diff.bottomRightCorner(d, d) = b.Phi - exterior_derivative(b.etaJ, DEtaConvention::Half);
  TensorValue expected = wedge(p.dt(), diff);
  expected *= 2.0 * p.t;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) expected(i + 1, j + 1, k + 1) += p.t * p.t * dPhi(i, j, k);
  Balance bal;
  bal.add(Eigen::Map<const Vec>(p.dOmega.data().data(), static_cast<Eigen::Index>(p.dOmega.data().size())));
  bal.sub(Eigen::Map<const Vec>(expected.data().data(), static_cast<Eigen::Index>(expected.data().size())));
  return bal.residual();
}

// ---------------------------------------------------------------------------
// Closed-form cone formulas extended to arbitrary cone vectors by linearity.

/// nabla~_X Y for coordinate-constant X~, Y~.
inline Vec cone_connection_predicted(const ConePoint& p, const Vec& Xt, const Vec& Yt) {
  const double a = Xt[0], b = Yt[0];
  const Vec X = ConePoint::lower(Xt), Y = ConePoint::lower(Yt);
  const StructurePoint& s = p.base;
  const int d = p.base_dim();
  Vec gxy = Vec::Zero(d);
  const auto& G = s.geo.conn.gamma;
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) gxy[k] += G(k, i, j) * X[i] * Y[j];
  Vec out = p.lift(gxy + (a * Y + b * X) / p.t);
  out[0] = p.eps0 * p.eps1 * p.t * s.gm(X, Y);
  return out;
}

inline Vec cone_connection_direct(const ConePoint& p, const Vec& X, const Vec& Y) {
  const int D = p.dim();
  Vec out = Vec::Zero(D);
  const auto& G = p.geo.conn.gamma;
  for (int k = 0; k < D; ++k)
    for (int i = 0; i < D; ++i)
      for (int j = 0; j < D; ++j) out[k] += G(k, i, j) * X[i] * Y[j];
  return out;
}

inline double cone_connection(const ConePoint& p, const Vec& X, const Vec& Y) {
  return compare(cone_connection_direct(p, X, Y), cone_connection_predicted(p, X, Y));
}

inline Vec cone_nabla_J_predicted(const ConePoint& p, const Vec& Xt, const Vec& Yt) {
  const double b = Yt[0];
  const Vec X = ConePoint::lower(Xt), Y = ConePoint::lower(Yt);
  const StructurePoint& s = p.base;
  const double e0 = p.eps0, e1 = p.eps1;
  Vec tangent = s.nphi(X, Y) + e1 * s.gm(X, Y) * s.xi() - e0 * e1 * s.eta(Y) * X;
  tangent -= (b / p.t) * (e0 * s.nxi(X) + s.phi(X));
  Vec out = p.lift(tangent);
  out[0] = -e0 * e1 * p.t * (s.neta(X, Y) - s.gm(X, s.phi(Y)));
  return out;
}

inline double cone_nabla_J(const ConePoint& p, const Vec& X, const Vec& Y) {
  return compare(p.nJ(X, Y), cone_nabla_J_predicted(p, X, Y));
}

inline Vec cone_curvature_predicted(const ConePoint& p, const Vec& Xt, const Vec& Yt, const Vec& Zt) {
  const Vec X = ConePoint::lower(Xt), Y = ConePoint::lower(Yt), Z = ConePoint::lower(Zt);
  const StructurePoint& s = p.base;
  const double ee = p.eps0 * p.eps1;
  return p.lift(s.R(X, Y, Z) + ee * s.gm(Y, Z) * X - ee * s.gm(X, Z) * Y);
}

inline double cone_curvature(const ConePoint& p, const Vec& X, const Vec& Y, const Vec& Z) {
  return compare(p.R(X, Y, Z), cone_curvature_predicted(p, X, Y, Z));
}

/// R~(X~,Y~)(J Z~)
inline Vec cone_curvature_J_predicted(const ConePoint& p, const Vec& Xt, const Vec& Yt, const Vec& Zt) {
  const double c = Zt[0];
  const Vec X = ConePoint::lower(Xt), Y = ConePoint::lower(Yt), Z = ConePoint::lower(Zt);
  const StructurePoint& s = p.base;
  const double e0 = p.eps0, e1 = p.eps1;
  Vec on_dt = -(e0 / p.t) * (s.R(X, Y, s.xi()) + e1 * s.eta(Y) * X - e1 * s.eta(X) * Y);
  Vec on_z = s.R(X, Y, s.phi(Z)) + e0 * e1 * s.gm(Y, s.phi(Z)) * X - e0 * e1 * s.gm(X, s.phi(Z)) * Y;
  return p.lift(c * on_dt + on_z);
}

inline double cone_curvature_J(const ConePoint& p, const Vec& X, const Vec& Y, const Vec& Z) {
  return compare(p.R(X, Y, p.J(Z)), cone_curvature_J_predicted(p, X, Y, Z));
}

inline Vec cone_nijenhuis_predicted(const ConePoint& p, const Vec& Xt, const Vec& Yt) {
  const double a = Xt[0], b = Yt[0];
  const Vec X = ConePoint::lower(Xt), Y = ConePoint::lower(Yt);
  const StructurePoint& s = p.base;
  const double e0 = p.eps0, e1 = p.eps1;
  // N~(X,Y) + a N~(d_t, Y) - b N~(d_t, X)
  Vec tangent = s.N1(X, Y) - (e0 / p.t) * (a * (s.N3 * Y) - b * (s.N3 * X));
  Vec out = p.lift(tangent);
  out[0] = -e0 * e1 * p.t * X.dot(s.N2 * Y) + e1 * (a * s.N4.dot(Y) - b * s.N4.dot(X));
  return out;
}

inline double cone_nijenhuis(const ConePoint& p, const Vec& X, const Vec& Y) {
  return compare(p.Nt(X, Y), cone_nijenhuis_predicted(p, X, Y));
}

inline double cone_nijenhuis_antisym(const ConePoint& p, const Vec& X, const Vec& Y) {
  return compare(p.Nt(X, Y), Vec(-p.Nt(Y, X)));
}

// ---------------------------------------------------------------------------
// Quantities compared by the equivalence rows.

/// Size of nabla~ J relative to its terms.
inline double cone_nabla_J_size(const ConePoint& p) {
  const int D = p.dim();
  double worst = 0.0;
  for (int k = 0; k < D; ++k) {
    Mat Gk(D, D);
    for (int i = 0; i < D; ++i)
      for (int m = 0; m < D; ++m) Gk(i, m) = p.geo.conn.gamma(i, k, m);
    Balance b;
    b.add(p.JJ.da[k]).add(Mat(Gk * p.JJ.a)).sub(Mat(p.JJ.a * Gk));
    worst = std::max(worst, b.residual());
  }
  return worst;
}

inline double cone_omega_closedness(const ConePoint& p) {
  double scale = 0.0;
  for (int k = 0; k < p.dim(); ++k)
    scale = std::max(scale, (p.geo.metric.dg[k] * p.JJ.a + p.g() * p.JJ.da[k]).cwiseAbs().maxCoeff());
  return p.dOmega.max_abs() / std::max(1.0, scale);
}

/// (nabla~_{JX} J)Y - delta J (nabla~_X J)Y
inline double cone_condition_residual(const ConePoint& p, int delta, const Vec& X, const Vec& Y) {
  Balance b;
  b.add(p.nJ(p.J(X), Y)).sub(delta * p.J(p.nJ(X, Y)));
  return b.residual();
}

/// [nabla~_{N~(X,Y)}, J]V against the curvature commutators.
inline double gray_residual(const ConePoint& p, int delta, const Vec& X, const Vec& Y, const Vec& V) {
  Balance b;
  b.add(p.nJ(p.Nt(X, Y), V))
      .add(p.eps1 * p.RJ(X, Y, V))
      .add(p.RJ(p.J(X), p.J(Y), V))
      .sub(delta * p.J(p.RJ(p.J(X), Y, V)))
      .sub(delta * p.J(p.RJ(X, p.J(Y), V)));
  return b.residual();
}

inline double gray_raw(const ConePoint& p, int delta, const Vec& X, const Vec& Y, const Vec& V) {
  Balance b;
  b.add(p.nJ(p.Nt(X, Y), V))
      .add(p.eps1 * p.RJ(X, Y, V))
      .add(p.RJ(p.J(X), p.J(Y), V))
      .sub(delta * p.J(p.RJ(p.J(X), Y, V)))
      .sub(delta * p.J(p.RJ(X, p.J(Y), V)));
  return b.raw();
}

}  // namespace pcm
