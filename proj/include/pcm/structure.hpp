#pragma once

// Almost (para)contact metric structures (phi, xi, eta, g) with signs
// eps0 = g(xi, xi) and eps1 = +1 (paracontact) or -1 (contact).

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcm/geometry.hpp"
#include "pcm/residual.hpp"
#include "pcm/sampling.hpp"

namespace pcm {

struct PCStructure {
  std::string name;
  ChartManifold base;
  EndoField phi;
  VectorField xi;
  OneForm eta;
  int eps0 = 1;
  int eps1 = -1;

  int dim() const { return base.dim(); }
  int n() const { return (dim() - 1) / 2; }

  void validate() const {
    base.validate();
    const int d = dim();
    if (d % 2 != 1) throw std::invalid_argument("structure needs an odd-dimensional chart");
    if (static_cast<int>(phi.size()) != d || static_cast<int>(xi.size()) != d || static_cast<int>(eta.size()) != d)
      throw std::invalid_argument("component count does not match the dimension");
    for (const auto& row : phi)
      if (static_cast<int>(row.size()) != d) throw std::invalid_argument("phi has wrong column count");
    if ((eps0 != 1 && eps0 != -1) || (eps1 != 1 && eps1 != -1))
      throw std::invalid_argument("eps0 and eps1 must be +1 or -1");
  }
};

class AxiomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NotApplicable : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nijenhuis-type rank-3 tensor stored as slices: slice[a](i, b) = T^i_ab.
struct Rank3 {
  std::vector<Mat> slice;

  Vec operator()(const Vec& X, const Vec& Y) const {
    Vec out = Vec::Zero(X.size());
    for (int a = 0; a < X.size(); ++a)
      if (X[a] != 0.0) out += X[a] * (slice[a] * Y);
    return out;
  }
  double max_abs() const {
    double m = 0.0;
    for (const auto& s : slice) m = std::max(m, s.cwiseAbs().maxCoeff());
    return m;
  }
};

/// Everything the identity checks need at one point.
struct StructurePoint {
  int eps0 = 1, eps1 = -1;
  DEtaConvention conv = DEtaConvention::Half;
  PointGeometry geo;
  EndoJet phiJ;
  VectorJet xiJ;
  FormJet etaJ;
  std::vector<Mat> nabla_phi;  // [k](i,j) = (nabla_k phi)^i_j
  Mat nabla_xi;                // (i,k) = (nabla_k xi)^i
  Mat nabla_eta;               // (j,k) = (nabla_k eta)_j
  Mat Phi;                     // Phi(X,Y) = g(X, phi Y)
  Mat d_eta;
  Mat h;                       // (1/2) L_xi phi
  Rank3 N, N1;
  Mat N2;                      // (a,b)
  Mat N3;                      // L_xi phi
  Vec N4;                      // L_xi eta
  Frame frame;

  int dim() const { return geo.dim(); }
  int n() const { return (dim() - 1) / 2; }
  const Mat& g() const { return geo.g(); }
  const Mat& phi_m() const { return phiJ.a; }
  const Vec& xi() const { return xiJ.v; }
  const Vec& eta_v() const { return etaJ.w; }

  Vec phi(const Vec& v) const { return phiJ.a * v; }
  double gm(const Vec& a, const Vec& b) const { return a.dot(g() * b); }
  double eta(const Vec& v) const { return etaJ.w.dot(v); }
  Vec hv(const Vec& v) const { return h * v; }
  Vec R(const Vec& a, const Vec& b, const Vec& c) const { return geo.curvature(a, b, c); }
  double R4(const Vec& a, const Vec& b, const Vec& c, const Vec& d) const { return geo.curvature(a, b, c, d); }
  double Ric(const Vec& a, const Vec& b) const { return geo.ricci(a, b); }
  /// (nabla_X phi) Y
  Vec nphi(const Vec& X, const Vec& Y) const { return along(nabla_phi, X) * Y; }
  Mat nphi_op(const Vec& X) const { return along(nabla_phi, X); }
  /// (nabla_X eta)(Y)
  double neta(const Vec& X, const Vec& Y) const { return Y.dot(nabla_eta * X); }
  /// nabla_X xi
  Vec nxi(const Vec& X) const { return nabla_xi * X; }
  /// (nabla_X Phi)(Y, Z) = g(Y, (nabla_X phi) Z)
  double nPhi(const Vec& X, const Vec& Y, const Vec& Z) const { return gm(Y, nphi(X, Z)); }
  /// [R(A,B), phi] V
  Vec Rphi(const Vec& A, const Vec& B, const Vec& V) const { return R(A, B, phi(V)) - phi(R(A, B, V)); }
};

inline Rank3 nijenhuis(const EndoJet& P) {
  const int d = static_cast<int>(P.a.rows());
  Rank3 N{std::vector<Mat>(d, Mat::Zero(d, d))};
  for (int i = 0; i < d; ++i)
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) {
        double s = 0.0;
        for (int m = 0; m < d; ++m)
          s += P.a(m, a) * P.da[m](i, b) - P.a(m, b) * P.da[m](i, a) + P.a(i, m) * (P.da[b](m, a) - P.da[a](m, b));
        N.slice[a](i, b) = s;
      }
  return N;
}

inline StructurePoint evaluate_structure(const PCStructure& S, const Vec& x,
                                         DEtaConvention conv = DEtaConvention::Half) {
  StructurePoint p;
  const int d = S.dim();
  p.eps0 = S.eps0;
  p.eps1 = S.eps1;
  p.conv = conv;
  p.geo = point_geometry(S.base, x);
  p.phiJ = endo_jet(S.phi, x);
  p.xiJ = vector_jet(S.xi, x);
  p.etaJ = form_jet(S.eta, x);
  const auto& gamma = p.geo.conn.gamma;
  p.nabla_phi = covariant_derivative(p.phiJ, gamma);
  p.nabla_xi = covariant_derivative(p.xiJ, gamma);
  p.nabla_eta = covariant_derivative(p.etaJ, gamma);
  p.Phi = p.g() * p.phiJ.a;
  p.d_eta = exterior_derivative(p.etaJ, conv);
  p.N3 = lie_derivative(p.phiJ, p.xiJ);
  p.N4 = lie_derivative(p.etaJ, p.xiJ);
  p.h = 0.5 * p.N3;
  p.N = nijenhuis(p.phiJ);
  p.N1 = p.N;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) p.N1.slice[a].col(b) -= 2.0 * p.eps1 * p.d_eta(a, b) * p.xiJ.v;
  // N2(a,b) = (L_{phi d_a} eta)(d_b) - (L_{phi d_b} eta)(d_a)
  Mat Lphi(d, d);  // Lphi(a, j) = (L_{phi d_a} eta)_j
  for (int a = 0; a < d; ++a) {
    VectorJet V{p.phiJ.a.col(a), Mat(d, d)};
    for (int k = 0; k < d; ++k) V.dv.col(k) = p.phiJ.da[k].col(a);
    Lphi.row(a) = lie_derivative(p.etaJ, V).transpose();
  }
  p.N2 = Lphi - Lphi.transpose();
  p.frame = build_frame(p.g());
  return p;
}

// ---------------------------------------------------------------------------
// Axioms

struct AxiomCheck {
  std::string id;
  std::string statement;
  double residual;
};

inline std::vector<AxiomCheck> axiom_residuals(const StructurePoint& p) {
  const int d = p.dim();
  const Mat I = Mat::Identity(d, d);
  const Mat& P = p.phi_m();
  const Vec& xi = p.xi();
  const Vec& eta = p.eta_v();
  const Mat& g = p.g();
  std::vector<AxiomCheck> out;
  out.push_back({"axiom-phi-square", "phi^2 = eps1 (I - eta (x) xi)",
                 compare(P * P, p.eps1 * (I - xi * eta.transpose()))});
  out.push_back({"axiom-eta-xi", "eta(xi) = 1", compare(Vec::Constant(1, eta.dot(xi)), Vec::Constant(1, 1.0))});
  out.push_back({"axiom-phi-xi", "phi xi = 0", compare(P * xi, Vec::Zero(d))});
  out.push_back({"axiom-eta-phi", "eta o phi = 0", compare(P.transpose() * eta, Vec::Zero(d))});
  out.push_back({"axiom-metric", "g(phi X, phi Y) = -eps1 (g(X,Y) - eps0 eta(X) eta(Y))",
                 compare(P.transpose() * g * P, -p.eps1 * (g - p.eps0 * eta * eta.transpose()))});
  out.push_back({"axiom-eta-dual", "eta(X) = eps0 g(X, xi)", compare(eta, p.eps0 * (g * xi))});
  out.push_back({"axiom-xi-norm", "g(xi, xi) = eps0",
                 compare(Vec::Constant(1, xi.dot(g * xi)), Vec::Constant(1, p.eps0))});
  if (p.eps1 == 1) {
    // Restrict phi to ker eta and count eigenvalues near +1 and -1.
    Eigen::FullPivLU<Mat> lu(eta.transpose());
    Mat B = lu.kernel();
    Mat C = B.completeOrthogonalDecomposition().solve(P * B);
    Eigen::EigenSolver<Mat> es(C);
    int plus = 0, minus = 0;
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
      auto ev = es.eigenvalues()[i];
      if (std::abs(ev - std::complex<double>(1.0, 0.0)) < 1e-6) ++plus;
      if (std::abs(ev - std::complex<double>(-1.0, 0.0)) < 1e-6) ++minus;
    }
    double defect = std::abs(plus - p.n()) + std::abs(minus - p.n());
    out.push_back({"axiom-eigenspaces", "phi has n-dimensional +1 and -1 eigenspaces on ker eta", defect});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Point sampling

inline std::string describe(const Vec& x, const std::vector<std::string>& coords) {
  std::ostringstream os;
  os.precision(10);
  os << '(';
  for (int i = 0; i < x.size(); ++i) os << (i ? ", " : "") << coords[static_cast<std::size_t>(i)] << '=' << x[i];
  os << ')';
  return os.str();
}

/// Samples `count` generic points of the chart.  A candidate is rejected when
/// an exclusion predicate vanishes, an expression leaves its domain, the
/// metric is (nearly) singular, or the frame construction degenerates.
/// `make` builds the per-point object and may throw for degenerate points.
template <class Make>
auto sample_points(const ChartManifold& M, int count, std::uint64_t seed, Make&& make) {
  using T = decltype(make(Vec()));
  std::vector<T> out;
  std::vector<Vec> params;
  Rng rng(seed);
  const int budget = 10 * std::max(count, 1);
  for (int attempt = 0; attempt < budget && static_cast<int>(out.size()) < count; ++attempt) {
    Vec q = rng.in_box(M.sample_box);
    try {
      Vec x = M.chart_point(q);
      bool excluded = false;
      for (const auto& e : M.exclude)
        if (std::fabs(eval_value(e, x)) < 1e-8) excluded = true;
      if (excluded) continue;
      if (std::fabs(metric_value(M, x).determinant()) < 1e-10) continue;
      out.push_back(make(x));
    } catch (const DomainError&) {
    } catch (const SingularMetric&) {
    } catch (const FrameError&) {
    }
  }
  if (static_cast<int>(out.size()) < count)
    throw SampleError("could not find " + std::to_string(count) + " generic points on '" + M.name +
                      "' within " + std::to_string(budget) + " attempts");
  return out;
}

inline std::vector<StructurePoint> sample_structure(const PCStructure& S, int count, std::uint64_t seed,
                                                    DEtaConvention conv = DEtaConvention::Half) {
  return sample_points(S.base, count, seed, [&](const Vec& x) { return evaluate_structure(S, x, conv); });
}

/// Throws AxiomError listing every axiom that fails at the first bad point.
inline void check_axioms(const PCStructure& S, const std::vector<StructurePoint>& pts, double tol = 1e-9) {
  for (const auto& p : pts) {
    std::ostringstream os;
    int failed = 0;
    for (const auto& a : axiom_residuals(p))
      if (!(a.residual <= tol)) os << (failed++ ? "; " : "") << a.statement << " (residual " << a.residual << ")";
    if (failed)
      throw AxiomError("axiom failed on '" + S.name + "' at " + describe(p.geo.x, *S.base.coords) + ": " + os.str());
  }
}

// ---------------------------------------------------------------------------
// Classification quantities (per point, maximized over coordinate basis pairs)

inline double contact_defect(const StructurePoint& p) { return compare(p.Phi, p.d_eta); }

inline double normality_defect(const StructurePoint& p) {
  double worst = 0.0;
  const int d = p.dim();
  for (int a = 0; a < d; ++a) {
    Balance b;
    b.add(p.N.slice[a]);
    Mat corr = Mat::Zero(d, d);
    for (int c = 0; c < d; ++c) corr.col(c) = 2.0 * p.eps1 * p.d_eta(a, c) * p.xi();
    b.sub(corr);
    worst = std::max(worst, b.residual());
  }
  return worst;
}

template <class F>
double max_over_basis_pairs(const StructurePoint& p, F&& f) {
  double worst = 0.0;
  const int d = p.dim();
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) worst = std::max(worst, f(Vec(Vec::Unit(d, a)), Vec(Vec::Unit(d, b))));
  return worst;
}

/// (nabla_X phi)Y = -eps1 g(X,Y) xi + eps0 eps1 eta(Y) X
inline double sasakian_residual(const StructurePoint& p, const Vec& X, const Vec& Y) {
  Balance b;
  b.add(p.nphi(X, Y)).add(p.eps1 * p.gm(X, Y) * p.xi()).sub(p.eps0 * p.eps1 * p.eta(Y) * X);
  return b.residual();
}

/// (nabla_{phi X} phi)Y - delta phi (nabla_X phi)Y - delta eps1 (nabla_X eta)(Y) xi
///   = (delta - 1)(eps1 g(phi X, Y) xi - eps0 eps1 eta(Y) phi X)
inline double condition15_residual(const StructurePoint& p, int delta, const Vec& X, const Vec& Y) {
  const double e0 = p.eps0, e1 = p.eps1;
  Balance b;
  b.add(p.nphi(p.phi(X), Y))
      .sub(delta * p.phi(p.nphi(X, Y)))
      .sub(delta * e1 * p.neta(X, Y) * p.xi())
      .sub((delta - 1) * e1 * p.gm(p.phi(X), Y) * p.xi())
      .add((delta - 1) * e0 * e1 * p.eta(Y) * p.phi(X));
  return b.residual();
}

/// phi (nabla_X phi)Y - (nabla_{phi X} phi)Y + eps1 (nabla_X eta)(Y) xi = 0
inline double normality_criterion_residual(const StructurePoint& p, const Vec& X, const Vec& Y) {
  Balance b;
  b.add(p.phi(p.nphi(X, Y))).sub(p.nphi(p.phi(X), Y)).add(p.eps1 * p.neta(X, Y) * p.xi());
  return b.residual();
}

struct StructureClass {
  bool axioms_ok = false;
  bool contact_metric = false;
  bool normal = false;
  bool sasakian = false;
  bool condition15_plus = false;
  bool condition15_minus = false;
  double contact_defect = 0.0, normality_defect = 0.0, sasakian_defect = 0.0;
  double condition15_plus_defect = 0.0, condition15_minus_defect = 0.0;

  /// +1 preferred when both signs hold; 0 when neither does.
  int condition15_delta() const { return condition15_plus ? 1 : (condition15_minus ? -1 : 0); }
  bool condition15(int delta) const { return delta > 0 ? condition15_plus : condition15_minus; }

  friend bool operator==(const StructureClass& a, const StructureClass& b) {
    return a.axioms_ok == b.axioms_ok && a.contact_metric == b.contact_metric && a.normal == b.normal &&
           a.sasakian == b.sasakian && a.condition15_plus == b.condition15_plus &&
           a.condition15_minus == b.condition15_minus;
  }
};

inline std::string describe(const StructureClass& c) {
  std::string s = c.axioms_ok ? "axioms" : "axioms-failed";
  if (c.contact_metric) s += ", contact-metric";
  if (c.normal) s += ", normal";
  if (c.sasakian) s += ", sasakian";
  if (c.condition15_plus) s += ", delta=+1";
  if (c.condition15_minus) s += ", delta=-1";
  return s;
}

/// Classifies from already-sampled points.  Throws AxiomError if an axiom
/// fails at the fixed tolerance 1e-9.
inline StructureClass classify(const PCStructure& S, const std::vector<StructurePoint>& pts, double tol) {
  check_axioms(S, pts);
  StructureClass c;
  c.axioms_ok = true;
  for (const auto& p : pts) {
    c.contact_defect = std::max(c.contact_defect, contact_defect(p));
    c.normality_defect = std::max(c.normality_defect, normality_defect(p));
    c.sasakian_defect = std::max(c.sasakian_defect, max_over_basis_pairs(p, [&](const Vec& X, const Vec& Y) {
                                   return sasakian_residual(p, X, Y);
                                 }));
    c.condition15_plus_defect =
        std::max(c.condition15_plus_defect, max_over_basis_pairs(p, [&](const Vec& X, const Vec& Y) {
                   return condition15_residual(p, 1, X, Y);
                 }));
    c.condition15_minus_defect =
        std::max(c.condition15_minus_defect, max_over_basis_pairs(p, [&](const Vec& X, const Vec& Y) {
                   return condition15_residual(p, -1, X, Y);
                 }));
  }
  c.contact_metric = c.contact_defect < tol;
  c.normal = c.normality_defect < tol;
  c.sasakian = c.sasakian_defect < tol;
  c.condition15_plus = c.condition15_plus_defect < tol;
  c.condition15_minus = c.condition15_minus_defect < tol;
  return c;
}

inline StructureClass classify(const PCStructure& S, int K = 32, double tol = 1e-7, std::uint64_t seed = 0,
                               DEtaConvention conv = DEtaConvention::Half) {
  return classify(S, sample_structure(S, K, derive_seed(seed, S.name + "/classify"), conv), tol);
}

inline const Mat& h_operator(const StructurePoint& p, const StructureClass& c) {
  if (!c.contact_metric) throw NotApplicable("h is only characterized on contact metric structures");
  return p.h;
}

}  // namespace pcm
