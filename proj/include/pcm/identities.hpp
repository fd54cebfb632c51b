#pragma once

// Identity residuals and the check registry.  Every residual is
// max|LHS - RHS| / max(1, largest term) for one vector tuple at one point.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pcm/cone.hpp"
#include "pcm/structure.hpp"

namespace pcm {

/// Index order used for the star-Ricci tensor.  XFirst is the one that makes
/// the second-order identities hold; EFirst is its negative.
enum class StarRicciOrder { XFirst, EFirst };

/// Tr(nabla phi)^2 contraction pattern.
enum class NablaPhiTrace { Norm, Swapped };

inline const char* to_string(NablaPhiTrace t) { return t == NablaPhiTrace::Norm ? "norm" : "swapped"; }

// ---------------------------------------------------------------------------
// Frame contractions

/// Ric*(X,Y) = sum_i eps_i R(X, E_i, phi Y, phi E_i)
inline double star_ricci(const StructurePoint& p, const Vec& X, const Vec& Y,
                         StarRicciOrder order = StarRicciOrder::XFirst, const Frame* frame = nullptr) {
  const Frame& f = frame ? *frame : p.frame;
  const Vec pY = p.phi(Y);
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) {
    const Vec E = f[i];
    double term = order == StarRicciOrder::XFirst ? p.R4(X, E, pY, p.phi(E)) : p.R4(E, X, pY, p.phi(E));
    s += f.signs[i] * term;
  }
  return s;
}

/// r* = sum_{i,j} eps_i eps_j R(E_i, E_j, phi E_j, phi E_i)
inline double star_scalar(const StructurePoint& p) {
  const Frame& f = p.frame;
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i)
    for (int j = 0; j < f.size(); ++j) s += f.signs[i] * f.signs[j] * p.R4(f[i], f[j], p.phi(f[j]), p.phi(f[i]));
  return s;
}

inline double nabla_phi_trace(const StructurePoint& p, NablaPhiTrace mode = NablaPhiTrace::Norm) {
  const Frame& f = p.frame;
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i)
    for (int j = 0; j < f.size(); ++j) {
      const Vec a = p.nphi(f[i], f[j]);
      const Vec b = mode == NablaPhiTrace::Norm ? a : p.nphi(f[j], f[i]);
      s += f.signs[i] * f.signs[j] * p.gm(a, b);
    }
  return s;
}

/// sum_i eps_i g((nabla_{E_i} phi)X, (nabla_{E_i} phi)Y)
inline double nabla_phi_pair(const StructurePoint& p, const Vec& X, const Vec& Y) {
  const Frame& f = p.frame;
  double s = 0.0;
  for (int i = 0; i < f.size(); ++i) s += f.signs[i] * p.gm(p.nphi(f[i], X), p.nphi(f[i], Y));
  return s;
}

inline Mat ricci_op(const StructurePoint& p) { return ricci_operator(p.geo.ric, p.geo.ginv()); }

// ---------------------------------------------------------------------------
// Structure identities

/// N(X,Y) through the connection:
/// -phi(nabla_X phi)Y + phi(nabla_Y phi)X + (nabla_{phi X} phi)Y - (nabla_{phi Y} phi)X
inline double nijenhuis_connection(const StructurePoint& p, const Vec& X, const Vec& Y) {
  Balance b;
  b.add(p.N(X, Y))
      .add(p.phi(p.nphi(X, Y)))
      .sub(p.phi(p.nphi(Y, X)))
      .sub(p.nphi(p.phi(X), Y))
      .add(p.nphi(p.phi(Y), X));
  return b.residual();
}

/// Curvature identity of structures satisfying the delta condition.
inline double thm_a0(const StructurePoint& p, int delta, const Vec& X, const Vec& Y, const Vec& Z) {
  const double e0 = p.eps0, e1 = p.eps1, d = delta;
  const Vec pX = p.phi(X), pZ = p.phi(Z), pY = p.phi(Y);
  const Vec xi = p.xi();
  const Vec pN = p.phi(p.N(Z, X));
  Balance b;
  b.add(d * p.Rphi(Z, pX, Y))
      .add(d * p.Rphi(pZ, X, Y))
      .add(e1 * p.Rphi(pZ, pX, pY))
      .add(p.Rphi(Z, X, pY))
      .add(p.eta(Y) * p.R(pZ, pX, xi))
      .add(p.eta(Y) * e1 * p.R(Z, X, xi));
  b.sub(d * e1 * p.nphi(pN, Y)).sub(d * p.gm(pN, Y) * xi).add(d * e0 * p.eta(Y) * pN);
  const double c = e0 * e1 * (d - 1);
  if (c != 0.0)
    b.add(c * 2 * p.gm(pZ, Y) * pX)
        .sub(c * 2 * p.gm(pX, Y) * pZ)
        .sub(c * p.gm(pZ, pY) * X)
        .add(c * p.gm(pX, pY) * Z)
        .add(c * p.gm(Z, Y) * p.phi(pX))
        .sub(c * p.gm(X, Y) * p.phi(pZ));
  return b.residual();
}

// ---------------------------------------------------------------------------
// Contact metric identities

/// nabla_X xi = -eps0 phi X + eps1 phi h X
inline double nabla_xi_formula(const StructurePoint& p, const Vec& X) {
  Balance b;
  b.add(p.nxi(X)).add(p.eps0 * p.phi(X)).sub(p.eps1 * p.phi(p.hv(X)));
  return b.residual();
}

/// eps1 (nabla_{phi X} phi) phi Y - (nabla_X phi) Y
///   = 2 eps1 g(X,Y) xi - eps1 eta(Y) (eps0 X - eps1 h X + eps0 eta(X) xi)
inline double phi_nabla_phi(const StructurePoint& p, const Vec& X, const Vec& Y) {
  const double e0 = p.eps0, e1 = p.eps1;
  Balance b;
  b.add(e1 * p.nphi(p.phi(X), p.phi(Y))).sub(p.nphi(X, Y));
  b.sub(2 * e1 * p.gm(X, Y) * p.xi())
      .add(e1 * p.eta(Y) * e0 * X)
      .sub(p.eta(Y) * p.hv(X))
      .add(e1 * p.eta(Y) * e0 * p.eta(X) * p.xi());
  return b.residual();
}

/// (nabla_{phi X} phi)Y + phi(nabla_X phi)Y
///   + eps0 eps1 (g(phi(eps0 X + eps1 h X), Y) xi - 2 eta(Y) phi X) = 0
inline double nabla_phi_shift(const StructurePoint& p, const Vec& X, const Vec& Y) {
  const double e0 = p.eps0, e1 = p.eps1;
  Balance b;
  b.add(p.nphi(p.phi(X), Y))
      .add(p.phi(p.nphi(X, Y)))
      .add(e0 * e1 * p.gm(p.phi(e0 * X + e1 * p.hv(X)), Y) * p.xi())
      .sub(2 * e0 * e1 * p.eta(Y) * p.phi(X));
  return b.residual();
}

/// N(X,Y) on a contact metric structure.
inline double nijenhuis_contact_form(const StructurePoint& p, const Vec& X, const Vec& Y) {
  const double e0 = p.eps0, e1 = p.eps1;
  Balance b;
  b.add(p.N(X, Y))
      .add(2 * p.phi(p.nphi(X, Y)))
      .sub(2 * p.phi(p.nphi(Y, X)))
      .sub(2 * e0 * e1 * p.eta(Y) * p.phi(X))
      .add(2 * e0 * e1 * p.eta(X) * p.phi(Y))
      .sub(2 * e1 * p.gm(X, p.phi(Y)) * p.xi());
  return b.residual();
}

/// (nabla_X Phi)(Z,Y) + (nabla_Y Phi)(X,Z) + (nabla_Z Phi)(Y,X) = 0
inline double cyclic_nabla_Phi(const StructurePoint& p, const Vec& X, const Vec& Y, const Vec& Z) {
  Balance b;
  b.add(p.nPhi(X, Z, Y)).add(p.nPhi(Y, X, Z)).add(p.nPhi(Z, Y, X));
  return b.residual();
}

/// Commutator identity of contact metric structures.
inline double thm_w0(const StructurePoint& p, const Vec& X, const Vec& Y, const Vec& Z) {
  const double e0 = p.eps0, e1 = p.eps1;
  const Vec pX = p.phi(X), pZ = p.phi(Z), pY = p.phi(Y), xi = p.xi();
  const Vec A = p.nphi(Z, X) - p.nphi(X, Z);
  Balance b;
  b.add(p.Rphi(Z, pX, Y))
      .add(p.Rphi(pZ, X, Y))
      .sub(e1 * p.Rphi(pZ, pX, pY))
      .sub(p.Rphi(Z, X, pY))
      .sub(p.eta(Y) * e1 * p.R(Z, X, xi))
      .sub(p.eta(Y) * p.R(pZ, pX, xi));
  b.add(2 * p.nphi(A, Y))
      .sub(2 * e0 * e1 * p.eta(X) * p.nphi(Z, Y))
      .add(2 * e0 * e1 * p.eta(Z) * p.nphi(X, Y))
      .add(2 * e1 * p.gm(Y, A) * xi)
      .sub(2 * e0 * e1 * p.eta(Y) * A)
      .add(4 * e0 * p.gm(pX, pY) * p.phi(pZ))
      .sub(4 * e0 * p.gm(pZ, pY) * p.phi(pX))
      .sub(4 * e0 * e1 * p.gm(Y, pX) * pZ)
      .add(4 * e0 * e1 * p.gm(Y, pZ) * pX);
  return b.residual();
}

/// Curvature identity of contact metric structures, fully covariant form.
inline double thm_rcw2(const StructurePoint& p, const Vec& Z, const Vec& X, const Vec& Y, const Vec& W) {
  const double e0 = p.eps0, e1 = p.eps1;
  const Vec pX = p.phi(X), pZ = p.phi(Z), pY = p.phi(Y), pW = p.phi(W);
  const Frame& f = p.frame;
  Balance b;
  b.add(p.R4(Z, pX, pY, W))
      .add(p.R4(Z, pX, Y, pW))
      .add(p.R4(pZ, X, pY, W))
      .add(p.R4(pZ, X, Y, pW))
      .sub(p.R4(pZ, pX, Y, W))
      .sub(e1 * p.R4(pZ, pX, pY, pW))
      .sub(e1 * p.R4(Z, X, Y, W))
      .sub(p.R4(Z, X, pY, pW));
  for (int i = 0; i < f.size(); ++i) b.add(2.0 * f.signs[i] * p.nPhi(f[i], Z, X) * p.nPhi(f[i], W, Y));
  b.sub(2 * e0 * e1 * p.nPhi(Z, W, Y) * p.eta(X))
      .add(2 * e0 * e1 * p.nPhi(X, W, Y) * p.eta(Z))
      .add(2 * e0 * e1 * p.nPhi(Y, Z, X) * p.eta(W))
      .sub(2 * e0 * e1 * p.nPhi(W, Z, X) * p.eta(Y))
      .sub(4 * e0 * p.gm(pX, pY) * p.gm(pZ, pW))
      .add(4 * e0 * p.gm(pZ, pY) * p.gm(pX, pW))
      .sub(4 * e0 * e1 * p.gm(Y, pX) * p.gm(pZ, W))
      .add(4 * e0 * e1 * p.gm(Y, pZ) * p.gm(pX, W));
  return b.residual();
}

/// R(xi,X)xi + eps1 phi R(xi, phi X) xi = 2 phi^2 X - 2 eps1 h^2 X
inline double cor_wn1a(const StructurePoint& p, const Vec& X) {
  const Vec xi = p.xi();
  Balance b;
  b.add(p.R(xi, X, xi)).add(p.eps1 * p.phi(p.R(xi, p.phi(X), xi)));
  b.sub(2 * p.phi(p.phi(X))).add(2 * p.eps1 * p.hv(p.hv(X)));
  return b.residual();
}

/// -eps1 R(xi,X,Y,Z) - R(xi,X,phi Y,phi Z) + R(xi,phi X,phi Y,Z) + R(xi,phi X,Y,phi Z)
///   = 2 (nabla_{hX} Phi)(Y,Z) - 2 eps0 g(u,Z) eta(Y) + 2 eps0 g(u,Y) eta(Z),
/// u = eps0 X - eps1 h X
inline double cor_wn1b(const StructurePoint& p, const Vec& X, const Vec& Y, const Vec& Z) {
  const double e0 = p.eps0, e1 = p.eps1;
  const Vec xi = p.xi(), pX = p.phi(X);
  const Vec u = e0 * X - e1 * p.hv(X);
  Balance b;
  b.sub(e1 * p.R4(xi, X, Y, Z))
      .sub(p.R4(xi, X, p.phi(Y), p.phi(Z)))
      .add(p.R4(xi, pX, p.phi(Y), Z))
      .add(p.R4(xi, pX, Y, p.phi(Z)));
  b.sub(2 * p.nPhi(p.hv(X), Y, Z)).add(2 * e0 * p.gm(u, Z) * p.eta(Y)).sub(2 * e0 * p.gm(u, Y) * p.eta(Z));
  return b.residual();
}

/// Ric(phi X, phi Y) - eps1 Ric(X,Y) + Ric*(X,Y) + Ric*(Y,X)
///   = -sum eps_i g((nabla_{E_i} phi)X, (nabla_{E_i} phi)Y) + (4n-1) eps0 g(X,Y)
///     + eta(X) eta(Y) - 2 eps1 g(X, hY) - eps0 g(hX, hY)
inline double cor_wn2(const StructurePoint& p, const Vec& X, const Vec& Y,
                      StarRicciOrder order = StarRicciOrder::XFirst) {
  const double e0 = p.eps0, e1 = p.eps1;
  const int n = p.n();
  Balance b;
  b.add(p.Ric(p.phi(X), p.phi(Y)))
      .sub(e1 * p.Ric(X, Y))
      .add(star_ricci(p, X, Y, order))
      .add(star_ricci(p, Y, X, order));
  b.add(nabla_phi_pair(p, X, Y))
      .sub((4 * n - 1) * e0 * p.gm(X, Y))
      .sub(p.eta(X) * p.eta(Y))
      .add(2 * e1 * p.gm(X, p.hv(Y)))
      .add(e0 * p.gm(p.hv(X), p.hv(Y)));
  return b.residual();
}

/// Ric(xi,xi) = -eps1 (2n - Tr h^2)
inline double cor_wn3(const StructurePoint& p) {
  Balance b;
  b.add(p.Ric(p.xi(), p.xi())).add(p.eps1 * (2.0 * p.n() - (p.h * p.h).trace()));
  return b.residual();
}

/// r* + eps1 r + 4n^2 = Tr h^2 + (Tr(nabla phi)^2 - 4n)/2
inline double cor_wn4(const StructurePoint& p, NablaPhiTrace mode = NablaPhiTrace::Norm) {
  const double n = p.n();
  Balance b;
  b.add(star_scalar(p)).add(p.eps1 * p.geo.scalar).add(4 * n * n);
  b.sub((p.h * p.h).trace()).sub(0.5 * nabla_phi_trace(p, mode)).add(2 * n);
  return b.residual();
}

/// R(X,Y,Z,W) + eps0 eps1 (g(Y,Z) g(X,W) - g(X,Z) g(Y,W)) = 0
inline double constant_curvature_residual(const StructurePoint& p, const Vec& X, const Vec& Y, const Vec& Z,
                                          const Vec& W) {
  const double ee = p.eps0 * p.eps1;
  Balance b;
  b.add(p.R4(X, Y, Z, W)).add(ee * p.gm(Y, Z) * p.gm(X, W)).sub(ee * p.gm(X, Z) * p.gm(Y, W));
  return b.residual();
}

/// P(X,Y,Z) = (nabla_X Phi)(Y,Z) + eps0 eps1 (g(X,Z) eta(Y) - g(X,Y) eta(Z)),
/// sum_i eps_i P(E_i,Z,X) P(E_i,W,Y) = 0
inline double cor_trp(const StructurePoint& p, const Vec& X, const Vec& Y, const Vec& Z, const Vec& W) {
  const double ee = p.eps0 * p.eps1;
  auto P = [&](const Vec& A, const Vec& B, const Vec& C) {
    return p.nPhi(A, B, C) + ee * (p.gm(A, C) * p.eta(B) - p.gm(A, B) * p.eta(C));
  };
  const Frame& f = p.frame;
  Balance b;
  for (int i = 0; i < f.size(); ++i) b.add(f.signs[i] * P(f[i], Z, X) * P(f[i], W, Y));
  return b.residual();
}

/// Ric* computed in two different pseudo-orthonormal frames.
inline double star_ricci_frame_invariance(const StructurePoint& p, const Frame& other, const Vec& X, const Vec& Y) {
  return compare(star_ricci(p, X, Y), star_ricci(p, X, Y, StarRicciOrder::XFirst, &other));
}

// ---------------------------------------------------------------------------
// Normal structures

/// Curvature commutator identity of normal structures.
inline double thm_n3(const StructurePoint& p, const Vec& X, const Vec& Y, const Vec& Z) {
  const Vec pX = p.phi(X), pZ = p.phi(Z), xi = p.xi();
  Balance b;
  b.add(p.Rphi(Z, pX, Y))
      .add(p.Rphi(pZ, X, Y))
      .add(p.eps1 * p.Rphi(pZ, pX, p.phi(Y)))
      .add(p.Rphi(Z, X, p.phi(Y)))
      .add(p.eta(Y) * p.eps1 * p.R(Z, X, xi))
      .add(p.eta(Y) * p.R(pZ, pX, xi));
  return b.residual();
}

inline Balance opkrzyw_terms(const StructurePoint& p, const Vec& Z, const Vec& X, const Vec& Y, bool full) {
  const double e1 = p.eps1;
  const Vec pX = p.phi(X), pY = p.phi(Y), pZ = p.phi(Z);
  Balance b;
  b.add(e1 * p.R(Z, X, Y))
      .sub(p.phi(p.R(Z, X, pY)))
      .add(p.R(Z, pX, pY))
      .sub(p.phi(p.R(Z, pX, Y)));
  if (full)
    b.add(p.R(pZ, X, pY))
        .sub(p.phi(p.R(pZ, X, Y)))
        .add(p.R(pZ, pX, Y))
        .sub(e1 * p.phi(p.R(pZ, pX, pY)));
  return b;
}

inline double thm_opkrzyw(const StructurePoint& p, const Vec& X, const Vec& Y, const Vec& Z) {
  return opkrzyw_terms(p, Z, X, Y, true).residual();
}

/// The eight-term identity at Z = xi.
inline double cor_nr9a(const StructurePoint& p, const Vec& X, const Vec& Y) {
  return opkrzyw_terms(p, p.xi(), X, Y, false).residual();
}

/// eps1 R(xi,X)xi - phi R(xi, phi X) xi = 0
inline double cor_nr9b(const StructurePoint& p, const Vec& X) {
  const Vec xi = p.xi();
  Balance b;
  b.add(p.eps1 * p.R(xi, X, xi)).sub(p.phi(p.R(xi, p.phi(X), xi)));
  return b.residual();
}

/// Curvature determined by the Ricci tensor (vanishing Weyl tensor), m >= 4.
inline double conformal_flatness_residual(const StructurePoint& p, const Vec& X, const Vec& Y, const Vec& Z) {
  const double m = p.dim();
  const Mat Q = ricci_op(p);
  const double r = p.geo.scalar;
  Balance b;
  b.add(p.R(X, Y, Z));
  b.sub(p.gm(Y, Z) * (Q * X) / (m - 2))
      .sub(p.Ric(Y, Z) * X / (m - 2))
      .add(p.gm(X, Z) * (Q * Y) / (m - 2))
      .add(p.Ric(X, Z) * Y / (m - 2));
  b.add(r / ((m - 1) * (m - 2)) * (p.gm(Y, Z) * X - p.gm(X, Z) * Y));
  return b.residual();
}

/// Q phi X - phi Q X = eta(Q phi X) xi - eta(X) phi Q xi
inline double cor_ric0(const StructurePoint& p, const Vec& X) {
  const Mat Q = ricci_op(p);
  Balance b;
  b.add(Q * p.phi(X)).sub(p.phi(Q * X));
  b.sub(p.eta(Q * p.phi(X)) * p.xi()).add(p.eta(X) * p.phi(Q * p.xi()));
  return b.residual();
}

/// Ric(X,Y) + eps1 Ric(phi X, phi Y)
///   = eta(X) Ric(Y,xi) + eta(Y) Ric(X,xi) - eta(X) eta(Y) Ric(xi,xi)
inline double cor_ric1(const StructurePoint& p, const Vec& X, const Vec& Y) {
  const Vec xi = p.xi();
  Balance b;
  b.add(p.Ric(X, Y)).add(p.eps1 * p.Ric(p.phi(X), p.phi(Y)));
  b.sub(p.eta(X) * p.Ric(Y, xi)).sub(p.eta(Y) * p.Ric(X, xi)).add(p.eta(X) * p.eta(Y) * p.Ric(xi, xi));
  return b.residual();
}

/// Ric(X,X) + eps1 Ric(phi X, phi X) = 0 for X in ker eta (X is projected first).
inline double cor_ric2(const StructurePoint& p, const Vec& X0) {
  const Vec X = X0 - p.eta(X0) * p.xi();
  Balance b;
  b.add(p.Ric(X, X)).add(p.eps1 * p.Ric(p.phi(X), p.phi(X)));
  return b.residual();
}

// ---------------------------------------------------------------------------
// Check harness

enum class Status { Pass, Fail, Skipped };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    default:
      return "skip";
  }
}

struct CheckOptions {
  int points = 32;
  int vectors = 8;
  std::uint64_t seed = 0;
  double tol = 1e-7;
  DEtaConvention d_eta = DEtaConvention::Half;
  NablaPhiTrace trace = NablaPhiTrace::Norm;
};

struct CheckResult {
  std::string example, suite, id, statement;
  Status status = Status::Skipped;
  double max_residual = 0.0, mean_residual = 0.0;
  int points = 0;
  long evaluations = 0;
  std::string note;  // skip reason, or where the worst residual occurred
  bool equivalence = false;
  double lhs_max = 0.0, rhs_max = 0.0;
};

/// Lazily computed per-example data shared by all checks.
class Context {
 public:
  Context(PCStructure S, CheckOptions opt) : S_(std::move(S)), opt_(opt) {}

  const PCStructure& structure() const { return S_; }
  const CheckOptions& options() const { return opt_; }

  const std::vector<StructurePoint>& points() {
    if (!pts_) pts_ = sample_structure(S_, opt_.points, derive_seed(opt_.seed, S_.name), opt_.d_eta);
    return *pts_;
  }

  /// Empty when the axioms hold at every sampled point.
  const std::string& axiom_error() {
    if (!axioms_checked_) {
      axioms_checked_ = true;
      try {
        check_axioms(S_, points());
      } catch (const AxiomError& e) {
        axiom_error_ = e.what();
      }
    }
    return axiom_error_;
  }
  bool axioms_ok() { return axiom_error().empty(); }

  const StructureClass& cls() {
    if (!cls_) cls_ = classify(S_, points(), opt_.tol);
    return *cls_;
  }

  const ConeManifold& cone() {
    if (!cone_) cone_ = build_cone(S_);
    return *cone_;
  }
  const std::vector<ConePoint>& cone_points() {
    if (!cone_pts_)
      cone_pts_ = sample_cone(cone(), opt_.points, derive_seed(opt_.seed, S_.name + "/cone"), opt_.d_eta);
    return *cone_pts_;
  }

  double constant_curvature_defect() {
    if (!const_curv_) {
      double worst = 0.0;
      for (const auto& p : points()) {
        const int d = p.dim();
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
              for (int e = 0; e < d; ++e)
                worst = std::max(worst, constant_curvature_residual(p, Vec::Unit(d, a), Vec::Unit(d, b),
                                                                    Vec::Unit(d, c), Vec::Unit(d, e)));
      }
      const_curv_ = worst;
    }
    return *const_curv_;
  }

  double conformal_flatness_defect() {
    if (!conf_flat_) {
      double worst = 0.0;
      for (const auto& p : points()) {
        const int d = p.dim();
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b)
            for (int c = 0; c < d; ++c)
              worst = std::max(worst,
                               conformal_flatness_residual(p, Vec::Unit(d, a), Vec::Unit(d, b), Vec::Unit(d, c)));
      }
      conf_flat_ = worst;
    }
    return *conf_flat_;
  }

  /// Largest residual of (nabla~_{JX} J) = delta J nabla~_X J over cone basis pairs.
  double cone_condition_defect(int delta) {
    auto& slot = delta > 0 ? cone_cond_plus_ : cone_cond_minus_;
    if (!slot) {
      double worst = 0.0;
      for (const auto& p : cone_points()) {
        const int D = p.dim();
        for (int a = 0; a < D; ++a)
          for (int b = 0; b < D; ++b)
            worst = std::max(worst, cone_condition_residual(p, delta, Vec::Unit(D, a), Vec::Unit(D, b)));
      }
      slot = worst;
    }
    return *slot;
  }

 private:
  PCStructure S_;
  CheckOptions opt_;
  std::optional<std::vector<StructurePoint>> pts_;
  bool axioms_checked_ = false;
  std::string axiom_error_;
  std::optional<StructureClass> cls_;
  std::optional<ConeManifold> cone_;
  std::optional<std::vector<ConePoint>> cone_pts_;
  std::optional<double> const_curv_, conf_flat_, cone_cond_plus_, cone_cond_minus_;
};

using Tuple = std::vector<Vec>;

/// Runs a residual over every sampled point and vector tuple.
template <class P, class F>
CheckResult run_tuples(const std::vector<P>& pts, const std::vector<std::string>& coords, int arity,
                       const CheckOptions& opt, const std::string& id, F&& f) {
  CheckResult r;
  Rng rng(derive_seed(opt.seed, id));
  double sum = 0.0;
  const Vec* worst_at = nullptr;
  for (const auto& p : pts) {
    for (const auto& t : vector_tuples(p.dim(), arity, arity ? opt.vectors : 0, rng)) {
      const double v = f(p, t);
      sum += v;
      ++r.evaluations;
      if (!(v <= r.max_residual)) {
        r.max_residual = v;
        worst_at = &p.geo.x;
      }
    }
  }
  r.points = static_cast<int>(pts.size());
  r.mean_residual = r.evaluations ? sum / static_cast<double>(r.evaluations) : 0.0;
  r.status = r.max_residual <= opt.tol ? Status::Pass : Status::Fail;
  if (r.status == Status::Fail && worst_at) r.note = "worst at " + describe(*worst_at, coords);
  return r;
}

inline CheckResult skipped(std::string reason) {
  CheckResult r;
  r.status = Status::Skipped;
  r.note = std::move(reason);
  return r;
}

inline CheckResult equivalence(double lhs, double rhs, double tol, int points) {
  CheckResult r;
  r.equivalence = true;
  r.lhs_max = lhs;
  r.rhs_max = rhs;
  r.points = points;
  const bool agree = (lhs < tol) == (rhs < tol);
  r.max_residual = r.mean_residual = agree ? 0.0 : 1.0;
  r.status = agree ? Status::Pass : Status::Fail;
  r.note = std::string(lhs < tol ? "both sides hold" : "both sides fail");
  if (!agree) r.note = std::string("left side ") + (lhs < tol ? "holds" : "fails") + ", right side " +
                       (rhs < tol ? "holds" : "fails");
  return r;
}

struct Identity {
  std::string suite;
  std::string id;
  std::string statement;
  std::function<CheckResult(Context&, const Identity&)> run;
};

namespace detail {

using BaseTupleFn = std::function<double(const StructurePoint&, const Tuple&)>;
using ConeTupleFn = std::function<double(const ConePoint&, const Tuple&)>;
using Gate = std::function<std::optional<std::string>(Context&)>;

inline std::optional<std::string> no_gate(Context&) { return std::nullopt; }

inline std::optional<std::string> contact_gate(Context& c) {
  if (!c.cls().contact_metric) return std::string("not a contact metric structure (d eta != Phi)");
  return std::nullopt;
}

inline std::optional<std::string> normal_gate(Context& c) {
  if (!c.cls().normal) return std::string("structure is not normal (N1 != 0)");
  return std::nullopt;
}

inline Identity base_tuple(std::string suite, std::string id, std::string statement, int arity, BaseTupleFn f,
                           Gate gate = no_gate) {
  return {std::move(suite), std::move(id), std::move(statement),
          [arity, f = std::move(f), gate = std::move(gate)](Context& c, const Identity& self) {
            if (auto reason = gate(c)) return skipped(*reason);
            return run_tuples(c.points(), *c.structure().base.coords, arity, c.options(), self.id, f);
          }};
}

inline Identity base_point(std::string suite, std::string id, std::string statement,
                           std::function<double(const StructurePoint&)> f, Gate gate = no_gate) {
  return base_tuple(std::move(suite), std::move(id), std::move(statement), 0,
                    [f = std::move(f)](const StructurePoint& p, const Tuple&) { return f(p); }, std::move(gate));
}

inline Identity cone_tuple(std::string id, std::string statement, int arity, ConeTupleFn f, Gate gate = no_gate) {
  return {"cone", std::move(id), std::move(statement),
          [arity, f = std::move(f), gate = std::move(gate)](Context& c, const Identity& self) {
            if (auto reason = gate(c)) return skipped(*reason);
            return run_tuples(c.cone_points(), *c.cone().chart.coords, arity, c.options(), self.id, f);
          }};
}

inline Identity cone_point(std::string id, std::string statement, std::function<double(const ConePoint&)> f) {
  return cone_tuple(std::move(id), std::move(statement), 0,
                    [f = std::move(f)](const ConePoint& p, const Tuple&) { return f(p); });
}

template <class P, class F>
double max_over_basis(const std::vector<P>& pts, F&& f) {
  double worst = 0.0;
  for (const auto& p : pts) {
    const int d = p.dim();
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b) worst = std::max(worst, f(p, Vec(Vec::Unit(d, a)), Vec(Vec::Unit(d, b))));
  }
  return worst;
}

template <class P, class F>
double max_over_points(const std::vector<P>& pts, F&& f) {
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, f(p));
  return worst;
}

inline double flat_compare(const TensorValue& a, const TensorValue& b) {
  Balance bal;
  bal.add(Eigen::Map<const Vec>(a.data().data(), static_cast<Eigen::Index>(a.data().size())));
  bal.sub(Eigen::Map<const Vec>(b.data().data(), static_cast<Eigen::Index>(b.data().size())));
  return bal.residual();
}

inline std::string delta_tag(int delta) { return delta > 0 ? "[delta=+1]" : "[delta=-1]"; }

inline std::vector<Identity> axiom_identities() {
  std::vector<Identity> out;
  const std::vector<std::pair<std::string, std::string>> axioms = {
      {"axiom-phi-square", "phi^2 = eps1 (I - eta (x) xi)"},
      {"axiom-eta-xi", "eta(xi) = 1"},
      {"axiom-phi-xi", "phi xi = 0"},
      {"axiom-eta-phi", "eta o phi = 0"},
      {"axiom-metric", "g(phi X, phi Y) = -eps1 (g(X,Y) - eps0 eta(X) eta(Y))"},
      {"axiom-eta-dual", "eta(X) = eps0 g(X, xi)"},
      {"axiom-xi-norm", "g(xi, xi) = eps0"},
      {"axiom-eigenspaces", "phi has n-dimensional +1 and -1 eigenspaces on ker eta"},
  };
  for (const auto& [id, statement] : axioms) {
    out.push_back({"axioms", id, statement, [](Context& c, const Identity& self) {
                     if (self.id == "axiom-eigenspaces" && c.structure().eps1 != 1)
                       return skipped("eigenspace condition applies to paracontact structures only");
                     CheckOptions opt = c.options();
                     opt.tol = 1e-9;  // fixed gate, independent of --tol
                     return run_tuples(c.points(), *c.structure().base.coords, 0, opt, self.id,
                                       [&](const StructurePoint& p, const Tuple&) {
                                         for (const auto& a : axiom_residuals(p))
                                           if (a.id == self.id) return a.residual;
                                         return 0.0;
                                       });
                   }});
  }
  return out;
}

inline std::vector<Identity> geometry_identities() {
  std::vector<Identity> out;
  out.push_back({"geometry", "christoffel-fd", "Christoffel symbols agree with finite differences of the metric",
                 [](Context& c, const Identity& self) {
                   const auto& M = c.structure().base;
                   CheckOptions opt = c.options();
                   opt.tol = std::max(opt.tol, 1e-6);  // central differences with step 1e-5
                   return run_tuples(c.points(), *M.coords, 0, opt, self.id, [&](const StructurePoint& p, const Tuple&) {
                     return flat_compare(p.geo.conn.gamma, christoffel_fd(M, p.geo.x));
                   });
                 }});
  out.push_back(base_point("geometry", "metric-compatibility", "nabla g = 0", [](const StructurePoint& p) {
    const auto ng = covariant_derivative_metric(p.geo.metric, p.geo.conn.gamma);
    double worst = 0.0;
    for (std::size_t k = 0; k < ng.size(); ++k)
      worst = std::max(worst, ng[k].cwiseAbs().maxCoeff() /
                                  std::max(1.0, p.geo.metric.dg[k].cwiseAbs().maxCoeff()));
    return worst;
  }));
  out.push_back(base_point("geometry", "riemann-antisym-xy", "R(X,Y) = -R(Y,X)",
                           [](const StructurePoint& p) { return riemann_antisym_xy(p.geo); }));
  out.push_back(base_point("geometry", "riemann-antisym-zw", "R(X,Y,Z,W) = -R(X,Y,W,Z)",
                           [](const StructurePoint& p) { return riemann_antisym_zw(p.geo); }));
  out.push_back(base_point("geometry", "riemann-pair-symmetry", "R(X,Y,Z,W) = R(Z,W,X,Y)",
                           [](const StructurePoint& p) { return riemann_pair_symmetry(p.geo); }));
  out.push_back(base_point("geometry", "bianchi-first", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0",
                           [](const StructurePoint& p) { return first_bianchi(p.geo); }));
  out.push_back({"geometry", "bianchi-second", "cyclic sum of (nabla_X R)(Y,Z) vanishes",
                 [](Context& c, const Identity& self) {
                   const auto& M = c.structure().base;
                   CheckOptions opt = c.options();
                   opt.tol = std::max(opt.tol, 1e-6);  // finite differences of R
                   const auto& all = c.points();
                   std::vector<StructurePoint> few(all.begin(), all.begin() + std::min<std::size_t>(all.size(), 8));
                   return run_tuples(few, *M.coords, 0, opt, self.id, [&](const StructurePoint& p, const Tuple&) {
                     return second_bianchi(M, p.geo.x);
                   });
                 }});
  out.push_back(base_point("geometry", "ricci-symmetric", "Ric(X,Y) = Ric(Y,X)",
                           [](const StructurePoint& p) { return ricci_symmetry(p.geo); }));
  out.push_back(base_point("geometry", "lie-connection", "Lie derivatives along xi from partials and from nabla agree",
                           [](const StructurePoint& p) {
                             const Mat lphi = lie_derivative_connection(p.phi_m(), p.nabla_phi, p.xi(), p.nabla_xi);
                             const Vec leta = lie_derivative_connection(p.eta_v(), p.nabla_eta, p.xi(), p.nabla_xi);
                             const Mat lg = lie_derivative_connection_metric(p.g(), p.nabla_xi);
                             return std::max({compare(p.N3, lphi), compare(p.N4, leta),
                                              compare(lie_derivative(p.geo.metric, p.xiJ), lg)});
                           }));
  out.push_back(base_point("geometry", "d-squared", "d(d eta) = 0", [](const StructurePoint& p) {
    TensorValue dd = exterior_derivative(exterior_derivative_jet(p.etaJ, p.conv), p.conv);
    double scale = 0.0;
    for (const auto& m : p.etaJ.ddw) scale = std::max(scale, m.cwiseAbs().maxCoeff());
    return dd.max_abs() / std::max(1.0, scale);
  }));
  out.push_back(base_point("geometry", "covariant-leibniz", "d(eta(xi)) = (nabla eta)(xi) + eta(nabla xi)",
                           [](const StructurePoint& p) {
                             const Vec partial = p.etaJ.dw.transpose() * p.xi() + p.xiJ.dv.transpose() * p.eta_v();
                             const Vec cov = p.nabla_eta.transpose() * p.xi() + p.nabla_xi.transpose() * p.eta_v();
                             return compare(partial, cov);
                           }));
  out.push_back(base_point("geometry", "frame-orthonormality", "g(E_i, E_j) = eps_i delta_ij",
                           [](const StructurePoint& p) { return frame_defect(p.frame, p.g()); }));
  return out;
}

inline std::vector<Identity> structure_identities() {
  std::vector<Identity> out;
  out.push_back(base_point("structure", "fundamental-form-antisym", "Phi(X,Y) = -Phi(Y,X)",
                           [](const StructurePoint& p) { return compare(p.Phi, Mat(-p.Phi.transpose())); }));
  out.push_back(base_point("structure", "fundamental-form-xi", "Phi(xi, X) = 0", [](const StructurePoint& p) {
    return compare(Vec(p.Phi.transpose() * p.xi()), Vec::Zero(p.dim()));
  }));
  out.push_back(base_tuple("structure", "nijenhuis-antisym", "N(X,Y) = -N(Y,X)", 2,
                           [](const StructurePoint& p, const Tuple& t) {
                             return compare(p.N(t[0], t[1]), Vec(-p.N(t[1], t[0])));
                           }));
  out.push_back(base_tuple("structure", "nijenhuis-connection",
                           "N(X,Y) = -phi(nabla_X phi)Y + phi(nabla_Y phi)X + (nabla_phiX phi)Y - (nabla_phiY phi)X",
                           2, [](const StructurePoint& p, const Tuple& t) { return nijenhuis_connection(p, t[0], t[1]); }));
  out.push_back({"structure", "normality-criterion",
                 "N1 = 0 iff phi(nabla_X phi)Y - (nabla_phiX phi)Y + eps1 (nabla_X eta)(Y) xi = 0",
                 [](Context& c, const Identity&) {
                   const double rhs = max_over_basis(c.points(), [](const StructurePoint& p, const Vec& X, const Vec& Y) {
                     return normality_criterion_residual(p, X, Y);
                   });
                   return equivalence(c.cls().normality_defect, rhs, c.options().tol, c.options().points);
                 }});
  for (int delta : {1, -1}) {
    out.push_back(base_tuple(
        "structure", "thm-a0" + delta_tag(delta),
        "curvature commutator identity under (nabla_phiX phi)Y = delta phi(nabla_X phi)Y + ...", 3,
        [delta](const StructurePoint& p, const Tuple& t) { return thm_a0(p, delta, t[0], t[1], t[2]); },
        [delta](Context& c) -> std::optional<std::string> {
          if (!c.cls().condition15(delta))
            return "hypothesis (nabla_phiX phi)Y = delta phi(nabla_X phi)Y + ... fails for " + delta_tag(delta);
          return std::nullopt;
        }));
  }
  return out;
}

inline std::vector<Identity> contact_identities() {
  std::vector<Identity> out;
  auto point = [&](std::string id, std::string st, std::function<double(const StructurePoint&)> f) {
    out.push_back(base_point("contact", std::move(id), std::move(st), std::move(f), contact_gate));
  };
  auto tuple = [&](std::string id, std::string st, int arity, BaseTupleFn f) {
    out.push_back(base_tuple("contact", std::move(id), std::move(st), arity, std::move(f), contact_gate));
  };
  point("h-symmetric", "g(hX, Y) = g(X, hY)", [](const StructurePoint& p) {
    const Mat gh = p.g() * p.h;
    return compare(gh, Mat(gh.transpose()));
  });
  point("h-anticommutes", "h phi = -phi h",
        [](const StructurePoint& p) { return compare(p.h * p.phi_m(), Mat(-p.phi_m() * p.h)); });
  point("h-trace", "Tr h = 0", [](const StructurePoint& p) { return compare(p.h.trace(), 0.0); });
  point("h-xi", "h xi = 0", [](const StructurePoint& p) { return compare(Vec(p.h * p.xi()), Vec::Zero(p.dim())); });
  point("eta-h", "eta o h = 0",
        [](const StructurePoint& p) { return compare(Vec(p.h.transpose() * p.eta_v()), Vec::Zero(p.dim())); });
  tuple("nabla-xi", "nabla_X xi = -eps0 phi X + eps1 phi h X", 1,
        [](const StructurePoint& p, const Tuple& t) { return nabla_xi_formula(p, t[0]); });
  tuple("phi-nabla-phi",
        "eps1 (nabla_phiX phi) phiY - (nabla_X phi)Y = 2 eps1 g(X,Y) xi - eps1 eta(Y)(eps0 X - eps1 hX + eps0 eta(X) xi)",
        2, [](const StructurePoint& p, const Tuple& t) { return phi_nabla_phi(p, t[0], t[1]); });
  tuple("nabla-phi-shift",
        "(nabla_phiX phi)Y + phi(nabla_X phi)Y + eps0 eps1 (g(phi(eps0 X + eps1 hX), Y) xi - 2 eta(Y) phiX) = 0", 2,
        [](const StructurePoint& p, const Tuple& t) { return nabla_phi_shift(p, t[0], t[1]); });
  tuple("nijenhuis-contact-form", "N(X,Y) = -2phi(nabla_X phi)Y + 2phi(nabla_Y phi)X + ...", 2,
        [](const StructurePoint& p, const Tuple& t) { return nijenhuis_contact_form(p, t[0], t[1]); });
  point("xi-geodesic", "nabla_xi xi = 0",
        [](const StructurePoint& p) { return compare(p.nxi(p.xi()), Vec::Zero(p.dim())); });
  point("nabla-xi-phi", "nabla_xi phi = 0",
        [](const StructurePoint& p) { return compare(p.nphi_op(p.xi()), Mat::Zero(p.dim(), p.dim())); });
  tuple("cyclic-nabla-Phi", "(nabla_X Phi)(Z,Y) + (nabla_Y Phi)(X,Z) + (nabla_Z Phi)(Y,X) = 0", 3,
        [](const StructurePoint& p, const Tuple& t) { return cyclic_nabla_Phi(p, t[0], t[1], t[2]); });
  tuple("thm-w0", "curvature commutator identity of contact metric structures", 3,
        [](const StructurePoint& p, const Tuple& t) { return thm_w0(p, t[0], t[1], t[2]); });
  tuple("thm-rcw2", "covariant curvature identity with the nabla Phi frame sum", 4,
        [](const StructurePoint& p, const Tuple& t) { return thm_rcw2(p, t[0], t[1], t[2], t[3]); });
  tuple("cor-wn1a", "R(xi,X)xi + eps1 phi R(xi,phiX)xi = 2 phi^2 X - 2 eps1 h^2 X", 1,
        [](const StructurePoint& p, const Tuple& t) { return cor_wn1a(p, t[0]); });
  tuple("cor-wn1b", "curvature along xi in terms of nabla_hX Phi", 3,
        [](const StructurePoint& p, const Tuple& t) { return cor_wn1b(p, t[0], t[1], t[2]); });
  tuple("cor-wn2", "Ric(phiX,phiY) - eps1 Ric(X,Y) + Ric*(X,Y) + Ric*(Y,X) = ...", 2,
        [](const StructurePoint& p, const Tuple& t) { return cor_wn2(p, t[0], t[1]); });
  point("cor-wn3", "Ric(xi,xi) = -eps1 (2n - Tr h^2)", [](const StructurePoint& p) { return cor_wn3(p); });
  out.push_back({"contact", "cor-wn4", "r* + eps1 r + 4n^2 = Tr h^2 + (Tr(nabla phi)^2 - 4n)/2",
                 [](Context& c, const Identity& self) {
                   if (auto reason = contact_gate(c)) return skipped(*reason);
                   const NablaPhiTrace mode = c.options().trace;
                   return run_tuples(c.points(), *c.structure().base.coords, 0, c.options(), self.id,
                                     [mode](const StructurePoint& p, const Tuple&) { return cor_wn4(p, mode); });
                 }});
  out.push_back(base_tuple(
      "contact", "cor-trp", "sum eps_i P(E_i,Z,X) P(E_i,W,Y) = 0 on constant curvature -eps0 eps1", 4,
      [](const StructurePoint& p, const Tuple& t) { return cor_trp(p, t[0], t[1], t[2], t[3]); },
      [](Context& c) -> std::optional<std::string> {
        if (auto reason = contact_gate(c)) return reason;
        if (!(c.constant_curvature_defect() < c.options().tol))
          return std::string("curvature is not constant -eps0 eps1");
        return std::nullopt;
      }));
  out.push_back({"contact", "star-ricci-frame-invariance", "Ric* does not depend on the frame",
                 [](Context& c, const Identity& self) {
                   if (auto reason = contact_gate(c)) return skipped(*reason);
                   Rng rng(derive_seed(c.options().seed, self.id + "/frame"));
                   const int d = c.structure().dim();
                   Mat seed_basis = Mat::Identity(d, d);
                   for (int i = 0; i < d; ++i) seed_basis.col(i) += 0.4 * rng.uniform_vector(d);
                   return run_tuples(c.points(), *c.structure().base.coords, 2, c.options(), self.id,
                                     [&](const StructurePoint& p, const Tuple& t) {
                                       const Frame other = build_frame(p.g(), seed_basis);
                                       return star_ricci_frame_invariance(p, other, t[0], t[1]);
                                     });
                 }});
  return out;
}

inline std::vector<Identity> normal_identities() {
  std::vector<Identity> out;
  auto point = [&](std::string id, std::string st, std::function<double(const StructurePoint&)> f) {
    out.push_back(base_point("normal", std::move(id), std::move(st), std::move(f), normal_gate));
  };
  auto tuple = [&](std::string id, std::string st, int arity, BaseTupleFn f, Gate gate = normal_gate) {
    out.push_back(base_tuple("normal", std::move(id), std::move(st), arity, std::move(f), std::move(gate)));
  };
  point("normal-n2", "N2 = 0", [](const StructurePoint& p) { return compare(p.N2, Mat::Zero(p.dim(), p.dim())); });
  point("normal-n3", "N3 = L_xi phi = 0",
        [](const StructurePoint& p) { return compare(p.N3, Mat::Zero(p.dim(), p.dim())); });
  point("normal-n4", "N4 = L_xi eta = 0", [](const StructurePoint& p) { return compare(p.N4, Vec::Zero(p.dim())); });
  tuple("normal-nabla-phi", "phi(nabla_X phi)Y - (nabla_phiX phi)Y + eps1 (nabla_X eta)(Y) xi = 0", 2,
        [](const StructurePoint& p, const Tuple& t) { return normality_criterion_residual(p, t[0], t[1]); });
  tuple("thm-n3", "[R(Z,phiX),phi]Y + [R(phiZ,X),phi]Y + eps1 [R(phiZ,phiX),phi]phiY + [R(Z,X),phi]phiY = -eta(Y)(...)",
        3, [](const StructurePoint& p, const Tuple& t) { return thm_n3(p, t[0], t[1], t[2]); });
  tuple("thm-opkrzyw", "eight-term curvature identity of normal structures", 3,
        [](const StructurePoint& p, const Tuple& t) { return thm_opkrzyw(p, t[0], t[1], t[2]); });
  tuple("cor-nr9a", "eight-term identity at Z = xi", 2,
        [](const StructurePoint& p, const Tuple& t) { return cor_nr9a(p, t[0], t[1]); });
  tuple("cor-nr9b", "eps1 R(xi,X)xi - phi R(xi,phiX)xi = 0", 1,
        [](const StructurePoint& p, const Tuple& t) { return cor_nr9b(p, t[0]); });
  Gate ricci_gate = [](Context& c) -> std::optional<std::string> {
    if (auto reason = normal_gate(c)) return reason;
    if (c.structure().dim() < 5) return std::string("needs dimension at least 5");
    if (!(c.conformal_flatness_defect() < c.options().tol)) return std::string("metric is not conformally flat");
    return std::nullopt;
  };
  tuple("cor-ric0", "Q phi X - phi Q X = eta(Q phi X) xi - eta(X) phi Q xi", 1,
        [](const StructurePoint& p, const Tuple& t) { return cor_ric0(p, t[0]); }, ricci_gate);
  tuple("cor-ric1", "Ric(X,Y) + eps1 Ric(phiX,phiY) = eta(X)Ric(Y,xi) + eta(Y)Ric(X,xi) - eta(X)eta(Y)Ric(xi,xi)", 2,
        [](const StructurePoint& p, const Tuple& t) { return cor_ric1(p, t[0], t[1]); }, ricci_gate);
  tuple("cor-ric2", "Ric(X,X) + eps1 Ric(phiX,phiX) = 0 for X in ker eta", 1,
        [](const StructurePoint& p, const Tuple& t) { return cor_ric2(p, t[0]); }, ricci_gate);
  return out;
}

inline std::vector<Identity> cone_identities() {
  std::vector<Identity> out;
  out.push_back(cone_point("cone-metric-block", "g~ = -eps0 eps1 dt^2 + t^2 g", cone_metric_block));
  out.push_back(cone_point("cone-J-square", "J^2 = eps1 I", cone_J_square));
  out.push_back(cone_point("cone-J-hermitian", "g~(JX, JY) = -eps1 g~(X,Y)", cone_J_hermitian));
  out.push_back(cone_tuple("cone-J-definition", "J d_t = -(eps0/t) xi, JX = phi X - eps0 eps1 t eta(X) d_t", 1,
                           [](const ConePoint& p, const Tuple& t) { return cone_J_definition(p, t[0]); }));
  out.push_back(cone_point("cone-omega", "Omega = t^2 Phi - 2t eta ^ dt", cone_omega));
  out.push_back(cone_point("cone-omega-d", "d Omega = t^2 d Phi + 2t dt ^ (Phi - d eta)", cone_omega_derivative));
  out.push_back(cone_tuple("cone-connection", "Levi-Civita connection of the cone", 2,
                           [](const ConePoint& p, const Tuple& t) { return cone_connection(p, t[0], t[1]); }));
  out.push_back(cone_tuple("cone-nabla-J", "nabla~ J in terms of the base structure", 2,
                           [](const ConePoint& p, const Tuple& t) { return cone_nabla_J(p, t[0], t[1]); }));
  out.push_back(cone_tuple("cone-curvature", "R~(X,Y)Z = R(X,Y)Z + eps0 eps1 (g(Y,Z)X - g(X,Z)Y), d_t flat", 3,
                           [](const ConePoint& p, const Tuple& t) { return cone_curvature(p, t[0], t[1], t[2]); }));
  out.push_back(cone_tuple("cone-curvature-J", "R~(X,Y) applied to J d_t and JZ", 3,
                           [](const ConePoint& p, const Tuple& t) { return cone_curvature_J(p, t[0], t[1], t[2]); }));
  out.push_back(cone_tuple("cone-nijenhuis", "N~ = N1 - eps0 eps1 t N2 d_t, N~(d_t,Y) = -(eps0/t) N3 Y + eps1 N4(Y) d_t",
                           2, [](const ConePoint& p, const Tuple& t) { return cone_nijenhuis(p, t[0], t[1]); }));
  out.push_back(cone_tuple("cone-nijenhuis-antisym", "N~(X,Y) = -N~(Y,X)", 2,
                           [](const ConePoint& p, const Tuple& t) { return cone_nijenhuis_antisym(p, t[0], t[1]); }));
  out.push_back({"cone", "prop-kaehler", "nabla~ J = 0 iff the base is (para-)Sasakian",
                 [](Context& c, const Identity&) {
                   const double lhs = max_over_points(c.cone_points(), cone_nabla_J_size);
                   return equivalence(lhs, c.cls().sasakian_defect, c.options().tol, c.options().points);
                 }});
  out.push_back({"cone", "prop-almost-kaehler", "d Omega = 0 iff the base is contact metric",
                 [](Context& c, const Identity&) {
                   const double lhs = max_over_points(c.cone_points(), cone_omega_closedness);
                   return equivalence(lhs, c.cls().contact_defect, c.options().tol, c.options().points);
                 }});
  for (int delta : {1, -1}) {
    out.push_back({"cone", "prop-condition" + delta_tag(delta),
                   "nabla~_JX J = delta J nabla~_X J iff the base condition holds for delta",
                   [delta](Context& c, const Identity&) {
                     const double rhs = delta > 0 ? c.cls().condition15_plus_defect : c.cls().condition15_minus_defect;
                     return equivalence(c.cone_condition_defect(delta), rhs, c.options().tol, c.options().points);
                   }});
    out.push_back(cone_tuple(
        "thm-gray" + delta_tag(delta), "(nabla~_{N~(X,Y)} J)V in terms of [R~, J] commutators", 3,
        [delta](const ConePoint& p, const Tuple& t) { return gray_residual(p, delta, t[0], t[1], t[2]); },
        [delta](Context& c) -> std::optional<std::string> {
          if (!(c.cone_condition_defect(delta) <= 1e-8))
            return "hypothesis nabla~_JX J = delta J nabla~_X J fails for " + delta_tag(delta);
          return std::nullopt;
        }));
  }
  return out;
}

}  // namespace detail

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"axioms", "geometry", "structure", "contact", "normal", "cone"};
  return names;
}

inline const std::vector<Identity>& identity_registry() {
  static const std::vector<Identity> all = [] {
    std::vector<Identity> v;
    for (auto part : {detail::axiom_identities(), detail::geometry_identities(), detail::structure_identities(),
                      detail::contact_identities(), detail::normal_identities(), detail::cone_identities()})
      v.insert(v.end(), part.begin(), part.end());
    return v;
  }();
  return all;
}

inline const Identity& find_identity(const std::string& id) {
  for (const auto& i : identity_registry())
    if (i.id == id) return i;
  throw std::invalid_argument("unknown identity '" + id + "'");
}

/// Runs one identity.  Non-axiom rows are skipped when an axiom fails.
inline CheckResult run_identity(Context& c, const Identity& ident) {
  CheckResult r;
  if (ident.suite != "axioms" && !c.axioms_ok()) {
    r = skipped("axioms failed");
  } else {
    r = ident.run(c, ident);
  }
  r.example = c.structure().name;
  r.suite = ident.suite;
  r.id = ident.id;
  r.statement = ident.statement;
  return r;
}

inline std::vector<CheckResult> run_suites(Context& c, const std::vector<std::string>& suites) {
  std::vector<CheckResult> out;
  for (const auto& ident : identity_registry())
    if (std::find(suites.begin(), suites.end(), ident.suite) != suites.end()) out.push_back(run_identity(c, ident));
  return out;
}

}  // namespace pcm
