#pragma once

// Chart-level differential geometry.
//
// Conventions:
//   R(X,Y) = [nabla_X, nabla_Y] - nabla_[X,Y], components R(l,k,i,j) with
//   R(d_i, d_j) d_k = R(l,k,i,j) d_l;  R(X,Y,Z,W) = g(R(X,Y)Z, W);
//   Ric(X,Y) = Tr(Z -> R(Z,X)Y);  r = g^{jk} Ric_jk.
//   One-forms: (dw)_ij = c (d_i w_j - d_j w_i) with c = 1/2 by default.
//   Two-forms: (dw)_abc = c (d_a w_bc + d_b w_ca + d_c w_ab) with c = 1/3.
//   a ^ b = (a (x) b - b (x) a) / 2, matching the default derivative.

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "pcm/expr.hpp"
#include "pcm/jet.hpp"
#include "pcm/tensor.hpp"

namespace pcm {

using VectorField = std::vector<Expression>;
using OneForm = std::vector<Expression>;
using EndoField = std::vector<std::vector<Expression>>;  // [i][j]: i-th component of phi d_j

enum class DEtaConvention { Half, One };

inline const char* to_string(DEtaConvention c) { return c == DEtaConvention::Half ? "half" : "one"; }

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

class SampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ChartManifold {
  std::string name;
  std::shared_ptr<const std::vector<std::string>> coords;
  std::vector<std::vector<Expression>> metric;
  std::vector<Interval> sample_box;
  std::vector<Expression> exclude;
  // Optional: chart point as a function of box parameters (same names as the
  // coordinates).  Empty means the box is sampled directly.
  std::vector<Expression> sample_map;

  int dim() const { return static_cast<int>(coords->size()); }

  Vec chart_point(const Vec& params) const {
    if (sample_map.empty()) return params;
    Vec x(dim());
    for (int i = 0; i < dim(); ++i) x[i] = eval_value(sample_map[i], params);
    return x;
  }

  /// Throws when the metric is not symmetric as written.
  void validate() const {
    if (static_cast<int>(metric.size()) != dim()) throw std::invalid_argument("metric has wrong row count");
    for (const auto& row : metric)
      if (static_cast<int>(row.size()) != dim()) throw std::invalid_argument("metric has wrong column count");
    for (int i = 0; i < dim(); ++i)
      for (int j = i + 1; j < dim(); ++j)
        if (to_string(metric[i][j]) != to_string(metric[j][i]))
          throw std::invalid_argument("metric is not symmetric: g " + std::to_string(i) + " " +
                                      std::to_string(j) + " differs from g " + std::to_string(j) + " " +
                                      std::to_string(i));
    if (static_cast<int>(sample_box.size()) != dim()) throw std::invalid_argument("sample box has wrong size");
  }
};

// ---------------------------------------------------------------------------
// Jets of fields at a point.

struct MetricJet {
  Mat g;
  std::vector<Mat> dg;                // dg[k](i,j) = d_k g_ij
  std::vector<std::vector<Mat>> ddg;  // ddg[k][l](i,j)
};

struct VectorJet {
  Vec v;
  Mat dv;  // dv(i,k) = d_k v^i
};

struct FormJet {
  Vec w;
  Mat dw;               // dw(j,k) = d_k w_j
  std::vector<Mat> ddw;  // ddw[j](k,l) = d_k d_l w_j
};

struct EndoJet {
  Mat a;
  std::vector<Mat> da;  // da[k](i,j) = d_k a^i_j
};

struct TwoFormJet {
  Mat w;
  std::vector<Mat> dw;  // dw[k](i,j) = d_k w_ij
};

inline MetricJet metric_jet(const ChartManifold& M, const Vec& x) {
  const int n = M.dim();
  MetricJet j;
  j.g = Mat::Zero(n, n);
  j.dg.assign(n, Mat::Zero(n, n));
  j.ddg.assign(n, std::vector<Mat>(n, Mat::Zero(n, n)));
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      Jet2 e = eval_jet2(M.metric[a][b], x);
      j.g(a, b) = j.g(b, a) = e.value;
      for (int k = 0; k < n; ++k) {
        j.dg[k](a, b) = j.dg[k](b, a) = e.grad[k];
        for (int l = 0; l < n; ++l) j.ddg[k][l](a, b) = j.ddg[k][l](b, a) = e.hess(k, l);
      }
    }
  return j;
}

inline VectorJet vector_jet(const VectorField& f, const Vec& x) {
  const int n = static_cast<int>(x.size());
  VectorJet j{Vec::Zero(n), Mat::Zero(n, n)};
  for (int i = 0; i < n; ++i) {
    Jet2 e = eval_jet2(f[i], x);
    j.v[i] = e.value;
    j.dv.row(i) = e.grad.transpose();
  }
  return j;
}

inline FormJet form_jet(const OneForm& f, const Vec& x) {
  const int n = static_cast<int>(x.size());
  FormJet j{Vec::Zero(n), Mat::Zero(n, n), {}};
  for (int i = 0; i < n; ++i) {
    Jet2 e = eval_jet2(f[i], x);
    j.w[i] = e.value;
    j.dw.row(i) = e.grad.transpose();
    j.ddw.push_back(e.hessian());
  }
  return j;
}

inline EndoJet endo_jet(const EndoField& f, const Vec& x) {
  const int n = static_cast<int>(x.size());
  EndoJet j{Mat::Zero(n, n), std::vector<Mat>(n, Mat::Zero(n, n))};
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      Jet2 e = eval_jet2(f[i][k], x);
      j.a(i, k) = e.value;
      for (int m = 0; m < n; ++m) j.da[m](i, k) = e.grad[m];
    }
  return j;
}

// ---------------------------------------------------------------------------
// Levi-Civita connection and curvature.

struct Connection {
  Mat g, ginv;
  TensorValue gamma;   // (k,i,j) = Gamma^k_ij
  TensorValue dgamma;  // (k,i,j,m) = d_m Gamma^k_ij
  int dim() const { return static_cast<int>(g.rows()); }
};

inline Connection levi_civita(const MetricJet& mj) {
  const int n = static_cast<int>(mj.g.rows());
  require_nonsingular(mj.g);
  Connection c;
  c.g = mj.g;
  c.ginv = mj.g.inverse();
  c.gamma = TensorValue(n, {Variance::Upper, Variance::Lower, Variance::Lower});
  c.dgamma = TensorValue(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
  // Christoffel symbols of the first kind and their derivatives.
  TensorValue first(n, {Variance::Lower, Variance::Lower, Variance::Lower});
  TensorValue dfirst(n, {Variance::Lower, Variance::Lower, Variance::Lower, Variance::Lower});
  for (int l = 0; l < n; ++l)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        first(l, i, j) = 0.5 * (mj.dg[i](j, l) + mj.dg[j](i, l) - mj.dg[l](i, j));
        for (int m = 0; m < n; ++m)
          dfirst(l, i, j, m) = 0.5 * (mj.ddg[m][i](j, l) + mj.ddg[m][j](i, l) - mj.ddg[m][l](i, j));
      }
  std::vector<Mat> dginv(n);
  for (int m = 0; m < n; ++m) dginv[m] = -c.ginv * mj.dg[m] * c.ginv;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += c.ginv(k, l) * first(l, i, j);
        c.gamma(k, i, j) = s;
        for (int m = 0; m < n; ++m) {
          double ds = 0.0;
          for (int l = 0; l < n; ++l) ds += dginv[m](k, l) * first(l, i, j) + c.ginv(k, l) * dfirst(l, i, j, m);
          c.dgamma(k, i, j, m) = ds;
        }
      }
  return c;
}

inline TensorValue christoffel_from_derivatives(const Mat& g, const std::vector<Mat>& dg) {
  const int n = static_cast<int>(g.rows());
  require_nonsingular(g);
  Mat ginv = g.inverse();
  TensorValue gam(n, {Variance::Upper, Variance::Lower, Variance::Lower});
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int l = 0; l < n; ++l) s += ginv(k, l) * 0.5 * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gam(k, i, j) = s;
      }
  return gam;
}

inline Mat metric_value(const ChartManifold& M, const Vec& x) {
  const int n = M.dim();
  Mat g(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) g(a, b) = g(b, a) = eval_value(M.metric[a][b], x);
  return g;
}

inline TensorValue christoffel(const ChartManifold& M, const Vec& x) {
  return levi_civita(metric_jet(M, x)).gamma;
}

/// Christoffel symbols from central differences of metric values.
inline TensorValue christoffel_fd(const ChartManifold& M, const Vec& x, double h = 1e-5) {
  const int n = M.dim();
  std::vector<Mat> dg(n);
  for (int k = 0; k < n; ++k) {
    Vec xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    dg[k] = (metric_value(M, xp) - metric_value(M, xm)) / (2 * h);
  }
  return christoffel_from_derivatives(metric_value(M, x), dg);
}

inline TensorValue riemann(const Connection& c) {
  const int n = c.dim();
  TensorValue R(n, {Variance::Upper, Variance::Lower, Variance::Lower, Variance::Lower});
  for (int l = 0; l < n; ++l)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double s = c.dgamma(l, j, k, i) - c.dgamma(l, i, k, j);
          for (int m = 0; m < n; ++m) s += c.gamma(l, i, m) * c.gamma(m, j, k) - c.gamma(l, j, m) * c.gamma(m, i, k);
          R(l, k, i, j) = s;
        }
  return R;
}

/// R4(a,b,c,d) = R(d_a, d_b, d_c, d_d) = g(R(d_a,d_b)d_c, d_d)
inline TensorValue lower_riemann(const TensorValue& R, const Mat& g) {
  const int n = R.dim();
  TensorValue R4(n, std::vector<Variance>(4, Variance::Lower));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) s += R(l, c, a, b) * g(l, d);
          R4(a, b, c, d) = s;
        }
  return R4;
}

/// Ric(X,Y) = Tr(Z -> R(Z,X)Y):  Ric(j,k) = sum_i R(i,k,i,j)
inline Mat ricci(const TensorValue& R) {
  const int n = R.dim();
  Mat ric = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) ric(j, k) += R(i, k, i, j);
  return ric;
}

/// Q with g(QX, Y) = Ric(X, Y).
inline Mat ricci_operator(const Mat& ric, const Mat& ginv) { return ginv * ric.transpose(); }

inline double scalar_curvature(const Mat& ric, const Mat& ginv) { return (ginv.cwiseProduct(ric)).sum(); }

/// All curvature data at one chart point.
struct PointGeometry {
  Vec x;
  MetricJet metric;
  Connection conn;
  TensorValue R;   // (l,k,i,j)
  TensorValue R4;  // (a,b,c,d)
  Mat ric;
  double scalar = 0.0;

  int dim() const { return static_cast<int>(x.size()); }
  const Mat& g() const { return conn.g; }
  const Mat& ginv() const { return conn.ginv; }

  /// R(X,Y)Z
  Vec curvature(const Vec& X, const Vec& Y, const Vec& Z) const {
    const int n = dim();
    Vec out = Vec::Zero(n);
    const double* p = R.data().data();
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k) {
        if (Z[k] == 0.0) {
          p += n * n;
          continue;
        }
        double s = 0.0;
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) s += p[i * n + j] * X[i] * Y[j];
        out[l] += s * Z[k];
        p += n * n;
      }
    return out;
  }

  /// R(X,Y,Z,W)
  double curvature(const Vec& X, const Vec& Y, const Vec& Z, const Vec& W) const {
    return curvature(X, Y, Z).dot(g() * W);
  }

  double ricci(const Vec& X, const Vec& Y) const { return X.dot(ric * Y); }
};

inline PointGeometry point_geometry(const ChartManifold& M, const Vec& x) {
  PointGeometry p;
  p.x = x;
  p.metric = metric_jet(M, x);
  p.conn = levi_civita(p.metric);
  p.R = riemann(p.conn);
  p.R4 = lower_riemann(p.R, p.conn.g);
  p.ric = ricci(p.R);
  p.scalar = scalar_curvature(p.ric, p.conn.ginv);
  return p;
}

// ---------------------------------------------------------------------------
// Covariant, Lie and exterior derivatives.

/// D(i,k) = (nabla_k v)^i
inline Mat covariant_derivative(const VectorJet& v, const TensorValue& gamma) {
  const int n = static_cast<int>(v.v.size());
  Mat D = v.dv;
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m) D(i, k) += gamma(i, k, m) * v.v[m];
  return D;
}

/// D(j,k) = (nabla_k w)_j
inline Mat covariant_derivative(const FormJet& w, const TensorValue& gamma) {
  const int n = static_cast<int>(w.w.size());
  Mat D = w.dw;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int m = 0; m < n; ++m) D(j, k) -= gamma(m, k, j) * w.w[m];
  return D;
}

/// D[k](i,j) = (nabla_k A)^i_j
inline std::vector<Mat> covariant_derivative(const EndoJet& A, const TensorValue& gamma) {
  const int n = static_cast<int>(A.a.rows());
  std::vector<Mat> D = A.da;
  for (int k = 0; k < n; ++k) {
    Mat Gk(n, n);  // Gk(i,m) = Gamma^i_km
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m) Gk(i, m) = gamma(i, k, m);
    D[k] += Gk * A.a - A.a * Gk;
  }
  return D;
}

/// (nabla_k g)_ij, which vanishes for the Levi-Civita connection.
inline std::vector<Mat> covariant_derivative_metric(const MetricJet& mj, const TensorValue& gamma) {
  const int n = static_cast<int>(mj.g.rows());
  std::vector<Mat> D = mj.dg;
  for (int k = 0; k < n; ++k) {
    Mat Gk(n, n);
    for (int i = 0; i < n; ++i)
      for (int m = 0; m < n; ++m) Gk(i, m) = gamma(i, k, m);
    D[k] -= Gk.transpose() * mj.g + mj.g * Gk;
  }
  return D;
}

/// Contracts D[k] with a direction: (nabla_X A) = sum_k X^k D[k].
inline Mat along(const std::vector<Mat>& D, const Vec& X) {
  Mat out = Mat::Zero(D.front().rows(), D.front().cols());
  for (int k = 0; k < X.size(); ++k)
    if (X[k] != 0.0) out += X[k] * D[k];
  return out;
}

inline Mat lie_derivative(const EndoJet& A, const VectorJet& V) {
  const int n = static_cast<int>(A.a.rows());
  Mat L = along(A.da, V.v);
  L += -V.dv * A.a + A.a * V.dv;
  (void)n;
  return L;
}

inline Vec lie_derivative(const FormJet& w, const VectorJet& V) {
  return w.dw * V.v + V.dv.transpose() * w.w;
}

inline Mat lie_derivative(const MetricJet& g, const VectorJet& V) {
  return along(g.dg, V.v) + V.dv.transpose() * g.g + g.g * V.dv;
}

/// Same Lie derivatives with partial derivatives replaced by nabla.
inline Mat lie_derivative_connection(const Mat& A, const std::vector<Mat>& nablaA, const Vec& V, const Mat& nablaV) {
  return along(nablaA, V) - nablaV * A + A * nablaV;
}
inline Vec lie_derivative_connection(const Vec& w, const Mat& nablaW, const Vec& V, const Mat& nablaV) {
  return nablaW * V + nablaV.transpose() * w;
}
inline Mat lie_derivative_connection_metric(const Mat& g, const Mat& nablaV) {
  return nablaV.transpose() * g + g * nablaV;
}

inline double d1_factor(DEtaConvention c) { return c == DEtaConvention::Half ? 0.5 : 1.0; }
inline double d2_factor(DEtaConvention c) { return c == DEtaConvention::Half ? 1.0 / 3.0 : 1.0; }

/// (dw)_ij
inline Mat exterior_derivative(const FormJet& w, DEtaConvention c = DEtaConvention::Half) {
  // dw(j,k) = d_k w_j, so d_i w_j = dw(j,i)
  return d1_factor(c) * (w.dw.transpose() - w.dw);
}

/// dw of a one-form as a two-form jet (value and first derivatives).
inline TwoFormJet exterior_derivative_jet(const FormJet& w, DEtaConvention c = DEtaConvention::Half) {
  const int n = static_cast<int>(w.w.size());
  TwoFormJet out{exterior_derivative(w, c), std::vector<Mat>(n, Mat::Zero(n, n))};
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) out.dw[k](i, j) = d1_factor(c) * (w.ddw[j](k, i) - w.ddw[i](k, j));
  return out;
}

/// (dw)_abc of a two-form.
inline TensorValue exterior_derivative(const TwoFormJet& w, DEtaConvention c = DEtaConvention::Half) {
  const int n = static_cast<int>(w.w.rows());
  TensorValue out(n, std::vector<Variance>(3, Variance::Lower));
  const double f = d2_factor(c);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int d = 0; d < n; ++d) out(a, b, d) = f * (w.dw[a](b, d) + w.dw[b](d, a) + w.dw[d](a, b));
  return out;
}

inline Mat wedge(const Vec& a, const Vec& b) { return 0.5 * (a * b.transpose() - b * a.transpose()); }

/// a ^ w for a one-form a and a two-form w.
inline TensorValue wedge(const Vec& a, const Mat& w) {
  const int n = static_cast<int>(a.size());
  TensorValue out(n, std::vector<Variance>(3, Variance::Lower));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out(i, j, k) = (a[i] * w(j, k) + a[j] * w(k, i) + a[k] * w(i, j)) / 3.0;
  return out;
}

// ---------------------------------------------------------------------------
// Curvature consistency checks, normalized by max(1, largest term).

inline double relative(double diff, double scale) { return diff / std::max(1.0, scale); }

inline double riemann_antisym_xy(const PointGeometry& p) {
  return relative(symmetry_residual(p.R4, 0, 1, -1.0), p.R4.max_abs());
}
inline double riemann_antisym_zw(const PointGeometry& p) {
  return relative(symmetry_residual(p.R4, 2, 3, -1.0), p.R4.max_abs());
}
inline double riemann_pair_symmetry(const PointGeometry& p) {
  const int n = p.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) worst = std::max(worst, std::fabs(p.R4(a, b, c, d) - p.R4(c, d, a, b)));
  return relative(worst, p.R4.max_abs());
}
inline double first_bianchi(const PointGeometry& p) {
  const int n = p.dim();
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          worst = std::max(worst, std::fabs(p.R4(a, b, c, d) + p.R4(b, c, a, d) + p.R4(c, a, b, d)));
  return relative(worst, p.R4.max_abs());
}
inline double ricci_symmetry(const PointGeometry& p) {
  return relative((p.ric - p.ric.transpose()).cwiseAbs().maxCoeff(), p.ric.cwiseAbs().maxCoeff());
}

/// Cyclic sum of nabla R with nabla R from central differences of R.
inline double second_bianchi(const ChartManifold& M, const Vec& x, double h = 1e-4) {
  const int n = M.dim();
  PointGeometry p = point_geometry(M, x);
  std::vector<TensorValue> dR;
  for (int m = 0; m < n; ++m) {
    Vec xp = x, xm = x;
    xp[m] += h;
    xm[m] -= h;
    TensorValue d = riemann(levi_civita(metric_jet(M, xp))) - riemann(levi_civita(metric_jet(M, xm)));
    d *= 1.0 / (2 * h);
    dR.push_back(std::move(d));
  }
  const auto& G = p.conn.gamma;
  const auto& R = p.R;
  TensorValue nR(n, std::vector<Variance>(5, Variance::Lower));  // (m,l,k,i,j)
  for (int m = 0; m < n; ++m)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            double s = dR[m](l, k, i, j);
            for (int q = 0; q < n; ++q)
              s += G(l, m, q) * R(q, k, i, j) - G(q, m, k) * R(l, q, i, j) - G(q, m, i) * R(l, k, q, j) -
                   G(q, m, j) * R(l, k, i, q);
            nR(m, l, k, i, j) = s;
          }
  double worst = 0.0;
  for (int m = 0; m < n; ++m)
    for (int l = 0; l < n; ++l)
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            worst = std::max(worst, std::fabs(nR(m, l, k, i, j) + nR(i, l, k, j, m) + nR(j, l, k, m, i)));
  return relative(worst, nR.max_abs());
}

}  // namespace pcm
