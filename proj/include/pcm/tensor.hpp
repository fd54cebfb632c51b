#pragma once

// Dense tensors at a point and pseudo-orthonormal frames.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pcm/jet.hpp"

namespace pcm {

enum class Variance { Upper, Lower };

class TensorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SingularMetric : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TensorValue {
 public:
  TensorValue() = default;
  TensorValue(int dim, std::vector<Variance> variance)
      : dim_(dim), variance_(std::move(variance)), data_(ipow(dim, static_cast<int>(variance_.size())), 0.0) {}

  static TensorValue from_matrix(const Mat& m, Variance a, Variance b) {
    TensorValue t(static_cast<int>(m.rows()), {a, b});
    for (int i = 0; i < t.dim_; ++i)
      for (int j = 0; j < t.dim_; ++j) t(i, j) = m(i, j);
    return t;
  }
  static TensorValue from_vector(const Vec& v, Variance a) {
    TensorValue t(static_cast<int>(v.size()), {a});
    for (int i = 0; i < t.dim_; ++i) t(i) = v[i];
    return t;
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(variance_.size()); }
  const std::vector<Variance>& variance() const { return variance_; }
  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  template <class... I>
  double& operator()(I... idx) {
    return data_[offset({static_cast<int>(idx)...})];
  }
  template <class... I>
  double operator()(I... idx) const {
    return data_[offset({static_cast<int>(idx)...})];
  }
  double& at(const std::vector<int>& idx) { return data_[offset(idx)]; }
  double at(const std::vector<int>& idx) const { return data_[offset(idx)]; }

  Mat to_matrix() const {
    if (rank() != 2) throw TensorError("to_matrix: tensor is not of rank 2");
    Mat m(dim_, dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) m(i, j) = (*this)(i, j);
    return m;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : data_) m = std::max(m, std::fabs(v));
    return m;
  }

  TensorValue& operator+=(const TensorValue& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  TensorValue& operator-=(const TensorValue& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  TensorValue& operator*=(double c) {
    for (double& v : data_) v *= c;
    return *this;
  }
  friend TensorValue operator+(TensorValue a, const TensorValue& b) { return a += b; }
  friend TensorValue operator-(TensorValue a, const TensorValue& b) { return a -= b; }
  friend TensorValue operator*(double c, TensorValue a) { return a *= c; }

  /// Iterates over every multi-index in row-major order.
  template <class F>
  void for_each_index(F&& f) const {
    std::vector<int> idx(variance_.size(), 0);
    for (std::size_t flat = 0; flat < data_.size(); ++flat) {
      f(idx);
      for (int s = rank() - 1; s >= 0; --s) {
        if (++idx[s] < dim_) break;
        idx[s] = 0;
      }
    }
  }

 private:
  static std::size_t ipow(int b, int e) {
    std::size_t r = 1;
    for (int i = 0; i < e; ++i) r *= static_cast<std::size_t>(b);
    return r;
  }

  std::size_t offset(std::initializer_list<int> idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return o;
  }
  std::size_t offset(const std::vector<int>& idx) const {
    std::size_t o = 0;
    for (int i : idx) o = o * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(i);
    return o;
  }

  void check_same_shape(const TensorValue& o) const {
    if (dim_ != o.dim_ || variance_ != o.variance_) throw TensorError("tensor shape mismatch");
  }

  int dim_ = 0;
  std::vector<Variance> variance_;
  std::vector<double> data_;
};

inline void require_nonsingular(const Mat& g, double threshold = 1e-12) {
  double det = g.determinant();
  if (!(std::fabs(det) >= threshold))
    throw SingularMetric("singular metric: |det g| = " + std::to_string(std::fabs(det)));
}

/// Flips the variance of one slot using g (lowering) or g^{-1} (raising).
inline TensorValue raise_lower(const TensorValue& t, int slot, const Mat& g, const Mat& g_inv) {
  if (slot < 0 || slot >= t.rank()) throw TensorError("raise_lower: slot out of range");
  require_nonsingular(g);
  auto var = t.variance();
  const bool lowering = var[slot] == Variance::Upper;
  var[slot] = lowering ? Variance::Lower : Variance::Upper;
  const Mat& m = lowering ? g : g_inv;
  TensorValue out(t.dim(), var);
  out.for_each_index([&](const std::vector<int>& idx) {
    std::vector<int> src = idx;
    double s = 0.0;
    for (int k = 0; k < t.dim(); ++k) {
      src[slot] = k;
      s += m(idx[slot], k) * t.at(src);
    }
    out.at(idx) = s;
  });
  return out;
}

/// Contracts an upper slot against a lower slot.
inline TensorValue contract(const TensorValue& t, int a, int b) {
  if (a == b || a < 0 || b < 0 || a >= t.rank() || b >= t.rank())
    throw TensorError("contract: invalid slots");
  if (t.variance()[a] == t.variance()[b]) throw TensorError("contract: variance mismatch");
  std::vector<Variance> var;
  for (int s = 0; s < t.rank(); ++s)
    if (s != a && s != b) var.push_back(t.variance()[s]);
  TensorValue out(t.dim(), var);
  std::vector<int> src(t.rank());
  out.for_each_index([&](const std::vector<int>& idx) {
    int k = 0;
    for (int s = 0; s < t.rank(); ++s)
      if (s != a && s != b) src[s] = idx[k++];
    double sum = 0.0;
    for (int i = 0; i < t.dim(); ++i) {
      src[a] = i;
      src[b] = i;
      sum += t.at(src);
    }
    out.at(idx) = sum;
  });
  return out;
}

inline double symmetry_residual(const TensorValue& t, int a, int b, double sign) {
  double worst = 0.0;
  t.for_each_index([&](const std::vector<int>& idx) {
    std::vector<int> sw = idx;
    std::swap(sw[a], sw[b]);
    worst = std::max(worst, std::fabs(t.at(idx) - sign * t.at(sw)));
  });
  return worst;
}

inline bool is_symmetric(const TensorValue& t, int a, int b, double tol) {
  return symmetry_residual(t, a, b, 1.0) <= tol;
}
inline bool is_antisymmetric(const TensorValue& t, int a, int b, double tol) {
  return symmetry_residual(t, a, b, -1.0) <= tol;
}

// ---------------------------------------------------------------------------

class FrameError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Frame {
  Mat vectors;             // columns E_i
  std::vector<int> signs;  // g(E_i, E_i)

  int size() const { return static_cast<int>(signs.size()); }
  Vec operator[](int i) const { return vectors.col(i); }

  /// Sum over i of eps_i * f(E_i, E_i).
  template <class F>
  double trace(F&& f) const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += signs[i] * f(vectors.col(i), vectors.col(i));
    return s;
  }
};

inline int negative_eigenvalue_count(const Mat& g) {
  Eigen::SelfAdjointEigenSolver<Mat> es(g, Eigen::EigenvaluesOnly);
  int n = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    if (es.eigenvalues()[i] < 0) ++n;
  return n;
}

/// Pivoted modified Gram-Schmidt for an indefinite inner product.  At each
/// step the remaining seed vector of largest |g(v,v)| is normalized.
inline Frame build_frame(const Mat& g, const Mat& seed_basis, double degenerate = 1e-10) {
  const int n = static_cast<int>(g.rows());
  std::vector<Vec> remaining;
  for (int j = 0; j < seed_basis.cols(); ++j) remaining.push_back(seed_basis.col(j));
  Frame f;
  f.vectors.resize(n, n);
  for (int step = 0; step < n; ++step) {
    int best = -1;
    double best_norm = 0.0;
    for (int k = 0; k < static_cast<int>(remaining.size()); ++k) {
      double q = std::fabs(remaining[k].dot(g * remaining[k]));
      if (q > best_norm) {
        best_norm = q;
        best = k;
      }
    }
    if (best < 0 || best_norm < degenerate)
      throw FrameError("frame construction degenerated at step " + std::to_string(step));
    Vec e = remaining[best];
    double q = e.dot(g * e);
    int sign = q < 0 ? -1 : 1;
    e /= std::sqrt(std::fabs(q));
    remaining.erase(remaining.begin() + best);
    Vec ge = g * e;
    for (Vec& v : remaining) v -= sign * ge.dot(v) * e;
    f.vectors.col(step) = e;
    f.signs.push_back(sign);
  }
  int negatives = static_cast<int>(std::count(f.signs.begin(), f.signs.end(), -1));
  if (negatives != negative_eigenvalue_count(g))
    throw FrameError("frame signature does not match the metric");
  return f;
}

inline Frame build_frame(const Mat& g) {
  return build_frame(g, Mat::Identity(g.rows(), g.cols()));
}

/// max |g(E_i,E_j) - eps_i delta_ij|
inline double frame_defect(const Frame& f, const Mat& g) {
  Mat gram = f.vectors.transpose() * g * f.vectors;
  double worst = 0.0;
  for (int i = 0; i < f.size(); ++i)
    for (int j = 0; j < f.size(); ++j)
      worst = std::max(worst, std::fabs(gram(i, j) - (i == j ? f.signs[i] : 0.0)));
  return worst;
}

}  // namespace pcm
