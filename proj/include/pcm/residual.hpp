#pragma once

#include <algorithm>
#include <cmath>

#include "pcm/jet.hpp"

namespace pcm {

/// Accumulates the signed terms of an identity LHS - RHS = 0.
///
/// residual() is max|sum| divided by the largest max-norm among the
/// individual terms, floored at 1.  raw() is the unnormalized max|sum|.
class Balance {
 public:
  template <class D>
  Balance& add(const Eigen::MatrixBase<D>& m) {
    return push(m, 1.0);
  }
  template <class D>
  Balance& sub(const Eigen::MatrixBase<D>& m) {
    return push(m, -1.0);
  }
  Balance& add(double s) { return push(Vec::Constant(1, s), 1.0); }
  Balance& sub(double s) { return push(Vec::Constant(1, s), -1.0); }

  double raw() const { return sum_.size() ? sum_.cwiseAbs().maxCoeff() : 0.0; }
  double scale() const { return scale_; }
  double residual() const { return raw() / std::max(1.0, scale_); }

 private:
  template <class D>
  Balance& push(const Eigen::MatrixBase<D>& m, double sign) {
    Mat value = m;
    Eigen::Map<const Vec> flat(value.data(), value.size());
    if (sum_.size() == 0) sum_ = Vec::Zero(flat.size());
    sum_ += sign * flat;
    if (flat.size()) scale_ = std::max(scale_, flat.cwiseAbs().maxCoeff());
    return *this;
  }

  Vec sum_;
  double scale_ = 0.0;
};

/// Normalized difference of two quantities.
template <class A, class B>
double compare(const A& lhs, const B& rhs) {
  Balance b;
  b.add(lhs).sub(rhs);
  return b.residual();
}

}  // namespace pcm
