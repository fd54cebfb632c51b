#pragma once

// Value, gradient and Hessian of an expression at a point, extracted from a
// nested dual evaluation.

#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "pcm/dual.hpp"
#include "pcm/expr.hpp"

namespace pcm {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Second-order jet.  The Hessian is stored as its upper triangle, so it is
/// symmetric by construction.
struct Jet2 {
  double value = 0.0;
  Vec grad;
  std::vector<double> hess_upper;

  int dim() const { return static_cast<int>(grad.size()); }

  double hess(int i, int j) const {
    if (i > j) std::swap(i, j);
    int n = dim();
    return hess_upper[static_cast<std::size_t>(i * n - i * (i - 1) / 2 + (j - i))];
  }

  Mat hessian() const {
    int n = dim();
    Mat h(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) h(i, j) = hess(i, j);
    return h;
  }
};

namespace detail {

template <int N>
Jet2 eval_jet2_n(const Expression& e, std::span<const double> x) {
  using Inner = Dual<double, N>;
  using Outer = Dual<Inner, N>;
  const int n = static_cast<int>(x.size());
  std::vector<Outer> seeds(n);
  for (int i = 0; i < n; ++i) {
    seeds[i].v.v = x[i];
    seeds[i].v.d[i] = 1.0;
    seeds[i].d[i].v = 1.0;
  }
  Outer r = evaluate<Outer>(e, std::span<const Outer>(seeds));
  Jet2 j;
  j.value = r.v.v;
  j.grad.resize(n);
  for (int i = 0; i < n; ++i) j.grad[i] = r.v.d[i];
  j.hess_upper.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int i = 0; i < n; ++i)
    for (int k = i; k < n; ++k) j.hess_upper.push_back(r.d[i].d[k]);
  return j;
}

}  // namespace detail

/// Exact value, gradient and Hessian of `e` at `x`.
inline Jet2 eval_jet2(const Expression& e, std::span<const double> x) {
  if (static_cast<int>(x.size()) != e.dim())
    throw std::invalid_argument("eval_jet2: point has wrong dimension");
  if (x.size() <= 4) return detail::eval_jet2_n<4>(e, x);
  if (x.size() <= 8) return detail::eval_jet2_n<8>(e, x);
  if (x.size() <= 12) return detail::eval_jet2_n<12>(e, x);
  throw std::invalid_argument("eval_jet2: charts above dimension 12 are not supported");
}

inline Jet2 eval_jet2(const Expression& e, const Vec& x) {
  return eval_jet2(e, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

inline double eval_value(const Expression& e, const Vec& x) {
  return evaluate(e, std::span<const double>(x.data(), static_cast<std::size_t>(x.size())));
}

}  // namespace pcm
