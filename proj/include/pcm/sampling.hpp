#pragma once

// Deterministic random sampling.  Uniform variates are formed from raw
// engine bits so results do not depend on the standard library's
// distribution implementations.

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "pcm/geometry.hpp"

namespace pcm {

inline std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

/// Mixes a user seed with a label (example name, identity id, ...).
inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view label) {
  std::uint64_t z = fnv1a(label) ^ (seed + 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  int below(int n) { return static_cast<int>(eng_() % static_cast<std::uint64_t>(n)); }

  Vec uniform_vector(int n, double lo = -1.0, double hi = 1.0) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

  Vec in_box(const std::vector<Interval>& box) {
    Vec v(static_cast<int>(box.size()));
    for (std::size_t i = 0; i < box.size(); ++i) v[static_cast<int>(i)] = uniform(box[i].lo, box[i].hi);
    return v;
  }

 private:
  std::mt19937_64 eng_;
};

/// Coordinate-basis tuples of the given arity (all of them when there are at
/// most `cap`, otherwise `cap` random ones) followed by `random` tuples with
/// entries in [-1, 1].
inline std::vector<std::vector<Vec>> vector_tuples(int dim, int arity, int random, Rng& rng, int cap = 256) {
  std::vector<std::vector<Vec>> out;
  if (arity == 0) {
    out.emplace_back();
    return out;
  }
  auto basis = [&](int i) { return Vec(Vec::Unit(dim, i)); };
  long total = 1;
  for (int a = 0; a < arity; ++a) total *= dim;
  if (total <= cap) {
    std::vector<int> idx(arity, 0);
    for (long t = 0; t < total; ++t) {
      std::vector<Vec> tuple;
      for (int a = 0; a < arity; ++a) tuple.push_back(basis(idx[a]));
      out.push_back(std::move(tuple));
      for (int a = arity - 1; a >= 0; --a) {
        if (++idx[a] < dim) break;
        idx[a] = 0;
      }
    }
  } else {
    for (int t = 0; t < cap; ++t) {
      std::vector<Vec> tuple;
      for (int a = 0; a < arity; ++a) tuple.push_back(basis(rng.below(dim)));
      out.push_back(std::move(tuple));
    }
  }
  for (int t = 0; t < random; ++t) {
    std::vector<Vec> tuple;
    for (int a = 0; a < arity; ++a) tuple.push_back(rng.uniform_vector(dim));
    out.push_back(std::move(tuple));
  }
  return out;
}

}  // namespace pcm
