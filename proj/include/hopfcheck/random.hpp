#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <string_view>

#include "hopfcheck/scalar.hpp"

namespace hopfcheck {

// FNV-1a, used to turn suite names into stream ids.
constexpr std::uint64_t stream_id(std::string_view name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : name) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: the stream for sample `index` of suite `stream`
/// under `seed` depends only on that triple, so any partition of the sample
/// range across workers draws identical values.
class CounterRng {
  __extension__ using u128 = unsigned __int128;

 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t index)
      : key_(splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index)) {}

  std::uint64_t next() { return splitmix64(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform integer in [lo, hi], unbiased (Lemire's multiply-and-reject).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t range = static_cast<std::uint64_t>(hi - lo) + 1;
    if (range == 0) return static_cast<std::int64_t>(next());
    const std::uint64_t threshold = (0 - range) % range;
    for (;;) {
      const u128 m = static_cast<u128>(next()) * range;
      if (static_cast<std::uint64_t>(m) >= threshold) {
        return lo + static_cast<std::int64_t>(m >> 64);
      }
    }
  }

  /// Uniform double in [0, 1).
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double normal() {
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  bool coin() { return (next() >> 63) != 0; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

inline constexpr long kDefaultMagnitude = 10;

/// Random rational with |numerator| <= magnitude, 1 <= denominator <= magnitude.
inline Rational random_rational(CounterRng& rng, long magnitude = kDefaultMagnitude) {
  const auto num = rng.uniform_int(-magnitude, magnitude);
  const auto den = rng.uniform_int(1, magnitude);
  return Rational(static_cast<long>(num), static_cast<long>(den));
}

template <class S>
S random_scalar(CounterRng& rng, long magnitude = kDefaultMagnitude) {
  if constexpr (std::is_same_v<S, double>) {
    return 2.0 * rng.uniform01() - 1.0;
  } else {
    return S(random_rational(rng, magnitude));
  }
}

template <class S>
Vec<S> random_vector(CounterRng& rng, std::size_t dim, long magnitude = kDefaultMagnitude) {
  Vec<S> v;
  v.reserve(dim);
  for (std::size_t i = 0; i < dim; ++i) v.push_back(random_scalar<S>(rng, magnitude));
  return v;
}

/// Inverse stereographic projection from the south pole:
/// y -> ((1-|y|^2)/(1+|y|^2), 2y/(1+|y|^2)). Exact for rational y.
template <class S>
Vec<S> stereographic(const Vec<S>& y) {
  const S n2 = vec::norm2(y);
  const S den = S(1) + n2;
  Vec<S> out;
  out.reserve(y.size() + 1);
  out.push_back((S(1) - n2) / den);
  for (const auto& yi : y) out.push_back(S(2) * yi / den);
  return out;
}

/// Random point on the unit sphere in R^dim. Exact mode uses rational
/// stereographic points; float mode normalises a Gaussian vector.
/// dim == 1 is the 0-sphere {+1, -1}.
template <class S>
Vec<S> random_sphere_point(CounterRng& rng, std::size_t dim, long magnitude = kDefaultMagnitude) {
  if (dim == 0) throw UsageError("sphere of ambient dimension 0 has no points");
  if (dim == 1) return Vec<S>{S(rng.coin() ? 1 : -1)};
  if constexpr (std::is_same_v<S, double>) {
    Vec<double> v(dim);
    double n2 = 0.0;
    do {
      n2 = 0.0;
      for (auto& x : v) {
        x = rng.normal();
        n2 += x * x;
      }
    } while (n2 < 1e-6);
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& x : v) x *= inv;
    return v;
  } else {
    auto p = stereographic(random_vector<S>(rng, dim - 1, magnitude));
    // Stereographic images avoid the south pole; a random sign restores symmetry.
    if (rng.coin()) p = vec::neg(p);
    return p;
  }
}

/// A point (c, s) on the closed quarter circle c, s >= 0, c^2 + s^2 = 1.
template <class S>
struct QuarterTurn {
  S c;
  S s;
};

/// Rational quarter-circle point from t in [0, 1]: ((1-t^2)/(1+t^2), 2t/(1+t^2)).
template <class S>
QuarterTurn<S> quarter_turn_from_slope(const S& t) {
  const S den = S(1) + t * t;
  return {(S(1) - t * t) / den, S(2) * t / den};
}

/// Random strictly interior quarter-circle point.
template <class S>
QuarterTurn<S> random_quarter_turn(CounterRng& rng, long magnitude = kDefaultMagnitude) {
  if constexpr (std::is_same_v<S, double>) {
    double theta = 0.0;
    while (theta <= 1e-6 || theta >= std::numbers::pi / 2 - 1e-6) {
      theta = rng.uniform01() * std::numbers::pi / 2;
    }
    return {std::cos(theta), std::sin(theta)};
  } else {
    const auto den = rng.uniform_int(2, magnitude);
    const auto num = rng.uniform_int(1, den - 1);
    return quarter_turn_from_slope(S(Rational(static_cast<long>(num), static_cast<long>(den))));
  }
}

}  // namespace hopfcheck
