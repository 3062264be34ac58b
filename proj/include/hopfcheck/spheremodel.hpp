#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "hopfcheck/random.hpp"
#include "hopfcheck/scalar.hpp"

namespace hopfcheck {

namespace detail {

template <class S>
bool is_unit(const S& n2) {
  if constexpr (ScalarTraits<S>::exact) {
    return n2 == S(1);
  } else {
    return std::abs(ScalarTraits<S>::to_double(n2) - 1.0) <= 1e-9;
  }
}

}  // namespace detail

/// A unit vector in R^d.
template <class S>
class SpherePoint {
 public:
  explicit SpherePoint(Vec<S> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw UsageError("sphere point needs at least one coordinate");
    if (!detail::is_unit(vec::norm2(coords_))) throw UsageError("sphere point is not unit length");
  }

  std::size_t dim() const { return coords_.size(); }
  const Vec<S>& coords() const { return coords_; }
  const S& operator[](std::size_t i) const { return coords_.at(i); }

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  Vec<S> coords_;
};

/// A point of the suspension of a sphere S^(d-1) in R^d, stored as the unit
/// vector (cos t, sin t * a) in R^(1+d). North = (1, 0, ...), South = (-1, 0, ...).
template <class S>
class SuspPoint {
 public:
  explicit SuspPoint(Vec<S> coords) : point_(std::move(coords)) {}
  explicit SuspPoint(SpherePoint<S> p) : point_(std::move(p)) {}

  static SuspPoint north(std::size_t base_dim) { return SuspPoint(vec::basis<S>(base_dim + 1, 0)); }
  static SuspPoint south(std::size_t base_dim) {
    return SuspPoint(vec::basis<S>(base_dim + 1, 0, -1));
  }
  /// Point (c, s a) on the meridian through a; requires s >= 0, c^2 + s^2 = 1.
  static SuspPoint meridian(const Vec<S>& a, const S& c, const S& s) {
    if (ScalarTraits<S>::sign(s) < 0 || !detail::is_unit(c * c + s * s)) {
      throw UsageError("meridian parameter must lie on the upper half circle");
    }
    if (!detail::is_unit(vec::norm2(a))) throw UsageError("meridian base point is not unit length");
    Vec<S> coords{c};
    for (const auto& x : a) coords.push_back(s * x);
    return SuspPoint(std::move(coords));
  }

  std::size_t base_dim() const { return point_.dim() - 1; }
  const Vec<S>& coords() const { return point_.coords(); }
  const SpherePoint<S>& sphere_point() const { return point_; }

  bool is_north() const { return is_pole(1); }
  bool is_south() const { return is_pole(-1); }

  /// Base point a of a non-polar point, i.e. the normalised tail.
  std::optional<Vec<RootOf<S>>> base() const {
    Vec<S> tail(coords().begin() + 1, coords().end());
    if (vec::is_zero(tail)) return std::nullopt;
    const auto len = ScalarTraits<S>::sqrt(vec::norm2(tail));
    Vec<RootOf<S>> a;
    for (const auto& x : tail) a.push_back(ScalarTraits<S>::to_root(x) / len);
    return a;
  }

  friend bool operator==(const SuspPoint&, const SuspPoint&) = default;

 private:
  bool is_pole(int sign) const {
    Vec<S> tail(coords().begin() + 1, coords().end());
    return vec::is_zero(tail) && ScalarTraits<S>::sign(coords()[0]) == sign;
  }

  SpherePoint<S> point_;
};

/// -N = S, -S = N, and merid(a) maps to merid(-a) reversed: the antipode.
template <class S>
SuspPoint<S> susp_neg(const SuspPoint<S>& x) {
  return SuspPoint<S>(vec::neg(x.coords()));
}

/// Poles fixed, merid(a) maps to merid(-a): negate the tail.
template <class S>
SuspPoint<S> susp_conj(const SuspPoint<S>& x) {
  Vec<S> c = x.coords();
  for (std::size_t i = 1; i < c.size(); ++i) c[i] = -c[i];
  return SuspPoint<S>(std::move(c));
}

// ---- joins ---------------------------------------------------------------

/// A point of join(X, Y) for X in R^d1, Y in R^d2, stored as the embedded
/// pair (p, q) with |p|^2 + |q|^2 = 1. inl(u) is (u, 0), inr(v) is (0, v),
/// and glue(u, v) at quarter-circle parameter (c, s) is (c u, s v).
template <class S>
class JoinPoint {
 public:
  JoinPoint(Vec<S> p, Vec<S> q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.empty() || q_.empty()) throw UsageError("join factors need positive dimension");
    if (!detail::is_unit(vec::norm2(p_) + vec::norm2(q_))) {
      throw UsageError("join point is not on the unit sphere");
    }
  }

  static JoinPoint inl(const Vec<S>& u, std::size_t right_dim) {
    return JoinPoint(u, vec::zeros<S>(right_dim));
  }
  static JoinPoint inr(std::size_t left_dim, const Vec<S>& v) {
    return JoinPoint(vec::zeros<S>(left_dim), v);
  }

  const Vec<S>& left() const { return p_; }
  const Vec<S>& right() const { return q_; }
  std::size_t left_dim() const { return p_.size(); }
  std::size_t right_dim() const { return q_.size(); }
  Vec<S> embedded() const { return vec::concat(p_, q_); }

  friend bool operator==(const JoinPoint&, const JoinPoint&) = default;

 private:
  Vec<S> p_;
  Vec<S> q_;
};

/// Embedding of the join: (u, v, (c, s)) -> (c u, s v) for a point (c, s)
/// on the closed quarter circle.
template <class S>
JoinPoint<S> phi(const Vec<S>& u, const Vec<S>& v, const S& c, const S& s) {
  if (ScalarTraits<S>::sign(c) < 0 || ScalarTraits<S>::sign(s) < 0 ||
      !detail::is_unit(c * c + s * s)) {
    throw UsageError("glue parameter must lie on the quarter circle c, s >= 0, c^2 + s^2 = 1");
  }
  if (!detail::is_unit(vec::norm2(u)) || !detail::is_unit(vec::norm2(v))) {
    throw UsageError("join factors must be unit vectors");
  }
  return JoinPoint<S>(vec::scale(c, u), vec::scale(s, v));
}

template <class S>
JoinPoint<S> phi(const Vec<S>& u, const Vec<S>& v, const QuarterTurn<S>& t) {
  return phi(u, v, t.c, t.s);
}

enum class JoinKind { inl, inr, glue };

inline std::string_view to_string(JoinKind k) {
  switch (k) {
    case JoinKind::inl: return "inl";
    case JoinKind::inr: return "inr";
    case JoinKind::glue: return "glue";
  }
  return "?";
}

/// Constructor analysis of a join point. For inl only u is meaningful, for
/// inr only v; (c, s) = (|p|, |q|) in every case.
template <class R>
struct JoinView {
  JoinKind kind;
  Vec<R> u;
  Vec<R> v;
  R c;
  R s;
};

template <class S>
JoinView<RootOf<S>> join_view(const JoinPoint<S>& x) {
  using R = RootOf<S>;
  using T = ScalarTraits<S>;
  auto to_root = [](const Vec<S>& a) {
    Vec<R> r;
    r.reserve(a.size());
    for (const auto& e : a) r.push_back(T::to_root(e));
    return r;
  };
  auto normalized = [&](const Vec<S>& a, const R& len) {
    Vec<R> r;
    r.reserve(a.size());
    for (const auto& e : a) r.push_back(T::to_root(e) / len);
    return r;
  };
  const S p2 = vec::norm2(x.left());
  const S q2 = vec::norm2(x.right());
  const R c = T::sqrt(p2);
  const R s = T::sqrt(q2);
  const bool p_zero = T::exact ? T::negligible(p2) : ScalarTraits<R>::negligible(c);
  const bool q_zero = T::exact ? T::negligible(q2) : ScalarTraits<R>::negligible(s);
  if (q_zero) {
    return {JoinKind::inl, T::exact ? to_root(x.left()) : normalized(x.left(), c), {}, R(1), R(0)};
  }
  if (p_zero) {
    return {JoinKind::inr, {}, T::exact ? to_root(x.right()) : normalized(x.right(), s), R(0), R(1)};
  }
  return {JoinKind::glue, normalized(x.left(), c), normalized(x.right(), s), c, s};
}

/// Inverse of the embedding on its image: any unit vector of R^(d1+d2) is a
/// join point once split after d1 coordinates.
template <class S>
JoinPoint<S> from_embedded(const Vec<S>& v, std::size_t left_dim) {
  auto [p, q] = vec::split(v, left_dim);
  return JoinPoint<S>(std::move(p), std::move(q));
}

/// join(join(X, Y), Z) -> join(X, join(Y, Z)): the embedded vector is
/// unchanged; only the split point moves from d1 + d2 to d1.
template <class S>
JoinPoint<S> reassociate_left(const JoinPoint<S>& nested, std::size_t d1) {
  if (d1 >= nested.left_dim()) throw UsageError("inner left factor must be a proper prefix");
  return from_embedded(nested.embedded(), d1);
}

/// join(X, join(Y, Z)) -> join(join(X, Y), Z).
template <class S>
JoinPoint<S> reassociate_right(const JoinPoint<S>& nested, std::size_t d3) {
  if (d3 >= nested.right_dim()) throw UsageError("inner right factor must be a proper suffix");
  return from_embedded(nested.embedded(), nested.left_dim() + nested.right_dim() - d3);
}

/// Suspension as the join S^0 * X: (cos t, sin t a) is the join point with
/// p = (cos t) in R^1 and q = sin t a.
template <class S>
JoinPoint<S> susp_to_join(const SuspPoint<S>& x) {
  return from_embedded(x.coords(), 1);
}

template <class S>
SuspPoint<S> join_to_susp(const JoinPoint<S>& x) {
  if (x.left_dim() != 1) throw UsageError("suspension join model needs S^0 as left factor");
  return SuspPoint<S>(x.embedded());
}

template <class S>
using LinearMap = std::function<Vec<S>(const Vec<S>&)>;

/// Throws unless f maps the standard basis of R^dim to an orthonormal
/// family, which for a linear f is equivalent to preserving norms.
template <class S>
void require_norm_preserving(const LinearMap<S>& f, std::size_t dim, std::string_view which) {
  std::vector<Vec<S>> images;
  for (std::size_t i = 0; i < dim; ++i) images.push_back(f(vec::basis<S>(dim, i)));
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i; j < dim; ++j) {
      const S d = vec::dot(images[i], images[j]);
      const S want = i == j ? S(1) : S(0);
      bool ok;
      if constexpr (ScalarTraits<S>::exact) {
        ok = d == want;
      } else {
        ok = std::abs(ScalarTraits<S>::to_double(d - want)) <= 1e-12;
      }
      if (!ok) throw UsageError(std::string(which) + " map is not norm-preserving");
    }
  }
}

/// The induced map join f g: (p, q) -> (f p, g q).
template <class S>
JoinPoint<S> join_functor(const LinearMap<S>& f, const LinearMap<S>& g, const JoinPoint<S>& x) {
  require_norm_preserving(f, x.left_dim(), "left");
  require_norm_preserving(g, x.right_dim(), "right");
  return JoinPoint<S>(f(x.left()), g(x.right()));
}

/// Random point of join(S^(d1-1), S^(d2-1)) of the requested view kind.
template <class S>
JoinPoint<S> random_join_point(CounterRng& rng, std::size_t d1, std::size_t d2, JoinKind kind) {
  switch (kind) {
    case JoinKind::inl: return JoinPoint<S>::inl(random_sphere_point<S>(rng, d1), d2);
    case JoinKind::inr: return JoinPoint<S>::inr(d1, random_sphere_point<S>(rng, d2));
    case JoinKind::glue: break;
  }
  auto u = random_sphere_point<S>(rng, d1);
  auto v = random_sphere_point<S>(rng, d2);
  return phi(u, v, random_quarter_turn<S>(rng));
}

/// Same, with the kind drawn uniformly.
template <class S>
JoinPoint<S> random_join_point(CounterRng& rng, std::size_t d1, std::size_t d2) {
  return random_join_point<S>(rng, d1, d2, static_cast<JoinKind>(rng.uniform_int(0, 2)));
}

}  // namespace hopfcheck
