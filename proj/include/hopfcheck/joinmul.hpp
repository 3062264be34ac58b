#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hopfcheck/cdalg.hpp"
#include "hopfcheck/laws.hpp"
#include "hopfcheck/report.hpp"
#include "hopfcheck/spheremodel.hpp"

namespace hopfcheck {

/// Corners of a square in join(X, Y): a, a' in X and b, b' in Y. The four
/// edges run, for t along the quarter circle,
///   top     inl(a)  -> inr(b)    (c a,  s b)
///   left    inl(a)  -> inr(b')   (c a,  s b')
///   right   inr(b)  -> inl(a')   (s a', c b)
///   bottom  inr(b') -> inl(a')   (s a', c b')
/// Here sigma moves along top/bottom (left argument) and tau along
/// left/right (right argument).
template <class S>
struct DiamondProblem {
  Vec<S> a;
  Vec<S> b;
  Vec<S> a_prime;
  Vec<S> b_prime;
};

enum class Edge { top, left, right, bottom };
inline constexpr std::array<Edge, 4> kEdges = {Edge::top, Edge::left, Edge::right, Edge::bottom};

inline std::string_view to_string(Edge e) {
  switch (e) {
    case Edge::top: return "top";
    case Edge::left: return "left";
    case Edge::right: return "right";
    case Edge::bottom: return "bottom";
  }
  return "?";
}

template <class S>
JoinPoint<S> boundary_point(const DiamondProblem<S>& d, Edge e, const QuarterTurn<S>& t) {
  switch (e) {
    case Edge::top: return JoinPoint<S>(vec::scale(t.c, d.a), vec::scale(t.s, d.b));
    case Edge::left: return JoinPoint<S>(vec::scale(t.c, d.a), vec::scale(t.s, d.b_prime));
    case Edge::right: return JoinPoint<S>(vec::scale(t.s, d.a_prime), vec::scale(t.c, d.b));
    case Edge::bottom: break;
  }
  return JoinPoint<S>(vec::scale(t.s, d.a_prime), vec::scale(t.c, d.b_prime));
}

/// Parameters (sigma, tau) of the point at t on edge e.
template <class S>
std::pair<QuarterTurn<S>, QuarterTurn<S>> edge_parameters(Edge e, const QuarterTurn<S>& t) {
  const QuarterTurn<S> start{S(1), S(0)}, end{S(0), S(1)};
  switch (e) {
    case Edge::top: return {t, start};
    case Edge::left: return {start, t};
    case Edge::right: return {end, t};
    case Edge::bottom: break;
  }
  return {t, end};
}

/// A map from the square into a join together with the boundary it claims.
template <class S>
struct SquareFiller {
  std::string name;
  DiamondProblem<S> corners;
  std::function<JoinPoint<S>(const QuarterTurn<S>&, const QuarterTurn<S>&)> eval;

  JoinPoint<S> operator()(const QuarterTurn<S>& sigma, const QuarterTurn<S>& tau) const {
    return eval(sigma, tau);
  }
};

/// Compares the filler with its boundary contract at parameter t on all
/// four edges.
template <class S>
Check check_boundary(const SquareFiller<S>& f, const QuarterTurn<S>& t, double tolerance) {
  Check total;
  for (Edge e : kEdges) {
    const auto [sigma, tau] = edge_parameters(e, t);
    const auto got = f(sigma, tau).embedded();
    const auto want = boundary_point(f.corners, e, t).embedded();
    merge_check(total, check_equal(got, want, tolerance, [&] {
                  return std::vector<Vec<S>>{f.corners.a, f.corners.b, f.corners.a_prime,
                                             f.corners.b_prime, {sigma.c, sigma.s, tau.c, tau.s}};
                }));
  }
  return total;
}

enum class ReflKind { vertical, horizontal };

namespace detail {

template <class S>
S positive_part(const S& x) {
  return ScalarTraits<S>::sign(x) > 0 ? x : S(0);
}

}  // namespace detail

/// Fillers for diamonds with a reflexivity path. Horizontal (b = b'):
///   k = c_s c_t - s_s s_t,  p = k+ a + k- a',  q = (s_s c_t + c_s s_t) b.
/// Vertical (a = a'):
///   k = s_s c_t - c_s s_t,  p = (c_s c_t + s_s s_t) a,  q = k+ b + k- b'.
/// The fixed factor stays put and the other one switches sides where its
/// weight passes through zero.
template <class S>
SquareFiller<S> fill_refl_diamond(ReflKind kind, DiamondProblem<S> corners) {
  if (kind == ReflKind::horizontal && corners.b != corners.b_prime) {
    throw UsageError("horizontal reflexivity filler needs b = b'");
  }
  if (kind == ReflKind::vertical && corners.a != corners.a_prime) {
    throw UsageError("vertical reflexivity filler needs a = a'");
  }
  const DiamondProblem<S> d = corners;
  if (kind == ReflKind::horizontal) {
    return {"refl_horizontal", std::move(corners),
            [d](const QuarterTurn<S>& sg, const QuarterTurn<S>& tu) {
              const S k = sg.c * tu.c - sg.s * tu.s;
              const Vec<S> p = vec::add(vec::scale(detail::positive_part(k), d.a),
                                        vec::scale(detail::positive_part(-k), d.a_prime));
              return JoinPoint<S>(p, vec::scale(sg.s * tu.c + sg.c * tu.s, d.b));
            }};
  }
  return {"refl_vertical", std::move(corners),
          [d](const QuarterTurn<S>& sg, const QuarterTurn<S>& tu) {
            const S k = sg.s * tu.c - sg.c * tu.s;
            const Vec<S> q = vec::add(vec::scale(detail::positive_part(k), d.b),
                                      vec::scale(detail::positive_part(-k), d.b_prime));
            return JoinPoint<S>(vec::scale(sg.c * tu.c + sg.s * tu.s, d.a), q);
          }};
}

/// The diamond with corners a = -1, b = 1, a' = b' = x in join(SA, SA):
///   D_x(sigma, tau) = (-c_s c_t 1 + s_s s_t x,  s_s c_t 1 + c_s s_t x).
/// At x = N it is the horizontal reflexivity filler, at x = S the vertical one.
template <class S>
SquareFiller<S> solve_x_diamond(const SuspPoint<S>& x) {
  const Vec<S> one = SuspPoint<S>::north(x.base_dim()).coords();
  const Vec<S> xv = x.coords();
  return {"x_diamond", {vec::neg(one), one, xv, xv},
          [one, xv](const QuarterTurn<S>& sg, const QuarterTurn<S>& tu) {
            return JoinPoint<S>(
                vec::add(vec::scale(-(sg.c * tu.c), one), vec::scale(sg.s * tu.s, xv)),
                vec::add(vec::scale(sg.s * tu.c, one), vec::scale(sg.c * tu.s, xv)));
          }};
}

// ---- multiplication on join(SA, SA) --------------------------------------

namespace detail {

template <class S>
JoinPoint<S> from_root(const Vec<RootOf<S>>& p, const Vec<RootOf<S>>& q) {
  auto back = [](const Vec<RootOf<S>>& v) {
    Vec<S> r;
    r.reserve(v.size());
    for (const auto& x : v) r.push_back(ScalarTraits<S>::from_root(x));
    return r;
  };
  return JoinPoint<S>(back(p), back(q));
}

}  // namespace detail

/// The multiplication on join(SA, SA) built from the suspension product:
/// the point-constructor table
///   inl a . inl c = inl(ac)     inl a . inr d = inr(a* d)
///   inr b . inl c = inr(cb)     inr b . inr d = inl(-d b*)
/// glue arcs for the mixed cases, and for glue . glue the diamond D_xh
/// transported by join(f, g), f(u) = -(ac)u, g(v) = (cv)b, xh = c* a* d b*.
/// Views are taken in the root-extended scalars, so rational inputs give
/// exact rational outputs.
template <class S>
JoinPoint<S> join_mul_syn(const JoinPoint<S>& x, const JoinPoint<S>& y,
                          const ImaginaroidInstance<S>& inst, const AssocCertificate& cert) {
  cert.require(inst.name);
  if (x.left_dim() != inst.dim() || x.right_dim() != inst.dim() || y.left_dim() != inst.dim() ||
      y.right_dim() != inst.dim()) {
    throw UsageError("join point dimensions do not match the instance");
  }
  using R = RootOf<S>;
  const auto& mul = inst.root_mul;
  auto conj = [](const Vec<R>& v) { return cd::conj(v); };
  auto sc = [](const R& k, const Vec<R>& v) { return vec::scale(k, v); };
  const auto vx = join_view(x);
  const auto vy = join_view(y);
  const Vec<R>& a = vx.u;
  const Vec<R>& b = vx.v;
  const Vec<R>& c = vy.u;
  const Vec<R>& d = vy.v;

  auto result = [](Vec<R> p, Vec<R> q) { return detail::from_root<S>(p, q); };
  const auto zero = vec::zeros<R>(inst.dim());

  switch (vx.kind) {
    case JoinKind::inl:
      switch (vy.kind) {
        case JoinKind::inl: return result(mul(a, c), zero);
        case JoinKind::inr: return result(zero, mul(conj(a), d));
        case JoinKind::glue: return result(sc(vy.c, mul(a, c)), sc(vy.s, mul(conj(a), d)));
      }
      break;
    case JoinKind::inr:
      switch (vy.kind) {
        case JoinKind::inl: return result(zero, mul(c, b));
        case JoinKind::inr: return result(vec::neg(mul(d, conj(b))), zero);
        case JoinKind::glue: return result(sc(-vy.s, mul(d, conj(b))), sc(vy.c, mul(c, b)));
      }
      break;
    case JoinKind::glue:
      switch (vy.kind) {
        case JoinKind::inl: return result(sc(vx.c, mul(a, c)), sc(vx.s, mul(c, b)));
        case JoinKind::inr: return result(sc(-vx.s, mul(d, conj(b))), sc(vx.c, mul(conj(a), d)));
        case JoinKind::glue: break;
      }
      break;
  }

  const Vec<R> xh = mul(mul(mul(conj(c), conj(a)), d), conj(b));
  const auto diamond = solve_x_diamond(SuspPoint<R>(xh));
  const auto filled = diamond({vx.c, vx.s}, {vy.c, vy.s});
  const Vec<R> ac = mul(a, c);
  const LinearMap<R> f = [&](const Vec<R>& u) { return vec::neg(mul(ac, u)); };
  const LinearMap<R> g = [&](const Vec<R>& v) { return mul(mul(c, v), b); };
  const auto out = join_functor(f, g, filled);
  return result(out.left(), out.right());
}

/// Oracle: the embedded pairs multiplied as elements of the doubled algebra,
/// (p, q)(r, w) = (pr - w q*, p* w + r q). `level` is the level of the
/// doubled algebra; above 3 norms are not multiplicative and it refuses.
template <class S>
JoinPoint<S> join_mul_alg(const JoinPoint<S>& x, const JoinPoint<S>& y, unsigned level) {
  if (level == 0 || level > 3) {
    throw UsageError("join_mul_alg is defined for doubled levels 1..3, got " +
                     std::to_string(level));
  }
  const std::size_t half = std::size_t{1} << (level - 1);
  if (x.left_dim() != half || x.right_dim() != half || y.left_dim() != half ||
      y.right_dim() != half) {
    throw UsageError("join point dimensions do not match level " + std::to_string(level));
  }
  return from_embedded(cd::mul(x.embedded(), y.embedded()), half);
}

/// join(SA, SA) with the synthetic multiplication, unit inl(1) and the
/// doubled-algebra conjugate as translation inverse.
template <class S>
HSpace<S> join_hspace(const ImaginaroidInstance<S>& inst, const AssocCertificate& cert,
                      std::string name) {
  cert.require(inst.name);
  const std::size_t d = inst.dim();
  BinaryOp<S> mul = [inst, cert, d](const Vec<S>& x, const Vec<S>& y) {
    return join_mul_syn(from_embedded(x, d), from_embedded(y, d), inst, cert).embedded();
  };
  InputSpace<S> in{signed_basis<S>(2 * d), [d](CounterRng& rng) {
                     return random_join_point<S>(rng, d, d).embedded();
                   }};
  // Associative exactly when the doubled algebra is, i.e. up to quaternions.
  return {std::move(name),
          2 * d,
          cd::one<S>(2 * d),
          std::move(mul),
          [](const Vec<S>& x) { return cd::conj(x); },
          std::move(in),
          inst.level + 1 <= 2 ? Expect::holds : Expect::fails};
}

/// inl(1) x = x and x inl(1) = x.
template <class S>
std::vector<LawReport> unit_law_check(const ImaginaroidInstance<S>& inst,
                                      const AssocCertificate& cert, const std::string& name,
                                      const SuiteOptions& opts) {
  using Xs = std::vector<Vec<S>>;
  using Sides = std::pair<Vec<S>, Vec<S>>;
  const auto h = join_hspace(inst, cert, name);
  const auto& mul = h.mul;
  const Vec<S> e = h.unit;
  return {check_identity<S>({"left_unit", 1, [=](const Xs& x) { return Sides{mul(e, x[0]), x[0]}; }},
                            name, h.inputs, opts),
          check_identity<S>({"right_unit", 1, [=](const Xs& x) { return Sides{mul(x[0], e), x[0]}; }},
                            name, h.inputs, opts)};
}

inline constexpr std::array<std::pair<JoinKind, JoinKind>, 9> kViewPairs = {{
    {JoinKind::inl, JoinKind::inl},
    {JoinKind::inl, JoinKind::inr},
    {JoinKind::inl, JoinKind::glue},
    {JoinKind::inr, JoinKind::inl},
    {JoinKind::inr, JoinKind::inr},
    {JoinKind::inr, JoinKind::glue},
    {JoinKind::glue, JoinKind::inl},
    {JoinKind::glue, JoinKind::inr},
    {JoinKind::glue, JoinKind::glue},
}};

/// join_mul_syn = join_mul_alg. Structured inputs are all pairs of signed
/// basis points; sample i uses view combination i mod 9.
template <class S>
LawReport oracle_equivalence_check(const ImaginaroidInstance<S>& inst,
                                   const AssocCertificate& cert, std::string name,
                                   const SuiteOptions& opts) {
  const std::size_t d = inst.dim();
  const unsigned level = inst.level + 1;
  auto compare = [&](const JoinPoint<S>& x, const JoinPoint<S>& y) {
    const auto syn = join_mul_syn(x, y, inst, cert).embedded();
    const auto alg = join_mul_alg(x, y, level).embedded();
    return check_equal(syn, alg, opts.tolerance,
                       [&] { return std::vector<Vec<S>>{x.embedded(), y.embedded()}; });
  };
  LawRecorder rec("oracle_equivalence", name, opts);
  const auto basis = signed_basis<S>(2 * d);
  for (const auto& x : basis) {
    for (const auto& y : basis) {
      if (rec.failed()) break;
      rec.record(compare(from_embedded(x, d), from_embedded(y, d)));
    }
  }
  if (!rec.failed()) {
    const std::uint64_t stream = stream_id(name + "/oracle_equivalence");
    rec.sample(opts.samples, [&](std::uint64_t i) {
      CounterRng rng(opts.seed, stream, i);
      const auto [kx, ky] = kViewPairs[i % kViewPairs.size()];
      const auto x = random_join_point<S>(rng, d, d, kx);
      const auto y = random_join_point<S>(rng, d, d, ky);
      return compare(x, y);
    });
  }
  return std::move(rec).finish();
}

/// Float check that the glue . glue formula tends to the table rows as a
/// glue parameter approaches an endpoint.
inline LawReport glue_continuity_check(unsigned level, std::string name, SuiteOptions opts) {
  opts.mode = Mode::floating;
  const auto inst = cd_imaginaroid<double>(level, name);
  const auto cert = AssocCertificate::assume(inst.name);
  const std::size_t d = inst.dim();
  LawRecorder rec("glue_continuity", name, opts);
  const std::uint64_t stream = stream_id(name + "/glue_continuity");
  rec.sample(opts.samples, [&](std::uint64_t i) {
    CounterRng rng(opts.seed, stream, i);
    const auto a = random_sphere_point<double>(rng, d);
    const auto b = random_sphere_point<double>(rng, d);
    const auto y = random_join_point<double>(rng, d, d, JoinKind::glue);
    const double eps = std::pow(10.0, -static_cast<double>(rng.uniform_int(10, 14)));
    const double c = std::sqrt(1.0 - eps * eps);
    // Near inl(a) and near inr(b), multiplied on either side.
    Check total;
    auto near = [&](const JoinPoint<double>& x, const JoinPoint<double>& limit) {
      merge_check(total, check_equal(join_mul_syn(x, y, inst, cert).embedded(),
                                     join_mul_syn(limit, y, inst, cert).embedded(),
                                     opts.tolerance, [&] {
                                       return std::vector<Vec<double>>{x.embedded(), y.embedded()};
                                     }));
      merge_check(total, check_equal(join_mul_syn(y, x, inst, cert).embedded(),
                                     join_mul_syn(y, limit, inst, cert).embedded(),
                                     opts.tolerance, [&] {
                                       return std::vector<Vec<double>>{y.embedded(), x.embedded()};
                                     }));
    };
    near(phi(a, b, c, eps), JoinPoint<double>::inl(a, d));
    near(phi(a, b, eps, c), JoinPoint<double>::inr(d, b));
    return total;
  });
  return std::move(rec).finish();
}

// ---- diamond grid suite --------------------------------------------------

inline constexpr std::uint64_t kGridSamples = 128;

/// Quarter-circle points at slopes i / n, i = 0..n.
template <class S>
std::vector<QuarterTurn<S>> quarter_grid(std::size_t n) {
  std::vector<QuarterTurn<S>> out;
  for (std::size_t i = 0; i <= n; ++i) {
    const S t = S(static_cast<long>(i)) / S(static_cast<long>(n));
    out.push_back(quarter_turn_from_slope(t));
  }
  return out;
}

namespace detail {

template <class S>
Check unit_norm_on_grid(const SquareFiller<S>& f, const std::vector<QuarterTurn<S>>& grid,
                        double tolerance) {
  Check total;
  for (const auto& sg : grid) {
    for (const auto& tu : grid) {
      const S n2 = vec::norm2(f(sg, tu).embedded());
      merge_check(total, check_equal(Vec<S>{n2}, Vec<S>{S(1)}, tolerance, [&] {
                    return std::vector<Vec<S>>{f.corners.a_prime, {sg.c, sg.s, tu.c, tu.s}};
                  }));
      if (total.failed) return total;
    }
  }
  return total;
}

template <class S>
Check agree_on_grid(const SquareFiller<S>& f, const SquareFiller<S>& g,
                    const std::vector<QuarterTurn<S>>& grid, double tolerance) {
  Check total;
  for (const auto& sg : grid) {
    for (const auto& tu : grid) {
      merge_check(total, check_equal(f(sg, tu).embedded(), g(sg, tu).embedded(), tolerance, [&] {
                    return std::vector<Vec<S>>{{sg.c, sg.s, tu.c, tu.s}};
                  }));
      if (total.failed) return total;
    }
  }
  return total;
}

template <class S>
std::vector<LawReport> diamond_suite(unsigned level, std::size_t grid_n, const std::string& name,
                                     const SuiteOptions& opts) {
  if (grid_n == 0) throw UsageError("grid must have at least one cell");
  const std::size_t dim = std::size_t{1} << level;
  const auto grid = quarter_grid<S>(grid_n);
  auto random_x = [dim](CounterRng& rng) {
    return SuspPoint<S>(random_sphere_point<S>(rng, dim));
  };
  std::vector<LawReport> out;

  {
    LawRecorder rec("dx_boundary", name, opts);
    const std::uint64_t stream = stream_id(name + "/dx_boundary");
    rec.sample(opts.samples, [&](std::uint64_t i) {
      CounterRng rng(opts.seed, stream, i);
      const auto f = solve_x_diamond(random_x(rng));
      Check total;
      for (const auto& t : grid) merge_check(total, check_boundary(f, t, opts.tolerance));
      return total;
    });
    out.push_back(std::move(rec).finish());
  }
  {
    LawRecorder rec("dx_unit_norm", name, opts);
    const std::uint64_t stream = stream_id(name + "/dx_unit_norm");
    rec.sample(std::min(opts.samples, kGridSamples), [&](std::uint64_t i) {
      CounterRng rng(opts.seed, stream, i);
      return unit_norm_on_grid(solve_x_diamond(random_x(rng)), grid, opts.tolerance);
    });
    out.push_back(std::move(rec).finish());
  }
  {
    LawRecorder rec("dx_pole_reduction", name, opts);
    const Vec<S> one = cd::one<S>(dim);
    const Vec<S> minus = vec::neg(one);
    const auto north = SuspPoint<S>::north(dim - 1);
    const auto south = SuspPoint<S>::south(dim - 1);
    rec.record(agree_on_grid(solve_x_diamond(north),
                             fill_refl_diamond<S>(ReflKind::horizontal, {minus, one, one, one}),
                             grid, opts.tolerance));
    rec.record(agree_on_grid(solve_x_diamond(south),
                             fill_refl_diamond<S>(ReflKind::vertical, {minus, one, minus, minus}),
                             grid, opts.tolerance));
    out.push_back(std::move(rec).finish());
  }
  {
    LawRecorder rec("refl_boundary", name, opts);
    const std::uint64_t stream = stream_id(name + "/refl_boundary");
    rec.sample(std::min(opts.samples, kGridSamples), [&](std::uint64_t i) {
      CounterRng rng(opts.seed, stream, i);
      const auto p = random_sphere_point<S>(rng, dim);
      const auto p2 = random_sphere_point<S>(rng, dim);
      const auto q = random_sphere_point<S>(rng, dim);
      const auto q2 = random_sphere_point<S>(rng, dim);
      Check total;
      for (const auto& f : {fill_refl_diamond<S>(ReflKind::horizontal, {p, q, p2, q}),
                            fill_refl_diamond<S>(ReflKind::vertical, {p, q, p, q2})}) {
        for (const auto& t : grid) merge_check(total, check_boundary(f, t, opts.tolerance));
        merge_check(total, unit_norm_on_grid(f, grid, opts.tolerance));
      }
      return total;
    });
    out.push_back(std::move(rec).finish());
  }
  return out;
}

}  // namespace detail

/// Boundary contracts, the unit-norm identity and the pole reductions of the
/// fillers, evaluated on a (grid_n + 1)^2 parameter grid.
inline std::vector<LawReport> diamond_suite(unsigned level, std::size_t grid_n,
                                            const std::string& name, const SuiteOptions& opts) {
  return with_scalar(opts.mode, [&](auto tag) {
    return detail::diamond_suite<decltype(tag)>(level, grid_n, name, opts);
  });
}

}  // namespace hopfcheck
