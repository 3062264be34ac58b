#pragma once

#include <string>
#include <vector>

#include "hopfcheck/cdalg.hpp"
#include "hopfcheck/joinmul.hpp"
#include "hopfcheck/laws.hpp"
#include "hopfcheck/report.hpp"
#include "hopfcheck/spheremodel.hpp"

namespace hopfcheck {

/// The Hopf construction on G = unit sphere of the level-`level`
/// Cayley-Dickson algebra: join(G, G) -> Susp(G).
struct HopfInstance {
  std::string name;
  unsigned level = 0;

  std::size_t fiber_dim() const { return std::size_t{1} << level; }  // ambient of G
  std::size_t total_dim() const { return 2 * fiber_dim(); }
  std::size_t base_dim() const { return fiber_dim() + 1; }

  /// "S<n> -> S<2n+1> -> S<n+1>"
  std::string sequence() const {
    const std::size_t n = fiber_dim() - 1;
    return "S" + std::to_string(n) + "->S" + std::to_string(2 * n + 1) + "->S" +
           std::to_string(n + 1);
  }
};

/// real | s0, complex | s1, quaternionic | s3.
inline HopfInstance named_hopf(std::string_view name) {
  if (name == "real" || name == "s0") return {"real", 0};
  if (name == "complex" || name == "s1") return {"complex", 1};
  if (name == "quaternionic" || name == "s3") return {"quaternionic", 2};
  throw UsageError("unknown Hopf instance: " + std::string(name));
}

inline std::vector<HopfInstance> all_hopf_instances() {
  return {named_hopf("real"), named_hopf("complex"), named_hopf("quaternionic")};
}

/// inl -> N, inr -> S, glue(u, v) at (c, s) -> (c^2 - s^2, 2cs uv), computed
/// as (|p|^2 - |q|^2, 2 pq) so no square roots are needed.
template <class S>
SuspPoint<S> hopf_map(const JoinPoint<S>& x, const HopfInstance& inst) {
  if (x.left_dim() != inst.fiber_dim() || x.right_dim() != inst.fiber_dim()) {
    throw UsageError("join point dimensions do not match the Hopf instance");
  }
  Vec<S> out{vec::norm2(x.left()) - vec::norm2(x.right())};
  for (const auto& e : cd::mul(x.left(), x.right())) out.push_back(S(2) * e);
  return SuspPoint<S>(std::move(out));
}

/// Fiber translation (p, q) -> (p w, w* q).
template <class S>
JoinPoint<S> fiber_translate(const JoinPoint<S>& x, const Vec<S>& w) {
  return JoinPoint<S>(cd::mul(x.left(), w), cd::mul(cd::conj(w), x.right()));
}

namespace detail {

template <class S>
std::vector<LawReport> fiber_check(const HopfInstance& inst, const SuiteOptions& opts) {
  using Xs = std::vector<Vec<S>>;
  const std::size_t d = inst.fiber_dim();
  const std::string& name = inst.name;
  auto hopf = [inst, d](const Vec<S>& x) { return hopf_map(from_embedded(x, d), inst).coords(); };
  std::vector<LawReport> out;

  // (1) translates stay in the fiber.
  {
    LawRecorder rec("fiber_membership", name, opts);
    auto member = [&](const Vec<S>& x, const Vec<S>& w) {
      const auto t = fiber_translate(from_embedded(x, d), w);
      return check_equal(hopf(t.embedded()), hopf(x), opts.tolerance, [&] { return Xs{x, w}; });
    };
    for (const auto& x : signed_basis<S>(2 * d)) {
      for (const auto& w : signed_basis<S>(d)) rec.record(member(x, w));
    }
    const std::uint64_t stream = stream_id(name + "/fiber_membership");
    rec.sample(opts.samples, [&](std::uint64_t i) {
      CounterRng rng(opts.seed, stream, i);
      const auto x = random_join_point<S>(rng, d, d).embedded();
      return member(x, random_sphere_point<S>(rng, d));
    });
    out.push_back(std::move(rec).finish());
  }

  // (2) any point with the same image is a translate: given glue(u, v, t)
  // and glue(u', v', t) in one fiber, w = u* u' recovers v' = w* v.
  {
    LawRecorder rec("fiber_completeness", name, opts);
    const std::uint64_t stream = stream_id(name + "/fiber_completeness");
    rec.sample(opts.samples, [&](std::uint64_t i) {
      CounterRng rng(opts.seed, stream, i);
      const auto u = random_sphere_point<S>(rng, d);
      const auto v = random_sphere_point<S>(rng, d);
      const auto u2 = random_sphere_point<S>(rng, d);
      const auto t = random_quarter_turn<S>(rng);
      const auto v2 = cd::mul(cd::conj(u2), cd::mul(u, v));
      const auto x = phi(u, v, t);
      const auto x2 = phi(u2, v2, t);
      const auto w = cd::mul(cd::conj(u), u2);
      Check c = check_equal(hopf(x2.embedded()), hopf(x.embedded()), opts.tolerance,
                            [&] { return Xs{x.embedded(), x2.embedded()}; });
      merge_check(c, check_equal(v2, cd::mul(cd::conj(w), v), opts.tolerance,
                                 [&] { return Xs{x.embedded(), x2.embedded(), w}; }));
      return c;
    });
    out.push_back(std::move(rec).finish());
  }

  // (3) |x w1 - x w2|^2 = |w1 - w2|^2, so distinct w give distinct points.
  {
    LawRecorder rec("fiber_separation", name, opts);
    const std::uint64_t stream = stream_id(name + "/fiber_separation");
    rec.sample(opts.samples, [&](std::uint64_t i) {
      CounterRng rng(opts.seed, stream, i);
      const auto x = random_join_point<S>(rng, d, d);
      const auto w1 = random_sphere_point<S>(rng, d);
      const auto w2 = random_sphere_point<S>(rng, d);
      const auto diff = vec::sub(fiber_translate(x, w1).embedded(), fiber_translate(x, w2).embedded());
      return check_equal(Vec<S>{vec::norm2(diff)}, Vec<S>{vec::norm2(vec::sub(w1, w2))},
                         opts.tolerance, [&] { return Xs{x.embedded(), w1, w2}; });
    });
    out.push_back(std::move(rec).finish());
  }

  // (4) the fiber over N is the inl copy of G, over S the inr copy.
  {
    LawRecorder rec("fiber_polar", name, opts);
    auto polar = [&](const JoinPoint<S>& x) {
      const auto view = join_view(x);
      const auto image = hopf_map(x, inst);
      const Vec<S> got{S(image.is_north() ? 1 : 0), S(image.is_south() ? 1 : 0)};
      const Vec<S> want{S(view.kind == JoinKind::inl ? 1 : 0), S(view.kind == JoinKind::inr ? 1 : 0)};
      return check_equal(got, want, opts.tolerance, [&] { return Xs{x.embedded()}; });
    };
    for (const auto& x : signed_basis<S>(2 * d)) rec.record(polar(from_embedded(x, d)));
    const std::uint64_t stream = stream_id(name + "/fiber_polar");
    rec.sample(opts.samples, [&](std::uint64_t i) {
      CounterRng rng(opts.seed, stream, i);
      return polar(random_join_point<S>(rng, d, d, static_cast<JoinKind>(i % 3)));
    });
    out.push_back(std::move(rec).finish());
  }
  return out;
}

template <class S>
std::vector<LawReport> fibration_report(const HopfInstance& inst, const SuiteOptions& opts) {
  const std::size_t d = inst.fiber_dim();
  std::vector<LawReport> parts;
  auto take = [&](std::vector<LawReport> rs) {
    for (auto& r : rs) parts.push_back(std::move(r));
  };

  take(hspace_check(cd_hspace<S>(inst.level, inst.name + "/G"), opts));

  const auto susp = cd_imaginaroid<S>(inst.level, inst.name + "/join");
  auto [assoc, cert] = certify_associative(susp, opts);
  assoc.instance = inst.name + "/G";
  parts.push_back(assoc);
  if (cert) {
    take(unit_law_check(susp, *cert, susp.name, opts));
    parts.push_back(oracle_equivalence_check(susp, *cert, susp.name, opts));
  }
  take(fiber_check<S>(inst, opts));

  {
    using Xs = std::vector<Vec<S>>;
    LawRecorder rec("dimensions", inst.name, opts);
    const std::uint64_t stream = stream_id(inst.name + "/dimensions");
    const std::size_t n = d - 1;
    rec.sample(opts.samples, [&](std::uint64_t i) {
      CounterRng rng(opts.seed, stream, i);
      const auto x = random_join_point<S>(rng, d, d);
      const auto y = hopf_map(x, inst);
      const auto sz = [](std::size_t k) { return S(static_cast<long>(k)); };
      // Ambient sizes (total, base, fiber) and |H(x)|^2.
      return check_equal(
          Vec<S>{sz(x.embedded().size()), sz(y.coords().size()), sz(d), vec::norm2(y.coords())},
          Vec<S>{sz(2 * n + 2), sz(n + 2), sz(n + 1), S(1)}, opts.tolerance,
          [&] { return Xs{x.embedded()}; });
    });
    parts.push_back(std::move(rec).finish());
  }

  LawRecorder summary("fibration_sequence", inst.name, opts);
  std::uint64_t total = 0;
  std::vector<std::string> unmet;
  for (const auto& r : parts) {
    total += r.samples;
    if (!r.met()) unmet.push_back(r.instance + ":" + r.law);
  }
  summary.record_passes(total);
  if (!unmet.empty()) {
    Check c;
    c.failed = true;
    c.witness = Witness{{unmet}, {inst.sequence()}, {}};
    summary.record(std::move(c));
  }
  auto head = std::move(summary).finish();
  parts.push_back(std::move(head));
  return parts;
}

}  // namespace detail

/// Properties (1)-(4) of the Hopf fibers: membership of translates,
/// completeness, separation and the polar fibers.
inline std::vector<LawReport> fiber_check(const HopfInstance& inst, const SuiteOptions& opts) {
  return with_scalar(opts.mode, [&](auto tag) { return detail::fiber_check<decltype(tag)>(inst, opts); });
}

/// Everything behind one fibration sequence: H-space laws on G, unit laws
/// and oracle equivalence on join(G, G), the fiber checks and dimension
/// bookkeeping, followed by a summary report named "fibration_sequence".
inline std::vector<LawReport> fibration_report(const HopfInstance& inst, const SuiteOptions& opts) {
  return with_scalar(opts.mode,
                     [&](auto tag) { return detail::fibration_report<decltype(tag)>(inst, opts); });
}

}  // namespace hopfcheck
