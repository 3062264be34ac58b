#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hopfcheck/cdalg.hpp"
#include "hopfcheck/random.hpp"
#include "hopfcheck/report.hpp"
#include "hopfcheck/spheremodel.hpp"

namespace hopfcheck {

template <class S>
using UnaryOp = std::function<Vec<S>(const Vec<S>&)>;
template <class S>
using BinaryOp = std::function<Vec<S>(const Vec<S>&, const Vec<S>&)>;
template <class S>
using PointSampler = std::function<Vec<S>(CounterRng&)>;

inline constexpr std::uint64_t kInstanceStructuredBudget = 4096;

/// Where law inputs come from: a fixed list enumerated first (all tuples,
/// lexicographically, up to a budget), then seeded random draws.
template <class S>
struct InputSpace {
  std::vector<Vec<S>> structured;
  PointSampler<S> sample;
};

/// +e0, -e0, +e1, -e1, ...
template <class S>
std::vector<Vec<S>> signed_basis(std::size_t dim) {
  std::vector<Vec<S>> out;
  for (std::size_t i = 0; i < dim; ++i) {
    out.push_back(vec::basis<S>(dim, i));
    out.push_back(vec::basis<S>(dim, i, -1));
  }
  return out;
}

template <class S>
InputSpace<S> sphere_inputs(std::size_t dim) {
  if (dim == 0) return {{}, {}};
  return {signed_basis<S>(dim), [dim](CounterRng& rng) { return random_sphere_point<S>(rng, dim); }};
}

/// An equation lhs(xs) = rhs(xs) in `arity` variables.
template <class S>
struct Identity {
  std::string law;
  std::size_t arity;
  std::function<std::pair<Vec<S>, Vec<S>>(const std::vector<Vec<S>>&)> sides;
  Expect expected = Expect::holds;
};

template <class S>
LawReport check_identity(const Identity<S>& id, const std::string& instance,
                         const InputSpace<S>& in, const SuiteOptions& opts,
                         std::uint64_t budget = kInstanceStructuredBudget) {
  LawRecorder rec(id.law, instance, opts, id.expected);
  auto eval = [&](const std::vector<Vec<S>>& xs) {
    auto [lhs, rhs] = id.sides(xs);
    return check_equal(lhs, rhs, opts.tolerance, [&] { return xs; });
  };
  if (id.arity == 0) {
    rec.record(eval({}));
    return std::move(rec).finish();
  }
  if (!in.sample) return std::move(rec).finish();  // empty carrier: vacuous

  const std::size_t n = in.structured.size();
  std::vector<std::size_t> idx(id.arity, 0);
  std::vector<Vec<S>> xs(id.arity);
  for (std::uint64_t visited = 0; n > 0 && visited < budget && !rec.failed(); ++visited) {
    for (std::size_t k = 0; k < id.arity; ++k) xs[k] = in.structured[idx[k]];
    rec.record(eval(xs));
    std::size_t k = id.arity;
    while (k > 0 && ++idx[k - 1] == n) idx[--k] = 0;
    if (k == 0) break;
  }
  if (!rec.failed()) {
    const std::uint64_t stream = stream_id(instance + "/" + id.law);
    rec.sample(opts.samples, [&](std::uint64_t i) {
      CounterRng rng(opts.seed, stream, i);
      std::vector<Vec<S>> draw;
      for (std::size_t k = 0; k < id.arity; ++k) draw.push_back(in.sample(rng));
      return eval(draw);
    });
  }
  return std::move(rec).finish();
}

// ---- spheroids -----------------------------------------------------------

/// A Cayley-Dickson spheroid on the unit sphere of R^dim.
template <class S>
struct SpheroidInstance {
  std::string name;
  std::size_t dim = 0;
  Vec<S> unit;
  BinaryOp<S> mul;
  UnaryOp<S> conj;
  UnaryOp<S> neg;
};

/// The sign group {+1, -1} with trivial conjugation.
template <class S>
SpheroidInstance<S> sign_spheroid() {
  return {"sign",
          1,
          {S(1)},
          [](const Vec<S>& x, const Vec<S>& y) { return Vec<S>{x.at(0) * y.at(0)}; },
          [](const Vec<S>& x) { return x; },
          [](const Vec<S>& x) { return vec::neg(x); }};
}

inline constexpr std::array<std::string_view, 6> kSpheroidLaws = {
    "conj_unit", "conj_neg", "involutions", "neg_right", "conj_antihom", "conj_left_inverse"};
inline constexpr std::array<std::string_view, 2> kSpheroidDerivedLaws = {"conj_right_inverse",
                                                                         "neg_left"};

template <class S>
std::vector<Identity<S>> spheroid_identities(const SpheroidInstance<S>& m) {
  using Xs = std::vector<Vec<S>>;
  using Sides = std::pair<Vec<S>, Vec<S>>;
  std::vector<Identity<S>> ids;
  ids.push_back({"conj_unit", 0, [m](const Xs&) { return Sides{m.conj(m.unit), m.unit}; }});
  ids.push_back({"conj_neg", 1, [m](const Xs& x) {
                   return Sides{m.conj(m.neg(x[0])), m.neg(m.conj(x[0]))};
                 }});
  ids.push_back({"involutions", 1, [m](const Xs& x) {
                   return Sides{vec::concat(m.neg(m.neg(x[0])), m.conj(m.conj(x[0]))),
                                vec::concat(x[0], x[0])};
                 }});
  ids.push_back({"neg_right", 2, [m](const Xs& x) {
                   return Sides{m.mul(x[0], m.neg(x[1])), m.neg(m.mul(x[0], x[1]))};
                 }});
  ids.push_back({"conj_antihom", 2, [m](const Xs& x) {
                   return Sides{m.conj(m.mul(x[0], x[1])), m.mul(m.conj(x[1]), m.conj(x[0]))};
                 }});
  ids.push_back({"conj_left_inverse", 1, [m](const Xs& x) {
                   return Sides{m.mul(m.conj(x[0]), x[0]), m.unit};
                 }});
  ids.push_back({"conj_right_inverse", 1, [m](const Xs& x) {
                   return Sides{m.mul(x[0], m.conj(x[0])), m.unit};
                 }});
  ids.push_back({"neg_left", 2, [m](const Xs& x) {
                   return Sides{m.mul(m.neg(x[0]), x[1]), m.neg(m.mul(x[0], x[1]))};
                 }});
  ids.push_back({"closure", 2, [m](const Xs& x) {
                   return Sides{Vec<S>{vec::norm2(m.mul(x[0], x[1]))}, Vec<S>{S(1)}};
                 }});
  return ids;
}

/// The six spheroid laws, the two laws derived from them, and closure of the
/// multiplication on the unit sphere.
template <class S>
std::vector<LawReport> spheroid_check(const SpheroidInstance<S>& m, const SuiteOptions& opts) {
  std::vector<LawReport> out;
  const auto in = sphere_inputs<S>(m.dim);
  for (const auto& id : spheroid_identities(m)) out.push_back(check_identity(id, m.name, in, opts));
  return out;
}

// ---- imaginaroids --------------------------------------------------------

/// A type A (the unit sphere of R^(2^level - 1), negation the antipode)
/// with a multiplication on its suspension, modelled as the unit sphere of
/// R^(2^level) with poles at +-e0.
template <class S>
struct ImaginaroidInstance {
  std::string name;
  unsigned level = 0;
  BinaryOp<S> mul;
  BinaryOp<RootOf<S>> root_mul;  // the same product on root-extended scalars
  Expect associativity = Expect::holds;

  std::size_t dim() const { return std::size_t{1} << level; }
  std::size_t base_dim() const { return dim() - 1; }
};

/// Level-`level` Cayley-Dickson multiplication on the suspension of the
/// imaginary unit sphere. Level 1 is instance (i), level 2 instance (ii);
/// level 3 is the octonion negative control.
template <class S>
ImaginaroidInstance<S> cd_imaginaroid(unsigned level, std::string name = {}) {
  if (level > 3) throw UsageError("imaginaroid instances exist up to level 3");
  if (name.empty()) name = cd_algebra_name(level);
  return {std::move(name), level,
          [](const Vec<S>& x, const Vec<S>& y) { return cd::mul(x, y); },
          [](const Vec<RootOf<S>>& x, const Vec<RootOf<S>>& y) { return cd::mul(x, y); },
          level <= 2 ? Expect::holds : Expect::fails};
}

/// Resolves "real" (empty A, level 0), "i", "ii" and the negative control "o".
template <class S>
ImaginaroidInstance<S> named_imaginaroid(std::string_view name) {
  if (name == "real") return cd_imaginaroid<S>(0, "real");
  if (name == "i") return cd_imaginaroid<S>(1, "i");
  if (name == "ii") return cd_imaginaroid<S>(2, "ii");
  if (name == "o") return cd_imaginaroid<S>(3, "o");
  throw UsageError("unknown imaginaroid instance: " + std::string(name));
}

/// The spheroid induced on the suspension: unit N, negation and
/// conjugation from the suspension structure.
template <class S>
SpheroidInstance<S> induced_spheroid(const ImaginaroidInstance<S>& inst) {
  return {inst.name + "/spheroid",
          inst.dim(),
          SuspPoint<S>::north(inst.base_dim()).coords(),
          inst.mul,
          [](const Vec<S>& x) { return susp_conj(SuspPoint<S>(x)).coords(); },
          [](const Vec<S>& x) { return susp_neg(SuspPoint<S>(x)).coords(); }};
}

template <class S>
std::vector<LawReport> imaginaroid_check(const ImaginaroidInstance<S>& inst,
                                         const SuiteOptions& opts) {
  using Xs = std::vector<Vec<S>>;
  using Sides = std::pair<Vec<S>, Vec<S>>;
  const Vec<S> one = SuspPoint<S>::north(inst.base_dim()).coords();
  auto neg = [](const Vec<S>& x) { return susp_neg(SuspPoint<S>(x)).coords(); };
  auto conj = [](const Vec<S>& x) { return susp_conj(SuspPoint<S>(x)).coords(); };
  const auto& mul = inst.mul;

  std::vector<LawReport> out;
  out.push_back(check_identity<S>(
      {"base_neg_involution", 1,
       [](const Xs& a) { return Sides{vec::neg(vec::neg(a[0])), a[0]}; }},
      inst.name, sphere_inputs<S>(inst.base_dim()), opts));

  const auto in = sphere_inputs<S>(inst.dim());
  const std::vector<Identity<S>> ids = {
      {"left_unit", 1, [=](const Xs& x) { return Sides{mul(one, x[0]), x[0]}; }},
      {"right_unit", 1, [=](const Xs& x) { return Sides{mul(x[0], one), x[0]}; }},
      {"neg_right", 2,
       [=](const Xs& x) { return Sides{mul(x[0], neg(x[1])), neg(mul(x[0], x[1]))}; }},
      {"conj_right_inverse", 1, [=](const Xs& x) { return Sides{mul(x[0], conj(x[0])), one}; }},
      {"conj_antihom", 2,
       [=](const Xs& x) { return Sides{conj(mul(x[0], x[1])), mul(conj(x[1]), conj(x[0]))}; }},
  };
  for (const auto& id : ids) out.push_back(check_identity(id, inst.name, in, opts));
  for (auto& r : spheroid_check(induced_spheroid(inst), opts)) out.push_back(std::move(r));
  return out;
}

/// (xy)z = x(yz) on the suspension.
template <class S>
LawReport assoc_check(const ImaginaroidInstance<S>& inst, const SuiteOptions& opts) {
  using Xs = std::vector<Vec<S>>;
  const auto& mul = inst.mul;
  return check_identity<S>({"associativity", 3,
                            [mul](const Xs& x) {
                              return std::pair{mul(mul(x[0], x[1]), x[2]),
                                               mul(x[0], mul(x[1], x[2]))};
                            },
                            inst.associativity},
                           inst.name, sphere_inputs<S>(inst.dim()), opts);
}

/// Proof token that an instance's multiplication passed assoc_check, or was
/// explicitly assumed associative for a negative control.
class AssocCertificate {
 public:
  static AssocCertificate assume(std::string instance) {
    return AssocCertificate(std::move(instance), true);
  }

  const std::string& instance() const { return instance_; }
  bool assumed() const { return assumed_; }

  void require(const std::string& instance) const {
    if (instance != instance_) {
      throw PreconditionError("associativity of " + instance + " has not been verified");
    }
  }

  template <class S>
  friend std::pair<LawReport, std::optional<AssocCertificate>> certify_associative(
      const ImaginaroidInstance<S>& inst, const SuiteOptions& opts);

 private:
  AssocCertificate(std::string instance, bool assumed)
      : instance_(std::move(instance)), assumed_(assumed) {}

  std::string instance_;
  bool assumed_;
};

template <class S>
std::pair<LawReport, std::optional<AssocCertificate>> certify_associative(
    const ImaginaroidInstance<S>& inst, const SuiteOptions& opts) {
  LawReport r = assoc_check(inst, opts);
  std::optional<AssocCertificate> cert;
  if (r.holds()) cert = AssocCertificate(inst.name, false);
  return {std::move(r), std::move(cert)};
}

/// The four f/g identities for one tuple, as a single comparison:
/// f(-1) = ac, f(xh) = -db*, g(1) = cb, g(xh) = a*d with
/// f(x) = -(ac)x, g(y) = (cy)b, xh = ((c* a*) d) b*.
template <class S>
std::pair<Vec<S>, Vec<S>> fg_sides(const ImaginaroidInstance<S>& inst, const Vec<S>& a,
                                   const Vec<S>& b, const Vec<S>& c, const Vec<S>& d) {
  const auto& mul = inst.mul;
  auto conj = [](const Vec<S>& x) { return cd::conj(x); };
  const Vec<S> one = cd::one<S>(inst.dim());
  const Vec<S> ac = mul(a, c);
  auto f = [&](const Vec<S>& x) { return vec::neg(mul(ac, x)); };
  auto g = [&](const Vec<S>& y) { return mul(mul(c, y), b); };
  const Vec<S> xh = mul(mul(mul(conj(c), conj(a)), d), conj(b));
  const Vec<S> lhs = vec::concat(vec::concat(f(vec::neg(one)), f(xh)), vec::concat(g(one), g(xh)));
  const Vec<S> rhs = vec::concat(vec::concat(ac, vec::neg(mul(d, conj(b)))),
                                 vec::concat(mul(c, b), mul(conj(a), d)));
  return {lhs, rhs};
}

template <class S>
LawReport fg_lemma_check(const Vec<S>& a, const Vec<S>& b, const Vec<S>& c, const Vec<S>& d,
                         const ImaginaroidInstance<S>& inst, const AssocCertificate& cert,
                         const SuiteOptions& opts) {
  cert.require(inst.name);
  LawRecorder rec("fg_lemma", inst.name, opts, inst.associativity);
  auto [lhs, rhs] = fg_sides(inst, a, b, c, d);
  rec.record(check_equal(lhs, rhs, opts.tolerance, [&] { return std::vector<Vec<S>>{a, b, c, d}; }));
  return std::move(rec).finish();
}

template <class S>
LawReport fg_lemma_suite(const ImaginaroidInstance<S>& inst, const AssocCertificate& cert,
                         const SuiteOptions& opts) {
  cert.require(inst.name);
  using Xs = std::vector<Vec<S>>;
  return check_identity<S>(
      {"fg_lemma", 4, [inst](const Xs& x) { return fg_sides(inst, x[0], x[1], x[2], x[3]); },
       inst.associativity},
      inst.name, sphere_inputs<S>(inst.dim()), opts);
}

// ---- H-spaces ------------------------------------------------------------

/// A multiplication on a sphere with unit and a candidate two-sided inverse
/// for translations.
template <class S>
struct HSpace {
  std::string name;
  std::size_t dim = 0;
  Vec<S> unit;
  BinaryOp<S> mul;
  UnaryOp<S> inverse;
  InputSpace<S> inputs;
  Expect associativity = Expect::holds;
};

template <class S>
HSpace<S> cd_hspace(unsigned level, std::string name) {
  const std::size_t dim = std::size_t{1} << level;
  return {std::move(name),
          dim,
          cd::one<S>(dim),
          [](const Vec<S>& x, const Vec<S>& y) { return cd::mul(x, y); },
          [](const Vec<S>& x) { return cd::conj(x); },
          sphere_inputs<S>(dim),
          level <= 2 ? Expect::holds : Expect::fails};
}

/// Unit laws and the four translation inverse identities.
template <class S>
std::vector<LawReport> hspace_check(const HSpace<S>& h, const SuiteOptions& opts) {
  using Xs = std::vector<Vec<S>>;
  using Sides = std::pair<Vec<S>, Vec<S>>;
  const auto& mul = h.mul;
  const auto& inv = h.inverse;
  const Vec<S> e = h.unit;
  const std::vector<Identity<S>> ids = {
      {"left_unit", 1, [=](const Xs& x) { return Sides{mul(e, x[0]), x[0]}; }},
      {"right_unit", 1, [=](const Xs& x) { return Sides{mul(x[0], e), x[0]}; }},
      {"left_translation_retraction", 2,
       [=](const Xs& x) { return Sides{mul(inv(x[0]), mul(x[0], x[1])), x[1]}; }},
      {"right_translation_retraction", 2,
       [=](const Xs& x) { return Sides{mul(mul(x[1], x[0]), inv(x[0])), x[1]}; }},
      {"left_translation_section", 2,
       [=](const Xs& x) { return Sides{mul(x[0], mul(inv(x[0]), x[1])), x[1]}; }},
      {"right_translation_section", 2,
       [=](const Xs& x) { return Sides{mul(mul(x[1], inv(x[0])), x[0]), x[1]}; }},
  };
  std::vector<LawReport> out;
  for (const auto& id : ids) out.push_back(check_identity(id, h.name, h.inputs, opts));
  return out;
}

template <class S>
LawReport hspace_associativity(const HSpace<S>& h, const SuiteOptions& opts) {
  using Xs = std::vector<Vec<S>>;
  const auto& mul = h.mul;
  return check_identity<S>({"associativity", 3,
                            [mul](const Xs& x) {
                              return std::pair{mul(mul(x[0], x[1]), x[2]),
                                               mul(x[0], mul(x[1], x[2]))};
                            },
                            h.associativity},
                           h.name, h.inputs, opts);
}

}  // namespace hopfcheck
