#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hopfcheck/random.hpp"
#include "hopfcheck/report.hpp"
#include "hopfcheck/scalar.hpp"

namespace hopfcheck {

inline constexpr unsigned kDefaultMaxLevel = 5;

/// Cayley-Dickson doubling on raw coefficient vectors of length 2^n,
/// coefficient of e0 = 1 first. A level-(n+1) vector is the pair (a, b)
/// of its two level-n halves, and
///
///   (a, b)(c, d) = (ac - d b*, a* d + c b),   (a, b)* = (a*, -b).
namespace cd {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline unsigned level_of(std::size_t size) {
  if (!is_power_of_two(size)) throw UsageError("coefficient count must be a power of two");
  unsigned level = 0;
  while ((std::size_t{1} << level) < size) ++level;
  return level;
}

namespace detail {

// out = (x^cx)(y^cy) where z^1 means z*. `scratch` must hold n values.
template <class S>
void mul_rec(const S* x, bool cx, const S* y, bool cy, S* out, S* scratch, std::size_t n) {
  if (n == 1) {
    mul_into(out[0], x[0], y[0]);
    return;
  }
  const std::size_t h = n / 2;
  const S* a = x;
  const S* b = x + h;
  const S* c = y;
  const S* d = y + h;
  S* lo = out;
  S* hi = out + h;
  S* tmp = scratch;
  S* deeper = scratch + h;
  // Conjugating (a, b) gives (a*, -b): the second halves pick up a sign.
  const bool neg_b = cx;
  const bool neg_d = cy;

  mul_rec(a, cx, c, cy, lo, deeper, h);       // A C
  mul_rec(d, false, b, true, tmp, deeper, h);  // d b*
  for (std::size_t i = 0; i < h; ++i) {
    if (neg_b != neg_d) {
      lo[i] += tmp[i];
    } else {
      lo[i] -= tmp[i];
    }
  }
  mul_rec(a, !cx, d, false, hi, deeper, h);  // A* d
  if (neg_d) {
    for (std::size_t i = 0; i < h; ++i) negate_in_place(hi[i]);
  }
  mul_rec(c, cy, b, false, tmp, deeper, h);  // C b
  for (std::size_t i = 0; i < h; ++i) {
    if (neg_b) {
      hi[i] -= tmp[i];
    } else {
      hi[i] += tmp[i];
    }
  }
}

template <class S>
void conj_rec(S* x, std::size_t n) {
  if (n == 1) return;
  const std::size_t h = n / 2;
  conj_rec(x, h);
  for (std::size_t i = h; i < n; ++i) negate_in_place(x[i]);
}

}  // namespace detail

template <class S>
Vec<S> mul(std::span<const S> x, std::span<const S> y) {
  if (x.size() != y.size()) throw UsageError("Cayley-Dickson level mismatch");
  if (!is_power_of_two(x.size())) throw UsageError("coefficient count must be a power of two");
  Vec<S> out(x.size(), S(0));
  Vec<S> scratch(x.size(), S(0));
  detail::mul_rec(x.data(), false, y.data(), false, out.data(), scratch.data(), x.size());
  return out;
}

template <class S>
Vec<S> mul(const Vec<S>& x, const Vec<S>& y) {
  return mul(std::span<const S>(x), std::span<const S>(y));
}

template <class S>
Vec<S> conj(Vec<S> x) {
  if (!is_power_of_two(x.size())) throw UsageError("coefficient count must be a power of two");
  detail::conj_rec(x.data(), x.size());
  return x;
}

template <class S>
Vec<S> one(std::size_t dim) {
  return vec::basis<S>(dim, 0);
}

/// (ab)c - a(bc)
template <class S>
Vec<S> associator(const Vec<S>& a, const Vec<S>& b, const Vec<S>& c) {
  return vec::sub(mul(mul(a, b), c), mul(a, mul(b, c)));
}

/// ab - ba
template <class S>
Vec<S> commutator(const Vec<S>& a, const Vec<S>& b) {
  return vec::sub(mul(a, b), mul(b, a));
}

/// e0 coefficient of a a*; the remaining coefficients must vanish.
template <class S>
S norm(const Vec<S>& a) {
  const Vec<S> aa = mul(a, conj(a));
  if constexpr (ScalarTraits<S>::exact) {
    for (std::size_t i = 1; i < aa.size(); ++i) {
      if (!(aa[i] == S(0))) throw InvariantViolation("a a* has a non-real component");
    }
  } else {
    const double scale = 1.0 + std::abs(ScalarTraits<S>::to_double(aa[0]));
    for (std::size_t i = 1; i < aa.size(); ++i) {
      if (std::abs(ScalarTraits<S>::to_double(aa[i])) > 1e-12 * scale) {
        throw InvariantViolation("a a* has a non-real component");
      }
    }
  }
  return aa[0];
}

}  // namespace cd

/// An element of the level-n Cayley-Dickson algebra: 2^n coefficients.
template <class S>
class CDElement {
 public:
  CDElement(unsigned level, Vec<S> coeffs) : level_(level), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != (std::size_t{1} << level_)) {
      throw UsageError("level " + std::to_string(level_) + " element needs " +
                       std::to_string(std::size_t{1} << level_) + " coefficients");
    }
  }
  explicit CDElement(Vec<S> coeffs) : CDElement(cd::level_of(coeffs.size()), std::move(coeffs)) {}

  static CDElement zero(unsigned level) { return CDElement(level, vec::zeros<S>(dim(level))); }
  static CDElement one(unsigned level) { return basis(level, 0); }
  static CDElement basis(unsigned level, std::size_t i, int sign = 1) {
    return CDElement(level, vec::basis<S>(dim(level), i, sign));
  }
  static std::size_t dim(unsigned level) { return std::size_t{1} << level; }

  unsigned level() const { return level_; }
  const Vec<S>& coeffs() const { return coeffs_; }
  const S& operator[](std::size_t i) const { return coeffs_.at(i); }
  bool is_zero() const { return vec::is_zero(coeffs_); }

  friend bool operator==(const CDElement&, const CDElement&) = default;

  friend CDElement operator+(const CDElement& a, const CDElement& b) {
    require_same_level(a, b);
    return CDElement(a.level_, vec::add(a.coeffs_, b.coeffs_));
  }
  friend CDElement operator-(const CDElement& a, const CDElement& b) {
    require_same_level(a, b);
    return CDElement(a.level_, vec::sub(a.coeffs_, b.coeffs_));
  }
  CDElement operator-() const { return CDElement(level_, vec::neg(coeffs_)); }
  friend CDElement operator*(const S& k, const CDElement& a) {
    return CDElement(a.level_, vec::scale(k, a.coeffs_));
  }

  static void require_same_level(const CDElement& a, const CDElement& b) {
    if (a.level_ != b.level_) {
      throw UsageError("Cayley-Dickson level mismatch: " + std::to_string(a.level_) + " vs " +
                       std::to_string(b.level_));
    }
  }

 private:
  unsigned level_;
  Vec<S> coeffs_;
};

template <class S>
CDElement<S> cd_mul(const CDElement<S>& a, const CDElement<S>& b) {
  CDElement<S>::require_same_level(a, b);
  return CDElement<S>(a.level(), cd::mul(a.coeffs(), b.coeffs()));
}

template <class S>
CDElement<S> cd_conj(const CDElement<S>& a) {
  return CDElement<S>(a.level(), cd::conj(a.coeffs()));
}

template <class S>
S cd_norm(const CDElement<S>& a) {
  return cd::norm(a.coeffs());
}

/// a* / |a| with |a| = a a*. Defined whenever the norm is nonzero; whether
/// a a^-1 = 1 actually holds is a property of the level, not guaranteed here.
template <class S>
CDElement<S> cd_inverse(const CDElement<S>& a) {
  const S n = cd_norm(a);
  if (ScalarTraits<S>::negligible(n)) throw DomainError("not invertible: zero norm");
  const S inv = S(1) / n;
  return inv * cd_conj(a);
}

template <class S>
CDElement<S> associator(const CDElement<S>& a, const CDElement<S>& b, const CDElement<S>& c) {
  CDElement<S>::require_same_level(a, b);
  CDElement<S>::require_same_level(a, c);
  return CDElement<S>(a.level(), cd::associator(a.coeffs(), b.coeffs(), c.coeffs()));
}

template <class S>
CDElement<S> commutator(const CDElement<S>& a, const CDElement<S>& b) {
  CDElement<S>::require_same_level(a, b);
  return CDElement<S>(a.level(), cd::commutator(a.coeffs(), b.coeffs()));
}

template <class S>
CDElement<S> random_element(CounterRng& rng, unsigned level, long magnitude = kDefaultMagnitude) {
  return CDElement<S>(level, random_vector<S>(rng, CDElement<S>::dim(level), magnitude));
}

inline std::string cd_algebra_name(unsigned level) {
  static constexpr std::array<std::string_view, 6> names = {
      "real", "complex", "quaternion", "octonion", "sedenion", "trigintaduonion"};
  if (level < names.size()) return std::string(names[level]);
  return "cd-level-" + std::to_string(level);
}

// ---- law suite ------------------------------------------------------------

enum class CDLaw {
  star_unit,
  star_involution,
  star_antihomomorphism,
  realness,
  commutativity,
  associativity,
  alternativity,
  nicely_normed_trace,
  nicely_normed_symmetric,
  nicely_normed_positive,
  norm_multiplicativity,
};

inline constexpr std::array<CDLaw, 11> kAllCDLaws = {
    CDLaw::star_unit,           CDLaw::star_involution,         CDLaw::star_antihomomorphism,
    CDLaw::realness,            CDLaw::commutativity,           CDLaw::associativity,
    CDLaw::alternativity,       CDLaw::nicely_normed_trace,     CDLaw::nicely_normed_symmetric,
    CDLaw::nicely_normed_positive, CDLaw::norm_multiplicativity,
};

inline std::string_view law_name(CDLaw law) {
  switch (law) {
    case CDLaw::star_unit: return "star_unit";
    case CDLaw::star_involution: return "star_involution";
    case CDLaw::star_antihomomorphism: return "star_antihomomorphism";
    case CDLaw::realness: return "realness";
    case CDLaw::commutativity: return "commutativity";
    case CDLaw::associativity: return "associativity";
    case CDLaw::alternativity: return "alternativity";
    case CDLaw::nicely_normed_trace: return "nicely_normed_trace";
    case CDLaw::nicely_normed_symmetric: return "nicely_normed_symmetric";
    case CDLaw::nicely_normed_positive: return "nicely_normed_positive";
    case CDLaw::norm_multiplicativity: return "norm_multiplicativity";
  }
  return "?";
}

inline std::size_t law_arity(CDLaw law) {
  switch (law) {
    case CDLaw::star_unit: return 0;
    case CDLaw::star_involution:
    case CDLaw::realness:
    case CDLaw::nicely_normed_trace:
    case CDLaw::nicely_normed_symmetric:
    case CDLaw::nicely_normed_positive: return 1;
    case CDLaw::star_antihomomorphism:
    case CDLaw::commutativity:
    case CDLaw::alternativity:
    case CDLaw::norm_multiplicativity: return 2;
    case CDLaw::associativity: return 3;
  }
  return 0;
}

/// The property ladder: R is real, C commutative, H associative, O
/// alternative; every level is a nicely normed *-algebra; norms multiply
/// up to the octonions.
inline Expect ladder_expectation(CDLaw law, unsigned level) {
  auto holds_if = [](bool b) { return b ? Expect::holds : Expect::fails; };
  switch (law) {
    case CDLaw::realness: return holds_if(level == 0);
    case CDLaw::commutativity: return holds_if(level <= 1);
    case CDLaw::associativity: return holds_if(level <= 2);
    case CDLaw::alternativity:
    case CDLaw::norm_multiplicativity: return holds_if(level <= 3);
    default: return Expect::holds;
  }
}

/// Evaluates one law on an input tuple (size law_arity(law), or the unit
/// for the nullary law).
template <class S>
Check evaluate_law(CDLaw law, const std::vector<Vec<S>>& xs, double tolerance) {
  auto inputs = [&] { return xs; };
  switch (law) {
    case CDLaw::star_unit: {
      const Vec<S> one = cd::one<S>(xs.at(0).size());
      return check_equal(cd::conj(one), one, tolerance, inputs);
    }
    case CDLaw::star_involution:
      return check_equal(cd::conj(cd::conj(xs[0])), xs[0], tolerance, inputs);
    case CDLaw::star_antihomomorphism:
      return check_equal(cd::conj(cd::mul(xs[0], xs[1])),
                         cd::mul(cd::conj(xs[1]), cd::conj(xs[0])), tolerance, inputs);
    case CDLaw::realness:
      return check_equal(cd::conj(xs[0]), xs[0], tolerance, inputs);
    case CDLaw::commutativity:
      return check_equal(cd::mul(xs[0], xs[1]), cd::mul(xs[1], xs[0]), tolerance, inputs);
    case CDLaw::associativity:
      return check_equal(cd::mul(cd::mul(xs[0], xs[1]), xs[2]),
                         cd::mul(xs[0], cd::mul(xs[1], xs[2])), tolerance, inputs);
    case CDLaw::alternativity: {
      const Vec<S> zero = vec::zeros<S>(xs[0].size());
      Check c = check_equal(cd::associator(xs[0], xs[0], xs[1]), zero, tolerance, inputs);
      merge_check(c, check_equal(cd::associator(xs[0], xs[1], xs[1]), zero, tolerance, inputs));
      return c;
    }
    case CDLaw::nicely_normed_trace: {
      const Vec<S> trace = vec::add(xs[0], cd::conj(xs[0]));
      Vec<S> real_part = vec::zeros<S>(trace.size());
      real_part[0] = trace[0];
      return check_equal(trace, real_part, tolerance, inputs);
    }
    case CDLaw::nicely_normed_symmetric:
      return check_equal(cd::mul(xs[0], cd::conj(xs[0])), cd::mul(cd::conj(xs[0]), xs[0]),
                         tolerance, inputs);
    case CDLaw::nicely_normed_positive: {
      Check c;
      if (vec::is_zero(xs[0])) return c;
      const Vec<S> aa = cd::mul(xs[0], cd::conj(xs[0]));
      Vec<S> real_part = vec::zeros<S>(aa.size());
      real_part[0] = aa[0];
      c = check_equal(aa, real_part, tolerance, inputs);
      if (!(ScalarTraits<S>::sign(aa[0]) > 0)) {
        c.failed = true;
        c.residual = std::max(c.residual, std::abs(ScalarTraits<S>::to_double(aa[0])));
        c.witness = make_witness<S>(xs, aa, real_part);
      }
      return c;
    }
    case CDLaw::norm_multiplicativity: {
      const S lhs = cd::norm(cd::mul(xs[0], xs[1]));
      const S rhs = cd::norm(xs[0]) * cd::norm(xs[1]);
      if constexpr (ScalarTraits<S>::exact) {
        return check_equal(Vec<S>{lhs}, Vec<S>{rhs}, tolerance, inputs);
      } else {
        // Relative comparison: random float inputs have norms up to dim.
        const double scale = std::max(1.0, std::abs(rhs));
        Check c = check_equal(Vec<S>{lhs / scale}, Vec<S>{rhs / scale}, tolerance, inputs);
        return c;
      }
    }
  }
  throw InvariantViolation("unknown law");
}

/// Signed single basis vectors (+e0, -e0, +e1, ...) followed by signed sums
/// of two basis vectors (e_i + e_j, e_i - e_j, -e_i + e_j, -e_i - e_j for i < j).
inline std::vector<Vec<std::int64_t>> structured_candidates(unsigned level,
                                                            std::size_t* single_count = nullptr) {
  const std::size_t dim = std::size_t{1} << level;
  std::vector<Vec<std::int64_t>> out;
  for (std::size_t i = 0; i < dim; ++i) {
    out.push_back(vec::basis<std::int64_t>(dim, i, 1));
    out.push_back(vec::basis<std::int64_t>(dim, i, -1));
  }
  if (single_count != nullptr) *single_count = out.size();
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      for (int si : {1, -1}) {
        for (int sj : {1, -1}) {
          Vec<std::int64_t> v(dim, 0);
          v[i] = si;
          v[j] = sj;
          out.push_back(std::move(v));
        }
      }
    }
  }
  return out;
}

/// Visits k-tuples of candidate indices: first all tuples of single basis
/// vectors, then all remaining tuples, each phase in lexicographic order.
/// Stops when visit returns false or after `budget` tuples.
template <class Visit>
std::uint64_t for_each_structured_tuple(std::size_t total, std::size_t singles, std::size_t arity,
                                        std::uint64_t budget, Visit&& visit) {
  std::uint64_t visited = 0;
  std::vector<std::size_t> idx(arity, 0);
  for (int phase = 0; phase < 2; ++phase) {
    const std::size_t bound = phase == 0 ? singles : total;
    if (bound == 0) continue;
    std::fill(idx.begin(), idx.end(), 0);
    auto advance = [&] {
      for (std::size_t pos = arity; pos-- > 0;) {
        if (++idx[pos] < bound) return true;
        idx[pos] = 0;
      }
      return false;
    };
    do {
      const bool all_single =
          std::all_of(idx.begin(), idx.end(), [&](std::size_t i) { return i < singles; });
      if (phase == 0 || !all_single) {
        if (visited >= budget) return visited;
        ++visited;
        if (!visit(idx)) return visited;
      }
    } while (arity > 0 && advance());
  }
  return visited;
}

struct LawSuiteConfig {
  unsigned max_level = kDefaultMaxLevel;
  long magnitude = kDefaultMagnitude;
  std::uint64_t structured_budget = std::uint64_t{1} << 18;
};

namespace detail {

template <class S>
void sample_cd_law(LawRecorder& rec, CDLaw law, unsigned level, const LawSuiteConfig& cfg) {
  const auto& opts = rec.options();
  const std::uint64_t stream =
      stream_id("laws/" + std::string(law_name(law)) + "/" + std::to_string(level));
  const std::size_t arity = law_arity(law);
  rec.sample(opts.samples, [&](std::uint64_t i) {
    CounterRng rng(opts.seed, stream, i);
    std::vector<Vec<S>> xs;
    for (std::size_t k = 0; k < arity; ++k) {
      xs.push_back(random_vector<S>(rng, CDElement<S>::dim(level), cfg.magnitude));
    }
    return evaluate_law<S>(law, xs, opts.tolerance);
  });
}

}  // namespace detail

/// Runs one law of the ladder: exhaustive structured inputs (exact small
/// integers) first, then random samples in the requested mode unless a
/// structured witness was already found.
inline LawReport check_cd_law(CDLaw law, unsigned level, const SuiteOptions& opts,
                              const LawSuiteConfig& cfg = {}) {
  if (level > cfg.max_level) {
    throw UsageError("level " + std::to_string(level) + " exceeds maximum " +
                     std::to_string(cfg.max_level));
  }
  LawRecorder rec(std::string(law_name(law)), cd_algebra_name(level), opts,
                  ladder_expectation(law, level));
  const std::size_t dim = std::size_t{1} << level;
  if (law_arity(law) == 0) {
    rec.record(evaluate_law<std::int64_t>(law, {cd::one<std::int64_t>(dim)}, 0.0));
    return std::move(rec).finish();
  }
  std::size_t singles = 0;
  const auto candidates = structured_candidates(level, &singles);
  std::vector<Vec<std::int64_t>> xs(law_arity(law));
  for_each_structured_tuple(candidates.size(), singles, law_arity(law), cfg.structured_budget,
                            [&](const std::vector<std::size_t>& idx) {
                              for (std::size_t k = 0; k < idx.size(); ++k) xs[k] = candidates[idx[k]];
                              Check c = evaluate_law<std::int64_t>(law, xs, 0.0);
                              const bool failed = c.failed;
                              rec.record(std::move(c));
                              return !failed;
                            });
  if (!rec.failed()) {
    with_scalar(opts.mode, [&](auto tag) {
      detail::sample_cd_law<decltype(tag)>(rec, law, level, cfg);
      return 0;
    });
  }
  return std::move(rec).finish();
}

/// All ladder laws at one level.
inline std::vector<LawReport> law_suite(unsigned level, const SuiteOptions& opts,
                                        const LawSuiteConfig& cfg = {}) {
  std::vector<LawReport> out;
  for (CDLaw law : kAllCDLaws) out.push_back(check_cd_law(law, level, opts, cfg));
  return out;
}

// ---- zero divisors --------------------------------------------------------

struct ZeroDivisorPair {
  CDElement<std::int64_t> a;
  CDElement<std::int64_t> b;
  Vec<double> a_unit;
  Vec<double> b_unit;
};

/// Exhaustive search over (e_i +- e_j)(e_k +- e_l), i < j, k < l, for a
/// product that is exactly zero. Returns the first hit in lexicographic order.
inline std::optional<ZeroDivisorPair> zero_divisor_search(unsigned level) {
  const std::size_t dim = std::size_t{1} << level;
  std::vector<Vec<std::int64_t>> pairs;
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = i + 1; j < dim; ++j) {
      for (int sj : {1, -1}) {
        Vec<std::int64_t> v(dim, 0);
        v[i] = 1;
        v[j] = sj;
        pairs.push_back(std::move(v));
      }
    }
  }
  for (const auto& a : pairs) {
    for (const auto& b : pairs) {
      if (vec::is_zero(cd::mul(a, b))) {
        auto unit = [](const Vec<std::int64_t>& v) {
          Vec<double> u = vec::convert<double>(v);
          const double n = std::sqrt(vec::norm2(u));
          for (auto& x : u) x /= n;
          return u;
        };
        return ZeroDivisorPair{CDElement<std::int64_t>(level, a), CDElement<std::int64_t>(level, b),
                               unit(a), unit(b)};
      }
    }
  }
  return std::nullopt;
}

/// The search as a law report: "no_zero_divisors" holds up to the octonions.
inline LawReport zero_divisor_report(unsigned level, const SuiteOptions& opts,
                                     const LawSuiteConfig& cfg = {}) {
  if (level > cfg.max_level) {
    throw UsageError("level " + std::to_string(level) + " exceeds maximum " +
                     std::to_string(cfg.max_level));
  }
  LawRecorder rec("no_zero_divisors", cd_algebra_name(level), opts,
                  level <= 3 ? Expect::holds : Expect::fails);
  if (auto zd = zero_divisor_search(level)) {
    Check c;
    c.failed = true;
    const Vec<std::int64_t> product = cd::mul(zd->a.coeffs(), zd->b.coeffs());
    if (opts.mode == Mode::exact) {
      c.witness = make_witness<std::int64_t>({zd->a.coeffs(), zd->b.coeffs()}, product,
                                             vec::zeros<std::int64_t>(product.size()));
    } else {
      const Vec<double> unit_product = cd::mul(zd->a_unit, zd->b_unit);
      c.residual = vec::max_abs_diff(unit_product, vec::zeros<double>(product.size()));
      c.witness = make_witness<double>({zd->a_unit, zd->b_unit}, unit_product,
                                       vec::zeros<double>(product.size()));
    }
    rec.record(std::move(c));
  } else {
    const std::size_t dim = std::size_t{1} << level;
    const std::size_t n = dim * (dim - 1);
    rec.record_passes(n * n);
  }
  return std::move(rec).finish();
}

}  // namespace hopfcheck
