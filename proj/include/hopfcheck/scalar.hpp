#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "hopfcheck/errors.hpp"

namespace hopfcheck {

enum class Mode { exact, floating };

inline std::string_view to_string(Mode m) { return m == Mode::exact ? "exact" : "float"; }

// Zero threshold for classifying float-mode join/suspension views.
inline constexpr double kFloatZero = 1e-12;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Values whose numerator and denominator fit in int64 are
/// kept inline; anything larger lives in an mpq_class. The representation
/// is canonical: a value is inline exactly when it fits.
class Rational {
  __extension__ using i128 = __int128;

 public:
  Rational() = default;
  Rational(long n) {  // NOLINT(google-explicit-constructor)
    if (n == std::numeric_limits<long>::min()) {
      big_ = mpq_class(n);
    } else {
      n_ = n;
    }
  }
  Rational(long num, long den) {
    if (den == 0) throw DomainError("rational with zero denominator");
    i128 n = num;
    i128 d = den;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    const auto g = static_cast<std::int64_t>(std::gcd(static_cast<std::uint64_t>(n < 0 ? -n : n),
                                                      static_cast<std::uint64_t>(d)));
    assign(n / g, d / g);
  }
  explicit Rational(mpq_class q) {
    q.canonicalize();
    assign(std::move(q));
  }

  /// Parses "p" or "p/q".
  static Rational parse(std::string_view text) {
    mpq_class q;
    if (q.set_str(std::string(text), 10) != 0 || q.get_den() == 0) {
      throw UsageError("not a rational: " + std::string(text));
    }
    return Rational(std::move(q));
  }

  mpq_class get() const {
    if (big_) return *big_;
    return mpq_class(mpz_class(static_cast<long>(n_)), mpz_class(static_cast<long>(d_)));
  }
  int sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
  }
  bool is_zero() const { return sign() == 0; }
  double to_double() const {
    if (big_) return big_->get_d();
    return static_cast<double>(n_) / static_cast<double>(d_);
  }
  std::string str() const {
    if (big_) return big_->get_str();
    return d_ == 1 ? std::to_string(n_) : std::to_string(n_) + "/" + std::to_string(d_);
  }

  Rational operator-() const {
    Rational r = *this;
    r.negate();
    return r;
  }
  Rational& operator+=(const Rational& o) { return add(o, false); }
  Rational& operator-=(const Rational& o) { return add(o, true); }
  Rational& operator*=(const Rational& o) {
    set_product(*this, o);
    return *this;
  }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    if (!big_ && !o.big_) {
      Rational inv;
      inv.n_ = o.n_ < 0 ? -o.d_ : o.d_;
      inv.d_ = o.n_ < 0 ? -o.n_ : o.n_;
      return *this *= inv;
    }
    mpq_class r = get();
    r /= o.get();
    assign(std::move(r));
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (a.big_.has_value() != b.big_.has_value()) return false;
    return cmp(*a.big_, *b.big_) == 0;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    int c = 0;
    if (!a.big_ && !b.big_) {
      const i128 l = i128(a.n_) * b.d_;
      const i128 r = i128(b.n_) * a.d_;
      c = (l > r) - (l < r);
    } else {
      c = cmp(a.get(), b.get());
    }
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational abs() const { return sign() < 0 ? -*this : *this; }

  void negate() {
    if (big_) {
      mpq_neg(big_->get_mpq_t(), big_->get_mpq_t());
    } else {
      n_ = -n_;
    }
  }

  void set_product(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
      if (a.n_ == 0 || b.n_ == 0) {
        n_ = 0;
        d_ = 1;
        big_.reset();
        return;
      }
      const std::int64_t g1 = std::gcd(a.n_, b.d_);
      const std::int64_t g2 = std::gcd(b.n_, a.d_);
      assign(i128(a.n_ / g1) * (b.n_ / g2), i128(a.d_ / g2) * (b.d_ / g1));
      return;
    }
    mpq_class r;
    mpq_mul(r.get_mpq_t(), a.get().get_mpq_t(), b.get().get_mpq_t());
    assign(std::move(r));
  }

  /// Exact square root when both numerator and denominator are perfect squares.
  std::optional<Rational> exact_sqrt() const {
    if (sign() < 0) return std::nullopt;
    const mpq_class v = get();
    const mpz_class& n = v.get_num();
    const mpz_class& d = v.get_den();
    if (mpz_perfect_square_p(n.get_mpz_t()) == 0 || mpz_perfect_square_p(d.get_mpz_t()) == 0) {
      return std::nullopt;
    }
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
    return Rational(mpq_class(rn, rd));
  }

 private:
  static constexpr std::int64_t kMax = std::numeric_limits<std::int64_t>::max();

  static bool fits(i128 v) { return v >= -kMax && v <= kMax; }

  static mpz_class to_mpz(i128 v) {
    const bool neg = v < 0;
    __extension__ using u128 = unsigned __int128;
    const u128 u = neg ? -static_cast<u128>(v) : static_cast<u128>(v);
    mpz_class r(static_cast<unsigned long>(u >> 64));
    r <<= 64;
    r += static_cast<unsigned long>(u & ~std::uint64_t{0});
    return neg ? mpz_class(-r) : r;
  }

  // Canonical num/den, den > 0.
  void assign(i128 num, i128 den) {
    if (fits(num) && fits(den)) {
      n_ = static_cast<std::int64_t>(num);
      d_ = static_cast<std::int64_t>(den);
      big_.reset();
    } else {
      big_ = mpq_class(to_mpz(num), to_mpz(den));
    }
  }

  void assign(mpq_class q) {
    const mpz_class& n = q.get_num();
    const mpz_class& d = q.get_den();
    if (n.fits_slong_p() && d.fits_slong_p() && n.get_si() != std::numeric_limits<long>::min()) {
      n_ = n.get_si();
      d_ = d.get_si();
      big_.reset();
    } else {
      big_ = std::move(q);
    }
  }

  Rational& add(const Rational& o, bool subtract) {
    if (!big_ && !o.big_) {
      const i128 c = subtract ? -i128(o.n_) : i128(o.n_);
      const std::int64_t g = std::gcd(d_, o.d_);
      const i128 t = i128(n_) * (o.d_ / g) + c * (d_ / g);
      if (t == 0) {
        n_ = 0;
        d_ = 1;
        return *this;
      }
      const std::int64_t g2 = g == 1 ? 1 : std::gcd(static_cast<std::int64_t>(t % g), g);
      assign(t / g2, i128(d_ / g) * (o.d_ / g2));
      return *this;
    }
    mpq_class r = get();
    if (subtract) {
      r -= o.get();
    } else {
      r += o.get();
    }
    assign(std::move(r));
    return *this;
  }

  std::int64_t n_ = 0;
  std::int64_t d_ = 1;
  std::optional<mpq_class> big_;
};

// In-place kernels; the generic versions fall back to value arithmetic.
template <class S>
void mul_into(S& out, const S& a, const S& b) {
  out = a * b;
}
inline void mul_into(Rational& out, const Rational& a, const Rational& b) { out.set_product(a, b); }

template <class S>
void negate_in_place(S& x) {
  x = -x;
}
inline void negate_in_place(Rational& x) { x.negate(); }

/// Exact quadratic surd coeff * sqrt(radicand), radicand > 0.
///
/// Closed under multiplication and division. Addition requires the two
/// radicands to differ by a rational square factor; otherwise the sum has
/// no representation here and DomainError is thrown. The join multiplication
/// only ever adds terms sharing a radicand class, so products of rational
/// join points stay exact.
class Surd {
 public:
  Surd() : coeff_(0), rad_(1) {}
  Surd(long n) : coeff_(n), rad_(1) {}               // NOLINT(google-explicit-constructor)
  Surd(Rational q) : coeff_(std::move(q)), rad_(1) {}  // NOLINT(google-explicit-constructor)
  Surd(Rational coeff, Rational radicand) : coeff_(std::move(coeff)), rad_(std::move(radicand)) {
    if (rad_.sign() <= 0) throw DomainError("surd radicand must be positive");
    normalize();
  }

  static Surd sqrt_of(const Rational& x) {
    if (x.sign() < 0) throw DomainError("square root of negative rational");
    if (x.is_zero()) return Surd();
    return Surd(Rational(1), x);
  }

  const Rational& coeff() const { return coeff_; }
  const Rational& radicand() const { return rad_; }
  int sign() const { return coeff_.sign(); }
  bool is_zero() const { return coeff_.is_zero(); }
  bool is_rational() const { return rad_ == Rational(1); }
  std::optional<Rational> to_rational() const {
    if (is_rational()) return coeff_;
    return std::nullopt;
  }
  double to_double() const { return coeff_.to_double() * std::sqrt(rad_.to_double()); }
  std::string str() const {
    if (is_rational()) return coeff_.str();
    return coeff_.str() + "*sqrt(" + rad_.str() + ")";
  }

  Surd operator-() const { return Surd(-coeff_, rad_, Raw{}); }
  Surd& operator*=(const Surd& o) {
    coeff_ *= o.coeff_;
    if (!o.is_rational()) rad_ *= o.rad_;
    normalize();
    return *this;
  }
  Surd& operator/=(const Surd& o) {
    if (o.is_zero()) throw DomainError("division by zero");
    coeff_ /= o.coeff_;
    if (!o.is_rational()) rad_ /= o.rad_;
    normalize();
    return *this;
  }
  Surd& operator+=(const Surd& o) { return add(o, false); }
  Surd& operator-=(const Surd& o) { return add(o, true); }
  friend Surd operator+(Surd a, const Surd& b) { return a += b; }
  friend Surd operator-(Surd a, const Surd& b) { return a -= b; }
  friend Surd operator*(Surd a, const Surd& b) { return a *= b; }
  friend Surd operator/(Surd a, const Surd& b) { return a /= b; }

  friend bool operator==(const Surd& a, const Surd& b) {
    if (a.sign() != b.sign()) return false;
    if (a.is_zero()) return true;
    if (a.rad_ == b.rad_) return a.coeff_ == b.coeff_;
    return a.coeff_ * a.coeff_ * a.rad_ == b.coeff_ * b.coeff_ * b.rad_;
  }
  friend std::strong_ordering operator<=>(const Surd& a, const Surd& b) {
    if (a.sign() != b.sign()) return a.sign() <=> b.sign();
    if (a == b) return std::strong_ordering::equal;
    const Rational sa = a.coeff_ * a.coeff_ * a.rad_;
    const Rational sb = b.coeff_ * b.coeff_ * b.rad_;
    // Same sign: compare magnitudes, flipped for negatives.
    return a.sign() > 0 ? sa <=> sb : sb <=> sa;
  }

 private:
  struct Raw {};
  Surd(Rational c, Rational r, Raw) : coeff_(std::move(c)), rad_(std::move(r)) {}

  void normalize() {
    if (coeff_.is_zero()) {
      rad_ = Rational(1);
      return;
    }
    if (is_rational()) return;
    if (auto root = rad_.exact_sqrt()) {
      coeff_ *= *root;
      rad_ = Rational(1);
    }
  }

  Surd& add(const Surd& o, bool subtract) {
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = subtract ? -o : o;
      return *this;
    }
    Rational scale(1);
    if (rad_ != o.rad_) {
      auto ratio = (o.rad_ / rad_).exact_sqrt();
      if (!ratio) {
        throw DomainError("sum of incompatible surds " + str() + " and " + o.str());
      }
      scale = *ratio;
    }
    if (subtract) {
      coeff_ -= o.coeff_ * scale;
    } else {
      coeff_ += o.coeff_ * scale;
    }
    normalize();
    return *this;
  }

  Rational coeff_;
  Rational rad_;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  using root_type = Surd;
  static constexpr bool exact = true;
  static constexpr Mode mode = Mode::exact;
  static double to_double(const Rational& x) { return x.to_double(); }
  static std::string to_string(const Rational& x) { return x.str(); }
  static bool negligible(const Rational& x) { return x.is_zero(); }
  static int sign(const Rational& x) { return x.sign(); }
  static Surd sqrt(const Rational& x) { return Surd::sqrt_of(x); }
  static Surd to_root(const Rational& x) { return Surd(x); }
  static Rational from_root(const Surd& x) {
    auto q = x.to_rational();
    if (!q) throw InvariantViolation("expected a rational value, got " + x.str());
    return *q;
  }
};

template <>
struct ScalarTraits<Surd> {
  using root_type = Surd;
  static constexpr bool exact = true;
  static constexpr Mode mode = Mode::exact;
  static double to_double(const Surd& x) { return x.to_double(); }
  static std::string to_string(const Surd& x) { return x.str(); }
  static bool negligible(const Surd& x) { return x.is_zero(); }
  static int sign(const Surd& x) { return x.sign(); }
  static Surd sqrt(const Surd& x) {
    auto q = x.to_rational();
    if (!q) throw DomainError("fourth roots are not representable: sqrt(" + x.str() + ")");
    return Surd::sqrt_of(*q);
  }
  static Surd to_root(const Surd& x) { return x; }
  static Surd from_root(const Surd& x) { return x; }
};

template <>
struct ScalarTraits<double> {
  using root_type = double;
  static constexpr bool exact = false;
  static constexpr Mode mode = Mode::floating;
  static double to_double(double x) { return x; }
  static std::string to_string(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
  static bool negligible(double x) { return std::abs(x) < kFloatZero; }
  static int sign(double x) { return (x > 0) - (x < 0); }
  static double sqrt(double x) { return std::sqrt(x < 0 ? 0.0 : x); }
  static double to_root(double x) { return x; }
  static double from_root(double x) { return x; }
};

// Small-integer exact arithmetic for basis-element searches.
template <>
struct ScalarTraits<std::int64_t> {
  using root_type = double;
  static constexpr bool exact = true;
  static constexpr Mode mode = Mode::exact;
  static double to_double(std::int64_t x) { return static_cast<double>(x); }
  static std::string to_string(std::int64_t x) { return std::to_string(x); }
  static bool negligible(std::int64_t x) { return x == 0; }
  static int sign(std::int64_t x) { return (x > 0) - (x < 0); }
};

template <class S>
concept Scalar = requires(S a, S b) {
  { a + b } -> std::convertible_to<S>;
  { a - b } -> std::convertible_to<S>;
  { a * b } -> std::convertible_to<S>;
  { -a } -> std::convertible_to<S>;
  { a == b } -> std::convertible_to<bool>;
  S(0);
  S(1);
  ScalarTraits<S>::exact;
};

template <class S>
using RootOf = typename ScalarTraits<S>::root_type;

template <class S>
using Vec = std::vector<S>;

// ---- coordinate-vector helpers -------------------------------------------

namespace vec {

template <class S>
Vec<S> zeros(std::size_t n) {
  return Vec<S>(n, S(0));
}

template <class S>
Vec<S> basis(std::size_t n, std::size_t i, int sign = 1) {
  Vec<S> v(n, S(0));
  v.at(i) = S(sign);
  return v;
}

template <class S>
Vec<S> add(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) throw UsageError("vector size mismatch");
  Vec<S> r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

template <class S>
Vec<S> sub(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) throw UsageError("vector size mismatch");
  Vec<S> r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

template <class S>
Vec<S> neg(const Vec<S>& a) {
  Vec<S> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(-x);
  return r;
}

template <class S>
Vec<S> scale(const S& k, const Vec<S>& a) {
  Vec<S> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(k * x);
  return r;
}

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) throw UsageError("vector size mismatch");
  S s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class S>
S norm2(const Vec<S>& a) {
  return dot(a, a);
}

template <class S>
bool is_zero(const Vec<S>& a) {
  for (const auto& x : a) {
    if (!ScalarTraits<S>::negligible(x)) return false;
  }
  return true;
}

template <class S>
Vec<S> concat(const Vec<S>& a, const Vec<S>& b) {
  Vec<S> r(a);
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

template <class S>
std::pair<Vec<S>, Vec<S>> split(const Vec<S>& a, std::size_t left) {
  if (left > a.size()) throw UsageError("split point beyond vector");
  return {Vec<S>(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(left)),
          Vec<S>(a.begin() + static_cast<std::ptrdiff_t>(left), a.end())};
}

template <class To, class From>
Vec<To> convert(const Vec<From>& a) {
  Vec<To> r;
  r.reserve(a.size());
  for (const auto& x : a) {
    if constexpr (std::is_same_v<To, double>) {
      r.push_back(ScalarTraits<From>::to_double(x));
    } else if constexpr (std::is_same_v<From, Surd> && std::is_same_v<To, Rational>) {
      r.push_back(ScalarTraits<Rational>::from_root(x));
    } else {
      r.push_back(To(x));
    }
  }
  return r;
}

/// max_i |a_i - b_i| as a double; +inf on size mismatch.
template <class S>
double max_abs_diff(const Vec<S>& a, const Vec<S>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if constexpr (ScalarTraits<S>::exact) {
      if (a[i] == b[i]) continue;
    }
    const double d = std::abs(ScalarTraits<S>::to_double(a[i] - b[i]));
    // An exact mismatch must never report residual 0.
    m = std::max(m, ScalarTraits<S>::exact && d == 0.0 ? std::numeric_limits<double>::min() : d);
  }
  return m;
}

template <class S>
bool exactly_equal(const Vec<S>& a, const Vec<S>& b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin());
}

template <class S>
std::vector<std::string> to_strings(const Vec<S>& a) {
  std::vector<std::string> r;
  r.reserve(a.size());
  for (const auto& x : a) r.push_back(ScalarTraits<S>::to_string(x));
  return r;
}

}  // namespace vec

}  // namespace hopfcheck
