#include <gtest/gtest.h>

#include "hopfcheck/joinmul.hpp"

using namespace hopfcheck;

namespace {

using Q = Rational;
using JP = JoinPoint<Q>;

SuiteOptions opts(std::uint64_t samples = 200) {
  SuiteOptions o;
  o.samples = samples;
  o.seed = 17;
  return o;
}

// The doubling formula applied literally, conjugates materialised.
Vec<Q> oracle_conj(const Vec<Q>& x) {
  if (x.size() == 1) return x;
  auto [a, b] = vec::split(x, x.size() / 2);
  return vec::concat(oracle_conj(a), vec::neg(b));
}

Vec<Q> oracle_mul(const Vec<Q>& x, const Vec<Q>& y) {
  if (x.size() == 1) return {x[0] * y[0]};
  auto [a, b] = vec::split(x, x.size() / 2);
  auto [c, d] = vec::split(y, y.size() / 2);
  return vec::concat(vec::sub(oracle_mul(a, c), oracle_mul(d, oracle_conj(b))),
                     vec::add(oracle_mul(oracle_conj(a), d), oracle_mul(c, b)));
}

struct Fixture {
  ImaginaroidInstance<Q> inst;
  AssocCertificate cert;
};

Fixture make(unsigned level) {
  auto inst = cd_imaginaroid<Q>(level);
  auto cert = *certify_associative(inst, opts(50)).second;
  return {std::move(inst), std::move(cert)};
}

Vec<Q> rp(std::size_t dim, std::uint64_t i, std::uint64_t stream) {
  CounterRng rng(3, stream, i);
  return random_sphere_point<Q>(rng, dim);
}

QuarterTurn<Q> rt(std::uint64_t i) {
  CounterRng rng(3, 77, i);
  return random_quarter_turn<Q>(rng);
}

}  // namespace

TEST(JoinMulSyn, PointConstructorTable) {
  const auto [inst, cert] = make(2);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto a = rp(4, i, 1), b = rp(4, i, 2), c = rp(4, i, 3), d = rp(4, i, 4);
    EXPECT_EQ(join_mul_syn(JP::inl(a, 4), JP::inl(c, 4), inst, cert), JP::inl(oracle_mul(a, c), 4));
    EXPECT_EQ(join_mul_syn(JP::inl(a, 4), JP::inr(4, d), inst, cert),
              JP::inr(4, oracle_mul(oracle_conj(a), d)));
    EXPECT_EQ(join_mul_syn(JP::inr(4, b), JP::inl(c, 4), inst, cert), JP::inr(4, oracle_mul(c, b)));
    EXPECT_EQ(join_mul_syn(JP::inr(4, b), JP::inr(4, d), inst, cert),
              JP::inl(vec::neg(oracle_mul(d, oracle_conj(b))), 4));
  }
}

TEST(JoinMulSyn, GlueTimesInl) {
  const auto [inst, cert] = make(2);
  for (std::uint64_t i = 0; i < 20; ++i) {
    const auto a = rp(4, i, 1), b = rp(4, i, 2), c = rp(4, i, 3);
    const auto s = rt(i);
    EXPECT_EQ(join_mul_syn(phi(a, b, s), JP::inl(c, 4), inst, cert),
              phi(oracle_mul(a, c), oracle_mul(c, b), s));
  }
}

TEST(JoinMulSyn, MatchesLiteralDoubledProduct) {
  for (unsigned level : {0u, 1u, 2u}) {
    const auto [inst, cert] = make(level);
    const std::size_t d = inst.dim();
    for (std::uint64_t i = 0; i < 90; ++i) {
      CounterRng rng(9, level, i);
      const auto [kx, ky] = kViewPairs[i % 9];
      const auto x = random_join_point<Q>(rng, d, d, kx);
      const auto y = random_join_point<Q>(rng, d, d, ky);
      EXPECT_EQ(join_mul_syn(x, y, inst, cert).embedded(), oracle_mul(x.embedded(), y.embedded()))
          << "level " << level << " case " << i % 9;
    }
  }
}

TEST(JoinMulSyn, IrrationalGlueParametersStayExact) {
  const auto [inst, cert] = make(1);
  // |p| = 1/sqrt(2) on both sides: the views need square roots.
  const auto x = from_embedded<Q>({Q(1, 2), Q(1, 2), Q(1, 2), Q(-1, 2)}, 2);
  const auto y = from_embedded<Q>({Q(1, 2), Q(-1, 2), Q(1, 2), Q(1, 2)}, 2);
  EXPECT_FALSE(join_view(x).c.is_rational());
  EXPECT_EQ(join_mul_syn(x, y, inst, cert).embedded(), oracle_mul(x.embedded(), y.embedded()));
  const auto z = from_embedded<Q>({Q(2, 3), Q(1, 3), Q(2, 3), Q(0)}, 2);  // |p| = sqrt(5)/3
  EXPECT_EQ(join_mul_syn(x, z, inst, cert).embedded(), oracle_mul(x.embedded(), z.embedded()));
  EXPECT_EQ(join_mul_syn(z, x, inst, cert).embedded(), oracle_mul(z.embedded(), x.embedded()));
}

TEST(JoinMulSyn, RespectsJoinIdentifications) {
  const auto [inst, cert] = make(2);
  const auto a = rp(4, 0, 1);
  const auto y = phi(rp(4, 1, 2), rp(4, 2, 3), rt(5));
  const auto ref = join_mul_syn(JP::inl(a, 4), y, inst, cert);
  for (std::uint64_t i = 0; i < 10; ++i) {
    EXPECT_EQ(join_mul_syn(phi(a, rp(4, i, 6), Q(1), Q(0)), y, inst, cert), ref);
  }
}

TEST(JoinMulSyn, RequiresCertificate) {
  auto inst = cd_imaginaroid<Q>(2);
  const auto other = AssocCertificate::assume("something else");
  const auto x = JP::inl(cd::one<Q>(4), 4);
  EXPECT_THROW(join_mul_syn(x, x, inst, other), PreconditionError);
}

TEST(JoinMulAlg, UnitAndRefusal) {
  const auto x = phi(rp(4, 0, 1), rp(4, 0, 2), rt(0));
  EXPECT_EQ(join_mul_alg(JP::inl(cd::one<Q>(4), 4), x, 3), x);
  const Vec<Q> one{Q(1), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0), Q(0)};
  const auto big = JoinPoint<Q>::inl(one, 8);
  EXPECT_THROW(join_mul_alg(big, big, 4), UsageError);
}

TEST(JoinMulAlg, QuaternionsFromComplexPairs) {
  // On S^3 = join(S^1, S^1) the oracle is the level-2 product.
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto x = phi(rp(2, i, 1), rp(2, i, 2), rt(i));
    const auto y = phi(rp(2, i, 3), rp(2, i, 4), rt(i + 100));
    EXPECT_EQ(join_mul_alg(x, y, 2).embedded(), cd::mul(x.embedded(), y.embedded()));
  }
}

TEST(XDiamond, EdgeAtSigmaStart) {
  const SuspPoint<Q> x(rp(4, 3, 8));
  const auto f = solve_x_diamond(x);
  const auto t = rt(2);
  const auto got = f({Q(1), Q(0)}, t);
  EXPECT_EQ(got.left(), vec::scale(-t.c, cd::one<Q>(4)));
  EXPECT_EQ(got.right(), vec::scale(t.s, x.coords()));
}

TEST(XDiamond, BoundaryAndNormExact) {
  const auto grid = quarter_grid<Q>(8);
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto f = solve_x_diamond(SuspPoint<Q>(rp(4, i, 9)));
    for (const auto& t : grid) EXPECT_FALSE(check_boundary(f, t, 0.0).failed);
    for (const auto& s : grid) {
      for (const auto& t : grid) EXPECT_EQ(vec::norm2(f(s, t).embedded()), Q(1));
    }
  }
}

TEST(XDiamond, PoleReductions) {
  const Vec<Q> one{Q(1), Q(0)}, minus{Q(-1), Q(0)};
  const auto dn = solve_x_diamond(SuspPoint<Q>::north(1));
  const auto ds = solve_x_diamond(SuspPoint<Q>::south(1));
  const auto h = fill_refl_diamond<Q>(ReflKind::horizontal, {minus, one, one, one});
  const auto v = fill_refl_diamond<Q>(ReflKind::vertical, {minus, one, minus, minus});
  for (const auto& s : quarter_grid<Q>(12)) {
    for (const auto& t : quarter_grid<Q>(12)) {
      EXPECT_EQ(dn(s, t), h(s, t));
      EXPECT_EQ(ds(s, t), v(s, t));
      // x = S: left factor constantly -1.
      const auto p = ds(s, t).left();
      EXPECT_EQ(p[1], Q(0));
      EXPECT_LE(p[0].sign(), 0);
    }
  }
}

TEST(ReflDiamond, HorizontalPoleExample) {
  const Vec<Q> one{Q(1)}, minus{Q(-1)};
  const auto h = fill_refl_diamond<Q>(ReflKind::horizontal, {minus, one, one, one});
  const QuarterTurn<Q> start{Q(1), Q(0)};
  EXPECT_EQ(h(start, start), JP::inl(minus, 1));
  // c_s c_t = s_s s_t: the left weight vanishes.
  EXPECT_EQ(h({Q(3, 5), Q(4, 5)}, {Q(4, 5), Q(3, 5)}), JP::inr(1, one));
}

TEST(ReflDiamond, VerticalJumpsAcrossDiagonal) {
  const Vec<Q> one{Q(1)}, minus{Q(-1)};
  const auto v = fill_refl_diamond<Q>(ReflKind::vertical, {minus, one, minus, minus});
  const QuarterTurn<Q> lo{Q(4, 5), Q(3, 5)}, hi{Q(3, 5), Q(4, 5)};
  EXPECT_EQ(v(lo, lo), JP::inl(minus, 1));
  EXPECT_EQ(v(hi, lo).right()[0].sign(), 1);
  EXPECT_EQ(v(lo, hi).right()[0].sign(), -1);
  EXPECT_EQ(v(hi, lo).left(), v(lo, hi).left());
}

TEST(ReflDiamond, DegenerateIsConstantPerSide) {
  const Vec<Q> a{Q(3, 5), Q(4, 5)}, b{Q(0), Q(1)};
  const auto h = fill_refl_diamond<Q>(ReflKind::horizontal, {a, b, a, b});
  for (const auto& s : quarter_grid<Q>(6)) {
    for (const auto& t : quarter_grid<Q>(6)) {
      const auto view = join_view(h(s, t));
      if (view.kind != JoinKind::inr) {
        EXPECT_EQ(view.u, vec::convert<Surd>(a));
      }
      if (view.kind != JoinKind::inl) {
        EXPECT_EQ(view.v, vec::convert<Surd>(b));
      }
    }
  }
}

TEST(ReflDiamond, Preconditions) {
  const Vec<Q> a{Q(1)}, b{Q(-1)};
  EXPECT_THROW(fill_refl_diamond<Q>(ReflKind::horizontal, {a, a, a, b}), UsageError);
  EXPECT_THROW(fill_refl_diamond<Q>(ReflKind::vertical, {a, a, b, a}), UsageError);
}

TEST(Suites, OracleEquivalenceExact) {
  for (unsigned level : {0u, 1u, 2u}) {
    const auto [inst, cert] = make(level);
    const auto r = oracle_equivalence_check(inst, cert, "s", opts(270));
    EXPECT_EQ(r.status, Status::holds_exact) << level;
    EXPECT_EQ(r.max_residual, 0.0);
  }
}

TEST(Suites, OracleEquivalenceFloat) {
  auto o = opts(900);
  o.mode = Mode::floating;
  const auto inst = cd_imaginaroid<double>(2);
  const auto cert = AssocCertificate::assume(inst.name);
  const auto r = oracle_equivalence_check(inst, cert, "s7", o);
  EXPECT_EQ(r.status, Status::holds_sampled);
  EXPECT_LT(r.max_residual, 1e-12);
}

TEST(Suites, UnitLaws) {
  const auto [inst, cert] = make(2);
  for (const auto& r : unit_law_check(inst, cert, "s7", opts())) {
    EXPECT_EQ(r.status, Status::holds_exact) << r.law;
  }
}

TEST(Suites, S7AlternativeNotAssociative) {
  const auto [inst, cert] = make(2);
  const auto h = join_hspace(inst, cert, "s7");
  for (const auto& r : hspace_check(h, opts(100))) EXPECT_EQ(r.status, Status::holds_exact) << r.law;
  const auto a = hspace_associativity(h, opts(100));
  EXPECT_EQ(a.status, Status::fails);
  EXPECT_TRUE(a.met());
  ASSERT_TRUE(a.witness.has_value());
  std::vector<Vec<Q>> xs;
  for (const auto& in : a.witness->inputs) {
    Vec<Q> v;
    for (const auto& s : in) v.push_back(Q::parse(s));
    xs.push_back(v);
  }
  EXPECT_NE(oracle_mul(oracle_mul(xs[0], xs[1]), xs[2]), oracle_mul(xs[0], oracle_mul(xs[1], xs[2])));
}

TEST(Suites, S3Associative) {
  const auto [inst, cert] = make(1);
  EXPECT_EQ(hspace_associativity(join_hspace(inst, cert, "s3"), opts(100)).status,
            Status::holds_exact);
}

TEST(Suites, GlueContinuity) {
  const auto r = glue_continuity_check(2, "s7", opts(300));
  EXPECT_EQ(r.status, Status::holds_sampled);
  EXPECT_LT(r.max_residual, 1e-9);
}

TEST(Suites, DiamondGridExact) {
  for (const auto& r : diamond_suite(2, 8, "ii", opts(20))) {
    EXPECT_EQ(r.status, Status::holds_exact) << r.law;
  }
}

TEST(Suites, DiamondGridFloat) {
  auto o = opts(20);
  o.mode = Mode::floating;
  for (const auto& r : diamond_suite(2, 16, "ii", o)) {
    EXPECT_EQ(r.status, Status::holds_sampled) << r.law;
  }
}
