#include <gtest/gtest.h>

#include "hopfcheck/cdalg.hpp"
#include "hopfcheck/spheremodel.hpp"

using namespace hopfcheck;

namespace {

using Q = Rational;

Vec<Q> rpoint(std::size_t dim, std::uint64_t i, std::uint64_t stream = 1) {
  CounterRng rng(7, stream, i);
  return random_sphere_point<Q>(rng, dim);
}

QuarterTurn<Q> rturn(std::uint64_t i) {
  CounterRng rng(7, 99, i);
  return random_quarter_turn<Q>(rng);
}

Vec<Surd> as_surd(const Vec<Q>& v) { return vec::convert<Surd>(v); }

}  // namespace

TEST(SpherePoint, RejectsNonUnit) {
  EXPECT_THROW(SpherePoint<Q>({Q(1), Q(1)}), UsageError);
  EXPECT_NO_THROW(SpherePoint<Q>({Q(3, 5), Q(-4, 5)}));
}

TEST(Phi, Endpoints) {
  const Vec<Q> u{Q(3, 5), Q(4, 5)};
  const Vec<Q> v{Q(0), Q(1), Q(0)};
  const auto left = phi(u, v, Q(1), Q(0));
  EXPECT_EQ(left, JoinPoint<Q>::inl(u, 3));
  EXPECT_EQ(join_view(left).kind, JoinKind::inl);
  const auto right = phi(u, v, Q(0), Q(1));
  EXPECT_EQ(right, JoinPoint<Q>::inr(2, v));
  EXPECT_EQ(join_view(right).kind, JoinKind::inr);
}

TEST(Phi, ThreeFourFive) {
  const Vec<Q> u{Q(1), Q(0)};
  const Vec<Q> v{Q(0), Q(-1)};
  const auto x = phi(u, v, Q(3, 5), Q(4, 5));
  EXPECT_EQ(x.left(), (Vec<Q>{Q(3, 5), Q(0)}));
  EXPECT_EQ(x.right(), (Vec<Q>{Q(0), Q(-4, 5)}));
  EXPECT_EQ(vec::norm2(x.embedded()), Q(1));
  const auto view = join_view(x);
  EXPECT_EQ(view.kind, JoinKind::glue);
  EXPECT_EQ(view.c, Surd(Q(3, 5)));
  EXPECT_EQ(view.s, Surd(Q(4, 5)));
}

TEST(Phi, RejectsOffCircleParameter) {
  const Vec<Q> u{Q(1)};
  EXPECT_THROW(phi(u, u, Q(1, 2), Q(1, 2)), UsageError);
  EXPECT_THROW(phi(u, u, Q(-3, 5), Q(4, 5)), UsageError);
}

TEST(JoinView, RecoversGlueDataExactly) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto u = rpoint(4, i);
    const auto v = rpoint(3, i, 2);
    const auto t = rturn(i);
    const auto view = join_view(phi(u, v, t));
    ASSERT_EQ(view.kind, JoinKind::glue);
    EXPECT_EQ(view.u, as_surd(u));
    EXPECT_EQ(view.v, as_surd(v));
    EXPECT_EQ(view.c, Surd(t.c));
    EXPECT_EQ(view.s, Surd(t.s));
  }
}

TEST(JoinView, IrrationalParameterStaysExact) {
  // (1/2, 1/2, 1/2, 1/2) split 1 + 3: |p| = 1/2, |q| = sqrt(3)/2.
  const auto x = from_embedded<Q>({Q(1, 2), Q(1, 2), Q(1, 2), Q(1, 2)}, 1);
  const auto view = join_view(x);
  EXPECT_EQ(view.s * view.s, Surd(Q(3, 4)));
  EXPECT_FALSE(view.s.is_rational());
  for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(view.v[k] * view.s, Surd(Q(1, 2)));
}

TEST(JoinView, FloatThreshold) {
  const JoinPoint<double> x({1.0, 0.0}, {1e-13});
  EXPECT_EQ(join_view(x).kind, JoinKind::inl);
  const JoinPoint<double> y({0.6, 0.0}, {0.8});
  EXPECT_EQ(join_view(y).kind, JoinKind::glue);
}

TEST(JoinModel, AssociativityByReassociation) {
  // Build ((x * y) * z) from nested phi calls, then the right-nested
  // parameters in closed form, and compare embedded vectors exactly.
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto x = rpoint(2, i, 3);
    const auto y = rpoint(3, i, 4);
    const auto z = rpoint(2, i, 5);
    const auto t1 = rturn(2 * i);
    const auto t2 = rturn(2 * i + 1);
    const auto xy = phi(x, y, t1);
    const auto left = phi(xy.embedded(), z, t2);
    EXPECT_EQ(left.embedded(),
              vec::concat(vec::concat(vec::scale(t2.c * t1.c, x), vec::scale(t2.c * t1.s, y)),
                          vec::scale(t2.s, z)));

    const auto moved = reassociate_left(left, 2);
    EXPECT_EQ(moved.embedded(), left.embedded());
    EXPECT_EQ(reassociate_right(moved, 2), left);

    // Right-nested parameters: c1' = c2 c1, s1' = sqrt(1 - c1'^2), c2' = c2 s1 / s1'.
    using R = Surd;
    const R c1(t2.c * t1.c);
    const R s1 = R::sqrt_of(Q(1) - t2.c * t2.c * t1.c * t1.c);
    const R c2 = R(t2.c * t1.s) / s1;
    const R s2 = R(t2.s) / s1;
    const auto yz = phi(as_surd(y), as_surd(z), c2, s2);
    const auto right = phi(as_surd(x), yz.embedded(), c1, s1);
    EXPECT_EQ(right.embedded(), as_surd(left.embedded()));
  }
}

TEST(JoinModel, SuspensionIsJoinWithS0) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto a = rpoint(3, i);
    CounterRng rng(7, 11, i);
    auto t = random_quarter_turn<Q>(rng);
    const Q c = rng.coin() ? t.c : -t.c;
    const auto x = SuspPoint<Q>::meridian(a, c, t.s);
    const auto j = susp_to_join(x);
    const auto view = join_view(j);
    ASSERT_EQ(view.kind, JoinKind::glue);
    EXPECT_EQ(view.u, (Vec<Surd>{Surd(Q(c.sign()))}));
    EXPECT_EQ(view.v, as_surd(a));
    EXPECT_EQ(join_to_susp(j), x);
  }
  EXPECT_EQ(join_view(susp_to_join(SuspPoint<Q>::north(2))).kind, JoinKind::inl);
  EXPECT_EQ(join_view(susp_to_join(SuspPoint<Q>::south(2))).kind, JoinKind::inl);
}

TEST(JoinModel, SphereJoinSphereRoundTripFloat) {
  for (std::uint64_t i = 0; i < 500; ++i) {
    CounterRng rng(3, 0, i);
    const auto w = random_sphere_point<double>(rng, 7);
    const auto view = join_view(from_embedded(w, 3));
    ASSERT_EQ(view.kind, JoinKind::glue);
    const auto back = phi(view.u, view.v, view.c, view.s).embedded();
    EXPECT_LT(vec::max_abs_diff(back, w), 1e-14);
  }
}

TEST(JoinModel, SphereJoinSphereRoundTripExact) {
  for (std::uint64_t i = 0; i < 100; ++i) {
    const auto w = rpoint(4, i, 8);
    const auto j = from_embedded(w, 2);
    const auto view = join_view(j);
    if (view.kind != JoinKind::glue) continue;
    EXPECT_EQ(phi(view.u, view.v, view.c, view.s).embedded(), as_surd(w));
  }
}

TEST(Suspension, NegationTable) {
  EXPECT_EQ(susp_neg(SuspPoint<Q>::north(3)), SuspPoint<Q>::south(3));
  EXPECT_EQ(susp_neg(SuspPoint<Q>::south(3)), SuspPoint<Q>::north(3));
  const Vec<Q> a{Q(0), Q(3, 5), Q(4, 5)};
  const auto x = SuspPoint<Q>::meridian(a, Q(5, 13), Q(12, 13));
  // Reversed meridian through -a at the same parameter.
  EXPECT_EQ(susp_neg(x), SuspPoint<Q>::meridian(vec::neg(a), Q(-5, 13), Q(12, 13)));
}

TEST(Suspension, ConjugationTable) {
  EXPECT_EQ(susp_conj(SuspPoint<Q>::north(1)), SuspPoint<Q>::north(1));
  EXPECT_EQ(susp_conj(SuspPoint<Q>::south(1)), SuspPoint<Q>::south(1));
  const Vec<Q> a{Q(3, 5), Q(4, 5)};
  const auto x = SuspPoint<Q>::meridian(a, Q(5, 13), Q(12, 13));
  EXPECT_EQ(susp_conj(x), SuspPoint<Q>::meridian(vec::neg(a), Q(5, 13), Q(12, 13)));
  EXPECT_TRUE(susp_conj(SuspPoint<Q>::south(1)).is_south());
}

TEST(Suspension, InvolutionsCommute) {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const SuspPoint<Q> x(rpoint(4, i, 9));
    EXPECT_EQ(susp_neg(susp_neg(x)), x);
    EXPECT_EQ(susp_conj(susp_conj(x)), x);
    EXPECT_EQ(susp_conj(susp_neg(x)), susp_neg(susp_conj(x)));
  }
}

TEST(Suspension, MatchesAlgebraNegationAndConjugation) {
  const Vec<Q> x{Q(1, 2), Q(1, 2), Q(-1, 2), Q(1, 2)};
  EXPECT_EQ(susp_conj(SuspPoint<Q>(x)).coords(), cd::conj(x));
  EXPECT_EQ(susp_neg(SuspPoint<Q>(x)).coords(), vec::neg(x));
}

TEST(Suspension, BaseOfMeridian) {
  const Vec<Q> a{Q(3, 5), Q(4, 5)};
  const auto x = SuspPoint<Q>::meridian(a, Q(-5, 13), Q(12, 13));
  EXPECT_EQ(x.base(), std::optional(as_surd(a)));
  EXPECT_FALSE(SuspPoint<Q>::north(2).base().has_value());
}

TEST(JoinFunctor, IdentityAndInl) {
  const LinearMap<Q> id = [](const Vec<Q>& v) { return v; };
  const auto x = phi(rpoint(4, 1), rpoint(4, 2), rturn(3));
  EXPECT_EQ(join_functor(id, id, x), x);
  const auto u = rpoint(4, 5);
  const LinearMap<Q> neg = [](const Vec<Q>& v) { return vec::neg(v); };
  EXPECT_EQ(join_functor(neg, id, JoinPoint<Q>::inl(u, 4)), JoinPoint<Q>::inl(vec::neg(u), 4));
}

TEST(JoinFunctor, QuaternionTranslationPreservesNorm) {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const auto w = rpoint(4, i, 12);
    const LinearMap<Q> f = [w](const Vec<Q>& v) { return cd::mul(w, v); };
    const LinearMap<Q> g = [w](const Vec<Q>& v) { return cd::mul(v, w); };
    const auto x = phi(rpoint(4, i), rpoint(4, i, 2), rturn(i));
    const auto y = join_functor(f, g, x);
    EXPECT_EQ(vec::norm2(y.embedded()), Q(1));
    // Commutes with the view: the glue parameter is unchanged.
    EXPECT_EQ(join_view(y).c, join_view(x).c);
  }
}

TEST(JoinFunctor, RejectsScaling) {
  const LinearMap<Q> twice = [](const Vec<Q>& v) { return vec::scale(Q(2), v); };
  const LinearMap<Q> id = [](const Vec<Q>& v) { return v; };
  const auto x = JoinPoint<Q>::inl({Q(1), Q(0)}, 2);
  EXPECT_THROW(join_functor(twice, id, x), UsageError);
  EXPECT_THROW(join_functor(id, twice, x), UsageError);
}
