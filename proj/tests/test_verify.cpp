#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

using mhp::Box;
using mhp::Rational;
using mhp::RationalPoint;
using mhp::Relation;

namespace {

const mhp::Space kP1 = mhp::projective_space(1);

bool strict_at(const mhp::Space& x, unsigned long n, const RationalPoint& p) {
    Rational lhs = Rational(static_cast<long>(n)) * oracle::eval(oracle::from(x.mh_pi()), p.t, p.u, p.v);
    Rational rhs = oracle::qpow(oracle::eval(oracle::from(x.mh()), p.t, p.u, p.v), n);
    return lhs < rhs;
}

Rational sample_in(std::mt19937& rng, const Rational& lo, const Rational& hi) {
    std::uniform_int_distribution<long> step(0, 997);
    return lo + (hi - lo) * Rational(step(rng), 997);
}

} // namespace

TEST(Verify, Hilali) {
    auto c = mhp::hilali(kP1);
    EXPECT_EQ(c.left, 2);
    EXPECT_EQ(c.right, 2);
    EXPECT_EQ(c.relation, Relation::Equal);
    EXPECT_FALSE(c.strict());

    c = mhp::hilali(mhp::point());
    EXPECT_EQ(c.left, 0);
    EXPECT_EQ(c.right, 1);
    EXPECT_TRUE(c.strict());

    c = mhp::hilali(mhp::projective_space(2));
    EXPECT_EQ(c.left, 2);
    EXPECT_EQ(c.right, 3);
    EXPECT_EQ(c.relation, Relation::Less);
}

TEST(Verify, EulerCompare) {
    auto c = mhp::euler_compare(kP1);
    EXPECT_EQ(c.left, 0);
    EXPECT_EQ(c.right, 2);
    EXPECT_TRUE(c.strict());
    c = mhp::euler_compare(mhp::point());
    EXPECT_EQ(c.left, 0);
    EXPECT_EQ(c.right, 1);
    c = mhp::euler_compare(mhp::product(kP1, mhp::projective_space(2)));
    EXPECT_EQ(c.left, 0);
    EXPECT_EQ(c.right, 6);
    EXPECT_TRUE(c.strict());
}

TEST(Verify, EulerCompareRejectsImpossibleData) {
    // Betti data that no elliptic space has: chi = 0 with no homotopy.
    mhp::SpaceAtom bogus{"Bogus", mhp::MHPolynomial{{{0, 0, 0}, 1}, {{3, 0, 0}, 1}}, {}, false, false};
    EXPECT_THROW(mhp::euler_compare(mhp::Space(bogus)), mhp::DataError);
}

TEST(Verify, Margin) {
    EXPECT_EQ(mhp::margin(kP1, {0, 1, 1}), 1);
    EXPECT_EQ(mhp::margin(kP1, {1, 1, 1}), 0);
    Rational t(11, 10);
    Rational by_hand = (1 + t * t) - (t * t + t * t * t);
    EXPECT_EQ(by_hand, Rational(-331, 1000));
    EXPECT_EQ(mhp::margin(kP1, {t, 1, 1}), Rational(-331, 1000));
}

TEST(Verify, MarginRefusesHodgeSlotsOfSpheres) {
    EXPECT_EQ(mhp::margin(mhp::sphere(2), {Rational(1, 2), 1, 1}), 1 + Rational(1, 4) - Rational(1, 4) - Rational(1, 8));
    EXPECT_THROW(mhp::margin(mhp::sphere(2), {1, 2, 1}), mhp::VerifyError);
}

TEST(Verify, PointThresholdProjectiveLine) {
    auto c = mhp::point_threshold(kP1, {1, 1, 1});
    EXPECT_EQ(c.n0, 3u);
    EXPECT_EQ(c.A_lo, 2);
    EXPECT_EQ(c.B_hi, 2);
    EXPECT_TRUE(c.minimal);
    ASSERT_TRUE(c.witness);
    EXPECT_EQ(c.witness->n, 2u);
    EXPECT_EQ(c.witness->lhs, 4);
    EXPECT_EQ(c.witness->rhs, 4);
    EXPECT_EQ(oracle::last_failure(2, 2, 50) + 1, 3u);
}

TEST(Verify, PointThresholdAtTwo) {
    auto c = mhp::point_threshold(kP1, {2, 2, 2});
    EXPECT_EQ(c.n0, 2u);
    EXPECT_EQ(c.A_lo, 17);
    EXPECT_EQ(c.B_hi, 144);
    EXPECT_LE(c.B_hi, oracle::qpow(c.A_lo, c.induction_from) * (c.A_lo - 1));
    EXPECT_EQ(oracle::last_failure(17, 144, 50) + 1, 2u);
}

TEST(Verify, PointThresholdOfPoint) {
    auto c = mhp::point_threshold(mhp::point(), {1, 1, 1});
    EXPECT_EQ(c.n0, 1u);
    EXPECT_FALSE(c.witness);
}

TEST(Verify, ScanPairRejectsNonGrowingBase) {
    EXPECT_THROW(mhp::scan_pair(1, 1), mhp::DataError);
    EXPECT_EQ(mhp::scan_pair(1, 0).n0, 1u);
}

TEST(Verify, CubeThresholdCornerScan) {
    auto c = mhp::cube_threshold(kP1, Rational(1, 2), 2, 0);
    EXPECT_EQ(c.A_lo, Rational(17, 16));
    EXPECT_EQ(c.B_hi, 144);
    EXPECT_EQ(c.n0, 167u);
    EXPECT_EQ(oracle::last_failure(Rational(17, 16), 144, 5000), 166u);
    EXPECT_GE(Rational(166 * 144), oracle::qpow(Rational(17, 16), 166));
    EXPECT_LT(Rational(167 * 144), oracle::qpow(Rational(17, 16), 167));
    EXPECT_LE(c.B_hi, oracle::qpow(c.A_lo, c.induction_from) * (c.A_lo - 1));
}

TEST(Verify, DegenerateCubeMatchesPoint) {
    auto cube = mhp::cube_threshold(kP1, 1, 1, 0);
    auto point = mhp::point_threshold(kP1, {1, 1, 1});
    EXPECT_EQ(cube.n0, 3u);
    EXPECT_EQ(cube.n0, point.n0);
    EXPECT_TRUE(cube.minimal);

    for (const Rational& s : {Rational(1, 3), Rational(5, 2), Rational(7)}) {
        auto c = mhp::cube_threshold(mhp::projective_space(2), s, s, 0);
        auto p = mhp::point_threshold(mhp::projective_space(2), {s, s, s});
        EXPECT_EQ(c.n0, p.n0);
    }
}

TEST(Verify, CubeThresholdOfPoint) {
    EXPECT_EQ(mhp::cube_threshold(mhp::point(), Rational(1, 2), 2, 0).n0, 1u);
}

TEST(Verify, RefinementNeverWorsens) {
    for (const auto& x : {kP1, mhp::projective_space(2), mhp::product(kP1, kP1)}) {
        unsigned long prev = mhp::cube_threshold(x, Rational(1, 2), 2, 0).n0;
        for (unsigned d = 1; d <= 2; ++d) {
            auto c = mhp::cube_threshold(x, Rational(1, 2), 2, d);
            EXPECT_LE(c.n0, prev) << x.to_string() << " depth " << d;
            prev = c.n0;
        }
    }
}

TEST(Verify, CubeRejectsBadRegions) {
    EXPECT_THROW(mhp::cube_threshold(kP1, 0, 2, 0), mhp::VerifyError);
    EXPECT_THROW(mhp::cube_threshold(kP1, 2, 1, 0), mhp::VerifyError);
    EXPECT_THROW(mhp::cube_threshold(mhp::sphere(2), Rational(1, 2), 2, 0), mhp::VerifyError);
}

TEST(Verify, VerifyCubeAtN) {
    auto pass = mhp::verify_cube_at_n(kP1, 3, Box::cube(1, 1), 0);
    EXPECT_EQ(pass.status, mhp::ProofStatus::Proved);
    auto fail = mhp::verify_cube_at_n(kP1, 2, Box::cube(1, 1), 0);
    EXPECT_NE(fail.status, mhp::ProofStatus::Proved);
    auto pt = mhp::verify_cube_at_n(mhp::point(), 1, Box::cube(Rational(1, 5), 30), 0);
    EXPECT_EQ(pt.status, mhp::ProofStatus::Proved);
    EXPECT_THROW(mhp::verify_cube_at_n(kP1, 3, Box::cube(0, 1), 0), mhp::VerifyError);
}

TEST(Verify, VerifyCubeAtNSubdivides) {
    auto proof = mhp::verify_cube_at_n(kP1, 167, Box::cube(Rational(1, 2), 2), 3);
    EXPECT_EQ(proof.status, mhp::ProofStatus::Proved);
    // n = 2 fails at t = 1 on the line u = v = 1, so it can never be proved there.
    auto refuted = mhp::verify_cube_at_n(kP1, 2, Box({Rational(1, 2), 1, 1}, {2, 1, 1}), 8);
    EXPECT_NE(refuted.status, mhp::ProofStatus::Proved);
    if (refuted.counterexample) {
        EXPECT_FALSE(strict_at(kP1, 2, *refuted.counterexample));
    }
}

TEST(Verify, HalflineProjectiveLine) {
    auto c = mhp::halfline_threshold(kP1, Rational(1, 2));
    EXPECT_EQ(c.n0, 3u);
    EXPECT_TRUE(c.minimal);
    ASSERT_TRUE(c.tail);
    ASSERT_TRUE(c.subdivision);
    ASSERT_TRUE(c.witness);
    EXPECT_EQ(c.witness->n, 2u);
    EXPECT_GE(c.witness->lhs, c.witness->rhs);
    EXPECT_FALSE(strict_at(kP1, 2, {1, 1, 1}));
}

TEST(Verify, HalflineFromTwo) {
    auto c = mhp::halfline_threshold(kP1, 2);
    EXPECT_EQ(c.n0, 2u);
    EXPECT_TRUE(strict_at(kP1, 2, {2, 1, 1}));
}

TEST(Verify, HalflineOfPoint) {
    auto c = mhp::halfline_threshold(mhp::point(), Rational(1, 10));
    EXPECT_EQ(c.n0, 1u);
    EXPECT_TRUE(c.trivial);
}

TEST(Verify, HalflineSpheresUseOnlyDegrees) {
    auto c = mhp::halfline_threshold(mhp::sphere(2), Rational(1, 2));
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Rational t = sample_in(rng, Rational(1, 2), 50);
        for (unsigned long n : {c.n0, c.n0 + 1, c.n0 + 7}) EXPECT_TRUE(strict_at(mhp::sphere(2), n, {t, 1, 1}));
    }
}

TEST(Verify, Probe) {
    auto rep = mhp::conjecture_probe(kP1, Rational(1, 2), {1, 2, 4});
    ASSERT_EQ(rep.certificates.size(), 3u);
    EXPECT_EQ(rep.label, "exploration - does not decide the conjecture");
    unsigned long prev = 0;
    for (const auto& c : rep.certificates) {
        EXPECT_GE(c.n0, prev);
        EXPECT_EQ(c.n0, oracle::last_failure(c.A_lo, c.B_hi, 5000) + 1);
        prev = c.n0;
    }
    EXPECT_EQ(rep.certificates[0].n0, 85u);
    EXPECT_EQ(rep.certificates[2].n0, 252u);

    auto pt = mhp::conjecture_probe(mhp::point(), Rational(1, 2), {10});
    ASSERT_EQ(pt.certificates.size(), 1u);
    EXPECT_EQ(pt.certificates[0].n0, 1u);

    auto one = mhp::conjecture_probe(kP1, 1, {1});
    EXPECT_EQ(one.certificates.at(0).n0, 3u);

    EXPECT_THROW(mhp::conjecture_probe(kP1, 1, {2, 2}), mhp::VerifyError);
}

TEST(Verify, BisectCoversBox) {
    Box b({1, 1, 1}, {3, 5, 1});
    auto kids = mhp::bisect(b);
    EXPECT_EQ(kids.size(), 4u);
    for (const auto& k : kids) {
        EXPECT_TRUE(b.contains(k.lo));
        EXPECT_TRUE(b.contains(k.hi));
    }
    EXPECT_EQ(kids.front().lo, b.lo);
    EXPECT_EQ(kids.back().hi, b.hi);
}

// Randomized checks over generated spaces.

class VerifyProperty : public ::testing::TestWithParam<unsigned> {};

TEST_P(VerifyProperty, CubeCertificateHoldsAtSamples) {
    std::mt19937 rng(GetParam());
    // Hodge-graded atoms only.
    static const char* exprs[] = {"P1", "P2", "P1 x P2", "P1^2", "P3 x pt", "(P1 x P1)^2"};
    auto x = mhp::parse_space_expr(exprs[GetParam() % 6]);
    Rational eps = sample_in(rng, Rational(1, 4), 1) + Rational(1, 100);
    Rational r = eps + sample_in(rng, 0, 2);
    auto c = mhp::cube_threshold(x, eps, r, GetParam() % 2);
    for (int i = 0; i < 10; ++i) {
        RationalPoint p{sample_in(rng, eps, r), sample_in(rng, eps, r), sample_in(rng, eps, r)};
        for (unsigned long n : {c.n0, c.n0 + 1, c.n0 + 7}) EXPECT_TRUE(strict_at(x, n, p)) << x.to_string();
    }
    EXPECT_LT(Rational(static_cast<long>(c.n0)) * c.B_hi, oracle::qpow(c.A_lo, c.n0));
}

TEST_P(VerifyProperty, PointCertificateIsMinimal) {
    std::mt19937 rng(GetParam() + 100);
    auto x = mhp::parse_space_expr(GetParam() % 2 ? "P1 x P2" : "P2^2");
    RationalPoint p{sample_in(rng, Rational(1, 5), 3), sample_in(rng, Rational(1, 5), 3),
                    sample_in(rng, Rational(1, 5), 3)};
    auto c = mhp::point_threshold(x, p);
    EXPECT_EQ(c.n0, oracle::last_failure(c.A_lo, c.B_hi, c.n0 + 200) + 1);
    for (unsigned long n : {c.n0, c.n0 + 1, c.n0 + 7}) EXPECT_TRUE(strict_at(x, n, p));
}

TEST_P(VerifyProperty, LocalInequalityAtZero) {
    std::mt19937 rng(GetParam() + 200);
    std::string text = gen::space(rng).text;
    auto x = mhp::parse_space_expr(text);
    if (!x.hodge_graded()) {
        EXPECT_EQ(mhp::margin(x, {0, 1, 1}), 1);
        return;
    }
    EXPECT_EQ(mhp::margin(x, {0, gen::rational(rng, 1, 9), gen::rational(rng, 1, 9)}), 1) << text;
}

TEST_P(VerifyProperty, EulerComparisonIsStrict) {
    std::mt19937 rng(GetParam() + 300);
    auto x = mhp::parse_space_expr(gen::space(rng).text);
    EXPECT_TRUE(mhp::euler_compare(x).strict());
}

INSTANTIATE_TEST_SUITE_P(Seeds, VerifyProperty, ::testing::Range(0u, 24u));
