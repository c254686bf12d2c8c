#include <random>

#include <gtest/gtest.h>

#include "support.hpp"

using mhp::MHPolynomial;
using mhp::Space;

namespace {

// Reference atom data, written out independently of the catalog builders.
oracle::Dense projective_mh(unsigned n) {
    oracle::Dense d;
    for (unsigned j = 0; j <= n; ++j) d[{2 * j, j, j}] = 1;
    return d;
}

oracle::Dense projective_mh_pi(unsigned n) { return {{{2, 1, 1}, 1}, {{2 * n + 1, n + 1, n + 1}, 1}}; }

oracle::Dense sphere_mh(unsigned n) { return {{{0, 0, 0}, 1}, {{n, 0, 0}, 1}}; }

oracle::Dense sphere_mh_pi(unsigned n) {
    if (n % 2) return {{{n, 0, 0}, 1}};
    return {{{n, 0, 0}, 1}, {{2 * n - 1, 0, 0}, 1}};
}

struct AtomData {
    oracle::Dense mh, mh_pi;
};

AtomData reference(const std::string& name) {
    if (name == "pt") return {{{{0, 0, 0}, 1}}, {}};
    unsigned n = static_cast<unsigned>(std::stoul(name.substr(1)));
    if (name[0] == 'P') return {projective_mh(n), projective_mh_pi(n)};
    return {sphere_mh(n), sphere_mh_pi(n)};
}

mpz_class at_minus_one(const oracle::Dense& d) {
    mpz_class s = 0;
    for (const auto& [k, c] : d) s += std::get<0>(k) % 2 ? -c : c;
    return s;
}

} // namespace

TEST(Catalog, PointAtom) {
    EXPECT_EQ(mhp::point().mh(), MHPolynomial::one());
    EXPECT_TRUE(mhp::point().mh_pi().is_zero());
}

TEST(Catalog, ProjectiveLineMatchesPublishedPolynomials) {
    auto p1 = mhp::projective_space(1);
    EXPECT_EQ(p1.mh().to_string(), "1 + t^2uv");
    EXPECT_EQ(p1.mh_pi().to_string(), "t^2uv + t^3u^2v^2");
    EXPECT_FALSE(p1.mh_pi_extrapolated());
}

TEST(Catalog, ProjectivePlaneHomotopy) {
    auto p2 = mhp::projective_space(2);
    EXPECT_EQ(p2.mh_pi().to_string(), "t^2uv + t^5u^3v^3");
    EXPECT_TRUE(p2.mh_pi_extrapolated());
}

TEST(Catalog, Spheres) {
    EXPECT_EQ(mhp::poincare(mhp::sphere(3)).to_string(), "1 + t^3");
    EXPECT_EQ(mhp::poincare_pi(mhp::sphere(2)).to_string(), "t^2 + t^3");
    EXPECT_EQ(mhp::poincare_pi(mhp::sphere(5)).to_string(), "t^5");
    EXPECT_FALSE(mhp::sphere(4).hodge_graded());
    EXPECT_THROW(mhp::sphere(1), std::invalid_argument);
    EXPECT_THROW(mhp::projective_space(0), std::invalid_argument);
}

TEST(Catalog, AtomsMatchReferenceTable) {
    for (unsigned n = 1; n <= 6; ++n) {
        auto p = mhp::projective_space(n);
        EXPECT_EQ(oracle::from(p.mh()), projective_mh(n));
        EXPECT_EQ(oracle::from(p.mh_pi()), projective_mh_pi(n));
    }
    for (unsigned n = 2; n <= 9; ++n) {
        auto s = mhp::sphere(n);
        EXPECT_EQ(oracle::from(s.mh()), sphere_mh(n));
        EXPECT_EQ(oracle::from(s.mh_pi()), sphere_mh_pi(n));
    }
}

TEST(Catalog, ProductOfProjectiveLines) {
    auto p1 = mhp::projective_space(1);
    auto x = mhp::product(p1, p1);
    EXPECT_EQ(x.mh().to_string(), "1 + 2t^2uv + t^4u^2v^2");
    EXPECT_EQ(x.mh_pi().to_string(), "2t^2uv + 2t^3u^2v^2");
}

TEST(Catalog, ProductWithPointIsUnit) {
    auto p2 = mhp::projective_space(2);
    auto x = mhp::product(p2, mhp::point());
    EXPECT_EQ(x.mh(), p2.mh());
    EXPECT_EQ(x.mh_pi(), p2.mh_pi());
}

TEST(Catalog, Powers) {
    auto p1 = mhp::projective_space(1);
    mhp::RationalPoint ones{1, 1, 1};
    EXPECT_EQ(mhp::power(p1, 3).mh().eval(ones), 8);
    EXPECT_EQ(mhp::power(p1, 3).mh_pi().eval(ones), 6);
    EXPECT_EQ(mhp::power(p1, 1).mh(), p1.mh());
    EXPECT_EQ(mhp::power(p1, 1).mh_pi(), p1.mh_pi());
    EXPECT_THROW(mhp::power(p1, 0), std::invalid_argument);
}

TEST(Catalog, MixedProductHomotopy) {
    auto x = mhp::product(mhp::projective_space(1), mhp::projective_space(2));
    EXPECT_EQ(x.mh_pi().to_string(), "2t^2uv + t^3u^2v^2 + t^5u^3v^3");
}

TEST(Catalog, EulerCharacteristics) {
    auto p1 = mhp::projective_space(1);
    EXPECT_EQ(mhp::euler(p1), 2);
    EXPECT_EQ(mhp::euler_pi(p1), 0);
    EXPECT_EQ(mhp::euler(mhp::product(p1, p1)), 4);
    EXPECT_EQ(mhp::euler(mhp::sphere(3)), 0);
    EXPECT_EQ(mhp::euler_pi(mhp::sphere(3)), -1);
}

TEST(Catalog, LoadAcceptsProjectiveLineEntry) {
    auto file = mhp::load_catalog(
        R"({"spaces":[{"name":"P1","mh":[[0,0,0,"1"],[2,1,1,"1"]],"mh_pi":[[2,1,1,"1"],[3,2,2,"1"]]}]})");
    ASSERT_EQ(file.spaces.size(), 1u);
    Space loaded(file.spaces[0]);
    EXPECT_EQ(loaded.mh(), mhp::projective_space(1).mh());
    EXPECT_EQ(loaded.mh_pi(), mhp::projective_space(1).mh_pi());
    EXPECT_TRUE(loaded.hodge_graded());
}

TEST(Catalog, LoadRejectsBadEntries) {
    const char* bad[] = {
        R"({"spaces":[{"name":"X","mh":[[0,0,0,"2"]],"mh_pi":[]}]})",
        R"({"spaces":[{"name":"X","mh":[[0,0,0,"1"]],"mh_pi":[[1,0,0,"1"]]}]})",
        R"({"spaces":[{"name":"X","mh":[[0,0,0,"1"]]},{"name":"X","mh":[[0,0,0,"1"]]}]})",
        R"({"spaces":[{"name":"9X","mh":[[0,0,0,"1"]]}]})",
        R"({"spaces":[{"name":"X","mh":[[0,0,0,"1"]],"hodge_graded":"yes"}]})",
        R"({"spaces":[{"name":"X","mh":[[0,0,0,"-1"]]}]})",
        R"({"nothing":[]})",
        R"({"spaces":[)",
    };
    for (const char* text : bad) EXPECT_THROW(mhp::load_catalog(text), mhp::CatalogError) << text;
}

TEST(Catalog, JsonRoundTrip) {
    auto file = mhp::load_catalog(
        R"({"spaces":[{"name":"Q","hodge_graded":false,"mh":[[0,0,0,"1"],[4,0,0,"3"]],"mh_pi":[[4,0,0,"1"]]}]})");
    auto again = mhp::load_catalog(mhp::to_json(file).dump());
    ASSERT_EQ(again.spaces.size(), 1u);
    EXPECT_EQ(again.spaces[0], file.spaces[0]);
}

TEST(Parser, Atoms) {
    EXPECT_EQ(mhp::parse_space_expr("P1"), mhp::projective_space(1));
    EXPECT_EQ(mhp::parse_space_expr("pt"), mhp::point());
    EXPECT_EQ(mhp::parse_space_expr("  S4 "), mhp::sphere(4));
}

TEST(Parser, ProductWithPower) {
    auto x = mhp::parse_space_expr("P1 x S3^2");
    EXPECT_EQ(x, mhp::product(mhp::projective_space(1), mhp::power(mhp::sphere(3), 2)));
    EXPECT_EQ(x.to_string(), "P1 x S3^2");
}

TEST(Parser, Parentheses) {
    auto x = mhp::parse_space_expr("(P1 x S2)^3 x pt");
    EXPECT_EQ(x.kind(), Space::Kind::Product);
    EXPECT_EQ(x.to_string(), "(P1 x S2)^3 x pt");
    EXPECT_EQ(mhp::parse_space_expr(x.to_string()), x);
}

TEST(Parser, DanglingCaretReportsOffset) {
    try {
        mhp::parse_space_expr("P1 ^");
        FAIL() << "expected a parse error";
    } catch (const mhp::ParseError& e) {
        EXPECT_EQ(e.offset(), 4u);
        EXPECT_NE(std::string(e.what()).find("syntax error at offset 4"), std::string::npos);
    }
}

TEST(Parser, Rejections) {
    for (const char* text : {"", "Q7", "P0", "S1", "P1^0", "P1 x", "(P1", "P1 S2", "P1^"})
        EXPECT_THROW(mhp::parse_space_expr(text), mhp::ParseError) << '"' << text << '"';
}

TEST(Parser, UnknownAtomListsNames) {
    try {
        mhp::parse_space_expr("K3");
        FAIL();
    } catch (const mhp::ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("pt"), std::string::npos);
    }
}

TEST(Parser, RegisteredNamesUseLongestPrefix) {
    mhp::Catalog cat;
    cat.add(mhp::load_catalog(R"({"spaces":[
        {"name":"Q","mh":[[0,0,0,"1"],[2,1,1,"1"]]},
        {"name":"Quad","mh":[[0,0,0,"1"],[2,1,1,"2"],[4,2,2,"1"]],"mh_pi":[[2,1,1,"2"],[3,2,2,"2"]]}]})"));
    auto x = mhp::parse_space_expr("Quad x Q^2", cat);
    EXPECT_EQ(x.to_string(), "Quad x Q^2");
    EXPECT_EQ(mhp::euler(x), 4 * 2 * 2);
}

// Properties over random expressions.

class CatalogProperty : public ::testing::TestWithParam<unsigned> {};

TEST_P(CatalogProperty, ProductLawsAgainstDenseOracle) {
    std::mt19937 rng(GetParam());
    auto sample = gen::space(rng);
    auto x = mhp::parse_space_expr(sample.text);
    oracle::Dense mh{{{0, 0, 0}, 1}}, mh_pi;
    mpz_class chi = 1, chi_pi = 0;
    for (const auto& f : sample.factors) {
        auto ref = reference(f.atom);
        mh = oracle::mul(mh, oracle::power(ref.mh, f.exponent));
        mh_pi = oracle::add(mh_pi, oracle::scale(ref.mh_pi, f.exponent));
        mpz_class c;
        mpz_pow_ui(c.get_mpz_t(), at_minus_one(ref.mh).get_mpz_t(), f.exponent);
        chi *= c;
        chi_pi += at_minus_one(ref.mh_pi) * f.exponent;
    }
    EXPECT_EQ(oracle::from(x.mh()), mh) << sample.text;
    EXPECT_EQ(oracle::from(x.mh_pi()), mh_pi) << sample.text;
    EXPECT_EQ(mhp::euler(x), chi) << sample.text;
    EXPECT_EQ(mhp::euler_pi(x), chi_pi) << sample.text;
}

TEST_P(CatalogProperty, BinaryProductLaws) {
    std::mt19937 rng(GetParam() + 500);
    auto x = mhp::parse_space_expr(gen::space(rng).text);
    auto y = mhp::parse_space_expr(gen::space(rng).text);
    auto xy = mhp::product(x, y);
    EXPECT_EQ(xy.mh(), x.mh() * y.mh());
    EXPECT_EQ(xy.mh_pi(), x.mh_pi() + y.mh_pi());
    EXPECT_EQ(mhp::euler(xy), mhp::euler(x) * mhp::euler(y));
    EXPECT_EQ(mhp::euler_pi(xy), mhp::euler_pi(x) + mhp::euler_pi(y));
}

TEST_P(CatalogProperty, TotalBettiIsCoefficientSum) {
    std::mt19937 rng(GetParam() + 1000);
    auto x = mhp::parse_space_expr(gen::space(rng).text);
    mhp::RationalPoint ones{1, 1, 1};
    EXPECT_EQ(x.mh().eval(ones), x.mh().coefficient_sum());
    EXPECT_EQ(x.mh_pi().eval(ones), x.mh_pi().coefficient_sum());
}

TEST_P(CatalogProperty, ConnectedAndSimplyConnected) {
    std::mt19937 rng(GetParam() + 1500);
    auto x = mhp::parse_space_expr(gen::space(rng).text);
    EXPECT_EQ(x.mh().coefficient({0, 0, 0}), 1);
    for (const auto& [e, c] : x.mh_pi().terms()) EXPECT_GE(e.k, 2u);
}

TEST_P(CatalogProperty, PrintParseRoundTrip) {
    std::mt19937 rng(GetParam() + 2000);
    auto x = mhp::parse_space_expr(gen::space(rng).text);
    auto printed = x.to_string();
    auto again = mhp::parse_space_expr(printed);
    EXPECT_EQ(again, x) << printed;
    EXPECT_EQ(again.to_string(), printed);
}

INSTANTIATE_TEST_SUITE_P(Seeds, CatalogProperty, ::testing::Range(0u, 50u));
