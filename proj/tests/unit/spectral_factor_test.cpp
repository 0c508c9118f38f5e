#include <gtest/gtest.h>

#include <random>

#include "specfact/spectral_factor.hpp"
#include "towers.hpp"

using namespace specfact;
using namespace testing_towers;

namespace {

const RatFn Z = RatFn::z();
RatFn K(const FieldElement& c) { return RatFn(c); }

struct NestedExample {
    NestedTower t;
    FieldElement a = t.s2, b = FieldElement(2) / t.s2;
    FieldElement z0 = (t.r5 - 3) / 2;
    FieldElement c = (t.r5 * (t.r5 - 1) / t.s2).inverse();

    TriangularFactor factor() const {
        TriangularFactor tf;
        tf.M = RatMatrix{{K(b) + K(a) * Z, RatFn()},
                         {(K(7) + K(22) * Z + K(11) * Z * Z) / (K(a) + K(b) * Z), (K(1) - Z * Z) / (K(b) + K(a) * Z)}};
        tf.pole_data.push_back({1, 0, {{z0, 1}}});
        return tf;
    }
    RatMatrix s() const {
        const RatFn w = Z.reciprocal();
        return RatMatrix{{K(2) * w + K(6) + K(2) * Z, K(11) * w + K(22) + K(7) * Z},
                         {K(7) * w + K(22) + K(11) * Z, K(38) * w + K(84) + K(38) * Z}};
    }
};

// Polynomial with |constant term| larger than the sum of the other |coefficients|:
// no zeros in the closed disk.
RatFn dominant_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> coef(-4, 4), deg(0, 2);
    std::vector<FieldElement> c(static_cast<std::size_t>(deg(rng)) + 1, FieldElement(0));
    long sum = 0;
    for (std::size_t k = 1; k < c.size(); ++k) {
        long v = coef(rng);
        c[k] = v;
        sum += v < 0 ? -v : v;
    }
    c[0] = sum + 1 + (coef(rng) + 4) / 2;
    return RatFn(Pol(c));
}

}  // namespace

TEST(SpectralFactor, NestedRadicalExampleEndToEnd) {
    NestedExample ex;
    FactorizationResult res = factorize(ex.factor(), true);
    ASSERT_EQ(res.stages.size(), 1u);
    const auto& phi = res.stages[0].phi.phis[0];
    ASSERT_EQ(phi.terms.size(), 1u);
    EXPECT_EQ(phi.terms[0].pole, ex.z0);
    EXPECT_EQ(phi.terms[0].coeffs, (std::vector<FieldElement>{(FieldElement(25) - 11 * ex.t.r5) / 2}));
    const auto& c = res.stages[0].paraunitary.coefficients;
    EXPECT_EQ(c[0], (std::vector<FieldElement>{(FieldElement(35) - 7 * ex.t.r5) / 20, (FieldElement(-11) + 5 * ex.t.r5) / 4,
                                               (FieldElement(5) - ex.t.r5) / 20, (FieldElement(-3) + ex.t.r5) / 4}));
    RatMatrix expect{{K(ex.c) * (K(7) + K(3) * Z), K(ex.c) * (K(-1) + Z)},
                     {K(ex.c) * (K(24) + K(16) * Z), K(ex.c) * (K(-2) + K(2) * Z)}};
    EXPECT_EQ(res.S_plus, expect);
    EXPECT_EQ(ex.c * ex.c, frac(1, 10));
    EXPECT_TRUE(res.certificate.passed());
    EXPECT_TRUE(verify_against_S(res, ex.s()).empty());
}

TEST(SpectralFactor, PerturbedTargetIsLocated) {
    NestedExample ex;
    FactorizationResult res = factorize(ex.factor(), true);
    RatMatrix s = ex.s();
    s(1, 0) += K(frac(1, 1000)) * Z;
    auto diff = verify_against_S(res, s);
    ASSERT_EQ(diff.size(), 1u);
    EXPECT_EQ(diff[0].row, 1u);
    EXPECT_EQ(diff[0].col, 0u);
    EXPECT_EQ(diff[0].actual, ex.s()(1, 0));
}

TEST(SpectralFactor, DiagonalFactorIsAlreadySpectral) {
    std::mt19937_64 rng(8);
    TriangularFactor tf;
    tf.M = RatMatrix::identity(3);
    for (std::size_t i = 0; i < 3; ++i) tf.M(i, i) = dominant_poly(rng);
    FactorizationResult res = factorize(tf, true);
    EXPECT_EQ(res.S_plus, tf.M);
    for (const auto& st : res.stages) EXPECT_EQ(st.paraunitary.U, RatMatrix::identity(st.m));
}

TEST(SpectralFactor, AnalyticRatioGivesIdentityStage) {
    TriangularFactor tf;
    tf.M = RatMatrix{{K(3) + Z, RatFn()}, {K(1) / (Z - K(4)), K(2)}};
    auto [row, plus] = split_bottom_row(tf.M, 2, {});
    EXPECT_TRUE(row.phis[0].is_zero());
    EXPECT_EQ(plus[0], tf.M(1, 0) / K(2));
    EXPECT_EQ(factorize(tf).S_plus, tf.M);
}

TEST(SpectralFactor, ZeroRowGivesZeroPhi) {
    TriangularFactor tf;
    tf.M = RatMatrix{{K(2), RatFn(), RatFn()}, {RatFn(), K(3), RatFn()}, {RatFn(), RatFn(), K(5) + Z}};
    auto [row, plus] = split_bottom_row(tf.M, 3, {frac(1, 2)});
    EXPECT_TRUE(row.phis[0].is_zero());
    EXPECT_TRUE(row.phis[1].is_zero());
}

TEST(SpectralFactor, RandomThreeByThreeFactors) {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<long> coef(-5, 5), num(-4, 4), den(5, 9);
    for (int trial = 0; trial < 5; ++trial) {
        TriangularFactor tf;
        tf.M = RatMatrix(3, 3);
        for (std::size_t i = 0; i < 3; ++i) tf.M(i, i) = dominant_poly(rng);
        for (std::size_t i = 1; i < 3; ++i)
            for (std::size_t j = 0; j < i; ++j) {
                const FieldElement a(num(rng), den(rng));
                RatFn p = K(coef(rng)) + K(coef(rng)) * Z;
                if (p.is_zero()) p = K(1);
                if (is_zero(p.num()(a))) p += K(1);
                tf.M(i, j) = p / (Z - K(a));
                tf.pole_data.push_back({i, j, {{a, 1}}});
            }
        FactorizationResult res = factorize(tf);
        EXPECT_TRUE(res.certificate.passed());
        // independent oracle: S+ tilde(S+) and M tilde(M) agree at sample points
        for (const FieldElement& x : {frac(7, 3), frac(-13, 5), frac(3, 11)}) {
            ScalarMatrix sp = evaluate(res.S_plus, x), spr = evaluate(res.S_plus, x.inverse());
            ScalarMatrix m = evaluate(tf.M, x), mr = evaluate(tf.M, x.inverse());
            EXPECT_EQ(sp * spr.transposed(), m * mr.transposed());
        }
        // S+ has no poles at the declared in-disk points
        for (const auto& e : tf.pole_data)
            for (std::size_t i = 0; i < 3; ++i)
                for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(pole_order_at(res.S_plus(i, j), e.poles[0].location), 0);
    }
}

TEST(SpectralFactor, RejectsInconsistentData) {
    NestedExample ex;
    TriangularFactor tf = ex.factor();
    tf.pole_data[0].poles[0].order = 2;
    EXPECT_THROW(factorize(tf), inconsistent_input);
    tf = ex.factor();
    tf.pole_data[0].poles[0].location = FieldElement(-2);
    EXPECT_THROW(factorize(tf), input_error);
    tf = ex.factor();
    tf.M(0, 1) = K(1);
    EXPECT_THROW(factorize(tf), input_error);
    // without the pole annotation the factor keeps an in-disk pole and is not polynomial
    tf = ex.factor();
    tf.pole_data.clear();
    EXPECT_THROW(factorize(tf, true), inconsistent_input);
}
