#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "specfact/taylor_kernel.hpp"
#include "specfact/types.hpp"
#include "towers.hpp"

using namespace specfact;
using namespace testing_towers;

namespace {

// (z / (1 - conj(b) z))^l as a rational function, the independent route.
RatFn kernel_power(const FieldElement& b, unsigned l) {
    RatFn g = RatFn(Pol::z(), Pol({FieldElement(1), -conj(b)}));
    RatFn acc(FieldElement(1));
    for (unsigned k = 0; k < l; ++k) acc *= g;
    return acc;
}

}  // namespace

TEST(TaylorKernel, SeriesPowerMatchesTruncatedProducts) {
    NestedTower t;
    std::mt19937_64 rng(31);
    std::vector<FieldElement> base;
    for (int k = 0; k < 4; ++k) base.push_back(random_element(t.field, rng, 4));
    Pol p(base), acc(FieldElement(1));
    for (unsigned e = 0; e <= 4; ++e) {
        auto s = series_power<FieldElement>(base, e, 7);
        for (std::size_t k = 0; k < 7; ++k) EXPECT_EQ(s[k], acc.coeff(k));
        acc *= p;
    }
    EXPECT_TRUE(series_power<FieldElement>(base, 3, 0).empty());
}

TEST(TaylorKernel, TransferMatrixAgreesWithRationalFunctionExpansion) {
    NestedTower t;
    GaussianTower g;
    const std::vector<std::pair<FieldElement, FieldElement>> cases{
        {frac(-1, 3), frac(-1, 3)},
        {t.s2 / 2, frac(1, 5) - t.s2 / 3},
        {frac(1, 4) * g.i, (g.r2 + g.i) / 3},
        {FieldElement(0), frac(1, 2) * g.i},
    };
    for (const auto& [a, b] : cases) {
        auto tm = transfer_matrix(a, b, 5, 3);
        for (unsigned l = 1; l <= 3; ++l) {
            auto c = taylor_coeffs(kernel_power(b, l), a, 5);
            for (std::size_t k = 0; k < 5; ++k) EXPECT_EQ(tm.entries(k, l - 1), c[k]) << k << "," << l;
        }
    }
}

TEST(TaylorKernel, FirstColumnClosedForm) {
    // with b* = 1/conj(b): coefficient 0 is a b*/(b* - a), coefficient k >= 1 is b*^2/(b* - a)^(k+1)
    NestedTower t;
    const FieldElement a = t.s2 / 4, b = frac(2, 7) + t.s2 / 5;
    const FieldElement bs = conj(b).inverse();
    auto tm = transfer_matrix(a, b, 6, 1);
    EXPECT_EQ(tm.entries(0, 0), a * bs / (bs - a));
    FieldElement pw = (bs - a) * (bs - a);
    for (std::size_t k = 1; k < 6; ++k) {
        EXPECT_EQ(tm.entries(k, 0), bs * bs / pw) << k;
        pw *= bs - a;
    }
}

TEST(TaylorKernel, ApplyTransferExpandsReflectedSum) {
    GaussianTower g;
    std::mt19937_64 rng(41);
    const FieldElement a = frac(1, 3) - g.i / 4, b = g.r2 / 3;
    std::vector<FieldElement> c{random_element(g.field, rng), random_element(g.field, rng),
                                random_element(g.field, rng)};
    RatFn u;
    std::vector<FieldElement> conj_c;
    for (unsigned l = 1; l <= 3; ++l) {
        u += kernel_power(b, l) * RatFn(conj(c[l - 1]));
        conj_c.push_back(conj(c[l - 1]));
    }
    auto tm = transfer_matrix(a, b, 4, 3);
    EXPECT_EQ(apply_transfer<FieldElement>(tm, conj_c), taylor_coeffs(u, a, 4));
    EXPECT_THROW(apply_transfer<FieldElement>(tm, std::vector<FieldElement>{1}), math_error);
}

TEST(TaylorKernel, RejectsReflectedPoleAtExpansionPoint) {
    EXPECT_THROW(transfer_matrix(FieldElement(2), frac(1, 2), 2, 1), math_error);
}

TEST(TaylorKernel, CacheReturnsStableEntriesAcrossThreads) {
    TransferCache<FieldElement> cache;
    const auto& first = cache.get(frac(1, 2), frac(1, 3), 3, 2);
    std::vector<std::thread> pool;
    for (int k = 0; k < 4; ++k)
        pool.emplace_back([&cache, k] { cache.get(frac(1, 2 + k), frac(1, 3), 3, 2); });
    for (auto& th : pool) th.join();
    EXPECT_EQ(first.entries, transfer_matrix(frac(1, 2), frac(1, 3), 3, 2).entries);
    EXPECT_EQ(&cache.get(frac(1, 2), frac(1, 3), 3, 2), &first);
}
