#include <gtest/gtest.h>

#include <random>

#include "specfact/completion.hpp"
#include "towers.hpp"

using namespace specfact;
using namespace testing_towers;

namespace {

const RatFn Z = RatFn::z();
RatFn K(const FieldElement& c) { return RatFn(c); }

// ((3z+3)/(5z+6), (4z+5)/(5z+6), (z+1)/(6z+5)); the last entry is tilde(v_3) with
// v_3 = (z+1)/(5z+6), and every reflected pole sits at -5/6.
UnitRow three_entry_row() {
    const std::vector<RatFn> shown{(K(3) * Z + K(3)) / (K(5) * Z + K(6)), (K(4) * Z + K(5)) / (K(5) * Z + K(6)),
                                   (Z + K(1)) / (K(6) * Z + K(5))};
    const Pole p{frac(-5, 6), 1};
    return make_unit_row(shown, {{p}, {p}, {p}}, {});
}

ScalarMatrix published_w() {
    ScalarMatrix w{{30, -45, -10}, {45, 26, 18}, {10, 18, -51}};
    return w.map([](const FieldElement& x) { return x / 55; });
}

// All zeros of p outside the closed unit disk, by the Schur-Cohn recursion over Q.
bool zero_free_in_closed_disk(Pol p) {
    while (p.degree() > 0) {
        const std::size_t n = static_cast<std::size_t>(p.degree());
        std::vector<FieldElement> rev(p.coeffs().rbegin(), p.coeffs().rend());
        const FieldElement a0 = p.coeffs()[0], an = p.coeffs()[n];
        Pol t = Pol(a0) * p - Pol(an) * Pol(rev);
        const FieldElement d = t.is_zero() ? FieldElement(0) : t.coeffs()[0];
        if (d.sign() <= 0) return false;
        p = t;
    }
    return true;
}

void expect_completes(const UnitRow& row, const CompletionResult& res) {
    const std::vector<RatFn> shown = row.displayed();
    for (std::size_t i = 0; i < row.m; ++i) {
        EXPECT_EQ(res.V(i, 0), shown[i]);
        EXPECT_EQ(res.V_T(0, i), shown[i]);
    }
    EXPECT_EQ(res.V * tilde(res.V), RatMatrix::identity(row.m));
    EXPECT_TRUE(res.certificate.passed()) << res.certificate.first_failure();
}

}  // namespace

TEST(Completion, SchurCohnOracle) {
    EXPECT_TRUE(zero_free_in_closed_disk(Pol({FieldElement(-2), FieldElement(1)})));
    EXPECT_FALSE(zero_free_in_closed_disk(Pol({frac(-1, 2), FieldElement(1)})));
    EXPECT_FALSE(zero_free_in_closed_disk(Pol({FieldElement(-1), FieldElement(1)})));
    // (z - 3)(z + 1/2)
    EXPECT_FALSE(zero_free_in_closed_disk(Pol({frac(-3, 2), frac(-5, 2), FieldElement(1)})));
    // (z - 3)(z + 2)
    EXPECT_TRUE(zero_free_in_closed_disk(Pol({FieldElement(-6), FieldElement(-1), FieldElement(1)})));
}

TEST(Completion, VerifyUnitRow) {
    EXPECT_TRUE(verify_unit_row(three_entry_row()));
    EXPECT_TRUE(verify_unit_row(make_unit_row({K(1), RatFn(), RatFn()}, {}, {})));
    EXPECT_FALSE(verify_unit_row(make_unit_row({K(1), K(1), RatFn()}, {}, {})));
    // (3z+3)/(5z+6) replaced by (3z+4)/(5z+6)
    UnitRow bad = three_entry_row();
    bad.v[0] = (K(3) * Z + K(4)) / (K(5) * Z + K(6));
    EXPECT_FALSE(verify_unit_row(bad));
}

TEST(Completion, RowAnnotationsAreChecked) {
    const std::vector<RatFn> shown{(K(3) * Z + K(3)) / (K(5) * Z + K(6)), (K(4) * Z + K(5)) / (K(5) * Z + K(6)),
                                   (Z + K(1)) / (K(6) * Z + K(5))};
    EXPECT_THROW(make_unit_row(shown, {{{frac(-5, 6), 2}}, {}, {}}, {}), inconsistent_input);
    EXPECT_THROW(make_unit_row(shown, {{{FieldElement(-2), 1}}, {}, {}}, {}), input_error);
    EXPECT_THROW(make_unit_row(shown, {}, {{frac(1, 2), 1}}), inconsistent_input);
    EXPECT_THROW(make_unit_row(shown, {{}, {}}, {}), input_error);
}

TEST(Completion, ThreeEntryRowPhiShortcut) {
    const UnitRow row = three_entry_row();
    CompletionResult res = complete(row);
    EXPECT_TRUE(res.corona_skipped);
    const RatFn d = K(6) * Z + K(5);
    ASSERT_EQ(res.phi.phis.size(), 2u);
    EXPECT_EQ(pf_to_ratfn(res.phi.phis[0]), K(11) / (K(2) * d));
    EXPECT_EQ(pf_to_ratfn(res.phi.phis[1]), K(-11) / (K(6) * d));
    EXPECT_EQ(res.phi.phis[0].terms[0].coeffs, (std::vector<FieldElement>{frac(11, 12)}));
    EXPECT_EQ(res.phi.phis[1].terms[0].coeffs, (std::vector<FieldElement>{frac(-11, 36)}));
    EXPECT_EQ(res.W, published_w());
}

TEST(Completion, ThreeEntryRowPublishedV) {
    const UnitRow row = three_entry_row();
    CompletionResult res = complete(row);
    const RatFn d5 = K(5) * Z + K(6), d6 = K(6) * Z + K(5);
    const RatMatrix v{{(K(3) * Z + K(3)) / d5, -(K(24) * Z + K(21)) / (K(5) * d5), -(K(7) * Z + K(3)) / (K(5) * d5)},
                      {(K(4) * Z + K(5)) / d5, (K(13) * Z + K(13)) / (K(5) * d5), (K(9) * Z + K(9)) / (K(5) * d5)},
                      {(Z + K(1)) / d6, (K(7) * Z + K(11)) / (K(5) * d6), -(K(24) * Z + K(27)) / (K(5) * d6)}};
    EXPECT_EQ(res.V, v);
    EXPECT_EQ(res.V_T, v.transposed());
    // the partial-fraction display of the same matrix
    const RatMatrix pf{
        {K(frac(1, 2)) + Z / (K(2) * d5), K(frac(-7, 10)) - K(13) * Z / (K(10) * d5),
         K(frac(-1, 10)) - K(9) * Z / (K(10) * d5)},
        {K(frac(5, 6)) - Z / (K(6) * d5), K(frac(13, 30)) + K(13) * Z / (K(30) * d5),
         K(frac(3, 10)) + K(3) * Z / (K(10) * d5)},
        {K(frac(1, 6)) + K(1) / (K(6) * d6), K(frac(7, 30)) + K(31) / (K(30) * d6),
         K(frac(-4, 5)) - K(7) / (K(5) * d6)}};
    EXPECT_EQ(res.V, pf);
    expect_completes(row, res);
}

TEST(Completion, CompletionConstant) {
    EXPECT_EQ(unitary_completion_constant({frac(6, 11), frac(9, 11), frac(2, 11)}), published_w());
    EXPECT_EQ(determinant(published_w()), FieldElement(-1));
    EXPECT_EQ(unitary_completion_constant({FieldElement(1), FieldElement(0), FieldElement(0)}),
              ScalarMatrix::identity(3));
    EXPECT_EQ(unitary_completion_constant({FieldElement(-1), FieldElement(0), FieldElement(0)}),
              (ScalarMatrix{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}));
    EXPECT_THROW(unitary_completion_constant({FieldElement(1), FieldElement(1)}), input_error);

    // (3i/5, 4(1+i)/(5 sqrt 2)) over Q(sqrt 2)(i)
    GaussianTower g;
    const std::vector<FieldElement> c{FieldElement(3) * g.i / 5, FieldElement(4) * (FieldElement(1) + g.i) / (5 * g.r2)};
    const ScalarMatrix w = unitary_completion_constant(c);
    EXPECT_EQ(w * adjoint(w), ScalarMatrix::identity(2));
    EXPECT_EQ(w(0, 0), c[0]);
    EXPECT_EQ(w(1, 0), c[1]);
    // unimodular c_1 with c' = 0
    EXPECT_EQ(unitary_completion_constant({g.i, FieldElement(0)}),
              (ScalarMatrix{{g.i, FieldElement(0)}, {FieldElement(0), -g.i}}));
}

TEST(Completion, CayleyConstant) {
    const ScalarMatrix w = cayley_completion_constant({frac(6, 11), frac(9, 11), frac(2, 11)});
    EXPECT_EQ(w.map([](const FieldElement& x) { return x * 55; }),
              (ScalarMatrix{{30, -45, -10}, {45, frac(530, 17), frac(-90, 17)}, {10, frac(-90, 17), frac(915, 17)}}));
    EXPECT_EQ(determinant(w), FieldElement(1));
    EXPECT_EQ(cayley_completion_constant({FieldElement(1), FieldElement(0), FieldElement(0)}),
              ScalarMatrix::identity(3));
    EXPECT_EQ(cayley_completion_constant({FieldElement(-1), FieldElement(0), FieldElement(0)}),
              (ScalarMatrix{{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}}));

    GaussianTower g;
    const std::vector<FieldElement> c{FieldElement(3) * g.i / 5, FieldElement(4) * (FieldElement(1) + g.i) / (5 * g.r2)};
    const ScalarMatrix wc = cayley_completion_constant(c);
    EXPECT_EQ(wc * adjoint(wc), ScalarMatrix::identity(2));
    // skew-Hermitian A only makes det W unimodular
    const FieldElement det = determinant(wc);
    EXPECT_EQ(det * conj(det), FieldElement(1));
    for (std::size_t k = 0; k < 2; ++k) EXPECT_EQ(wc(k, 0), c[k]);
}

TEST(Completion, CompletionConstantsOnRandomUnitVectors) {
    // rational unit vectors from the inverse stereographic map
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<long> d(-6, 6);
    for (int t = 0; t < 20; ++t) {
        const long p = d(rng), q = d(rng), r = d(rng);
        const long n = p * p + q * q + r * r + 1;
        const std::vector<FieldElement> c{frac(1 - p * p - q * q - r * r, n), frac(2 * p, n), frac(2 * q, n),
                                          frac(2 * r, n)};
        for (const ScalarMatrix& w : {unitary_completion_constant(c), cayley_completion_constant(c)}) {
            EXPECT_EQ(w * w.transposed(), ScalarMatrix::identity(4));
            for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(w(k, 0), c[k]);
        }
        // the first-row equation of A(c + e_1) = e_1 - c holds with A_11 = 0 once |c| = 1
        if ((FieldElement(1) + c[0]).is_zero()) continue;
        FieldElement sum(0);
        for (std::size_t k = 1; k < 4; ++k) sum += c[k] * c[k] / (1 + c[0]);
        EXPECT_EQ(sum, 1 - c[0]);
    }
}

TEST(Completion, CoronaEasyCases) {
    // v_m = 1: h = (0, ..., 0, 1) at degree 0
    UnitRow row = make_unit_row({RatFn(), RatFn(), K(1)}, {}, {});
    CoronaSolution h = solve_corona(row);
    EXPECT_EQ(h.degree, 0);
    EXPECT_EQ(h.h, (std::vector<Pol>{Pol(), Pol(), Pol(FieldElement(1))}));

    // the three-entry row's cleared family
    const UnitRow ex = three_entry_row();
    CoronaSolution hx = solve_corona(ex);
    RatFn sum;
    for (std::size_t i = 0; i < 3; ++i) sum += RatFn(hx.h[i]) * ex.v[i];
    EXPECT_EQ(sum, K(1));
    const Pol d5({FieldElement(6), FieldElement(5)}), d6({FieldElement(5), FieldElement(6)});
    const Pol zp1({FieldElement(1), FieldElement(1)});
    const std::vector<Pol> fam{Pol({FieldElement(3), FieldElement(3)}) * d6, Pol({FieldElement(5), FieldElement(4)}) * d6,
                               zp1 * d5};
    auto hb = solve_bezout(fam, d5 * d6, 4);
    ASSERT_TRUE(hb.has_value());
    Pol acc;
    for (std::size_t i = 0; i < 3; ++i) acc += hb->h[i] * fam[i];
    EXPECT_EQ(acc, d5 * d6);
}

TEST(Completion, CoronaObstruction) {
    // (3z/5, tilde(4z^2/5)): every v_i vanishes at 0
    const UnitRow row =
        make_unit_row({K(3) * Z / K(5), tilde(K(4) * Z * Z / K(5))}, {{}, {{FieldElement(0), 2}}}, {{FieldElement(0), 2}});
    EXPECT_TRUE(verify_unit_row(row));
    EXPECT_THROW(solve_corona(row), inconsistent_input);
    EXPECT_THROW(complete(row), inconsistent_input);
}

TEST(Completion, CoronaPathTwoEntries) {
    // (3/5, tilde(4z/5)): v_2 vanishes at 0
    const UnitRow row = make_unit_row({K(frac(3, 5)), tilde(K(4) * Z / K(5))}, {{}, {{FieldElement(0), 1}}},
                                      {{FieldElement(0), 1}});
    CompletionResult res = complete(row);
    EXPECT_FALSE(res.corona_skipped);
    EXPECT_EQ(res.h.degree, 0);
    EXPECT_EQ(pf_to_ratfn(res.phi.phis[0]), K(frac(-4, 3)) / Z);
    expect_completes(row, res);
}

TEST(Completion, CoronaPathThreeEntries) {
    // (3/5, 2z(1+z)/5, tilde(2z(1-z)/5))
    const RatFn v2 = K(2) * Z * (K(1) + Z) / K(5), v3 = K(2) * Z * (K(1) - Z) / K(5);
    const Pole p0{FieldElement(0), 2};
    const UnitRow row = make_unit_row({K(frac(3, 5)), v2, tilde(v3)}, {{}, {p0}, {p0}}, {{FieldElement(0), 1}});
    CompletionResult res = complete(row);
    EXPECT_FALSE(res.corona_skipped);
    expect_completes(row, res);
}

TEST(Completion, ConstantAndTrivialRows) {
    const UnitRow e1 = make_unit_row({K(1), RatFn(), RatFn()}, {}, {});
    EXPECT_EQ(complete(e1).V, RatMatrix::identity(3));

    const UnitRow c = make_unit_row({K(frac(6, 11)), K(frac(9, 11)), K(frac(2, 11))}, {}, {});
    CompletionResult res = complete(c);
    EXPECT_EQ(res.U, RatMatrix::identity(3));
    EXPECT_EQ(res.V, constant_matrix(published_w()));

    EXPECT_THROW(complete(make_unit_row({K(1)}, {}, {})), input_error);
    EXPECT_THROW(complete(make_unit_row({K(1), K(1)}, {}, {})), inconsistent_input);
}

TEST(Completion, IncompletePoleDataIsRejected) {
    // the reflected pole at -5/6 left out of the first entry's annotation
    const std::vector<RatFn> shown{(K(3) * Z + K(3)) / (K(5) * Z + K(6)), (K(4) * Z + K(5)) / (K(5) * Z + K(6)),
                                   (Z + K(1)) / (K(6) * Z + K(5))};
    const Pole p{frac(-5, 6), 1};
    const UnitRow row = make_unit_row(shown, {{}, {p}, {}}, {});
    EXPECT_THROW(complete(row), inconsistent_input);
}

TEST(Completion, ColumnsOfConstructedParaunitary) {
    // every column of a constructed U is a unit row; when the reflection v_m of its last
    // entry has a linear numerator the disk zero is known exactly
    std::mt19937_64 rng(23);
    int completed = 0, corona = 0;
    for (int t = 0; t < 12; ++t) {
        const std::size_t m = 2 + static_cast<std::size_t>(t % 2);
        std::uniform_int_distribution<long> num(-4, 4), coef(-6, 6);
        PhiRow phi;
        phi.m = m;
        const FieldElement a = frac(num(rng), 5);
        for (std::size_t i = 0; i + 1 < m; ++i) {
            PFrac f;
            FieldElement g(coef(rng));
            if (g.is_zero()) g = 1;
            f.terms.push_back({a, {g}});
            phi.phis.push_back(f);
        }
        const RatMatrix u = construct_paraunitary(phi).U;
        for (std::size_t j = 0; j < m; ++j) {
            std::vector<RatFn> shown;
            for (std::size_t i = 0; i < m; ++i) shown.push_back(u(i, j));
            const RatFn vm = tilde(shown.back());
            std::vector<Pole> zeros;
            if (vm.num().degree() == 1) {
                const FieldElement root = -vm.num().coeffs()[0] / vm.num().coeffs()[1];
                if (in_open_disk(root)) zeros.push_back({root, 1});
            } else if (vm.num().degree() > 1 && !zero_free_in_closed_disk(vm.num())) {
                continue;
            }
            std::vector<std::vector<Pole>> refl(m);
            for (std::size_t i = 0; i < m; ++i) {
                const RatFn vt = i + 1 < m ? tilde(shown[i]) : shown[i];
                const int n = pole_order_at(vt, a);
                if (n > 0) refl[i].push_back({a, n});
            }
            const UnitRow row = make_unit_row(shown, refl, zeros);
            ASSERT_TRUE(verify_unit_row(row));
            CompletionResult res = complete(row);
            expect_completes(row, res);
            ++completed;
            if (!res.corona_skipped) ++corona;
        }
    }
    EXPECT_GE(completed, 12);
    EXPECT_GE(corona, 4);
}
