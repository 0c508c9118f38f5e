#pragma once

// Shared fields and small helpers for the unit tests.

#include <cmath>
#include <random>

#include "specfact/field_tower.hpp"

namespace testing_towers {

using specfact::FieldDescriptor;
using specfact::FieldElement;
using specfact::FieldPtr;

// Q(sqrt 5)(sqrt (3 - s1))
struct NestedTower {
    FieldPtr q5 = FieldDescriptor::adjoin_sqrt(nullptr, FieldElement(5));
    FieldElement s1 = FieldElement::root(q5, 1);
    FieldPtr field = FieldDescriptor::adjoin_sqrt(q5, FieldElement(3) - s1);
    FieldElement r5 = FieldElement::root(field, 1);
    FieldElement s2 = FieldElement::root(field, 2);
};

// Q(sqrt 2)(i)
struct GaussianTower {
    FieldPtr field = FieldDescriptor::adjoin_i(FieldDescriptor::adjoin_sqrt(nullptr, FieldElement(2)));
    FieldElement r2 = FieldElement::root(field, 1);
    FieldElement i = FieldElement::imaginary_unit(field);
};

// Q(i)
inline FieldPtr gaussian_rationals() { return FieldDescriptor::adjoin_i(nullptr); }

inline FieldElement frac(long n, long d) { return FieldElement(n, d); }

// Random element with small rational coordinates.
inline FieldElement random_element(const FieldPtr& f, std::mt19937_64& rng, int span = 9) {
    std::uniform_int_distribution<long> num(-span, span), den(1, 5);
    specfact::Coords c(f ? f->dimension() : 1);
    for (auto& q : c) q = specfact::Rational(num(rng), den(rng));
    return FieldElement(f, c);
}

// Floating-point image under the positive-root embedding; real part only.
inline double approx_real(const FieldElement& x) {
    const auto& f = x.field();
    if (!f) return x.coords()[0].get_d();
    const std::size_t real_dim = std::size_t{1} << f->real_levels();
    std::vector<double> roots;
    for (std::size_t k = 0; k < f->real_levels(); ++k) {
        double r = 0;
        const auto& rad = f->radicands()[k];
        for (std::size_t idx = 0; idx < rad.size(); ++idx) {
            double term = rad[idx].get_d();
            for (std::size_t j = 0; j < k; ++j)
                if (idx & (std::size_t{1} << j)) term *= roots[j];
            r += term;
        }
        roots.push_back(std::sqrt(r));
    }
    double acc = 0;
    for (std::size_t idx = 0; idx < real_dim; ++idx) {
        double term = x.coords()[idx].get_d();
        for (std::size_t j = 0; j < roots.size(); ++j)
            if (idx & (std::size_t{1} << j)) term *= roots[j];
        acc += term;
    }
    return acc;
}

}  // namespace testing_towers
