#pragma once

#include <cstddef>

#include "specfact/field_tower.hpp"
#include "specfact/matrix.hpp"
#include "specfact/poly.hpp"
#include "specfact/ratfun.hpp"

namespace specfact {

using Pol = Poly<FieldElement>;
using RatFn = RationalFunction<FieldElement>;
using RatMatrix = Matrix<RatFn>;
using Pole = PoleSpec<FieldElement>;
using PFrac = PartialFraction<FieldElement>;
using ScalarMatrix = Matrix<FieldElement>;

/// Entrywise tilde of the transpose: tilde(F) = [tilde(F_ji)].
template <ExactField K>
Matrix<RationalFunction<K>> tilde(const Matrix<RationalFunction<K>>& m) {
    return m.transposed().map([](const RationalFunction<K>& f) { return tilde(f); });
}

template <ExactField K>
Matrix<K> evaluate(const Matrix<RationalFunction<K>>& m, const K& z) {
    return m.map([&](const RationalFunction<K>& f) { return f(z); });
}

template <ExactField K>
Matrix<RationalFunction<K>> constant_matrix(const Matrix<K>& m) {
    return m.map([](const K& x) { return RationalFunction<K>(x); });
}

/// Entrywise conjugate transpose of a constant matrix.
template <ExactField K>
Matrix<K> adjoint(const Matrix<K>& m) {
    return m.transposed().map([](const K& x) { return K(conj(x)); });
}

}  // namespace specfact
