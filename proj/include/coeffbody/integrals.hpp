#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "coeffbody/loewner.hpp"
#include "coeffbody/multipoly.hpp"

namespace coeffbody {

/// Values L_1..L_n of the first integrals (the constant vector conj(v) in the
/// series construction). Stored as computed from conj(psi); no conjugation is
/// applied on output.
struct FirstIntegralVector {
    CVector v;
    std::size_t n() const { return v.size(); }
};

/// Upper unitriangular matrix M(c) with M(j,k) = (k-j+1) c_{k-j} for k > j.
/// Entries are polynomials in c_1..c_n (variable i-1 is c_i).
struct TriangularTransform {
    std::size_t n = 0;
    std::vector<std::vector<MultiPoly>> entries;  // row-major, n x n

    static TriangularTransform build(std::size_t n);
    /// Exact determinant by cofactor expansion down the first column.
    MultiPoly determinant() const;
};

/// L = M(c) * psi_bar. Generic over the scalar type.
template <class T>
std::vector<T> first_integrals_kernel(std::span<const T> c, std::span<const T> psi_bar) {
    if (c.size() != psi_bar.size()) {
        throw std::invalid_argument("first_integrals: dimension mismatch");
    }
    const std::size_t n = c.size();
    std::vector<T> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        T acc = psi_bar[j];
        for (std::size_t k = j + 1; k < n; ++k) {
            acc = acc + T(static_cast<long>(k - j + 1)) * c[k - j - 1] * psi_bar[k];
        }
        out[j] = acc;
    }
    return out;
}

/// psi_bar = M(c)^{-1} * v by back-substitution.
template <class T>
std::vector<T> invert_integrals_kernel(std::span<const T> c, std::span<const T> v) {
    if (c.size() != v.size()) {
        throw std::invalid_argument("invert_integrals: dimension mismatch");
    }
    const std::size_t n = c.size();
    std::vector<T> psi_bar(n);
    for (std::size_t j = n; j-- > 0;) {
        T acc = v[j];
        for (std::size_t k = j + 1; k < n; ++k) {
            acc = acc - T(static_cast<long>(k - j + 1)) * c[k - j - 1] * psi_bar[k];
        }
        psi_bar[j] = acc;
    }
    return psi_bar;
}

/// L = M(c) conj(psi).
FirstIntegralVector first_integrals(const CoefficientState& state, const AdjointState& psi);
/// Returns psi (un-conjugated) with M(c) conj(psi) = v.
AdjointState invert_integrals(const CoefficientState& state, const FirstIntegralVector& v);

/// Phase-space polynomial ring: variables c_1..c_n (indices 0..n-1) followed by
/// conj(psi)_1..conj(psi)_n (indices n..2n-1).
std::size_t phase_space_vars(std::size_t n);
MultiPoly phase_c(std::size_t n, std::size_t k);
MultiPoly phase_psi_bar(std::size_t n, std::size_t k);

/// L_k as a polynomial on phase space, linear in conj(psi).
MultiPoly first_integral_poly(std::size_t n, std::size_t k);

/// Lie-Poisson bracket on phase-space polynomials,
///     [f, g] = sum_k (df/dpsi_bar_k dg/dc_k - df/dc_k dg/dpsi_bar_k).
/// With this orientation [L_j, L_k] = (j - k) L_{j+k} and Hamilton's equations
/// read dx/dt = [H, x].
MultiPoly poisson_bracket(const MultiPoly& f, const MultiPoly& g);

/// Largest drift max_t |L_k(t) - L_k(0)| / (1 + |L_k(0)|) along a co-integrated path.
double first_integral_drift(const CoefficientPath& path);

}  // namespace coeffbody
