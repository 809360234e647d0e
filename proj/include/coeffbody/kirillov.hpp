#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "coeffbody/multipoly.hpp"
#include "coeffbody/series.hpp"

namespace coeffbody {

using cd = std::complex<double>;

/// Vector field sum_m components[m] * d/dc_{m+1} with polynomial coefficients
/// in c_1..c_n.
struct PolyVectorField {
    std::size_t n = 0;
    std::vector<MultiPoly> components;

    static PolyVectorField zero(std::size_t n);

    PolyVectorField& operator+=(const PolyVectorField& o);
    friend PolyVectorField operator+(PolyVectorField a, const PolyVectorField& b) { return a += b; }
    friend PolyVectorField operator*(PolyVectorField a, const QComplex& s);
    friend bool operator==(const PolyVectorField& a, const PolyVectorField& b) {
        return a.n == b.n && a.components == b.components;
    }
    bool is_zero() const;

    /// Apply as a derivation. The polynomial may carry extra variables after
    /// c_1..c_n; those are treated as constants.
    MultiPoly apply(const MultiPoly& f) const;

    /// Components evaluated at a point.
    std::vector<QComplex> at(std::span<const QComplex> point) const;

    std::string to_string() const;
};

/// L_j = d_j + sum_{k=1}^{n-j} (k+1) c_k d_{j+k} on M_n.
PolyVectorField kirillov_field(std::size_t j, std::size_t n);

/// [X, Y]^m = sum_k X^k d_k Y^m - Y^k d_k X^m.
PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y);

struct BracketEntry {
    std::size_t j = 0;
    std::size_t k = 0;
    /// Integer c with [L_j, L_k] = c L_{j+k}, read off from the computed
    /// field; nullopt when the computed bracket is zero.
    std::optional<long> coefficient;
    /// "(j-k)L_{j+k}" with the indices filled in, or "0".
    std::string expected;
    bool exact_match = false;
};

/// Full commutator table of L_1..L_n, each entry computed symbolically.
std::vector<BracketEntry> bracket_table(std::size_t n);

/// Rank (exact) of the components at c = 0 of all iterated brackets of L_1, L_2.
std::size_t bracket_generated_rank(std::size_t n);

struct Grading {
    std::size_t n = 0;
    /// layers[0] = D, layers[k] = D_k; field indices are 1-based.
    std::vector<std::vector<std::size_t>> layers;
};

/// Layers D = {1,2}, D_1 = {3}, D_k = {2k, 2k+1} cut to {1..n}.
Grading grading(std::size_t n);
/// Same layering obtained by bracketing D with the previous layer and keeping
/// the fields not seen before.
Grading grading_from_brackets(std::size_t n);

/// sum_k (k+1) dim D_k, with D weighted 1.
mpq_class hausdorff_dimension(std::size_t n);
/// (n/2+1)^2 - 9/4 for odd n, (n/2+1)^2 - 2 for even n.
mpq_class hausdorff_dimension_closed_form(std::size_t n);

struct VariationResult {
    Series series;
    /// max coefficient change when the quadrature point count is halved.
    double residual = 0.0;
};

/// Pointwise Goluzin-Schiffer variation
///   f(z)^2 / (2 pi i) \oint_{|w|=radius} (w f'(w)/f(w))^2 nu(w) dw / (w (f(w) - f(z)))
/// by the trapezoidal rule; requires |z| < radius.
cd schiffer_variation_at(const Series& f, const std::function<cd(cd)>& nu, cd z, double radius,
                         std::size_t quad_points);

/// L_k(f) recovered from the variation with nu(w) = -i w^k. The raw variation
/// equals -i z^{k+1} f'(z); multiplying by i gives the holomorphic field action
/// z^{k+1} f'(z). Output order is order(f) + k. Parallel over sample points.
VariationResult goluzin_schiffer_variation(const Series& f, std::size_t k, double radius, std::size_t quad_points);
/// Single-threaded reference for the same computation.
VariationResult goluzin_schiffer_variation_serial(const Series& f, std::size_t k, double radius,
                                                  std::size_t quad_points);

}  // namespace coeffbody
