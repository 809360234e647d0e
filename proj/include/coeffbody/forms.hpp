#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "coeffbody/kirillov.hpp"
#include "coeffbody/multipoly.hpp"

namespace coeffbody {

/// Differential form of degree 1..3 on M_n with polynomial coefficients,
/// sum over increasing index tuples I of a_I dc_{i_1} ^ ... ^ dc_{i_p}.
/// Indices are 1-based; zero coefficients are never stored.
class PolyForm {
public:
    static constexpr std::size_t kMaxDegree = 3;
    using Index = std::vector<std::size_t>;

    PolyForm(std::size_t n, std::size_t degree);

    /// dc_k.
    static PolyForm dc(std::size_t n, std::size_t k);

    std::size_t n() const { return n_; }
    std::size_t degree() const { return degree_; }
    const std::map<Index, MultiPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Coefficient of the given (not necessarily sorted) index tuple, with the
    /// sign of the sorting permutation.
    MultiPoly coefficient(Index index) const;

    /// Adds coeff * dc_{index[0]} ^ ...; unsorted or repeated indices are normalized.
    void add_term(Index index, const MultiPoly& coeff);

    PolyForm& operator+=(const PolyForm& o);
    PolyForm& operator-=(const PolyForm& o);
    friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
    friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
    friend PolyForm operator*(const MultiPoly& f, const PolyForm& a);
    friend bool operator==(const PolyForm& a, const PolyForm& b) {
        return a.n_ == b.n_ && a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }

    /// Coefficients evaluated at a point (form at a fixed base point).
    PolyForm at(std::span<const QComplex> point) const;

    std::string to_string() const;

private:
    void require_same_space(const PolyForm& o) const;

    std::size_t n_;
    std::size_t degree_;
    std::map<Index, MultiPoly> terms_;
};

/// omega_1 = dc_1, omega_k = dc_k - sum_{m=1}^{k-1} (m+1) c_m omega_{k-m}.
std::vector<PolyForm> dual_basis_forms(std::size_t n);

/// eta_k = dc_k - k c_{k-1} omega_1 - (k-1) c_{k-2} omega_2 for k = 3..n.
std::vector<PolyForm> eta_forms(std::size_t n);

/// Contraction of a 1-form with a vector field.
MultiPoly pair(const PolyForm& form, const PolyVectorField& field);

/// Exterior derivative through d/dc_k only; degrees 1 and 2.
PolyForm exterior_derivative(const PolyForm& form);

/// Graded wedge product; total degree at most 3.
PolyForm wedge(const PolyForm& a, const PolyForm& b);

}  // namespace coeffbody
