#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "coeffbody/qcomplex.hpp"

namespace coeffbody {

/// Multivariate polynomial with exact complex-rational coefficients.
///
/// Terms are kept in a std::map keyed by exponent vectors, so iteration order
/// is canonical (lexicographic in the exponents) and two equal polynomials
/// compare equal structurally. Zero coefficients are never stored.
class MultiPoly {
public:
    using Exponent = std::vector<unsigned>;
    using TermMap = std::map<Exponent, QComplex>;

    explicit MultiPoly(std::size_t nvars = 0) : nvars_(nvars) {}

    static MultiPoly constant(std::size_t nvars, const QComplex& value);
    static MultiPoly variable(std::size_t nvars, std::size_t index);
    static MultiPoly monomial(std::size_t nvars, Exponent exponent, const QComplex& coeff);

    std::size_t nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    QComplex constant_term() const;
    /// Coefficient of a given monomial (zero if absent).
    QComplex coefficient(const Exponent& exponent) const;
    unsigned total_degree() const;

    void add_term(const Exponent& exponent, const QComplex& coeff);

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& o);
    MultiPoly& operator-=(const MultiPoly& o);
    MultiPoly& operator*=(const MultiPoly& o);
    MultiPoly& operator*=(const QComplex& s);

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(MultiPoly a, const QComplex& s) { return a *= s; }
    friend MultiPoly operator*(const QComplex& s, MultiPoly a) { return a *= s; }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    /// Partial derivative with respect to variable `var`.
    MultiPoly derivative(std::size_t var) const;

    /// Same polynomial viewed in a ring with more variables (appended at the end).
    MultiPoly extended(std::size_t nvars) const;

    /// Substitute a constant for one variable; the variable count is unchanged.
    MultiPoly substitute(std::size_t var, const QComplex& value) const;

    /// Coefficient-wise complex conjugation.
    MultiPoly conj() const;

    QComplex evaluate(std::span<const QComplex> point) const;
    std::complex<double> evaluate(std::span<const std::complex<double>> point) const;

    /// Human-readable rendering; `names` must cover every variable.
    std::string to_string(std::span<const std::string> names) const;
    /// Rendering with default names x1, x2, ...
    std::string to_string() const;

private:
    void require_same_ring(const MultiPoly& o) const;

    std::size_t nvars_;
    TermMap terms_;
};

// Hooks for the generic series code.
inline MultiPoly zero_like(const MultiPoly& p) { return MultiPoly(p.nvars()); }
inline MultiPoly one_like(const MultiPoly& p) { return MultiPoly::constant(p.nvars(), 1); }
MultiPoly invert_unit(const MultiPoly& p);
inline MultiPoly conj_scalar(const MultiPoly& p) { return p.conj(); }

/// Names c1..cn.
std::vector<std::string> coefficient_names(std::size_t n);

}  // namespace coeffbody
