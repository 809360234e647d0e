#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "coeffbody/multipoly.hpp"
#include "coeffbody/qcomplex.hpp"

namespace coeffbody {

inline std::complex<double> zero_like(const std::complex<double>&) { return {}; }
inline std::complex<double> one_like(const std::complex<double>&) { return {1.0, 0.0}; }
inline std::complex<double> invert_unit(const std::complex<double>& z) {
    if (z == std::complex<double>{}) {
        throw std::domain_error("series: constant term is not invertible");
    }
    return 1.0 / z;
}

inline QComplex zero_like(const QComplex&) { return {}; }
inline QComplex one_like(const QComplex&) { return 1; }
inline QComplex invert_unit(const QComplex& z) {
    if (z.is_zero()) {
        throw std::domain_error("series: constant term is not invertible");
    }
    return QComplex(1) / z;
}

inline std::complex<double> int_like(const std::complex<double>&, long v) { return {static_cast<double>(v), 0.0}; }
inline QComplex int_like(const QComplex&, long v) { return v; }
inline MultiPoly int_like(const MultiPoly& p, long v) { return MultiPoly::constant(p.nvars(), v); }

inline bool scalar_is_zero(const std::complex<double>& z) { return z == std::complex<double>{}; }
inline bool scalar_is_zero(const QComplex& z) { return z.is_zero(); }
inline bool scalar_is_zero(const MultiPoly& p) { return p.is_zero(); }

/// Power series in one variable truncated at an explicit order N.
///
/// Holds coefficients of z^0..z^N. Binary operations truncate to the smaller
/// of the two orders. The scalar type is std::complex<double> for numerical
/// work, QComplex for exact checks, and MultiPoly for symbolic coefficients.
template <class T>
class TruncatedSeries {
public:
    explicit TruncatedSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs)) {
        if (coeffs_.empty()) {
            throw std::invalid_argument("TruncatedSeries: need at least one coefficient");
        }
    }

    /// Zero series of the given order, using `like` to build zero scalars.
    static TruncatedSeries zero(std::size_t order, const T& like = T{}) {
        return TruncatedSeries(std::vector<T>(order + 1, zero_like(like)));
    }
    /// The series z.
    static TruncatedSeries identity(std::size_t order, const T& like = T{}) {
        auto s = zero(order, like);
        if (order >= 1) {
            s.coeffs_[1] = one_like(like);
        }
        return s;
    }

    std::size_t order() const { return coeffs_.size() - 1; }
    const T& operator[](std::size_t k) const { return coeffs_.at(k); }
    T& operator[](std::size_t k) { return coeffs_.at(k); }
    std::span<const T> coeffs() const { return coeffs_; }

    TruncatedSeries truncated(std::size_t order) const {
        if (order >= coeffs_.size()) {
            throw std::invalid_argument("TruncatedSeries::truncated: cannot raise the order");
        }
        return TruncatedSeries(std::vector<T>(coeffs_.begin(), coeffs_.begin() + order + 1));
    }

    TruncatedSeries operator-() const {
        TruncatedSeries r(*this);
        for (auto& c : r.coeffs_) {
            c = zero_like(c) - c;
        }
        return r;
    }

    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
        std::size_t n = std::min(a.order(), b.order());
        std::vector<T> out;
        out.reserve(n + 1);
        for (std::size_t k = 0; k <= n; ++k) {
            out.push_back(a.coeffs_[k] + b.coeffs_[k]);
        }
        return TruncatedSeries(std::move(out));
    }
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

    friend TruncatedSeries operator*(const TruncatedSeries& a, const T& s) {
        TruncatedSeries r(a);
        for (auto& c : r.coeffs_) {
            c = c * s;
        }
        return r;
    }

    /// Formal derivative; the result has order N-1 (order 0 stays order 0).
    TruncatedSeries derivative() const {
        if (order() == 0) {
            return zero(0, coeffs_[0]);
        }
        std::vector<T> out;
        out.reserve(order());
        for (std::size_t k = 1; k <= order(); ++k) {
            out.push_back(coeffs_[k] * int_like(coeffs_[k], static_cast<long>(k)));
        }
        return TruncatedSeries(std::move(out));
    }

    /// Multiplicative inverse; the constant term must be a unit of the scalar ring.
    TruncatedSeries reciprocal() const {
        T inv0 = invert_unit(coeffs_[0]);
        std::vector<T> out(coeffs_.size(), zero_like(coeffs_[0]));
        out[0] = inv0;
        for (std::size_t k = 1; k < coeffs_.size(); ++k) {
            T acc = zero_like(coeffs_[0]);
            for (std::size_t j = 1; j <= k; ++j) {
                if (!scalar_is_zero(coeffs_[j])) {
                    acc = acc + coeffs_[j] * out[k - j];
                }
            }
            out[k] = zero_like(acc) - acc * inv0;
        }
        return TruncatedSeries(std::move(out));
    }

    /// Evaluate the truncated polynomial at a point (Horner).
    template <class U>
    U evaluate(const U& z) const {
        U acc = U(coeffs_.back());
        for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
            acc = acc * z + U(coeffs_[k]);
        }
        return acc;
    }

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<T> coeffs_;
};

using Series = TruncatedSeries<std::complex<double>>;
using ExactSeries = TruncatedSeries<QComplex>;
using PolySeries = TruncatedSeries<MultiPoly>;

/// Cauchy product truncated at min(order a, order b).
template <class T>
TruncatedSeries<T> series_mul(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
    std::size_t n = std::min(a.order(), b.order());
    std::vector<T> out(n + 1, zero_like(a[0]));
    for (std::size_t i = 0; i <= n; ++i) {
        if (scalar_is_zero(a[i])) {
            continue;
        }
        for (std::size_t j = 0; i + j <= n; ++j) {
            if (!scalar_is_zero(b[j])) {
                out[i + j] = out[i + j] + a[i] * b[j];
            }
        }
    }
    return TruncatedSeries<T>(std::move(out));
}

template <class T>
TruncatedSeries<T> operator*(const TruncatedSeries<T>& a, const TruncatedSeries<T>& b) {
    return series_mul(a, b);
}

/// outer(inner(z)); the inner series must have zero constant term.
/// Sums outer_k * inner^k with a running power, truncated at min order.
template <class T>
TruncatedSeries<T> series_compose(const TruncatedSeries<T>& outer, const TruncatedSeries<T>& inner) {
    if (!scalar_is_zero(inner[0])) {
        throw std::invalid_argument("series_compose: inner series must have zero constant term");
    }
    std::size_t n = std::min(outer.order(), inner.order());
    auto inner_n = inner.truncated(n);
    auto result = TruncatedSeries<T>::zero(n, outer[0]);
    result[0] = outer[0];
    auto power = inner_n;
    // inner^k starts at z^k, so terms with k > n contribute nothing.
    for (std::size_t k = 1; k <= n; ++k) {
        if (!scalar_is_zero(outer[k])) {
            for (std::size_t j = k; j <= n; ++j) {
                if (!scalar_is_zero(power[j])) {
                    result[j] = result[j] + outer[k] * power[j];
                }
            }
        }
        if (k < n) {
            power = series_mul(power, inner_n);
        }
    }
    return result;
}

/// Schwarzian derivative f'''/f' - (3/2)(f''/f')^2, truncated at order N-3.
/// Requires order >= 3 and an invertible f'(0).
template <class T>
TruncatedSeries<T> schwarzian(const TruncatedSeries<T>& f) {
    if (f.order() < 3) {
        throw std::invalid_argument("schwarzian: need series order >= 3");
    }
    auto d1 = f.derivative();
    if (scalar_is_zero(d1[0])) {
        throw std::domain_error("schwarzian: f'(0) = 0, cannot divide by f'");
    }
    auto d2 = d1.derivative();
    auto d3 = d2.derivative();
    auto inv = d1.reciprocal();
    auto ratio2 = series_mul(d2, inv);
    auto ratio3 = series_mul(d3, inv);
    auto sq = series_mul(ratio2, ratio2);
    T three_halves = int_like(f[0], 3) * invert_unit(int_like(f[0], 2));
    return ratio3 - sq * three_halves;
}

}  // namespace coeffbody
