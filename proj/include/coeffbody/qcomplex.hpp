#pragma once

#include <complex>
#include <ostream>
#include <string>

#include <gmpxx.h>

namespace coeffbody {

/// Exact complex number with arbitrary-precision rational parts.
struct QComplex {
    mpq_class re{0};
    mpq_class im{0};

    QComplex() = default;
    QComplex(long value) : re(value) {}  // NOLINT(google-explicit-constructor)
    QComplex(mpq_class real, mpq_class imag = 0) : re(std::move(real)), im(std::move(imag)) {
        re.canonicalize();
        im.canonicalize();
    }

    static QComplex i() { return {0, 1}; }

    bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
    bool is_real() const { return sgn(im) == 0; }

    QComplex conj() const { return {re, -im}; }

    /// |z|^2, exact.
    mpq_class norm() const { return mpq_class(re * re + im * im); }

    std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

    QComplex operator-() const { return {-re, -im}; }

    QComplex& operator+=(const QComplex& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    QComplex& operator-=(const QComplex& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    QComplex& operator*=(const QComplex& o) {
        mpq_class r = re * o.re - im * o.im;
        mpq_class m = re * o.im + im * o.re;
        re = std::move(r);
        im = std::move(m);
        return *this;
    }
    QComplex& operator/=(const QComplex& o);

    friend QComplex operator+(QComplex a, const QComplex& b) { return a += b; }
    friend QComplex operator-(QComplex a, const QComplex& b) { return a -= b; }
    friend QComplex operator*(QComplex a, const QComplex& b) { return a *= b; }
    friend QComplex operator/(QComplex a, const QComplex& b) { return a /= b; }

    friend bool operator==(const QComplex& a, const QComplex& b) { return a.re == b.re && a.im == b.im; }
    friend bool operator!=(const QComplex& a, const QComplex& b) { return !(a == b); }

    std::string to_string() const;
};

std::ostream& operator<<(std::ostream& os, const QComplex& z);

// Scalar traits used by the generic series and ODE-free kernels.
inline QComplex conj_scalar(const QComplex& z) { return z.conj(); }
inline std::complex<double> conj_scalar(const std::complex<double>& z) { return std::conj(z); }

}  // namespace coeffbody
