#include "coeffbody/virasoro.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coeffbody/kirillov.hpp"
#include "coeffbody/series.hpp"

namespace coeffbody {

TrigVectorField::TrigVectorField(mpq_class a0, std::vector<mpq_class> a, std::vector<mpq_class> b)
    : a0_(std::move(a0)), a_(std::move(a)), b_(std::move(b)) {
    if (a_.size() != b_.size()) {
        throw std::invalid_argument("TrigVectorField: cos and sin arrays differ in length");
    }
    a0_.canonicalize();
    for (std::size_t i = 0; i < a_.size(); ++i) {
        a_[i].canonicalize();
        b_[i].canonicalize();
    }
    trim();
}

TrigVectorField TrigVectorField::constant(mpq_class value) { return {std::move(value), {}, {}}; }

TrigVectorField TrigVectorField::cos_mode(std::size_t n, mpq_class scale) {
    TrigVectorField f;
    f.add_cos(static_cast<long>(n), scale);
    return f;
}

TrigVectorField TrigVectorField::sin_mode(std::size_t n, mpq_class scale) {
    TrigVectorField f;
    f.add_sin(static_cast<long>(n), scale);
    return f;
}

mpq_class TrigVectorField::a(std::size_t n) const {
    if (n == 0) {
        return a0_;
    }
    return n <= a_.size() ? a_[n - 1] : mpq_class(0);
}

mpq_class TrigVectorField::b(std::size_t n) const {
    if (n == 0 || n > b_.size()) {
        return 0;
    }
    return b_[n - 1];
}

void TrigVectorField::grow(std::size_t n) {
    if (a_.size() < n) {
        a_.resize(n);
        b_.resize(n);
    }
}

void TrigVectorField::trim() {
    while (!a_.empty() && sgn(a_.back()) == 0 && sgn(b_.back()) == 0) {
        a_.pop_back();
        b_.pop_back();
    }
}

void TrigVectorField::add_cos(long k, const mpq_class& v) {
    std::size_t n = static_cast<std::size_t>(std::labs(k));
    if (n == 0) {
        a0_ += v;
        return;
    }
    grow(n);
    a_[n - 1] += v;
    trim();
}

void TrigVectorField::add_sin(long k, const mpq_class& v) {
    if (k == 0) {
        return;
    }
    std::size_t n = static_cast<std::size_t>(std::labs(k));
    grow(n);
    if (k > 0) {
        b_[n - 1] += v;
    } else {
        b_[n - 1] -= v;
    }
    trim();
}

TrigVectorField TrigVectorField::derivative() const {
    TrigVectorField d;
    d.grow(a_.size());
    for (std::size_t i = 0; i < a_.size(); ++i) {
        mpq_class n(static_cast<long>(i + 1));
        d.a_[i] = n * b_[i];
        d.b_[i] = -n * a_[i];
    }
    d.trim();
    return d;
}

double TrigVectorField::evaluate(double theta) const {
    double acc = a0_.get_d();
    for (std::size_t i = 0; i < a_.size(); ++i) {
        double x = static_cast<double>(i + 1) * theta;
        acc += a_[i].get_d() * std::cos(x) + b_[i].get_d() * std::sin(x);
    }
    return acc;
}

TrigVectorField TrigVectorField::operator-() const {
    TrigVectorField r(*this);
    r *= mpq_class(-1);
    return r;
}

TrigVectorField& TrigVectorField::operator+=(const TrigVectorField& o) {
    a0_ += o.a0_;
    grow(o.a_.size());
    for (std::size_t i = 0; i < o.a_.size(); ++i) {
        a_[i] += o.a_[i];
        b_[i] += o.b_[i];
    }
    trim();
    return *this;
}

TrigVectorField& TrigVectorField::operator-=(const TrigVectorField& o) { return *this += -o; }

TrigVectorField& TrigVectorField::operator*=(const mpq_class& scale) {
    mpq_class s(scale);
    s.canonicalize();
    a0_ *= s;
    for (std::size_t i = 0; i < a_.size(); ++i) {
        a_[i] *= s;
        b_[i] *= s;
    }
    trim();
    return *this;
}

TrigVectorField operator*(const TrigVectorField& x, const TrigVectorField& y) {
    TrigVectorField r;
    const mpq_class half(1, 2);
    const long nx = static_cast<long>(x.degree());
    const long ny = static_cast<long>(y.degree());
    for (long n = 0; n <= nx; ++n) {
        mpq_class xa = x.a(static_cast<std::size_t>(n));
        mpq_class xb = x.b(static_cast<std::size_t>(n));
        for (long m = 0; m <= ny; ++m) {
            mpq_class ya = y.a(static_cast<std::size_t>(m));
            mpq_class yb = y.b(static_cast<std::size_t>(m));
            if (sgn(xa) != 0 && sgn(ya) != 0) {
                mpq_class v = half * xa * ya;
                r.add_cos(n - m, v);
                r.add_cos(n + m, v);
            }
            if (sgn(xb) != 0 && sgn(yb) != 0) {
                mpq_class v = half * xb * yb;
                r.add_cos(n - m, v);
                r.add_cos(n + m, -v);
            }
            if (sgn(xb) != 0 && sgn(ya) != 0) {
                mpq_class v = half * xb * ya;
                r.add_sin(n + m, v);
                r.add_sin(n - m, v);
            }
            if (sgn(xa) != 0 && sgn(yb) != 0) {
                mpq_class v = half * xa * yb;
                r.add_sin(m + n, v);
                r.add_sin(m - n, v);
            }
        }
    }
    return r;
}

std::string TrigVectorField::to_string() const {
    std::ostringstream os;
    bool first = true;
    auto emit = [&](const mpq_class& v, const std::string& basis) {
        if (sgn(v) == 0) {
            return;
        }
        if (!first) {
            os << (sgn(v) > 0 ? " + " : " - ");
        } else if (sgn(v) < 0) {
            os << "-";
        }
        first = false;
        mpq_class mag = abs(v);
        if (basis.empty()) {
            os << mag.get_str();
        } else {
            if (mag != 1) {
                os << mag.get_str() << "*";
            }
            os << basis;
        }
    };
    emit(a0_, "");
    for (std::size_t i = 0; i < a_.size(); ++i) {
        std::string k = std::to_string(i + 1);
        emit(a_[i], "cos(" + k + "t)");
        emit(b_[i], "sin(" + k + "t)");
    }
    return first ? "0" : os.str();
}

mpq_class circle_mean(const TrigVectorField& f, const TrigVectorField& g) {
    mpq_class acc = f.a0() * g.a0();
    std::size_t n = std::min(f.degree(), g.degree());
    mpq_class sum = 0;
    for (std::size_t k = 1; k <= n; ++k) {
        sum += f.a(k) * g.a(k) + f.b(k) * g.b(k);
    }
    acc += sum / 2;
    return acc;
}

TrigVectorField trig_bracket(const TrigVectorField& f1, const TrigVectorField& f2) {
    return f1 * f2.derivative() - f2 * f1.derivative();
}

mpq_class gelfand_fuchs(const TrigVectorField& f1, const TrigVectorField& f2) {
    auto d1 = f1.derivative();
    auto d2 = f2.derivative();
    return circle_mean(d1, d2.derivative()) - circle_mean(d1.derivative(), d2);
}

mpq_class cocycle_alt(const TrigVectorField& f1, const TrigVectorField& f2) {
    auto d1 = f1.derivative();
    auto d3 = d1.derivative().derivative();
    return mpq_class(-circle_mean(d1 + d3, f2) / 2);
}

VirasoroElement virasoro_bracket(const VirasoroElement& x, const VirasoroElement& y, const mpq_class& c) {
    return {trig_bracket(x.field, y.field), mpq_class(c / 12 * gelfand_fuchs(x.field, y.field))};
}

ComplexTrigField& ComplexTrigField::operator+=(const ComplexTrigField& o) {
    re += o.re;
    im += o.im;
    return *this;
}

ComplexTrigField operator*(const QComplex& s, const ComplexTrigField& x) {
    return {x.re * s.re - x.im * s.im, x.im * s.re + x.re * s.im};
}

ComplexTrigField complex_mode(long n) {
    // -i (cos n t + i sin n t) = sin n t - i cos n t
    std::size_t k = static_cast<std::size_t>(std::labs(n));
    mpq_class sign = n < 0 ? -1 : 1;
    TrigVectorField cosine = k == 0 ? TrigVectorField::constant(1) : TrigVectorField::cos_mode(k);
    TrigVectorField sine = k == 0 ? TrigVectorField() : TrigVectorField::sin_mode(k, sign);
    return {sine, -cosine};
}

// Complex-bilinear extensions of the real bracket and cocycles.
ComplexTrigField complex_bracket(const ComplexTrigField& x, const ComplexTrigField& y) {
    return {trig_bracket(x.re, y.re) - trig_bracket(x.im, y.im), trig_bracket(x.re, y.im) + trig_bracket(x.im, y.re)};
}

QComplex complex_gelfand_fuchs(const ComplexTrigField& x, const ComplexTrigField& y) {
    return {gelfand_fuchs(x.re, y.re) - gelfand_fuchs(x.im, y.im), gelfand_fuchs(x.re, y.im) + gelfand_fuchs(x.im, y.re)};
}

QComplex complex_cocycle_alt(const ComplexTrigField& x, const ComplexTrigField& y) {
    return {cocycle_alt(x.re, y.re) - cocycle_alt(x.im, y.im), cocycle_alt(x.re, y.im) + cocycle_alt(x.im, y.re)};
}

std::optional<QComplex> mode_coefficient(const ComplexTrigField& x, long n) {
    // lambda e_n has cos|n| coefficients q (real part) and -p (imaginary part).
    std::size_t k = static_cast<std::size_t>(std::labs(n));
    QComplex lambda(-x.im.a(k), x.re.a(k));
    if (lambda * complex_mode(n) == x) {
        return lambda;
    }
    return std::nullopt;
}

ModeBracket mode_bracket(long n, long m, const mpq_class& c) {
    auto en = complex_mode(n);
    auto em = complex_mode(m);
    ModeBracket out;
    out.index = n + m;
    auto coeff = mode_coefficient(complex_bracket(en, em), n + m);
    if (!coeff) {
        throw std::logic_error("mode_bracket: bracket is not a multiple of e_{n+m}");
    }
    out.field_coefficient = *coeff;
    QComplex scale(mpq_class(c / 12));
    out.center_gelfand_fuchs = scale * complex_gelfand_fuchs(en, em);
    out.center_alt = scale * complex_cocycle_alt(en, em);
    return out;
}

TrigVectorField complex_structure_J(const TrigVectorField& f) {
    if (!f.is_mean_zero()) {
        throw std::invalid_argument("complex_structure_J: field must have zero mean");
    }
    std::vector<mpq_class> a, b;
    for (std::size_t n = 1; n <= f.degree(); ++n) {
        a.push_back(f.b(n));
        b.push_back(-f.a(n));
    }
    return {0, std::move(a), std::move(b)};
}

std::vector<QComplex> holomorphic_coefficients(const TrigVectorField& f) {
    std::vector<QComplex> out;
    for (std::size_t n = 1; n <= f.degree(); ++n) {
        out.emplace_back(f.a(n), -f.b(n));
    }
    return out;
}

std::vector<std::string> NeretinTable::names() const {
    auto out = coefficient_names(max);
    out.push_back("c");
    return out;
}

NeretinTable NeretinTable::with_charge(const QComplex& value) const {
    NeretinTable out{max, {}};
    for (const auto& p : P) {
        out.P.push_back(p.substitute(charge_index(), value));
    }
    return out;
}

std::vector<MultiPoly> schwarzian_coefficients(std::size_t order, std::size_t nvars) {
    if (nvars < order + 2) {
        throw std::invalid_argument("schwarzian_coefficients: need at least order+2 variables");
    }
    const MultiPoly like(nvars);
    auto f = PolySeries::zero(order + 3, like);
    f[1] = one_like(like);
    for (std::size_t k = 1; k <= order + 2; ++k) {
        f[k + 1] = MultiPoly::variable(nvars, k - 1);
    }
    auto d1 = f.derivative();
    auto d2 = d1.derivative();
    auto d3 = d2.derivative();
    auto inv = d1.reciprocal();
    auto ratio = d2 * inv;
    auto s = d3 * inv - ratio * ratio * MultiPoly::constant(nvars, QComplex(mpq_class(3, 2)));
    std::vector<MultiPoly> out(s.coeffs().begin(), s.coeffs().begin() + order + 1);
    return out;
}

NeretinTable neretin_polynomials(std::size_t max) {
    if (max < 2) {
        throw std::invalid_argument("neretin_polynomials: max must be at least 2");
    }
    NeretinTable table{max, {}};
    const std::size_t nvars = table.nvars();
    auto s = schwarzian_coefficients(max - 2, nvars);
    MultiPoly scale = table.charge() * QComplex(mpq_class(1, 12));
    table.P.assign(2, MultiPoly(nvars));
    for (std::size_t n = 2; n <= max; ++n) {
        table.P.push_back(scale * s[n - 2]);
    }
    return table;
}

MultiPoly neretin_recurrence_check(const NeretinTable& table, std::size_t k, std::size_t j) {
    if (k < 1 || k > table.max || j > table.max) {
        throw std::out_of_range("neretin_recurrence_check: index out of range");
    }
    MultiPoly residual = kirillov_field(k, table.max).apply(table.P[j]);
    if (j >= k) {
        residual -= table.P[j - k] * QComplex(static_cast<long>(j + k));
    }
    if (j == k) {
        long kk = static_cast<long>(k);
        residual -= table.charge() * QComplex(mpq_class(kk * (kk * kk - 1), 12));
    }
    return residual;
}

}  // namespace coeffbody
