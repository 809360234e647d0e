#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "coeffbody/multipoly.hpp"
#include "coeffbody/qcomplex.hpp"

namespace coeffbody {

/// Trigonometric polynomial a_0 + sum_{n=1}^N a_n cos n theta + b_n sin n theta
/// with exact rational coefficients, read as the field phi d/dtheta on S^1.
/// Trailing zero frequencies are trimmed, so degree() is the top frequency
/// actually present and equality is structural.
class TrigVectorField {
public:
    TrigVectorField() = default;
    TrigVectorField(mpq_class a0, std::vector<mpq_class> a, std::vector<mpq_class> b);

    static TrigVectorField constant(mpq_class value);
    static TrigVectorField cos_mode(std::size_t n, mpq_class scale = 1);
    static TrigVectorField sin_mode(std::size_t n, mpq_class scale = 1);

    std::size_t degree() const { return a_.size(); }
    const mpq_class& a0() const { return a0_; }
    /// Coefficient of cos n theta (n = 0 gives a_0); zero beyond the degree.
    mpq_class a(std::size_t n) const;
    /// Coefficient of sin n theta; zero for n = 0 and beyond the degree.
    mpq_class b(std::size_t n) const;
    bool is_mean_zero() const { return sgn(a0_) == 0; }
    bool is_zero() const { return is_mean_zero() && a_.empty(); }

    TrigVectorField derivative() const;
    double evaluate(double theta) const;

    TrigVectorField operator-() const;
    TrigVectorField& operator+=(const TrigVectorField& o);
    TrigVectorField& operator-=(const TrigVectorField& o);
    TrigVectorField& operator*=(const mpq_class& s);
    friend TrigVectorField operator+(TrigVectorField x, const TrigVectorField& y) { return x += y; }
    friend TrigVectorField operator-(TrigVectorField x, const TrigVectorField& y) { return x -= y; }
    friend TrigVectorField operator*(TrigVectorField x, const mpq_class& s) { return x *= s; }
    friend TrigVectorField operator*(const mpq_class& s, TrigVectorField x) { return x *= s; }
    /// Pointwise product, expanded by product-to-sum.
    friend TrigVectorField operator*(const TrigVectorField& x, const TrigVectorField& y);
    friend bool operator==(const TrigVectorField& x, const TrigVectorField& y) {
        return x.a0_ == y.a0_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    std::string to_string() const;

private:
    void add_cos(long k, const mpq_class& v);
    void add_sin(long k, const mpq_class& v);
    void grow(std::size_t n);
    void trim();

    mpq_class a0_{0};
    std::vector<mpq_class> a_;
    std::vector<mpq_class> b_;
};

/// (1/2pi) \int_0^{2pi} f g d theta, exact.
mpq_class circle_mean(const TrigVectorField& f, const TrigVectorField& g);

/// [phi_1, phi_2] = phi_1 phi_2' - phi_2 phi_1'.
TrigVectorField trig_bracket(const TrigVectorField& f1, const TrigVectorField& f2);

/// Gelfand-Fuchs cocycle (1/2pi) \int (phi_1' phi_2'' - phi_1'' phi_2') d theta.
mpq_class gelfand_fuchs(const TrigVectorField& f1, const TrigVectorField& f2);

/// -(1/4pi) \int (phi_1' + phi_1''') phi_2 d theta.
mpq_class cocycle_alt(const TrigVectorField& f1, const TrigVectorField& f2);

struct VirasoroElement {
    TrigVectorField field;
    mpq_class center{0};

    friend bool operator==(const VirasoroElement& x, const VirasoroElement& y) {
        return x.field == y.field && x.center == y.center;
    }
};

/// ([phi_1, phi_2], (c/12) gelfand_fuchs(phi_1, phi_2)).
VirasoroElement virasoro_bracket(const VirasoroElement& x, const VirasoroElement& y, const mpq_class& c);

/// Complexified field u + i v.
struct ComplexTrigField {
    TrigVectorField re;
    TrigVectorField im;

    ComplexTrigField& operator+=(const ComplexTrigField& o);
    friend ComplexTrigField operator+(ComplexTrigField x, const ComplexTrigField& y) { return x += y; }
    friend ComplexTrigField operator*(const QComplex& s, const ComplexTrigField& x);
    friend bool operator==(const ComplexTrigField& x, const ComplexTrigField& y) {
        return x.re == y.re && x.im == y.im;
    }
};

/// e_n = -i e^{i n theta} d/dtheta.
ComplexTrigField complex_mode(long n);

ComplexTrigField complex_bracket(const ComplexTrigField& x, const ComplexTrigField& y);
QComplex complex_gelfand_fuchs(const ComplexTrigField& x, const ComplexTrigField& y);
QComplex complex_cocycle_alt(const ComplexTrigField& x, const ComplexTrigField& y);

/// lambda with x = lambda e_n; nullopt when x is not a multiple of e_n.
std::optional<QComplex> mode_coefficient(const ComplexTrigField& x, long n);

struct ModeBracket {
    long index = 0;
    /// [e_n, e_m] field part = field_coefficient * e_{n+m}.
    QComplex field_coefficient;
    /// (c/12) times each cocycle on (e_n, e_m).
    QComplex center_gelfand_fuchs;
    QComplex center_alt;
};

/// Virasoro bracket of e_n and e_m, computed from the complexified trig fields.
ModeBracket mode_bracket(long n, long m, const mpq_class& c);

/// J(phi) = sum -a_n sin n theta + b_n cos n theta; rejects a_0 != 0.
TrigVectorField complex_structure_J(const TrigVectorField& f);

/// Coefficients (a_n - i b_n), n = 1..N, of phi - i J(phi) on e^{i n theta}.
std::vector<QComplex> holomorphic_coefficients(const TrigVectorField& f);

/// P_0..P_max as polynomials in c_1..c_max and the charge c, which is the
/// last variable (index max).
struct NeretinTable {
    std::size_t max = 0;
    std::vector<MultiPoly> P;

    std::size_t nvars() const { return max + 1; }
    std::size_t charge_index() const { return max; }
    MultiPoly charge() const { return MultiPoly::variable(nvars(), charge_index()); }
    /// Variable names c1..c_max, c.
    std::vector<std::string> names() const;
    /// The table with the charge replaced by a number.
    NeretinTable with_charge(const QComplex& value) const;
};

/// Schwarzian coefficients S_0..S_order of f = z + sum_k c_k z^{k+1}, as
/// polynomials in `nvars` variables with c_k the variable k-1.
std::vector<MultiPoly> schwarzian_coefficients(std::size_t order, std::size_t nvars);

/// (c z^2/12) S_f(z) = sum P_n z^n; requires max >= 2.
NeretinTable neretin_polynomials(std::size_t max);

/// L_k(P_j) - (j+k) P_{j-k} - (c/12) k (k^2-1) delta_{jk}, with P_{j-k} = 0
/// for j < k. Requires 1 <= k <= max and j <= max.
MultiPoly neretin_recurrence_check(const NeretinTable& table, std::size_t k, std::size_t j);

}  // namespace coeffbody
