#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "test_support.hpp"

#include "coeffbody/kirillov.hpp"
#include "coeffbody/virasoro.hpp"

using namespace coeffbody;
using namespace testing_support;

namespace {

using Field = TrigVectorField;

mpq_class q(long num, long den = 1) {
    mpq_class v(num, den);
    v.canonicalize();
    return v;
}

Field random_field(std::mt19937_64& rng, std::size_t degree, bool mean_zero = false) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    auto draw = [&] { return q(num(rng), den(rng)); };
    std::vector<mpq_class> a(degree), b(degree);
    for (std::size_t i = 0; i < degree; ++i) {
        a[i] = draw();
        b[i] = draw();
    }
    return {mean_zero ? mpq_class(0) : draw(), a, b};
}

// phi_1 phi_2' - phi_2 phi_1' on a grid, derivatives evaluated from the
// coefficients term by term.
double pointwise_bracket(const Field& f, const Field& g, double t) {
    auto d = [](const Field& h, double x) {
        double acc = 0.0;
        for (std::size_t n = 1; n <= h.degree(); ++n) {
            double k = static_cast<double>(n);
            acc += -k * h.a(n).get_d() * std::sin(k * x) + k * h.b(n).get_d() * std::cos(k * x);
        }
        return acc;
    };
    return f.evaluate(t) * d(g, t) - g.evaluate(t) * d(f, t);
}

// Periodic trapezoid mean of the cocycle integrands; used only as an independent
// numeric check of the exact orthogonality sums.
double quadrature_mean(const std::function<double(double)>& h) {
    const int m = 2048;
    const double step = 2.0 * std::numbers::pi / m;
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        acc += h(i * step);
    }
    return acc / m;
}

MultiPoly var(const NeretinTable& t, std::size_t k) { return MultiPoly::variable(t.nvars(), k - 1); }
MultiPoly num(const NeretinTable& t, long num, long den = 1) {
    return MultiPoly::constant(t.nvars(), QComplex(mpq_class(num, den)));
}

}  // namespace

TEST_CASE("TrigVectorField: construction, trimming, derivative") {
    Field f(q(1), {q(0), q(2), q(0)}, {q(0), q(0), q(0)});
    CHECK(f.degree() == 2);
    CHECK(f.a(2) == 2);
    CHECK(f.b(7) == 0);
    CHECK(!f.is_mean_zero());
    CHECK(Field::cos_mode(3).derivative() == Field::sin_mode(3, -3));
    CHECK(Field::sin_mode(2).derivative() == Field::cos_mode(2, 2));
    CHECK(Field::constant(5).derivative().is_zero());
    CHECK((f - f).is_zero());
    CHECK_THROWS_AS(Field(0, {q(1)}, {}), std::invalid_argument);
    CHECK(Field::cos_mode(1).to_string() == "cos(1t)");
}

TEST_CASE("TrigVectorField: product agrees with pointwise multiplication") {
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_field(rng, 4);
        auto g = random_field(rng, 5);
        auto h = f * g;
        CHECK(h.degree() <= 9);
        for (double t : {0.0, 0.3, 1.7, 4.1, 5.9}) {
            CHECK(h.evaluate(t) == doctest::Approx(f.evaluate(t) * g.evaluate(t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("trig_bracket: listed relations") {
    for (std::size_t n = 1; n <= 8; ++n) {
        for (std::size_t m = 1; m <= 8; ++m) {
            long sn = static_cast<long>(n);
            long sm = static_cast<long>(m);
            auto sin_term = [](long k, const mpq_class& s) {
                return k >= 0 ? Field::sin_mode(static_cast<std::size_t>(k), s)
                              : Field::sin_mode(static_cast<std::size_t>(-k), -s);
            };
            auto cos_term = [](long k, const mpq_class& s) {
                std::size_t kk = static_cast<std::size_t>(std::labs(k));
                return kk == 0 ? Field::constant(s) : Field::cos_mode(kk, s);
            };
            auto cc = sin_term(sn + sm, q(sn - sm, 2)) + sin_term(sn - sm, q(sn + sm, 2));
            CHECK(trig_bracket(Field::cos_mode(n), Field::cos_mode(m)) == cc);
            auto ss = sin_term(sn + sm, q(sm - sn, 2)) + sin_term(sn - sm, q(sn + sm, 2));
            CHECK(trig_bracket(Field::sin_mode(n), Field::sin_mode(m)) == ss);
            auto sc = cos_term(sn + sm, q(sm - sn, 2)) - cos_term(sn - sm, q(sn + sm, 2));
            CHECK(trig_bracket(Field::sin_mode(n), Field::cos_mode(m)) == sc);
        }
    }
    // m = n in the third relation leaves the constant -n.
    CHECK(trig_bracket(Field::sin_mode(3), Field::cos_mode(3)) == Field::constant(-3));
}

TEST_CASE("trig_bracket: pointwise oracle, antisymmetry, Jacobi") {
    std::mt19937_64 rng(73);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_field(rng, 5);
        auto g = random_field(rng, 4);
        auto h = trig_bracket(f, g);
        for (int i = 0; i < 64; ++i) {
            double t = 2.0 * std::numbers::pi * i / 64;
            CHECK(h.evaluate(t) == doctest::Approx(pointwise_bracket(f, g, t)).epsilon(1e-11));
        }
        CHECK(trig_bracket(f, f).is_zero());
        CHECK(trig_bracket(f, g) == -trig_bracket(g, f));
    }
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_field(rng, 1 + trial % 8);
        auto b = random_field(rng, 8 - trial % 8);
        auto c = random_field(rng, 1 + (trial * 3) % 8);
        auto jacobi = trig_bracket(a, trig_bracket(b, c)) + trig_bracket(b, trig_bracket(c, a)) +
                      trig_bracket(c, trig_bracket(a, b));
        CHECK(jacobi.is_zero());
    }
}

TEST_CASE("gelfand_fuchs: values and cocycle identity") {
    for (std::size_t n = 1; n <= 10; ++n) {
        mpq_class n3(static_cast<long>(n * n * n));
        CHECK(gelfand_fuchs(Field::cos_mode(n), Field::sin_mode(n)) == n3);
        CHECK(gelfand_fuchs(Field::sin_mode(n), Field::cos_mode(n)) == -n3);
        CHECK(gelfand_fuchs(Field::cos_mode(n), Field::cos_mode(n)) == 0);
    }
    CHECK(gelfand_fuchs(Field::cos_mode(2), Field::sin_mode(3)) == 0);
    Field low(q(2), {q(3)}, {q(-5)});
    CHECK(gelfand_fuchs(low, low) == 0);

    std::mt19937_64 rng(75);
    for (int trial = 0; trial < 10; ++trial) {
        auto f = random_field(rng, 6);
        auto g = random_field(rng, 6);
        CHECK(gelfand_fuchs(f, f) == 0);
        CHECK(gelfand_fuchs(f, g) == -gelfand_fuchs(g, f));
        auto f1 = f.derivative();
        auto f2 = f1.derivative();
        auto g1 = g.derivative();
        auto g2 = g1.derivative();
        double numeric = quadrature_mean(
            [&](double t) { return f1.evaluate(t) * g2.evaluate(t) - f2.evaluate(t) * g1.evaluate(t); });
        CHECK(gelfand_fuchs(f, g).get_d() == doctest::Approx(numeric).epsilon(1e-10));
    }
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_field(rng, 1 + trial % 8);
        auto b = random_field(rng, 1 + (trial * 5) % 8);
        auto c = random_field(rng, 8 - trial % 8);
        mpq_class sum = gelfand_fuchs(a, trig_bracket(b, c)) + gelfand_fuchs(b, trig_bracket(c, a)) +
                        gelfand_fuchs(c, trig_bracket(a, b));
        CHECK(sgn(sum) == 0);
    }
}

TEST_CASE("cocycle_alt: values, orthogonality oracle, cocycle identity") {
    for (std::size_t n = 1; n <= 10; ++n) {
        long nn = static_cast<long>(n);
        CHECK(cocycle_alt(Field::cos_mode(n), Field::sin_mode(n)) == q(-(nn * nn * nn - nn), 4));
        CHECK(cocycle_alt(Field::sin_mode(n), Field::cos_mode(n)) == q(nn * nn * nn - nn, 4));
    }
    Field low(q(2), {q(3)}, {q(-5)});
    Field other(q(-1), {q(7)}, {q(4)});
    CHECK(cocycle_alt(low, other) == 0);

    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_field(rng, 7);
        auto g = random_field(rng, 6);
        CHECK(cocycle_alt(f, f) == 0);
        // sum over n of (n^3 - n)(a_n b'_n - b_n a'_n)/4 from orthogonality
        mpq_class expected = 0;
        for (std::size_t n = 1; n <= 7; ++n) {
            long nn = static_cast<long>(n);
            expected += q(nn * nn * nn - nn, 4) * (g.a(n) * f.b(n) - f.a(n) * g.b(n));
        }
        CHECK(cocycle_alt(f, g) == expected);
        CHECK(cocycle_alt(f, g) == -cocycle_alt(g, f));
    }
    for (int trial = 0; trial < 100; ++trial) {
        auto a = random_field(rng, 8 - trial % 8);
        auto b = random_field(rng, 1 + trial % 8);
        auto c = random_field(rng, 1 + (trial * 7) % 8);
        mpq_class sum = cocycle_alt(a, trig_bracket(b, c)) + cocycle_alt(b, trig_bracket(c, a)) +
                        cocycle_alt(c, trig_bracket(a, b));
        CHECK(sgn(sum) == 0);
    }
}

TEST_CASE("virasoro_bracket: field and centre parts, bilinearity") {
    const mpq_class c(26);
    VirasoroElement x{Field::cos_mode(2), q(1)};
    VirasoroElement y{Field::sin_mode(2), q(-3)};
    auto r = virasoro_bracket(x, y, c);
    CHECK(r.field == trig_bracket(x.field, y.field));
    CHECK(r.center == c / 12 * 8);
    auto self = virasoro_bracket(x, x, c);
    CHECK(self.field.is_zero());
    CHECK(self.center == 0);

    std::mt19937_64 rng(79);
    for (int trial = 0; trial < 10; ++trial) {
        VirasoroElement a{random_field(rng, 4), q(trial)};
        VirasoroElement b{random_field(rng, 3), q(1)};
        VirasoroElement d{random_field(rng, 5), q(2)};
        mpq_class s = q(trial + 1, 3);
        VirasoroElement combo{a.field * s + b.field, 0};
        auto lhs = virasoro_bracket(combo, d, c);
        auto ra = virasoro_bracket(a, d, c);
        auto rb = virasoro_bracket(b, d, c);
        CHECK(lhs.field == ra.field * s + rb.field);
        CHECK(lhs.center == ra.center * s + rb.center);
    }
}

TEST_CASE("complex modes: field part and both centres") {
    const mpq_class c(12);
    for (long n = -5; n <= 5; ++n) {
        for (long m = -5; m <= 5; ++m) {
            auto r = mode_bracket(n, m, c);
            CHECK(r.index == n + m);
            CHECK(r.field_coefficient == QComplex(m - n));
            QComplex gf = n == -m ? QComplex(0, 2 * n * n * n) : QComplex(0);
            CHECK(r.center_gelfand_fuchs == gf);
            QComplex alt = n == -m ? QComplex(0, q(-(n * n * n - n), 2)) : QComplex(0);
            CHECK(r.center_alt == alt);
            // 2i times the alternative centre is n(n^2-1) delta.
            CHECK(QComplex(0, 2) * r.center_alt == QComplex(n == -m ? n * (n * n - 1) : 0));
        }
    }
    CHECK(mode_coefficient(complex_mode(3), 3) == QComplex(1));
    CHECK(!mode_coefficient(complex_mode(3), -3).has_value());
    CHECK(mode_coefficient(QComplex(2, -1) * complex_mode(-2), -2) == QComplex(2, -1));
}

TEST_CASE("complex_structure_J: listed values, J^2 = -id, holomorphic coefficients") {
    CHECK(complex_structure_J(Field::cos_mode(1)) == Field::sin_mode(1, -1));
    CHECK(complex_structure_J(Field::sin_mode(4)) == Field::cos_mode(4));
    CHECK_THROWS_AS(complex_structure_J(Field::constant(1)), std::invalid_argument);

    std::mt19937_64 rng(81);
    for (int trial = 0; trial < 50; ++trial) {
        auto f = random_field(rng, 1 + trial % 9, true);
        CHECK(complex_structure_J(complex_structure_J(f)) == -f);
        auto jf = complex_structure_J(f);
        auto coeffs = holomorphic_coefficients(f);
        REQUIRE(coeffs.size() == f.degree());
        for (double t : {0.2, 1.1, 3.3}) {
            std::complex<double> sum{};
            for (std::size_t n = 1; n <= coeffs.size(); ++n) {
                sum += coeffs[n - 1].to_complex() * std::exp(std::complex<double>(0.0, n * t));
            }
            CHECK(sum.real() == doctest::Approx(f.evaluate(t)).epsilon(1e-12));
            CHECK(sum.imag() == doctest::Approx(-jf.evaluate(t)).epsilon(1e-12));
        }
    }
}

TEST_CASE("neretin_polynomials: listed displays") {
    auto t = neretin_polynomials(6);
    REQUIRE(t.P.size() == 7);
    CHECK(t.P[0].is_zero());
    CHECK(t.P[1].is_zero());
    auto c = t.charge();
    auto c1 = var(t, 1), c2 = var(t, 2), c3 = var(t, 3), c4 = var(t, 4);
    CHECK(t.P[2] == c * (c2 - c1 * c1) * QComplex(mpq_class(1, 2)));
    CHECK(t.P[3] == c * (c3 - c1 * c2 * QComplex(2) + c1 * c1 * c1) * QComplex(2));
    MultiPoly p4 = c4 * QComplex(5) - c1 * c3 * QComplex(10) - c2 * c2 * QComplex(6) +
                   c1 * c1 * c2 * QComplex(17) - c1 * c1 * c1 * c1 * QComplex(6);
    CHECK(t.P[4] == c * p4);
    std::vector<QComplex> origin(t.nvars(), QComplex(0));
    origin.back() = QComplex(7);
    for (const auto& p : t.P) {
        CHECK(p.evaluate(origin).is_zero());
    }
    CHECK_THROWS_AS(neretin_polynomials(1), std::invalid_argument);
    CHECK(t.names().back() == "c");
    CHECK(t.with_charge(QComplex(2)).P[2] == (c2 - c1 * c1) * QComplex(1));
}

TEST_CASE("neretin_polynomials: Schwarzian oracle at rational points") {
    // S_f = (f''/f')' - (f''/f')^2 / 2, computed over exact numbers.
    std::mt19937_64 rng(83);
    const std::size_t max = 7;
    auto t = neretin_polynomials(max);
    for (int trial = 0; trial < 5; ++trial) {
        auto c = random_qvector(rng, max, 3);
        auto f = ExactSeries::zero(max + 2);
        f[1] = 1;
        for (std::size_t k = 1; k <= max; ++k) {
            f[k + 1] = c[k - 1];
        }
        auto d1 = f.derivative();
        auto ratio = d1.derivative() * d1.reciprocal();
        auto s = ratio.derivative() - ratio * ratio * QComplex(mpq_class(1, 2));
        auto point = c;
        point.push_back(QComplex(12));
        for (std::size_t n = 2; n <= max; ++n) {
            CHECK(t.P[n].evaluate(point) == s[n - 2]);
        }
    }
}

TEST_CASE("neretin_recurrence_check: listed cases and full sweep") {
    auto t = neretin_polynomials(6);
    auto c = t.charge();
    CHECK(kirillov_field(2, 6).apply(t.P[2]) == c * QComplex(mpq_class(1, 2)));
    CHECK(kirillov_field(1, 6).apply(t.P[2]).is_zero());
    for (std::size_t k = 1; k <= 6; ++k) {
        for (std::size_t j = 1; j <= 6; ++j) {
            CHECK(neretin_recurrence_check(t, k, j).is_zero());
        }
    }
    // A perturbed table must fail.
    auto bad = t;
    bad.P[3] += num(t, 1) * var(t, 3);
    CHECK(!neretin_recurrence_check(bad, 1, 4).is_zero());
    CHECK_THROWS_AS(neretin_recurrence_check(t, 0, 2), std::out_of_range);
    CHECK_THROWS_AS(neretin_recurrence_check(t, 7, 2), std::out_of_range);
    CHECK_THROWS_AS(neretin_recurrence_check(t, 1, 7), std::out_of_range);
}
