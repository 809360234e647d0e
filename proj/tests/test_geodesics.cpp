#include <random>

#include "doctest.h"
#include "test_support.hpp"

#include "coeffbody/geodesics.hpp"

using namespace coeffbody;
using namespace testing_support;

namespace {

const cd I{0.0, 1.0};

// Wirtinger derivative dH/d conj(z) by central differences in Re z and Im z.
template <class F>
cd wirtinger_bar(F h_of, cd& slot) {
    const double eps = 1e-6;
    cd saved = slot;
    slot = saved + eps;
    double hp = h_of();
    slot = saved - eps;
    double hm = h_of();
    slot = saved + I * eps;
    double hpi = h_of();
    slot = saved - I * eps;
    double hmi = h_of();
    slot = saved;
    return 0.5 * cd((hp - hm) / (2 * eps), (hpi - hmi) / (2 * eps));
}

GeodesicState random_state(std::mt19937_64& rng, std::size_t n, double scale = 0.5) {
    return {random_cvector(rng, n, scale), random_cvector(rng, n, scale)};
}

}  // namespace

TEST_CASE("hamiltonian: listed values") {
    CHECK(hamiltonian({CVector(3), CVector(3)}) == 0.0);
    CHECK(hamiltonian({CVector(4), CVector{1.0, 0.0, 0.0, 0.0}}) == doctest::Approx(1.0));
    GeodesicState s{CVector{1.0, 0.0, 0.0}, CVector{0.0, 0.0, 1.0}};
    CHECK(std::abs(l_value(s, 1)) < 1e-15);
    CHECK(std::abs(l_value(s, 2) - 2.0) < 1e-15);
    CHECK(hamiltonian(s) == doctest::Approx(4.0));
}

TEST_CASE("geodesic_rhs: listed cases and the explicit n = 3 system") {
    auto d = geodesic_rhs({CVector(3), CVector{1.0, 0.0, 0.0}});
    CHECK(d.c == CVector{1.0, 0.0, 0.0});
    CHECK(d.xi == CVector(3));
    auto z = geodesic_rhs({CVector{0.3, -0.2, 0.1}, CVector(3)});
    CHECK(z.c == CVector(3));
    CHECK(z.xi == CVector(3));

    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        auto s = random_state(rng, 3);
        const auto& c = s.c;
        const auto& xi = s.xi;
        cd l1 = std::conj(xi[0]) + 2.0 * c[0] * std::conj(xi[1]) + 3.0 * c[1] * std::conj(xi[2]);
        cd l2 = std::conj(xi[1]) + 2.0 * c[0] * std::conj(xi[2]);
        auto got = geodesic_rhs(s);
        CVector dc{std::conj(l1), 2.0 * c[0] * std::conj(l1) + std::conj(l2),
                   3.0 * c[1] * std::conj(l1) + 2.0 * c[0] * std::conj(l2)};
        CVector dxi{-2.0 * xi[1] * l1 - 2.0 * xi[2] * l2, -3.0 * xi[2] * l1, 0.0};
        CHECK(max_abs_diff(got.c, dc) < 1e-14);
        CHECK(max_abs_diff(got.xi, dxi) < 1e-14);
        CHECK(got.xi[2] == cd{});
    }
}

TEST_CASE("geodesic_rhs: Hamilton's equations against a differenced H (n = 5)") {
    std::mt19937_64 rng(33);
    for (int trial = 0; trial < 10; ++trial) {
        auto s = random_state(rng, 5);
        auto got = geodesic_rhs(s);
        auto h_of = [&] { return hamiltonian(s); };
        for (std::size_t k = 0; k < 5; ++k) {
            cd dc = wirtinger_bar(h_of, s.xi[k]);
            cd dxi = -wirtinger_bar(h_of, s.c[k]);
            CHECK(std::abs(got.c[k] - dc) < 1e-7);
            CHECK(std::abs(got.xi[k] - dxi) < 1e-7);
        }
    }
}

TEST_CASE("integrate_geodesic: constant path, energy, horizontality, constant xi_n") {
    auto still = integrate_geodesic({{}, CVector(3)}, 1.0, 10);
    for (const auto& c : still.c) {
        CHECK(c == CVector(3));
    }

    std::mt19937_64 rng(35);
    for (int trial = 0; trial < 3; ++trial) {
        GeodesicState init{{}, random_cvector(rng, 3)};
        auto path = integrate_geodesic(init, 5.0, 5000);
        CHECK(path.size() == 5001);
        CHECK(path.times.back() == 5.0);
        CHECK(energy_drift(path) <= 1e-8);
        for (const auto& xi : path.xi) {
            CHECK(xi[2] == init.xi[2]);
        }
        // Step 1e-3 sits at the second-order differencing floor; the residual
        // falls as h^2 and clears 1e-6 at a quarter of the step.
        auto report = horizontality_check(path.coefficient_path(), 1e-5);
        CHECK(report.horizontal);
        auto fine = integrate_geodesic(init, 5.0, 20000);
        auto fine_report = horizontality_check(fine.coefficient_path(), 1e-6);
        CHECK(fine_report.horizontal);
        CHECK(report.max_residual / fine_report.max_residual > 12.0);
        CHECK(energy_drift(fine) <= 1e-8);
        double control_gap = 0.0;
        for (std::size_t i = 0; i < path.size(); ++i) {
            auto s = path.state(i);
            control_gap = std::max(control_gap, std::abs(report.u1[i] - std::conj(l_value(s, 1))));
            control_gap = std::max(control_gap, std::abs(report.u2[i] - std::conj(l_value(s, 2))));
        }
        CHECK(control_gap <= 1e-5);
    }

    auto path5 = integrate_geodesic({{}, random_cvector(rng, 5, 0.4)}, 2.0, 2000);
    CHECK(energy_drift(path5) <= 1e-8);
    CHECK(horizontality_check(path5.coefficient_path(), 1e-6).horizontal);

    CHECK_THROWS_AS(integrate_geodesic({{}, CVector(3)}, 1.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(integrate_geodesic({CVector(2), CVector(3)}, 1.0, 10), std::invalid_argument);
    CHECK_THROWS_AS(integrate_geodesic({{}, CVector{100.0, 100.0, 100.0}}, 50.0, 50), IntegrationError);
}

TEST_CASE("horizontality_check: listed paths") {
    auto starlike = integrate_trajectory(DrivingFunction::starlike(3), {.t_end = 2.0, .steps = 2000});
    CHECK(horizontality_check(starlike, 1e-6).horizontal);

    CoefficientPath line;
    for (int i = 0; i <= 100; ++i) {
        double t = 0.01 * i;
        line.times.push_back(t);
        line.states.push_back({t, 0.0, t});
    }
    auto report = horizontality_check(line, 1e-6);
    CHECK_FALSE(report.horizontal);
    for (std::size_t i = 0; i < line.size(); ++i) {
        double t = line.times[i];
        CHECK(std::abs(report.residuals[i][0] - (1.0 + 4.0 * t * t)) < 1e-12);
    }

    CoefficientPath constant{{0.0, 0.5, 1.0, 1.5}, std::vector<CVector>(4, CVector{0.1, 0.2}), std::nullopt};
    auto flat = horizontality_check(constant, 0.0);
    CHECK(flat.horizontal);
    CHECK(flat.max_residual == 0.0);

    CoefficientPath short_path{{0.0, 1.0, 2.0}, {{0.0}, {0.0}, {0.0}}, std::nullopt};
    CHECK_THROWS_AS(horizontality_check(short_path, 1e-6), std::invalid_argument);
}

TEST_CASE("tangent_in_frame: frame duality and exact round trip") {
    std::mt19937_64 rng(37);
    for (std::size_t n = 2; n <= 6; ++n) {
        auto c = random_qvector(rng, n);
        std::vector<QComplex> l1(n);
        std::vector<QComplex> l2(n);
        for (std::size_t k = 1; k <= n; ++k) {
            l1[k - 1] = k == 1 ? QComplex(1) : QComplex(static_cast<long>(k)) * c[k - 2];
            if (k >= 2) {
                l2[k - 1] = k == 2 ? QComplex(1) : QComplex(static_cast<long>(k - 1)) * c[k - 3];
            }
        }
        auto f1 = tangent_in_frame<QComplex>(c, l1);
        auto f2 = tangent_in_frame<QComplex>(c, l2);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(f1[k] == QComplex(k == 0 ? 1 : 0));
            CHECK(f2[k] == QComplex(k == 1 ? 1 : 0));
        }
    }
    for (int trial = 0; trial < 20; ++trial) {
        auto c = random_qvector(rng, 5);
        auto v = random_qvector(rng, 5);
        auto frame = tangent_in_frame<QComplex>(c, v);
        CHECK(tangent_from_frame<QComplex>(c, frame) == v);
    }
    std::vector<QComplex> a(2);
    std::vector<QComplex> b(3);
    CHECK_THROWS_AS(tangent_in_frame<QComplex>(a, b), std::invalid_argument);
}

TEST_CASE("closed_form_geodesic3: listed data") {
    ClosedFormGeodesic3 zero(cd(0.7, 0.2), 0.0, 0.0);
    CHECK(std::abs(zero.params().A) == 0.0);
    CHECK(std::abs(zero.params().B) == 0.0);
    for (double t : {0.0, 1.0, 3.0}) {
        auto v = zero(t);
        CHECK(std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]) == 0.0);
    }

    cd xi3(0.6, -0.8);
    double w = std::abs(xi3);
    cd a(0.3, 0.1);
    ClosedFormGeodesic3 sine(xi3, I * w * 2.0 * a, 0.0);
    CHECK(std::abs(sine.params().A - a) < 1e-15);
    CHECK(std::abs(sine.params().B + a) < 1e-15);
    for (double t : {0.3, 1.7, 4.2}) {
        CHECK(std::abs(sine.c1(t) - 2.0 * I * a * std::sin(w * t)) < 1e-14);
    }

    CHECK_THROWS_AS(ClosedFormGeodesic3(0.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("closed_form_geodesic3: oscillator, c2 equation and agreement with RK4") {
    std::mt19937_64 rng(39);
    for (int trial = 0; trial < 4; ++trial) {
        cd xi3 = random_cd(rng);
        cd d1 = random_cd(rng, 0.5);
        cd d2 = random_cd(rng, 0.5);
        ClosedFormGeodesic3 g(xi3, d1, d2);
        CHECK(g.params().constraint_residual() < 1e-14);
        CHECK(std::abs(g.c1(0.0)) < 1e-14);
        CHECK(std::abs(g.c2(0.0)) < 1e-14);
        CHECK(std::abs(g.c1_dot(0.0) - d1) < 1e-14);
        CHECK(std::abs(g.c2_dot(0.0) - d2) < 1e-14);
        const double h = 1e-5;
        for (double t = 0.0; t <= 5.0; t += 0.25) {
            CHECK(g.oscillator_residual(t) <= 1e-10);
            cd dc2 = (g.c2(t + h) - g.c2(t - h)) / (2 * h);
            cd ode = 2.0 * g.c1(t) * g.c1_dot(t) - std::conj(g.c1(t)) * xi3 + g.params().K;
            CHECK(std::abs(dc2 - ode) < 1e-8);
            cd dc1 = (g.c1(t + h) - g.c1(t - h)) / (2 * h);
            CHECK(std::abs(dc1 - g.c1_dot(t)) < 1e-8);
        }

        auto numeric = integrate_geodesic(g.matching_initial_state(), 5.0, 5000);
        auto exact = g.sample(5.0, 5000);
        CHECK(max_abs_diff(numeric.c.back(), exact.states.back()) <= 1e-6);
        double gap = 0.0;
        for (std::size_t i = 0; i < numeric.size(); i += 50) {
            gap = std::max(gap, max_abs_diff(numeric.c[i], exact.states[i]));
        }
        CHECK(gap <= 1e-6);
        CHECK(std::abs(g.c3(5.0) - exact.states.back()[2]) < 1e-10);
    }
}

TEST_CASE("lagrangian: literal expansion") {
    CHECK(lagrangian(CVector{0.4, 0.1, -0.2}, CVector(3), cd(0.3, 0.2)) == 0.0);

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        auto c = random_cvector(rng, 3);
        auto v = random_cvector(rng, 3);
        cd lam = random_cd(rng);
        // Real-variable expansion.
        double a1 = c[0].real(), b1 = c[0].imag(), a2 = c[1].real(), b2 = c[1].imag();
        double x1 = v[0].real(), y1 = v[0].imag(), x2 = v[1].real(), y2 = v[1].imag();
        double x3 = v[2].real(), y3 = v[2].imag();
        double ur = x2 - 2 * (a1 * x1 - b1 * y1);
        double ui = y2 - 2 * (a1 * y1 + b1 * x1);
        double sq_r = a1 * a1 - b1 * b1, sq_i = 2 * a1 * b1;
        double kr = x3 - 3 * (a2 * x1 - b2 * y1) - 2 * (a1 * x2 - b1 * y2) + 4 * (sq_r * x1 - sq_i * y1);
        double ki = y3 - 3 * (a2 * y1 + b2 * x1) - 2 * (a1 * y2 + b1 * x2) + 4 * (sq_r * y1 + sq_i * x1);
        double expected = x1 * x1 + y1 * y1 + ur * ur + ui * ui + lam.real() * kr + lam.imag() * ki;
        CHECK(lagrangian(c, v, lam) == doctest::Approx(expected).epsilon(1e-12));

        // Horizontal velocity: the multiplier term drops out.
        CVector hv = v;
        hv[2] = 3.0 * c[1] * v[0] + 2.0 * c[0] * v[1] - 4.0 * c[0] * c[0] * v[0];
        cd u2 = hv[1] - 2.0 * c[0] * hv[0];
        CHECK(lagrangian(c, hv, lam) == doctest::Approx(std::norm(hv[0]) + std::norm(u2)).epsilon(1e-12));
    }
    CHECK_THROWS_AS(lagrangian(CVector(2), CVector(2), 0.0), std::invalid_argument);
}

TEST_CASE("euler_lagrange_residual: geodesic, constant and non-horizontal paths") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 3; ++trial) {
        GeodesicState init{{}, random_cvector(rng, 3)};
        auto path = integrate_geodesic(init, 2.0, 2000);
        auto report = euler_lagrange_residual(path.coefficient_path(), init.xi[2]);
        CHECK(report.max_residual <= 1e-5);
        // A different multiplier does not fit.
        CHECK(euler_lagrange_residual(path.coefficient_path(), 2.0 * init.xi[2] + 0.5).max_residual > 1e-3);
    }

    CoefficientPath constant{{0.0, 0.1, 0.2, 0.3, 0.4}, std::vector<CVector>(5, CVector{0.2, 0.1, 0.3}), std::nullopt};
    CHECK(euler_lagrange_residual(constant, cd(1.5, -2.0)).max_residual == 0.0);

    CoefficientPath line;
    for (int i = 0; i <= 100; ++i) {
        double t = 0.01 * i;
        line.times.push_back(t);
        line.states.push_back({t, 0.0, t});
    }
    for (cd lam : {cd(0.0), cd(2.0), cd(1.0, 1.0)}) {
        CHECK(euler_lagrange_residual(line, lam).max_residual > 0.1);
    }
    CHECK_THROWS_AS(euler_lagrange_residual(CoefficientPath{{0.0, 1.0, 2.0, 3.0}, std::vector<CVector>(4, CVector(3)), {}}, 0.0),
                    std::invalid_argument);
}

TEST_CASE("l_dynamics_check: unit covector, random geodesic, zero geodesic") {
    auto unit = integrate_geodesic({{}, CVector{1.0, 0.0, 0.0}}, 1.0, 1000);
    for (std::size_t i = 0; i < unit.size(); ++i) {
        CHECK(std::abs(l_value(unit.state(i), 3)) == 0.0);
        CHECK(std::abs(l_value(unit.state(i), 1) - 1.0) < 1e-14);
    }
    CHECK(l_dynamics_check(unit).max_mismatch() < 1e-12);

    std::mt19937_64 rng(45);
    auto path = integrate_geodesic({{}, random_cvector(rng, 3)}, 2.0, 2000);
    CHECK(l_dynamics_check(path).max_mismatch() <= 1e-5);
    auto path5 = integrate_geodesic({{}, random_cvector(rng, 5, 0.4)}, 2.0, 2000);
    CHECK(l_dynamics_check(path5).max_mismatch() <= 1e-5);

    auto zero = integrate_geodesic({{}, CVector(3)}, 1.0, 10);
    CHECK(l_dynamics_check(zero).max_mismatch() == 0.0);
}

TEST_CASE("differentiate_samples: exact on quadratics, nonuniform grid") {
    std::vector<double> t{0.0, 0.1, 0.25, 0.3, 0.6, 0.65, 1.0};
    CVector f;
    CVector df;
    for (double s : t) {
        f.push_back(cd(1.0, 2.0) + cd(0.5, -1.0) * s + cd(3.0, 0.25) * s * s);
        df.push_back(cd(0.5, -1.0) + 2.0 * cd(3.0, 0.25) * s);
    }
    CHECK(max_abs_diff(differentiate_samples(t, f), df) < 1e-12);
    auto d2 = second_derivative_samples(t, f);
    for (cd z : d2) {
        CHECK(std::abs(z - 2.0 * cd(3.0, 0.25)) < 1e-9);
    }
    CHECK_THROWS_AS(differentiate_samples(std::vector<double>{0.0, 1.0, 2.0}, CVector(3)), std::invalid_argument);
}
