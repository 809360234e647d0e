#include "coeffbody/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/numeric/odeint.hpp>

namespace coeffbody {

namespace {

constexpr cd kI{0.0, 1.0};

void require_state(const GeodesicState& s, const char* where) {
    if (s.c.size() != s.xi.size()) {
        throw std::invalid_argument(std::string(where) + ": c and xi dimensions differ");
    }
}

// c_0 = 1, c_k = 0 for k < 0.
cd coeff_or_unit(const CVector& c, long k) {
    if (k == 0) {
        return 1.0;
    }
    if (k < 0) {
        return 0.0;
    }
    return c[static_cast<std::size_t>(k - 1)];
}

cd l_raw(const CVector& c, const CVector& xi, std::size_t j) {
    const std::size_t n = c.size();
    cd acc = 0.0;
    for (std::size_t m = j; m <= n; ++m) {
        acc += static_cast<double>(m - j + 1) * coeff_or_unit(c, static_cast<long>(m - j)) * std::conj(xi[m - 1]);
    }
    return acc;
}

void geodesic_rhs_raw(const CVector& c, const CVector& xi, CVector& dc, CVector& dxi) {
    const std::size_t n = c.size();
    cd l1 = l_raw(c, xi, 1);
    cd l2 = n >= 2 ? l_raw(c, xi, 2) : cd{};
    cd l1b = std::conj(l1);
    cd l2b = std::conj(l2);
    for (std::size_t k = 1; k <= n; ++k) {
        auto kk = static_cast<long>(k);
        dc[k - 1] = static_cast<double>(k) * coeff_or_unit(c, kk - 1) * l1b +
                    static_cast<double>(k - 1) * coeff_or_unit(c, kk - 2) * l2b;
        cd d = 0.0;
        if (k + 1 <= n) {
            d -= static_cast<double>(k + 1) * xi[k] * l1;
        }
        if (k + 2 <= n) {
            d -= static_cast<double>(k + 1) * xi[k + 1] * l2;
        }
        dxi[k - 1] = d;
    }
}

// Finite-difference weights for derivatives 0..m at `at` over nodes x (Fornberg).
std::vector<std::vector<double>> fd_weights(std::span<const double> x, double at, std::size_t m) {
    const std::size_t np = x.size();
    std::vector<std::vector<double>> c(m + 1, std::vector<double>(np, 0.0));
    double c1 = 1.0;
    double c4 = x[0] - at;
    c[0][0] = 1.0;
    for (std::size_t i = 1; i < np; ++i) {
        std::size_t mn = std::min(i, m);
        double c2 = 1.0;
        double c5 = c4;
        c4 = x[i] - at;
        for (std::size_t j = 0; j < i; ++j) {
            double c3 = x[i] - x[j];
            c2 *= c3;
            if (j == i - 1) {
                for (std::size_t k = mn; k >= 1; --k) {
                    c[k][i] = c1 * (static_cast<double>(k) * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for (std::size_t k = mn; k >= 1; --k) {
                c[k][j] = (c4 * c[k][j] - static_cast<double>(k) * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    return c;
}

// Order-th derivative: three-point central stencil inside (second order),
// one-sided stencil with order + 3 nodes at the ends (third order).
CVector sampled_derivative(std::span<const double> times, std::span<const cd> values, std::size_t order) {
    if (times.size() != values.size()) {
        throw std::invalid_argument("differentiate_samples: length mismatch");
    }
    const std::size_t m = times.size();
    const std::size_t end_width = order + 3;
    if (m < end_width) {
        throw std::invalid_argument("differentiate_samples: need at least " + std::to_string(end_width) + " samples");
    }
    CVector out(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::size_t start = 0;
        std::size_t width = 3;
        if (i == 0) {
            width = end_width;
        } else if (i + 1 == m) {
            width = end_width;
            start = m - width;
        } else {
            start = i - 1;
        }
        auto w = fd_weights(times.subspan(start, width), times[i], order);
        // Weights sum to zero, so differencing against values[i] keeps constants exact.
        cd acc = 0.0;
        for (std::size_t j = 0; j < width; ++j) {
            acc += w[order][j] * (values[start + j] - values[i]);
        }
        out[i] = acc;
    }
    return out;
}

std::vector<CVector> component_series(const CoefficientPath& path) {
    const std::size_t n = path.n();
    std::vector<CVector> series(n, CVector(path.size()));
    for (std::size_t s = 0; s < path.size(); ++s) {
        for (std::size_t k = 0; k < n; ++k) {
            series[k][s] = path.states[s][k];
        }
    }
    return series;
}

}  // namespace

CVector differentiate_samples(std::span<const double> times, std::span<const cd> values) {
    return sampled_derivative(times, values, 1);
}

CVector second_derivative_samples(std::span<const double> times, std::span<const cd> values) {
    return sampled_derivative(times, values, 2);
}

cd l_value(const GeodesicState& s, std::size_t j) {
    require_state(s, "l_value");
    if (j < 1) {
        throw std::out_of_range("l_value: index must be positive");
    }
    if (j > s.n()) {
        return 0.0;
    }
    return l_raw(s.c, s.xi, j);
}

double hamiltonian(const GeodesicState& s) {
    return std::norm(l_value(s, 1)) + std::norm(l_value(s, 2));
}

GeodesicState geodesic_rhs(const GeodesicState& s) {
    require_state(s, "geodesic_rhs");
    GeodesicState d{CVector(s.n()), CVector(s.n())};
    geodesic_rhs_raw(s.c, s.xi, d.c, d.xi);
    return d;
}

CoefficientPath GeodesicPath::coefficient_path() const { return {times, c, std::nullopt}; }

GeodesicPath integrate_geodesic(GeodesicState initial, double t_end, std::size_t steps) {
    namespace odeint = boost::numeric::odeint;
    if (steps < 1) {
        throw std::invalid_argument("integrate_geodesic: steps must be >= 1");
    }
    if (!(t_end > 0.0)) {
        throw std::invalid_argument("integrate_geodesic: t_end must be positive");
    }
    if (initial.c.empty()) {
        initial.c.assign(initial.xi.size(), cd{});
    }
    require_state(initial, "integrate_geodesic");
    const std::size_t n = initial.n();

    CVector x = initial.c;
    x.insert(x.end(), initial.xi.begin(), initial.xi.end());
    CVector c(n);
    CVector xi(n);
    CVector dc(n);
    CVector dxi(n);
    auto system = [&](const CVector& y, CVector& dydt, double) {
        std::copy(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n), c.begin());
        std::copy(y.begin() + static_cast<std::ptrdiff_t>(n), y.end(), xi.begin());
        geodesic_rhs_raw(c, xi, dc, dxi);
        std::copy(dc.begin(), dc.end(), dydt.begin());
        std::copy(dxi.begin(), dxi.end(), dydt.begin() + static_cast<std::ptrdiff_t>(n));
    };

    GeodesicPath path;
    auto record = [&](double t) {
        path.times.push_back(t);
        path.c.emplace_back(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n));
        path.xi.emplace_back(x.begin() + static_cast<std::ptrdiff_t>(n), x.end());
        path.energy.push_back(hamiltonian(path.state(path.size() - 1)));
    };

    odeint::runge_kutta4<CVector> stepper;
    const double h = t_end / static_cast<double>(steps);
    record(0.0);
    for (std::size_t i = 0; i < steps; ++i) {
        double t = h * static_cast<double>(i);
        stepper.do_step(system, x, t, h);
        for (cd z : x) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw IntegrationError(i + 1, t + h, "integrate_geodesic: blow-up");
            }
        }
        record(i + 1 == steps ? t_end : h * static_cast<double>(i + 1));
    }
    return path;
}

double energy_drift(const GeodesicPath& path) {
    if (path.energy.empty()) {
        return 0.0;
    }
    double h0 = path.energy.front();
    double drift = 0.0;
    for (double h : path.energy) {
        drift = std::max(drift, std::abs(h - h0) / (1.0 + h0));
    }
    return drift;
}

HorizontalityReport horizontality_check(const CoefficientPath& path, double tolerance) {
    path.validate();
    if (path.size() < 4) {
        throw std::invalid_argument("horizontality_check: need at least 4 samples");
    }
    const std::size_t n = path.n();
    auto series = component_series(path);
    std::vector<CVector> deriv;
    deriv.reserve(n);
    for (const auto& s : series) {
        deriv.push_back(differentiate_samples(path.times, s));
    }
    HorizontalityReport report;
    report.times = path.times;
    for (std::size_t i = 0; i < path.size(); ++i) {
        CVector v(n);
        for (std::size_t k = 0; k < n; ++k) {
            v[k] = deriv[k][i];
        }
        auto frame = tangent_in_frame<cd>(path.states[i], v);
        report.u1.push_back(n >= 1 ? frame[0] : cd{});
        report.u2.push_back(n >= 2 ? frame[1] : cd{});
        CVector g(frame.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(n, 2)), frame.end());
        for (cd r : g) {
            report.max_residual = std::max(report.max_residual, std::abs(r));
        }
        report.residuals.push_back(std::move(g));
    }
    report.horizontal = report.max_residual <= tolerance;
    return report;
}

double Geodesic3Params::constraint_residual() const { return std::abs(A + B + std::conj(K) / std::conj(xi3)); }

ClosedFormGeodesic3::ClosedFormGeodesic3(cd xi3, cd c1dot0, cd c2dot0) : c1dot0_(c1dot0) {
    omega_ = std::abs(xi3);
    if (!(omega_ > 0.0)) {
        throw std::invalid_argument("closed_form_geodesic3: xi3 must be nonzero");
    }
    params_.xi3 = xi3;
    params_.K = c2dot0;
    cd sum = -std::conj(c2dot0) / std::conj(xi3);
    cd diff = c1dot0 / (kI * omega_);
    params_.A = (sum + diff) / 2.0;
    params_.B = (sum - diff) / 2.0;
}

cd ClosedFormGeodesic3::c1(double t) const {
    const auto& p = params_;
    return p.A * std::exp(kI * omega_ * t) + p.B * std::exp(-kI * omega_ * t) + std::conj(p.K) / std::conj(p.xi3);
}

cd ClosedFormGeodesic3::c1_dot(double t) const {
    const auto& p = params_;
    return kI * omega_ * (p.A * std::exp(kI * omega_ * t) - p.B * std::exp(-kI * omega_ * t));
}

cd ClosedFormGeodesic3::c1_ddot(double t) const {
    const auto& p = params_;
    return -omega_ * omega_ * (p.A * std::exp(kI * omega_ * t) + p.B * std::exp(-kI * omega_ * t));
}

cd ClosedFormGeodesic3::c2(double t) const {
    const auto& p = params_;
    cd z = c1(t);
    cd bracket = std::conj(p.A) * (1.0 - std::exp(-kI * omega_ * t)) + std::conj(p.B) * (std::exp(kI * omega_ * t) - 1.0);
    return z * z - p.xi3 / (kI * omega_) * bracket;
}

cd ClosedFormGeodesic3::c2_dot(double t) const {
    cd z = c1(t);
    return 2.0 * z * c1_dot(t) - std::conj(z) * params_.xi3 + params_.K;
}

cd ClosedFormGeodesic3::c3_dot(double t) const {
    cd z1 = c1(t);
    cd d1 = c1_dot(t);
    return 3.0 * c2(t) * d1 + 2.0 * z1 * (c2_dot(t) - 2.0 * z1 * d1);
}

namespace {

cd integrate_complex(const std::function<cd(double)>& f, double a, double b) {
    using boost::math::quadrature::gauss_kronrod;
    if (a == b) {
        return 0.0;
    }
    double re = gauss_kronrod<double, 31>::integrate([&](double t) { return f(t).real(); }, a, b, 10, 1e-12);
    double im = gauss_kronrod<double, 31>::integrate([&](double t) { return f(t).imag(); }, a, b, 10, 1e-12);
    return {re, im};
}

// Short sample intervals: a fixed 20-point Gauss-Legendre rule is already at
// machine precision for these entire integrands.
cd integrate_complex_short(const std::function<cd(double)>& f, double a, double b) {
    using boost::math::quadrature::gauss;
    double re = gauss<double, 20>::integrate([&](double t) { return f(t).real(); }, a, b);
    double im = gauss<double, 20>::integrate([&](double t) { return f(t).imag(); }, a, b);
    return {re, im};
}

}  // namespace

cd ClosedFormGeodesic3::c3(double t) const {
    return integrate_complex([this](double s) { return c3_dot(s); }, 0.0, t);
}

CoefficientPath ClosedFormGeodesic3::sample(double t_end, std::size_t steps) const {
    if (steps < 1 || !(t_end > 0.0)) {
        throw std::invalid_argument("closed_form_geodesic3: need steps >= 1 and t_end > 0");
    }
    CoefficientPath path;
    const double h = t_end / static_cast<double>(steps);
    cd c3_acc = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i <= steps; ++i) {
        double t = i == steps ? t_end : h * static_cast<double>(i);
        c3_acc += integrate_complex_short([this](double s) { return c3_dot(s); }, prev, t);
        prev = t;
        path.times.push_back(t);
        path.states.push_back({c1(t), c2(t), c3_acc});
    }
    return path;
}

GeodesicState ClosedFormGeodesic3::matching_initial_state() const {
    return {CVector(3), CVector{c1dot0_, params_.K, params_.xi3}};
}

double ClosedFormGeodesic3::oscillator_residual(double t) const {
    return std::abs(c1_ddot(t) + omega_ * omega_ * c1(t) - std::conj(params_.K) * params_.xi3);
}

double lagrangian(std::span<const cd> c, std::span<const cd> cdot, cd lambda) {
    if (c.size() != 3 || cdot.size() != 3) {
        throw std::invalid_argument("lagrangian: defined on M_3 only");
    }
    cd u2 = cdot[1] - 2.0 * c[0] * cdot[0];
    cd constraint = cdot[2] - 3.0 * c[1] * cdot[0] - 2.0 * c[0] * cdot[1] + 4.0 * c[0] * c[0] * cdot[0];
    return std::norm(cdot[0]) + std::norm(u2) + (std::conj(lambda) * constraint).real();
}

EulerLagrangeReport euler_lagrange_residual(const CoefficientPath& path, cd lambda) {
    std::vector<cd> lam(path.size(), lambda);
    return euler_lagrange_residual(path, lam);
}

EulerLagrangeReport euler_lagrange_residual(const CoefficientPath& path, std::span<const cd> lambda) {
    path.validate();
    if (path.n() != 3) {
        throw std::invalid_argument("euler_lagrange_residual: defined on M_3 only");
    }
    if (path.size() < 5) {
        throw std::invalid_argument("euler_lagrange_residual: need at least 5 samples");
    }
    if (lambda.size() != path.size()) {
        throw std::invalid_argument("euler_lagrange_residual: multiplier samples do not match the path");
    }
    auto series = component_series(path);
    auto d1 = differentiate_samples(path.times, series[0]);
    auto d2 = differentiate_samples(path.times, series[1]);
    auto dd1 = second_derivative_samples(path.times, series[0]);
    auto dd2 = second_derivative_samples(path.times, series[1]);
    CVector du(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        du[i] = dd2[i] - 2.0 * d1[i] * d1[i] - 2.0 * series[0][i] * dd1[i];
    }
    CVector lam_bar(lambda.size());
    std::transform(lambda.begin(), lambda.end(), lam_bar.begin(), [](cd z) { return std::conj(z); });
    auto dlam_bar = differentiate_samples(path.times, lam_bar);

    EulerLagrangeReport report;
    report.times = path.times;
    for (std::size_t i = 0; i < path.size(); ++i) {
        cd ubar_dot = std::conj(du[i]);
        std::array<cd, 3> r{std::conj(dd1[i]) - 2.0 * series[0][i] * ubar_dot - lam_bar[i] * d2[i],
                            ubar_dot + lam_bar[i] * d1[i], dlam_bar[i]};
        for (cd z : r) {
            report.max_residual = std::max(report.max_residual, std::abs(z));
        }
        report.residuals.push_back(r);
    }
    return report;
}

LDynamicsReport l_dynamics_check(const GeodesicPath& path) {
    if (path.size() < 4) {
        throw std::invalid_argument("l_dynamics_check: need at least 4 samples");
    }
    CVector l1(path.size());
    CVector l2(path.size());
    CVector l3(path.size());
    for (std::size_t i = 0; i < path.size(); ++i) {
        auto s = path.state(i);
        l1[i] = l_value(s, 1);
        l2[i] = l_value(s, 2);
        l3[i] = l_value(s, 3);
    }
    auto dl1 = differentiate_samples(path.times, l1);
    auto dl2 = differentiate_samples(path.times, l2);
    LDynamicsReport report;
    for (std::size_t i = 0; i < path.size(); ++i) {
        report.max_mismatch_l1 = std::max(report.max_mismatch_l1, std::abs(dl1[i] - std::conj(l2[i]) * l3[i]));
        report.max_mismatch_l2 = std::max(report.max_mismatch_l2, std::abs(dl2[i] + std::conj(l1[i]) * l3[i]));
    }
    return report;
}

}  // namespace coeffbody
