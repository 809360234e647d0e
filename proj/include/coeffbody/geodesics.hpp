#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "coeffbody/loewner.hpp"

namespace coeffbody {

/// Point (c, xi) of the cotangent bundle over M_n.
struct GeodesicState {
    CVector c;
    CVector xi;
    std::size_t n() const { return c.size(); }
};

/// l_1 = sum_m m c_{m-1} conj(xi_m), l_2 = sum_m (m-1) c_{m-2} conj(xi_m),
/// l_3 = sum_m (m-2) c_{m-3} conj(xi_m), with c_0 = 1.
cd l_value(const GeodesicState& s, std::size_t j);

/// |l_1|^2 + |l_2|^2.
double hamiltonian(const GeodesicState& s);

/// Time derivative of (c, xi) under the sub-Riemannian Hamiltonian system.
GeodesicState geodesic_rhs(const GeodesicState& s);

struct GeodesicPath {
    std::vector<double> times;
    std::vector<CVector> c;
    std::vector<CVector> xi;
    std::vector<double> energy;

    std::size_t n() const { return c.empty() ? 0 : c.front().size(); }
    std::size_t size() const { return times.size(); }
    GeodesicState state(std::size_t i) const { return {c.at(i), xi.at(i)}; }
    CoefficientPath coefficient_path() const;
};

/// RK4 over [0, t_end]. Missing c in the initial state defaults to zero.
/// Throws IntegrationError on a non-finite state.
GeodesicPath integrate_geodesic(GeodesicState initial, double t_end, std::size_t steps);

/// Largest |H(t) - H(0)| / (1 + H(0)) along the path.
double energy_drift(const GeodesicPath& path);

struct HorizontalityReport {
    std::vector<double> times;
    CVector u1;
    CVector u2;
    /// residuals[i] = (g_3, ..., g_n) at sample i.
    std::vector<CVector> residuals;
    double max_residual = 0.0;
    bool horizontal = false;
};

/// Residuals g_k = dc_k - k c_{k-1} u_1 - (k-1) c_{k-2} u_2, k >= 3, with
/// u_1 = dc_1 and u_2 = dc_2 - 2 c_1 dc_1; derivatives by second-order
/// differences. Needs at least 4 samples.
HorizontalityReport horizontality_check(const CoefficientPath& path, double tolerance);

/// Decomposition v = u_1 L_1(c) + u_2 L_2(c) + sum_{k>=3} g_k d_k.
/// Returns (u_1, u_2, g_3, ..., g_n).
template <class T>
std::vector<T> tangent_in_frame(std::span<const T> c, std::span<const T> v) {
    if (c.size() != v.size()) {
        throw std::invalid_argument("tangent_in_frame: dimension mismatch");
    }
    const std::size_t n = c.size();
    std::vector<T> out(v.begin(), v.end());
    if (n >= 2) {
        out[1] = v[1] - T(2L) * c[0] * v[0];
    }
    for (std::size_t k = 3; k <= n; ++k) {
        T g = v[k - 1] - T(static_cast<long>(k)) * c[k - 2] * out[0];
        g = g - T(static_cast<long>(k - 1)) * c[k - 3] * out[1];
        out[k - 1] = g;
    }
    return out;
}

/// Inverse of tangent_in_frame.
template <class T>
std::vector<T> tangent_from_frame(std::span<const T> c, std::span<const T> frame) {
    if (c.size() != frame.size()) {
        throw std::invalid_argument("tangent_from_frame: dimension mismatch");
    }
    const std::size_t n = c.size();
    std::vector<T> v(frame.begin(), frame.end());
    if (n >= 2) {
        v[1] = frame[1] + T(2L) * c[0] * frame[0];
    }
    for (std::size_t k = 3; k <= n; ++k) {
        v[k - 1] = frame[k - 1] + T(static_cast<long>(k)) * c[k - 2] * frame[0] +
                   T(static_cast<long>(k - 1)) * c[k - 3] * frame[1];
    }
    return v;
}

/// Constants of the explicit M_3 geodesic through the origin.
struct Geodesic3Params {
    cd xi3;
    cd K;
    cd A;
    cd B;
    /// |A + B + conj(K)/conj(xi3)|.
    double constraint_residual() const;
};

/// Closed-form geodesic in M_3 with c(0) = 0:
///   c_1 = A e^{iwt} + B e^{-iwt} + conj(K)/conj(xi3),  w = |xi3|,
///   c_2 = c_1^2 - (xi3/(iw)) [conj(A)(1 - e^{-iwt}) + conj(B)(e^{iwt} - 1)],
/// c_3 by adaptive Gauss-Kronrod quadrature of dc_3 = 3c_2 dc_1 + 2c_1(dc_2 - 2c_1 dc_1).
class ClosedFormGeodesic3 {
public:
    /// Throws std::invalid_argument for xi3 = 0.
    ClosedFormGeodesic3(cd xi3, cd c1dot0, cd c2dot0);

    const Geodesic3Params& params() const { return params_; }

    cd c1(double t) const;
    cd c1_dot(double t) const;
    cd c1_ddot(double t) const;
    cd c2(double t) const;
    cd c2_dot(double t) const;
    cd c3_dot(double t) const;
    /// c_3 on [0, t] by a single quadrature.
    cd c3(double t) const;
    std::array<cd, 3> operator()(double t) const { return {c1(t), c2(t), c3(t)}; }

    /// Samples on a uniform grid over [0, t_end]; c_3 accumulated interval by interval.
    CoefficientPath sample(double t_end, std::size_t steps) const;

    /// Initial state for integrate_geodesic with matching data: xi_1 = c1dot0,
    /// xi_2 = c2dot0, xi_3 = xi3, c = 0.
    GeodesicState matching_initial_state() const;

    /// |c_1'' + |xi3|^2 c_1 - conj(K) xi3| from the analytic derivatives.
    double oscillator_residual(double t) const;

private:
    Geodesic3Params params_;
    double omega_;
    cd c1dot0_;
};

/// |dc_1|^2 + |dc_2 - 2c_1 dc_1|^2 + Re conj(lambda)(dc_3 - 3c_2 dc_1 - 2c_1 dc_2 + 4c_1^2 dc_1).
double lagrangian(std::span<const cd> c, std::span<const cd> cdot, cd lambda);

struct EulerLagrangeReport {
    std::vector<double> times;
    /// r_1 = conj(c_1'') - 2c_1 conj(u') - conj(lambda) dc_2
    /// r_2 = conj(u') + conj(lambda) dc_1
    /// r_3 = d conj(lambda)/dt
    /// with u = dc_2 - 2c_1 dc_1.
    std::vector<std::array<cd, 3>> residuals;
    double max_residual = 0.0;
};

/// Residuals of the M_3 Euler-Lagrange system along a sampled path, constant multiplier.
EulerLagrangeReport euler_lagrange_residual(const CoefficientPath& path, cd lambda);
/// Same with a sampled multiplier.
EulerLagrangeReport euler_lagrange_residual(const CoefficientPath& path, std::span<const cd> lambda);

struct LDynamicsReport {
    double max_mismatch_l1 = 0.0;
    double max_mismatch_l2 = 0.0;
    double max_mismatch() const { return std::max(max_mismatch_l1, max_mismatch_l2); }
};

/// Compares differenced l_1, l_2 with conj(l_2) l_3 and -conj(l_1) l_3.
LDynamicsReport l_dynamics_check(const GeodesicPath& path);

/// Derivative estimate of a sampled complex series: three-point central
/// differences inside, four-point one-sided stencils at the ends. Needs 4 samples.
CVector differentiate_samples(std::span<const double> times, std::span<const cd> values);
/// Second derivative: three-point central inside, five-point one-sided at the ends.
CVector second_derivative_samples(std::span<const double> times, std::span<const cd> values);

}  // namespace coeffbody
