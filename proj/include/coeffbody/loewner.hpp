#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "coeffbody/series.hpp"

namespace coeffbody {

using cd = std::complex<double>;
using CVector = std::vector<cd>;

/// Driving term p(z,t) = 1 + sum_k p_k(t) z^k of the Loewner-Kufarev equation.
///
/// Only p_1..p_n matter for the first n coefficients. The callable must be
/// re-entrant; all factory functions below return stateless callables.
class DrivingFunction {
public:
    using Callable = std::function<CVector(double)>;

    DrivingFunction(std::size_t n, Callable eval);

    /// p(z,t) = 1 for all t.
    static DrivingFunction identity(std::size_t n);
    /// p_2 = 1, all other p_k = 0: the odd starlike map w = e^{-t}z / sqrt(1 + z^2(1 - e^{-2t})).
    static DrivingFunction starlike(std::size_t n);
    /// Time-independent coefficients; missing entries are zero, extra ones are ignored.
    static DrivingFunction constant(std::size_t n, CVector p);
    /// Piecewise-constant table: on [times[i], times[i+1]) the value is values[i];
    /// before times[0] the first row applies, after the last node the last row.
    static DrivingFunction piecewise_constant(std::size_t n, std::vector<double> times, std::vector<CVector> values);

    std::size_t n() const { return n_; }
    /// (p_1(t), ..., p_n(t)).
    CVector operator()(double t) const;

private:
    std::size_t n_;
    Callable eval_;
};

/// Coefficient vector (c_1..c_n) of e^t w(z,t) = z(1 + sum c_k z^k).
struct CoefficientState {
    CVector c;
    std::size_t n() const { return c.size(); }
};

/// Adjoint vector psi, stored un-conjugated. The adjoint ODE evolves conj(psi).
struct AdjointState {
    CVector psi;
    std::size_t n() const { return psi.size(); }
};

/// Time-sampled trajectory in coefficient space.
struct CoefficientPath {
    std::vector<double> times;
    std::vector<CVector> states;
    /// Adjoint samples (un-conjugated psi) when co-integrated.
    std::optional<std::vector<CVector>> adjoints;

    std::size_t n() const { return states.empty() ? 0 : states.front().size(); }
    std::size_t size() const { return times.size(); }
    /// Throws if times are not strictly increasing or dimensions disagree.
    void validate() const;
};

/// Every `stride`-th sample, starting with the first; drops adjoints.
/// Throws unless stride > 0 divides size() - 1.
CoefficientPath subsample(const CoefficientPath& path, std::size_t stride);

/// Thrown when an integrator produces a non-finite state.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(std::size_t step, double time, const std::string& what);
    std::size_t step() const { return step_; }
    double time() const { return time_; }

private:
    std::size_t step_;
    double time_;
};

// ---------------------------------------------------------------------------
// Residue kernels, generic over the scalar field.
//
// `decay` is e^{-t}. Writing W(z) = z(1 + sum c_k z^k) = e^t w, the
// coefficient system is
//     dc_m/dt = c_m - [z^{m+1}] W(z) p(decay * W(z)),
// which is the contour integral over |z| = 1 read off as a series coefficient.
// ---------------------------------------------------------------------------

namespace detail {

template <class T>
TruncatedSeries<T> normalized_map_series(std::span<const T> c, std::size_t order) {
    auto s = TruncatedSeries<T>::zero(order, c.empty() ? T{} : c[0]);
    if (order >= 1) {
        s[1] = int_like(s[0], 1);
    }
    for (std::size_t k = 1; k <= c.size() && k + 1 <= order; ++k) {
        s[k + 1] = c[k - 1];
    }
    return s;
}

template <class T>
void require_same_dimension(std::span<const T> a, std::span<const T> b, const char* where) {
    if (a.size() != b.size()) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
    }
}

}  // namespace detail

/// Right-hand side (dc_1/dt..dc_n/dt) by composing p with w and extracting coefficients.
template <class T>
std::vector<T> coefficient_rhs_kernel(std::span<const T> c, std::span<const T> p, const T& decay) {
    detail::require_same_dimension(c, p, "coefficient_rhs");
    const std::size_t n = c.size();
    if (n == 0) {
        return {};
    }
    const std::size_t order = n + 1;
    auto big_w = detail::normalized_map_series<T>(c, order);
    auto w = big_w * decay;
    std::vector<T> pc(order + 1, zero_like(c[0]));
    pc[0] = int_like(c[0], 1);
    for (std::size_t k = 1; k <= n; ++k) {
        pc[k] = p[k - 1];
    }
    auto p_of_w = series_compose(TruncatedSeries<T>(std::move(pc)), w);
    auto product = series_mul(big_w, p_of_w);
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t m = 1; m <= n; ++m) {
        out.push_back(c[m - 1] - product[m + 1]);
    }
    return out;
}

/// Same right-hand side through the expanded form -sum_k p_k decay^k [z^{m+1}] W^{k+1}.
template <class T>
std::vector<T> coefficient_rhs_expanded_kernel(std::span<const T> c, std::span<const T> p, const T& decay) {
    detail::require_same_dimension(c, p, "coefficient_rhs_expanded");
    const std::size_t n = c.size();
    if (n == 0) {
        return {};
    }
    const std::size_t order = n + 1;
    auto big_w = detail::normalized_map_series<T>(c, order);
    std::vector<T> out(n, zero_like(c[0]));
    auto power = big_w;  // W^{k+1}, starting at k = 1 below
    T decay_k = int_like(c[0], 1);
    for (std::size_t k = 1; k <= n; ++k) {
        power = series_mul(power, big_w);
        decay_k = decay_k * decay;
        T weight = p[k - 1] * decay_k;
        if (scalar_is_zero(weight)) {
            continue;
        }
        for (std::size_t m = 1; m <= n; ++m) {
            out[m - 1] = out[m - 1] - weight * power[m + 1];
        }
    }
    return out;
}

/// d(conj psi)/dt from the residue form: -conj(psi_j) + sum_k conj(psi_k) [z^{k-j}] (p + w p')(w).
/// The last component is identically zero.
template <class T>
std::vector<T> adjoint_rhs_kernel(std::span<const T> psi_bar, std::span<const T> c, std::span<const T> p,
                                  const T& decay) {
    detail::require_same_dimension(c, p, "adjoint_rhs");
    detail::require_same_dimension(c, psi_bar, "adjoint_rhs");
    const std::size_t n = c.size();
    if (n == 0) {
        return {};
    }
    const std::size_t order = n;
    auto w = detail::normalized_map_series<T>(c, order) * decay;
    // q(x) = p(x) + x p'(x) = 1 + sum (k+1) p_k x^k
    std::vector<T> qc(order + 1, zero_like(c[0]));
    qc[0] = int_like(c[0], 1);
    for (std::size_t k = 1; k <= std::min(n, order); ++k) {
        qc[k] = p[k - 1] * int_like(c[0], static_cast<long>(k + 1));
    }
    auto g = series_compose(TruncatedSeries<T>(std::move(qc)), w);
    std::vector<T> out(n, zero_like(c[0]));
    for (std::size_t j = 1; j < n; ++j) {
        T acc = zero_like(c[0]) - psi_bar[j - 1];
        for (std::size_t k = j; k <= n; ++k) {
            acc = acc + psi_bar[k - 1] * g[k - j];
        }
        out[j - 1] = acc;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Numerical API
// ---------------------------------------------------------------------------

CVector coefficient_rhs(const CoefficientState& state, std::span<const cd> p, double t);
CVector coefficient_rhs_expanded(const CoefficientState& state, std::span<const cd> p, double t);
/// Returns d(conj psi)/dt.
CVector adjoint_rhs(const AdjointState& psi, const CoefficientState& state, std::span<const cd> p, double t);
/// sum_k conj(psi_k) * dc_k/dt.
cd hamiltonian_value(const CoefficientState& state, const AdjointState& psi, std::span<const cd> p, double t);

struct IntegrationOptions {
    double t_end = 1.0;
    std::size_t steps = 1000;
    /// Defaults to c = 0, i.e. w(z,0) = z.
    std::optional<CoefficientState> c0;
    bool with_adjoint = false;
    /// Required when with_adjoint is set.
    std::optional<AdjointState> psi0;
};

/// Fixed-step classical RK4 on the coefficient system (and optionally its adjoint).
CoefficientPath integrate_trajectory(const DrivingFunction& driving, const IntegrationOptions& options);

struct CaratheodoryReport {
    bool positive = true;
    double min_real = 0.0;
    cd argmin{};
};

/// Samples Re(1 + sum p_k z^k) on z = r e^{i theta} for every (r, theta) in the grids.
CaratheodoryReport caratheodory_check(std::span<const cd> p, std::span<const double> radii,
                                      std::span<const double> angles);
/// Radii 0.1, 0.2, ..., 0.9.
std::vector<double> default_radius_grid();
/// `count` equally spaced angles in [0, 2 pi).
std::vector<double> uniform_angle_grid(std::size_t count = 72);

struct DeBrangesViolation {
    std::size_t sample;
    std::size_t index;  // 1-based coefficient index
    double modulus;
};

/// First sample with |c_k| >= k + 1 + slack, if any.
std::optional<DeBrangesViolation> debranges_violation(const CoefficientPath& path, double slack = 1e-6);

/// Coefficients p_k = 2 sum_i w_i e^{i k alpha_i} of a random Herglotz measure
/// (convex combination of point masses); such p lie in the Caratheodory class.
template <class Rng>
CVector random_caratheodory_coefficients(std::size_t n, Rng& rng, std::size_t atoms = 3);

}  // namespace coeffbody

#include <numbers>
#include <random>

namespace coeffbody {

template <class Rng>
CVector random_caratheodory_coefficients(std::size_t n, Rng& rng, std::size_t atoms) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> weights(atoms);
    std::vector<double> angles(atoms);
    double total = 0.0;
    for (std::size_t i = 0; i < atoms; ++i) {
        weights[i] = unit(rng) + 0.05;
        angles[i] = 2.0 * std::numbers::pi * unit(rng);
        total += weights[i];
    }
    CVector p(n);
    for (std::size_t k = 1; k <= n; ++k) {
        cd acc{};
        for (std::size_t i = 0; i < atoms; ++i) {
            acc += weights[i] / total * std::polar(1.0, static_cast<double>(k) * angles[i]);
        }
        p[k - 1] = 2.0 * acc;
    }
    return p;
}

}  // namespace coeffbody
