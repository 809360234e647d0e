#include "coeffbody/loewner.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <boost/numeric/odeint.hpp>

namespace coeffbody {

DrivingFunction::DrivingFunction(std::size_t n, Callable eval) : n_(n), eval_(std::move(eval)) {
    if (!eval_) {
        throw std::invalid_argument("DrivingFunction: empty callable");
    }
}

DrivingFunction DrivingFunction::identity(std::size_t n) {
    return {n, [n](double) { return CVector(n); }};
}

DrivingFunction DrivingFunction::starlike(std::size_t n) {
    CVector p(n);
    if (n >= 2) {
        p[1] = 1.0;
    }
    return constant(n, std::move(p));
}

DrivingFunction DrivingFunction::constant(std::size_t n, CVector p) {
    p.resize(n);
    return {n, [p = std::move(p)](double) { return p; }};
}

DrivingFunction DrivingFunction::piecewise_constant(std::size_t n, std::vector<double> times,
                                                    std::vector<CVector> values) {
    if (times.empty() || times.size() != values.size()) {
        throw std::invalid_argument("piecewise_constant: need matching, non-empty node and value lists");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument("piecewise_constant: node times must be strictly increasing");
        }
    }
    for (auto& v : values) {
        v.resize(n);
    }
    return {n, [times = std::move(times), values = std::move(values)](double t) {
                auto it = std::upper_bound(times.begin(), times.end(), t);
                std::size_t idx = it == times.begin() ? 0 : static_cast<std::size_t>(it - times.begin()) - 1;
                return values[idx];
            }};
}

CVector DrivingFunction::operator()(double t) const {
    CVector p = eval_(t);
    p.resize(n_);
    return p;
}

CoefficientPath subsample(const CoefficientPath& path, std::size_t stride) {
    if (stride == 0 || path.size() == 0 || (path.size() - 1) % stride != 0) {
        throw std::invalid_argument("subsample: stride must divide the number of steps");
    }
    CoefficientPath out;
    for (std::size_t i = 0; i < path.size(); i += stride) {
        out.times.push_back(path.times[i]);
        out.states.push_back(path.states[i]);
    }
    return out;
}

void CoefficientPath::validate() const {
    if (times.size() != states.size()) {
        throw std::invalid_argument("CoefficientPath: times/states length mismatch");
    }
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) {
            throw std::invalid_argument("CoefficientPath: times must be strictly increasing");
        }
    }
    for (const auto& s : states) {
        if (s.size() != n()) {
            throw std::invalid_argument("CoefficientPath: inconsistent state dimension");
        }
    }
    if (adjoints && adjoints->size() != states.size()) {
        throw std::invalid_argument("CoefficientPath: adjoint samples do not match states");
    }
}

IntegrationError::IntegrationError(std::size_t step, double time, const std::string& what)
    : std::runtime_error(what + " at step " + std::to_string(step) + " (t = " + std::to_string(time) + ")"),
      step_(step),
      time_(time) {}

namespace {

void require_dimension(std::size_t expected, std::size_t got, const char* where) {
    if (expected != got) {
        throw std::invalid_argument(std::string(where) + ": dimension mismatch");
    }
}

}  // namespace

CVector coefficient_rhs(const CoefficientState& state, std::span<const cd> p, double t) {
    require_dimension(state.n(), p.size(), "coefficient_rhs");
    return coefficient_rhs_kernel<cd>(state.c, p, cd(std::exp(-t), 0.0));
}

CVector coefficient_rhs_expanded(const CoefficientState& state, std::span<const cd> p, double t) {
    require_dimension(state.n(), p.size(), "coefficient_rhs_expanded");
    return coefficient_rhs_expanded_kernel<cd>(state.c, p, cd(std::exp(-t), 0.0));
}

CVector adjoint_rhs(const AdjointState& psi, const CoefficientState& state, std::span<const cd> p, double t) {
    require_dimension(state.n(), p.size(), "adjoint_rhs");
    require_dimension(state.n(), psi.n(), "adjoint_rhs");
    CVector psi_bar(psi.n());
    std::transform(psi.psi.begin(), psi.psi.end(), psi_bar.begin(), [](cd z) { return std::conj(z); });
    return adjoint_rhs_kernel<cd>(psi_bar, state.c, p, cd(std::exp(-t), 0.0));
}

cd hamiltonian_value(const CoefficientState& state, const AdjointState& psi, std::span<const cd> p, double t) {
    require_dimension(state.n(), psi.n(), "hamiltonian_value");
    auto rhs = coefficient_rhs(state, p, t);
    cd h{};
    for (std::size_t k = 0; k < rhs.size(); ++k) {
        h += std::conj(psi.psi[k]) * rhs[k];
    }
    return h;
}

CoefficientPath integrate_trajectory(const DrivingFunction& driving, const IntegrationOptions& options) {
    namespace odeint = boost::numeric::odeint;
    if (options.steps < 1) {
        throw std::invalid_argument("integrate_trajectory: steps must be >= 1");
    }
    if (!(options.t_end > 0.0)) {
        throw std::invalid_argument("integrate_trajectory: t_end must be positive");
    }
    const std::size_t n = driving.n();
    CVector c0 = options.c0 ? options.c0->c : CVector(n);
    require_dimension(n, c0.size(), "integrate_trajectory");
    if (options.with_adjoint) {
        if (!options.psi0) {
            throw std::invalid_argument("integrate_trajectory: adjoint integration needs psi0");
        }
        require_dimension(n, options.psi0->n(), "integrate_trajectory");
    }

    // State layout: c_1..c_n, then conj(psi_1)..conj(psi_n) when co-integrating.
    CVector x = c0;
    if (options.with_adjoint) {
        for (cd z : options.psi0->psi) {
            x.push_back(std::conj(z));
        }
    }
    // The last RK stage samples the driving as a left limit, so table nodes
    // that fall on step boundaries switch exactly at the boundary.
    double step_end = 0.0;
    auto system = [&](const CVector& y, CVector& dydt, double t) {
        CVector p = driving(t >= step_end ? std::nextafter(step_end, -INFINITY) : t);
        cd decay(std::exp(-t), 0.0);
        std::span<const cd> c(y.data(), n);
        auto dc = coefficient_rhs_kernel<cd>(c, p, decay);
        std::copy(dc.begin(), dc.end(), dydt.begin());
        if (options.with_adjoint) {
            std::span<const cd> psi_bar(y.data() + n, n);
            auto dpsi = adjoint_rhs_kernel<cd>(psi_bar, c, p, decay);
            std::copy(dpsi.begin(), dpsi.end(), dydt.begin() + static_cast<std::ptrdiff_t>(n));
        }
    };

    CoefficientPath path;
    path.times.reserve(options.steps + 1);
    path.states.reserve(options.steps + 1);
    if (options.with_adjoint) {
        path.adjoints.emplace();
        path.adjoints->reserve(options.steps + 1);
    }
    auto record = [&](double t, const CVector& y) {
        path.times.push_back(t);
        path.states.emplace_back(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(n));
        if (options.with_adjoint) {
            CVector psi(n);
            for (std::size_t k = 0; k < n; ++k) {
                psi[k] = std::conj(y[n + k]);
            }
            path.adjoints->push_back(std::move(psi));
        }
    };

    odeint::runge_kutta4<CVector> stepper;
    const double h = options.t_end / static_cast<double>(options.steps);
    record(0.0, x);
    for (std::size_t i = 0; i < options.steps; ++i) {
        double t = h * static_cast<double>(i);
        step_end = t + h;
        stepper.do_step(system, x, t, h);
        for (cd z : x) {
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw IntegrationError(i + 1, t + h, "integrate_trajectory: non-finite state");
            }
        }
        record(i + 1 == options.steps ? options.t_end : h * static_cast<double>(i + 1), x);
    }
    return path;
}

CaratheodoryReport caratheodory_check(std::span<const cd> p, std::span<const double> radii,
                                      std::span<const double> angles) {
    for (double r : radii) {
        if (!(r > 0.0 && r < 1.0)) {
            throw std::invalid_argument("caratheodory_check: radii must lie in (0, 1)");
        }
    }
    CaratheodoryReport report;
    report.min_real = 1.0;
    report.argmin = 0.0;
    bool first = true;
    for (double r : radii) {
        for (double theta : angles) {
            cd z = std::polar(r, theta);
            cd value = 0.0;
            for (std::size_t k = p.size(); k-- > 0;) {
                value = (value + p[k]) * z;
            }
            value += 1.0;
            if (first || value.real() < report.min_real) {
                report.min_real = value.real();
                report.argmin = z;
                first = false;
            }
        }
    }
    report.positive = report.min_real > 0.0;
    return report;
}

std::vector<double> default_radius_grid() {
    std::vector<double> radii;
    for (int i = 1; i <= 9; ++i) {
        radii.push_back(0.1 * i);
    }
    return radii;
}

std::vector<double> uniform_angle_grid(std::size_t count) {
    std::vector<double> angles(count);
    for (std::size_t i = 0; i < count; ++i) {
        angles[i] = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
    }
    return angles;
}

std::optional<DeBrangesViolation> debranges_violation(const CoefficientPath& path, double slack) {
    for (std::size_t s = 0; s < path.states.size(); ++s) {
        const auto& c = path.states[s];
        for (std::size_t k = 0; k < c.size(); ++k) {
            double bound = static_cast<double>(k + 2) + slack;
            double modulus = std::abs(c[k]);
            if (!(modulus < bound)) {
                return DeBrangesViolation{s, k + 1, modulus};
            }
        }
    }
    return std::nullopt;
}

}  // namespace coeffbody
