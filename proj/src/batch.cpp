#include "coeffbody/batch.hpp"

#include <cmath>
#include <cstdlib>
#include <random>
#include <string>

#include <omp.h>

#include "coeffbody/integrals.hpp"

namespace coeffbody {

int thread_cap() {
    int max = omp_get_max_threads();
    const char* env = std::getenv("COEFFBODY_THREADS");
    if (env == nullptr || *env == '\0') {
        return max;
    }
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
        return max;
    }
    return static_cast<int>(std::min<long>(v, max));
}

std::uint64_t case_seed(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    std::uint32_t out[2];
    seq.generate(out, out + 2);
    return (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
}

namespace {

cd unit_square(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    double re = u(rng);
    return {re, u(rng)};
}

ConservationResult run_conservation(const ConservationCase& item, double t_end, std::size_t steps) {
    ConservationResult r;
    r.index = item.index;
    r.n = item.n();
    try {
        auto driving = DrivingFunction::constant(item.n(), item.p);
        IntegrationOptions opts;
        opts.t_end = t_end;
        opts.steps = steps;
        opts.with_adjoint = true;
        opts.psi0 = AdjointState{item.psi0};
        auto path = integrate_trajectory(driving, opts);
        r.drift = first_integral_drift(path);
        r.debranges_margin = -INFINITY;
        for (const auto& c : path.states) {
            for (std::size_t k = 1; k <= c.size(); ++k) {
                r.debranges_margin = std::max(r.debranges_margin, std::abs(c[k - 1]) - static_cast<double>(k + 1));
            }
        }
        r.debranges_ok = !debranges_violation(path).has_value();
    } catch (const IntegrationError&) {
        r.failed = true;
    }
    return r;
}

// Second differences of |c| ~ 1e2 lose accuracy below a spacing of about 1e-3.
constexpr double kDifferenceStep = 1e-3;

std::size_t difference_stride(double t_end, std::size_t steps) {
    const double h = t_end / static_cast<double>(steps);
    std::size_t stride = 1;
    for (std::size_t s = 2; s <= steps / 8; ++s) {
        if (steps % s == 0 && s * h <= kDifferenceStep * (1 + 1e-12)) {
            stride = s;
        }
    }
    return stride;
}

GeodesicResult run_geodesic(std::size_t index, const CVector& xi, double t_end, std::size_t steps) {
    GeodesicResult r;
    r.index = index;
    try {
        auto path = integrate_geodesic(GeodesicState{{}, xi}, t_end, steps);
        r.energy_drift = energy_drift(path);
        auto coeffs = path.coefficient_path();
        r.horizontality = horizontality_check(coeffs, 1.0).max_residual;
        r.euler_lagrange =
            euler_lagrange_residual(subsample(coeffs, difference_stride(t_end, steps)), xi[2]).max_residual;
        ClosedFormGeodesic3 closed(xi[2], xi[0], xi[1]);
        auto exact = closed.sample(t_end, steps);
        for (std::size_t i = 0; i < exact.size(); ++i) {
            for (std::size_t k = 0; k < 3; ++k) {
                r.closed_form_gap = std::max(r.closed_form_gap, std::abs(exact.states[i][k] - coeffs.states[i][k]));
            }
        }
    } catch (const IntegrationError&) {
        r.failed = true;
    }
    return r;
}

}  // namespace

std::vector<ConservationCase> conservation_cases(std::size_t count, std::size_t max_n, std::uint64_t seed) {
    if (max_n < 2) {
        throw std::invalid_argument("conservation_cases: max_n must be at least 2");
    }
    std::vector<ConservationCase> cases;
    for (std::size_t i = 0; i < count; ++i) {
        std::mt19937_64 rng(case_seed(seed, i));
        std::size_t n = 2 + i % (max_n - 1);
        ConservationCase item{i, random_caratheodory_coefficients(n, rng), {}};
        for (std::size_t k = 0; k < n; ++k) {
            item.psi0.push_back(unit_square(rng));
        }
        cases.push_back(std::move(item));
    }
    return cases;
}

std::vector<ConservationResult> conservation_batch(const std::vector<ConservationCase>& cases, double t_end,
                                                   std::size_t steps) {
    std::vector<ConservationResult> out(cases.size());
    const long count = static_cast<long>(cases.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
    for (long i = 0; i < count; ++i) {
        out[i] = run_conservation(cases[i], t_end, steps);
    }
    return out;
}

std::vector<ConservationResult> conservation_batch_serial(const std::vector<ConservationCase>& cases, double t_end,
                                                          std::size_t steps) {
    std::vector<ConservationResult> out;
    for (const auto& item : cases) {
        out.push_back(run_conservation(item, t_end, steps));
    }
    return out;
}

std::vector<CVector> geodesic_cases(std::size_t count, std::uint64_t seed) {
    std::vector<CVector> cases;
    for (std::size_t i = 0; i < count; ++i) {
        std::mt19937_64 rng(case_seed(seed, i));
        CVector xi{unit_square(rng), unit_square(rng), unit_square(rng)};
        while (std::abs(xi[2]) < 0.05) {
            xi[2] = unit_square(rng);
        }
        cases.push_back(std::move(xi));
    }
    return cases;
}

std::vector<GeodesicResult> geodesic_batch(const std::vector<CVector>& cases, double t_end, std::size_t steps) {
    std::vector<GeodesicResult> out(cases.size());
    const long count = static_cast<long>(cases.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_cap())
    for (long i = 0; i < count; ++i) {
        out[i] = run_geodesic(static_cast<std::size_t>(i), cases[i], t_end, steps);
    }
    return out;
}

std::vector<GeodesicResult> geodesic_batch_serial(const std::vector<CVector>& cases, double t_end,
                                                  std::size_t steps) {
    std::vector<GeodesicResult> out;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        out.push_back(run_geodesic(i, cases[i], t_end, steps));
    }
    return out;
}

}  // namespace coeffbody
