#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "coeffbody/geodesics.hpp"
#include "coeffbody/loewner.hpp"

namespace coeffbody {

/// Worker count: COEFFBODY_THREADS when set to a positive integer (capped at
/// the OpenMP maximum), otherwise the OpenMP maximum.
int thread_cap();

/// Independent seed for case `index` of a batch seeded with `seed`.
std::uint64_t case_seed(std::uint64_t seed, std::size_t index);

struct ConservationCase {
    std::size_t index = 0;
    CVector p;
    CVector psi0;
    std::size_t n() const { return p.size(); }
};

/// `count` random constant Caratheodory drivings with n cycling over
/// 2..max_n, adjoint initial data uniform in [-1,1]^2 per component.
std::vector<ConservationCase> conservation_cases(std::size_t count, std::size_t max_n, std::uint64_t seed);

struct ConservationResult {
    std::size_t index = 0;
    std::size_t n = 0;
    double drift = 0.0;
    /// max over samples and k of |c_k| - (k + 1).
    double debranges_margin = 0.0;
    bool debranges_ok = true;
    bool failed = false;
};

std::vector<ConservationResult> conservation_batch(const std::vector<ConservationCase>& cases, double t_end,
                                                   std::size_t steps);
std::vector<ConservationResult> conservation_batch_serial(const std::vector<ConservationCase>& cases, double t_end,
                                                          std::size_t steps);

/// Random n = 3 initial covectors at c = 0, each component uniform in
/// [-1,1] x [-1,1]i; xi_3 is redrawn until |xi_3| >= 0.05.
std::vector<CVector> geodesic_cases(std::size_t count, std::uint64_t seed);

struct GeodesicResult {
    std::size_t index = 0;
    double energy_drift = 0.0;
    double horizontality = 0.0;
    double closed_form_gap = 0.0;
    double euler_lagrange = 0.0;
    bool failed = false;
};

/// Integrates each case on [0, t_end] and runs every M_3 check against it.
std::vector<GeodesicResult> geodesic_batch(const std::vector<CVector>& cases, double t_end, std::size_t steps);
std::vector<GeodesicResult> geodesic_batch_serial(const std::vector<CVector>& cases, double t_end,
                                                  std::size_t steps);

}  // namespace coeffbody
