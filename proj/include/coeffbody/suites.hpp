#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace coeffbody {

struct CheckResult {
    std::string name;
    bool pass = false;
    /// Measured deviation; exact checks report the number of surviving terms.
    double residual = 0.0;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool pass() const;
    double max_residual() const;
    /// Sorts checks by name.
    void finalize();
    nlohmann::ordered_json to_json() const;
};

/// Unset fields take per-suite defaults.
struct SuiteOptions {
    std::optional<std::size_t> n;
    std::optional<std::size_t> max;
    std::optional<std::size_t> count;
    std::optional<double> t_end;
    std::optional<std::size_t> steps;
    std::uint64_t seed = 0;
};

/// integrals, brackets, forms, contact, neretin, cocycle, geodesic.
const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown name or out-of-range options.
SuiteReport run_suite(const std::string& name, const SuiteOptions& options = {});

/// Conservation of L_1..L_n on random constant drivings (count 50, n cycling
/// 2..6, t in [0,3], 3000 steps) plus the Poisson table of the L_k.
SuiteReport integrals_suite(const SuiteOptions& options);
/// [L_j, L_k] = (j-k) L_{j+k} for every m <= n (default 8), both as vector
/// fields and through the Poisson bracket.
SuiteReport brackets_suite(const SuiteOptions& options);
/// omega_k(L_j) = delta, eta_k(L_1) = eta_k(L_2) = 0 for every m <= n (default 8),
/// and the contact identity.
SuiteReport forms_suite(const SuiteOptions& options);
SuiteReport contact_suite(const SuiteOptions& options);
/// P_2..P_4 displays and the recurrence for 1 <= k, j <= max (default 6).
SuiteReport neretin_suite(const SuiteOptions& options);
/// Trig relations, Jacobi and both cocycle identities on `count` random
/// triples (default 100, degree <= 8), omega(cos n, sin n) = n^3, J^2 = -id.
SuiteReport cocycle_suite(const SuiteOptions& options);
/// Random M_3 geodesics (count 20, t in [0,5], 20000 steps): energy,
/// horizontality, closed-form gap and Euler-Lagrange residuals.
SuiteReport geodesic_suite(const SuiteOptions& options);

}  // namespace coeffbody
