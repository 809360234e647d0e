#include "coeffbody/integrals.hpp"

#include <algorithm>

namespace coeffbody {

TriangularTransform TriangularTransform::build(std::size_t n) {
    TriangularTransform m;
    m.n = n;
    m.entries.assign(n, std::vector<MultiPoly>(n, MultiPoly(n)));
    for (std::size_t j = 0; j < n; ++j) {
        m.entries[j][j] = MultiPoly::constant(n, 1);
        for (std::size_t k = j + 1; k < n; ++k) {
            m.entries[j][k] = MultiPoly::variable(n, k - j - 1) * QComplex(static_cast<long>(k - j + 1));
        }
    }
    return m;
}

namespace {

MultiPoly determinant_of(const std::vector<std::vector<MultiPoly>>& a, std::size_t nvars) {
    const std::size_t n = a.size();
    if (n == 0) {
        return MultiPoly::constant(nvars, 1);
    }
    MultiPoly det(nvars);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i][0].is_zero()) {
            continue;
        }
        std::vector<std::vector<MultiPoly>> minor;
        for (std::size_t r = 0; r < n; ++r) {
            if (r == i) {
                continue;
            }
            minor.emplace_back(a[r].begin() + 1, a[r].end());
        }
        MultiPoly term = a[i][0] * determinant_of(minor, nvars);
        if (i % 2 == 0) {
            det += term;
        } else {
            det -= term;
        }
    }
    return det;
}

CVector conjugated(const CVector& v) {
    CVector out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), [](cd z) { return std::conj(z); });
    return out;
}

}  // namespace

MultiPoly TriangularTransform::determinant() const { return determinant_of(entries, n); }

FirstIntegralVector first_integrals(const CoefficientState& state, const AdjointState& psi) {
    auto psi_bar = conjugated(psi.psi);
    return {first_integrals_kernel<cd>(state.c, psi_bar)};
}

AdjointState invert_integrals(const CoefficientState& state, const FirstIntegralVector& v) {
    return {conjugated(invert_integrals_kernel<cd>(state.c, v.v))};
}

std::size_t phase_space_vars(std::size_t n) { return 2 * n; }

MultiPoly phase_c(std::size_t n, std::size_t k) {
    if (k < 1 || k > n) {
        throw std::out_of_range("phase_c: index out of range");
    }
    return MultiPoly::variable(2 * n, k - 1);
}

MultiPoly phase_psi_bar(std::size_t n, std::size_t k) {
    if (k < 1 || k > n) {
        throw std::out_of_range("phase_psi_bar: index out of range");
    }
    return MultiPoly::variable(2 * n, n + k - 1);
}

MultiPoly first_integral_poly(std::size_t n, std::size_t k) {
    if (k < 1 || k > n) {
        throw std::out_of_range("first_integral_poly: index out of range");
    }
    MultiPoly l = phase_psi_bar(n, k);
    for (std::size_t m = k + 1; m <= n; ++m) {
        l += phase_c(n, m - k) * phase_psi_bar(n, m) * QComplex(static_cast<long>(m - k + 1));
    }
    return l;
}

MultiPoly poisson_bracket(const MultiPoly& f, const MultiPoly& g) {
    if (f.nvars() != g.nvars()) {
        throw std::invalid_argument("poisson_bracket: variable-count mismatch");
    }
    if (f.nvars() % 2 != 0) {
        throw std::invalid_argument("poisson_bracket: phase space needs an even number of variables");
    }
    const std::size_t n = f.nvars() / 2;
    MultiPoly out(f.nvars());
    for (std::size_t k = 0; k < n; ++k) {
        out += f.derivative(n + k) * g.derivative(k);
        out -= f.derivative(k) * g.derivative(n + k);
    }
    return out;
}

double first_integral_drift(const CoefficientPath& path) {
    if (!path.adjoints || path.states.empty()) {
        throw std::invalid_argument("first_integral_drift: path has no adjoint samples");
    }
    auto l0 = first_integrals(CoefficientState{path.states.front()}, AdjointState{path.adjoints->front()});
    double drift = 0.0;
    for (std::size_t s = 0; s < path.states.size(); ++s) {
        auto l = first_integrals(CoefficientState{path.states[s]}, AdjointState{(*path.adjoints)[s]});
        for (std::size_t k = 0; k < l.n(); ++k) {
            drift = std::max(drift, std::abs(l.v[k] - l0.v[k]) / (1.0 + std::abs(l0.v[k])));
        }
    }
    return drift;
}

}  // namespace coeffbody
