#include "coeffbody/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>

#include "coeffbody/batch.hpp"
#include "coeffbody/forms.hpp"
#include "coeffbody/integrals.hpp"
#include "coeffbody/kirillov.hpp"
#include "coeffbody/virasoro.hpp"

namespace coeffbody {

namespace {

std::string key(const char* format, long a, long b = 0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, a, b);
    return buf;
}

CheckResult exact_check(std::string name, std::size_t mismatches, std::string detail = {}) {
    return {std::move(name), mismatches == 0, static_cast<double>(mismatches), std::move(detail)};
}

CheckResult bound_check(std::string name, double value, double tolerance) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "tolerance %g", tolerance);
    return {std::move(name), value <= tolerance, value, buf};
}

mpq_class rational(long num, long den = 1) {
    mpq_class v(num, den);
    v.canonicalize();
    return v;
}

TrigVectorField random_field(std::mt19937_64& rng, std::size_t degree, bool mean_zero) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 5);
    auto draw = [&] {
        long p = num(rng);
        return rational(p, den(rng));
    };
    std::vector<mpq_class> a(degree), b(degree);
    for (std::size_t i = 0; i < degree; ++i) {
        a[i] = draw();
        b[i] = draw();
    }
    mpq_class a0 = mean_zero ? mpq_class(0) : draw();
    return {a0, a, b};
}

std::size_t poisson_mismatches(std::size_t n) {
    std::size_t bad = 0;
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t k = 1; k <= n; ++k) {
            auto got = poisson_bracket(first_integral_poly(n, j), first_integral_poly(n, k));
            MultiPoly expected(phase_space_vars(n));
            if (j + k <= n) {
                expected = first_integral_poly(n, j + k) * QComplex(static_cast<long>(j) - static_cast<long>(k));
            }
            bad += got == expected ? 0 : 1;
        }
    }
    return bad;
}

}  // namespace

bool SuiteReport::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

double SuiteReport::max_residual() const {
    double m = 0.0;
    for (const auto& c : checks) {
        m = std::max(m, c.residual);
    }
    return m;
}

void SuiteReport::finalize() {
    std::stable_sort(checks.begin(), checks.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
}

nlohmann::ordered_json SuiteReport::to_json() const {
    auto items = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
        nlohmann::ordered_json item{{"name", c.name}, {"pass", c.pass}, {"residual", c.residual}};
        if (!c.detail.empty()) {
            item["detail"] = c.detail;
        }
        items.push_back(std::move(item));
    }
    return {{"suite", suite}, {"pass", pass()}, {"checks", std::move(items)}};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"integrals", "brackets", "forms",   "contact",
                                                "neretin",   "cocycle",  "geodesic"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
    SuiteReport r;
    if (name == "integrals") {
        r = integrals_suite(options);
    } else if (name == "brackets") {
        r = brackets_suite(options);
    } else if (name == "forms") {
        r = forms_suite(options);
    } else if (name == "contact") {
        r = contact_suite(options);
    } else if (name == "neretin") {
        r = neretin_suite(options);
    } else if (name == "cocycle") {
        r = cocycle_suite(options);
    } else if (name == "geodesic") {
        r = geodesic_suite(options);
    } else {
        throw std::invalid_argument("unknown suite '" + name + "'");
    }
    r.finalize();
    return r;
}

SuiteReport integrals_suite(const SuiteOptions& options) {
    const std::size_t n = options.n.value_or(6);
    if (n < 2) {
        throw std::invalid_argument("integrals suite: n must be at least 2");
    }
    SuiteReport r{"integrals", {}};
    auto cases = conservation_cases(options.count.value_or(50), n, options.seed);
    auto results = conservation_batch(cases, options.t_end.value_or(3.0), options.steps.value_or(3000));
    for (const auto& res : results) {
        long i = static_cast<long>(res.index);
        auto drift = bound_check(key("conservation/case-%03ld", i), res.failed ? INFINITY : res.drift, 1e-6);
        drift.detail += ", n=" + std::to_string(res.n);
        r.checks.push_back(std::move(drift));
        r.checks.push_back({key("debranges/case-%03ld", i), !res.failed && res.debranges_ok,
                            std::max(0.0, res.debranges_margin), "max |c_k| - (k+1)"});
    }
    for (std::size_t m = 2; m <= n; ++m) {
        r.checks.push_back(exact_check(key("poisson/n=%ld", static_cast<long>(m)), poisson_mismatches(m)));
    }
    return r;
}

SuiteReport brackets_suite(const SuiteOptions& options) {
    const std::size_t n = options.n.value_or(8);
    if (n < 1) {
        throw std::invalid_argument("brackets suite: n must be at least 1");
    }
    SuiteReport r{"brackets", {}};
    for (std::size_t m = 1; m <= n; ++m) {
        std::size_t bad = 0;
        for (const auto& e : bracket_table(m)) {
            bad += e.exact_match ? 0 : 1;
        }
        long lm = static_cast<long>(m);
        r.checks.push_back(exact_check(key("table/n=%ld", lm), bad));
        r.checks.push_back(exact_check(key("poisson/n=%ld", lm), poisson_mismatches(m)));
        std::size_t rank = bracket_generated_rank(m);
        r.checks.push_back(exact_check(key("rank/n=%ld", lm), rank == m ? 0 : 1, "rank " + std::to_string(rank)));
    }
    return r;
}

SuiteReport contact_suite(const SuiteOptions&) {
    SuiteReport r{"contact", {}};
    auto eta = eta_forms(3)[0];
    auto deta = exterior_derivative(eta);
    auto contact = wedge(eta, deta);
    PolyForm volume(3, 3);
    volume.add_term({1, 2, 3}, MultiPoly::constant(3, 1));
    auto diff = contact - volume;
    r.checks.push_back(exact_check("eta3^deta3", diff.terms().size(), contact.to_string()));
    auto dd = wedge(PolyForm::dc(3, 1), PolyForm::dc(3, 2));
    r.checks.push_back(exact_check("deta3", (deta - dd).terms().size(), deta.to_string()));
    return r;
}

SuiteReport forms_suite(const SuiteOptions& options) {
    const std::size_t n = options.n.value_or(8);
    SuiteReport r{"forms", {}};
    for (std::size_t m = 1; m <= n; ++m) {
        auto omega = dual_basis_forms(m);
        std::size_t bad = 0;
        for (std::size_t k = 1; k <= m; ++k) {
            for (std::size_t j = 1; j <= m; ++j) {
                bad += pair(omega[k - 1], kirillov_field(j, m)) == MultiPoly::constant(m, k == j ? 1 : 0) ? 0 : 1;
            }
        }
        r.checks.push_back(exact_check(key("duality/n=%ld", static_cast<long>(m)), bad));
    }
    for (std::size_t m = 3; m <= n; ++m) {
        std::size_t bad = 0;
        for (const auto& e : eta_forms(m)) {
            bad += pair(e, kirillov_field(1, m)).is_zero() ? 0 : 1;
            bad += pair(e, kirillov_field(2, m)).is_zero() ? 0 : 1;
        }
        r.checks.push_back(exact_check(key("eta-kernel/n=%ld", static_cast<long>(m)), bad));
    }
    for (auto& c : contact_suite(options).checks) {
        r.checks.push_back(std::move(c));
    }
    return r;
}

SuiteReport neretin_suite(const SuiteOptions& options) {
    const std::size_t max = options.max.value_or(6);
    auto t = neretin_polynomials(max);
    SuiteReport r{"neretin", {}};
    const std::size_t nv = t.nvars();
    auto c = t.charge();
    auto v = [&](std::size_t k) { return MultiPoly::variable(nv, k - 1); };
    auto q = [](long a, long b = 1) { return QComplex(rational(a, b)); };
    std::vector<MultiPoly> displays;
    displays.push_back(c * (v(2) - v(1) * v(1)) * q(1, 2));
    if (max >= 3) {
        displays.push_back(c * (v(3) - v(1) * v(2) * q(2) + v(1) * v(1) * v(1)) * q(2));
    }
    if (max >= 4) {
        displays.push_back(c * (v(4) * q(5) - v(1) * v(3) * q(10) - v(2) * v(2) * q(6) +
                                v(1) * v(1) * v(2) * q(17) - v(1) * v(1) * v(1) * v(1) * q(6)));
    }
    for (std::size_t i = 0; i < displays.size(); ++i) {
        auto diff = t.P[i + 2] - displays[i];
        r.checks.push_back(exact_check(key("display/P%ld", static_cast<long>(i + 2)), diff.size(),
                                       t.P[i + 2].to_string(t.names())));
    }
    for (std::size_t k = 1; k <= max; ++k) {
        for (std::size_t j = 1; j <= max; ++j) {
            auto res = neretin_recurrence_check(t, k, j);
            r.checks.push_back(
                exact_check(key("recurrence/k=%ld,j=%ld", static_cast<long>(k), static_cast<long>(j)), res.size()));
        }
    }
    return r;
}

SuiteReport cocycle_suite(const SuiteOptions& options) {
    const std::size_t degree = options.n.value_or(8);
    const std::size_t count = options.count.value_or(100);
    if (degree < 1) {
        throw std::invalid_argument("cocycle suite: degree must be at least 1");
    }
    SuiteReport r{"cocycle", {}};
    using F = TrigVectorField;
    auto sin_term = [](long k, const mpq_class& s) {
        return k >= 0 ? F::sin_mode(static_cast<std::size_t>(k), s) : F::sin_mode(static_cast<std::size_t>(-k), -s);
    };
    auto cos_term = [](long k, const mpq_class& s) {
        std::size_t kk = static_cast<std::size_t>(k < 0 ? -k : k);
        return kk == 0 ? F::constant(s) : F::cos_mode(kk, s);
    };
    std::size_t bad = 0;
    for (long n = 1; n <= static_cast<long>(degree); ++n) {
        for (long m = 1; m <= static_cast<long>(degree); ++m) {
            auto un = static_cast<std::size_t>(n);
            auto um = static_cast<std::size_t>(m);
            bad += trig_bracket(F::cos_mode(un), F::cos_mode(um)) ==
                           sin_term(n + m, rational(n - m, 2)) + sin_term(n - m, rational(n + m, 2))
                       ? 0
                       : 1;
            bad += trig_bracket(F::sin_mode(un), F::sin_mode(um)) ==
                           sin_term(n + m, rational(m - n, 2)) + sin_term(n - m, rational(n + m, 2))
                       ? 0
                       : 1;
            bad += trig_bracket(F::sin_mode(un), F::cos_mode(um)) ==
                           cos_term(n + m, rational(m - n, 2)) - cos_term(n - m, rational(n + m, 2))
                       ? 0
                       : 1;
        }
    }
    r.checks.push_back(exact_check("trig-relations", bad));

    std::mt19937_64 rng(case_seed(options.seed, 0));
    std::uniform_int_distribution<std::size_t> deg(1, degree);
    std::size_t jacobi = 0, gf = 0, alt = 0, antisym = 0;
    for (std::size_t t = 0; t < count; ++t) {
        auto a = random_field(rng, deg(rng), false);
        auto b = random_field(rng, deg(rng), false);
        auto c = random_field(rng, deg(rng), false);
        auto bc = trig_bracket(b, c);
        auto ca = trig_bracket(c, a);
        auto ab = trig_bracket(a, b);
        jacobi += (trig_bracket(a, bc) + trig_bracket(b, ca) + trig_bracket(c, ab)).is_zero() ? 0 : 1;
        gf += sgn(gelfand_fuchs(a, bc) + gelfand_fuchs(b, ca) + gelfand_fuchs(c, ab)) == 0 ? 0 : 1;
        alt += sgn(cocycle_alt(a, bc) + cocycle_alt(b, ca) + cocycle_alt(c, ab)) == 0 ? 0 : 1;
        antisym += gelfand_fuchs(a, b) == -gelfand_fuchs(b, a) && cocycle_alt(a, b) == -cocycle_alt(b, a) ? 0 : 1;
    }
    std::string triples = std::to_string(count) + " random triples";
    r.checks.push_back(exact_check("jacobi", jacobi, triples));
    r.checks.push_back(exact_check("cocycle-identity/gelfand-fuchs", gf, triples));
    r.checks.push_back(exact_check("cocycle-identity/alt", alt, triples));
    r.checks.push_back(exact_check("antisymmetry", antisym, triples));

    std::size_t cube = 0, alt_value = 0;
    for (long n = 1; n <= 10; ++n) {
        auto un = static_cast<std::size_t>(n);
        cube += gelfand_fuchs(F::cos_mode(un), F::sin_mode(un)) == rational(n * n * n) ? 0 : 1;
        alt_value += cocycle_alt(F::cos_mode(un), F::sin_mode(un)) == rational(-(n * n * n - n), 4) ? 0 : 1;
    }
    r.checks.push_back(exact_check("gelfand-fuchs/cos-sin=n^3", cube, "n <= 10"));
    r.checks.push_back(exact_check("alt/cos-sin=-(n^3-n)/4", alt_value, "n <= 10"));

    std::size_t jj = 0;
    for (std::size_t t = 0; t < count; ++t) {
        auto f = random_field(rng, deg(rng), true);
        jj += complex_structure_J(complex_structure_J(f)) == -f ? 0 : 1;
    }
    r.checks.push_back(exact_check("J^2=-id", jj, std::to_string(count) + " random fields"));
    return r;
}

SuiteReport geodesic_suite(const SuiteOptions& options) {
    SuiteReport r{"geodesic", {}};
    auto cases = geodesic_cases(options.count.value_or(20), options.seed);
    auto results = geodesic_batch(cases, options.t_end.value_or(5.0), options.steps.value_or(20000));
    for (const auto& res : results) {
        long i = static_cast<long>(res.index);
        auto value = [&](double v) { return res.failed ? INFINITY : v; };
        r.checks.push_back(bound_check(key("energy/case-%03ld", i), value(res.energy_drift), 1e-8));
        r.checks.push_back(bound_check(key("horizontality/case-%03ld", i), value(res.horizontality), 1e-6));
        r.checks.push_back(bound_check(key("closed-form/case-%03ld", i), value(res.closed_form_gap), 1e-6));
        r.checks.push_back(bound_check(key("euler-lagrange/case-%03ld", i), value(res.euler_lagrange), 1e-5));
    }
    return r;
}

}  // namespace coeffbody
