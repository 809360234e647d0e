#include "coeffbody/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"

#include "coeffbody/batch.hpp"
#include "coeffbody/forms.hpp"
#include "coeffbody/geodesics.hpp"
#include "coeffbody/io.hpp"
#include "coeffbody/kirillov.hpp"
#include "coeffbody/loewner.hpp"
#include "coeffbody/suites.hpp"
#include "coeffbody/virasoro.hpp"

namespace coeffbody {

namespace {

struct InvalidInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::string format;
    std::string output;
};

void add_common(CLI::App* cmd, Common& common, const std::string& default_format) {
    common.format = default_format;
    cmd->add_option("--format", common.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", common.output, "Output file (default: standard output)");
}

// Writes to the --output file or to `out`.
void emit(const Common& common, std::ostream& out, const std::function<void(std::ostream&)>& body) {
    if (common.output.empty()) {
        body(out);
        return;
    }
    std::ofstream file(common.output, std::ios::binary);
    if (!file) {
        throw InvalidInput("cannot open output file '" + common.output + "'");
    }
    body(file);
}

DrivingFunction driving_from_preset(const std::string& preset, std::size_t n) {
    if (preset == "identity") {
        return DrivingFunction::identity(n);
    }
    if (preset == "starlike") {
        return DrivingFunction::starlike(n);
    }
    const std::string prefix = "constant:";
    if (preset.rfind(prefix, 0) == 0) {
        CVector p;
        try {
            p = parse_complex_list(preset.substr(prefix.size()));
        } catch (const std::invalid_argument& e) {
            throw InvalidInput(std::string("invalid constant driving: ") + e.what());
        }
        return DrivingFunction::constant(n, p);
    }
    throw InvalidInput("unknown preset '" + preset + "' (expected identity, starlike or constant:<p1,p2,...>)");
}

void require_caratheodory(std::span<const cd> p, double t) {
    auto radii = default_radius_grid();
    auto angles = uniform_angle_grid();
    auto report = caratheodory_check(p, radii, angles);
    if (!report.positive) {
        std::ostringstream os;
        os << "driving is not in the Caratheodory class at t=" << t << ": Re p = " << report.min_real << " at z = "
           << report.argmin.real() << (report.argmin.imag() < 0 ? "" : "+") << report.argmin.imag() << "i";
        throw InvalidInput(os.str());
    }
}

int cmd_loewner(const std::string& preset, const std::string& table, std::size_t n, double t_end, std::size_t steps,
                const Common& common, std::ostream& out, std::ostream& err) {
    if (preset.empty() == table.empty()) {
        throw InvalidInput("give exactly one of --preset or --table");
    }
    if (n < 1 || steps < 1 || !(t_end > 0.0)) {
        throw InvalidInput("need n >= 1, steps >= 1 and t-end > 0");
    }
    std::optional<DrivingFunction> driving;
    if (!preset.empty()) {
        driving = driving_from_preset(preset, n);
        require_caratheodory((*driving)(0.0), 0.0);
    } else {
        std::ifstream file(table);
        if (!file) {
            throw InvalidInput("cannot open driving table '" + table + "'");
        }
        DrivingTable rows;
        try {
            rows = read_driving_rows(file, n);
        } catch (const std::invalid_argument& e) {
            throw InvalidInput(e.what());
        }
        for (std::size_t i = 0; i < rows.times.size(); ++i) {
            require_caratheodory(rows.values[i], rows.times[i]);
        }
        try {
            driving = DrivingFunction::piecewise_constant(n, rows.times, rows.values);
        } catch (const std::invalid_argument& e) {
            throw InvalidInput(e.what());
        }
    }
    IntegrationOptions opts;
    opts.t_end = t_end;
    opts.steps = steps;
    CoefficientPath path;
    try {
        path = integrate_trajectory(*driving, opts);
    } catch (const IntegrationError& e) {
        err << "integration failed: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
    if (auto v = debranges_violation(path)) {
        err << "sample " << v->sample << " violates |c_" << v->index << "| < " << v->index + 1 << ": " << v->modulus
            << '\n';
        return kExitNumericalFailure;
    }
    emit(common, out, [&](std::ostream& os) {
        if (parse_format(common.format) == OutputFormat::csv) {
            write_trajectory_csv(os, path);
        } else {
            os << trajectory_json(path).dump() << '\n';
        }
    });
    return kExitPass;
}

void write_report(const SuiteReport& report, const Common& common, std::ostream& out) {
    emit(common, out, [&](std::ostream& os) {
        if (parse_format(common.format) == OutputFormat::json) {
            os << report.to_json().dump(2) << '\n';
            return;
        }
        os << "name,pass,residual\n";
        for (const auto& c : report.checks) {
            os << c.name << ',' << (c.pass ? "true" : "false") << ',' << c.residual << '\n';
        }
    });
}

int cmd_verify(const std::string& suite, const SuiteOptions& options, const Common& common, std::ostream& out,
               std::ostream& err) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end()) {
        throw InvalidInput("unknown suite '" + suite + "'");
    }
    SuiteReport report;
    try {
        report = run_suite(suite, options);
    } catch (const std::invalid_argument& e) {
        throw InvalidInput(e.what());
    }
    write_report(report, common, out);
    std::size_t failed = std::count_if(report.checks.begin(), report.checks.end(), [](auto& c) { return !c.pass; });
    err << suite << ": " << report.checks.size() - failed << "/" << report.checks.size() << " checks pass\n";
    return report.pass() ? kExitPass : kExitIdentityFailure;
}

int cmd_geodesic(const std::string& xi_text, std::size_t n, std::uint64_t seed, double t_end, std::size_t steps,
                 bool compare, const Common& common, std::ostream& out, std::ostream& err) {
    if (steps < 1 || !(t_end > 0.0)) {
        throw InvalidInput("need steps >= 1 and t-end > 0");
    }
    CVector xi;
    if (!xi_text.empty()) {
        try {
            xi = parse_complex_list(xi_text);
        } catch (const std::invalid_argument& e) {
            throw InvalidInput(std::string("invalid --xi: ") + e.what());
        }
    } else {
        std::mt19937_64 rng(case_seed(seed, 0));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (std::size_t k = 0; k < n; ++k) {
            double re = u(rng);
            xi.emplace_back(re, u(rng));
        }
    }
    if (xi.size() < 2) {
        throw InvalidInput("geodesics need n >= 2");
    }
    if (compare && xi.size() != 3) {
        throw InvalidInput("--compare-closed-form needs n = 3");
    }
    if (compare && xi[2] == cd{}) {
        throw InvalidInput("--compare-closed-form needs xi_3 != 0");
    }
    GeodesicPath path;
    try {
        path = integrate_geodesic(GeodesicState{{}, xi}, t_end, steps);
    } catch (const IntegrationError& e) {
        err << "integration failed: " << e.what() << '\n';
        return kExitNumericalFailure;
    }
    double drift = energy_drift(path);
    std::optional<ClosedFormColumns> closed;
    double gap = 0.0;
    if (compare) {
        auto exact = ClosedFormGeodesic3(xi[2], xi[0], xi[1]).sample(t_end, steps);
        ClosedFormColumns cols;
        for (std::size_t i = 0; i < exact.size(); ++i) {
            double g = 0.0;
            for (std::size_t k = 0; k < 3; ++k) {
                g = std::max(g, std::abs(exact.states[i][k] - path.c[i][k]));
            }
            gap = std::max(gap, g);
            cols.c.push_back(exact.states[i]);
            cols.gap.push_back(g);
        }
        closed = std::move(cols);
    }
    emit(common, out, [&](std::ostream& os) {
        if (parse_format(common.format) == OutputFormat::csv) {
            write_geodesic_csv(os, path, closed);
        } else {
            os << geodesic_json(path, closed).dump() << '\n';
        }
    });
    err << "energy drift " << drift;
    if (compare) {
        err << ", closed-form gap " << gap;
    }
    err << '\n';
    if (drift > 1e-8 || gap > 1e-6) {
        return kExitNumericalFailure;
    }
    return kExitPass;
}

int cmd_bracket_table(std::size_t n, const Common& common, std::ostream& out) {
    if (n < 1) {
        throw InvalidInput("need n >= 1");
    }
    auto table = bracket_table(n);
    bool all = true;
    emit(common, out, [&](std::ostream& os) {
        if (parse_format(common.format) == OutputFormat::json) {
            auto entries = nlohmann::ordered_json::array();
            for (const auto& e : table) {
                entries.push_back({{"j", e.j}, {"k", e.k}, {"result", e.expected}, {"exact_match", e.exact_match}});
            }
            os << entries.dump(2) << '\n';
        } else {
            os << "j,k,result,exact_match\n";
            for (const auto& e : table) {
                os << e.j << ',' << e.k << ',' << e.expected << ',' << (e.exact_match ? "true" : "false") << '\n';
            }
        }
    });
    for (const auto& e : table) {
        all = all && e.exact_match;
    }
    return all ? kExitPass : kExitIdentityFailure;
}

int cmd_contact_check(const Common& common, std::ostream& out) {
    auto eta = eta_forms(3)[0];
    auto deta = exterior_derivative(eta);
    auto contact = wedge(eta, deta);
    PolyForm volume(3, 3);
    volume.add_term({1, 2, 3}, MultiPoly::constant(3, 1));
    bool pass = contact == volume;
    emit(common, out, [&](std::ostream& os) {
        if (parse_format(common.format) == OutputFormat::json) {
            nlohmann::ordered_json j{{"eta3", eta.to_string()},
                             {"deta3", deta.to_string()},
                             {"eta3^deta3", contact.to_string()},
                             {"expected", volume.to_string()},
                             {"pass", pass}};
            os << j.dump(2) << '\n';
        } else {
            os << "item,value\n";
            os << "eta3," << eta.to_string() << '\n';
            os << "deta3," << deta.to_string() << '\n';
            os << "eta3^deta3," << contact.to_string() << '\n';
            os << "pass," << (pass ? "true" : "false") << '\n';
        }
    });
    return pass ? kExitPass : kExitIdentityFailure;
}

int cmd_neretin(std::size_t max, const Common& common, std::ostream& out) {
    if (max < 2) {
        throw InvalidInput("need --max >= 2");
    }
    auto table = neretin_polynomials(max);
    auto names = table.names();
    emit(common, out, [&](std::ostream& os) {
        if (parse_format(common.format) == OutputFormat::json) {
            nlohmann::ordered_json j;
            j["max"] = max;
            j["variables"] = names;
            auto polys = nlohmann::ordered_json::array();
            for (std::size_t n = 2; n <= max; ++n) {
                polys.push_back({{"n", n}, {"text", table.P[n].to_string(names)},
                                 {"terms", polynomial_json(table.P[n], names)}});
            }
            j["P"] = std::move(polys);
            os << j.dump(2) << '\n';
        } else {
            os << "n,coefficient,monomial\n";
            for (std::size_t n = 2; n <= max; ++n) {
                for (const auto& term : polynomial_json(table.P[n], names)) {
                    os << n << ',' << term["coefficient"].get<std::string>() << ','
                       << term["monomial"].get<std::string>() << '\n';
                }
            }
        }
    });
    return kExitPass;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coefficient bodies of univalent functions: Loewner dynamics, Kirillov fields, geodesics"};
    app.name("coeffbody");
    app.require_subcommand(1);

    // loewner
    Common loewner_common;
    std::string preset, table;
    std::size_t n = 3;
    double t_end = 1.0;
    std::size_t steps = 1000;
    auto* loewner = app.add_subcommand("loewner", "Integrate the Loewner-Kufarev coefficient system");
    loewner->add_option("--preset", preset, "identity, starlike or constant:<p1,p2,...>");
    loewner->add_option("--table", table, "Driving table CSV (t,re_p1,im_p1,...)");
    loewner->add_option("--n", n, "Number of coefficients")->capture_default_str();
    loewner->add_option("--t-end", t_end, "Final time")->capture_default_str();
    loewner->add_option("--steps", steps, "RK4 steps")->capture_default_str();
    add_common(loewner, loewner_common, "csv");

    // verify
    Common verify_common;
    std::string suite;
    std::optional<std::size_t> v_n, v_max, v_count, v_steps;
    std::optional<double> v_t_end;
    std::uint64_t seed = 0;
    auto* verify = app.add_subcommand("verify", "Run an identity suite and report residuals");
    verify->add_option("suite", suite, "integrals, brackets, forms, contact, neretin, cocycle or geodesic")
        ->required();
    verify->add_option("--n", v_n, "Dimension (or trig degree for cocycle)");
    verify->add_option("--max", v_max, "Largest Neretin index");
    verify->add_option("--count", v_count, "Number of random cases");
    verify->add_option("--t-end", v_t_end, "Final time");
    verify->add_option("--steps", v_steps, "RK4 steps");
    verify->add_option("--seed", seed, "Random seed")->capture_default_str();
    add_common(verify, verify_common, "json");

    // geodesic
    Common geo_common;
    std::string xi_text;
    std::size_t geo_n = 3;
    double geo_t_end = 5.0;
    std::size_t geo_steps = 5000;
    std::uint64_t geo_seed = 0;
    bool compare = false;
    auto* geodesic = app.add_subcommand("geodesic", "Integrate a sub-Riemannian geodesic from c = 0");
    geodesic->add_option("--xi", xi_text, "Initial covector xi_1,...,xi_n (entries a, a+bi, bi)");
    geodesic->add_option("--n", geo_n, "Dimension when xi is drawn at random")->capture_default_str();
    geodesic->add_option("--seed", geo_seed, "Seed for a random xi")->capture_default_str();
    geodesic->add_option("--t-end", geo_t_end, "Final time")->capture_default_str();
    geodesic->add_option("--steps", geo_steps, "RK4 steps")->capture_default_str();
    geodesic->add_flag("--compare-closed-form", compare, "Also evaluate the explicit M_3 solution");
    add_common(geodesic, geo_common, "csv");

    // bracket-table
    Common bt_common;
    std::size_t bt_n = 8;
    auto* bt = app.add_subcommand("bracket-table", "Commutator table of the Kirillov fields L_1..L_n");
    bt->add_option("--n", bt_n, "Dimension")->capture_default_str();
    add_common(bt, bt_common, "json");

    // contact-check
    Common cc_common;
    auto* cc = app.add_subcommand("contact-check", "Expand eta_3, d eta_3 and their wedge");
    add_common(cc, cc_common, "json");

    // neretin
    Common ner_common;
    std::size_t ner_max = 6;
    auto* ner = app.add_subcommand("neretin", "Neretin polynomials P_2..P_max with symbolic charge c");
    ner->add_option("--max", ner_max, "Largest index")->capture_default_str();
    add_common(ner, ner_common, "json");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e, out, err);
        }
        err << e.what() << '\n';
        return kExitInvalidInput;
    }

    try {
        if (*loewner) {
            return cmd_loewner(preset, table, n, t_end, steps, loewner_common, out, err);
        }
        if (*verify) {
            SuiteOptions options{v_n, v_max, v_count, v_t_end, v_steps, seed};
            return cmd_verify(suite, options, verify_common, out, err);
        }
        if (*geodesic) {
            return cmd_geodesic(xi_text, geo_n, geo_seed, geo_t_end, geo_steps, compare, geo_common, out, err);
        }
        if (*bt) {
            return cmd_bracket_table(bt_n, bt_common, out);
        }
        if (*cc) {
            return cmd_contact_check(cc_common, out);
        }
        if (*ner) {
            return cmd_neretin(ner_max, ner_common, out);
        }
    } catch (const InvalidInput& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const IntegrationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumericalFailure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitInvalidInput;
}

}  // namespace coeffbody
