#include "coeffbody/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace coeffbody {

namespace {

std::string trim(const std::string& s) {
    auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return {};
    }
    auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(s);
    while (std::getline(is, item, sep)) {
        out.push_back(trim(item));
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    if (!s.empty() && s.front() == '+') {
        ++first;
    }
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last) {
        throw std::invalid_argument("not a number: '" + s + "'");
    }
    return v;
}

// Shortest representation that round-trips.
std::string fmt(double v) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

void write_c_header(std::ostream& os, const char* prefix, std::size_t n) {
    for (std::size_t k = 1; k <= n; ++k) {
        os << ",re_" << prefix << k << ",im_" << prefix << k;
    }
}

void write_c_row(std::ostream& os, const CVector& v) {
    for (cd z : v) {
        os << ',' << fmt(z.real()) << ',' << fmt(z.imag());
    }
}

nlohmann::ordered_json pairs(const CVector& v) {
    auto out = nlohmann::ordered_json::array();
    for (cd z : v) {
        out.push_back({z.real(), z.imag()});
    }
    return out;
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
    if (text == "csv") {
        return OutputFormat::csv;
    }
    if (text == "json") {
        return OutputFormat::json;
    }
    throw std::invalid_argument("unknown format '" + text + "' (expected csv or json)");
}

cd parse_complex(const std::string& raw) {
    std::string s = trim(raw);
    if (s.empty()) {
        throw std::invalid_argument("empty complex number");
    }
    if (s.back() != 'i') {
        return {parse_double(s), 0.0};
    }
    std::string body = s.substr(0, s.size() - 1);
    // Split at the last sign that is not an exponent sign or the leading sign.
    std::size_t cut = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    auto imag_part = [](const std::string& t) {
        if (t.empty() || t == "+") {
            return 1.0;
        }
        if (t == "-") {
            return -1.0;
        }
        return parse_double(t);
    };
    if (cut == std::string::npos) {
        return {0.0, imag_part(body)};
    }
    return {parse_double(body.substr(0, cut)), imag_part(body.substr(cut))};
}

CVector parse_complex_list(const std::string& text) {
    CVector out;
    for (const auto& item : split(text, ',')) {
        out.push_back(parse_complex(item));
    }
    return out;
}

void write_trajectory_csv(std::ostream& os, const CoefficientPath& path) {
    os << 't';
    write_c_header(os, "c", path.n());
    os << '\n';
    for (std::size_t i = 0; i < path.size(); ++i) {
        os << fmt(path.times[i]);
        write_c_row(os, path.states[i]);
        os << '\n';
    }
}

nlohmann::ordered_json trajectory_json(const CoefficientPath& path) {
    nlohmann::ordered_json out;
    out["n"] = path.n();
    auto samples = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < path.size(); ++i) {
        samples.push_back({{"t", path.times[i]}, {"c", pairs(path.states[i])}});
    }
    out["samples"] = std::move(samples);
    return out;
}

void write_geodesic_csv(std::ostream& os, const GeodesicPath& path, const std::optional<ClosedFormColumns>& closed) {
    const std::size_t n = path.n();
    os << 't';
    write_c_header(os, "c", n);
    write_c_header(os, "xi", n);
    os << ",H";
    if (closed) {
        write_c_header(os, "cf", closed->c.empty() ? 0 : closed->c.front().size());
        os << ",gap";
    }
    os << '\n';
    for (std::size_t i = 0; i < path.size(); ++i) {
        os << fmt(path.times[i]);
        write_c_row(os, path.c[i]);
        write_c_row(os, path.xi[i]);
        os << ',' << fmt(path.energy[i]);
        if (closed) {
            write_c_row(os, closed->c.at(i));
            os << ',' << fmt(closed->gap.at(i));
        }
        os << '\n';
    }
}

nlohmann::ordered_json geodesic_json(const GeodesicPath& path, const std::optional<ClosedFormColumns>& closed) {
    nlohmann::ordered_json out;
    out["n"] = path.n();
    auto samples = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < path.size(); ++i) {
        nlohmann::ordered_json s{{"t", path.times[i]}, {"c", pairs(path.c[i])}, {"xi", pairs(path.xi[i])},
                         {"H", path.energy[i]}};
        if (closed) {
            s["cf"] = pairs(closed->c.at(i));
            s["gap"] = closed->gap.at(i);
        }
        samples.push_back(std::move(s));
    }
    out["samples"] = std::move(samples);
    return out;
}

DrivingTable read_driving_rows(std::istream& is, std::size_t n) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::invalid_argument("driving table: empty input");
    }
    auto header = split(trim(line), ',');
    if (header.empty() || header[0] != "t" || header.size() % 2 != 1) {
        throw std::invalid_argument("driving table: header must be t,re_p1,im_p1,...");
    }
    const std::size_t m = (header.size() - 1) / 2;
    for (std::size_t k = 1; k <= m; ++k) {
        if (header[2 * k - 1] != "re_p" + std::to_string(k) || header[2 * k] != "im_p" + std::to_string(k)) {
            throw std::invalid_argument("driving table: unexpected column '" + header[2 * k - 1] + "'");
        }
    }
    std::vector<double> times;
    std::vector<CVector> values;
    std::size_t row = 1;
    while (std::getline(is, line)) {
        ++row;
        if (trim(line).empty()) {
            continue;
        }
        auto cells = split(trim(line), ',');
        if (cells.size() != header.size()) {
            throw std::invalid_argument("driving table: row " + std::to_string(row) + " has " +
                                        std::to_string(cells.size()) + " cells");
        }
        times.push_back(parse_double(cells[0]));
        CVector p(n);
        for (std::size_t k = 1; k <= std::min(m, n); ++k) {
            p[k - 1] = {parse_double(cells[2 * k - 1]), parse_double(cells[2 * k])};
        }
        values.push_back(std::move(p));
    }
    if (times.empty()) {
        throw std::invalid_argument("driving table: no rows");
    }
    return {std::move(times), std::move(values)};
}

DrivingFunction read_driving_table(std::istream& is, std::size_t n) {
    auto rows = read_driving_rows(is, n);
    return DrivingFunction::piecewise_constant(n, std::move(rows.times), std::move(rows.values));
}

nlohmann::ordered_json polynomial_json(const MultiPoly& p, const std::vector<std::string>& names) {
    if (names.size() < p.nvars()) {
        throw std::invalid_argument("polynomial_json: not enough variable names");
    }
    std::vector<std::pair<MultiPoly::Exponent, QComplex>> terms(p.terms().begin(), p.terms().end());
    auto degree = [](const MultiPoly::Exponent& e) {
        unsigned d = 0;
        for (unsigned v : e) d += v;
        return d;
    };
    std::stable_sort(terms.begin(), terms.end(),
                     [&](const auto& x, const auto& y) { return degree(x.first) < degree(y.first); });
    auto out = nlohmann::ordered_json::array();
    for (const auto& [e, c] : terms) {
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!mono.empty()) {
                mono += "*";
            }
            mono += names[i];
            if (e[i] > 1) {
                mono += "^" + std::to_string(e[i]);
            }
        }
        out.push_back({{"coefficient", c.to_string()}, {"monomial", mono.empty() ? "1" : mono}, {"exponents", e}});
    }
    return out;
}

}  // namespace coeffbody
