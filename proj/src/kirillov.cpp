#include "coeffbody/kirillov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "coeffbody/batch.hpp"

namespace coeffbody {

PolyVectorField PolyVectorField::zero(std::size_t n) {
    return {n, std::vector<MultiPoly>(n, MultiPoly(n))};
}

PolyVectorField& PolyVectorField::operator+=(const PolyVectorField& o) {
    if (n != o.n) {
        throw std::invalid_argument("PolyVectorField: dimension mismatch");
    }
    for (std::size_t m = 0; m < n; ++m) {
        components[m] += o.components[m];
    }
    return *this;
}

PolyVectorField operator*(PolyVectorField a, const QComplex& s) {
    for (auto& comp : a.components) {
        comp *= s;
    }
    return a;
}

bool PolyVectorField::is_zero() const {
    return std::all_of(components.begin(), components.end(), [](const MultiPoly& p) { return p.is_zero(); });
}

MultiPoly PolyVectorField::apply(const MultiPoly& f) const {
    if (f.nvars() < n) {
        throw std::invalid_argument("PolyVectorField::apply: polynomial has fewer variables than the field");
    }
    MultiPoly out(f.nvars());
    for (std::size_t m = 0; m < n; ++m) {
        if (components[m].is_zero()) {
            continue;
        }
        auto df = f.derivative(m);
        if (df.is_zero()) {
            continue;
        }
        out += components[m].extended(f.nvars()) * df;
    }
    return out;
}

std::vector<QComplex> PolyVectorField::at(std::span<const QComplex> point) const {
    if (point.size() != n) {
        throw std::invalid_argument("PolyVectorField::at: dimension mismatch");
    }
    std::vector<QComplex> out;
    out.reserve(n);
    for (const auto& comp : components) {
        out.push_back(comp.evaluate(point));
    }
    return out;
}

std::string PolyVectorField::to_string() const {
    auto names = coefficient_names(n);
    std::ostringstream os;
    bool first = true;
    for (std::size_t m = 0; m < n; ++m) {
        if (components[m].is_zero()) {
            continue;
        }
        if (!first) {
            os << " + ";
        }
        os << "(" << components[m].to_string(names) << ")d" << (m + 1);
        first = false;
    }
    return first ? "0" : os.str();
}

PolyVectorField kirillov_field(std::size_t j, std::size_t n) {
    if (j < 1 || j > n) {
        throw std::out_of_range("kirillov_field: index out of range");
    }
    auto field = PolyVectorField::zero(n);
    field.components[j - 1] = MultiPoly::constant(n, 1);
    for (std::size_t k = 1; j + k <= n; ++k) {
        field.components[j + k - 1] = MultiPoly::variable(n, k - 1) * QComplex(static_cast<long>(k + 1));
    }
    return field;
}

PolyVectorField lie_bracket(const PolyVectorField& x, const PolyVectorField& y) {
    if (x.n != y.n) {
        throw std::invalid_argument("lie_bracket: dimension mismatch");
    }
    auto out = PolyVectorField::zero(x.n);
    for (std::size_t m = 0; m < x.n; ++m) {
        out.components[m] = x.apply(y.components[m]) - y.apply(x.components[m]);
    }
    return out;
}

std::vector<BracketEntry> bracket_table(std::size_t n) {
    std::vector<PolyVectorField> fields;
    for (std::size_t j = 1; j <= n; ++j) {
        fields.push_back(kirillov_field(j, n));
    }
    std::vector<BracketEntry> table;
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t k = 1; k <= n; ++k) {
            BracketEntry e;
            e.j = j;
            e.k = k;
            auto got = lie_bracket(fields[j - 1], fields[k - 1]);
            const long expected_coeff = static_cast<long>(j) - static_cast<long>(k);
            if (!got.is_zero() && j + k <= n) {
                // Component j+k of L_{j+k} is 1, so it carries the multiple.
                QComplex lead = got.components[j + k - 1].constant_term();
                if (lead.is_real() && lead.re.get_den() == 1 && lead.re.get_num().fits_slong_p()) {
                    e.coefficient = lead.re.get_num().get_si();
                }
            }
            if (j + k <= n && expected_coeff != 0) {
                e.expected = "(" + std::to_string(j) + "-" + std::to_string(k) + ")L_" + std::to_string(j + k);
                e.exact_match = got == fields[j + k - 1] * QComplex(expected_coeff);
            } else {
                e.expected = "0";
                e.exact_match = got.is_zero();
            }
            table.push_back(std::move(e));
        }
    }
    return table;
}

namespace {

std::size_t exact_rank(std::vector<std::vector<QComplex>> rows) {
    if (rows.empty()) {
        return 0;
    }
    const std::size_t cols = rows.front().size();
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
        std::size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot][col].is_zero()) {
            ++pivot;
        }
        if (pivot == rows.size()) {
            continue;
        }
        std::swap(rows[rank], rows[pivot]);
        for (std::size_t r = rank + 1; r < rows.size(); ++r) {
            if (rows[r][col].is_zero()) {
                continue;
            }
            QComplex factor = rows[r][col] / rows[rank][col];
            for (std::size_t c = col; c < cols; ++c) {
                rows[r][c] -= factor * rows[rank][c];
            }
        }
        ++rank;
    }
    return rank;
}

void require_grading_dimension(std::size_t n, const char* where) {
    if (n < 2) {
        throw std::invalid_argument(std::string(where) + ": n must be at least 2");
    }
}

// Index of the lowest coordinate with a nonzero constant term, if the field is
// some L_j plus higher-order terms at the origin.
std::optional<std::size_t> leading_index(const PolyVectorField& f) {
    for (std::size_t m = 0; m < f.n; ++m) {
        if (!f.components[m].constant_term().is_zero()) {
            return m + 1;
        }
    }
    return std::nullopt;
}

}  // namespace

std::size_t bracket_generated_rank(std::size_t n) {
    if (n == 0) {
        return 0;
    }
    std::vector<PolyVectorField> generators{kirillov_field(1, n)};
    if (n >= 2) {
        generators.push_back(kirillov_field(2, n));
    }
    std::vector<PolyVectorField> all = generators;
    std::vector<PolyVectorField> frontier = generators;
    for (std::size_t depth = 1; depth < n && !frontier.empty(); ++depth) {
        std::vector<PolyVectorField> next;
        for (const auto& g : generators) {
            for (const auto& f : frontier) {
                auto b = lie_bracket(g, f);
                if (!b.is_zero() && std::find(all.begin(), all.end(), b) == all.end()) {
                    next.push_back(b);
                    all.push_back(b);
                }
            }
        }
        frontier = std::move(next);
    }
    std::vector<QComplex> origin(n);
    std::vector<std::vector<QComplex>> rows;
    for (const auto& f : all) {
        rows.push_back(f.at(origin));
    }
    return exact_rank(std::move(rows));
}

Grading grading(std::size_t n) {
    require_grading_dimension(n, "grading");
    Grading g{n, {{1, 2}}};
    if (n >= 3) {
        g.layers.push_back({3});
    }
    for (std::size_t k = 2; 2 * k <= n; ++k) {
        std::vector<std::size_t> layer{2 * k};
        if (2 * k + 1 <= n) {
            layer.push_back(2 * k + 1);
        }
        g.layers.push_back(std::move(layer));
    }
    return g;
}

Grading grading_from_brackets(std::size_t n) {
    require_grading_dimension(n, "grading_from_brackets");
    std::vector<PolyVectorField> fields;
    for (std::size_t j = 1; j <= n; ++j) {
        fields.push_back(kirillov_field(j, n));
    }
    Grading g{n, {{1, 2}}};
    std::set<std::size_t> seen{1, 2};
    while (seen.size() < n) {
        std::set<std::size_t> layer;
        for (std::size_t d : g.layers.front()) {
            for (std::size_t prev : g.layers.back()) {
                auto b = lie_bracket(fields[d - 1], fields[prev - 1]);
                auto lead = leading_index(b);
                if (lead && !seen.contains(*lead)) {
                    layer.insert(*lead);
                }
            }
        }
        if (layer.empty()) {
            throw std::logic_error("grading_from_brackets: brackets stopped generating new directions");
        }
        seen.insert(layer.begin(), layer.end());
        g.layers.emplace_back(layer.begin(), layer.end());
    }
    return g;
}

mpq_class hausdorff_dimension(std::size_t n) {
    auto g = grading(n);
    mpq_class total = 0;
    for (std::size_t k = 0; k < g.layers.size(); ++k) {
        // D carries weight 1, D_k weight k+1.
        long weight = k == 0 ? 1 : static_cast<long>(k + 1);
        total += mpq_class(weight * static_cast<long>(g.layers[k].size()));
    }
    return total;
}

mpq_class hausdorff_dimension_closed_form(std::size_t n) {
    require_grading_dimension(n, "hausdorff_dimension_closed_form");
    mpq_class half(static_cast<long>(n), 2);
    mpq_class base = half + 1;
    mpq_class shift = n % 2 == 1 ? mpq_class(9, 4) : mpq_class(2);
    mpq_class out = base * base - shift;
    out.canonicalize();
    return out;
}

cd schiffer_variation_at(const Series& f, const std::function<cd(cd)>& nu, cd z, double radius,
                         std::size_t quad_points) {
    if (!(radius > 0.0 && radius < 1.0)) {
        throw std::invalid_argument("goluzin_schiffer: radius must lie in (0, 1)");
    }
    if (!(std::abs(z) < radius)) {
        throw std::invalid_argument("goluzin_schiffer: sample point must lie inside the contour");
    }
    if (quad_points < 2) {
        throw std::invalid_argument("goluzin_schiffer: need at least two quadrature points");
    }
    const auto df = f.derivative();
    const cd fz = f.evaluate(z);
    cd acc = 0.0;
    for (std::size_t q = 0; q < quad_points; ++q) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(q) / static_cast<double>(quad_points);
        cd w = std::polar(radius, theta);
        cd fw = f.evaluate(w);
        cd ratio = w * df.evaluate(w) / fw;
        // dw / (2 pi i) = w dtheta / (2 pi)
        acc += ratio * ratio * nu(w) / (w * (fw - fz)) * w;
    }
    return fz * fz * acc / static_cast<double>(quad_points);
}

namespace {

Series variation_series(const Series& f, std::size_t k, double radius, std::size_t quad_points, bool parallel) {
    if (!(radius > 0.0 && radius < 1.0)) {
        throw std::invalid_argument("goluzin_schiffer: radius must lie in (0, 1)");
    }
    if (k < 1) {
        throw std::invalid_argument("goluzin_schiffer: k must be positive");
    }
    const std::size_t out_order = f.order() + k;
    const std::size_t samples = std::max<std::size_t>(16, 2 * (out_order + 1));
    const double rho = radius / 2.0;
    const auto kk = static_cast<int>(k);
    std::function<cd(cd)> nu = [kk](cd w) { return cd(0.0, -1.0) * std::pow(w, kk); };

    std::vector<cd> values(samples);
    const auto count = static_cast<std::ptrdiff_t>(samples);
    auto eval = [&](std::ptrdiff_t m) {
        double theta = 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(samples);
        values[static_cast<std::size_t>(m)] = schiffer_variation_at(f, nu, std::polar(rho, theta), radius, quad_points);
    };
    if (parallel) {
#pragma omp parallel for schedule(static) num_threads(thread_cap())
        for (std::ptrdiff_t m = 0; m < count; ++m) {
            eval(m);
        }
    } else {
        for (std::ptrdiff_t m = 0; m < count; ++m) {
            eval(m);
        }
    }

    // The raw variation is -i z^{k+1} f'; rotate by i.
    auto out = Series::zero(out_order);
    for (std::size_t j = 0; j <= out_order; ++j) {
        cd acc = 0.0;
        for (std::size_t m = 0; m < samples; ++m) {
            double theta = 2.0 * std::numbers::pi * static_cast<double>(m * j % samples) / static_cast<double>(samples);
            acc += values[m] * std::polar(1.0, -theta);
        }
        out[j] = cd(0.0, 1.0) * acc / (static_cast<double>(samples) * std::pow(rho, static_cast<double>(j)));
    }
    return out;
}

VariationResult variation_with_residual(const Series& f, std::size_t k, double radius, std::size_t quad_points,
                                        bool parallel) {
    if (quad_points < 4) {
        throw std::invalid_argument("goluzin_schiffer: need at least four quadrature points");
    }
    VariationResult result{variation_series(f, k, radius, quad_points, parallel)};
    auto coarse = variation_series(f, k, radius, quad_points / 2, parallel);
    for (std::size_t j = 0; j <= result.series.order(); ++j) {
        result.residual = std::max(result.residual, std::abs(result.series[j] - coarse[j]));
    }
    return result;
}

}  // namespace

VariationResult goluzin_schiffer_variation(const Series& f, std::size_t k, double radius, std::size_t quad_points) {
    return variation_with_residual(f, k, radius, quad_points, true);
}

VariationResult goluzin_schiffer_variation_serial(const Series& f, std::size_t k, double radius,
                                                  std::size_t quad_points) {
    return variation_with_residual(f, k, radius, quad_points, false);
}

}  // namespace coeffbody
