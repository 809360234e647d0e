#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "coeffbody/geodesics.hpp"
#include "coeffbody/loewner.hpp"
#include "coeffbody/multipoly.hpp"

namespace coeffbody {

enum class OutputFormat { csv, json };

/// "csv" or "json"; throws std::invalid_argument otherwise.
OutputFormat parse_format(const std::string& text);

/// Parses "a", "a+bi", "a-bi", "bi" or "i"; throws std::invalid_argument.
cd parse_complex(const std::string& text);
/// Comma-separated list of parse_complex entries.
CVector parse_complex_list(const std::string& text);

/// Header t,re_c1,im_c1,...,re_cn,im_cn, then one row per sample.
void write_trajectory_csv(std::ostream& os, const CoefficientPath& path);
/// {"n": n, "samples": [{"t": t, "c": [[re, im], ...]}, ...]}
nlohmann::ordered_json trajectory_json(const CoefficientPath& path);

/// Extra closed-form columns for an M_3 comparison run.
struct ClosedFormColumns {
    std::vector<CVector> c;
    std::vector<double> gap;
};

/// Trajectory columns followed by re_xi_k, im_xi_k and H; closed-form
/// columns re_cf_k, im_cf_k, gap are appended when given.
void write_geodesic_csv(std::ostream& os, const GeodesicPath& path,
                        const std::optional<ClosedFormColumns>& closed = std::nullopt);
/// Trajectory schema with "xi" and "H" per sample, plus "cf" and "gap" when given.
nlohmann::ordered_json geodesic_json(const GeodesicPath& path, const std::optional<ClosedFormColumns>& closed = std::nullopt);

struct DrivingTable {
    std::vector<double> times;
    std::vector<CVector> values;
};

/// Rows of a driving table; see read_driving_table.
DrivingTable read_driving_rows(std::istream& is, std::size_t n);

/// Driving table: CSV with header t,re_p1,im_p1,...; each row holds the
/// values from its node time onward. Coefficients beyond the table are zero.
DrivingFunction read_driving_table(std::istream& is, std::size_t n);

/// Terms of a polynomial sorted by total degree, then by exponent vector.
/// Each entry is {"coefficient": "...", "monomial": "...", "exponents": [...]}.
nlohmann::ordered_json polynomial_json(const MultiPoly& p, const std::vector<std::string>& names);

}  // namespace coeffbody
