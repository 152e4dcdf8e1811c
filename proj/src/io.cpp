#include "npspec/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace npspec {

void RunConfig::set(const std::string& key, const std::string& value) { params.emplace_back(key, value); }

void RunConfig::set(const std::string& key, double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    params.emplace_back(key, buf);
}

void RunConfig::set(const std::string& key, int value) { params.emplace_back(key, std::to_string(value)); }

ordered_json RunConfig::to_json() const {
    ordered_json j;
    j["command"] = command;
    for (const auto& [k, v] : params) j[k] = v;
    return j;
}

void RunConfig::write_csv_header(std::ostream& os) const {
    os << "# command=" << command << "\n";
    for (const auto& [k, v] : params) os << "# " << k << "=" << v << "\n";
}

ordered_json map_to_json(const ExteriorMap& map) {
    ordered_json j;
    j["label"] = map.label;
    j["direction"] = (map.direction == Direction::forward) ? "forward" : "inverse";
    j["radius"] = map.radius;
    ordered_json coeffs = ordered_json::array();
    for (const cplx& c : map.tail.coeffs()) coeffs.push_back(ordered_json::array({c.real(), c.imag()}));
    j["coeffs"] = std::move(coeffs);
    return j;
}

ExteriorMap map_from_json(const ordered_json& j) {
    ExteriorMap map;
    if (!j.contains("direction") || !j.contains("radius") || !j.contains("coeffs"))
        throw validation_error("map JSON: missing required field");
    map.label = j.value("label", std::string{});
    const std::string dir = j.at("direction").get<std::string>();
    if (dir == "forward")
        map.direction = Direction::forward;
    else if (dir == "inverse")
        map.direction = Direction::inverse;
    else
        throw validation_error("map JSON: direction must be 'forward' or 'inverse'");
    map.radius = j.at("radius").get<double>();
    if (!(map.radius > 0.0)) throw validation_error("map JSON: radius must be positive");

    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || coeffs.empty()) throw validation_error("map JSON: coeffs must be a nonempty array");
    std::vector<cplx> c;
    c.reserve(coeffs.size());
    for (const auto& e : coeffs) {
        if (!e.is_array() || e.size() != 2) throw validation_error("map JSON: each coefficient is [re, im]");
        c.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    if (c.front() != cplx{1.0, 0.0}) throw validation_error("map JSON: the z^1 coefficient must be [1, 0]");
    map.tail = LaurentTail(1, std::move(c));
    return map;
}

ExteriorMap load_map(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open map file: " + path);
    ordered_json j;
    in >> j;
    return map_from_json(j);
}

namespace {

std::string format17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

} // namespace

void spectrum_to_csv(const SpectrumResult& result, const RunConfig& config, std::ostream& os) {
    config.write_csv_header(os);
    os << "rank,block_j,value,multiplicity,matrix_size\n";
    int rank = 1;
    for (const auto& e : result.eigenvalues) {
        os << rank << ',' << e.block_j << ',' << format17(e.value) << ',' << e.multiplicity << ','
           << result.truncation << "\n";
        ++rank;
    }
}

ordered_json spectrum_to_json(const SpectrumResult& result, const RunConfig& config) {
    ordered_json j;
    j["config"] = config.to_json();
    j["m"] = result.m;
    j["truncation"] = result.truncation;
    j["merge_tolerance"] = 1e-12;
    ordered_json list = ordered_json::array();
    int rank = 1;
    for (const auto& e : result.eigenvalues) {
        ordered_json entry;
        entry["rank"] = rank++;
        entry["block_j"] = e.block_j;
        entry["value"] = e.value;
        entry["multiplicity"] = e.multiplicity;
        entry["constant_space"] = e.constant_space;
        list.push_back(std::move(entry));
    }
    j["eigenvalues"] = std::move(list);
    return j;
}

void spectrum_to_text(const SpectrumResult& result, int max_rows, std::ostream& os) {
    os << "rank  block  mult  value\n";
    int rank = 1;
    for (const auto& e : result.eigenvalues) {
        if (rank > max_rows) {
            os << "... (" << result.eigenvalues.size() << " entries total)\n";
            break;
        }
        char buf[96];
        if (e.constant_space)
            std::snprintf(buf, sizeof(buf), "%-5d const  %-5d %.6g\n", rank, e.multiplicity, e.value);
        else
            std::snprintf(buf, sizeof(buf), "%-5d %-6d %-5d %.6g\n", rank, e.block_j, e.multiplicity, e.value);
        os << buf;
        ++rank;
    }
}

ordered_json oracle_report_to_json(const OracleReport& report, const RunConfig& config) {
    ordered_json j;
    j["config"] = config.to_json();
    j["n_q"] = report.n_q;
    j["n_max"] = report.n_max;
    j["table_order"] = report.table_order;
    j["worst_residual"] = report.worst_residual;
    j["wall_seconds"] = report.wall_seconds;
    ordered_json rows = ordered_json::array();
    for (const auto& r : report.rows) {
        ordered_json row;
        row["n"] = r.n;
        row["residual_plus"] = r.residual_plus;
        row["residual_minus"] = r.residual_minus;
        row["k_used"] = r.k_used;
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j;
}

std::string boundary_to_svg(const BoundaryCurve& curve) {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const cplx& p : curve.points) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    const double span = std::max(xmax - xmin, ymax - ymin);
    const double margin = 0.05;
    const double scale = (span > 0.0) ? (1.0 - 2.0 * margin) / span : 1.0;
    const double x0 = 0.5 * (xmin + xmax), y0 = 0.5 * (ymin + ymax);

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1 1\">\n";
    os << "<path fill=\"none\" stroke=\"black\" stroke-width=\"0.004\" d=\"";
    char buf[64];
    for (size_t i = 0; i < curve.points.size(); ++i) {
        const double x = 0.5 + scale * (curve.points[i].real() - x0);
        const double y = 0.5 - scale * (curve.points[i].imag() - y0); // SVG y grows downward
        std::snprintf(buf, sizeof(buf), "%c%.6f %.6f ", i == 0 ? 'M' : 'L', x, y);
        os << buf;
    }
    os << "Z\"/>\n</svg>\n";
    return os.str();
}

} // namespace npspec
