#pragma once

#include "npspec/conformal.hpp"
#include "npspec/oracle.hpp"
#include "npspec/spectrum.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace npspec {

using ordered_json = nlohmann::ordered_json;

/// Command + ordered parameter list, embedded into every output for
/// reproducibility.
struct RunConfig {
    std::string command;
    std::vector<std::pair<std::string, std::string>> params;

    void set(const std::string& key, const std::string& value);
    void set(const std::string& key, double value);
    void set(const std::string& key, int value);
    ordered_json to_json() const;
    void write_csv_header(std::ostream& os) const;
};

/// Map schema: { "label", "direction", "radius", "coeffs": [[re, im], ...] }
/// with coeffs[0] the z^1 coefficient (always [1, 0]) and coeffs[1] = a_0.
/// Round-trips bit-exactly.
ordered_json map_to_json(const ExteriorMap& map);
ExteriorMap map_from_json(const ordered_json& j);
ExteriorMap load_map(const std::string& path);

void spectrum_to_csv(const SpectrumResult& result, const RunConfig& config, std::ostream& os);
ordered_json spectrum_to_json(const SpectrumResult& result, const RunConfig& config);
void spectrum_to_text(const SpectrumResult& result, int max_rows, std::ostream& os);

ordered_json oracle_report_to_json(const OracleReport& report, const RunConfig& config);

/// Stroke-only closed polyline of the sampled boundary in a unit-square
/// viewport with a 5% margin. Output bytes depend only on the inputs.
std::string boundary_to_svg(const BoundaryCurve& curve);

} // namespace npspec
