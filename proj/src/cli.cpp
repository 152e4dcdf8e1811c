#include "npspec/cli.hpp"

#include "npspec/grunsky.hpp"
#include "npspec/io.hpp"
#include "npspec/oracle.hpp"
#include "npspec/spectrum.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace npspec {

namespace {

constexpr double kSymmetryTol = 1e-11;
constexpr double kSparsityTol = 1e-13;
constexpr double kEmbeddingMuTol = 1e-11;
constexpr double kEmbeddingSpectrumTol = 1e-10;
constexpr double kLemniscateTol = 1e-13;
constexpr double kCassiniClosedFormTol = 1e-10;
constexpr double kOracleTol = 1e-7;

struct MapOptions {
    std::string preset;
    std::string file;
    std::string c = "0";
    double q = 0.0;
    double R = 0.0;
    bool has_r = false;
    int m = 0;
    std::string poly;
};

double parse_double(const std::string& s) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw validation_error("bad number: " + s);
        return v;
    } catch (const std::logic_error&) {
        throw validation_error("bad number: " + s);
    }
}

int parse_int(const std::string& s) {
    try {
        size_t pos = 0;
        const int v = std::stoi(s, &pos);
        if (pos != s.size()) throw validation_error("bad integer: " + s);
        return v;
    } catch (const std::logic_error&) {
        throw validation_error("bad integer: " + s);
    }
}

std::vector<cplx> parse_poly(const std::string& s) {
    std::vector<cplx> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_complex(item));
    if (out.empty()) throw validation_error("empty polynomial coefficient list");
    return out;
}

struct BuiltMap {
    ExteriorMap map;
    int natural_fold = 1;
};

BuiltMap build_preset(const std::string& name, const MapOptions& opt, int order) {
    const double R = opt.has_r ? opt.R : 1.1;
    BuiltMap out;
    if (name == "disk") {
        out.map = make_translated_disk(parse_complex(opt.c), R, order);
        out.natural_fold = 1;
    } else if (name == "joukowski" || name == "ellipse") {
        out.map = make_joukowski(opt.q, R, order);
        out.natural_fold = 1;
    } else if (name == "mstar") {
        if (opt.m < 1) throw validation_error("preset mstar requires --m");
        out.map = make_mstar(opt.m, R, order);
        out.natural_fold = opt.m;
    } else if (name == "cassini") {
        out.map = make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, R, order);
        out.map.label = "cassini";
        out.natural_fold = 2;
    } else if (name == "lemniscate") {
        if (opt.poly.empty()) throw validation_error("preset lemniscate requires --poly (ascending coefficients)");
        const std::vector<cplx> poly = parse_poly(opt.poly);
        out.map = make_lemniscate(poly, R, order);
        out.natural_fold = static_cast<int>(poly.size()) - 1;
    } else {
        throw validation_error("unknown preset: " + name);
    }
    return out;
}

BuiltMap build_map(const MapOptions& opt, int order) {
    if (!opt.file.empty()) {
        BuiltMap out;
        out.map = load_map(opt.file);
        out.natural_fold = 1;
        return out;
    }
    if (opt.preset.empty()) throw validation_error("no preset or map file given");
    return build_preset(opt.preset, opt, order);
}

void add_map_options(CLI::App* cmd, MapOptions& opt, bool positional) {
    if (positional)
        cmd->add_option("preset", opt.preset, "preset name: disk|joukowski|ellipse|mstar|cassini|lemniscate");
    else
        cmd->add_option("--preset", opt.preset, "preset name");
    cmd->add_option("--file", opt.file, "map JSON file instead of a preset");
    cmd->add_option("--c", opt.c, "disk center (complex, e.g. 1 or 0.3i)");
    cmd->add_option("--q", opt.q, "joukowski coefficient");
    cmd->add_option("--R", opt.R, "exterior radius parameter")->each([&opt](const std::string&) { opt.has_r = true; });
    cmd->add_option("--m", opt.m, "fold count (mstar preset and block decomposition)");
    cmd->add_option("--poly", opt.poly, "lemniscate polynomial, ascending comma-separated coefficients");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw validation_error("cannot open output file: " + path);
    return os;
}

void emit_json(const ordered_json& j, const std::string& path) {
    if (path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        auto os = open_out(path);
        os << j.dump(2) << "\n";
    }
}

/// mu table of a map through the forward-coefficient pipeline.
MuMatrix pipeline_mu(const ExteriorMap& map, int order) {
    const ExteriorMap fwd = map.forward_form(2 * order + 2);
    return modified_grunsky(grunsky_from_forward(fwd, order), map.radius);
}

// ---- subcommand payloads ----------------------------------------------

struct SpectrumArgs {
    MapOptions map;
    int j = -1;
    bool all_blocks = false;
    int size = 25;
    int order = 0;
    std::string csv, json, dump_grunsky, dump_mu;
};

int cmd_spectrum(const SpectrumArgs& args) {
    const int fold = (args.map.m > 0) ? args.map.m : 0;
    BuiltMap built = build_map(args.map, default_order());
    const int m = (fold > 0) ? fold : built.natural_fold;
    const int required = m * (args.size + 1);
    const int order = std::max(args.order, required);

    RunConfig config;
    config.command = "spectrum";
    config.set("map", built.map.label.empty() ? std::string("file") : built.map.label);
    config.set("radius", built.map.radius);
    config.set("m", m);
    config.set("size", args.size);
    config.set("order", order);

    const ExteriorMap fwd = built.map.forward_form(2 * order + 2);
    const GrunskyTable table = grunsky_from_forward(fwd, order);
    const MuMatrix mu = modified_grunsky(table, built.map.radius);
    if (!args.dump_grunsky.empty()) {
        auto os = open_out(args.dump_grunsky);
        config.write_csv_header(os);
        grunsky_to_csv(table, os);
    }
    if (!args.dump_mu.empty()) {
        auto os = open_out(args.dump_mu);
        config.write_csv_header(os);
        mu_to_csv(mu, os);
    }

    SpectrumResult result;
    if (args.j >= 0 && !args.all_blocks) {
        config.set("j", args.j);
        result = block_spectrum(mu, m, args.j, args.size);
    } else {
        config.set("j", "all");
        result = full_spectrum(mu, m, args.size);
    }

    if (!args.csv.empty()) {
        auto os = open_out(args.csv);
        spectrum_to_csv(result, config, os);
    }
    if (!args.json.empty()) {
        auto os = open_out(args.json);
        os << spectrum_to_json(result, config).dump(2) << "\n";
    }
    if (args.csv.empty() && args.json.empty()) {
        config.write_csv_header(std::cout);
        spectrum_to_text(result, 40, std::cout);
    }
    return 0;
}

struct MapArgs {
    MapOptions map;
    std::string emit;
    int order = 0;
};

int cmd_map(const MapArgs& args) {
    const int order = (args.order > 0) ? args.order : default_order();
    BuiltMap built = build_map(args.map, order);
    const ordered_json j = map_to_json(built.map);
    emit_json(j, args.emit);
    return 0;
}

struct PlotArgs {
    MapOptions map;
    int samples = 512;
    std::string out;
};

int cmd_plot(const PlotArgs& args) {
    BuiltMap built = build_map(args.map, default_order());
    const BoundaryCurve curve = sample_boundary(built.map, args.samples);
    auto os = open_out(args.out);
    os << boundary_to_svg(curve);
    return 0;
}

struct Table1Args {
    std::string sizes = "10,25,50,100";
    double R = 1.1;
    int rows = 10;
    std::string csv;
};

int cmd_table1(const Table1Args& args) {
    std::vector<int> sizes;
    {
        std::stringstream ss(args.sizes);
        std::string item;
        while (std::getline(ss, item, ',')) sizes.push_back(parse_int(item));
    }
    if (sizes.empty()) throw validation_error("table1: empty size list");
    const int max_size = *std::max_element(sizes.begin(), sizes.end());

    ExteriorMap cassini = make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, args.R);
    cassini.label = "cassini";
    const int order = 2 * (max_size + 1);
    const MuMatrix mu = pipeline_mu(cassini, order);

    RunConfig config;
    config.command = "table1";
    config.set("R", args.R);
    config.set("sizes", args.sizes);
    config.set("order", order);

    std::vector<std::vector<double>> columns;
    for (int size : sizes) {
        const CMat block = block_matrix(mu, 2, 1, size);
        std::vector<double> ev = sym_eigenvalues(real_part(block));
        ev.resize(static_cast<size_t>(std::min<int>(args.rows, static_cast<int>(ev.size()))));
        columns.push_back(std::move(ev));
    }

    std::ostringstream table;
    table << "lambda";
    for (int size : sizes) table << "\t[M1]_" << size;
    table << "\n";
    for (int r = 0; r < args.rows; ++r) {
        table << (r + 1);
        for (const auto& col : columns) {
            char buf[32];
            if (r < static_cast<int>(col.size()))
                std::snprintf(buf, sizeof(buf), "\t%.6g", col[static_cast<size_t>(r)]);
            else
                std::snprintf(buf, sizeof(buf), "\t-");
            table << buf;
        }
        table << "\n";
    }

    config.write_csv_header(std::cout);
    std::cout << table.str();
    if (!args.csv.empty()) {
        auto os = open_out(args.csv);
        config.write_csv_header(os);
        os << "rank,size,value\n";
        char buf[64];
        for (size_t c = 0; c < sizes.size(); ++c)
            for (size_t r = 0; r < columns[c].size(); ++r) {
                std::snprintf(buf, sizeof(buf), "%zu,%d,%.17g\n", r + 1, sizes[c], columns[c][r]);
                os << buf;
            }
    }
    return 0;
}

struct VerifyArgs {
    std::string suite;
    MapOptions map;
    std::string omega;
    int order = 0;
    int size = 60;
    int nq = 1024;
    int nmax = 8;
    std::string json;
};

int cmd_verify(const VerifyArgs& args) {
    RunConfig config;
    config.command = "verify";
    config.set("suite", args.suite);

    bool pass = false;
    double worst = 0.0;
    std::ostringstream detail;
    ordered_json extra;

    if (args.suite == "symmetry") {
        const int order = (args.order > 0) ? args.order : 64;
        BuiltMap built = build_map(args.map, default_order());
        const ExteriorMap fwd = built.map.forward_form(2 * order + 2);
        const GrunskyTable table = grunsky_from_forward(fwd, order);
        worst = grunsky_symmetry_violation(table);
        pass = worst < kSymmetryTol;
        detail << "max relative violation of k c(n,k) = n c(k,n): " << worst << " (tol " << kSymmetryTol << ")";
    } else if (args.suite == "sparsity") {
        const int order = (args.order > 0) ? args.order : 120;
        BuiltMap built = build_map(args.map, default_order());
        const int m = (args.map.m > 0) ? args.map.m : built.natural_fold;
        if (m < 2) throw validation_error("sparsity suite needs a fold count m >= 2");
        const MuMatrix mu = pipeline_mu(built.map, order);
        for (int n = 1; n <= order; ++n)
            for (int k = 1; k <= order; ++k)
                if ((n + k) % m != 0) worst = std::max(worst, std::abs(mu.at(n, k)));
        pass = worst < kSparsityTol;
        detail << "max |mu(n,k)| off the n+k = 0 (mod " << m << ") pattern: " << worst << " (tol " << kSparsityTol
               << ")";
    } else if (args.suite == "embedding") {
        if (args.omega.empty()) throw validation_error("embedding suite requires --omega");
        if (args.map.m < 2) throw validation_error("embedding suite requires --m >= 2");
        const int m = args.map.m;
        const int size = args.size;
        ExteriorMap omega = parse_preset_spec(args.omega, default_order());
        const ExteriorMap d = mth_root_transform(omega.forward_form(2 * size + 2), m);
        const MuMatrix mu_o = pipeline_mu(omega, size);
        const MuMatrix mu_d = pipeline_mu(d, m * size);
        const EmbeddingReport rep = verify_embedding(mu_d, mu_o, m, size);
        worst = std::max(rep.mu_residual, rep.spectrum_residual);
        pass = rep.mu_residual < kEmbeddingMuTol && rep.spectrum_residual < kEmbeddingSpectrumTol;
        detail << "mu residual " << rep.mu_residual << " (tol " << kEmbeddingMuTol << "), block-0 spectrum residual "
               << rep.spectrum_residual << " (tol " << kEmbeddingSpectrumTol << ")";
        extra["mu_residual"] = rep.mu_residual;
        extra["spectrum_residual"] = rep.spectrum_residual;
    } else if (args.suite == "lemniscate-kernel") {
        const int order = (args.order > 0) ? args.order : 120;
        BuiltMap built = build_map(args.map, default_order());
        if (built.map.direction != Direction::inverse)
            throw validation_error("lemniscate-kernel suite needs a lemniscate preset");
        const int degree = built.natural_fold;
        const GrunskyTable table = grunsky_from_inverse(built.map, order);
        for (int n = degree; n <= order; n += degree)
            for (int k = 1; k <= order; ++k) worst = std::max(worst, std::abs(table.at(n, k)));
        pass = worst < kLemniscateTol;
        detail << "max |c(n,k)| over rows n = 0 (mod " << degree << "): " << worst << " (tol " << kLemniscateTol
               << ")";
    } else if (args.suite == "cassini-closed-form") {
        const int order = (args.order > 0) ? args.order : 41;
        const double R = args.map.has_r ? args.map.R : 1.1;
        ExteriorMap cassini = make_lemniscate({cplx{-1.0, 0.0}, cplx{0.0, 0.0}, cplx{1.0, 0.0}}, R);
        const GrunskyTable table = grunsky_from_inverse(cassini, order);
        for (int n = 1; n <= order; n += 2)
            for (int k = 1; k <= order; k += 2)
                worst = std::max(worst, std::abs(table.at(n, k) - closed_form_cassini(n, k)));
        pass = worst < kCassiniClosedFormTol;
        detail << "max |series - closed form| on odd indices up to " << order << ": " << worst << " (tol "
               << kCassiniClosedFormTol << ")";
    } else if (args.suite == "oracle") {
        BuiltMap built = build_map(args.map, default_order());
        const int order = (args.order > 0) ? args.order : oracle_table_order(built.map.radius, args.nmax);
        const MuMatrix mu = pipeline_mu(built.map, order);
        const OracleReport rep = verify_theorem22(built.map, mu, args.nmax, args.nq);
        worst = rep.worst_residual;
        pass = worst < kOracleTol;
        detail << "worst sup-node residual over n <= " << args.nmax << ", N_q = " << args.nq << ": " << worst
               << " (tol " << kOracleTol << ")";
        config.set("order", order);
        config.set("n_q", args.nq);
        config.set("n_max", args.nmax);
        extra = oracle_report_to_json(rep, config);
    } else {
        throw validation_error("unknown verify suite: " + args.suite);
    }

    std::cout << "[" << (pass ? "PASS" : "FAIL") << "] verify " << args.suite << ": " << detail.str() << "\n";
    if (!args.json.empty()) {
        ordered_json j;
        j["config"] = config.to_json();
        j["pass"] = pass;
        j["worst"] = worst;
        if (!extra.is_null()) j["report"] = extra;
        auto os = open_out(args.json);
        os << j.dump(2) << "\n";
    }
    return pass ? 0 : 3;
}

} // namespace

cplx parse_complex(const std::string& input) {
    std::string s;
    for (char ch : input)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw validation_error("empty complex literal");
    if (s.back() != 'i' && s.back() != 'I') return {parse_double(s), 0.0};
    s.pop_back(); // trailing i
    // split at the last +/- that is not an exponent sign and not leading
    size_t split = std::string::npos;
    for (size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    auto parse_or = [](const std::string& t, double empty_value) {
        if (t.empty() || t == "+") return empty_value;
        if (t == "-") return -empty_value;
        return parse_double(t);
    };
    if (split == std::string::npos) return {0.0, parse_or(s, 1.0)};
    return {parse_or(s.substr(0, split), 0.0), parse_or(s.substr(split), 1.0)};
}

ExteriorMap parse_preset_spec(const std::string& spec, int order) {
    const size_t colon = spec.find(':');
    const std::string name = spec.substr(0, colon);
    MapOptions opt;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string kv;
        while (std::getline(ss, kv, ',')) {
            const size_t eq = kv.find('=');
            if (eq == std::string::npos) throw validation_error("bad preset spec: " + spec);
            const std::string key = kv.substr(0, eq);
            const std::string value = kv.substr(eq + 1);
            if (key == "c")
                opt.c = value;
            else if (key == "q")
                opt.q = parse_double(value);
            else if (key == "R") {
                opt.R = parse_double(value);
                opt.has_r = true;
            } else if (key == "m")
                opt.m = parse_int(value);
            else
                throw validation_error("bad preset key '" + key + "' in: " + spec);
        }
    }
    return build_preset(name, opt, order).map;
}

int default_order() {
    if (const char* env = std::getenv("NPSPEC_DEFAULT_ORDER")) {
        const int v = std::atoi(env);
        if (v >= 8 && v <= 8192) return v;
        throw validation_error("NPSPEC_DEFAULT_ORDER out of range [8, 8192]");
    }
    return kDefaultOrder;
}

int oracle_table_order(double radius, int n_max) {
    if (radius <= 1.0) return 1400;
    const int k = static_cast<int>(std::ceil(34.5 / std::log(radius)));
    return std::clamp(k, std::max(64, n_max + 16), 1400);
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Spectra of the double-layer boundary operator on exterior-map domains"};
    app.require_subcommand(1);

    MapArgs map_args;
    CLI::App* c_map = app.add_subcommand("map", "construct a map and emit its JSON form");
    add_map_options(c_map, map_args.map, true);
    c_map->add_option("--emit", map_args.emit, "output JSON path (default stdout)");
    c_map->add_option("--order", map_args.order, "truncation window");

    SpectrumArgs spec_args;
    CLI::App* c_spec = app.add_subcommand("spectrum", "block or full operator spectrum");
    add_map_options(c_spec, spec_args.map, true);
    c_spec->add_option("--j", spec_args.j, "block label (default: all blocks)");
    c_spec->add_flag("--all-blocks", spec_args.all_blocks, "all blocks plus the constant entry");
    c_spec->add_option("--size", spec_args.size, "block matrix truncation size");
    c_spec->add_option("--order", spec_args.order, "coefficient table order (default: derived)");
    c_spec->add_option("--csv", spec_args.csv, "CSV output path");
    c_spec->add_option("--json", spec_args.json, "JSON output path");
    c_spec->add_option("--dump-grunsky", spec_args.dump_grunsky, "write the coefficient table CSV");
    c_spec->add_option("--dump-mu", spec_args.dump_mu, "write the scaled table CSV");

    VerifyArgs verify_args;
    CLI::App* c_verify = app.add_subcommand("verify", "run a named verification suite");
    c_verify->add_option("suite", verify_args.suite,
                         "symmetry|sparsity|embedding|lemniscate-kernel|cassini-closed-form|oracle")
        ->required();
    add_map_options(c_verify, verify_args.map, false);
    c_verify->add_option("--omega", verify_args.omega, "base preset spec for the embedding suite");
    c_verify->add_option("--order", verify_args.order, "table order override");
    c_verify->add_option("--size", verify_args.size, "matched truncation for the embedding suite");
    c_verify->add_option("--nq", verify_args.nq, "quadrature nodes for the oracle suite");
    c_verify->add_option("--nmax", verify_args.nmax, "basis rows for the oracle suite");
    c_verify->add_option("--json", verify_args.json, "write the full report as JSON");

    PlotArgs plot_args;
    CLI::App* c_plot = app.add_subcommand("plot", "boundary curve as SVG");
    add_map_options(c_plot, plot_args.map, true);
    c_plot->add_option("--samples", plot_args.samples, "sample count (even, >= 16)");
    c_plot->add_option("--out", plot_args.out, "output SVG path")->required();

    Table1Args table_args;
    CLI::App* c_table = app.add_subcommand("table1", "leading block-1 eigenvalues of the Cassini oval");
    c_table->add_option("--sizes", table_args.sizes, "comma-separated truncation sizes");
    c_table->add_option("--R", table_args.R, "radius parameter");
    c_table->add_option("--rows", table_args.rows, "eigenvalues per column");
    c_table->add_option("--csv", table_args.csv, "CSV output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(c_map)) return cmd_map(map_args);
        if (app.got_subcommand(c_spec)) return cmd_spectrum(spec_args);
        if (app.got_subcommand(c_verify)) return cmd_verify(verify_args);
        if (app.got_subcommand(c_plot)) return cmd_plot(plot_args);
        if (app.got_subcommand(c_table)) return cmd_table1(table_args);
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const convergence_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}

} // namespace npspec
