#include "qgraph/cli.hpp"

#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "qgraph/fixtures.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/resonance.hpp"
#include "qgraph/scattering.hpp"
#include "qgraph/sweep.hpp"
#include "qgraph/weyl.hpp"

namespace qgraph::cli {
namespace {

double depth_of(const RunConfig& c) { return c.depth > 0.0 ? c.depth : kDefaultStripDepth; }
double f_min(const RunConfig& c) { return c.f_min_ghz * 1e9; }
double f_max(const RunConfig& c) { return c.f_max_ghz * 1e9; }

/// Writes to --out when given, otherwise to the standard stream.
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
    if (path.empty()) {
        fallback << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw GraphError("cannot write " + path);
    file << text;
}

void check_band(const RunConfig& c, const MetricGraph& graph, std::ostream& err) {
    if (!(c.f_min_ghz > 0.0) || !(c.f_max_ghz > c.f_min_ghz)) {
        throw GraphError(fmt::format("band [{}, {}] GHz is empty or inverted", c.f_min_ghz, c.f_max_ghz));
    }
    if (band_exceeds_cutoff(graph, f_max(c))) {
        err << fmt::format("warning: band edge {:.3f} GHz is above the cable TE11 cutoff {:.3f} GHz; "
                           "higher modes are not modelled\n",
                           c.f_max_ghz, cutoff_frequency(*graph.cable) * 1e-9);
    }
}

std::string resonance_rows(const ZeroSet& set) {
    std::string out = "re_k_per_m,im_k_per_m,nu_ghz,width_mhz,residual\n";
    for (const auto& r : set.zeros) {
        for (int m = 0; m < r.multiplicity; ++m) {
            out += fmt::format("{:.12f},{:.12f},{:.9f},{:.6f},{:.3e}\n", r.k.real(), r.k.imag(), r.frequency * 1e-9,
                               2.0 * r.half_width * 1e-6, r.residual);
        }
    }
    return out;
}

int cmd_resonances(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::string name;
    const auto graph = load_graph(c, name);
    check_band(c, graph, err);
    const auto system = build_bond_system(graph);
    const auto set = find_zeros(system, SearchBox::band(f_min(c), f_max(c), depth_of(c)));
    emit(c.out_path, resonance_rows(set), out);
    return kOk;
}

int cmd_classify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::string name;
    const auto graph = load_graph(c, name);
    check_band(c, graph, err);
    ReportOptions options{depth_of(c), c.r_min, c.r_max, c.r_step};
    const auto report = make_count_report(name, graph, f_min(c), f_max(c), options);
    emit(c.out_path, count_report_csv_header() + "\n" + count_report_csv_row(report) + "\n", out);

    const auto balance = balance_report(graph);
    if (auto s = balance.shortest_balanced_edge) {
        err << fmt::format("balanced_vertex={} edge={} ell_s={}\n", s->vertex, s->edge_id, s->length);
        if (balance.balanced_count() > 1) {
            err << "note: several balanced vertices; the effective size subtracts each shortest edge (heuristic)\n";
        }
    }
    return kOk;
}

int cmd_count(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::string name;
    const auto graph = load_graph(c, name);
    const auto system = build_bond_system(graph);
    const auto counts = counting_function(system, r_grid(c.r_min, c.r_max, c.r_step), depth_of(c));
    std::string text = "r_per_m,count\n";
    for (const auto& [r, n] : counts) text += fmt::format("{:.6f},{}\n", r, n);
    emit(c.out_path, text, out);
    try {
        const auto fit = fit_slope(std::span<const std::pair<double, int>>(counts));
        err << fmt::format("slope={:.6f} intercept={:.4f} max_residual={:.4f} weyl_slope={:.6f} "
                           "nonweyl_slope={:.6f}\n",
                           fit.slope, fit.intercept, fit.max_residual, total_length(graph) / std::numbers::pi,
                           effective_size(graph).value / std::numbers::pi);
    } catch (const std::invalid_argument& e) {
        err << "no slope fit: " << e.what() << "\n";
    }
    return kOk;
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
    std::string name;
    const auto graph = load_graph(c, name);
    check_band(c, graph, err);
    const auto system = build_bond_system(graph);
    SweepOptions options;
    if (c.prominence > 0.0) options.prominence = c.prominence;
    const auto trace = sweep(system, f_min(c), f_max(c), c.absorption, options);
    for (const auto& w : trace.warnings) err << "warning: " << w << "\n";

    std::string dips_path = c.dips_path;
    if (dips_path.empty() && !c.out_path.empty()) dips_path = c.out_path + ".dips.csv";
    if (dips_path.empty()) {
        out << trace_csv(trace) << "\n" << dips_csv(trace.dips);
    } else {
        emit(c.out_path, trace_csv(trace), out);
        emit(dips_path, dips_csv(trace.dips), out);
    }

    if (!trace.dips.empty()) {
        const auto zeros = find_zeros(system, SearchBox::band(f_min(c), f_max(c), depth_of(c)));
        for (const auto& d : trace.dips) {
            const Resonance* best = nullptr;
            for (const auto& r : zeros.zeros) {
                if (!best || std::abs(r.frequency - d.frequency) < std::abs(best->frequency - d.frequency)) best = &r;
            }
            if (!best) continue;
            err << fmt::format("dip {:.6f} GHz -> resonance {:.6f} GHz (offset {:.3f} MHz, half-width {:.3f} MHz)\n",
                               d.frequency * 1e-9, best->frequency * 1e-9, (d.frequency - best->frequency) * 1e-6,
                               best->half_width * 1e-6);
        }
        err << fmt::format("{} dips, {} resonances in band\n", trace.dips.size(), zeros.size());
    }
    return kOk;
}

}  // namespace

MetricGraph load_graph(const RunConfig& config, std::string& name) {
    if (config.fixture.empty() == config.graph_path.empty()) {
        throw GraphError("exactly one of --fixture or --graph is required");
    }
    MetricGraph graph;
    if (!config.fixture.empty()) {
        auto g = fixtures::by_name(config.fixture);
        if (!g) throw GraphError("unknown fixture '" + config.fixture + "' (expected W1, nW1, W2 or nW2)");
        graph = *g;
        name = config.fixture;
    } else {
        graph = load_graph_spec(config.graph_path);
        name = std::filesystem::path(config.graph_path).stem().string();
    }
    require_valid(graph);
    return graph;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Resonances of open metric graphs with standard coupling"};
    app.require_subcommand(1);

    RunConfig config;
    std::string absorption = "0";

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--fixture", config.fixture, "built-in network: W1, nW1, W2, nW2");
        sub->add_option("--graph", config.graph_path, "graph-spec file");
        sub->add_option("--fmin-ghz", config.f_min_ghz, "band lower edge, GHz");
        sub->add_option("--fmax-ghz", config.f_max_ghz, "band upper edge, GHz");
        sub->add_option("--depth", config.depth, "strip depth below the real axis, 1/m");
        sub->add_option("--out", config.out_path, "output CSV path");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--rmin", config.r_min, "counting grid start, 1/m");
        sub->add_option("--rmax", config.r_max, "counting grid end, 1/m");
        sub->add_option("--rstep", config.r_step, "counting grid step, 1/m");
    };

    auto* res = app.add_subcommand("resonances", "complex zeros of the secular function in the band");
    add_common(res);
    auto* cls = app.add_subcommand("classify", "band count, Weyl predictions and slope-checked classification");
    add_common(cls);
    add_grid(cls);
    auto* swp = app.add_subcommand("sweep", "|det S| trace and dips");
    add_common(swp);
    swp->add_option("--absorption", absorption, "uniform absorption in 1/m, or 'default'");
    swp->add_option("--dips-out", config.dips_path, "dip CSV path");
    swp->add_option("--prominence", config.prominence, "minimum dip prominence");
    auto* cnt = app.add_subcommand("count", "counting function N(R) table");
    add_common(cnt);
    add_grid(cnt);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }

    try {
        if (absorption == "default") {
            config.absorption = kDefaultAbsorption;
        } else {
            std::size_t used = 0;
            config.absorption = std::stod(absorption, &used);
            if (used != absorption.size() || config.absorption < 0.0) throw std::invalid_argument(absorption);
        }
    } catch (const std::exception&) {
        err << "error: --absorption must be a nonnegative number or 'default'\n";
        return kInvalidInput;
    }

    try {
        if (res->parsed()) return cmd_resonances(config, out, err);
        if (cls->parsed()) return cmd_classify(config, out, err);
        if (swp->parsed()) return cmd_sweep(config, out, err);
        return cmd_count(config, out, err);
    } catch (const GraphError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const ClassificationError& e) {
        err << "error: " << e.what() << "\n";
        return kInconsistentClassification;
    } catch (const std::exception& e) {
        err << "solver error: " << e.what() << "\n";
        return kSolverFailure;
    }
}

}  // namespace qgraph::cli
