#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph::cli {

enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 2,
    kSolverFailure = 3,
    kInconsistentClassification = 4,
};

struct RunConfig {
    std::string fixture;     // W1 | nW1 | W2 | nW2
    std::string graph_path;  // graph-spec file
    double f_min_ghz = 0.3;
    double f_max_ghz = 2.2;
    double depth = 0.0;       // 1/m; 0 selects the calibrated default
    double absorption = 0.0;  // 1/m
    std::string out_path;     // empty: standard output
    std::string dips_path;    // sweep only
    double prominence = 0.0;  // 0 selects the default
    double r_min = 6.0;
    double r_max = 400.0;
    double r_step = 1.0;
};

/// Resolves the graph source of a config; throws GraphError.
MetricGraph load_graph(const RunConfig& config, std::string& name);

/// Runs the command line `args` (without the program name).
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qgraph::cli
