#pragma once

// Resonance counting against the Weyl law N(R) ~ L R / pi and its non-Weyl
// modification with the effective size L' in place of L.

#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/resonance.hpp"
#include "qgraph/scattering.hpp"

namespace qgraph {

enum class Classification { Weyl, NonWeyl };

std::string to_string(Classification c);

/// Geometric and spectral verdicts disagree.
class ClassificationError : public std::runtime_error {
public:
    explicit ClassificationError(const std::string& what) : std::runtime_error(what) {}
};

struct PredictedCount {
    double weyl = 0.0;
    double nonweyl = 0.0;
};

/// 2 L (f_max - f_min) / c and the same with L'. Throws std::invalid_argument
/// for an empty, inverted or non-positive band.
PredictedCount predicted_count(const MetricGraph& graph, double f_min_hz, double f_max_hz);

/// Round half up, the convention that maps predictions onto integer counts.
int round_count(double prediction);

/// True when the graph carries a cable and f_max_hz is at or above its cutoff.
bool band_exceeds_cutoff(const MetricGraph& graph, double f_max_hz);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double max_residual = 0.0;
};

/// Ordinary least squares of N on R. Needs at least 10 points, distinct R
/// values, and counts spanning at least 20 zeros.
LinearFit fit_slope(std::span<const std::pair<double, double>> points);
LinearFit fit_slope(std::span<const std::pair<double, int>> counts);

/// Verdict from the balanced-vertex criterion, cross-checked against the
/// fitted slope (5% relative to L/pi or L'/pi). Throws ClassificationError.
Classification classify(const MetricGraph& graph, double fitted_slope);

/// Geometric verdict only.
Classification geometric_classification(const MetricGraph& graph);

inline constexpr double kSlopeGate = 0.05;

struct CountReport {
    std::string graph_name;
    double band_min_hz = 0.0;
    double band_max_hz = 0.0;
    int measured_count = 0;
    PredictedCount prediction;
    LinearFit fit;
    Classification classification = Classification::Weyl;
    double slope_relative_error = 0.0;
};

struct ReportOptions {
    double depth = kDefaultStripDepth;  // 1/m
    double r_min = 6.0;   // counting-function grid, 1/m
    double r_max = 400.0;
    double r_step = 1.0;
};

/// Counts zeros in the band, fits the counting function and classifies.
/// Throws ClassificationError when the fitted slope contradicts the geometry.
CountReport make_count_report(const std::string& name, const MetricGraph& graph, double f_min_hz, double f_max_hz,
                              const ReportOptions& options);

std::string count_report_csv_header();
std::string count_report_csv_row(const CountReport& report);

std::vector<double> r_grid(double r_min, double r_max, double step);

}  // namespace qgraph
