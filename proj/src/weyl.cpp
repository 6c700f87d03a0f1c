#include "qgraph/weyl.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "qgraph/resonance.hpp"

namespace qgraph {

std::string to_string(Classification c) { return c == Classification::Weyl ? "Weyl" : "non-Weyl"; }

PredictedCount predicted_count(const MetricGraph& graph, double f_min_hz, double f_max_hz) {
    if (!(f_min_hz > 0.0) || !(f_max_hz > f_min_hz)) {
        throw std::invalid_argument(fmt::format("band [{}, {}] Hz is empty or inverted", f_min_hz, f_max_hz));
    }
    const double span = 2.0 * (f_max_hz - f_min_hz) / kSpeedOfLight;
    return {total_length(graph) * span, effective_size(graph).value * span};
}

int round_count(double prediction) { return static_cast<int>(std::floor(prediction + 0.5)); }

bool band_exceeds_cutoff(const MetricGraph& graph, double f_max_hz) {
    return graph.cable && f_max_hz >= cutoff_frequency(*graph.cable);
}

LinearFit fit_slope(std::span<const std::pair<double, double>> points) {
    if (points.size() < 10) throw std::invalid_argument("slope fit needs at least 10 points");
    double sx = 0.0, sy = 0.0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
    }
    const double n = static_cast<double>(points.size());
    const double mx = sx / n, my = sy / n;
    double sxx = 0.0, sxy = 0.0;
    double ymin = points.front().second, ymax = ymin;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (sxx == 0.0) throw std::invalid_argument("slope fit: all R values are equal");
    if (ymax - ymin < 20.0) throw std::invalid_argument("slope fit: counts span fewer than 20 zeros");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    for (const auto& [x, y] : points) {
        fit.max_residual = std::max(fit.max_residual, std::abs(y - (fit.slope * x + fit.intercept)));
    }
    return fit;
}

LinearFit fit_slope(std::span<const std::pair<double, int>> counts) {
    std::vector<std::pair<double, double>> points;
    points.reserve(counts.size());
    for (const auto& [r, n] : counts) points.emplace_back(r, static_cast<double>(n));
    return fit_slope(std::span<const std::pair<double, double>>(points));
}

Classification geometric_classification(const MetricGraph& graph) {
    return balance_report(graph).has_balanced_vertex() ? Classification::NonWeyl : Classification::Weyl;
}

Classification classify(const MetricGraph& graph, double fitted_slope) {
    const auto verdict = geometric_classification(graph);
    const double size = verdict == Classification::Weyl ? total_length(graph) : effective_size(graph).value;
    const double expected = size / std::numbers::pi;
    const double rel = std::abs(fitted_slope - expected) / expected;
    if (rel >= kSlopeGate) {
        throw ClassificationError(fmt::format("graph is {} by its vertices but the fitted slope {:.5f} is {:.1f}% "
                                              "away from the expected {:.5f}",
                                              to_string(verdict), fitted_slope, 100.0 * rel, expected));
    }
    return verdict;
}

std::vector<double> r_grid(double r_min, double r_max, double step) {
    if (!(r_min > 0.0) || !(r_max > r_min) || !(step > 0.0)) throw std::invalid_argument("bad R grid");
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::floor((r_max - r_min) / step + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) grid.push_back(r_min + static_cast<double>(i) * step);
    return grid;
}

CountReport make_count_report(const std::string& name, const MetricGraph& graph, double f_min_hz, double f_max_hz,
                              const ReportOptions& options) {
    const auto system = build_bond_system(graph);
    CountReport report;
    report.graph_name = name;
    report.band_min_hz = f_min_hz;
    report.band_max_hz = f_max_hz;
    report.prediction = predicted_count(graph, f_min_hz, f_max_hz);
    report.measured_count = count_zeros(system, SearchBox::band(f_min_hz, f_max_hz, options.depth));

    const auto counts = counting_function(system, r_grid(options.r_min, options.r_max, options.r_step), options.depth);
    report.fit = fit_slope(std::span<const std::pair<double, int>>(counts));

    const auto verdict = geometric_classification(graph);
    const double size = verdict == Classification::Weyl ? total_length(graph) : effective_size(graph).value;
    const double expected = size / std::numbers::pi;
    report.slope_relative_error = std::abs(report.fit.slope - expected) / expected;
    report.classification = classify(graph, report.fit.slope);
    return report;
}

std::string count_report_csv_header() {
    return "graph,band_min_ghz,band_max_ghz,measured,weyl_pred,nonweyl_pred,slope,classification";
}

std::string count_report_csv_row(const CountReport& r) {
    return fmt::format("{},{:.3f},{:.3f},{},{:.2f},{:.2f},{:.5f},{}", r.graph_name, r.band_min_hz * 1e-9,
                       r.band_max_hz * 1e-9, r.measured_count, r.prediction.weyl, r.prediction.nonweyl, r.fit.slope,
                       to_string(r.classification));
}

}  // namespace qgraph
