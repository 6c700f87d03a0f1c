#include "qgraph/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace qgraph {
namespace {

class TraceBuilder {
public:
    TraceBuilder(const BondSystem& system, double absorption, double band, std::vector<std::string>& warnings)
        : system_(system), absorption_(absorption), band_(band), warnings_(warnings) {}

    double add(double f) {
        if (auto it = samples_.find(f); it != samples_.end()) return it->second;
        double value;
        try {
            value = det_smatrix_modulus(system_, f, absorption_);
        } catch (const NearResonanceError&) {
            const double shifted = f + 1e-9 * band_;
            warnings_.push_back(fmt::format("near-singular bond system at {:.9g} Hz, sampled at {:.9g} Hz", f, shifted));
            value = det_smatrix_modulus(system_, shifted, absorption_);
        }
        samples_.emplace(f, value);
        return value;
    }

    std::size_t size() const { return samples_.size(); }

    /// One pass of midpoint insertion; returns whether anything was added.
    bool refine(double tolerance, std::size_t max_samples) {
        std::vector<double> mids;
        for (auto it = samples_.begin(), next = std::next(it); next != samples_.end(); ++it, ++next) {
            if (std::abs(next->second - it->second) >= tolerance) mids.push_back(0.5 * (it->first + next->first));
        }
        for (double m : mids) {
            if (size() >= max_samples) return false;
            add(m);
        }
        return !mids.empty();
    }

    /// Golden-section search around every interior local minimum.
    void polish_minima(double resolution, std::size_t max_samples) {
        std::vector<std::pair<double, double>> brackets;
        for (auto it = std::next(samples_.begin()); std::next(it) != samples_.end(); ++it) {
            auto prev = std::prev(it), next = std::next(it);
            if (it->second < prev->second && it->second <= next->second) brackets.emplace_back(prev->first, next->first);
        }
        const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
        for (auto [a, b] : brackets) {
            if (size() + 2 > max_samples) return;
            double c = b - ratio * (b - a), d = a + ratio * (b - a);
            double fc = add(c), fd = add(d);
            while (b - a > resolution && size() < max_samples) {
                if (fc < fd) {
                    b = d;
                    d = c;
                    fd = fc;
                    c = b - ratio * (b - a);
                    fc = add(c);
                } else {
                    a = c;
                    c = d;
                    fc = fd;
                    d = a + ratio * (b - a);
                    fd = add(d);
                }
            }
        }
    }

    std::vector<SweepSample> take() const {
        std::vector<SweepSample> out;
        out.reserve(samples_.size());
        for (const auto& [f, v] : samples_) out.push_back({f, v});
        return out;
    }

private:
    const BondSystem& system_;
    double absorption_;
    double band_;
    std::vector<std::string>& warnings_;
    std::map<double, double> samples_;
};

}  // namespace

SweepTrace sweep(const BondSystem& system, double f_min_hz, double f_max_hz, double absorption,
                 const SweepOptions& options) {
    if (!(f_min_hz > 0.0) || !(f_max_hz > f_min_hz)) throw std::invalid_argument("sweep band is empty or inverted");
    if (!(absorption >= 0.0)) throw std::invalid_argument("absorption must be >= 0");

    SweepTrace trace;
    trace.band_min = f_min_hz;
    trace.band_max = f_max_hz;
    trace.absorption = absorption;

    // Resolve the fastest oscillation of the bond propagators, and the dip
    // width set by the absorption when it is small.
    double dk = (std::numbers::pi / 8.0) / system.length_trace();
    if (absorption > 0.0) dk = std::min(dk, 0.5 * absorption);
    const double band = f_max_hz - f_min_hz;
    const double k_span = frequency_to_wavenumber(f_max_hz) - frequency_to_wavenumber(f_min_hz);
    auto n = static_cast<std::size_t>(std::ceil(k_span / dk));
    n = std::clamp<std::size_t>(n, 16, options.max_samples / 4);
    trace.base_spacing = band / static_cast<double>(n);

    TraceBuilder builder(system, absorption, band, trace.warnings);
    for (std::size_t i = 0; i <= n; ++i) {
        builder.add(i == n ? f_max_hz : f_min_hz + static_cast<double>(i) * trace.base_spacing);
    }
    while (builder.refine(options.tolerance, options.max_samples)) {
    }
    builder.polish_minima(1e-7 * band, options.max_samples);
    while (builder.refine(options.tolerance, options.max_samples)) {
    }
    if (builder.size() >= options.max_samples) trace.warnings.push_back("sample cap reached during refinement");

    trace.samples = builder.take();
    trace.dips = detect_dips(trace.samples, options.prominence);
    return trace;
}

std::vector<Dip> detect_dips(const std::vector<SweepSample>& samples, double prominence) {
    std::vector<Dip> dips;
    const std::size_t n = samples.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double v = samples[i].modulus;
        if (!(v < samples[i - 1].modulus && v <= samples[i + 1].modulus)) continue;

        // Highest point on each side before the trace drops below v again.
        double left = v;
        for (std::size_t j = i; j-- > 0;) {
            if (samples[j].modulus < v) break;
            left = std::max(left, samples[j].modulus);
        }
        double right = v;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (samples[j].modulus < v) break;
            right = std::max(right, samples[j].modulus);
        }
        const double p = std::min(left, right) - v;
        if (p > prominence) dips.push_back({samples[i].frequency, 1.0 - v, p});
    }
    return dips;
}

std::string trace_csv(const SweepTrace& trace) {
    std::string out = "nu_hz,det_s_modulus\n";
    for (const auto& s : trace.samples) out += fmt::format("{:.6f},{:.12f}\n", s.frequency, s.modulus);
    return out;
}

std::string dips_csv(const std::vector<Dip>& dips) {
    std::string out = "nu_hz,depth\n";
    for (const auto& d : dips) out += fmt::format("{:.6f},{:.12f}\n", d.frequency, d.depth);
    return out;
}

}  // namespace qgraph
