#pragma once

// Simulated two-port measurement: |det S(nu)| over a frequency band with an
// optional uniform absorption (a constant positive shift of Im k).

#include <string>
#include <vector>

#include "qgraph/scattering.hpp"

namespace qgraph {

/// Absorption used for figure-like traces, 1/m. Gives a median W1 dip depth
/// of about 0.5; see tests/test_sweep.cpp for the calibration scan.
inline constexpr double kDefaultAbsorption = 0.2;

/// Minimum dip prominence, in units of |det S|.
inline constexpr double kDefaultProminence = 0.05;

struct SweepSample {
    double frequency = 0.0;  // Hz
    double modulus = 0.0;    // |det S|
};

struct Dip {
    double frequency = 0.0;
    double depth = 0.0;       // 1 - |det S| at the minimum
    double prominence = 0.0;  // drop below the lower neighbouring maximum
};

struct SweepOptions {
    double tolerance = 0.2;  // max |det S| change between adjacent samples
    std::size_t max_samples = std::size_t{1} << 16;
    double prominence = kDefaultProminence;
};

struct SweepTrace {
    double band_min = 0.0;
    double band_max = 0.0;
    double base_spacing = 0.0;  // Hz, before refinement
    double absorption = 0.0;
    std::vector<SweepSample> samples;  // ascending frequency
    std::vector<Dip> dips;
    std::vector<std::string> warnings;
};

SweepTrace sweep(const BondSystem& system, double f_min_hz, double f_max_hz, double absorption,
                 const SweepOptions& options = {});

/// Local minima whose prominence exceeds the threshold, sorted by frequency.
std::vector<Dip> detect_dips(const std::vector<SweepSample>& samples, double prominence);

std::string trace_csv(const SweepTrace& trace);
std::string dips_csv(const std::vector<Dip>& dips);

}  // namespace qgraph
