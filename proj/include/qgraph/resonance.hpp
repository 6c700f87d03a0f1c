#pragma once

// Zeros of the secular function in a rectangle of the complex k-plane.
//
// Counting uses the argument principle on the box boundary. Each side is
// sampled adaptively until consecutive phase increments stay below pi/2.
// Location bisects the box until every leaf holds at most one zero, then
// runs Newton from the leaf center.

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgraph/linalg.hpp"
#include "qgraph/scattering.hpp"

namespace qgraph {

/// Default strip depth in 1/m. Every fixture's band count is flat from
/// depth 5 upwards and the full R <= 400 counting function from depth 8.
inline constexpr double kDefaultStripDepth = 10.0;

/// Lower Re k edge used by counting_function. The secular function of most
/// graphs vanishes at the threshold k = 0, so counting strips start above it.
inline constexpr double kThresholdExclusion = 1e-3;

struct SearchBox {
    double re_min = 0.0;
    double re_max = 0.0;
    double im_min = 0.0;  // -depth
    double im_max = 0.0;  // 0, or slightly above after a nudge

    static SearchBox strip(double re_min, double re_max, double depth) { return {re_min, re_max, -depth, 0.0}; }
    static SearchBox band(double f_min_hz, double f_max_hz, double depth);

    double width() const { return re_max - re_min; }
    double height() const { return im_max - im_min; }
    bool contains(Complex k, double margin = 0.0) const;
    bool valid() const { return re_min < re_max && im_min < im_max; }
};

enum class BoxSide { Bottom = 0, Right = 1, Top = 2, Left = 3 };

/// The boundary passes too close to a zero for the phase to be resolved.
class BoundaryProximityError : public std::runtime_error {
public:
    BoundaryProximityError(BoxSide side, const std::string& what) : std::runtime_error(what), side_(side) {}
    BoxSide side() const { return side_; }

private:
    BoxSide side_;
};

/// Root isolation or refinement failed.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

/// Total phase change of the secular function along a straight segment.
struct PhaseTrace {
    double phase = 0.0;
    double max_modulus = 0.0;
    std::size_t samples = 0;
};

PhaseTrace phase_change(const BondSystem& system, Complex from, Complex to);

/// Winding number of the secular function around the box, without nudging.
struct BoxCount {
    int count = 0;
    SearchBox box;               // box actually used, after any nudges
    double boundary_scale = 0.0;  // max |secular| seen on the boundary
};

BoxCount winding_count(const BondSystem& system, const SearchBox& box);

/// Winding count with the nudge policy: an offending side moves outward by
/// 1e-6 of the box extent across it, at most 5 times.
BoxCount count_zeros_detailed(const BondSystem& system, const SearchBox& box);

int count_zeros(const BondSystem& system, const SearchBox& box);

struct Resonance {
    Complex k;
    double frequency = 0.0;   // Hz
    double half_width = 0.0;  // Hz, -c Im k / 2 pi
    double residual = 0.0;    // |secular(k)|
    int multiplicity = 1;
};

Resonance make_resonance(const BondSystem& system, Complex k, int multiplicity = 1);

struct ZeroSet {
    std::vector<Resonance> zeros;  // sorted by Re k, then Im k
    int winding_total = 0;
    SearchBox box;
    double boundary_scale = 0.0;

    std::size_t size() const { return zeros.size(); }
};

ZeroSet find_zeros(const BondSystem& system, const SearchBox& box);

/// Cumulative zero counts in [kThresholdExclusion, R] x [-depth, 0].
std::vector<std::pair<double, int>> counting_function(const BondSystem& system, const std::vector<double>& r_values,
                                                      double depth);

}  // namespace qgraph
