#include "qgraph/resonance.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

#include <fmt/format.h>

namespace qgraph {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kMaxPhaseStep = kPi / 2.0;
constexpr std::size_t kMaxSamplesPerSide = std::size_t{1} << 20;
constexpr int kMaxNudges = 5;
constexpr double kNudgeFraction = 1e-6;
constexpr double kNewtonTolerance = 1e-12;
constexpr double kDedupRadius = 1e-9;
constexpr double kMinLeafSize = 1e-9;
constexpr double kResidualFactor = 1e-10;

struct Segment {
    double t0, t1;
    Complex f0, f1;
};

PhaseTrace trace_segment(const BondSystem& system, Complex from, Complex to, BoxSide side) {
    const Complex delta = to - from;
    const double len = std::abs(delta);
    PhaseTrace out;
    if (len == 0.0) return out;

    auto eval = [&](double t) {
        const Complex f = secular(system, from + t * delta);
        if (f == Complex{} || !std::isfinite(f.real()) || !std::isfinite(f.imag())) {
            throw BoundaryProximityError(side, "secular function vanishes on the contour");
        }
        ++out.samples;
        out.max_modulus = std::max(out.max_modulus, std::abs(f));
        return f;
    };

    // The secular function is an exponential polynomial with frequencies in
    // [0, sum of bond lengths]; the initial grid resolves that rate.
    const double rate = std::max(system.length_trace(), 1e-300);
    const auto initial = static_cast<std::size_t>(std::max(8.0, std::ceil(len * rate / (kPi / 8.0))));
    const double min_dt = 1e-10 * std::max(1.0, len) / len;

    std::vector<Segment> stack;
    std::vector<Complex> grid(initial + 1);
    for (std::size_t i = 0; i <= initial; ++i) grid[i] = eval(static_cast<double>(i) / initial);

    for (std::size_t i = 0; i < initial; ++i) {
        stack.push_back({static_cast<double>(i) / initial, static_cast<double>(i + 1) / initial, grid[i], grid[i + 1]});
        while (!stack.empty()) {
            Segment s = stack.back();
            stack.pop_back();
            const double step = std::arg(s.f1 / s.f0);
            if (std::abs(step) < kMaxPhaseStep) {
                out.phase += step;
                continue;
            }
            if (s.t1 - s.t0 < min_dt || out.samples > kMaxSamplesPerSide) {
                throw BoundaryProximityError(side, fmt::format("contour passes within {:.1e} of a zero",
                                                               (s.t1 - s.t0) * len));
            }
            const double tm = 0.5 * (s.t0 + s.t1);
            const Complex fm = eval(tm);
            stack.push_back({tm, s.t1, fm, s.f1});
            stack.push_back({s.t0, tm, s.f0, fm});
        }
    }
    return out;
}

struct Corners {
    Complex ll, lr, ur, ul;
};

Corners corners_of(const SearchBox& b) {
    return {{b.re_min, b.im_min}, {b.re_max, b.im_min}, {b.re_max, b.im_max}, {b.re_min, b.im_max}};
}

int winding_from_phase(double phase) {
    const double w = phase / (2.0 * kPi);
    const long n = std::lround(w);
    if (std::abs(w - static_cast<double>(n)) > 0.25 || n < 0) {
        throw SolverError(fmt::format("winding number {} is not a nonnegative integer", w));
    }
    return static_cast<int>(n);
}

void nudge(SearchBox& box, BoxSide side) {
    switch (side) {
    case BoxSide::Bottom: box.im_min -= kNudgeFraction * box.height(); break;
    case BoxSide::Top: box.im_max += kNudgeFraction * box.height(); break;
    case BoxSide::Left: box.re_min -= kNudgeFraction * box.width(); break;
    case BoxSide::Right: box.re_max += kNudgeFraction * box.width(); break;
    }
}

class Isolator {
public:
    Isolator(const BondSystem& system, double scale) : system_(system), scale_(scale) {}

    void isolate(const SearchBox& box, int count, bool split_re) {
        if (count == 0) return;
        if (count == 1) {
            if (auto k = newton(box)) {
                found_.push_back(make_resonance(system_, *k));
                return;
            }
        }
        if (std::max(box.width(), box.height()) < kMinLeafSize) {
            if (count == 1) {
                throw SolverError(fmt::format("Newton failed in leaf [{}, {}] x [{}, {}]", box.re_min, box.re_max,
                                              box.im_min, box.im_max));
            }
            const Complex center{0.5 * (box.re_min + box.re_max), 0.5 * (box.im_min + box.im_max)};
            found_.push_back(make_resonance(system_, center, count));
            return;
        }

        static constexpr std::array<double, 6> kFractions{0.5, 0.5 + 1.0 / 37, 0.5 - 1.0 / 41,
                                                          0.5 + 1.0 / 11, 0.5 - 1.0 / 13, 0.5 + 1.0 / 7};
        for (double frac : kFractions) {
            SearchBox lo = box, hi = box;
            if (split_re) {
                lo.re_max = hi.re_min = box.re_min + frac * box.width();
            } else {
                lo.im_max = hi.im_min = box.im_min + frac * box.height();
            }
            int n_lo = 0, n_hi = 0;
            try {
                n_lo = winding_count(system_, lo).count;
                n_hi = winding_count(system_, hi).count;
            } catch (const BoundaryProximityError&) {
                continue;
            } catch (const SolverError&) {
                continue;
            }
            if (n_lo + n_hi != count) continue;
            isolate(lo, n_lo, !split_re);
            isolate(hi, n_hi, !split_re);
            return;
        }
        throw SolverError(fmt::format("cannot subdivide box [{}, {}] x [{}, {}] holding {} zeros", box.re_min,
                                      box.re_max, box.im_min, box.im_max, count));
    }

    std::vector<Resonance> take() { return std::move(found_); }

private:
    std::optional<Complex> newton(const SearchBox& box) const {
        Complex z{0.5 * (box.re_min + box.re_max), 0.5 * (box.im_min + box.im_max)};
        const double roam = 0.5 * std::max(box.width(), box.height());
        double last_step = std::numeric_limits<double>::infinity();
        int growth = 0;
        for (int it = 0; it < 100; ++it) {
            const Complex f = secular(system_, z);
            if (f == Complex{}) {
                last_step = 0.0;
                break;
            }
            const Complex d = secular_derivative(system_, z);
            if (d == Complex{} || !std::isfinite(std::abs(d))) return std::nullopt;
            const Complex step = f / d;
            z -= step;
            if (!box.contains(z, roam)) return std::nullopt;
            const double size = std::abs(step);
            const double tol = std::max(kNewtonTolerance, 4.0 * std::numeric_limits<double>::epsilon() * std::abs(z));
            if (size < tol) {
                last_step = size;
                break;
            }
            growth = size > last_step ? growth + 1 : 0;
            if (growth >= 3) return std::nullopt;
            last_step = size;
        }
        if (last_step > 1e-9) return std::nullopt;
        if (!box.contains(z, kDedupRadius)) return std::nullopt;
        if (std::abs(secular(system_, z)) > kResidualFactor * scale_) return std::nullopt;
        return z;
    }

    const BondSystem& system_;
    double scale_;
    std::vector<Resonance> found_;
};

}  // namespace

SearchBox SearchBox::band(double f_min_hz, double f_max_hz, double depth) {
    return strip(frequency_to_wavenumber(f_min_hz), frequency_to_wavenumber(f_max_hz), depth);
}

bool SearchBox::contains(Complex k, double margin) const {
    return k.real() >= re_min - margin && k.real() <= re_max + margin && k.imag() >= im_min - margin &&
           k.imag() <= im_max + margin;
}

PhaseTrace phase_change(const BondSystem& system, Complex from, Complex to) {
    return trace_segment(system, from, to, BoxSide::Bottom);
}

BoxCount winding_count(const BondSystem& system, const SearchBox& box) {
    if (!box.valid()) throw std::invalid_argument("search box must have positive width and height");
    const auto c = corners_of(box);
    const std::array<std::pair<BoxSide, std::pair<Complex, Complex>>, 4> sides{{
        {BoxSide::Bottom, {c.ll, c.lr}},
        {BoxSide::Right, {c.lr, c.ur}},
        {BoxSide::Top, {c.ur, c.ul}},
        {BoxSide::Left, {c.ul, c.ll}},
    }};
    double phase = 0.0;
    double scale = 0.0;
    for (const auto& [side, ends] : sides) {
        const auto t = trace_segment(system, ends.first, ends.second, side);
        phase += t.phase;
        scale = std::max(scale, t.max_modulus);
    }
    return BoxCount{winding_from_phase(phase), box, scale};
}

BoxCount count_zeros_detailed(const BondSystem& system, const SearchBox& box) {
    SearchBox current = box;
    for (int attempt = 0;; ++attempt) {
        try {
            return winding_count(system, current);
        } catch (const BoundaryProximityError& e) {
            if (attempt >= kMaxNudges) throw;
            nudge(current, e.side());
        }
    }
}

int count_zeros(const BondSystem& system, const SearchBox& box) { return count_zeros_detailed(system, box).count; }

Resonance make_resonance(const BondSystem& system, Complex k, int multiplicity) {
    Resonance r;
    r.k = k;
    r.frequency = wavenumber_to_frequency(k.real());
    r.half_width = -wavenumber_to_frequency(k.imag());
    r.residual = std::abs(secular(system, k));
    r.multiplicity = multiplicity;
    return r;
}

ZeroSet find_zeros(const BondSystem& system, const SearchBox& box) {
    const auto root = count_zeros_detailed(system, box);
    Isolator isolator(system, root.boundary_scale);
    isolator.isolate(root.box, root.count, true);
    auto found = isolator.take();

    std::sort(found.begin(), found.end(), [](const Resonance& a, const Resonance& b) {
        if (a.k.real() != b.k.real()) return a.k.real() < b.k.real();
        return a.k.imag() < b.k.imag();
    });
    ZeroSet set;
    set.winding_total = root.count;
    set.box = root.box;
    set.boundary_scale = root.boundary_scale;
    for (const auto& r : found) {
        if (!set.zeros.empty() && std::abs(set.zeros.back().k - r.k) < kDedupRadius) {
            set.zeros.back().multiplicity += r.multiplicity;
            continue;
        }
        set.zeros.push_back(r);
    }
    int total = 0;
    for (const auto& r : set.zeros) total += r.multiplicity;
    if (total != root.count) {
        throw SolverError(fmt::format("located {} zeros but the winding number is {}", total, root.count));
    }
    return set;
}

std::vector<std::pair<double, int>> counting_function(const BondSystem& system, const std::vector<double>& r_values,
                                                      double depth) {
    if (!(depth > 0.0)) throw std::invalid_argument("strip depth must be positive");
    for (std::size_t i = 0; i < r_values.size(); ++i) {
        if (!(r_values[i] > 0.0) || (i > 0 && !(r_values[i] > r_values[i - 1]))) {
            throw std::invalid_argument("R values must be positive and strictly ascending");
        }
    }

    std::vector<std::pair<double, int>> result;
    std::vector<double> edges{kThresholdExclusion};  // vertical cut positions
    std::vector<std::size_t> index;                 // r_values index for each cut after the first
    for (std::size_t i = 0; i < r_values.size(); ++i) {
        if (r_values[i] > kThresholdExclusion) {
            edges.push_back(r_values[i]);
            index.push_back(i);
        }
    }
    for (double r : r_values) result.emplace_back(r, 0);
    if (edges.size() == 1) return result;

    double bottom = -depth;
    double top = 0.0;
    for (int attempt = 0;; ++attempt) {
        try {
            // Vertical cuts first; a cut too close to a zero moves right.
            std::vector<double> vertical(edges.size());
            for (std::size_t i = 0; i < edges.size(); ++i) {
                for (int n = 0;; ++n) {
                    try {
                        vertical[i] = trace_segment(system, {edges[i], bottom}, {edges[i], top}, BoxSide::Right).phase;
                        break;
                    } catch (const BoundaryProximityError&) {
                        if (n >= kMaxNudges) throw SolverError("cannot place counting cut away from zeros");
                        const double gap = i + 1 < edges.size() ? edges[i + 1] - edges[i] : edges[i] - edges[i - 1];
                        edges[i] += kNudgeFraction * gap;
                    }
                }
            }
            double bottom_sum = 0.0, top_sum = 0.0;
            for (std::size_t i = 1; i < edges.size(); ++i) {
                bottom_sum += trace_segment(system, {edges[i - 1], bottom}, {edges[i], bottom}, BoxSide::Bottom).phase;
                top_sum += trace_segment(system, {edges[i - 1], top}, {edges[i], top}, BoxSide::Top).phase;
                const double phase = bottom_sum + vertical[i] - top_sum - vertical[0];
                result[index[i - 1]].second = winding_from_phase(phase);
            }
            return result;
        } catch (const BoundaryProximityError& e) {
            if (attempt >= kMaxNudges) throw;
            if (e.side() == BoxSide::Top) top += kNudgeFraction * depth;
            else bottom -= kNudgeFraction * depth;
        }
    }
}

}  // namespace qgraph
