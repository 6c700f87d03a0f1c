#include "qgraph/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

namespace qgraph {
namespace {

constexpr double kExponentLimit = 700.0;
constexpr double kSingularPivotRatio = 1e-14;

std::map<VertexId, int> total_degrees(const MetricGraph& graph) {
    std::map<VertexId, int> degree;
    for (const auto& e : graph.edges) {
        degree[e.a] += 1;
        degree[e.b] += 1;
    }
    for (const auto& l : graph.leads) degree[l.anchor] += 1;
    return degree;
}

}  // namespace

CMatrix vertex_scattering_matrix(int degree) {
    if (degree < 1) throw std::invalid_argument("vertex degree must be >= 1");
    CMatrix m(degree, degree);
    const double t = 2.0 / degree;
    for (int r = 0; r < degree; ++r)
        for (int c = 0; c < degree; ++c) m(r, c) = t - (r == c ? 1.0 : 0.0);
    return m;
}

BondSystem build_bond_system(const MetricGraph& graph) {
    require_valid(graph);

    BondSystem sys;
    const std::size_t n = graph.edges.size();
    const std::size_t nb = 2 * n;
    const std::size_t m = graph.leads.size();
    sys.edge_count_ = n;
    sys.bond_length_.resize(nb);
    sys.initial_.resize(nb);
    sys.terminal_.resize(nb);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& e = graph.edges[i];
        sys.bond_length_[i] = sys.bond_length_[n + i] = e.length;
        sys.initial_[i] = sys.terminal_[n + i] = e.a;
        sys.terminal_[i] = sys.initial_[n + i] = e.b;
    }
    for (const auto& l : graph.leads) sys.lead_anchor_.push_back(l.anchor);
    sys.max_length_ = *std::max_element(sys.bond_length_.begin(), sys.bond_length_.end());
    for (double l : sys.bond_length_) sys.length_trace_ += l;

    const auto degree = total_degrees(graph);
    auto transmission = [&](VertexId v) { return 2.0 / degree.at(v); };

    sys.sigma_ = CMatrix(nb, nb);
    for (std::size_t in = 0; in < nb; ++in) {
        const VertexId v = sys.terminal_[in];
        for (std::size_t out = 0; out < nb; ++out) {
            if (sys.initial_[out] != v) continue;
            sys.sigma_(out, in) = transmission(v) - (out == sys.reverse_bond(in) ? 1.0 : 0.0);
        }
    }

    sys.lead_in_ = CMatrix(nb, m);
    sys.lead_out_ = CMatrix(m, nb);
    sys.lead_reflect_ = CMatrix(m, m);
    for (std::size_t j = 0; j < m; ++j) {
        const VertexId v = sys.lead_anchor_[j];
        for (std::size_t b = 0; b < nb; ++b) {
            if (sys.initial_[b] == v) sys.lead_in_(b, j) = transmission(v);
            if (sys.terminal_[b] == v) sys.lead_out_(j, b) = transmission(v);
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (sys.lead_anchor_[i] == v) sys.lead_reflect_(i, j) = transmission(v) - (i == j ? 1.0 : 0.0);
        }
    }
    return sys;
}

std::vector<Complex> BondSystem::propagation(Complex k) const {
    if (!std::isfinite(k.real()) || !std::isfinite(k.imag())) throw OutOfRangeError("non-finite wavenumber");
    if (k.imag() * max_length_ < -kExponentLimit) {
        throw OutOfRangeError(fmt::format("Im k = {} overflows e^(ikl) for l = {}", k.imag(), max_length_));
    }
    std::vector<Complex> phase(bond_length_.size());
    const Complex i{0.0, 1.0};
    for (std::size_t b = 0; b < phase.size(); ++b) phase[b] = std::exp(i * k * bond_length_[b]);
    return phase;
}

CMatrix BondSystem::secular_matrix(Complex k) const {
    const auto phase = propagation(k);
    const std::size_t nb = bond_count();
    CMatrix m = CMatrix::identity(nb);
    for (std::size_t r = 0; r < nb; ++r)
        for (std::size_t c = 0; c < nb; ++c) m(r, c) -= phase[r] * sigma_(r, c);
    return m;
}

Complex secular(const BondSystem& system, Complex k) {
    return ComplexLU(system.secular_matrix(k)).determinant();
}

std::optional<Complex> secular_derivative_trace(const BondSystem& system, Complex k) {
    const auto phase = system.propagation(k);
    const std::size_t nb = system.bond_count();
    const auto& sigma = system.sigma();
    const auto& lengths = system.bond_lengths();

    CMatrix m = CMatrix::identity(nb);
    CMatrix dm(nb, nb);
    const Complex i{0.0, 1.0};
    for (std::size_t r = 0; r < nb; ++r)
        for (std::size_t c = 0; c < nb; ++c) {
            const Complex term = phase[r] * sigma(r, c);
            m(r, c) -= term;
            dm(r, c) = -i * lengths[r] * term;
        }
    ComplexLU lu(std::move(m));
    if (lu.singular() || lu.pivot_ratio() < kSingularPivotRatio) return std::nullopt;
    const CMatrix x = lu.solve(dm);
    Complex trace{};
    for (std::size_t d = 0; d < nb; ++d) trace += x(d, d);
    return lu.determinant() * trace;
}

Complex secular_derivative_fd(const BondSystem& system, Complex k) {
    const double h = 1e-7 * (1.0 + std::abs(k));
    return (secular(system, k + h) - secular(system, k - h)) / (2.0 * h);
}

Complex secular_derivative(const BondSystem& system, Complex k) {
    if (auto d = secular_derivative_trace(system, k)) return *d;
    return secular_derivative_fd(system, k);
}

CMatrix external_smatrix(const BondSystem& system, Complex k) {
    const auto phase = system.propagation(k);
    const std::size_t nb = system.bond_count();
    const auto& sigma = system.sigma();

    // a = Sigma e^{ikL} a + rho_BL c_in   =>   (I - Sigma e^{ikL}) a = rho_BL c_in
    CMatrix m = CMatrix::identity(nb);
    for (std::size_t r = 0; r < nb; ++r)
        for (std::size_t c = 0; c < nb; ++c) m(r, c) -= sigma(r, c) * phase[c];
    ComplexLU lu(std::move(m));
    if (lu.singular() || lu.pivot_ratio() < 1e-12) {
        throw NearResonanceError(fmt::format("bond system singular at k = ({}, {})", k.real(), k.imag()));
    }
    CMatrix amplitudes = lu.solve(system.lead_in());
    for (std::size_t r = 0; r < nb; ++r)
        for (std::size_t c = 0; c < amplitudes.cols(); ++c) amplitudes(r, c) *= phase[r];
    return system.lead_reflect() + system.lead_out() * amplitudes;
}

double det_smatrix_modulus(const BondSystem& system, double frequency_hz, double absorption) {
    const Complex k{frequency_to_wavenumber(frequency_hz), absorption};
    return std::abs(ComplexLU(external_smatrix(system, k)).determinant());
}

}  // namespace qgraph
