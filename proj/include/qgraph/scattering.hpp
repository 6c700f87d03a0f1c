#pragma once

// Directed-bond description of an open metric graph and the quantities built
// on it: the secular function det(I - e^{ikL} Sigma), its k-derivative, and
// the lead-to-lead scattering matrix.
//
// Bond i (0-based, i < N) runs along edge i from its `a` end to its `b` end;
// bond N+i is the reverse. A wave that leaves its initial vertex with
// amplitude 1 arrives at the terminal vertex with amplitude e^{ik l}.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qgraph/graph.hpp"
#include "qgraph/linalg.hpp"

namespace qgraph {

/// Raised when e^{ikl} would overflow (Im k * max l < -700).
class OutOfRangeError : public std::runtime_error {
public:
    explicit OutOfRangeError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when the bond amplitude system is numerically singular, i.e. k sits
/// on a resonance.
class NearResonanceError : public std::runtime_error {
public:
    explicit NearResonanceError(const std::string& what) : std::runtime_error(what) {}
};

/// Standard-coupling vertex scattering matrix for d channels: 2/d - delta.
CMatrix vertex_scattering_matrix(int degree);

class BondSystem {
public:
    std::size_t edge_count() const { return edge_count_; }
    std::size_t bond_count() const { return 2 * edge_count_; }
    std::size_t lead_count() const { return lead_anchor_.size(); }

    const std::vector<double>& bond_lengths() const { return bond_length_; }
    double max_length() const { return max_length_; }
    /// Sum over all bonds, i.e. twice the total graph length.
    double length_trace() const { return length_trace_; }

    VertexId initial_vertex(std::size_t bond) const { return initial_[bond]; }
    VertexId terminal_vertex(std::size_t bond) const { return terminal_[bond]; }
    std::size_t reverse_bond(std::size_t bond) const {
        return bond < edge_count_ ? bond + edge_count_ : bond - edge_count_;
    }

    /// Bond-to-bond scattering, indexed (outgoing bond, incoming bond).
    const CMatrix& sigma() const { return sigma_; }
    /// Incoming lead amplitude -> outgoing bond amplitude, 2N x M.
    const CMatrix& lead_in() const { return lead_in_; }
    /// Arriving bond amplitude -> outgoing lead amplitude, M x 2N.
    const CMatrix& lead_out() const { return lead_out_; }
    /// Lead-to-lead reflection at shared anchors, M x M.
    const CMatrix& lead_reflect() const { return lead_reflect_; }

    /// e^{ik l_b} per bond; throws OutOfRangeError on overflow.
    std::vector<Complex> propagation(Complex k) const;

    /// I - e^{ikL} Sigma.
    CMatrix secular_matrix(Complex k) const;

    friend BondSystem build_bond_system(const MetricGraph& graph);

private:
    std::size_t edge_count_ = 0;
    std::vector<double> bond_length_;
    std::vector<VertexId> initial_;
    std::vector<VertexId> terminal_;
    std::vector<VertexId> lead_anchor_;
    double max_length_ = 0.0;
    double length_trace_ = 0.0;
    CMatrix sigma_;
    CMatrix lead_in_;
    CMatrix lead_out_;
    CMatrix lead_reflect_;
};

/// Validates the graph (throws GraphError) and assembles the bond system.
BondSystem build_bond_system(const MetricGraph& graph);

/// det(I - e^{ikL} Sigma) by LU with partial pivoting.
Complex secular(const BondSystem& system, Complex k);

/// det(M) * tr(M^{-1} M'), or nullopt when M is exactly singular.
std::optional<Complex> secular_derivative_trace(const BondSystem& system, Complex k);

/// Central difference with step 1e-7 (1 + |k|).
Complex secular_derivative_fd(const BondSystem& system, Complex k);

/// Trace identity, falling back to the central difference at a zero.
Complex secular_derivative(const BondSystem& system, Complex k);

/// Lead-to-lead scattering matrix, M x M. Throws NearResonanceError on a pole.
CMatrix external_smatrix(const BondSystem& system, Complex k);

/// |det S| at k = 2 pi nu / c + i absorption.
double det_smatrix_modulus(const BondSystem& system, double frequency_hz, double absorption);

}  // namespace qgraph
