#pragma once

// Metric graph model with standard (Kirchhoff) coupling at every vertex.
//
// Edges carry optical lengths in meters. Leads are semi-infinite edges
// anchored at a vertex. A graph without leads is compact; all open-graph
// operations expect at least one lead.

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qgraph {

/// Speed of light in vacuum, m/s (exact).
inline constexpr double kSpeedOfLight = 299792458.0;

using VertexId = int;

struct Edge {
    int id = 0;  // 1-based
    VertexId a = 0;
    VertexId b = 0;
    double length = 0.0;  // optical length, m
};

struct Lead {
    int id = 0;
    VertexId anchor = 0;
};

/// Coaxial cable parameters; radii in meters.
struct CableSpec {
    double inner_radius = 0.0;
    double outer_radius = 0.0;
    double dielectric_constant = 1.0;

    bool valid() const {
        return inner_radius > 0.0 && inner_radius < outer_radius && dielectric_constant >= 1.0;
    }
};

struct MetricGraph {
    std::vector<VertexId> vertices;
    std::vector<Edge> edges;
    std::vector<Lead> leads;
    /// Cable the graph was built from, if any. Used for cutoff warnings only.
    std::optional<CableSpec> cable;

    bool is_compact() const { return leads.empty(); }
};

/// Thrown by operations that require a valid graph and are handed an invalid one.
class GraphError : public std::runtime_error {
public:
    explicit GraphError(const std::string& what) : std::runtime_error(what) {}
};

struct ValidationResult {
    std::vector<std::string> problems;

    bool ok() const { return problems.empty(); }
    explicit operator bool() const { return ok(); }
    std::string summary() const;
};

ValidationResult validate(const MetricGraph& graph);

/// Throws GraphError listing every problem when the graph is invalid.
void require_valid(const MetricGraph& graph);

/// Sum of internal edge lengths; leads contribute nothing.
double total_length(const MetricGraph& graph);

struct VertexBalance {
    VertexId vertex = 0;
    int internal_degree = 0;  // self-loops count twice
    int lead_count = 0;
    bool balanced = false;
};

struct BalancedEdge {
    VertexId vertex = 0;
    int edge_id = 0;
    double length = 0.0;
};

struct BalanceReport {
    std::vector<VertexBalance> vertices;  // in graph vertex order
    /// Shortest edge emanating from any balanced vertex (ties: smallest edge id).
    std::optional<BalancedEdge> shortest_balanced_edge;
    /// Shortest emanating edge for each balanced vertex, in vertex order.
    std::vector<BalancedEdge> per_vertex_shortest;

    int balanced_count() const { return static_cast<int>(per_vertex_shortest.size()); }
    bool has_balanced_vertex() const { return !per_vertex_shortest.empty(); }
};

BalanceReport balance_report(const MetricGraph& graph);

struct EffectiveSize {
    double value = 0.0;  // m
    /// Set when more than one balanced vertex exists. The subtraction of every
    /// per-vertex shortest edge is then an extrapolation of the single-vertex law.
    bool heuristic = false;
};

/// L - l_s for one balanced vertex, L when there is none.
EffectiveSize effective_size(const MetricGraph& graph);

/// Geometric cable length converted to the length seen by the wave.
double optical_length(double geometric_length, const CableSpec& cable);

/// Cutoff of the first higher (TE11) coaxial mode, Hz.
double cutoff_frequency(const CableSpec& cable);

inline double frequency_to_wavenumber(double frequency_hz) {
    return 2.0 * std::numbers::pi * frequency_hz / kSpeedOfLight;
}

inline double wavenumber_to_frequency(double wavenumber) {
    return kSpeedOfLight * wavenumber / (2.0 * std::numbers::pi);
}

}  // namespace qgraph
