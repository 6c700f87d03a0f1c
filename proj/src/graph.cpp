#include "qgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <set>

#include <fmt/format.h>

namespace qgraph {

std::string ValidationResult::summary() const {
    std::string out;
    for (const auto& p : problems) {
        if (!out.empty()) out += "; ";
        out += p;
    }
    return out;
}

ValidationResult validate(const MetricGraph& graph) {
    ValidationResult result;
    auto& problems = result.problems;

    const std::set<VertexId> known(graph.vertices.begin(), graph.vertices.end());
    if (known.size() != graph.vertices.size()) problems.push_back("duplicate vertex identifiers");
    if (graph.edges.empty()) problems.push_back("graph has no internal edges");

    std::set<int> edge_ids;
    for (const auto& e : graph.edges) {
        if (!edge_ids.insert(e.id).second) problems.push_back(fmt::format("duplicate edge id {}", e.id));
        if (!known.contains(e.a) || !known.contains(e.b)) {
            problems.push_back(fmt::format("edge {} references unknown vertex ({}, {})", e.id, e.a, e.b));
        }
        if (!(e.length > 0.0) || !std::isfinite(e.length)) {
            problems.push_back(fmt::format("edge {} has non-positive length {}", e.id, e.length));
        }
    }
    std::set<int> lead_ids;
    for (const auto& l : graph.leads) {
        if (!lead_ids.insert(l.id).second) problems.push_back(fmt::format("duplicate lead id {}", l.id));
        if (!known.contains(l.anchor)) {
            problems.push_back(fmt::format("lead {} anchored at unknown vertex {}", l.id, l.anchor));
        }
    }
    if (graph.cable && !graph.cable->valid()) problems.push_back("invalid cable parameters");

    // Connectivity of the internal part, by union-find over known vertices.
    if (!graph.vertices.empty()) {
        std::map<VertexId, VertexId> parent;
        for (auto v : graph.vertices) parent[v] = v;
        auto find = [&](VertexId v) {
            while (parent[v] != v) v = parent[v] = parent[parent[v]];
            return v;
        };
        for (const auto& e : graph.edges) {
            if (known.contains(e.a) && known.contains(e.b)) parent[find(e.a)] = find(e.b);
        }
        std::set<VertexId> roots;
        for (auto v : graph.vertices) roots.insert(find(v));
        if (roots.size() > 1) {
            problems.push_back(fmt::format("internal edges form {} disconnected components", roots.size()));
        }
    }
    return result;
}

void require_valid(const MetricGraph& graph) {
    auto result = validate(graph);
    if (!result) throw GraphError("invalid graph: " + result.summary());
}

double total_length(const MetricGraph& graph) {
    // Summed in edge-id order so the result does not depend on storage order.
    std::vector<const Edge*> sorted;
    sorted.reserve(graph.edges.size());
    for (const auto& e : graph.edges) sorted.push_back(&e);
    std::sort(sorted.begin(), sorted.end(), [](const Edge* x, const Edge* y) { return x->id < y->id; });
    double sum = 0.0;
    for (const Edge* e : sorted) sum += e->length;
    return sum;
}

BalanceReport balance_report(const MetricGraph& graph) {
    BalanceReport report;
    std::map<VertexId, VertexBalance> counts;
    for (auto v : graph.vertices) counts[v].vertex = v;
    for (const auto& e : graph.edges) {
        counts[e.a].internal_degree += 1;
        counts[e.b].internal_degree += 1;
    }
    for (const auto& l : graph.leads) counts[l.anchor].lead_count += 1;

    for (auto v : graph.vertices) {
        auto rec = counts[v];
        rec.vertex = v;
        rec.balanced = rec.lead_count > 0 && rec.internal_degree == rec.lead_count;
        report.vertices.push_back(rec);
        if (!rec.balanced) continue;

        std::optional<BalancedEdge> best;
        for (const auto& e : graph.edges) {
            if (e.a != v && e.b != v) continue;
            bool better = !best || e.length < best->length ||
                          (e.length == best->length && e.id < best->edge_id);
            if (better) best = BalancedEdge{v, e.id, e.length};
        }
        if (!best) continue;
        report.per_vertex_shortest.push_back(*best);
        auto& global = report.shortest_balanced_edge;
        if (!global || best->length < global->length ||
            (best->length == global->length && best->edge_id < global->edge_id)) {
            global = best;
        }
    }
    return report;
}

EffectiveSize effective_size(const MetricGraph& graph) {
    const double total = total_length(graph);
    const auto report = balance_report(graph);
    EffectiveSize size{total, false};
    if (report.balanced_count() == 1) {
        size.value = total - report.per_vertex_shortest.front().length;
    } else if (report.balanced_count() > 1) {
        double removed = 0.0;
        for (const auto& b : report.per_vertex_shortest) removed += b.length;
        size.value = total - removed;
        size.heuristic = true;
    }
    return size;
}

double optical_length(double geometric_length, const CableSpec& cable) {
    if (!(geometric_length > 0.0)) throw GraphError("geometric length must be positive");
    if (!(cable.dielectric_constant >= 1.0)) throw GraphError("dielectric constant must be >= 1");
    return geometric_length * std::sqrt(cable.dielectric_constant);
}

double cutoff_frequency(const CableSpec& cable) {
    if (!cable.valid()) throw GraphError("invalid cable parameters");
    return kSpeedOfLight /
           (std::numbers::pi * (cable.inner_radius + cable.outer_radius) * std::sqrt(cable.dielectric_constant));
}

}  // namespace qgraph
