#include "qgraph/fixtures.hpp"

#include <array>
#include <stdexcept>

namespace qgraph::fixtures {
namespace {

constexpr std::array<std::pair<int, int>, 7> kTopology{{{1, 4}, {1, 2}, {2, 3}, {4, 5}, {3, 4}, {3, 5}, {2, 5}}};

// Optical edge lengths, m.
constexpr std::array<double, 7> kLengths1{0.127, 0.103, 0.130, 0.225, 0.116, 0.171, 0.127};
constexpr std::array<double, 7> kLengths2{0.203, 0.179, 0.130, 0.225, 0.116, 0.171, 0.127};

MetricGraph network(const std::array<double, 7>& lengths, VertexId lead1, VertexId lead2) {
    MetricGraph g;
    g.vertices = {1, 2, 3, 4, 5};
    for (std::size_t i = 0; i < kTopology.size(); ++i) {
        g.edges.push_back(Edge{static_cast<int>(i + 1), kTopology[i].first, kTopology[i].second, lengths[i]});
    }
    g.leads = {Lead{1, lead1}, Lead{2, lead2}};
    return g;
}

}  // namespace

MetricGraph w1() { return network(kLengths1, 1, 3); }
MetricGraph nw1() { return network(kLengths1, 1, 1); }
MetricGraph w2() { return network(kLengths2, 1, 3); }
MetricGraph nw2() { return network(kLengths2, 1, 1); }

std::optional<MetricGraph> by_name(std::string_view name) {
    if (name == "W1") return w1();
    if (name == "nW1") return nw1();
    if (name == "W2") return w2();
    if (name == "nW2") return nw2();
    return std::nullopt;
}

std::vector<std::string> names() { return {"W1", "nW1", "W2", "nW2"}; }

int expected_band_count(std::string_view name) {
    if (name == "W1") return 13;
    if (name == "nW1") return 11;
    if (name == "W2") return 15;
    if (name == "nW2") return 12;
    throw std::invalid_argument("unknown fixture");
}

MetricGraph neumann_interval(double length) {
    MetricGraph g;
    g.vertices = {1, 2};
    g.edges = {Edge{1, 1, 2, length}};
    return g;
}

MetricGraph lead_interval(double length) {
    auto g = neumann_interval(length);
    g.leads = {Lead{1, 1}};
    return g;
}

MetricGraph transmission_interval(double length) {
    auto g = neumann_interval(length);
    g.leads = {Lead{1, 1}, Lead{2, 2}};
    return g;
}

MetricGraph scaled(const MetricGraph& graph, double factor) {
    auto g = graph;
    for (auto& e : g.edges) e.length *= factor;
    return g;
}

}  // namespace qgraph::fixtures
