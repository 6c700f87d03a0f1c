#pragma once

// The four measured networks plus small oracle graphs.
//
// All networks share one topology on vertices 1..5:
//   e1=(1,4) e2=(1,2) e3=(2,3) e4=(4,5) e5=(3,4) e6=(3,5) e7=(2,5)
// Weyl variants attach one lead at vertex 1 and one at vertex 3. Non-Weyl
// variants attach both leads at vertex 1, which has internal degree 2 and is
// therefore balanced.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph::fixtures {

MetricGraph w1();
MetricGraph nw1();
MetricGraph w2();
MetricGraph nw2();

/// Looks up "W1", "nW1", "W2" or "nW2".
std::optional<MetricGraph> by_name(std::string_view name);
std::vector<std::string> names();

/// Expected resonance count in 0.3-2.2 GHz for each named network.
int expected_band_count(std::string_view name);

/// Single edge of the given length, no leads (Neumann ends).
MetricGraph neumann_interval(double length);

/// Single edge with one lead at vertex 1; vertex 2 is a Neumann end.
MetricGraph lead_interval(double length);

/// Single edge with a lead at each end.
MetricGraph transmission_interval(double length);

/// Every edge length multiplied by `factor`.
MetricGraph scaled(const MetricGraph& graph, double factor);

}  // namespace qgraph::fixtures
