#include "qgraph/graph_io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <vector>

#include <fmt/format.h>

namespace qgraph {
namespace {

enum class Section { None, Edges, Leads, Cable };

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cleaned = line;
    std::replace(cleaned.begin(), cleaned.end(), '=', ' ');
    std::istringstream ss(cleaned);
    for (std::string f; ss >> f;) fields.push_back(f);
    return fields;
}

[[noreturn]] void fail(int line_no, const std::string& msg) {
    throw GraphError(fmt::format("graph spec line {}: {}", line_no, msg));
}

template <typename T>
T parse_number(const std::string& s, int line_no) {
    T value{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail(line_no, "bad number '" + s + "'");
    return value;
}

}  // namespace

MetricGraph parse_graph_spec(std::istream& in) {
    MetricGraph graph;
    CableSpec cable;
    bool have_cable = false;
    bool have_r1 = false, have_r2 = false, have_eps = false;
    Section section = Section::None;

    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        auto fields = split_fields(line);
        if (fields.empty()) continue;

        if (fields.size() == 1 && fields[0].front() == '[') {
            const auto& tag = fields[0];
            if (tag == "[edges]") section = Section::Edges;
            else if (tag == "[leads]") section = Section::Leads;
            else if (tag == "[cable]") {
                section = Section::Cable;
                have_cable = true;
            } else fail(line_no, "unknown section " + tag);
            continue;
        }

        switch (section) {
        case Section::None:
            fail(line_no, "data outside of a section");
        case Section::Edges:
            if (fields.size() != 4) fail(line_no, "edge needs: id vertex_a vertex_b length");
            graph.edges.push_back(Edge{parse_number<int>(fields[0], line_no), parse_number<int>(fields[1], line_no),
                                       parse_number<int>(fields[2], line_no),
                                       parse_number<double>(fields[3], line_no)});
            break;
        case Section::Leads:
            if (fields.size() != 2) fail(line_no, "lead needs: id vertex");
            graph.leads.push_back(Lead{parse_number<int>(fields[0], line_no), parse_number<int>(fields[1], line_no)});
            break;
        case Section::Cable: {
            if (fields.size() != 2) fail(line_no, "cable entry needs: key value");
            double v = parse_number<double>(fields[1], line_no);
            if (fields[0] == "r1") { cable.inner_radius = v; have_r1 = true; }
            else if (fields[0] == "r2") { cable.outer_radius = v; have_r2 = true; }
            else if (fields[0] == "epsilon") { cable.dielectric_constant = v; have_eps = true; }
            else fail(line_no, "unknown cable key " + fields[0]);
            break;
        }
        }
    }

    std::set<VertexId> vertices;
    for (const auto& e : graph.edges) {
        vertices.insert(e.a);
        vertices.insert(e.b);
    }
    for (const auto& l : graph.leads) vertices.insert(l.anchor);
    graph.vertices.assign(vertices.begin(), vertices.end());

    if (have_cable) {
        if (!(have_r1 && have_r2 && have_eps)) throw GraphError("graph spec: [cable] needs r1, r2 and epsilon");
        if (!cable.valid()) throw GraphError("graph spec: invalid cable parameters");
        for (auto& e : graph.edges) {
            if (e.length > 0.0) e.length = optical_length(e.length, cable);
        }
        graph.cable = cable;
    }
    return graph;
}

MetricGraph parse_graph_spec(const std::string& text) {
    std::istringstream in(text);
    return parse_graph_spec(in);
}

MetricGraph load_graph_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GraphError("cannot open graph spec " + path);
    return parse_graph_spec(in);
}

void write_graph_spec(std::ostream& out, const MetricGraph& graph) {
    out << "[edges]\n";
    for (const auto& e : graph.edges) out << fmt::format("{} {} {} {}\n", e.id, e.a, e.b, e.length);
    out << "[leads]\n";
    for (const auto& l : graph.leads) out << fmt::format("{} {}\n", l.id, l.anchor);
}

std::string format_graph_spec(const MetricGraph& graph) {
    std::ostringstream out;
    write_graph_spec(out, graph);
    return out.str();
}

}  // namespace qgraph
