#pragma once

// Test-only reference computations, independent of the library's solver path.

#include <complex>
#include <random>

#include <Eigen/Dense>

#include "qgraph/graph.hpp"
#include "qgraph/linalg.hpp"

namespace oracle {

using qgraph::Complex;

/// Neumann interval: the 2x2 bond determinant expands to 1 - e^{2ikl}.
inline Complex neumann_interval_secular(Complex k, double length) {
    return 1.0 - std::exp(Complex{0.0, 2.0} * k * length);
}

inline Complex neumann_interval_secular_derivative(Complex k, double length) {
    return Complex{0.0, -2.0} * length * std::exp(Complex{0.0, 2.0} * k * length);
}

inline Eigen::MatrixXcd to_eigen(const qgraph::CMatrix& m) {
    Eigen::MatrixXcd out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
    return out;
}

/// Determinant by full-pivot LU, a different elimination from the library's.
inline Complex full_pivot_det(const qgraph::CMatrix& m) { return to_eigen(m).fullPivLu().determinant(); }

inline double smallest_singular_value(const qgraph::CMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    return svd.singularValues().minCoeff();
}

inline double largest_singular_value(const qgraph::CMatrix& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(to_eigen(m));
    return svd.singularValues().maxCoeff();
}

/// ||A - I||_F for A = M M^*.
inline double unitarity_defect(const qgraph::CMatrix& m) {
    auto e = to_eigen(m);
    return (e * e.adjoint() - Eigen::MatrixXcd::Identity(e.rows(), e.rows())).norm();
}

/// Connected graph: a random spanning tree plus extra edges (self-loops allowed),
/// lengths in [0.05, 0.5], a few leads on random vertices.
inline qgraph::MetricGraph random_graph(std::mt19937& rng, int vertices, int extra_edges, int leads) {
    std::uniform_real_distribution<double> len(0.05, 0.5);
    qgraph::MetricGraph g;
    for (int v = 1; v <= vertices; ++v) g.vertices.push_back(v);
    int id = 1;
    for (int v = 2; v <= vertices; ++v) {
        std::uniform_int_distribution<int> pick(1, v - 1);
        g.edges.push_back({id++, pick(rng), v, len(rng)});
    }
    std::uniform_int_distribution<int> any(1, vertices);
    for (int i = 0; i < extra_edges; ++i) g.edges.push_back({id++, any(rng), any(rng), len(rng)});
    for (int i = 0; i < leads; ++i) g.leads.push_back({i + 1, any(rng)});
    return g;
}

}  // namespace oracle
