#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qgraph/fixtures.hpp"
#include "qgraph/scattering.hpp"

using namespace qgraph;

namespace {

std::vector<MetricGraph> paper_networks() { return {fixtures::w1(), fixtures::nw1(), fixtures::w2(), fixtures::nw2()}; }

double rel_err(Complex a, Complex b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("vertex scattering matrices") {
    CHECK(vertex_scattering_matrix(1)(0, 0) == Complex{1.0});
    auto two = vertex_scattering_matrix(2);
    CHECK(two(0, 0) == Complex{0.0});
    CHECK(two(0, 1) == Complex{1.0});
    CHECK(two(1, 0) == Complex{1.0});
    auto three = vertex_scattering_matrix(3);
    CHECK(three(0, 0).real() == doctest::Approx(-1.0 / 3));
    CHECK(three(1, 2).real() == doctest::Approx(2.0 / 3));

    for (int d = 1; d <= 8; ++d) {
        auto m = vertex_scattering_matrix(d);
        CHECK(oracle::unitarity_defect(m) < 1e-14);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) {
                CHECK(m(r, c).imag() == 0.0);
                CHECK(m(r, c) == m(c, r));
            }
    }
    CHECK_THROWS(vertex_scattering_matrix(0));
}

TEST_CASE("bond system structure") {
    for (const auto& g : paper_networks()) {
        auto sys = build_bond_system(g);
        const std::size_t n = sys.edge_count();
        REQUIRE(n == 7);
        REQUIRE(sys.bond_count() == 14);
        REQUIRE(sys.lead_count() == 2);
        for (std::size_t i = 0; i < n; ++i) CHECK(sys.bond_lengths()[i] == sys.bond_lengths()[n + i]);
        CHECK(sys.length_trace() == doctest::Approx(2 * total_length(g)));

        for (std::size_t out = 0; out < 2 * n; ++out)
            for (std::size_t in = 0; in < 2 * n; ++in) {
                if (sys.terminal_vertex(in) != sys.initial_vertex(out)) CHECK(sys.sigma()(out, in) == Complex{});
            }
        // Open graph: bond block of unitary vertex matrices is a contraction.
        CHECK(oracle::largest_singular_value(sys.sigma()) <= 1.0 + 1e-12);
    }
}

TEST_CASE("full vertex matrices assembled from the blocks are unitary") {
    // [rho_LL rho_LB; rho_BL Sigma] acting on (lead, bond) channels is the
    // direct sum of vertex matrices up to propagation, so it must be unitary.
    for (const auto& g : paper_networks()) {
        auto sys = build_bond_system(g);
        const std::size_t m = sys.lead_count(), nb = sys.bond_count();
        CMatrix full(m + nb, m + nb);
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c) full(r, c) = sys.lead_reflect()(r, c);
            for (std::size_t c = 0; c < nb; ++c) full(r, m + c) = sys.lead_out()(r, c);
        }
        for (std::size_t r = 0; r < nb; ++r) {
            for (std::size_t c = 0; c < m; ++c) full(m + r, c) = sys.lead_in()(r, c);
            for (std::size_t c = 0; c < nb; ++c) full(m + r, m + c) = sys.sigma()(r, c);
        }
        CHECK(oracle::unitarity_defect(full) < 1e-13);
    }
}

TEST_CASE("compact Sigma is unitary") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 30; ++trial) {
        auto g = oracle::random_graph(rng, 2 + trial % 5, trial % 4, 0);
        auto sys = build_bond_system(g);
        CHECK(oracle::unitarity_defect(sys.sigma()) < 1e-12);
    }
    CHECK(oracle::unitarity_defect(build_bond_system(fixtures::neumann_interval(1.0)).sigma()) < 1e-15);
}

TEST_CASE("build rejects invalid graphs") {
    CHECK_THROWS_AS(build_bond_system(fixtures::neumann_interval(0.0)), GraphError);
}

TEST_CASE("secular function of the Neumann interval") {
    auto sys = build_bond_system(fixtures::neumann_interval(1.0));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> re(0.0, 50.0), im(-3.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        Complex k{re(rng), im(rng)};
        CHECK(std::abs(secular(sys, k) - oracle::neumann_interval_secular(k, 1.0)) < 1e-12 * std::exp(6.0));
        CHECK(rel_err(secular_derivative(sys, k), oracle::neumann_interval_secular_derivative(k, 1.0)) < 1e-10);
    }
    for (int n = 1; n <= 5; ++n) CHECK(std::abs(secular(sys, Complex{n * std::numbers::pi, 0.0})) < 1e-14);
}

TEST_CASE("lead interval: bond matrix is nilpotent and secular is identically 1") {
    auto sys = build_bond_system(fixtures::lead_interval(0.7));
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> re(-20.0, 60.0), im(-10.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        Complex k{re(rng), im(rng)};
        CHECK(std::abs(secular(sys, k) - 1.0) < 1e-12);
        CHECK(std::abs(secular_derivative(sys, k)) < 1e-12);
    }
}

TEST_CASE("secular matches an independent determinant and is exact at k = 0") {
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> re(0.0, 100.0), im(-8.0, 1.0);
    for (const auto& g : paper_networks()) {
        auto sys = build_bond_system(g);
        for (int i = 0; i < 40; ++i) {
            Complex k{re(rng), im(rng)};
            const Complex ref = oracle::full_pivot_det(sys.secular_matrix(k));
            CHECK(std::abs(secular(sys, k) - ref) <= 1e-11 * std::max(1.0, std::abs(ref)));
        }
        const Complex at_zero = oracle::full_pivot_det(CMatrix::identity(14) - sys.sigma());
        CHECK(std::abs(secular(sys, 0.0) - at_zero) < 1e-14);
    }
}

TEST_CASE("derivative: trace identity against central differences") {
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> re(1.0, 100.0), im(-5.0, 0.5);
    for (const auto& g : paper_networks()) {
        auto sys = build_bond_system(g);
        for (int i = 0; i < 40; ++i) {
            Complex k{re(rng), im(rng)};
            auto trace = secular_derivative_trace(sys, k);
            REQUIRE(trace);
            CHECK(rel_err(*trace, secular_derivative_fd(sys, k)) < 1e-6);
        }
    }
}

TEST_CASE("secular is entire: Cauchy reconstruction") {
    auto sys = build_bond_system(fixtures::w1());
    const Complex center{25.0, -1.0};
    const double radius = 2.0;
    const int n = 512;
    std::vector<Complex> nodes(n), values(n);
    double scale = 0.0;
    for (int j = 0; j < n; ++j) {
        nodes[j] = center + radius * std::polar(1.0, 2.0 * std::numbers::pi * j / n);
        values[j] = secular(sys, nodes[j]);
        scale = std::max(scale, std::abs(values[j]));
    }
    for (double x = -1.0; x <= 1.0; x += 0.25)
        for (double y = -1.0; y <= 1.0; y += 0.25) {
            const Complex z = center + Complex{x, y} * 0.7;
            // Trapezoid rule on the circle: f(z) = (1/n) sum f(w) w' / (w - z) with w' = w - c.
            Complex acc{};
            for (int j = 0; j < n; ++j) acc += values[j] * (nodes[j] - center) / (nodes[j] - z);
            acc /= static_cast<double>(n);
            CHECK(std::abs(acc - secular(sys, z)) < 1e-8 * scale);
        }
}

TEST_CASE("scaling covariance of the secular function") {
    auto sys = build_bond_system(fixtures::w1());
    auto twice = build_bond_system(fixtures::scaled(fixtures::w1(), 2.0));
    for (double re = 1.0; re < 60.0; re += 3.7) {
        Complex k{re, -0.8};
        CHECK(std::abs(secular(twice, k / 2.0) - secular(sys, k)) < 1e-10 * std::max(1.0, std::abs(secular(sys, k))));
    }
}

TEST_CASE("overflow guard") {
    auto sys = build_bond_system(fixtures::w1());
    CHECK_THROWS_AS(secular(sys, Complex{10.0, -701.0 / 0.225}), OutOfRangeError);
    CHECK_NOTHROW(secular(sys, Complex{10.0, -600.0 / 0.225}));
}

TEST_CASE("external S-matrix on the real axis is unitary and reciprocal") {
    for (const auto& g : paper_networks()) {
        auto sys = build_bond_system(g);
        for (double nu = 0.3e9; nu <= 2.2e9; nu += 0.0137e9) {
            auto s = external_smatrix(sys, frequency_to_wavenumber(nu));
            REQUIRE(s.rows() == 2);
            CHECK(oracle::unitarity_defect(s) < 1e-10);
            CHECK(std::abs(s(0, 1) - s(1, 0)) < 1e-12);
            CHECK(det_smatrix_modulus(sys, nu, 0.0) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    std::mt19937 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = oracle::random_graph(rng, 3 + trial % 4, 1 + trial % 3, 1 + trial % 3);
        auto sys = build_bond_system(g);
        auto s = external_smatrix(sys, Complex{7.3 + trial, 0.0});
        CHECK(s.rows() == g.leads.size());
        CHECK(oracle::unitarity_defect(s) < 1e-10);
    }
}

TEST_CASE("transmission interval is a pure delay line") {
    const double l = 0.37;
    auto sys = build_bond_system(fixtures::transmission_interval(l));
    for (double k = 0.5; k < 40.0; k += 1.3) {
        auto s = external_smatrix(sys, k);
        CHECK(std::abs(s(0, 0)) < 1e-14);
        CHECK(std::abs(s(1, 1)) < 1e-14);
        CHECK(std::abs(s(0, 1)) == doctest::Approx(1.0));
        CHECK(std::abs(s(0, 1) - std::exp(Complex{0.0, k * l})) < 1e-14);
    }
}

TEST_CASE("absorption lowers |det S| below one") {
    auto sys = build_bond_system(fixtures::w1());
    for (double nu = 0.3e9; nu <= 2.2e9; nu += 0.05e9) {
        const double v = det_smatrix_modulus(sys, nu, 0.2);
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("complex LU") {
    CMatrix a(3, 3);
    a(0, 0) = 0.0;
    a(0, 1) = Complex{1, 2};
    a(0, 2) = 3.0;
    a(1, 0) = 4.0;
    a(1, 1) = Complex{0, -1};
    a(1, 2) = 2.0;
    a(2, 0) = Complex{1, 1};
    a(2, 1) = 0.5;
    a(2, 2) = Complex{0, 3};
    ComplexLU lu(a);
    CHECK_FALSE(lu.singular());
    CHECK(std::abs(lu.determinant() - oracle::full_pivot_det(a)) < 1e-13);
    CMatrix b(3, 1);
    b(0, 0) = 1.0;
    b(1, 0) = Complex{0, 1};
    b(2, 0) = -2.0;
    auto x = lu.solve(b);
    auto ax = a * x;
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ax(i, 0) - b(i, 0)) < 1e-13);

    CMatrix s(2, 2);
    s(0, 0) = 1.0;
    s(0, 1) = 2.0;
    s(1, 0) = 2.0;
    s(1, 1) = 4.0;
    ComplexLU singular(s);
    CHECK(singular.singular());
    CHECK(singular.determinant() == Complex{});
    CHECK_THROWS(singular.solve(b));
}
