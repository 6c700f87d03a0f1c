#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "qgraph/cli.hpp"
#include "qgraph/fixtures.hpp"
#include "qgraph/graph_io.hpp"
#include "qgraph/sweep.hpp"

using namespace qgraph;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Result r;
    r.code = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::string fixture_file(const std::string& name) { return std::string(QGRAPH_FIXTURE_DIR) + "/" + name; }

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) out.push_back(line);
    return out;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class TempDir {
public:
    TempDir() {
        path_ = std::filesystem::temp_directory_path() / ("qgraph_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir() { std::filesystem::remove_all(path_); }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace

TEST_CASE("resonances lists one row per zero") {
    auto w1 = run({"resonances", "--fixture", "W1"});
    REQUIRE(w1.code == cli::kOk);
    auto rows = lines(w1.out);
    REQUIRE(rows.size() == 14);
    CHECK(rows[0] == "re_k_per_m,im_k_per_m,nu_ghz,width_mhz,residual");
    CHECK(rows[1].rfind("11.1085", 0) == 0);
    CHECK(std::is_sorted(rows.begin() + 1, rows.end(), [](const std::string& a, const std::string& b) {
        return std::stod(a.substr(a.find(',', a.find(',') + 1) + 1)) < std::stod(b.substr(b.find(',', b.find(',') + 1) + 1));
    }));

    auto nw2 = run({"resonances", "--fixture", "nW2"});
    CHECK(nw2.code == cli::kOk);
    CHECK(lines(nw2.out).size() == 13);
}

TEST_CASE("resonances of the one-lead interval is empty") {
    auto r = run({"resonances", "--graph", fixture_file("interval_lead.txt")});
    CHECK(r.code == cli::kOk);
    CHECK(lines(r.out).size() == 1);
}

TEST_CASE("classify rows") {
    auto w2 = run({"classify", "--fixture", "W2"});
    REQUIRE(w2.code == cli::kOk);
    auto rows = lines(w2.out);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0] == "graph,band_min_ghz,band_max_ghz,measured,weyl_pred,nonweyl_pred,slope,classification");
    CHECK(rows[1].rfind("W2,0.300,2.200,15,14.59,14.59,0.366", 0) == 0);
    CHECK(rows[1].ends_with(",Weyl"));
    CHECK(w2.err.empty());

    auto nw1 = run({"classify", "--fixture", "nW1"});
    REQUIRE(nw1.code == cli::kOk);
    CHECK(lines(nw1.out)[1].rfind("nW1,0.300,2.200,11,12.66,11.36,0.285", 0) == 0);
    CHECK(lines(nw1.out)[1].ends_with(",non-Weyl"));
    CHECK(nw1.err.find("balanced_vertex=1 edge=2 ell_s=0.103") != std::string::npos);
}

TEST_CASE("classify on a compact graph counts real eigenvalues") {
    auto r = run({"classify", "--graph", fixture_file("interval_neumann.txt")});
    REQUIRE(r.code == cli::kOk);
    CHECK(lines(r.out)[1].rfind("interval_neumann,0.300,2.200,12,", 0) == 0);
    CHECK(lines(r.out)[1].ends_with(",Weyl"));
}

TEST_CASE("classify reports an inconsistent slope with exit code 4") {
    auto r = run({"classify", "--graph", fixture_file("two_balanced.txt")});
    CHECK(r.code == cli::kInconsistentClassification);
    CHECK(r.err.find("fitted slope") != std::string::npos);
}

TEST_CASE("sweep") {
    SUBCASE("lossless trace is flat") {
        auto r = run({"sweep", "--fixture", "W1", "--absorption", "0"});
        REQUIRE(r.code == cli::kOk);
        auto rows = lines(r.out);
        REQUIRE(rows[0] == "nu_hz,det_s_modulus");
        std::size_t i = 1;
        for (; i < rows.size() && !rows[i].empty(); ++i) {
            CHECK(std::abs(std::stod(rows[i].substr(rows[i].find(',') + 1)) - 1.0) < 1e-10);
        }
        REQUIRE(i + 1 < rows.size());
        CHECK(rows[i + 1] == "nu_hz,depth");
        CHECK(rows.size() == i + 2);
    }
    SUBCASE("default absorption matches the library and writes both files") {
        TempDir dir;
        const auto out = dir / "nw1.csv";
        auto r = run({"sweep", "--fixture", "nW1", "--absorption", "default", "--out", out.string()});
        REQUIRE(r.code == cli::kOk);
        CHECK(r.out.empty());
        const auto expected =
            sweep(build_bond_system(fixtures::nw1()), 0.3e9, 2.2e9, kDefaultAbsorption);
        CHECK(read_file(out) == trace_csv(expected));
        CHECK(read_file(out.string() + ".dips.csv") == dips_csv(expected.dips));
        CHECK(r.err.find(std::to_string(expected.dips.size()) + " dips, 11 resonances in band") != std::string::npos);
    }
    SUBCASE("explicit dip path and prominence") {
        TempDir dir;
        const auto dips = dir / "d.csv";
        auto r = run({"sweep", "--fixture", "W2", "--absorption", "0.2", "--prominence", "0.3", "--dips-out",
                      dips.string()});
        REQUIRE(r.code == cli::kOk);
        auto t = sweep(build_bond_system(fixtures::w2()), 0.3e9, 2.2e9, 0.2, SweepOptions{0.2, 1 << 16, 0.3});
        CHECK(read_file(dips) == dips_csv(t.dips));
        CHECK(r.out == trace_csv(t));
    }
    SUBCASE("bad absorption") {
        CHECK(run({"sweep", "--fixture", "W1", "--absorption", "-1"}).code == cli::kInvalidInput);
        CHECK(run({"sweep", "--fixture", "W1", "--absorption", "lots"}).code == cli::kInvalidInput);
    }
}

TEST_CASE("cable cutoff warning") {
    TempDir dir;
    const auto path = dir / "wide.txt";
    {
        std::ofstream f(path);
        f << "[cable]\nr1 0.03\nr2 0.07\nepsilon 1\n[edges]\n1 1 2 0.3\n2 2 3 0.2\n3 3 1 0.4\n[leads]\n1 1\n2 2\n";
    }
    auto r = run({"resonances", "--graph", path.string()});
    CHECK(r.code == cli::kOk);
    CHECK(r.err.find("cutoff 0.954 GHz") != std::string::npos);
    auto quiet = run({"resonances", "--graph", path.string(), "--fmax-ghz", "0.9"});
    CHECK(quiet.err.empty());
}

TEST_CASE("count table") {
    auto r = run({"count", "--fixture", "W1", "--rmin", "10", "--rmax", "200", "--rstep", "10"});
    REQUIRE(r.code == cli::kOk);
    auto rows = lines(r.out);
    REQUIRE(rows.size() == 21);
    CHECK(rows[0] == "r_per_m,count");
    CHECK(rows[1].rfind("10.000000,", 0) == 0);
    CHECK(r.err.find("slope=") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == cli::kInvalidInput);
    CHECK(run({"resonances"}).code == cli::kInvalidInput);
    CHECK(run({"resonances", "--fixture", "W3"}).code == cli::kInvalidInput);
    CHECK(run({"resonances", "--fixture", "W1", "--graph", fixture_file("nw1.txt")}).code == cli::kInvalidInput);
    CHECK(run({"resonances", "--graph", "/nonexistent.txt"}).code == cli::kInvalidInput);
    CHECK(run({"resonances", "--fixture", "W1", "--fmin-ghz", "2", "--fmax-ghz", "1"}).code == cli::kInvalidInput);
    CHECK(run({"resonances", "--fixture", "W1", "--bogus"}).code == cli::kInvalidInput);
    CHECK(run({"count", "--fixture", "W1", "--rmin", "5", "--rmax", "1"}).code == cli::kInvalidInput);

    TempDir dir;
    const auto bad = dir / "bad.txt";
    {
        std::ofstream f(bad);
        f << "[edges]\n1 1 2 -0.5\n";
    }
    auto r = run({"resonances", "--graph", bad.string()});
    CHECK(r.code == cli::kInvalidInput);
    CHECK(r.err.find("non-positive length") != std::string::npos);

    // A strip this deep overflows the bond propagators.
    auto deep = run({"resonances", "--fixture", "W1", "--depth", "5000"});
    CHECK(deep.code == cli::kSolverFailure);
    CHECK(deep.err.find("solver error") != std::string::npos);

    CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("file fixtures agree with the built-in networks") {
    auto from_file = run({"resonances", "--graph", fixture_file("nw1.txt")});
    auto built_in = run({"resonances", "--fixture", "nW1"});
    CHECK(from_file.out == built_in.out);

    TempDir dir;
    const auto path = dir / "w2.txt";
    {
        std::ofstream f(path);
        write_graph_spec(f, *fixtures::by_name("W2"));
    }
    CHECK(run({"resonances", "--graph", path.string()}).out == run({"resonances", "--fixture", "W2"}).out);
}

TEST_CASE("output is deterministic") {
    auto a = run({"resonances", "--fixture", "nW2"});
    auto b = run({"resonances", "--fixture", "nW2"});
    CHECK(a.out == b.out);
    TempDir dir;
    const auto out = dir / "r.csv";
    run({"resonances", "--fixture", "nW2", "--out", out.string()});
    CHECK(read_file(out) == a.out);
}
