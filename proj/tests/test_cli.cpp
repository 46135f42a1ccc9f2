#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "commands.hpp"
#include "config.hpp"
#include "verify.hpp"

using namespace antisym::cli;

namespace {
RunConfig make(const std::string& cmd, const json& given) {
    RunConfig rc;
    rc.command = cmd;
    rc.params = merge_checked(defaults_for(cmd), given, "");
    return rc;
}

std::vector<std::vector<std::string>> rows(const std::string& csv) {
    std::vector<std::vector<std::string>> out;
    std::istringstream in(csv);
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            header_seen = true;
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        out.push_back(cells);
    }
    return out;
}
}  // namespace

TEST_CASE("unknown keys and wrong types are rejected") {
    CHECK_THROWS_AS(merge_checked(defaults_for("pair-exact"), json{{"bogus", 1}}, ""), ConfigError);
    CHECK_THROWS_AS(merge_checked(defaults_for("pair-exact"), json{{"p", "x"}}, ""), ConfigError);
    CHECK_THROWS_AS(merge_checked(defaults_for("pair-mc"), json{{"n_replicas", 1.5}}, ""), ConfigError);
    CHECK_THROWS_AS(merge_checked(defaults_for("continuum"), json{{"grid", {{"nope", 1}}}}, ""), ConfigError);
    CHECK_THROWS_AS(defaults_for("plot"), ConfigError);
    const json m = merge_checked(defaults_for("pair-exact"), json{{"p", 0.3}, {"F", 2}}, "");
    CHECK(m["p"] == json::array({0.3}));
    CHECK(m["F"].get<double>() == 2.0);
}

TEST_CASE("overrides layer on top of defaults") {
    Overrides ov;
    ov.seed = 42;
    ov.threads = 2;
    ov.assignments = {"tau=[0]", "grid.enabled=true"};
    CHECK_THROWS_AS(load_config("pair-exact", ov), ConfigError);  // grid is not a pair-exact key
    ov.assignments = {"tau=[0]"};
    const auto rc = load_config("pair-exact", ov);
    CHECK(rc.seed() == 42);
    CHECK(rc.threads == 2);
    CHECK(rc.list("tau") == std::vector<double>{0.0});
}

TEST_CASE("thread count from the environment") {
    setenv("ANTISYM_THREADS", "3", 1);
    CHECK(default_threads() == 3);
    setenv("ANTISYM_THREADS", "zero", 1);
    CHECK_THROWS_AS(default_threads(), ConfigError);
    unsetenv("ANTISYM_THREADS");
    CHECK(default_threads() >= 1);
}

TEST_CASE("header echoes version, parameters and seed") {
    const auto rc = make("pair-exact", {{"seed", 77}});
    const std::string h = header(rc);
    CHECK(h.find(kVersion) != std::string::npos);
    CHECK(h.find("# seed 77") != std::string::npos);
    CHECK(h.find(rc.params.dump()) != std::string::npos);
}

TEST_CASE("pair-exact: tau = 0 row and non-negative msd") {
    std::ostringstream out;
    CHECK(run_command(make("pair-exact", {{"tau", {0.0}}, {"p", 0.4}}), out) == 0);
    const auto r = rows(out.str());
    REQUIRE(r.size() == 1);
    CHECK(std::stod(r[0][2]) == 1.0);
    CHECK(std::stod(r[0][4]) == 0.0);
    CHECK(r[0][5] == "nan");

    std::ostringstream sweep;
    run_command(make("pair-exact", {{"n_tau", 12}}), sweep);
    const auto s = rows(sweep.str());
    CHECK(s.size() == 5 * 12);
    for (const auto& row : s) CHECK(std::stod(row[4]) >= 0.0);
}

TEST_CASE("pair-mc: columns and reproducibility") {
    const auto rc = make("pair-mc", {{"n_replicas", 5000}, {"n_tau", 3}, {"p", 0.5}});
    std::ostringstream a, b;
    run_command(rc, a);
    run_command(rc, b);
    CHECK(a.str() == b.str());
    const auto r = rows(a.str());
    REQUIRE(r.size() == 3);
    CHECK(r[0].size() == 10);
    CHECK(r[0][8] == "5000");
}

TEST_CASE("territory: failure probability column is exact") {
    const auto rc = make("territory", {{"Z", {0.3, 0.9, 1.2}},
                                       {"n_animals", 5},
                                       {"lattice_size", 100},
                                       {"min_events", 500},
                                       {"t_measure", 2e4}});
    std::ostringstream out;
    run_command(rc, out);
    const auto r = rows(out.str());
    REQUIRE(r.size() == 3);
    for (const auto& row : r)
        CHECK(std::stod(row[6]) == doctest::Approx(std::exp(-9.869604401089358 * std::stod(row[0]) / 4.0)).epsilon(1e-11));
    CHECK(out.str().find("# fit {") != std::string::npos);
}

TEST_CASE("fp-check passes on the default grids") {
    std::ostringstream out;
    CHECK(run_command(make("fp-check", json::object()), out) == 0);
    CHECK(rows(out.str()).size() == 9);
}

TEST_CASE("verify report carries every check and the adjudication") {
    const auto rep = run_verify(make("verify", {{"fredholm_samples", 5}, {"grid_n", 5}, {"fp_cells", 1000}}));
    CHECK(rep.at("pass").get<bool>());
    for (const char* k : {"oracle_agreement", "laplace_time_consistency", "bessel_laplace_identities", "fredholm",
                          "continuum_equivalence", "fp_cross_check"})
        CHECK(rep.at("checks").contains(k));
    for (const char* k : {"mean_separation_v0", "msd_v0", "tail_coordinate", "charfn_kernel_sign"}) {
        const auto& a = rep.at("adjudication").at(k);
        CHECK(a.at("pass").get<bool>());
        CHECK(a.at("residuals").at(a.at("accepted").get<std::string>()).get<double>() < 1e-8);
    }
}

TEST_CASE("number formatting") {
    CHECK(fmt(0.5) == "0.5");
    CHECK(fmt(std::nan("")) == "nan");
    CHECK(fmt(1e-20) == "1e-20");
}
