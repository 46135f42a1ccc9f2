#include <doctest.h>

#include <cmath>

#include "antisym/discrete.hpp"
#include "antisym/mc.hpp"

using namespace antisym;
using namespace antisym::mc;

TEST_CASE("Philox4x32-10 known-answer vectors") {
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::apply({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(Philox4x32::apply({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          C{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(Philox4x32::apply({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          C{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("replica streams are reproducible and distinct") {
    ReplicaStream a(5, 17), b(5, 17), c(5, 18);
    bool differs = false;
    for (int k = 0; k < 100; ++k) {
        const auto x = a.next_u64();
        CHECK(x == b.next_u64());
        differs = differs || x != c.next_u64();
        const double u = a.uniform_open0();
        b.uniform_open0();
        c.uniform_open0();
        CHECK(u > 0.0);
        CHECK(u <= 1.0);
    }
    CHECK(differs);
}

TEST_CASE("trajectories keep the walkers ordered") {
    PairParams pp;
    pp.p = 0.8;
    ReplicaStream rng(1, 0);
    std::vector<double> grid;
    for (int k = 1; k <= 200; ++k) grid.push_back(0.25 * k);
    for (const auto& s : simulate_pair(pp, grid, rng)) CHECK(s.n < s.m);
}

TEST_CASE("ensemble statistics are independent of the thread count") {
    PairParams pp;
    pp.p = 0.45;
    EnsembleSpec spec;
    spec.n_replicas = 10000;
    spec.t_grid = {1.0, 3.0};
    spec.block_size = 1000;
    spec.threads = 1;
    const auto a = ensemble_moments(pp, spec);
    spec.threads = 3;
    const auto b = ensemble_moments(pp, spec);
    CHECK(a.d == b.d);
    CHECK(a.msd == b.msd);
    CHECK(a.x2_se == b.x2_se);
}

TEST_CASE("ensemble agrees with the exact moments within four standard errors") {
    for (double p : {0.4, 0.5, 0.6}) {
        PairParams pp;
        pp.p = p;
        EnsembleSpec spec;
        spec.n_replicas = 100000;
        spec.t_grid = {2.0, 10.0};
        spec.seed = 21;
        const auto r = ensemble_moments(pp, spec);
        for (std::size_t k = 0; k < spec.t_grid.size(); ++k) {
            const auto ex = discrete::exact_moments(spec.t_grid[k], pp);
            CHECK(std::abs(r.d[k] - ex.d) < 4.0 * r.d_se[k]);
            CHECK(std::abs(r.x2[k] - ex.x2) < 4.0 * r.x2_se[k]);
            CHECK(std::abs(r.msd[k] - ex.msd) < 4.0 * r.msd_se[k]);
        }
    }
}

TEST_CASE("invalid ensemble specifications") {
    PairParams pp;
    EnsembleSpec spec;
    spec.t_grid = {2.0, 1.0};
    CHECK_THROWS(ensemble_moments(pp, spec));
}
