#include <doctest.h>

#include <cmath>
#include <random>

#include "antisym/model.hpp"

using namespace antisym;

namespace {
PairParams pair(double p, long n1 = 0, long n2 = 1) {
    PairParams pp;
    pp.p = p;
    pp.N1 = n1;
    pp.N2 = n2;
    return pp;
}
}  // namespace

TEST_CASE("adjacent walkers only move outward") {
    const auto pp = pair(0.7);
    const auto moves = transition_rates({0, 1}, pp);
    REQUIRE(moves.size() == 2);
    for (const auto& m : moves) {
        CHECK(m.to.n < m.to.m);
        CHECK(m.rate == doctest::Approx(2.0 * 0.3));
    }
    CHECK(total_rate({0, 1}, pp) == doctest::Approx(4.0 * 0.3));
    CHECK(total_rate({0, 5}, pp) == doctest::Approx(4.0));
}

TEST_CASE("non-adjacent rates split inward and outward") {
    const auto pp = pair(0.8);
    double inward = 0.0, outward = 0.0;
    for (const auto& m : transition_rates({-2, 3}, pp)) {
        if (m.to.m - m.to.n < 5) inward += m.rate;
        else outward += m.rate;
    }
    CHECK(inward == doctest::Approx(4.0 * 0.8));
    CHECK(outward == doctest::Approx(4.0 * 0.2));
}

TEST_CASE("parameter validation") {
    PairParams pp;
    pp.p = 1.2;
    CHECK_THROWS(pp.validate());
    pp = pair(0.5, 3, 3);
    CHECK_THROWS(pp.validate());
    pp = pair(0.5);
    pp.F = 0.0;
    CHECK_THROWS(pp.validate());
}

TEST_CASE("master equation matches the frozen ODE oracle") {
    struct Row {
        double p, tau, d, x2, msd;
    };
    // independent sparse RK45 integration of the same chain, rtol 1e-12
    const Row rows[] = {{0.3, 2.0, 4.828873533257609, 6.960629419304835, 3.29556128588468},
                        {0.7, 1.0, 1.4982081446144409, 0.6949044389654506, 0.6328516001254098},
                        {0.5, 5.0, 4.09062083730431, 8.454689581347845, 6.066705291352945}};
    for (const auto& r : rows) {
        const auto pp = pair(r.p);
        const auto dist = integrate_master(pp, {r.tau}).front();
        const auto m = moments_from_distribution(dist, pp);
        CHECK(m.d == doctest::Approx(r.d).epsilon(1e-8));
        CHECK(m.second_x1 == doctest::Approx(r.x2).epsilon(1e-8));
        CHECK(m.msd_x1 == doctest::Approx(r.msd).epsilon(1e-8));
    }
}

TEST_CASE("probability is conserved and ordering holds") {
    const auto pp = pair(0.4, -2, 1);
    const auto dists = integrate_master(pp, {0.5, 2.0, 6.0});
    for (const auto& d : dists) {
        CHECK(d.mass() + d.leaked == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(d.leaked < 1e-10);
        CHECK(std::abs(generating_function(d, 0.0, 0.0) - std::complex<double>(d.mass(), 0.0)) < 1e-12);
        double crossed = 0.0;
        for (int i = 0; i < d.width(); ++i)
            for (int j = 0; j <= i; ++j) crossed += d.prob[static_cast<std::size_t>(i) * d.width() + j];
        CHECK(crossed == 0.0);
    }
}

TEST_CASE("a window that is too small without growth throws TruncationError") {
    MasterSpec spec;
    spec.L = 3;
    spec.auto_grow = false;
    CHECK_THROWS_AS(integrate_master(pair(0.5), {10.0}, spec), TruncationError);
}

TEST_CASE("property: mean separation never drops below the lattice spacing") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> p(0.05, 0.95), tau(0.01, 4.0);
    for (int k = 0; k < 10; ++k) {
        const auto pp = pair(p(rng));
        const auto m = moments_from_distribution(integrate_master(pp, {tau(rng)}).front(), pp);
        CHECK(m.d >= 1.0 - 1e-12);
        CHECK(m.msd_x1 >= -1e-12);
    }
}
