#include <doctest.h>

#include <cmath>
#include <random>

#include "antisym/discrete.hpp"

using namespace antisym;
using namespace antisym::discrete;
using antisym::numerics::kPi;

namespace {
PairParams pair(double p, long n1 = 0, long n2 = 1) {
    PairParams pp;
    pp.p = p;
    pp.N1 = n1;
    pp.N2 = n2;
    return pp;
}
}  // namespace

TEST_CASE("regime classification") {
    CHECK(classify(0.7) == RegimeLabel::toward);
    CHECK(classify(0.5) == RegimeLabel::unbiased);
    CHECK(classify(0.2) == RegimeLabel::apart);
    CHECK(std::string(to_string(RegimeLabel::apart)) == "apart");
}

TEST_CASE("generating functions match the resolvent of the master equation") {
    struct Row {
        double p;
        long n1, n2;
        double phi, psi, eps, re, im;
    };
    // sparse resolvent (eps - A)^{-1} on a 81-site window
    const Row rows[] = {{0.7, 0, 3, 0.4, 0.9, 2.0, -0.30608231869977826, 0.18341701998339238},
                        {0.3, 0, 1, 0.4, 0.9, 2.0, 0.17796628061933756, 0.31607657355827207},
                        {0.7, 2, 4, 2.9, 2.9, 1.0, -0.019358559394450282, 0.15888774260616842}};
    for (const auto& r : rows) {
        const auto pp = pair(r.p, r.n1, r.n2);
        const cplx f = gf_laplace_general(r.phi, r.psi, cplx(r.eps, 0.0), pp);
        CHECK(f.real() == doctest::Approx(r.re).epsilon(1e-9));
        CHECK(f.imag() == doctest::Approx(r.im).epsilon(1e-9));
        if (r.n2 - r.n1 == 1) {
            const cplx g = gf_laplace_adjacent(r.phi, r.psi, cplx(r.eps, 0.0), pp);
            CHECK(std::abs(g - f) < 1e-12);
        }
    }
}

TEST_CASE("normalization and marginal") {
    const auto pp = pair(0.4);
    const cplx eps(1.3, 0.2);
    CHECK(std::abs(gf_laplace_general(0.0, 0.0, eps, pp) - 1.0 / eps) < 1e-12);
    CHECK(std::abs(marginal_gf_laplace(0.0, eps, pp) - 1.0 / eps) < 1e-12);
    CHECK(std::abs(marginal_gf_laplace(0.8, eps, pp) - gf_laplace_adjacent(0.8, 0.0, eps, pp)) < 1e-12);
    CHECK_THROWS(marginal_gf_laplace(4.0, eps, pp));
}

TEST_CASE("exact time-domain moments reproduce the frozen oracle") {
    CHECK(mean_position_time(1.0, pair(0.7)) == doctest::Approx(-0.2491040723).epsilon(1e-9));
    CHECK(second_moment_time(1.0, pair(0.7)) == doctest::Approx(0.6949044389654506).epsilon(1e-10));
    const auto m = exact_moments(2.0, pair(0.3));
    CHECK(m.d == doctest::Approx(4.828873533257609).epsilon(1e-10));
    CHECK(m.x2 == doctest::Approx(6.960629419304835).epsilon(1e-10));
    CHECK(m.msd == doctest::Approx(3.29556128588468).epsilon(1e-10));
    const auto z = exact_moments(0.0, pair(0.3));
    CHECK(z.d == 1.0);
    CHECK(z.msd == 0.0);
}

TEST_CASE("Laplace-domain moments agree between real and complex evaluation") {
    const auto pp = pair(0.35);
    for (double e : {0.2, 1.0, 7.0}) {
        CHECK(mean_position_laplace(e, pp) == doctest::Approx(mean_position_laplace(cplx(e, 0.0), pp).real()));
        CHECK(second_moment_laplace(e, pp) ==
              doctest::Approx(second_moment_laplace(cplx(e, 0.0), pp).real()));
    }
}

TEST_CASE("Bessel Laplace identities") {
    for (double p : {0.3, 0.4, 0.45}) {
        const auto ref = bessel_laplace_identities(p);
        const double cut = bessel_laplace_cutoff(p);
        CHECK(bessel_laplace_quadrature(p, -1, cut) == doctest::Approx(ref.v_m1).epsilon(1e-7));
        CHECK(bessel_laplace_quadrature(p, 0, cut) == doctest::Approx(ref.v_0).epsilon(1e-7));
        CHECK(bessel_laplace_quadrature(p, 1, cut) == doctest::Approx(ref.v_1).epsilon(1e-7));
    }
}

TEST_CASE("long- and short-time limits") {
    // tau = 200 values from the ODE oracle
    CHECK(exact_moments(200.0, pair(0.75)).d == doctest::Approx(1.5).epsilon(1e-4));
    CHECK(exact_moments(200.0, pair(0.3)).d == doctest::Approx(321.75).epsilon(1e-4));
    CHECK(exact_moments(200.0, pair(0.5)).d == doctest::Approx(23.0711).epsilon(1e-5));
    const double tau = 1e-4;
    const auto ex = exact_moments(tau, pair(0.6));
    const auto sh = short_time_moments(0.6, tau);
    CHECK(ex.d == doctest::Approx(sh.d).epsilon(1e-7));
    CHECK(ex.x2 == doctest::Approx(sh.x2).epsilon(1e-3));
    CHECK(asymptotic_moments(0.5, 100.0).d == doctest::Approx(std::sqrt(800.0 / kPi)));
}

TEST_CASE("divergence timescale") {
    CHECK(divergence_timescale(0.9) == 0.0);
    const double t = divergence_timescale(0.502);
    CHECK(t > 0.0);
    CHECK_THROWS(divergence_timescale(0.5));
}

TEST_CASE("Fredholm system: closed-form solution satisfies the corrected system") {
    const auto r = verify_fredholm(1.1, cplx(0.7, 0.3), pair(0.3, 0, 2));
    CHECK(r.residual_norm < 1e-10);
    CHECK(std::abs(r.gamma_solved[0]) < 1e-10);
    CHECK(std::abs(r.gamma_solved[1]) < 1e-10);
    CHECK(r.gamma_distance < 1e-10);
    CHECK(r.coefficient_quadrature_deviation < 1e-10);
    CHECK(r.reconstruction_deviation < 1e-10);
    CHECK(r.residual_printed_row3 > 1e-3);
}

TEST_CASE("property: moments are physical over random parameters") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> p(0.02, 0.98), lt(-2.0, 2.0);
    for (int k = 0; k < 40; ++k) {
        const auto m = exact_moments(std::pow(10.0, lt(rng)), pair(p(rng)));
        CHECK(m.d >= 1.0 - 1e-12);
        CHECK(m.msd >= -1e-12);
        CHECK(m.x2 >= m.x1 * m.x1 - 1e-12);
    }
}
