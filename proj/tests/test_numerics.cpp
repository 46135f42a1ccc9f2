#include <doctest.h>

#include <cmath>

#include "antisym/numerics.hpp"

using namespace antisym::numerics;

TEST_CASE("scaled Bessel functions match reference values on both sides of the switch") {
    struct Row {
        double x, i0, i1;
    };
    // scipy.special.ive
    const Row rows[] = {{0.5, 0.6450352704491501, 0.15642080318487167},
                        {10.0, 0.12783333716342862, 0.12126268138445552},
                        {24.9, 0.08035933261153219, 0.07872879488210312},
                        {25.1, 0.08003519725429624, 0.07842431517836843},
                        {100.0, 0.03994437929909668, 0.039744153025130256},
                        {1e4, 0.0039894726746047314, 0.003989273195983662}};
    for (const auto& r : rows) {
        CHECK(bessel_i_scaled(0, r.x) == doctest::Approx(r.i0).epsilon(1e-13));
        CHECK(bessel_i_scaled(1, r.x) == doctest::Approx(r.i1).epsilon(1e-13));
    }
    CHECK(bessel_i_scaled(0, 0.0) == 1.0);
    CHECK(bessel_i_scaled(1, 0.0) == 0.0);
    CHECK_THROWS_AS(bessel_i_scaled(0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(bessel_i_scaled(2, 1.0), std::invalid_argument);
}

TEST_CASE("scaled Bessel functions are continuous at the asymptotic switch") {
    for (int order : {0, 1}) {
        // central difference across the switch must agree with one taken on a single side
        const double h = 1e-4;
        const double across = bessel_i_scaled(order, 25.0 + h) - bessel_i_scaled(order, 25.0 - h);
        const double below = bessel_i_scaled(order, 25.0 - h) - bessel_i_scaled(order, 25.0 - 3.0 * h);
        CHECK(std::abs(across - below) < 1e-9);
    }
}

TEST_CASE("erfcx reference values and the large-argument regime") {
    // scipy.special.erfcx
    CHECK(erfcx(-2.0) == doctest::Approx(108.94090438997797).epsilon(1e-13));
    CHECK(erfcx(0.5) == doctest::Approx(0.6156903441929258).epsilon(1e-13));
    CHECK(erfcx(3.9) == doctest::Approx(0.14031418160068973).epsilon(1e-13));
    CHECK(erfcx(4.1) == doctest::Approx(0.13383411641865198).epsilon(1e-13));
    CHECK(erfcx(30.0) == doctest::Approx(0.018795888861416754).epsilon(1e-13));
    CHECK(erfcx(1e3) == doctest::Approx(0.0005641893014533876).epsilon(1e-13));
    CHECK(antisym::numerics::erfc(0.3) + antisym::numerics::erf(0.3) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(antisym::numerics::erfc(-0.7) == doctest::Approx(2.0 - antisym::numerics::erfc(0.7)).epsilon(1e-15));
}

TEST_CASE("adaptive quadrature on smooth and endpoint-singular integrands") {
    CHECK(adaptive_quad([](double x) { return std::sin(x); }, 0.0, kPi).value ==
          doctest::Approx(2.0).epsilon(1e-13));
    QuadratureSpec loose;
    loose.abs_tol = 1e-8;
    loose.max_depth = 70;
    CHECK(adaptive_quad([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, loose).value ==
          doctest::Approx(2.0).epsilon(1e-7));
    CHECK(adaptive_quad_sqrt_endpoint([](double s) { return std::exp(-s) / std::sqrt(s); }, 0.0, 50.0)
              .value == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    const cplx z = adaptive_quad_complex([](double x) { return std::exp(cplx(0.0, x)); }, 0.0, kPi / 2);
    CHECK(z.real() == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(z.imag() == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("quadrature reports unmet tolerance with a partial estimate") {
    QuadratureSpec spec;
    spec.max_depth = 6;
    try {
        adaptive_quad([](double x) { return 1.0 / x; }, 0.0, 1.0, spec);
        FAIL("expected QuadratureError");
    } catch (const QuadratureError& e) {
        CHECK(e.partial().value > 0.0);
    }
}

TEST_CASE("Talbot inversion of elementary transforms") {
    for (double t : {0.1, 1.0, 5.0, 20.0}) {
        CHECK(inverse_laplace([](cplx s) { return 1.0 / (s + 1.0); }, t) ==
              doctest::Approx(std::exp(-t)).epsilon(1e-9).scale(1.0));
        CHECK(inverse_laplace([](cplx s) { return 1.0 / (s * s); }, t) == doctest::Approx(t).epsilon(1e-10));
        CHECK(inverse_laplace([](cplx s) { return 1.0 / std::sqrt(s); }, t) ==
              doctest::Approx(1.0 / std::sqrt(kPi * t)).epsilon(1e-10));
    }
    const cplx z = inverse_laplace_complex([](cplx s) { return 1.0 / (s - cplx(0.0, 1.0)); }, 2.0);
    CHECK(z.real() == doctest::Approx(std::cos(2.0)).epsilon(1e-9));
    CHECK(z.imag() == doctest::Approx(std::sin(2.0)).epsilon(1e-9));
}

TEST_CASE("Talbot inversion rejects non-finite transforms and bad times") {
    CHECK_THROWS_AS(inverse_laplace([](cplx) { return cplx(std::nan(""), 0.0); }, 1.0), LaplaceInversionError);
    CHECK_THROWS_AS(talbot_fixed([](cplx s) { return 1.0 / s; }, 0.0, 32), std::invalid_argument);
}

TEST_CASE("two-root square root is analytic off the cut and behaves like z") {
    const cplx z(100.0, 0.0);
    CHECK(sqrt_two_root(z, -1.0, 1.0).real() == doctest::Approx(std::sqrt(z.real() * z.real() - 1.0)));
    const cplx above = sqrt_two_root(cplx(-3.0, 1e-12), -1.0, 1.0);
    const cplx below = sqrt_two_root(cplx(-3.0, -1e-12), -1.0, 1.0);
    CHECK(std::abs(above - below) < 1e-9);
}
