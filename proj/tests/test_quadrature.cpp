#include <doctest.h>

#include "lpq/errors.hpp"
#include "lpq/quadrature.hpp"

#include <cmath>

using namespace lpq;

TEST_CASE("adaptive GK reproduces smooth integrals") {
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::exp(-x * x); }, -8.0, 8.0) ==
          doctest::Approx(std::sqrt(M_PI)).epsilon(1e-12));
    // oscillatory
    CHECK(integrate([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0) ==
          doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-10));
}

TEST_CASE("adaptive GK handles mild endpoint singularities") {
    CHECK(integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-9) ==
          doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("panel budget exhaustion raises QuadratureError") {
    // strong endpoint singularity with a tiny panel budget
    CHECK_THROWS_AS(integrate([](double x) { return std::pow(x, -0.9); }, 0.0, 1.0,
                              1e-14, 1e-300, 8),
                    QuadratureError);
    // a sample landing on the pole itself is caught as well
    CHECK_THROWS_AS(integrate([](double x) { return 1.0 / std::sqrt(std::abs(x)); }, -1.0, 1.0),
                    QuadratureError);
}

TEST_CASE("tanh-sinh integrates endpoint-singular integrands to high accuracy") {
    // int_0^1 x^{-0.9} dx = 10
    CHECK(integrate_tanh_sinh([](double x) { return std::pow(x, -0.9); }, 0.0, 1.0, 1e-11) ==
          doctest::Approx(10.0).epsilon(1e-9));
    // int_0^1 log(x) dx = -1
    CHECK(integrate_tanh_sinh([](double x) { return std::log(x); }, 0.0, 1.0, 1e-12) ==
          doctest::Approx(-1.0).epsilon(1e-11));
    // smooth case agrees with GK
    CHECK(integrate_tanh_sinh([](double x) { return std::cosh(x); }, -1.0, 2.0, 1e-12) ==
          doctest::Approx(std::sinh(2.0) + std::sinh(1.0)).epsilon(1e-11));
}

TEST_CASE("find_root brackets and bisects") {
    int evals = 0;
    const double r = find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-13, &evals);
    CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(evals > 2);

    CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-10), NoBracket);
}
