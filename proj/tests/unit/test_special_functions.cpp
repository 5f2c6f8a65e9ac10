#include <doctest.h>

#include <cmath>

#include "mshaz/errors.hpp"
#include "mshaz/special_functions.hpp"

using namespace mshaz;

TEST_CASE("regularized incomplete gamma against reference values") {
  CHECK(sf::gamma_p(1.0, 0.0) == 0.0);
  CHECK(sf::gamma_q(1.0, 0.0) == 1.0);
  // P(1, x) = 1 - e^{-x}
  for (double x : {0.1, 1.0, 5.0, 20.0}) {
    CHECK(sf::gamma_p(1.0, x) == doctest::Approx(1.0 - std::exp(-x)).epsilon(1e-14));
  }
  CHECK(sf::gamma_p(2.0, 1.0) == doctest::Approx(0.26424111765711536).epsilon(1e-14));
  CHECK(sf::gamma_p(2.5, 3.7) == doctest::Approx(0.80744956692060427).epsilon(1e-13));
  CHECK(sf::gamma_q(3.2, 0.9) == doctest::Approx(0.95295139393243600).epsilon(1e-13));
  for (double a : {0.3, 1.7, 6.0}) {
    for (double x : {0.2, 2.0, 9.0}) {
      CHECK(sf::gamma_p(a, x) + sf::gamma_q(a, x) == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  CHECK_THROWS_AS(sf::gamma_p(-1.0, 1.0), InvalidParameterError);
  CHECK_THROWS_AS(sf::gamma_q(1.0, -1.0), InvalidParameterError);
}

TEST_CASE("erfcx matches exp(x^2) erfc(x) and its asymptotics") {
  CHECK(sf::erfcx(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sf::erfcx(0.5) == doctest::Approx(0.61569034419292587).epsilon(1e-13));
  CHECK(sf::erfcx(1.0) == doctest::Approx(0.42758357615580700).epsilon(1e-13));
  CHECK(sf::erfcx(5.0) == doctest::Approx(0.11070463773306863).epsilon(1e-13));
  // Across the direct/asymptotic switch at x = 25.
  CHECK(sf::erfcx(26.0) == doctest::Approx(0.021683584850562907).epsilon(1e-12));
  CHECK(sf::erfcx(30.0) == doctest::Approx(0.018795888861416751).epsilon(1e-12));
  CHECK_THROWS_AS(sf::erfcx(-0.1), InvalidParameterError);
}

TEST_CASE("factorial and binomial") {
  CHECK(sf::factorial(0) == 1.0);
  CHECK(sf::factorial(5) == 120.0);
  CHECK(sf::factorial(18) == 6402373705728000.0);
  CHECK(sf::binomial(6, 2) == 15.0);
  CHECK(sf::binomial(10, 0) == 1.0);
  CHECK(sf::binomial(4, 7) == 0.0);
  CHECK_THROWS_AS(sf::factorial(-1), InvalidParameterError);
  CHECK_THROWS_AS(sf::factorial(200), InvalidParameterError);
}
