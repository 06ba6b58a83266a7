#include "doctest.h"

#include <cmath>

#include "cvx/profile.hpp"

using namespace cvx;

TEST_CASE("profile parsing and evaluation") {
  auto e = EnergyProfile::parse("1 - t/2");
  CHECK(e.value(0.0) == doctest::Approx(1.0));
  CHECK(e.value(1.0) == doctest::Approx(0.5));
  CHECK(e.derivative(0.3) == doctest::Approx(-0.5));
  CHECK(e.min_value() == doctest::Approx(0.5));
  CHECK(e.max_value() == doctest::Approx(1.0));

  auto f = EnergyProfile::parse("2*exp(-t)*sin(3*t) + 0.5");
  for (double t : {0.0, 0.17, 0.5, 0.93}) {
    double want = 2 * std::exp(-t) * std::sin(3 * t) + 0.5;
    CHECK(f.value(t) == doctest::Approx(want).epsilon(1e-14));
    double dwant = -2 * std::exp(-t) * std::sin(3 * t) +
                   6 * std::exp(-t) * std::cos(3 * t);
    CHECK(f.derivative(t) == doctest::Approx(dwant).epsilon(1e-13));
  }

  auto g = EnergyProfile::parse("cos(t*t)");
  double h = 1e-6, t0 = 0.4;
  double fd = (g.value(t0 + h) - g.value(t0 - h)) / (2 * h);
  CHECK(g.derivative(t0) == doctest::Approx(fd).epsilon(1e-8));

  auto q = EnergyProfile::parse("(1 + t) / (2 - t)");
  CHECK(q.value(0.5) == doctest::Approx(1.0));
  CHECK(q.derivative(0.5) == doctest::Approx((1 * 1.5 + 1.5 * 1) / (1.5 * 1.5))
                                 .epsilon(1e-12));

  CHECK(EnergyProfile::parse("-t").value(2.0) == doctest::Approx(-2.0));
}

TEST_CASE("profile parse errors") {
  CHECK_THROWS_AS(EnergyProfile::parse("1 +"), ProfileParseError);
  CHECK_THROWS_AS(EnergyProfile::parse("sin 3"), ProfileParseError);
  CHECK_THROWS_AS(EnergyProfile::parse("foo(t)"), ProfileParseError);
  CHECK_THROWS_AS(EnergyProfile::parse("(1 + t"), ProfileParseError);
  CHECK_THROWS_AS(EnergyProfile::parse("1 + t)"), ProfileParseError);
  CHECK_THROWS_AS(EnergyProfile::parse("t ^ 2"), ProfileParseError);
}
