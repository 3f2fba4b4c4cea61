#include "doctest.h"

#include <cmath>
#include <vector>

#include "rimrl/error.hpp"
#include "rimrl/exact_null.hpp"
#include "rimrl/families.hpp"
#include "rimrl/rng.hpp"
#include "rimrl/statistic.hpp"

using namespace rimrl;
using doctest::Approx;

namespace {

double round_to(double v, int decimals) {
  const double s = std::pow(10.0, decimals);
  return std::round(v * s) / s;
}

double n3_survival(double x) {
  if (x >= 0.5) return 0.0;
  if (x < -0.5) return 1.0;
  const double a = 0.5 - x;
  return x >= 0 ? 2 * a * a : 2 * a * a - 4 * x * x;
}

}  // namespace

TEST_CASE("closed forms for n = 2 and n = 3") {
  const ExactNull two(2), three(3);
  for (double x = -0.499; x < 0.5; x += 0.0137) {
    CHECK(std::abs(two.survival(x) - (0.5 - x)) < 1e-12);
    CHECK(std::abs(three.survival(x) - n3_survival(x)) < 1e-12);
  }
  CHECK(two.survival(0.45) == Approx(0.05).epsilon(1e-12));
  CHECK(three.survival(-0.25) == Approx(0.875).epsilon(1e-12));
  CHECK(three.p_value(0.25) == Approx(0.125).epsilon(1e-12));
  CHECK(two.p_value(0.0) == Approx(0.5).epsilon(1e-12));
  CHECK(three.survival(0.3419) == Approx(0.05).epsilon(5e-5 / 0.05));
}

TEST_CASE("support boundary") {
  for (std::size_t n : {2u, 5u, 40u, 100u}) {
    const ExactNull law(n);
    CHECK(law.survival(0.5) == 0.0);
    CHECK(law.survival(0.75) == 0.0);
    CHECK(law.survival(-0.5000001) == 1.0);
    CHECK(law.survival(-0.4999999) == Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("precision") {
  CHECK(ExactNull(2).precision_bits() >= 64);
  CHECK(ExactNull(100).precision_bits() == 1600);
  CHECK(ExactNull(10, 300).precision_bits() == 300);
}

TEST_CASE("extended-precision reference values") {
  // Reference values from an independent 60-digit evaluation of the Box sum.
  CHECK(ExactNull(10).survival(0.1) == Approx(0.15202678073650792).epsilon(1e-13));
  CHECK(ExactNull(50).survival(0.05) == Approx(0.11303810819474415).epsilon(1e-13));
  CHECK(ExactNull(25).survival(-0.03) == Approx(0.69363999005050469).epsilon(1e-13));
  CHECK(ExactNull(100).critical_value(0.01) == Approx(0.06741167132689772).epsilon(1e-7));
  CHECK(ExactNull(4).critical_value(0.05) == Approx(0.2768556833059435).epsilon(1e-7));
}

TEST_CASE("symmetry and monotonicity") {
  for (std::size_t n : {4u, 9u, 30u, 75u}) {
    const ExactNull law(n);
    double previous = 1.0;
    for (double x = -0.49; x < 0.5; x += 0.01) {
      const double s = law.survival(x);
      CHECK(std::abs(s + law.survival(-x) - 1.0) < 1e-10);
      CHECK(s <= previous);
      if (s > 1e-12 && s < 1 - 1e-12) CHECK(s < previous);
      CHECK(s >= 0.0);
      previous = s;
    }
  }
}

TEST_CASE("critical values") {
  CHECK(round_to(ExactNull(2).critical_value(0.05), 4) == 0.45);
  CHECK(round_to(ExactNull(5).critical_value(0.05), 4) == 0.2383);
  CHECK(round_to(ExactNull(30).critical_value(0.05), 4) == 0.0882);
  CHECK(round_to(ExactNull(15).critical_value(0.025), 4) == 0.1508);
  CHECK(ExactNull(3).critical_value(0.10) == Approx(0.5 - std::sqrt(0.05)).epsilon(1e-7));
  CHECK(ExactNull(3).critical_value(0.025) == Approx(0.5 - std::sqrt(0.0125)).epsilon(1e-7));

  for (std::size_t n : {6u, 20u, 60u}) {
    const ExactNull law(n);
    for (double a : {0.2, 0.05, 0.001}) {
      CHECK(law.survival(law.critical_value(a)) == Approx(a).epsilon(1e-5));
    }
  }

  CHECK_THROWS_AS(ExactNull(1), Error);
  for (double a : {0.0, 1.0, -0.1, 1.5}) {
    try {
      ExactNull(5).critical_value(a);
      FAIL("expected an invalid-level error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidLevel);
    }
  }
}

TEST_CASE("table") {
  const std::vector<double> levels = default_table_levels();
  const std::vector<std::size_t> sizes{2};
  const auto t = critical_table(levels, sizes);
  REQUIRE(t.size() == 1);
  REQUIRE(t[0].size() == 4);
  const double expected[] = {0.4, 0.45, 0.475, 0.49};
  for (int j = 0; j < 4; ++j) CHECK(t[0][j] == Approx(expected[j]).epsilon(1e-7));
  CHECK(default_table_sizes().size() == 17);
  CHECK(levels.size() == 4);
}

TEST_CASE("simulated statistic follows the exact law") {
  constexpr int reps = 20000;
  const std::size_t n = 8;
  const ExactNull law(n);
  const double x = law.critical_value(0.1);
  // The null law does not depend on the exponential rate.
  for (double rate : {1.0, 0.5, 7.0}) {
    int above = 0;
    for (int r = 0; r < reps; ++r) {
      RngStream rng(42, r);
      above += statistic_spacings(sample(FamilySpec::exponential(rate), rng, n)).delta_star > x;
    }
    const double p = double(above) / reps;
    CHECK(std::abs(p - 0.1) < 4 * std::sqrt(0.09 / reps));
  }
}
