#include "rimrl/exact_null.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <string>

#include "rimrl/error.hpp"
#include "rimrl/parallel.hpp"

namespace rimrl {
namespace {

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits) { mpfr_init2(value_, bits); }
  ~BigFloat() { mpfr_clear(value_); }
  BigFloat(const BigFloat&) = delete;
  BigFloat& operator=(const BigFloat&) = delete;

  mpfr_ptr get() noexcept { return value_; }

 private:
  mpfr_t value_;
};

}  // namespace

ExactNull::ExactNull(std::size_t n, long precision_bits) : n_(n) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidSampleSize, "exact null law needs n >= 2");
  }
  const long default_bits = std::max<long>(64, 16 * static_cast<long>(n));
  precision_bits_ = precision_bits == 0 ? default_bits : precision_bits;
  if (precision_bits_ < 64) {
    throw Error(ErrorKind::InvalidConfig, "precision_bits must be at least 64");
  }
}

double ExactNull::survival(double x) const {
  if (std::isnan(x)) {
    throw Error(ErrorKind::Domain, "survival evaluated at NaN");
  }
  if (x >= 0.5) return 0.0;
  if (x < -0.5) return 1.0;

  const auto bits = static_cast<mpfr_prec_t>(precision_bits_);
  const unsigned long n = n_;
  const unsigned long power = n - 1;

  BigFloat scaled_x(bits);   // (n - 1) x, exact
  BigFloat base(bits);
  BigFloat term(bits);
  BigFloat binomial(bits);   // C(n-1, i-1)
  BigFloat sum(bits);
  mpfr_set_d(scaled_x.get(), x, MPFR_RNDN);
  mpfr_mul_ui(scaled_x.get(), scaled_x.get(), power, MPFR_RNDN);
  mpfr_set_ui(binomial.get(), 1, MPFR_RNDN);
  mpfr_set_ui(sum.get(), 0, MPFR_RNDN);

  for (unsigned long i = 1; i <= n; ++i) {
    if (i > 1) {
      mpfr_mul_ui(binomial.get(), binomial.get(), n - i + 1, MPFR_RNDN);
      mpfr_div_ui(binomial.get(), binomial.get(), i - 1, MPFR_RNDN);
    }
    // (n - 1) d_i - (n - 1) x = (n - 2i + 1) / 2 - (n - 1) x
    const long numerator = static_cast<long>(n) - 2 * static_cast<long>(i) + 1;
    mpfr_set_si(base.get(), numerator, MPFR_RNDN);
    mpfr_div_2ui(base.get(), base.get(), 1, MPFR_RNDN);
    mpfr_sub(base.get(), base.get(), scaled_x.get(), MPFR_RNDN);
    if (mpfr_sgn(base.get()) < 0) break;  // d_i < x from here on

    mpfr_pow_ui(term.get(), base.get(), power, MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), binomial.get(), MPFR_RNDN);
    if (i % 2 == 0) {
      mpfr_sub(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    } else {
      mpfr_add(sum.get(), sum.get(), term.get(), MPFR_RNDN);
    }
  }

  // Divide by (n - 1)! to turn the binomial weights into 1 / ((i-1)! (n-i)!).
  BigFloat factorial(bits);
  mpfr_fac_ui(factorial.get(), power, MPFR_RNDN);
  mpfr_div(sum.get(), sum.get(), factorial.get(), MPFR_RNDN);

  const double p = mpfr_get_d(sum.get(), MPFR_RNDN);
  return std::clamp(p, 0.0, 1.0);
}

double ExactNull::critical_value(double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorKind::InvalidLevel, "significance level must lie in (0, 1)");
  }
  double lo = -0.5;
  double hi = 0.5;
  for (int it = 0; it < kMaxBisectionIterations && hi - lo > kCriticalValueTolerance; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (survival(mid) > alpha) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<std::vector<double>> critical_table(std::span<const double> levels,
                                                std::span<const std::size_t> sizes) {
  for (double a : levels) {
    if (!(a > 0.0 && a < 1.0)) {
      throw Error(ErrorKind::InvalidLevel, "significance level must lie in (0, 1)");
    }
  }
  for (std::size_t n : sizes) {
    if (n < 2) throw Error(ErrorKind::InvalidSampleSize, "table sizes must be >= 2");
  }

  std::vector<std::vector<double>> table(sizes.size(), std::vector<double>(levels.size()));
  const std::size_t cells = sizes.size() * levels.size();
  parallel_for(cells, [&](std::size_t cell) {
    const std::size_t row = cell / levels.size();
    const std::size_t col = cell % levels.size();
    table[row][col] = ExactNull(sizes[row]).critical_value(levels[col]);
  });
  return table;
}

std::vector<std::size_t> default_table_sizes() {
  return {2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 25, 30, 40, 50, 75, 100};
}

std::vector<double> default_table_levels() { return {0.10, 0.05, 0.025, 0.01}; }

}  // namespace rimrl
