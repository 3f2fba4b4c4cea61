#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rimrl {

/// Exact finite-sample null law of the statistic under exponential
/// lifetimes. Under H0 the normalized spacings are i.i.d. exponential, so
/// P(statistic > x) = P(sum_i (d_i - x) D_i > 0), which has the closed form
///
///   sum_{i : d_i >= x} prod_{j != i} (d_i - x) / (d_i - d_j).
///
/// With d_i - d_j = (j - i)/(n - 1) each term reduces to
///   (-1)^(i-1) ((n - 2i + 1)/2 - (n - 1)x)^(n-1) / ((i-1)! (n-i)!),
/// an alternating sum whose terms reach ~1e40 at n = 100. It is therefore
/// evaluated with MPFR at `precision_bits` and rounded at the end.
///
/// The law does not depend on the exponential rate, so none is stored.
class ExactNull {
 public:
  /// `precision_bits == 0` selects the default max(64, 16 n).
  explicit ExactNull(std::size_t n, long precision_bits = 0);

  std::size_t n() const noexcept { return n_; }
  long precision_bits() const noexcept { return precision_bits_; }

  /// P(statistic > x), clamped to [0, 1].
  double survival(double x) const;

  /// x with survival(x) == alpha, by bisection on [-1/2, 1/2].
  double critical_value(double alpha) const;

  /// One-sided p-value of an observed statistic.
  double p_value(double observed) const { return survival(observed); }

 private:
  std::size_t n_;
  long precision_bits_;
};

inline constexpr double kCriticalValueTolerance = 1e-8;
inline constexpr int kMaxBisectionIterations = 60;

/// Critical values, one row per size and one column per level.
std::vector<std::vector<double>> critical_table(std::span<const double> levels,
                                                std::span<const std::size_t> sizes);

/// Row and column headers of the published table of exact critical values.
std::vector<std::size_t> default_table_sizes();
std::vector<double> default_table_levels();

}  // namespace rimrl
