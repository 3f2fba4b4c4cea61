#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rimrl/censored.hpp"
#include "rimrl/statistic.hpp"

namespace rimrl {

/// Rows of delimited text: time, then an optional 0/1 status (1 = event).
///
/// Fields are separated by commas and/or whitespace. Blank lines and text
/// after '#' are ignored. A single header row is recognised when the first
/// field of the first data line is not numeric. Parse failures throw
/// Error(Parse) with a 1-based line number.
struct InputDataset {
  std::vector<double> times;
  std::optional<std::vector<int>> status;

  bool has_status() const noexcept { return status.has_value(); }
  Sample to_sample() const;
  CensoredSample to_censored() const;
};

InputDataset parse_dataset(std::istream& in);
InputDataset read_dataset(const std::filesystem::path& path);

}  // namespace rimrl
