#include "rimrl/dataset.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>

#include "rimrl/error.hpp"

namespace rimrl {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == ',' || c == ' ' || c == '\t' || c == '\r'; };
  while (i < line.size()) {
    while (i < line.size() && is_sep(line[i]) && line[i] != ',') ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() && line[j] != ',' && !is_sep(line[j])) ++j;
    fields.push_back(line.substr(i, j - i));
    // Skip trailing blanks and at most one comma.
    while (j < line.size() && is_sep(line[j]) && line[j] != ',') ++j;
    if (j < line.size() && line[j] == ',') ++j;
    i = j;
  }
  return fields;
}

std::optional<double> parse_number(std::string_view text) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

[[noreturn]] void fail(std::size_t line, const std::string& message) {
  throw Error(ErrorKind::Parse, "line " + std::to_string(line) + ": " + message);
}

}  // namespace

InputDataset parse_dataset(std::istream& in) {
  InputDataset data;
  std::vector<int> status;
  std::optional<std::size_t> columns;
  bool seen_data = false;
  std::string raw;
  std::size_t line_no = 0;

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = split_fields(line);
    if (fields.empty()) continue;

    const auto time = parse_number(fields[0]);
    if (!time) {
      if (!seen_data) {
        seen_data = true;  // header row
        continue;
      }
      fail(line_no, "time '" + std::string(fields[0]) + "' is not a number");
    }
    seen_data = true;

    if (fields.size() > 2) fail(line_no, "expected 1 or 2 columns, found " + std::to_string(fields.size()));
    if (columns && *columns != fields.size()) {
      fail(line_no, "expected " + std::to_string(*columns) + " columns, found " +
                        std::to_string(fields.size()));
    }
    columns = fields.size();

    if (!std::isfinite(*time) || *time < 0.0) {
      fail(line_no, "time must be a finite nonnegative number");
    }
    data.times.push_back(*time);

    if (fields.size() == 2) {
      const auto flag = parse_number(fields[1]);
      if (!flag || (*flag != 0.0 && *flag != 1.0)) {
        fail(line_no, "status '" + std::string(fields[1]) + "' must be 0 or 1");
      }
      status.push_back(static_cast<int>(*flag));
    }
  }

  if (columns == 2u) data.status = std::move(status);
  return data;
}

InputDataset read_dataset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open '" + path.string() + "'");
  return parse_dataset(in);
}

Sample InputDataset::to_sample() const { return Sample(times); }

CensoredSample InputDataset::to_censored() const {
  if (!status) {
    throw Error(ErrorKind::Parse, "censored analysis needs a status column (time, status)");
  }
  std::vector<CensoredRecord> records(times.size());
  for (std::size_t i = 0; i < times.size(); ++i) {
    records[i] = {times[i], (*status)[i] == 1};
  }
  return CensoredSample(std::move(records));
}

}  // namespace rimrl
