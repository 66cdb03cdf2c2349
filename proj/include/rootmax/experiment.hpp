#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "rootmax/common.hpp"

namespace rootmax {

// Seeded, serializable description of one experiment run. Unknown parameter
// keys are rejected at validation time; the echo embedded in every output is
// itself a valid serialized config.
struct ExperimentConfig {
  std::string command;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 1;
  std::string out;             // empty: stdout
  std::string format = "csv";  // csv | json

  std::string serialize() const;
  static ExperimentConfig deserialize(const std::string& text);
};

using Cell = std::variant<long long, double, std::string>;

struct ResultTable {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, std::string>> meta;  // ordered echo

  void add_row(std::vector<Cell> row);
};

// Dispatches a validated config to the backing module operation. Fully
// deterministic for a fixed config, including under OpenMP.
ResultTable run(const ExperimentConfig& config);

// Renders with '.' decimal separator and 17 significant digits (round-trip
// safe); strings follow RFC 4180 quoting. The config echo rides in leading
// '#' comment lines. JSON mirrors the same values as {meta, columns, rows}.
std::string render_csv(const ResultTable& table);
std::string render_json(const ResultTable& table);
std::string render(const ResultTable& table, const std::string& format);

// Shared formatting helper: shortest text that round-trips a double.
std::string format_double(double v);

// Inclusive start:stop:step grid generated in integer step space so the
// values do not drift.
std::vector<double> parse_grid(const std::string& spec);
cplx parse_complex(const std::string& text);

}  // namespace rootmax
