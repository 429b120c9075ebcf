#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "isoconv/estimate.hpp"

namespace isoconv {

inline constexpr const char* kVersion = "0.1.0";

/// One CSV line: suite,n,p,quantity,value,std_error,direction,seed,samples.
struct Row {
  std::string suite;
  int n = 0;
  std::optional<double> p;
  std::string quantity;
  double value = 0.0;
  double std_error = 0.0;
  Bound direction = Bound::exact;
  std::uint64_t seed = 0;
  std::int64_t samples = 0;

  bool operator==(const Row& o) const;
};

Row make_row(const std::string& suite, int n, std::optional<double> p, const std::string& quantity,
             const Estimate& e);

struct Fit {
  std::string name;
  double slope = 0.0;
  double intercept = 0.0;
  double half_width = 0.0;
  std::string note;
};

struct Assertion {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Report {
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  std::vector<Row> rows;
  std::vector<Fit> fits;
  std::vector<Assertion> assertions;
  /// Command-specific structured output; omitted from JSON when null.
  nlohmann::ordered_json summary;

  bool passed() const;
};

inline constexpr const char* kCsvHeader = "suite,n,p,quantity,value,std_error,direction,seed,samples";

/// Header plus one line per row; numbers printed with 17 significant digits.
std::string to_csv(const std::vector<Row>& rows);
std::vector<Row> rows_from_csv(const std::string& text);

nlohmann::ordered_json to_json(const Report& report);
Report report_from_json(const nlohmann::ordered_json& j);

/// Writes `report` to `path` as csv or json; I/O errors name the path.
void write_csv(const Report& report, const std::string& path);
void write_json(const Report& report, const std::string& path);
std::vector<Row> read_csv(const std::string& path);
Report read_json(const std::string& path);

/// "csv" or "json" from a format name or a file extension; empty if neither.
std::string output_format(const std::string& target);

}  // namespace isoconv
