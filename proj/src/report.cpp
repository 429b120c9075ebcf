#include "isoconv/report.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>

#include "isoconv/error.hpp"

namespace isoconv {

namespace {

std::string g17(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double read_double(const std::string& s) {
  if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  const double v = std::stod(s, &used);
  if (used != s.size()) throw std::invalid_argument(s);
  return v;
}

std::string quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

nlohmann::ordered_json number(double x) {
  if (std::isfinite(x)) return x;
  return g17(x);
}

double number_from(const nlohmann::ordered_json& j) {
  if (j.is_string()) return read_double(j.get<std::string>());
  return j.get<double>();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing: " + std::strerror(errno));
  out << text;
  out.flush();
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

bool Row::operator==(const Row& o) const {
  auto same = [](double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); };
  return suite == o.suite && n == o.n && p.has_value() == o.p.has_value() && (!p || same(*p, *o.p)) &&
         quantity == o.quantity && same(value, o.value) && same(std_error, o.std_error) &&
         direction == o.direction && seed == o.seed && samples == o.samples;
}

Row make_row(const std::string& suite, int n, std::optional<double> p, const std::string& quantity,
             const Estimate& e) {
  return Row{suite, n, p, quantity, e.value, e.std_error, e.bound, e.seed, e.n_samples};
}

bool Report::passed() const {
  for (const auto& a : assertions)
    if (!a.pass) return false;
  return true;
}

std::string to_csv(const std::vector<Row>& rows) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += quote(r.suite) + "," + std::to_string(r.n) + "," + (r.p ? g17(*r.p) : "") + "," + quote(r.quantity) +
           "," + g17(r.value) + "," + g17(r.std_error) + "," + std::string(to_string(r.direction)) + "," +
           std::to_string(r.seed) + "," + std::to_string(r.samples) + "\n";
  }
  return out;
}

std::vector<Row> rows_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw IoError("csv: missing or unexpected header");
  std::vector<Row> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9) throw IoError("csv line " + std::to_string(lineno) + ": expected 9 fields");
    try {
      Row r;
      r.suite = f[0];
      r.n = std::stoi(f[1]);
      if (!f[2].empty()) r.p = read_double(f[2]);
      r.quantity = f[3];
      r.value = read_double(f[4]);
      r.std_error = read_double(f[5]);
      r.direction = bound_from_string(f[6]);
      r.seed = std::stoull(f[7]);
      r.samples = std::stoll(f[8]);
      rows.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw IoError("csv line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

nlohmann::ordered_json to_json(const Report& report) {
  nlohmann::ordered_json j;
  j["meta"] = {{"version", kVersion}, {"config", report.config}};
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows) {
    nlohmann::ordered_json row;
    row["suite"] = r.suite;
    row["n"] = r.n;
    row["p"] = r.p ? number(*r.p) : nlohmann::ordered_json();
    row["quantity"] = r.quantity;
    row["value"] = number(r.value);
    row["std_error"] = number(r.std_error);
    row["direction"] = std::string(to_string(r.direction));
    row["seed"] = r.seed;
    row["samples"] = r.samples;
    j["rows"].push_back(std::move(row));
  }
  j["fits"] = nlohmann::ordered_json::array();
  for (const auto& f : report.fits)
    j["fits"].push_back({{"name", f.name},
                         {"slope", number(f.slope)},
                         {"intercept", number(f.intercept)},
                         {"half_width", number(f.half_width)},
                         {"note", f.note}});
  j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : report.assertions)
    j["assertions"].push_back({{"name", a.name}, {"pass", a.pass}, {"detail", a.detail}});
  if (!report.summary.is_null()) j["summary"] = report.summary;
  return j;
}

Report report_from_json(const nlohmann::ordered_json& j) {
  Report rep;
  try {
    rep.config = j.at("meta").at("config");
    for (const auto& r : j.at("rows")) {
      Row row;
      row.suite = r.at("suite").get<std::string>();
      row.n = r.at("n").get<int>();
      if (!r.at("p").is_null()) row.p = number_from(r.at("p"));
      row.quantity = r.at("quantity").get<std::string>();
      row.value = number_from(r.at("value"));
      row.std_error = number_from(r.at("std_error"));
      row.direction = bound_from_string(r.at("direction").get<std::string>());
      row.seed = r.at("seed").get<std::uint64_t>();
      row.samples = r.at("samples").get<std::int64_t>();
      rep.rows.push_back(std::move(row));
    }
    for (const auto& f : j.at("fits"))
      rep.fits.push_back(Fit{f.at("name").get<std::string>(), number_from(f.at("slope")),
                             number_from(f.at("intercept")), number_from(f.at("half_width")),
                             f.at("note").get<std::string>()});
    for (const auto& a : j.at("assertions"))
      rep.assertions.push_back(
          Assertion{a.at("name").get<std::string>(), a.at("pass").get<bool>(), a.at("detail").get<std::string>()});
    if (j.contains("summary")) rep.summary = j.at("summary");
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("json report: ") + e.what());
  }
  return rep;
}

void write_csv(const Report& report, const std::string& path) { write_text(path, to_csv(report.rows)); }

void write_json(const Report& report, const std::string& path) { write_text(path, to_json(report).dump(2) + "\n"); }

std::vector<Row> read_csv(const std::string& path) { return rows_from_csv(read_text(path)); }

Report read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return report_from_json(nlohmann::ordered_json::parse(text));
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError("'" + path + "': " + e.what());
  }
}

std::string output_format(const std::string& target) {
  if (target == "csv" || target == "json") return target;
  auto ends = [&](const char* ext) {
    const std::size_t n = std::strlen(ext);
    return target.size() > n && target.compare(target.size() - n, n, ext) == 0;
  };
  if (ends(".csv")) return "csv";
  if (ends(".json")) return "json";
  return "";
}

}  // namespace isoconv
