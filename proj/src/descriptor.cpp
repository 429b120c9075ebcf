#include "isoconv/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "isoconv/error.hpp"

namespace isoconv {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

bool strip_suffix(std::string& s, const std::string& suffix) {
  if (s.size() > suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0) {
    s.resize(s.size() - suffix.size());
    return true;
  }
  return false;
}

double parse_real(const std::string& text, const char* field) {
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConstructionError(field, "cannot parse '" + text + "' as a number");
}

int parse_dim(const std::string& text) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(text, &used);
    if (used == text.size() && v >= 1) return v;
  } catch (const std::exception&) {
  }
  throw ConstructionError("dim", "dimension must be a positive integer, got '" + text + "'");
}

std::string join(const std::vector<std::string>& parts, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < parts.size(); ++i) out += (i > from ? ":" : "") + parts[i];
  return out;
}

}  // namespace

Eigen::VectorXd read_numbers(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::vector<double> values;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    for (char& c : line)
      if (c == ',' || c == ';' || c == '\t') c = ' ';
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) values.push_back(parse_real(tok, "file"));
  }
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

Eigen::VectorXd parse_number_list(const std::string& text) {
  if (!text.empty() && text.front() == '@') return read_numbers(text.substr(1));
  std::string spaced = text;
  std::replace(spaced.begin(), spaced.end(), ',', ' ');
  std::istringstream ls(spaced);
  std::vector<double> values;
  for (std::string tok; ls >> tok;) values.push_back(parse_real(tok, "list"));
  return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

ConvexBody parse_body(const std::string& descriptor) {
  std::string d = descriptor;
  const bool unit = strip_suffix(d, ":unit");
  const auto parts = split(d, ':');
  if (parts.size() < 2) throw ConstructionError("body", "expected family:dim[:params], got '" + descriptor + "'");
  const std::string& family = parts[0];
  const int dim = parse_dim(parts[1]);
  const std::string params = join(parts, 2);
  auto no_params = [&] {
    if (!params.empty()) throw ConstructionError("body", "'" + family + "' takes no parameters");
  };

  ConvexBody body = [&]() -> ConvexBody {
    if (family == "ball") {
      no_params();
      return make_ball(dim);
    }
    if (family == "cube") {
      no_params();
      return make_cube(dim);
    }
    if (family == "cross" || family == "cross-polytope" || family == "crosspolytope") {
      no_params();
      return make_cross_polytope(dim);
    }
    if (family == "lpball") {
      if (params.empty()) throw ConstructionError("p", "lpball needs an exponent, e.g. lpball:8:1");
      const double p = parse_real(params, "p");
      return std::isinf(p) ? make_cube(dim) : make_lp_ball(dim, p);
    }
    if (family == "ellipsoid") {
      const Eigen::VectorXd v = parse_number_list(params);
      if (v.size() == dim) return make_ellipsoid(v.asDiagonal().toDenseMatrix());
      if (v.size() == static_cast<Eigen::Index>(dim) * dim)
        return make_ellipsoid(Eigen::Map<const Eigen::Matrix<double, -1, -1, Eigen::RowMajor>>(v.data(), dim, dim));
      throw ConstructionError("matrix", "ellipsoid:" + std::to_string(dim) + " needs " + std::to_string(dim) +
                                            " semi-axes or " + std::to_string(dim * dim) + " matrix entries, got " +
                                            std::to_string(v.size()));
    }
    if (family == "vpolytope") {
      const Eigen::VectorXd v = parse_number_list(params);
      if (v.size() == 0 || v.size() % dim != 0)
        throw ConstructionError("vertices", "vertex list length " + std::to_string(v.size()) +
                                                " is not a multiple of dim " + std::to_string(dim));
      // One vertex per row in the file; the body wants one per column.
      const Eigen::Index count = v.size() / dim;
      return make_v_polytope(
          Eigen::Map<const Eigen::Matrix<double, -1, -1, Eigen::RowMajor>>(v.data(), count, dim).transpose());
    }
    throw ConstructionError("family", "unknown body family '" + family + "'");
  }();
  return unit ? unit_volume(body) : body;
}

LogConcaveMeasure parse_measure(const std::string& descriptor, bool allow_mcmc) {
  std::string d = descriptor;
  const bool iso = strip_suffix(d, ":iso");
  const auto colon = d.find(':');
  if (colon == std::string::npos) throw ConstructionError("measure", "expected family:..., got '" + descriptor + "'");
  const std::string family = d.substr(0, colon);
  const std::string rest = d.substr(colon + 1);

  LogConcaveMeasure mu = [&]() -> LogConcaveMeasure {
    if (family == "uniform") return make_uniform(parse_body(rest), allow_mcmc);
    const auto parts = split(rest, ':');
    const int dim = parse_dim(parts.at(0));
    const std::string params = join(parts, 1);
    if (family == "gaussian") {
      if (params.empty()) return make_gaussian(dim);
      const Eigen::VectorXd v = parse_number_list(params);
      if (v.size() != dim)
        throw ConstructionError("variances", "gaussian:" + std::to_string(dim) + " needs " + std::to_string(dim) +
                                                 " variances, got " + std::to_string(v.size()));
      return make_gaussian(dim, v);
    }
    if (family == "exponential") {
      if (!params.empty()) throw ConstructionError("measure", "exponential takes no parameters");
      return make_exponential_product(dim);
    }
    throw ConstructionError("family", "unknown measure family '" + family + "'");
  }();
  return iso ? isotropic_normalization(mu) : mu;
}

}  // namespace isoconv
