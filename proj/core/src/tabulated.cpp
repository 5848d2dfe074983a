#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "smq/numerics.hpp"
#include "smq/states.hpp"

namespace smq {
namespace {

constexpr double kTabulatedNormTolerance = 1e-6;

double number_at(const nlohmann::json& obj, const char* key) {
  if (!obj.contains(key) || !obj.at(key).is_number()) {
    throw std::invalid_argument(std::string("tabulated state: missing numeric field '") + key + "'");
  }
  return obj.at(key).get<double>();
}

std::vector<double> array_at(const nlohmann::json& obj, const char* key, std::size_t n) {
  if (!obj.contains(key) || !obj.at(key).is_array()) {
    throw std::invalid_argument(std::string("tabulated state: missing array '") + key + "'");
  }
  const auto& arr = obj.at(key);
  if (arr.size() != n) {
    throw std::invalid_argument(std::string("tabulated state: '") + key + "' has " +
                                std::to_string(arr.size()) + " entries, grid has " +
                                std::to_string(n));
  }
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!arr[i].is_number()) {
      throw std::invalid_argument(std::string("tabulated state: '") + key + "[" +
                                  std::to_string(i) + "]' is not a number");
    }
    out.push_back(arr[i].get<double>());
  }
  return out;
}

}  // namespace

TabulatedState parse_tabulated_state(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("tabulated state: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("grid") || !doc.at("grid").is_object()) {
    throw std::invalid_argument("tabulated state: expected an object with a 'grid' object");
  }
  const auto& g = doc.at("grid");
  const double q_min = number_at(g, "q_min");
  const double q_max = number_at(g, "q_max");
  if (!g.contains("n_points") || !g.at("n_points").is_number_unsigned()) {
    throw std::invalid_argument("tabulated state: grid.n_points must be a non-negative integer");
  }
  const Grid1D grid(q_min, q_max, g.at("n_points").get<std::size_t>());

  TabulatedState t{grid, array_at(doc, "rho", grid.size()), array_at(doc, "phase", grid.size()),
                   number_at(doc, "mass"), number_at(doc, "hbar"), 1.0};
  if (!(t.mass > 0.0)) throw std::invalid_argument("tabulated state: mass must be positive");
  if (!(t.hbar > 0.0)) throw std::invalid_argument("tabulated state: hbar must be positive");
  for (std::size_t i = 0; i < t.rho.size(); ++i) {
    if (!(t.rho[i] >= 0.0) || !std::isfinite(t.rho[i])) {
      throw std::invalid_argument("tabulated state: rho[" + std::to_string(i) +
                                  "] is negative or non-finite");
    }
  }
  const double norm = integrate(grid, t.rho);
  if (std::abs(norm - 1.0) > kTabulatedNormTolerance) {
    std::ostringstream msg;
    msg.precision(10);
    msg << "tabulated state: rho integrates to " << norm << ", need 1 within "
        << kTabulatedNormTolerance;
    throw std::invalid_argument(msg.str());
  }
  t.normalization_correction = 1.0 / norm;
  for (double& r : t.rho) r *= t.normalization_correction;
  return t;
}

TabulatedState load_tabulated_state(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("tabulated state: cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_tabulated_state(buffer.str());
}

}  // namespace smq
