#include "smq/output.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace smq::cli {

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json report_json(const VerificationReport& r, std::string_view state_label) {
  nlohmann::ordered_json j;
  j["name"] = r.name;
  j["state"] = std::string(state_label);
  j["kind"] = to_string(r.kind);
  j["lhs"] = r.lhs;
  j["bound_or_rhs"] = r.bound_or_rhs;
  j["slack"] = r.slack;
  j["tolerance"] = r.tolerance;
  j["relative_tolerance"] = r.relative_tolerance;
  if (r.discretization_estimate) {
    j["discretization_estimate"] = *r.discretization_estimate;
  } else {
    j["discretization_estimate"] = nullptr;
  }
  j["masked_mass"] = r.masked_mass;
  j["pass"] = r.pass;
  if (r.grid) {
    j["grid"] = {{"q_min", r.grid->q_min()}, {"q_max", r.grid->q_max()}, {"n_points", r.grid->size()}};
  } else {
    j["grid"] = nullptr;
  }
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  for (const auto& [key, value] : r.details) details[key] = value;
  j["details"] = std::move(details);
  return j;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

void CsvTable::add_comment(std::string line) { comments_.push_back(std::move(line)); }

void CsvTable::add_row(const std::vector<std::optional<double>>& values) {
  if (values.size() != header_.size()) throw std::invalid_argument("csv: row width mismatch");
  std::string row;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) row += ',';
    if (values[i]) row += format_number(*values[i]);
  }
  rows_.push_back(std::move(row));
}

std::string CsvTable::str() const {
  std::string out;
  for (const auto& c : comments_) out += "# " + c + "\r\n";
  for (std::size_t i = 0; i < header_.size(); ++i) {
    if (i) out += ',';
    out += csv_field(header_[i]);
  }
  out += "\r\n";
  for (const auto& r : rows_) out += r + "\r\n";
  return out;
}

std::vector<std::string> config_comment_lines(const nlohmann::ordered_json& config) {
  return {"smq resolved config", config.dump()};
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw std::runtime_error("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace smq::cli
