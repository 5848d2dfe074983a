#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "smq/report.hpp"

namespace smq::cli {

/// Shortest round-trip decimal form; "nan"/"inf" never occur in valid output.
std::string format_number(double x);

nlohmann::ordered_json report_json(const VerificationReport& report, std::string_view state_label);

/// RFC-4180 table. Leading '#' lines carry the resolved config.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_comment(std::string line);
  void add_row(const std::vector<std::optional<double>>& values);
  std::string str() const;

 private:
  std::vector<std::string> comments_;
  std::vector<std::string> header_;
  std::vector<std::string> rows_;
};

/// One-line compact JSON for CSV comment headers.
std::vector<std::string> config_comment_lines(const nlohmann::ordered_json& config);

/// Writes through a temporary file and renames, so readers never see a partial file.
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace smq::cli
