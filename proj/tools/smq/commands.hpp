#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "smq/report.hpp"
#include "smq/run_config.hpp"

namespace smq::cli {

enum ExitStatus : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitConfigError = 2,
  kExitIoError = 3,
};

struct StateReports {
  std::string label;
  std::vector<VerificationReport> reports;
};

/// The verification suite for every configured state, in declared order.
/// States are processed on config.threads workers; the order never changes.
std::vector<StateReports> verify_reports(const RunConfig& config);

struct SweepRow {
  double value;
  double sigma_q;
  double sigma_qdot;  // second factor of the checked product
  double product;
  double bound;
  double slack;
};

struct SweepTable {
  std::string parameter;
  std::string form;  // "quantum" or "general"
  std::vector<SweepRow> rows;
};

/// Throws ConfigError when the sweep parameter does not apply to the state.
SweepTable sweep_table(const RunConfig& config);

/// Each command writes its files under config.out_dir and returns an ExitStatus.
int cmd_verify(const RunConfig& config, std::ostream& log);
int cmd_sweep(const RunConfig& config, std::ostream& log);
int cmd_sample(const RunConfig& config, std::ostream& log, bool write_samples = false);
int cmd_report(const std::filesystem::path& file, std::ostream& out);

/// Full command line entry point; never throws.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace smq::cli
