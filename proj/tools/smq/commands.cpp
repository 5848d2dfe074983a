#include "smq/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "smq/identities.hpp"
#include "smq/montecarlo.hpp"
#include "smq/output.hpp"
#include "smq/uncertainty.hpp"

namespace smq::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string atom_label(double magnitude) { return "[|lambda|=" + format_number(magnitude) + "]"; }

std::vector<VerificationReport> suite_for(const ModelState& state, const RunConfig& config) {
  const Tolerances& tol = config.tolerances;
  const double mean = position_mean(state);
  const double q0 = config.q0.value_or(mean);
  std::vector<VerificationReport> out;
  out.push_back(uncertainty_product_general(state, q0, tol));
  if (state.is_canonical()) {
    out.push_back(uncertainty_product_quantum(state, q0, tol));
    out.push_back(momentum_variance_decomposition(state, tol).report);
    out.push_back(uncertainty_chain_report(state, mean, tol));
    out.push_back(fisher_link_report(state, tol));
    out.push_back(cramer_rao_report(state.branches()[0].rho(), tol, config.floor_factor));
    out.push_back(osmotic_mean_report(state, tol));
    out.push_back(osmotic_uncertainty_product(state, tol));
    out.push_back(quantum_potential_identity_report(state, tol));
  } else {
    for (const auto& b : state.branches()) {
      auto r = cramer_rao_report(b.rho(), tol, config.floor_factor);
      r.name += atom_label(b.magnitude());
      out.push_back(std::move(r));
    }
  }
  return out;
}

/// Runs fn(i) for i in [0, n) on up to `threads` workers; rethrows the
/// exception of the lowest failing index.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), n));
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

const StateEntry& single_state(const RunConfig& config, const char* command) {
  if (config.states.size() != 1) {
    throw ConfigError(std::string(command) + " runs on a single state; the config lists " +
                      std::to_string(config.states.size()));
  }
  return config.states.front();
}

std::string padded(const std::string& s, std::size_t width) {
  return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

std::string short_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

void print_report_table(const ojson& reports, std::ostream& out) {
  std::size_t state_w = 6, name_w = 5;
  for (const auto& r : reports) {
    state_w = std::max(state_w, r.value("state", std::string()).size() + 2);
    name_w = std::max(name_w, r.value("name", std::string()).size() + 2);
  }
  out << padded("STATUS", 8) << padded("STATE", state_w) << padded("NAME", name_w)
      << padded("LHS", 20) << padded("BOUND_OR_RHS", 20) << padded("SLACK", 18) << "TOLERANCE\n";
  for (const auto& r : reports) {
    const auto num = [&](const char* key) {
      return r.contains(key) && r.at(key).is_number() ? short_number(r.at(key).get<double>())
                                                       : std::string("-");
    };
    out << padded(r.value("pass", false) ? "PASS" : "FAIL", 8)
        << padded(r.value("state", std::string()), state_w) << padded(r.value("name", std::string()), name_w)
        << padded(num("lhs"), 20) << padded(num("bound_or_rhs"), 20) << padded(num("slack"), 18)
        << num("tolerance") << "\n";
  }
}

ojson reports_array(const std::vector<StateReports>& all) {
  ojson arr = ojson::array();
  for (const auto& s : all) {
    for (const auto& r : s.reports) arr.push_back(report_json(r, s.label));
  }
  return arr;
}

double bin_average(const VelocityDistribution& d, double lo, double hi) {
  return (d.cdf(hi) - d.cdf(lo)) / (hi - lo);
}

}  // namespace

std::vector<StateReports> verify_reports(const RunConfig& config) {
  std::vector<std::optional<ModelState>> states(config.states.size());
  for (std::size_t i = 0; i < states.size(); ++i) states[i] = config.build_state(config.states[i]);
  std::vector<StateReports> out(states.size());
  parallel_for(states.size(), config.threads, [&](std::size_t i) {
    out[i].label = config.states[i].label;
    out[i].reports = suite_for(*states[i], config);
  });
  return out;
}

SweepTable sweep_table(const RunConfig& config) {
  if (!config.sweep) throw ConfigError("sweep: the config has no 'sweep' block");
  const StateEntry& base = single_state(config, "sweep");
  const SweepSettings& sw = *config.sweep;
  const StateKind kind = base.spec.kind;

  if (sw.parameter == SweepParameter::slit_width && kind != StateKind::gaussian_ground &&
      kind != StateKind::boosted_gaussian) {
    throw ConfigError(std::string("sweep: parameter a applies to gaussian_ground and boosted_gaussian, not ") +
                      to_string(kind));
  }
  if (sw.parameter == SweepParameter::lambda_atoms) {
    if (kind == StateKind::tabulated) {
      throw ConfigError("sweep: lambda_atoms needs per-branch widths; tabulated states have one density");
    }
    if (config.lambda_atoms) {
      throw ConfigError("sweep: lambda_atoms sets the lambda distribution itself; remove 'lambda' from the config");
    }
  }

  SweepTable table;
  table.parameter = to_string(sw.parameter);
  const bool general = sw.parameter == SweepParameter::lambda_atoms || config.lambda_atoms.has_value();
  table.form = general ? "general" : "quantum";

  std::vector<std::optional<ModelState>> states(sw.values.size());
  std::vector<double> q0s(sw.values.size());
  for (std::size_t i = 0; i < sw.values.size(); ++i) {
    const double v = sw.values[i];
    RunConfig local = config;
    StateEntry entry = base;
    if (sw.parameter == SweepParameter::slit_width) {
      entry.spec.omega = v * entry.spec.hbar / entry.spec.mass;
    } else if (sw.parameter == SweepParameter::lambda_atoms) {
      const auto dist = LambdaDistribution::symmetric_spread(entry.spec.hbar, v);
      local.lambda_atoms = std::vector<LambdaAtom>(dist.atoms().begin(), dist.atoms().end());
    }
    entry.label = base.label + "@" + table.parameter + "=" + format_number(v);
    states[i] = local.build_state(entry);
    q0s[i] = sw.parameter == SweepParameter::q0 ? v : config.q0.value_or(position_mean(*states[i]));
  }

  table.rows.resize(sw.values.size());
  parallel_for(sw.values.size(), config.threads, [&](std::size_t i) {
    const ModelState& st = *states[i];
    const VerificationReport r = general ? uncertainty_product_general(st, q0s[i], config.tolerances)
                                         : uncertainty_product_quantum(st, q0s[i], config.tolerances);
    const auto factor = general ? r.detail("weighted_velocity_deviation") : r.detail("velocity_deviation_moment");
    table.rows[i] = {sw.values[i], *r.detail("position_second_moment"), *factor, r.lhs, r.bound_or_rhs, r.slack};
  });
  return table;
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
  const auto all = verify_reports(config);
  const ojson cfg = resolved_config_json(config);

  ojson doc;
  doc["config"] = cfg;
  doc["reports"] = reports_array(all);

  std::vector<std::string> failed;
  std::size_t total = 0;
  for (const auto& s : all) {
    for (const auto& r : s.reports) {
      ++total;
      if (!r.pass) failed.push_back(s.label + "/" + r.name);
    }
  }

  std::ostringstream summary;
  summary << "smq verify\n";
  summary << "config: " << cfg.dump() << "\n\n";
  print_report_table(doc["reports"], summary);
  summary << "\n";
  if (failed.empty()) {
    summary << "all " << total << " reports passed\n";
  } else {
    summary << failed.size() << " of " << total << " reports failed:\n";
    for (const auto& f : failed) summary << "  " << f << "\n";
  }

  write_file(config.out_dir / "reports.json", doc.dump(2) + "\n");
  write_file(config.out_dir / "summary.txt", summary.str());
  log << summary.str();
  return failed.empty() ? kExitOk : kExitCheckFailed;
}

int cmd_sweep(const RunConfig& config, std::ostream& log) {
  const SweepTable table = sweep_table(config);
  CsvTable csv({table.parameter, "sigma_q", "sigma_qdot", "product", "bound", "slack"});
  for (const auto& line : config_comment_lines(resolved_config_json(config))) csv.add_comment(line);
  csv.add_comment("form: " + table.form + (table.form == "quantum"
                                               ? " (sigma_qdot = <(qdot - d_qS/m)^2>, bound hbar^2/4m^2)"
                                               : " (sigma_qdot = lambda-weighted velocity deviation, bound 1)"));
  for (const auto& r : table.rows) {
    csv.add_row({r.value, r.sigma_q, r.sigma_qdot, r.product, r.bound, r.slack});
  }
  write_file(config.out_dir / "sweep.csv", csv.str());
  log << "sweep over " << table.parameter << " (" << table.form << " form), " << table.rows.size()
      << " rows written to " << (config.out_dir / "sweep.csv").string() << "\n";
  return kExitOk;
}

int cmd_sample(const RunConfig& config, std::ostream& log, bool write_samples) {
  const StateEntry& entry = single_state(config, "sample");
  const ModelState state = config.build_state(entry);
  const auto& mc = config.montecarlo;
  const double q0 = config.q0.value_or(position_mean(state));

  const SampleBatch batch = sample(state, mc.n, mc.seed, config.threads);
  const McUncertainty est = estimate_uncertainty_product(batch, state, q0);
  const VelocityHistogram hist = velocity_histogram(batch, state, mc.bins);
  const ojson cfg = resolved_config_json(config);

  CsvTable csv({"bin_lo", "bin_hi", "density", "analytic_density"});
  for (const auto& line : config_comment_lines(cfg)) csv.add_comment(line);
  csv.add_comment("outliers_low " + std::to_string(hist.outliers_low) + ", outliers_high " +
                  std::to_string(hist.outliers_high) + " (counted into the end bins)");
  for (std::size_t b = 0; b < hist.counts.size(); ++b) {
    const double lo = hist.edges[b], hi = hist.edges[b + 1];
    std::optional<double> analytic;
    if (hist.analytic) analytic = bin_average(*hist.analytic, lo, hi);
    csv.add_row({lo, hi, hist.density[b], analytic});
  }

  const auto moment = [](const McMoment& m) {
    return ojson{{"estimate", m.estimate}, {"standard_error", m.standard_error}};
  };
  ojson doc;
  doc["config"] = cfg;
  doc["state"] = entry.label;
  doc["n_samples"] = batch.size();
  doc["seed"] = batch.seed;
  doc["q0"] = q0;
  doc["estimates"] = {{"position_moment", moment(est.position_moment)},
                      {"velocity_deviation", moment(est.velocity_deviation)},
                      {"product", moment(est.product)},
                      {"sigma_q", moment(est.sigma_q)},
                      {"sigma_qdot", moment(est.sigma_qdot)}};
  doc["quadrature"] = {{"product", est.quadrature_product},
                       {"sigma_q", est.quadrature_sigma_q},
                       {"sigma_qdot", est.quadrature_sigma_qdot}};
  ojson reports = ojson::array();
  bool pass = true;
  for (const auto& r : est.reports) {
    reports.push_back(report_json(r, entry.label));
    pass = pass && r.pass;
  }
  doc["reports"] = std::move(reports);
  doc["histogram"] = {{"bins", hist.counts.size()},
                      {"mean", hist.mean},
                      {"std_dev", hist.std_dev},
                      {"outliers_low", hist.outliers_low},
                      {"outliers_high", hist.outliers_high}};
  if (hist.ks) {
    doc["ks"] = {{"statistic", hist.ks->statistic},
                 {"critical_value", hist.ks->critical_value},
                 {"level", 0.01},
                 {"pass", hist.ks->pass}};
    pass = pass && hist.ks->pass;
  } else {
    doc["ks"] = nullptr;
  }
  doc["pass"] = pass;

  write_file(config.out_dir / "histogram.csv", csv.str());
  write_file(config.out_dir / "stats.json", doc.dump(2) + "\n");
  if (write_samples) {
    const auto qdot = sample_velocities(batch, state);
    std::string text;
    text.reserve(batch.size() * 64);
    for (const auto& line : config_comment_lines(cfg)) text += "# " + line + "\r\n";
    text += "q,lambda,qdot\r\n";
    for (std::size_t i = 0; i < batch.size(); ++i) {
      text += format_number(batch.samples[i].q) + "," + format_number(batch.samples[i].lambda) + "," +
              format_number(qdot[i]) + "\r\n";
    }
    write_file(config.out_dir / "samples.csv", text);
  }

  log << "sampled " << batch.size() << " points (seed " << batch.seed << ")\n";
  print_report_table(doc["reports"], log);
  if (hist.ks) {
    log << "KS statistic " << short_number(hist.ks->statistic) << " vs 1% critical value "
        << short_number(hist.ks->critical_value) << (hist.ks->pass ? " PASS" : " FAIL") << "\n";
  }
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_report(const std::filesystem::path& file, std::ostream& out) {
  std::ifstream in(file);
  if (!in) throw ConfigError("report: cannot open " + file.string());
  ojson doc;
  try {
    doc = ojson::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("report: " + file.string() + ": " + e.what());
  }
  const ojson* reports = nullptr;
  if (doc.is_array()) {
    reports = &doc;
  } else if (doc.is_object() && doc.contains("reports") && doc.at("reports").is_array()) {
    reports = &doc.at("reports");
  } else {
    throw ConfigError("report: " + file.string() + " holds no report list");
  }
  if (doc.is_object() && doc.contains("config")) {
    const auto& cfg = doc.at("config");
    out << "states:";
    for (const auto& s : cfg.value("states", ojson::array())) {
      out << " " << s.value("label", std::string("?"));
      if (s.contains("grid")) {
        const auto& g = s.at("grid");
        out << " [" << short_number(g.value("q_min", 0.0)) << ", " << short_number(g.value("q_max", 0.0))
            << "; " << g.value("n_points", 0) << " points]";
      }
    }
    out << "\n";
    if (cfg.contains("tolerance")) out << "tolerance: " << short_number(cfg.at("tolerance").get<double>()) << "\n";
  }
  if (doc.is_object() && doc.contains("estimates")) {
    out << "Monte Carlo, n = " << doc.value("n_samples", 0) << ", seed " << doc.value("seed", 0) << "\n";
    for (const auto& [key, m] : doc.at("estimates").items()) {
      out << "  " << padded(key, 20) << short_number(m.value("estimate", 0.0)) << " +/- "
          << short_number(m.value("standard_error", 0.0)) << "\n";
    }
    if (doc.contains("ks") && doc.at("ks").is_object()) {
      const auto& ks = doc.at("ks");
      out << "  KS statistic " << short_number(ks.value("statistic", 0.0)) << " vs "
          << short_number(ks.value("critical_value", 0.0)) << (ks.value("pass", false) ? " PASS" : " FAIL")
          << "\n";
    }
  }
  out << "\n";
  print_report_table(*reports, out);
  std::size_t failed = 0;
  for (const auto& r : *reports) failed += r.value("pass", false) ? 0 : 1;
  out << "\n" << reports->size() - failed << " passed, " << failed << " failed\n";
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical verification of the uncertainty relations of the statistical model"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", "smq 0.1.0");

  std::string config_path;
  Overrides overrides;
  std::string out_dir;
  bool write_samples = false;
  std::string report_file;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "Output directory (overrides output_dir)");
    sub->add_option("--seed", overrides.seed, "Monte Carlo seed (overrides montecarlo.seed)");
    sub->add_option("--grid-points", overrides.grid_points, "Grid points (overrides grid.n_points)");
    sub->add_option("--tol", overrides.tolerance, "Relative tolerance (overrides tolerance)");
    sub->add_option("--threads", overrides.threads, "Worker threads; outputs do not depend on it");
  };
  auto* verify = app.add_subcommand("verify", "Run the verification suite; writes reports.json and summary.txt");
  auto* sweep = app.add_subcommand("sweep", "Sweep a, lambda_atoms or q0; writes sweep.csv");
  auto* sample_cmd = app.add_subcommand("sample", "Monte Carlo sampling; writes histogram.csv and stats.json");
  auto* report = app.add_subcommand("report", "Pretty-print a JSON report file");
  add_common(verify);
  add_common(sweep);
  add_common(sample_cmd);
  sample_cmd->add_flag("--write-samples", write_samples, "Also write samples.csv");
  report->add_option("file", report_file, "reports.json or stats.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "smq 0.1.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "smq: " << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    if (report->parsed()) return cmd_report(report_file, out);
    if (!out_dir.empty()) overrides.out_dir = out_dir;
    const RunConfig config = load_run_config(config_path, overrides);
    if (verify->parsed()) return cmd_verify(config, out);
    if (sweep->parsed()) return cmd_sweep(config, out);
    return cmd_sample(config, out, write_samples);
  } catch (const ConfigError& e) {
    err << "smq: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::invalid_argument& e) {
    err << "smq: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "smq: " << e.what() << "\n";
    return kExitIoError;
  }
}

}  // namespace smq::cli
