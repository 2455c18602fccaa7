// Command-line driver: sweeps, figure presets and oracle verification.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ecs/sweep.hpp"

namespace {

using namespace ecs::sweep;

constexpr int kOracleFailure = 1;
constexpr int kUsageError = 2;
constexpr int kIoError = 3;

const char* const kFooter = R"(Limits are evaluated at finite proxies: alpha -> 0 at alpha = 1e-3 and
alpha -> infinity at alpha = 6. alpha must be > 0 (the odd ECS vanishes at 0).

Measures: fraction, eof_bound, concurrence, eof, negativity, pt_min_eig,
teleport_fidelity, env_entanglement, bell_fraction, bell_concurrence,
bell_eof, bell_negativity. concurrence, eof, negativity and pt_min_eig are
only defined for the symmetric channel. env_entanglement is the EOF of the
environment pair (sym) or the EOF lower bound of mode 1 with E (asym).

Environment:
  ECS_MAX_FOCK_DIM   largest single-mode Fock dimension for the oracle (default 512))";

struct Output {
  std::string path;
  std::string format = "csv";
};

void write(const std::vector<SweepRecord>& records, const SweepConfig& cfg, const Output& out,
           const std::string& path) {
  if (out.format == "json") {
    emit_json(records, cfg, path);
  } else {
    emit_csv(records, cfg, path);
  }
}

// Reports per-record failures and oracle deltas; returns the exit code.
int report(const std::vector<SweepRecord>& records, const SweepConfig& cfg) {
  for (const SweepRecord& r : records) {
    if (r.failure) {
      std::fprintf(stderr, "alpha=%.12g eta=%.12g: %s\n", r.alpha, r.eta, r.failure->c_str());
    }
  }
  if (!cfg.oracle) {
    for (const SweepRecord& r : records) {
      if (r.failure) return kOracleFailure;
    }
    return 0;
  }
  return oracle_passed(records, cfg.tol) ? 0 : kOracleFailure;
}

void add_format(CLI::App* cmd, Output& out) {
  cmd->add_option("--out", out.path, "Output file")->required();
  cmd->add_option("--format", out.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entangled coherent states under photon loss: sweeps and verification"};
  app.footer(kFooter);
  app.require_subcommand(1);

  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)")->capture_default_str();

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Evaluate measures over an (alpha, eta) grid");
  std::string channel_text, alpha_text, eta_text, measures_text;
  bool oracle = false;
  double tol = 1e-8;
  Output sweep_out;
  sweep_cmd->add_option("--channel", channel_text, "asym or sym")
      ->required()
      ->check(CLI::IsMember({"asym", "sym"}));
  sweep_cmd->add_option("--alpha", alpha_text, "start:stop:steps or a comma list")->required();
  sweep_cmd->add_option("--eta", eta_text, "start:stop:steps or a comma list")->required();
  sweep_cmd->add_option("--measures", measures_text, "Comma-separated measure names")->required();
  sweep_cmd->add_flag("--oracle", oracle, "Recompute each measure with the Fock oracle");
  sweep_cmd->add_option("--tol", tol, "Largest accepted oracle delta")->capture_default_str();
  add_format(sweep_cmd, sweep_out);

  // preset
  auto* preset_cmd = app.add_subcommand("preset", "Run a compiled-in figure configuration");
  std::string preset_name;
  Output preset_out;
  std::string names;
  for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
  preset_cmd->add_option("name", preset_name, "One of: " + names)
      ->required()
      ->check(CLI::IsMember(preset_names()));
  add_format(preset_cmd, preset_out);

  // verify
  auto* verify_cmd = app.add_subcommand(
      "verify", "Compare closed forms with the Fock oracle; exit 0 iff every delta passes");
  std::string grid_text = "coarse";
  double verify_tol = 1e-8;
  verify_cmd->add_option("--grid", grid_text, "Verification grid")
      ->check(CLI::IsMember({"coarse", "fine"}))
      ->capture_default_str();
  verify_cmd->add_option("--tol", verify_tol, "Largest accepted oracle delta")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sweep_cmd) {
      SweepConfig cfg;
      try {
        cfg.channel = *parse_channel(channel_text);
        cfg.alpha = Axis::parse(alpha_text);
        cfg.eta = Axis::parse(eta_text);
        cfg.measures = parse_measures(measures_text);
        cfg.oracle = oracle;
        cfg.tol = tol;
        cfg.threads = threads;
        cfg.validate();
      } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsageError;
      }
      const auto records = run_sweep(cfg);
      write(records, cfg, sweep_out, sweep_out.path);
      return report(records, cfg);
    }

    if (*preset_cmd) {
      int status = 0;
      for (PresetOutput& o : preset(preset_name).outputs) {
        o.config.threads = threads;
        const auto records = run_sweep(o.config);
        const std::string path = output_path(preset_out.path, o.suffix);
        write(records, o.config, preset_out, path);
        std::cout << path << '\n';
        status = std::max(status, report(records, o.config));
      }
      return status;
    }

    if (*verify_cmd) {
      const VerifyGrid grid = grid_text == "fine" ? VerifyGrid::fine : VerifyGrid::coarse;
      bool pass = true;
      for (SweepConfig cfg : verify_configs(grid)) {
        cfg.tol = verify_tol;
        cfg.threads = threads;
        const auto records = run_sweep(cfg);
        double worst = 0.0;
        std::size_t failed = 0;
        for (const SweepRecord& r : records) {
          if (r.failure || !r.oracle_delta || !(*r.oracle_delta <= verify_tol)) ++failed;
          if (r.oracle_delta && *r.oracle_delta > worst) worst = *r.oracle_delta;
        }
        std::cout << "# channel=" << to_string(cfg.channel) << '\n';
        write_csv(std::cout, cfg.measures, records);
        std::printf("# channel=%s points=%zu failed=%zu max_delta=%.3e tol=%.1e %s\n",
                    std::string(to_string(cfg.channel)).c_str(), records.size(), failed, worst,
                    verify_tol, failed == 0 ? "PASS" : "FAIL");
        std::fflush(stdout);
        report(records, cfg);
        pass = pass && failed == 0;
      }
      return pass ? 0 : kOracleFailure;
    }
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIoError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return 0;
}
