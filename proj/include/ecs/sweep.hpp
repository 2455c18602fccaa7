#pragma once

// Parameter sweeps over (alpha, eta), CSV/JSON emission and the compiled-in
// figure presets used by the command-line driver.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecs/fock_oracle.hpp"

namespace ecs::sweep {

enum class Channel { asymmetric, symmetric };

enum class Measure {
  fraction,
  eof_bound,
  concurrence,
  eof,
  negativity,
  pt_min_eig,
  teleport_fidelity,
  env_entanglement,
  bell_fraction,
  bell_concurrence,
  bell_eof,
  bell_negativity,
};

std::string_view to_string(Measure m);
std::string_view to_string(Channel c);
std::optional<Measure> parse_measure(std::string_view name);
std::optional<Channel> parse_channel(std::string_view name);
/// Comma-separated measure list; throws std::invalid_argument on unknown names.
std::vector<Measure> parse_measures(std::string_view list);

/// Measures with a Fock-oracle counterpart for this channel.
bool has_oracle(Measure m, Channel c);
bool supported(Measure m, Channel c);

/// Grid axis: either start:stop:steps (inclusive, evenly spaced) or an explicit
/// comma list of values.
struct Axis {
  std::vector<double> values;

  static Axis linspace(double start, double stop, std::size_t steps);
  static Axis list(std::vector<double> values);
  /// Throws std::invalid_argument on malformed text.
  static Axis parse(std::string_view text);
};

struct SweepConfig {
  Axis alpha;
  Axis eta;
  Channel channel = Channel::symmetric;
  std::vector<Measure> measures;
  bool oracle = false;
  double tol = 1e-8;
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
  fock::OracleOptions oracle_options = fock::OracleOptions::from_env();

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

struct SweepRecord {
  double alpha = 0.0;
  double eta = 0.0;
  std::vector<double> values;  // one per requested measure, in config order
  std::optional<double> oracle_delta;
  std::optional<std::string> failure;
};

/// One record per grid point, alpha outer and eta inner, independent of the
/// thread count.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

/// True iff oracle mode produced no failures and every delta is <= tol.
bool oracle_passed(const std::vector<SweepRecord>& records, double tol);

/// The oracle_delta cell is empty (CSV) or null (JSON) when the record has
/// no delta; a failed oracle evaluation prints nan.
void write_csv(std::ostream& out, const std::vector<Measure>& measures,
               const std::vector<SweepRecord>& records);
void write_json(std::ostream& out, const std::vector<Measure>& measures,
                const std::vector<SweepRecord>& records);
/// Throws std::runtime_error if the file cannot be written.
void emit_csv(const std::vector<SweepRecord>& records, const SweepConfig& config,
              const std::string& path);
void emit_json(const std::vector<SweepRecord>& records, const SweepConfig& config,
               const std::string& path);

struct PresetOutput {
  std::string suffix;  // inserted before the file extension; empty for single-output presets
  SweepConfig config;
};

struct Preset {
  std::string name;
  std::string description;
  std::vector<PresetOutput> outputs;
};

std::vector<std::string> preset_names();
/// Throws std::invalid_argument for unknown names.
Preset preset(std::string_view name);
/// "out/fig4.csv" + "_eof" -> "out/fig4_eof.csv".
std::string output_path(const std::string& base, const std::string& suffix);

enum class VerifyGrid { coarse, fine };
/// Oracle-on configs for both channels over the verification grid.
std::vector<SweepConfig> verify_configs(VerifyGrid grid);

}  // namespace ecs::sweep
