#include "ecs/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ecs/channels.hpp"
#include "ecs/entanglement.hpp"

namespace ecs::sweep {

namespace {

struct MeasureName {
  Measure measure;
  std::string_view name;
};

constexpr MeasureName kMeasureNames[] = {
    {Measure::fraction, "fraction"},
    {Measure::eof_bound, "eof_bound"},
    {Measure::concurrence, "concurrence"},
    {Measure::eof, "eof"},
    {Measure::negativity, "negativity"},
    {Measure::pt_min_eig, "pt_min_eig"},
    {Measure::teleport_fidelity, "teleport_fidelity"},
    {Measure::env_entanglement, "env_entanglement"},
    {Measure::bell_fraction, "bell_fraction"},
    {Measure::bell_concurrence, "bell_concurrence"},
    {Measure::bell_eof, "bell_eof"},
    {Measure::bell_negativity, "bell_negativity"},
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view text) {
  const std::string s(text);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) {
    throw std::invalid_argument("not a finite number: '" + s + "'");
  }
  return v;
}

std::size_t parse_count(std::string_view text) {
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad step count: '" + std::string(text) + "'");
  }
  return n;
}

std::string format_value(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

// Values a single grid point needs, built on first use.
class PointCache {
 public:
  PointCache(double alpha, double eta) : alpha_(alpha), eta_(eta) {}

  const SymDensityMatrix& sym() {
    if (!sym_) sym_ = sym_density_matrix(sym_decohere(ecs_params(), LossChannel(eta_)));
    return *sym_;
  }
  const EntangledFraction& fraction(Channel c) {
    if (!fraction_) {
      fraction_ = c == Channel::symmetric ? fraction_sym_closed(alpha_, eta_)
                                          : fraction_asym_max(alpha_, eta_);
    }
    return *fraction_;
  }

 private:
  EcsParams ecs_params() const { return EcsParams::make(alpha_, Parity::minus); }

  double alpha_;
  double eta_;
  std::optional<SymDensityMatrix> sym_;
  std::optional<EntangledFraction> fraction_;
};

double analytic_value(Measure m, Channel c, double alpha, double eta, PointCache& cache) {
  const bool sym = c == Channel::symmetric;
  switch (m) {
    case Measure::fraction:
      return cache.fraction(c).value;
    case Measure::eof_bound:
      return eof_lower_bound(cache.fraction(c).value);
    case Measure::teleport_fidelity:
      return teleport_fidelity(cache.fraction(c).value);
    case Measure::concurrence:
      return wootters_concurrence(cache.sym().rho).value();
    case Measure::eof:
      return eof_from_concurrence(wootters_concurrence(cache.sym().rho));
    case Measure::negativity:
      return negativity(cache.sym().rho);
    case Measure::pt_min_eig:
      return pt_eigenvalues(cache.sym().rho)[0];
    case Measure::env_entanglement:
      // Same calculation with eta and 1 - eta exchanged.
      return sym ? eof_from_concurrence(concurrence_sym_closed(alpha, 1.0 - eta))
                 : eof_lower_bound(fraction_asym_max(alpha, 1.0 - eta).value);
    case Measure::bell_fraction:
      return sym ? bell_sym_fraction(eta) : bell_asym_fraction(eta);
    case Measure::bell_concurrence:
      return (sym ? bell_sym_concurrence(eta) : bell_asym_concurrence(eta)).value();
    case Measure::bell_eof:
      return eof_from_concurrence(sym ? bell_sym_concurrence(eta) : bell_asym_concurrence(eta));
    case Measure::bell_negativity:
      return bell_negativity(sym ? bell_sym_density(LossChannel(eta))
                                 : bell_asym_density(LossChannel(eta)));
  }
  throw std::logic_error("unhandled measure");
}

class OraclePoint {
 public:
  OraclePoint(fock::FockOracle& oracle, Channel c, double alpha, double eta)
      : oracle_(oracle), channel_(c), alpha_(alpha), eta_(eta) {}

  double value(Measure m) {
    switch (m) {
      case Measure::fraction:
        return fraction().value;
      case Measure::eof_bound:
        return eof_lower_bound(std::clamp(fraction().value, 0.0, 1.0));
      case Measure::teleport_fidelity:
        return teleport_fidelity(std::clamp(fraction().value, 0.0, 1.0));
      case Measure::concurrence:
        return wootters_concurrence(matrix()).value();
      case Measure::eof:
        return eof_from_concurrence(wootters_concurrence(matrix()));
      case Measure::negativity:
        return negativity(matrix());
      case Measure::pt_min_eig:
        return pt_eigenvalues(matrix())[0];
      case Measure::env_entanglement:
        if (channel_ == Channel::symmetric) {
          return eof_from_concurrence(oracle_.env_entanglement(alpha_, eta_));
        } else {
          const double f = oracle_.asym_fraction(alpha_, eta_, fock::Partner::environment).value;
          return eof_lower_bound(std::clamp(f, 0.0, 1.0));
        }
      default:
        throw std::logic_error("measure has no oracle counterpart");
    }
  }

 private:
  const EntangledFraction& fraction() {
    if (!fraction_) {
      fraction_ = channel_ == Channel::symmetric ? oracle_.sym_fraction(alpha_, eta_)
                                                 : oracle_.asym_fraction(alpha_, eta_);
    }
    return *fraction_;
  }
  const QubitDensity4& matrix() {
    if (!matrix_) matrix_ = oracle_.sym_matrix(alpha_, eta_);
    return *matrix_;
  }

  fock::FockOracle& oracle_;
  Channel channel_;
  double alpha_;
  double eta_;
  std::optional<EntangledFraction> fraction_;
  std::optional<QubitDensity4> matrix_;
};

SweepRecord evaluate(const SweepConfig& config, double alpha, double eta,
                     fock::FockOracle* oracle) {
  SweepRecord rec;
  rec.alpha = alpha;
  rec.eta = eta;
  rec.values.reserve(config.measures.size());
  try {
    PointCache cache(alpha, eta);
    for (Measure m : config.measures) {
      rec.values.push_back(analytic_value(m, config.channel, alpha, eta, cache));
    }
  } catch (const std::exception& e) {
    rec.values.resize(config.measures.size(), std::numeric_limits<double>::quiet_NaN());
    rec.failure = std::string("analytic: ") + e.what();
    if (config.oracle) rec.oracle_delta = std::numeric_limits<double>::quiet_NaN();
    return rec;
  }
  if (!config.oracle) return rec;

  try {
    OraclePoint point(*oracle, config.channel, alpha, eta);
    double delta = 0.0;
    for (std::size_t k = 0; k < config.measures.size(); ++k) {
      const Measure m = config.measures[k];
      if (!has_oracle(m, config.channel)) continue;
      delta = std::max(delta, std::abs(rec.values[k] - point.value(m)));
    }
    rec.oracle_delta = delta;
  } catch (const std::exception& e) {
    rec.oracle_delta = std::numeric_limits<double>::quiet_NaN();
    rec.failure = std::string("oracle: ") + e.what();
  }
  return rec;
}

void open_or_throw(std::ofstream& f, const std::string& path) {
  f.open(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
}

void close_or_throw(std::ofstream& f, const std::string& path) {
  f.close();
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

// Round-trip through the CSV text so both formats carry the same digits.
double rounded(double x) { return std::strtod(format_value(x).c_str(), nullptr); }

SweepConfig make_config(Channel c, Axis alpha, Axis eta, std::vector<Measure> measures) {
  SweepConfig cfg;
  cfg.channel = c;
  cfg.alpha = std::move(alpha);
  cfg.eta = std::move(eta);
  cfg.measures = std::move(measures);
  return cfg;
}

}  // namespace

std::string_view to_string(Measure m) {
  for (const auto& n : kMeasureNames) {
    if (n.measure == m) return n.name;
  }
  return "?";
}

std::string_view to_string(Channel c) { return c == Channel::symmetric ? "sym" : "asym"; }

std::optional<Measure> parse_measure(std::string_view name) {
  for (const auto& n : kMeasureNames) {
    if (n.name == name) return n.measure;
  }
  return std::nullopt;
}

std::optional<Channel> parse_channel(std::string_view name) {
  if (name == "sym" || name == "symmetric") return Channel::symmetric;
  if (name == "asym" || name == "asymmetric") return Channel::asymmetric;
  return std::nullopt;
}

std::vector<Measure> parse_measures(std::string_view list) {
  std::vector<Measure> out;
  for (std::string_view part : split(list, ',')) {
    const auto m = parse_measure(part);
    if (!m) throw std::invalid_argument("unknown measure '" + std::string(part) + "'");
    if (std::find(out.begin(), out.end(), *m) != out.end()) {
      throw std::invalid_argument("duplicate measure '" + std::string(part) + "'");
    }
    out.push_back(*m);
  }
  return out;
}

bool supported(Measure m, Channel c) {
  if (c == Channel::symmetric) return true;
  // The one-lossy-mode state is only characterized through its fraction.
  switch (m) {
    case Measure::concurrence:
    case Measure::eof:
    case Measure::negativity:
    case Measure::pt_min_eig:
      return false;
    default:
      return true;
  }
}

bool has_oracle(Measure m, Channel c) {
  if (!supported(m, c)) return false;
  switch (m) {
    case Measure::bell_fraction:
    case Measure::bell_concurrence:
    case Measure::bell_eof:
    case Measure::bell_negativity:
      return false;
    default:
      return true;
  }
}

Axis Axis::linspace(double start, double stop, std::size_t steps) {
  if (steps == 0) throw std::invalid_argument("axis needs at least one step");
  if (!std::isfinite(start) || !std::isfinite(stop)) {
    throw std::invalid_argument("axis bounds must be finite");
  }
  Axis a;
  a.values.resize(steps);
  if (steps == 1) {
    a.values[0] = start;
    return a;
  }
  const double span = stop - start;
  for (std::size_t i = 0; i < steps; ++i) {
    a.values[i] = start + span * static_cast<double>(i) / static_cast<double>(steps - 1);
  }
  a.values.back() = stop;
  return a;
}

Axis Axis::list(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("axis list is empty");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("axis values must be finite");
  }
  return Axis{std::move(values)};
}

Axis Axis::parse(std::string_view text) {
  text = trim(text);
  if (text.empty()) throw std::invalid_argument("empty axis");
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
      throw std::invalid_argument("axis range must be start:stop:steps, got '" +
                                  std::string(text) + "'");
    }
    return linspace(parse_double(parts[0]), parse_double(parts[1]), parse_count(parts[2]));
  }
  std::vector<double> values;
  for (std::string_view part : split(text, ',')) values.push_back(parse_double(part));
  return list(std::move(values));
}

void SweepConfig::validate() const {
  if (alpha.values.empty() || eta.values.empty()) {
    throw std::invalid_argument("alpha and eta ranges must be non-empty");
  }
  if (measures.empty()) throw std::invalid_argument("no measures requested");
  if (!(tol > 0.0) || !std::isfinite(tol)) throw std::invalid_argument("tol must be > 0");
  for (double a : alpha.values) {
    if (!(a > 0.0) || !std::isfinite(a)) {
      throw std::invalid_argument("alpha must be > 0 (the odd ECS vanishes at 0), got " +
                                  format_value(a));
    }
  }
  for (double e : eta.values) {
    if (!(e >= 0.0 && e <= 1.0)) {
      throw std::invalid_argument("eta must lie in [0, 1], got " + format_value(e));
    }
  }
  for (Measure m : measures) {
    if (!supported(m, channel)) {
      throw std::invalid_argument("measure '" + std::string(to_string(m)) +
                                  "' is not available for the asymmetric channel");
    }
  }
}

std::vector<SweepRecord> run_sweep(const SweepConfig& config) {
  config.validate();
  const std::size_t n_eta = config.eta.values.size();
  const std::size_t total = config.alpha.values.size() * n_eta;
  std::vector<SweepRecord> records(total);

  unsigned workers = config.threads ? config.threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::size_t>(workers, 1, total));

  // Each worker owns its oracle (beam-splitter caches are not shared). The
  // result at a grid point does not depend on which worker computed it.
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    std::optional<fock::FockOracle> oracle;
    if (config.oracle) oracle.emplace(config.oracle_options);
    for (std::size_t i = next++; i < total; i = next++) {
      records[i] = evaluate(config, config.alpha.values[i / n_eta], config.eta.values[i % n_eta],
                            oracle ? &*oracle : nullptr);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  return records;
}

bool oracle_passed(const std::vector<SweepRecord>& records, double tol) {
  return std::all_of(records.begin(), records.end(), [tol](const SweepRecord& r) {
    return !r.failure && r.oracle_delta && *r.oracle_delta <= tol;
  });
}

void write_csv(std::ostream& out, const std::vector<Measure>& measures,
               const std::vector<SweepRecord>& records) {
  out << "alpha,eta";
  for (Measure m : measures) out << ',' << to_string(m);
  out << ",oracle_delta\n";
  for (const SweepRecord& r : records) {
    out << format_value(r.alpha) << ',' << format_value(r.eta);
    for (double v : r.values) out << ',' << format_value(v);
    out << ',';
    if (r.oracle_delta) out << format_value(*r.oracle_delta);
    out << '\n';
  }
}

void write_json(std::ostream& out, const std::vector<Measure>& measures,
                const std::vector<SweepRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const SweepRecord& r : records) {
    nlohmann::ordered_json obj;
    obj["alpha"] = rounded(r.alpha);
    obj["eta"] = rounded(r.eta);
    for (std::size_t k = 0; k < measures.size(); ++k) {
      obj[std::string(to_string(measures[k]))] = rounded(r.values[k]);
    }
    // NaN (failed oracle) serializes as null as well.
    obj["oracle_delta"] = r.oracle_delta ? nlohmann::ordered_json(rounded(*r.oracle_delta))
                                         : nlohmann::ordered_json(nullptr);
    arr.push_back(std::move(obj));
  }
  out << arr.dump(1) << '\n';
}

void emit_csv(const std::vector<SweepRecord>& records, const SweepConfig& config,
              const std::string& path) {
  std::ofstream f;
  open_or_throw(f, path);
  write_csv(f, config.measures, records);
  close_or_throw(f, path);
}

void emit_json(const std::vector<SweepRecord>& records, const SweepConfig& config,
               const std::string& path) {
  std::ofstream f;
  open_or_throw(f, path);
  write_json(f, config.measures, records);
  close_or_throw(f, path);
}

std::vector<std::string> preset_names() {
  return {"fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "counterexample", "verify"};
}

Preset preset(std::string_view name) {
  using M = Measure;
  const Axis fig_alpha = Axis::linspace(0.01, 3.0, 300);
  const Axis fig_eta = Axis::list({0.1, 0.3, 0.5, 0.7, 0.9});
  const Axis amplitudes = Axis::list({0.5, 1.0, 2.0});
  const Axis eta_full = Axis::linspace(0.0, 1.0, 51);
  const Axis small_alpha = Axis::list({1e-3});

  if (name == "fig1") {
    return {"fig1", "asymmetric channel: fully entangled fraction vs alpha, Bell reference",
            {{"", make_config(Channel::asymmetric, fig_alpha, fig_eta,
                              {M::fraction, M::bell_fraction})}}};
  }
  if (name == "fig2") {
    return {"fig2",
            "asymmetric channel: EOF lower bound of (1,2) and of (1,E) vs eta for alpha 0.5, 1, 2",
            {{"", make_config(Channel::asymmetric, amplitudes, eta_full,
                              {M::eof_bound, M::env_entanglement})}}};
  }
  if (name == "fig3") {
    return {"fig3", "symmetric channel: entanglement fidelity vs alpha, Bell reference",
            {{"", make_config(Channel::symmetric, fig_alpha, fig_eta,
                              {M::fraction, M::bell_fraction})}}};
  }
  if (name == "fig4") {
    const Axis a = Axis::linspace(0.05, 3.0, 60);
    const Axis e = Axis::linspace(0.0, 1.0, 60);
    return {"fig4", "symmetric channel: concurrence and EOF surfaces over (alpha, eta), 60x60",
            {{"_concurrence", make_config(Channel::symmetric, a, e, {M::concurrence})},
             {"_eof", make_config(Channel::symmetric, a, e, {M::eof})}}};
  }
  if (name == "fig5") {
    return {"fig5", "symmetric channel: EOF of (1,2) and of (E1,E2) vs eta for alpha 0.5, 1, 2",
            {{"", make_config(Channel::symmetric, amplitudes, eta_full,
                              {M::eof, M::env_entanglement})}}};
  }
  if (name == "fig6") {
    return {"fig6", "symmetric channel, alpha = 1e-3: EOF of the ECS and of the Bell state vs eta",
            {{"", make_config(Channel::symmetric, small_alpha, eta_full, {M::eof, M::bell_eof})}}};
  }
  if (name == "counterexample") {
    return {"counterexample",
            "alpha = 1e-3: EOF orders ECS above Bell while negativity orders it below",
            {{"", make_config(Channel::symmetric, small_alpha, Axis::linspace(0.1, 0.9, 9),
                              {M::eof, M::bell_eof, M::negativity, M::bell_negativity})}}};
  }
  if (name == "verify") {
    const auto configs = verify_configs(VerifyGrid::coarse);
    return {"verify", "closed forms against the Fock oracle on the coarse grid",
            {{"_sym", configs[0]}, {"_asym", configs[1]}}};
  }
  throw std::invalid_argument("unknown preset '" + std::string(name) + "'");
}

std::string output_path(const std::string& base, const std::string& suffix) {
  if (suffix.empty()) return base;
  const std::size_t slash = base.find_last_of('/');
  const std::size_t dot = base.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash) ||
      dot == (slash == std::string::npos ? 0 : slash + 1)) {
    return base + suffix;
  }
  return base.substr(0, dot) + suffix + base.substr(dot);
}

std::vector<SweepConfig> verify_configs(VerifyGrid grid) {
  using M = Measure;
  const Axis alpha = grid == VerifyGrid::coarse ? Axis::list({0.25, 0.5, 1.0, 2.0})
                                                : Axis::linspace(0.1, 2.0, 20);
  const Axis eta = grid == VerifyGrid::coarse ? Axis::linspace(0.1, 0.9, 9)
                                              : Axis::linspace(0.05, 0.95, 19);
  SweepConfig sym = make_config(Channel::symmetric, alpha, eta,
                                {M::fraction, M::concurrence, M::eof, M::negativity, M::pt_min_eig,
                                 M::env_entanglement});
  SweepConfig asym =
      make_config(Channel::asymmetric, alpha, eta, {M::fraction, M::env_entanglement});
  sym.oracle = asym.oracle = true;
  return {sym, asym};
}

}  // namespace ecs::sweep
