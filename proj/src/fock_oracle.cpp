#include "ecs/fock_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <cstdlib>
#include <numeric>
#include <string>

#include "ecs/errors.hpp"
#include "ecs/search.hpp"

namespace ecs::fock {

OracleOptions OracleOptions::from_env() {
  OracleOptions o;
  if (const char* env = std::getenv("ECS_MAX_FOCK_DIM"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      throw DomainError(std::string("ECS_MAX_FOCK_DIM is not a positive integer: ") + env);
    }
    o.max_dim = static_cast<std::size_t>(v);
  }
  return o;
}

namespace {

// log of the Poisson weight e^{-a^2} a^{2n} / n!
double log_poisson(double alpha, std::size_t n) {
  const double a2 = alpha * alpha;
  if (n == 0) return -a2;
  return -a2 + 2.0 * static_cast<double>(n) * std::log(std::abs(alpha)) -
         std::lgamma(static_cast<double>(n) + 1.0);
}

// Suffix sums of the Poisson weights, long enough that the last term is negligible.
std::vector<double> poisson_suffix(double alpha, std::size_t at_least) {
  const double a2 = alpha * alpha;
  const auto n_hi = std::max<std::size_t>(
      at_least + 1, static_cast<std::size_t>(a2 + 15.0 * std::sqrt(a2) + 80.0));
  std::vector<double> suffix(n_hi + 1, 0.0);
  if (alpha == 0.0) {
    suffix[0] = 1.0;
    return suffix;
  }
  for (std::size_t n = n_hi; n-- > 0;) {
    suffix[n] = suffix[n + 1] + std::exp(log_poisson(alpha, n));
  }
  return suffix;
}

std::vector<double> coherent_amplitudes(double alpha, std::size_t dim) {
  std::vector<double> c(dim, 0.0);
  if (alpha == 0.0) {
    c[0] = 1.0;
    return c;
  }
  for (std::size_t n = 0; n < dim; ++n) {
    const double mag = std::exp(0.5 * log_poisson(alpha, n));
    c[n] = (alpha < 0.0 && n % 2 == 1) ? -mag : mag;
  }
  return c;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = std::min(a.size(), b.size());
  double s = 0.0;
  for (std::size_t k = 0; k < n; ++k) s += a[k] * b[k];
  return s;
}

std::vector<double> parity_flip(std::span<const double> c) {
  std::vector<double> out(c.begin(), c.end());
  for (std::size_t n = 1; n < out.size(); n += 2) out[n] = -out[n];
  return out;
}

}  // namespace

std::size_t coherent_dim(double alpha, double tol, std::size_t max_dim) {
  detail::require_finite(alpha, "alpha");
  if (!(tol > 0.0)) throw DomainError("truncation tolerance must be positive");
  const auto suffix = poisson_suffix(alpha, max_dim);
  for (std::size_t n = 1; n < suffix.size(); ++n) {
    if (suffix[n] < tol) {
      if (n > max_dim) break;
      return n;
    }
  }
  throw CapacityError("coherent state with alpha = " + std::to_string(alpha) +
                      " needs more than " + std::to_string(max_dim) + " Fock levels");
}

FockState coherent_fock(double alpha, double tol, std::size_t max_dim) {
  return coherent_fock_fixed(alpha, coherent_dim(alpha, tol, max_dim));
}

FockState coherent_fock_fixed(double alpha, std::size_t dim) {
  detail::require_finite(alpha, "alpha");
  if (dim == 0) throw DimensionError("Fock dimension must be positive");
  const auto suffix = poisson_suffix(alpha, dim);
  return FockState{coherent_amplitudes(alpha, dim), suffix[dim]};
}

// ---------------------------------------------------------------------------

MultiModeState::MultiModeState(std::vector<std::size_t> dims, std::vector<double> amplitudes)
    : dims_(std::move(dims)), amps_(std::move(amplitudes)) {
  const std::size_t total =
      std::accumulate(dims_.begin(), dims_.end(), std::size_t{1}, std::multiplies<>());
  if (dims_.empty() || total != amps_.size()) {
    throw DimensionError("amplitude count does not match mode dimensions");
  }
}

MultiModeState MultiModeState::product(std::span<const std::vector<double>> modes) {
  std::vector<std::size_t> dims;
  std::vector<double> amps{1.0};
  for (const auto& m : modes) {
    dims.push_back(m.size());
    std::vector<double> next(amps.size() * m.size());
    for (std::size_t i = 0; i < amps.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) next[i * m.size() + j] = amps[i] * m[j];
    }
    amps = std::move(next);
  }
  return MultiModeState(std::move(dims), std::move(amps));
}

std::size_t MultiModeState::stride(std::size_t mode) const {
  if (mode >= dims_.size()) throw DimensionError("mode index out of range");
  std::size_t s = 1;
  for (std::size_t k = mode + 1; k < dims_.size(); ++k) s *= dims_[k];
  return s;
}

double MultiModeState::norm_squared() const { return dot(amps_, amps_); }

void MultiModeState::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0.0) throw DegenerateStateError("cannot normalize the zero state");
  for (double& a : amps_) a /= n;
}

MultiModeState MultiModeState::contract(std::size_t mode, std::span<const double> v) const {
  const std::size_t inner = stride(mode);
  const std::size_t dim = dims_[mode];
  const std::size_t outer = amps_.size() / (dim * inner);
  const std::size_t used = std::min(dim, v.size());

  std::vector<std::size_t> dims;
  for (std::size_t k = 0; k < dims_.size(); ++k) {
    if (k != mode) dims.push_back(dims_[k]);
  }
  if (dims.empty()) dims.push_back(1);
  std::vector<double> out(outer * inner, 0.0);
  for (std::size_t o = 0; o < outer; ++o) {
    const double* block = amps_.data() + o * dim * inner;
    double* dst = out.data() + o * inner;
    for (std::size_t n = 0; n < used; ++n) {
      const double w = v[n];
      if (w == 0.0) continue;
      const double* src = block + n * inner;
      for (std::size_t r = 0; r < inner; ++r) dst[r] += w * src[r];
    }
  }
  return MultiModeState(std::move(dims), std::move(out));
}

// ---------------------------------------------------------------------------

BeamSplitter::BeamSplitter(double eta, std::size_t dim_i, std::size_t dim_j)
    : eta_(eta),
      dim_i_(dim_i),
      dim_j_(dim_j),
      rows_(dim_i * dim_j),
      built_(dim_i * dim_j, 0) {
  detail::require_unit_interval(eta, "eta");
  if (dim_i == 0 || dim_j == 0) throw DimensionError("beam splitter needs positive dimensions");
}

double BeamSplitter::element(std::size_t n, std::size_t m, std::size_t p) const {
  if (p > n + m) return 0.0;
  const std::size_t q = n + m - p;
  const double t = std::sqrt(eta_);
  const double r = std::sqrt(1.0 - eta_);
  const auto lf = [](std::size_t k) { return std::lgamma(static_cast<double>(k) + 1.0); };
  const double log_norm = 0.5 * (lf(p) + lf(q) - lf(n) - lf(m));

  double sum = 0.0;
  // (t a+ + r b+)^n (-r a+ + t b+)^m: choose k a+ from the first factor, l from the second.
  const std::size_t k_lo = p > m ? p - m : 0;
  const std::size_t k_hi = std::min(n, p);
  for (std::size_t k = k_lo; k <= k_hi; ++k) {
    const std::size_t l = p - k;
    const std::size_t pow_t = k + m - l;
    const std::size_t pow_r = n - k + l;
    if ((t == 0.0 && pow_t > 0) || (r == 0.0 && pow_r > 0)) continue;
    double log_term = lf(n) - lf(k) - lf(n - k) + lf(m) - lf(l) - lf(m - l) + log_norm;
    if (pow_t > 0) log_term += static_cast<double>(pow_t) * std::log(t);
    if (pow_r > 0) log_term += static_cast<double>(pow_r) * std::log(r);
    const double term = std::exp(log_term);
    sum += (l % 2 == 0) ? term : -term;
  }
  return sum;
}

const std::vector<BeamSplitter::Entry>& BeamSplitter::row(std::size_t n, std::size_t m) {
  const std::size_t key = n * dim_j_ + m;
  if (!built_[key]) {
    std::vector<Entry> entries;
    const std::size_t total = n + m;
    for (std::size_t p = 0; p <= total && p < dim_i_; ++p) {
      const std::size_t q = total - p;
      if (q >= dim_j_) continue;
      const double amp = element(n, m, p);
      if (amp != 0.0) entries.push_back({p, q, amp});
    }
    rows_[key] = std::move(entries);
    built_[key] = 1;
  }
  return rows_[key];
}

void BeamSplitter::apply(MultiModeState& state, std::size_t i, std::size_t j) {
  if (i >= state.modes() || j >= state.modes() || i == j) {
    throw DimensionError("beam splitter mode indices out of range");
  }
  if (state.dims()[i] != dim_i_ || state.dims()[j] != dim_j_) {
    throw DimensionError("beam splitter built for different mode dimensions");
  }
  const double norm_in = state.norm_squared();
  if (std::abs(std::sqrt(norm_in) - 1.0) > 1e-10) {
    throw InvariantError("beam splitter input is not normalized");
  }

  const std::size_t si = state.stride(i);
  const std::size_t sj = state.stride(j);
  auto in = state.amplitudes();
  std::vector<double> out(in.size(), 0.0);
  for (std::size_t base = 0; base < in.size(); ++base) {
    if ((base / si) % dim_i_ != 0 || (base / sj) % dim_j_ != 0) continue;
    for (std::size_t n = 0; n < dim_i_; ++n) {
      for (std::size_t m = 0; m < dim_j_; ++m) {
        const double amp = in[base + n * si + m * sj];
        if (amp == 0.0) continue;
        for (const Entry& e : row(n, m)) out[base + e.p * si + e.q * sj] += e.amplitude * amp;
      }
    }
  }
  std::copy(out.begin(), out.end(), in.begin());
  const double drift = std::abs(state.norm_squared() - norm_in);
  if (drift > 1e-10) {
    throw InvariantError("beam splitter lost norm " + std::to_string(drift) +
                         "; Fock truncation too small");
  }
}

MultiModeState beam_splitter(const MultiModeState& state, std::size_t i, std::size_t j,
                             double eta) {
  if (i >= state.modes() || j >= state.modes()) {
    throw DimensionError("beam splitter mode indices out of range");
  }
  MultiModeState out = state;
  BeamSplitter(eta, state.dims()[i], state.dims()[j]).apply(out, i, j);
  return out;
}

// ---------------------------------------------------------------------------

std::array<std::vector<double>, 2> even_odd_basis(double amplitude, std::size_t dim,
                                                  bool complete_degenerate) {
  const std::vector<double> c = coherent_amplitudes(amplitude, dim);
  const std::vector<double> cm = parity_flip(c);
  std::vector<double> plus(dim);
  std::vector<double> minus(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    plus[n] = c[n] + cm[n];
    minus[n] = c[n] - cm[n];
  }
  const double np = std::sqrt(dot(plus, plus));
  for (double& x : plus) x /= np;

  // Gram-Schmidt; the parities already make this zero up to roundoff.
  const double overlap = dot(plus, minus);
  for (std::size_t n = 0; n < dim; ++n) minus[n] -= overlap * plus[n];
  double nm = std::sqrt(dot(minus, minus));
  if (nm == 0.0) {
    if (!complete_degenerate || dim < 2) {
      throw DegenerateStateError("odd coherent basis vector vanishes (amplitude 0)");
    }
    std::fill(minus.begin(), minus.end(), 0.0);
    minus[1] = 1.0;
    nm = 1.0;
  }
  for (double& x : minus) x /= nm;
  return {std::move(plus), std::move(minus)};
}

Projection project_pair(const MultiModeState& state, std::size_t mode_a, std::size_t mode_b,
                        std::span<const std::vector<double>, 2> basis_a,
                        std::span<const std::vector<double>, 2> basis_b) {
  if (mode_a == mode_b || mode_a >= state.modes() || mode_b >= state.modes()) {
    throw DimensionError("project_pair: bad mode indices");
  }
  const std::size_t b_after = mode_b > mode_a ? mode_b - 1 : mode_b;
  std::vector<MultiModeState> parts;
  for (const auto& va : basis_a) {
    const MultiModeState first = state.contract(mode_a, va);
    for (const auto& vb : basis_b) parts.push_back(first.contract(b_after, vb));
  }
  const std::size_t rest = parts.front().size();
  std::vector<double> flat;
  flat.reserve(4 * rest);
  for (const auto& p : parts) flat.insert(flat.end(), p.amplitudes().begin(), p.amplitudes().end());

  linalg::Matrix rho = linalg::partial_trace_pure(flat, 4, rest, linalg::Keep::A);
  const double captured = linalg::trace(rho);
  const double residual = state.norm_squared() - captured;
  rho *= 1.0 / captured;
  return {std::move(rho), residual};
}

// ---------------------------------------------------------------------------

FockOracle::FockOracle(OracleOptions options) : options_(options) {
  if (!(options_.tol > 0.0)) throw DomainError("oracle tolerance must be positive");
}

std::size_t FockOracle::mode_dim(double alpha) const {
  const std::size_t base = coherent_dim(alpha, options_.tol, options_.max_dim);
  const std::size_t dim = std::max(options_.min_dim, base + options_.pad);
  if (dim > options_.max_dim) {
    throw CapacityError("alpha = " + std::to_string(alpha) + " needs " + std::to_string(dim) +
                        " Fock levels, cap is " + std::to_string(options_.max_dim));
  }
  return dim;
}

BeamSplitter& FockOracle::splitter(double eta, std::size_t dim) {
  auto it = std::find_if(splitters_.begin(), splitters_.end(), [&](const BeamSplitter& bs) {
    return bs.eta() == eta && bs.dim_i() == dim && bs.dim_j() == dim;
  });
  if (it != splitters_.end()) return *it;
  // A sweep visits each (eta, dim) a handful of times; keep the cache small.
  if (splitters_.size() >= 16) splitters_.erase(splitters_.begin());
  splitters_.emplace_back(eta, dim, dim);
  return splitters_.back();
}

MultiModeState FockOracle::odd_ecs(double alpha, std::size_t dim) const {
  // (|a>|-a> - |-a>|a>), normalized numerically.
  const std::vector<double> c = coherent_amplitudes(alpha, dim);
  const std::vector<double> cm = parity_flip(c);
  std::vector<double> amps(dim * dim);
  for (std::size_t n1 = 0; n1 < dim; ++n1) {
    for (std::size_t n2 = 0; n2 < dim; ++n2) {
      amps[n1 * dim + n2] = c[n1] * cm[n2] - cm[n1] * c[n2];
    }
  }
  MultiModeState s({dim, dim}, std::move(amps));
  s.normalize();
  return s;
}

namespace {

MultiModeState with_vacuum_modes(const MultiModeState& s, std::size_t extra, std::size_t dim) {
  std::vector<std::size_t> dims = s.dims();
  std::size_t block = 1;
  for (std::size_t k = 0; k < extra; ++k) {
    dims.push_back(dim);
    block *= dim;
  }
  std::vector<double> amps(s.size() * block, 0.0);
  for (std::size_t i = 0; i < s.size(); ++i) amps[i * block] = s.amplitudes()[i];
  return MultiModeState(std::move(dims), std::move(amps));
}

void check_elements(std::size_t dim, std::size_t modes, std::size_t cap) {
  double total = 1.0;
  for (std::size_t k = 0; k < modes; ++k) total *= static_cast<double>(dim);
  if (total > static_cast<double>(cap)) {
    throw CapacityError(std::to_string(modes) + "-mode state at dimension " +
                        std::to_string(dim) + " exceeds the element cap");
  }
}

void require_alpha(double alpha) {
  detail::require_finite(alpha, "alpha");
  if (alpha <= 0.0) throw DegenerateStateError("odd ECS requires alpha > 0");
}

}  // namespace

const FourModeState& FockOracle::sym_state(double alpha, double eta) {
  require_alpha(alpha);
  detail::require_unit_interval(eta, "eta");
  if (sym_cache_ && sym_cache_->alpha == alpha && sym_cache_->eta == eta) {
    return sym_cache_->state;
  }
  const std::size_t dim = mode_dim(alpha);
  check_elements(dim, 4, options_.max_elements);
  // Modes: 0 = mode 1, 1 = mode 2, 2 = E1, 3 = E2.
  MultiModeState s = with_vacuum_modes(odd_ecs(alpha, dim), 2, dim);
  BeamSplitter& bs = splitter(eta, dim);
  bs.apply(s, 0, 2);
  bs.apply(s, 1, 3);
  sym_cache_ = Cached{alpha, eta, std::move(s)};
  return sym_cache_->state;
}

const ThreeModeState& FockOracle::asym_state(double alpha, double eta) {
  require_alpha(alpha);
  detail::require_unit_interval(eta, "eta");
  if (asym_cache_ && asym_cache_->alpha == alpha && asym_cache_->eta == eta) {
    return asym_cache_->state;
  }
  const std::size_t dim = mode_dim(alpha);
  check_elements(dim, 3, options_.max_elements);
  // Modes: 0 = mode 1 (kept), 1 = mode 2 (lossy), 2 = E.
  MultiModeState s = with_vacuum_modes(odd_ecs(alpha, dim), 1, dim);
  splitter(eta, dim).apply(s, 1, 2);
  asym_cache_ = Cached{alpha, eta, std::move(s)};
  return asym_cache_->state;
}

QubitDensity4 FockOracle::sym_matrix(double alpha, double eta) {
  const FourModeState& s = sym_state(alpha, eta);
  const auto basis = even_odd_basis(std::sqrt(eta) * alpha, s.dims()[0]);
  const Projection proj = project_pair(s, 0, 1, basis, basis);
  if (proj.residual > 1e-10) {
    throw InvariantError("decohered state leaves the even/odd span (residual " +
                         std::to_string(proj.residual) + ")");
  }
  return QubitDensity4(proj.rho, BasisTag::even_odd_coherent);
}

QubitDensity4 FockOracle::env_matrix(double alpha, double eta) {
  const FourModeState& s = sym_state(alpha, eta);
  const auto basis = even_odd_basis(std::sqrt(1.0 - eta) * alpha, s.dims()[2], true);
  const Projection proj = project_pair(s, 2, 3, basis, basis);
  if (proj.residual > 1e-10) {
    throw InvariantError("environment state leaves the even/odd span (residual " +
                         std::to_string(proj.residual) + ")");
  }
  return QubitDensity4(proj.rho, BasisTag::even_odd_coherent);
}

Concurrence FockOracle::env_entanglement(double alpha, double eta) {
  return wootters_concurrence(env_matrix(alpha, eta));
}

EntangledFraction FockOracle::max_overlap(const MultiModeState& state, std::size_t mode_a,
                                          std::size_t mode_b, double alpha) {
  const std::size_t b_after = mode_b > mode_a ? mode_b - 1 : mode_b;
  const auto overlap = [&](double beta) {
    // Probe built at its own truncation so it is normalized to within tol.
    const FockState probe = coherent_fock(beta, options_.tol, options_.max_dim);
    const std::vector<double>& c = probe.amplitudes;
    const std::vector<double> cm = parity_flip(c);
    const MultiModeState t1 = state.contract(mode_a, c).contract(b_after, cm);
    const MultiModeState t2 = state.contract(mode_a, cm).contract(b_after, c);
    double num = 0.0;
    for (std::size_t k = 0; k < t1.size(); ++k) {
      const double d = t1.amplitudes()[k] - t2.amplitudes()[k];
      num += d * d;
    }
    const double cc = dot(c, c);
    const double ccm = dot(c, cm);
    const double probe_norm = 2.0 * (cc * cc - ccm * ccm);
    return num / probe_norm;
  };
  const auto best = search::bracket_and_maximize(overlap, 0.0, 4.0 * alpha);
  return {best.value, best.argmax};
}

EntangledFraction FockOracle::sym_fraction(double alpha, double eta) {
  return max_overlap(sym_state(alpha, eta), 0, 1, alpha);
}

EntangledFraction FockOracle::asym_fraction(double alpha, double eta, Partner partner) {
  const ThreeModeState& s = asym_state(alpha, eta);
  return max_overlap(s, 0, partner == Partner::system ? 1 : 2, alpha);
}

QubitDensity4 oracle_sym_matrix(double alpha, double eta, double tol) {
  OracleOptions o = OracleOptions::from_env();
  o.tol = tol;
  return FockOracle(o).sym_matrix(alpha, eta);
}

EntangledFraction oracle_asym_fraction(double alpha, double eta, double tol) {
  OracleOptions o = OracleOptions::from_env();
  o.tol = tol;
  return FockOracle(o).asym_fraction(alpha, eta);
}

Concurrence oracle_env_entanglement(double alpha, double eta, double tol) {
  OracleOptions o = OracleOptions::from_env();
  o.tol = tol;
  return FockOracle(o).env_entanglement(alpha, eta);
}

}  // namespace ecs::fock
