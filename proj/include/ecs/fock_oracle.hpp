#pragma once

// Brute-force verification path. Every state is built in a truncated photon
// number basis, loss is applied as an explicit two-mode beam-splitter
// unitary, environments are traced out numerically, and the reduced system
// state is projected onto the even/odd coherent basis. Nothing here uses the
// closed forms in channels/entanglement.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "ecs/channels.hpp"
#include "ecs/entanglement.hpp"
#include "ecs/linalg.hpp"

namespace ecs::fock {

struct OracleOptions {
  /// Bound on the Poisson tail mass dropped per coherent state.
  double tol = 1e-12;
  /// Largest single-mode dimension; ECS_MAX_FOCK_DIM overrides it in from_env().
  std::size_t max_dim = 512;
  /// Extra levels added on top of the tail-bound dimension.
  std::size_t pad = 8;
  /// Lower bound on the mode dimension (used for truncation-convergence checks).
  std::size_t min_dim = 0;
  /// Largest multi-mode tensor, in amplitudes.
  std::size_t max_elements = std::size_t{1} << 25;

  static OracleOptions from_env();
};

/// Single-mode truncated state |0>..|dim-1> with the discarded probability mass.
struct FockState {
  std::vector<double> amplitudes;
  double tail_bound = 0.0;

  std::size_t dim() const { return amplitudes.size(); }
};

/// Smallest dimension whose neglected Poisson tail for |alpha> is below tol.
std::size_t coherent_dim(double alpha, double tol, std::size_t max_dim = 512);
FockState coherent_fock(double alpha, double tol, std::size_t max_dim = 512);
/// |alpha> truncated at a fixed dimension.
FockState coherent_fock_fixed(double alpha, std::size_t dim);

/// Pure state of several bosonic modes, flat row-major amplitudes (mode 0 slowest).
class MultiModeState {
 public:
  MultiModeState() = default;
  MultiModeState(std::vector<std::size_t> dims, std::vector<double> amplitudes);

  static MultiModeState product(std::span<const std::vector<double>> modes);

  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t modes() const { return dims_.size(); }
  std::size_t size() const { return amps_.size(); }
  std::size_t stride(std::size_t mode) const;

  std::span<const double> amplitudes() const { return amps_; }
  std::span<double> amplitudes() { return amps_; }

  double norm_squared() const;
  void normalize();

  /// <v| on `mode`; returns the state of the remaining modes (unnormalized).
  /// v may be longer or shorter than the mode dimension; missing entries are zero.
  MultiModeState contract(std::size_t mode, std::span<const double> v) const;

 private:
  std::vector<std::size_t> dims_;
  std::vector<double> amps_;
};

using TwoModeState = MultiModeState;
using ThreeModeState = MultiModeState;
using FourModeState = MultiModeState;

/// Number-basis beam splitter a+ -> t a+ + r b+, b+ -> -r a+ + t b+ with
/// t = sqrt(eta), r = sqrt(1 - eta). Matrix elements are built lazily and
/// cached per input pair (n, m); an instance is not thread-safe.
class BeamSplitter {
 public:
  BeamSplitter(double eta, std::size_t dim_i, std::size_t dim_j);

  double eta() const { return eta_; }
  std::size_t dim_i() const { return dim_i_; }
  std::size_t dim_j() const { return dim_j_; }
  /// <p, n+m-p| U |n, m>.
  double element(std::size_t n, std::size_t m, std::size_t p) const;

  /// Applies U on modes (i, j). Input must have unit norm (1e-10); throws
  /// InvariantError if truncation loses more than 1e-10 of the norm.
  void apply(MultiModeState& state, std::size_t i, std::size_t j);

 private:
  struct Entry {
    std::size_t p;
    std::size_t q;
    double amplitude;
  };
  const std::vector<Entry>& row(std::size_t n, std::size_t m);

  double eta_;
  std::size_t dim_i_;
  std::size_t dim_j_;
  std::vector<std::vector<Entry>> rows_;
  std::vector<char> built_;
};

MultiModeState beam_splitter(const MultiModeState& state, std::size_t i, std::size_t j,
                             double eta);

/// Which mode pairs with mode 1 in the asymmetric setting.
enum class Partner { system, environment };

/// Owns per-instance caches (beam splitters and the last built states); use
/// one instance per thread.
class FockOracle {
 public:
  explicit FockOracle(OracleOptions options = OracleOptions::from_env());

  const OracleOptions& options() const { return options_; }
  std::size_t mode_dim(double alpha) const;

  /// Odd ECS (x) |0>|0>, both modes through the channel, environments traced,
  /// projected on |+-> at amplitude sqrt(eta) alpha.
  QubitDensity4 sym_matrix(double alpha, double eta);
  /// Same state, maximum of <psi-(beta)|rho|psi-(beta)> over beta in (0, 4 alpha].
  EntangledFraction sym_fraction(double alpha, double eta);
  /// Concurrence between the two environment modes of the symmetric channel.
  Concurrence env_entanglement(double alpha, double eta);
  /// Environment pair projected on |+-> at amplitude sqrt(1 - eta) alpha.
  QubitDensity4 env_matrix(double alpha, double eta);

  /// Odd ECS with only mode 2 lossy; maximum overlap with |psi-(beta)> for
  /// (mode 1, mode 2) or (mode 1, environment).
  EntangledFraction asym_fraction(double alpha, double eta, Partner partner = Partner::system);

  /// The decohered pure states before tracing; exposed for tests.
  const FourModeState& sym_state(double alpha, double eta);
  const ThreeModeState& asym_state(double alpha, double eta);

 private:
  BeamSplitter& splitter(double eta, std::size_t dim);
  MultiModeState odd_ecs(double alpha, std::size_t dim) const;
  EntangledFraction max_overlap(const MultiModeState& state, std::size_t mode_a,
                                std::size_t mode_b, double alpha);

  OracleOptions options_;
  std::vector<BeamSplitter> splitters_;
  struct Cached {
    double alpha;
    double eta;
    MultiModeState state;
  };
  std::optional<Cached> sym_cache_;
  std::optional<Cached> asym_cache_;
};

QubitDensity4 oracle_sym_matrix(double alpha, double eta, double tol = 1e-12);
EntangledFraction oracle_asym_fraction(double alpha, double eta, double tol = 1e-12);
Concurrence oracle_env_entanglement(double alpha, double eta, double tol = 1e-12);

/// Projection of modes (a, b) onto two-element orthonormal bases; returns the
/// 4x4 reduced density matrix (trace-normalized) and the weight left outside
/// the span before normalization.
struct Projection {
  linalg::Matrix rho;
  double residual;
};
Projection project_pair(const MultiModeState& state, std::size_t mode_a, std::size_t mode_b,
                        std::span<const std::vector<double>, 2> basis_a,
                        std::span<const std::vector<double>, 2> basis_b);

/// Orthonormal {|+>, |->} from |c> +- |-c> at the given dimension. A vanishing
/// odd vector raises DegenerateStateError unless complete_degenerate is set, in
/// which case |1> is used.
std::array<std::vector<double>, 2> even_odd_basis(double amplitude, std::size_t dim,
                                                  bool complete_degenerate = false);

}  // namespace ecs::fock
