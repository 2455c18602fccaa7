#pragma once

// Decohered density operators for the odd ECS and the polarization Bell
// state after photon loss.
//
// Loss on a mode is a beam splitter with a vacuum environment:
//   |a>|0>_E -> |sqrt(eta) a>|sqrt(1-eta) a>_E.
// Tracing out the environment leaves the two coherent branches with an
// off-diagonal damping factor; ECS states are kept symbolic (alpha, eta,
// damping) and only the symmetric case is expanded into a 4x4 matrix, in
// the orthonormal even/odd coherent basis |+->.

#include <array>
#include <string_view>
#include <vector>

#include "ecs/linalg.hpp"
#include "ecs/states.hpp"

namespace ecs {

/// Fraction eta in [0, 1] of photons that survive the channel.
class LossChannel {
 public:
  explicit LossChannel(double eta);
  double eta() const { return eta_; }

 private:
  double eta_;
};

/// Odd ECS with mode 2 sent through the channel, mode 1 kept.
struct EcsDensityAsym {
  double alpha;
  double eta;
  double gamma1;  // exp(-2 (1 - eta) alpha^2)
};

/// Odd ECS with both modes sent through identical channels.
struct EcsDensitySym {
  double alpha;
  double eta;
  double gamma2;  // exp(-4 (1 - eta) alpha^2)
};

enum class BasisTag { even_odd_coherent, polarization_with_vacuum_sector };

/// Real 4x4 density matrix on a declared 2 (x) 2 orthonormal basis.
/// Construction checks symmetry (1e-12), unit trace (1e-12) and
/// positivity (minimum eigenvalue > -1e-10) and throws InvariantError.
class QubitDensity4 {
 public:
  QubitDensity4(linalg::Matrix entries, BasisTag basis);

  const linalg::Matrix& matrix() const { return entries_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }
  BasisTag basis() const { return basis_; }

 private:
  linalg::Matrix entries_;
  BasisTag basis_;
};

/// Entries of the symmetric-channel matrix before the global prefactor:
/// rho = c0 [[a,0,0,d],[0,b,-b,0],[0,-b,b,0],[d,0,0,c]], c0 = 1/(16 (1 - e^{-4 alpha^2})).
struct AbcdCoefficients {
  double a;
  double b;
  double c;
  double d;
  double c0;
};

struct SymDensityMatrix {
  QubitDensity4 rho;
  AbcdCoefficients coefficients;
};

EcsDensityAsym asym_decohere(const EcsParams& params, const LossChannel& channel);
EcsDensitySym sym_decohere(const EcsParams& params, const LossChannel& channel);

AbcdCoefficients abcd_coefficients(const EcsDensitySym& state);
SymDensityMatrix sym_density_matrix(const EcsDensitySym& state);

// ---------------------------------------------------------------------------
// Polarization Bell state (|HV> - |VH>)/sqrt2 under loss. Lost photons leave
// the mode in vacuum, so the output mixes operators with different photon
// numbers; each term is kept with a sector label.

enum class PhotonSector {
  two_photon,         // Bell projector
  one_photon_vacuum,  // (I/2)_1 (x) |0><0|_2
  vacuum_one_photon,  // |0><0|_1 (x) (I/2)_2
  vacuum,             // |00><00|
};

std::string_view to_string(PhotonSector sector);

struct SectorTerm {
  PhotonSector sector;
  double weight;  // trace carried by this term
};

class BellSectorMixture {
 public:
  explicit BellSectorMixture(std::vector<SectorTerm> terms);

  const std::vector<SectorTerm>& terms() const { return terms_; }
  double weight(PhotonSector sector) const;
  double total_weight() const;

  /// Dense operator on {|0>,|H>,|V>} (x) {|0>,|H>,|V>} (9x9).
  linalg::Matrix embed() const;

 private:
  std::vector<SectorTerm> terms_;
};

/// eta |Bell><Bell| + (1-eta)/2 I_1 (x) |0><0|_2.
BellSectorMixture bell_asym_density(const LossChannel& channel);
/// Weights eta^2, eta(1-eta), eta(1-eta), (1-eta)^2 on the four sectors.
BellSectorMixture bell_sym_density(const LossChannel& channel);

/// Per-mode index of |0>, |H>, |V> in BellSectorMixture::embed().
inline constexpr std::size_t kVacuum = 0;
inline constexpr std::size_t kH = 1;
inline constexpr std::size_t kV = 2;

}  // namespace ecs
