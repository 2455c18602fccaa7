#pragma once

// Entanglement measures for two-qubit states and their closed forms for the
// decohered odd ECS.

#include <array>
#include <cstddef>

#include "ecs/channels.hpp"
#include "ecs/linalg.hpp"

namespace ecs {

/// Wootters concurrence, a value in [0, 1].
class Concurrence {
 public:
  explicit Concurrence(double value);
  double value() const { return value_; }

 private:
  double value_;
};

/// Fully entangled fraction over the probe family |psi-(beta)>, with the
/// probe amplitude that attains it.
struct EntangledFraction {
  double value;
  double argmax_beta;
};

double binary_entropy(double x);
double eof_from_concurrence(Concurrence c);

/// Square roots of the eigenvalues of rho rho~, sorted descending.
std::array<double, 4> wootters_lambdas(const QubitDensity4& rho);
Concurrence wootters_concurrence(const QubitDensity4& rho);

/// (e^{4 eta a^2} - 1) / (e^{4 a^2} - 1) for the symmetric channel.
Concurrence concurrence_sym_closed(double alpha, double eta);

/// <psi-(beta)| rho |psi-(beta)> for the symmetric-channel state.
double fraction_sym(double alpha, double eta, double beta);
/// Maximum of fraction_sym, attained at beta = sqrt(eta) alpha.
EntangledFraction fraction_sym_closed(double alpha, double eta);

/// <psi-(beta)| rho |psi-(beta)> for the asymmetric-channel state.
double fraction_asym(double alpha, double eta, double beta);
/// Value at beta = (1 + sqrt(eta)) alpha / 2; checked against a numeric scan
/// of fraction_asym (throws std::logic_error if the scan finds more than 1e-9 above it).
EntangledFraction fraction_asym_max(double alpha, double eta);

/// Numeric maximum over beta in (0, 4 alpha] (64-point bracket + golden section).
EntangledFraction scan_fraction_sym(double alpha, double eta);
EntangledFraction scan_fraction_asym(double alpha, double eta);

/// h[f] = H(1/2 + sqrt(f (1 - f))) for f >= 1/2, else 0.
double eof_lower_bound(double f);

linalg::Matrix partial_transpose(const QubitDensity4& rho);
/// Ascending eigenvalues of the partial transpose (second qubit).
std::array<double, 4> pt_eigenvalues(const QubitDensity4& rho);
/// c0 {(A + C +- sqrt(A^2 + 4B^2 - 2AC + C^2))/2, B +- D}, ascending.
std::array<double, 4> pt_eigenvalues_closed(const AbcdCoefficients& k);

/// -2 x (sum of negative eigenvalues of the partial transpose).
double negativity(const QubitDensity4& rho);
double negativity(const linalg::Matrix& rho, std::size_t dim_a, std::size_t dim_b);

/// Bell state through two lossy modes: only the two-photon term is entangled.
Concurrence bell_sym_concurrence(double eta);
double bell_sym_eof(double eta);
/// Bell state with one lossy mode: concurrence eta (sector argument).
Concurrence bell_asym_concurrence(double eta);
/// Overlap of the asymmetric-channel Bell mixture with the Bell state.
double bell_asym_fraction(double eta);
/// Overlap of the symmetric-channel Bell mixture with the Bell state.
double bell_sym_fraction(double eta);
double bell_negativity(const BellSectorMixture& mixture);

/// Best teleportation fidelity (2f + 1)/3 from fully entangled fraction f.
double teleport_fidelity(double f);

}  // namespace ecs
