#include "ecs/channels.hpp"

#include <cmath>
#include <string>

#include "ecs/errors.hpp"

namespace ecs {

LossChannel::LossChannel(double eta) : eta_(eta) { detail::require_unit_interval(eta, "eta"); }

QubitDensity4::QubitDensity4(linalg::Matrix entries, BasisTag basis)
    : entries_(std::move(entries)), basis_(basis) {
  if (entries_.rows() != 4 || entries_.cols() != 4) {
    throw DimensionError("QubitDensity4 needs a 4x4 matrix");
  }
  for (double x : entries_.data()) detail::require_finite(x, "density matrix entry");
  if (linalg::asymmetry(entries_) > 1e-12) {
    throw InvariantError("density matrix is not symmetric");
  }
  const double tr = linalg::trace(entries_);
  if (std::abs(tr - 1.0) > 1e-12) {
    throw InvariantError("density matrix trace is " + std::to_string(tr) + ", expected 1");
  }
  const auto eig = linalg::symmetric_eigen(entries_);
  if (eig.values.front() < -1e-10) {
    throw InvariantError("density matrix is not positive semidefinite (min eigenvalue " +
                         std::to_string(eig.values.front()) + ")");
  }
}

namespace {

double require_odd_alpha(const EcsParams& params) {
  if (params.parity != Parity::minus) {
    throw DomainError("decoherence is defined for the odd ECS only");
  }
  return EcsParams::make(params.alpha, params.parity).alpha;
}

}  // namespace

EcsDensityAsym asym_decohere(const EcsParams& params, const LossChannel& channel) {
  const double alpha = require_odd_alpha(params);
  const double eta = channel.eta();
  return {alpha, eta, std::exp(-2.0 * (1.0 - eta) * alpha * alpha)};
}

EcsDensitySym sym_decohere(const EcsParams& params, const LossChannel& channel) {
  const double alpha = require_odd_alpha(params);
  const double eta = channel.eta();
  return {alpha, eta, std::exp(-4.0 * (1.0 - eta) * alpha * alpha)};
}

AbcdCoefficients abcd_coefficients(const EcsDensitySym& state) {
  const double a2 = state.alpha * state.alpha;
  // 1 - Gamma2 and N-(eta) through expm1 so that small alpha keeps full precision.
  const double one_minus_gamma = -std::expm1(-4.0 * (1.0 - state.eta) * a2);
  const double one_plus_gamma = 1.0 + state.gamma2;
  const double n_plus = 2.0 + 2.0 * std::exp(-2.0 * state.eta * a2);
  const double n_minus = -2.0 * std::expm1(-2.0 * state.eta * a2);

  AbcdCoefficients k;
  k.a = one_minus_gamma * n_plus * n_plus;
  k.b = one_plus_gamma * n_plus * n_minus;
  k.c = one_minus_gamma * n_minus * n_minus;
  k.d = -one_minus_gamma * n_plus * n_minus;
  k.c0 = 1.0 / (-16.0 * std::expm1(-4.0 * a2));
  return k;
}

SymDensityMatrix sym_density_matrix(const EcsDensitySym& state) {
  const AbcdCoefficients k = abcd_coefficients(state);
  linalg::Matrix m{
      {k.a, 0.0, 0.0, k.d},
      {0.0, k.b, -k.b, 0.0},
      {0.0, -k.b, k.b, 0.0},
      {k.d, 0.0, 0.0, k.c},
  };
  m *= k.c0;
  return {QubitDensity4(std::move(m), BasisTag::even_odd_coherent), k};
}

std::string_view to_string(PhotonSector sector) {
  switch (sector) {
    case PhotonSector::two_photon:
      return "two_photon";
    case PhotonSector::one_photon_vacuum:
      return "one_photon_vacuum";
    case PhotonSector::vacuum_one_photon:
      return "vacuum_one_photon";
    case PhotonSector::vacuum:
      return "vacuum";
  }
  return "unknown";
}

BellSectorMixture::BellSectorMixture(std::vector<SectorTerm> terms) : terms_(std::move(terms)) {
  for (const auto& t : terms_) {
    if (t.weight < 0.0) throw InvariantError("negative sector weight");
  }
  if (std::abs(total_weight() - 1.0) > 1e-12) {
    throw InvariantError("sector weights do not sum to one");
  }
}

double BellSectorMixture::weight(PhotonSector sector) const {
  double w = 0.0;
  for (const auto& t : terms_) {
    if (t.sector == sector) w += t.weight;
  }
  return w;
}

double BellSectorMixture::total_weight() const {
  double w = 0.0;
  for (const auto& t : terms_) w += t.weight;
  return w;
}

linalg::Matrix BellSectorMixture::embed() const {
  constexpr std::size_t d = 3;
  const auto idx = [](std::size_t m1, std::size_t m2) { return m1 * d + m2; };
  linalg::Matrix rho(d * d, d * d);
  for (const auto& t : terms_) {
    switch (t.sector) {
      case PhotonSector::two_photon: {
        const std::size_t hv = idx(kH, kV);
        const std::size_t vh = idx(kV, kH);
        rho(hv, hv) += 0.5 * t.weight;
        rho(vh, vh) += 0.5 * t.weight;
        rho(hv, vh) -= 0.5 * t.weight;
        rho(vh, hv) -= 0.5 * t.weight;
        break;
      }
      case PhotonSector::one_photon_vacuum:
        rho(idx(kH, kVacuum), idx(kH, kVacuum)) += 0.5 * t.weight;
        rho(idx(kV, kVacuum), idx(kV, kVacuum)) += 0.5 * t.weight;
        break;
      case PhotonSector::vacuum_one_photon:
        rho(idx(kVacuum, kH), idx(kVacuum, kH)) += 0.5 * t.weight;
        rho(idx(kVacuum, kV), idx(kVacuum, kV)) += 0.5 * t.weight;
        break;
      case PhotonSector::vacuum:
        rho(idx(kVacuum, kVacuum), idx(kVacuum, kVacuum)) += t.weight;
        break;
    }
  }
  return rho;
}

BellSectorMixture bell_asym_density(const LossChannel& channel) {
  const double eta = channel.eta();
  return BellSectorMixture({
      {PhotonSector::two_photon, eta},
      {PhotonSector::one_photon_vacuum, 1.0 - eta},
  });
}

BellSectorMixture bell_sym_density(const LossChannel& channel) {
  const double eta = channel.eta();
  const double mixed = eta * (1.0 - eta);
  return BellSectorMixture({
      {PhotonSector::two_photon, eta * eta},
      {PhotonSector::one_photon_vacuum, mixed},
      {PhotonSector::vacuum_one_photon, mixed},
      {PhotonSector::vacuum, (1.0 - eta) * (1.0 - eta)},
  });
}

}  // namespace ecs
