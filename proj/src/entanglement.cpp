#include "ecs/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "ecs/errors.hpp"
#include "ecs/search.hpp"

namespace ecs {

namespace {

constexpr double kRoundoff = 1e-12;

double clamp_unit(double x, const char* what) {
  detail::require_finite(x, what);
  if (x < -kRoundoff || x > 1.0 + kRoundoff) {
    throw DomainError(std::string(what) + " outside [0, 1]: " + std::to_string(x));
  }
  return std::clamp(x, 0.0, 1.0);
}

void require_positive_alpha(double alpha) {
  detail::require_finite(alpha, "alpha");
  if (alpha <= 0.0) {
    throw DegenerateStateError("odd ECS requires alpha > 0, got " + std::to_string(alpha));
  }
}

void require_probe(double beta) {
  detail::require_finite(beta, "beta");
  if (beta <= 0.0) {
    throw DegenerateStateError("probe |psi-(beta)> vanishes for beta <= 0");
  }
}

// log(2 sinh x) for x > 0 without overflow.
double log_two_sinh(double x) {
  if (x > 20.0) return x + std::log1p(-std::exp(-2.0 * x));
  return std::log(2.0 * std::sinh(x));
}

// sigma_y (x) sigma_y; real because the two factors of i cancel.
const linalg::Matrix& spin_flip() {
  static const linalg::Matrix y{
      {0.0, 0.0, 0.0, -1.0},
      {0.0, 0.0, 1.0, 0.0},
      {0.0, 1.0, 0.0, 0.0},
      {-1.0, 0.0, 0.0, 0.0},
  };
  return y;
}

}  // namespace

Concurrence::Concurrence(double value) : value_(clamp_unit(value, "concurrence")) {}

double binary_entropy(double x) {
  detail::require_unit_interval(x, "binary entropy argument");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

double eof_from_concurrence(Concurrence c) {
  const double v = c.value();
  return binary_entropy(0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - v * v))));
}

std::array<double, 4> wootters_lambdas(const QubitDensity4& rho) {
  // rho is real, so rho~ = Y rho Y and rho rho~ = (rho Y)^2; the lambdas are
  // |eig(rho Y)| = |eig(sqrt(rho) Y sqrt(rho))|, a symmetric problem.
  const linalg::Matrix root = linalg::psd_sqrt(rho.matrix());
  const linalg::Matrix k = root * spin_flip() * root;
  const auto eig = linalg::symmetric_eigen(k);
  std::array<double, 4> lambdas{};
  for (std::size_t i = 0; i < 4; ++i) lambdas[i] = std::abs(eig.values[i]);
  std::sort(lambdas.begin(), lambdas.end(), std::greater<>());
  return lambdas;
}

Concurrence wootters_concurrence(const QubitDensity4& rho) {
  const auto l = wootters_lambdas(rho);
  return Concurrence(std::max(0.0, l[0] - l[1] - l[2] - l[3]));
}

Concurrence concurrence_sym_closed(double alpha, double eta) {
  require_positive_alpha(alpha);
  detail::require_unit_interval(eta, "eta");
  const double a2 = alpha * alpha;
  // Multiply numerator and denominator by e^{-4 a^2}: no overflow for large alpha.
  const double value =
      std::exp(-4.0 * (1.0 - eta) * a2) * std::expm1(-4.0 * eta * a2) / std::expm1(-4.0 * a2);
  return Concurrence(value);
}

double fraction_sym(double alpha, double eta, double beta) {
  require_positive_alpha(alpha);
  detail::require_unit_interval(eta, "eta");
  require_probe(beta);
  const double a2 = alpha * alpha;
  const double s = std::sqrt(eta) * alpha;
  const double gamma2 = std::exp(-4.0 * (1.0 - eta) * a2);
  if (s == 0.0) return 0.0;
  // <beta|s><-beta|-s> - <-beta|s><beta|-s> = 2 e^{-beta^2 - s^2} sinh(2 beta s)
  const double log_diff = -beta * beta - s * s + log_two_sinh(2.0 * beta * s);
  return (1.0 + gamma2) * std::exp(2.0 * log_diff) /
         (2.0 * std::expm1(-4.0 * a2) * std::expm1(-4.0 * beta * beta));
}

EntangledFraction fraction_sym_closed(double alpha, double eta) {
  require_positive_alpha(alpha);
  detail::require_unit_interval(eta, "eta");
  const double a2 = alpha * alpha;
  // With u = e^{-4 eta a^2} and G = e^{-4 (1-eta) a^2}, 2 (1 - uG) = P + Q for
  // P = (1 + G)(1 - u), Q = (1 - G)(1 + u). At eta = 1/2, P and Q are the
  // same floating-point product, so f = 1/2 exactly.
  const double one_minus_u = -std::expm1(-4.0 * eta * a2);
  const double one_minus_g = -std::expm1(-4.0 * (1.0 - eta) * a2);
  const double p = (2.0 - one_minus_g) * one_minus_u;
  const double q = one_minus_g * (2.0 - one_minus_u);
  return {clamp_unit(p / (p + q), "entangled fraction"), std::sqrt(eta) * alpha};
}

double fraction_asym(double alpha, double eta, double beta) {
  require_positive_alpha(alpha);
  detail::require_unit_interval(eta, "eta");
  require_probe(beta);
  const double a2 = alpha * alpha;
  const double s = std::sqrt(eta) * alpha;
  const double gamma1 = std::exp(-2.0 * (1.0 - eta) * a2);
  // <beta|a><-beta|-s> - <-beta|a><beta|-s> = 2 e^{-(a^2+s^2)/2 - beta^2} sinh(beta (a + s))
  const double log_diff =
      -0.5 * (a2 + s * s) - beta * beta + log_two_sinh(beta * (alpha + s));
  return (1.0 + gamma1) * std::exp(2.0 * log_diff) /
         (2.0 * std::expm1(-4.0 * a2) * std::expm1(-4.0 * beta * beta));
}

EntangledFraction scan_fraction_sym(double alpha, double eta) {
  require_positive_alpha(alpha);
  const auto best = search::bracket_and_maximize(
      [&](double beta) { return fraction_sym(alpha, eta, beta); }, 0.0, 4.0 * alpha);
  return {best.value, best.argmax};
}

EntangledFraction scan_fraction_asym(double alpha, double eta) {
  require_positive_alpha(alpha);
  const auto best = search::bracket_and_maximize(
      [&](double beta) { return fraction_asym(alpha, eta, beta); }, 0.0, 4.0 * alpha);
  return {best.value, best.argmax};
}

EntangledFraction fraction_asym_max(double alpha, double eta) {
  require_positive_alpha(alpha);
  detail::require_unit_interval(eta, "eta");
  const double beta = 0.5 * (1.0 + std::sqrt(eta)) * alpha;
  const double value = clamp_unit(fraction_asym(alpha, eta, beta), "entangled fraction");
  const EntangledFraction scan = scan_fraction_asym(alpha, eta);
  if (scan.value > value + 1e-9) {
    throw std::logic_error("numeric scan exceeds the analytic maximizer of the asymmetric fraction");
  }
  return {value, beta};
}

double eof_lower_bound(double f) {
  detail::require_unit_interval(f, "fully entangled fraction");
  if (f < 0.5) return 0.0;
  return binary_entropy(std::min(1.0, 0.5 + std::sqrt(f * (1.0 - f))));
}

linalg::Matrix partial_transpose(const QubitDensity4& rho) {
  return linalg::partial_transpose(rho.matrix(), 2, 2);
}

std::array<double, 4> pt_eigenvalues(const QubitDensity4& rho) {
  const auto eig = linalg::symmetric_eigen(partial_transpose(rho));
  return {eig.values[0], eig.values[1], eig.values[2], eig.values[3]};
}

std::array<double, 4> pt_eigenvalues_closed(const AbcdCoefficients& k) {
  const double disc = std::sqrt(k.a * k.a + 4.0 * k.b * k.b - 2.0 * k.a * k.c + k.c * k.c);
  const double upper = 0.5 * (k.a + k.c + disc);
  // Product of the outer-block roots is AC - B^2; avoids cancellation in A + C - disc.
  const double lower = upper > 0.0 ? (k.a * k.c - k.b * k.b) / upper : 0.0;
  std::array<double, 4> v{k.c0 * lower, k.c0 * upper, k.c0 * (k.b + k.d), k.c0 * (k.b - k.d)};
  std::sort(v.begin(), v.end());
  return v;
}

double negativity(const linalg::Matrix& rho, std::size_t dim_a, std::size_t dim_b) {
  const auto eig = linalg::symmetric_eigen(linalg::partial_transpose(rho, dim_a, dim_b));
  double neg = 0.0;
  for (double l : eig.values) {
    if (l < 0.0) neg += l;
  }
  return neg < 0.0 ? -2.0 * neg : 0.0;
}

double negativity(const QubitDensity4& rho) {
  return clamp_unit(negativity(rho.matrix(), 2, 2), "negativity");
}

Concurrence bell_sym_concurrence(double eta) {
  const BellSectorMixture mix = bell_sym_density(LossChannel(eta));
  // The one-photon and vacuum sectors are product states.
  return Concurrence(mix.weight(PhotonSector::two_photon));
}

double bell_sym_eof(double eta) { return eof_from_concurrence(bell_sym_concurrence(eta)); }

Concurrence bell_asym_concurrence(double eta) {
  return Concurrence(bell_asym_density(LossChannel(eta)).weight(PhotonSector::two_photon));
}

double bell_asym_fraction(double eta) {
  return bell_asym_density(LossChannel(eta)).weight(PhotonSector::two_photon);
}

double bell_sym_fraction(double eta) {
  return bell_sym_density(LossChannel(eta)).weight(PhotonSector::two_photon);
}

double bell_negativity(const BellSectorMixture& mixture) {
  return negativity(mixture.embed(), 3, 3);
}

double teleport_fidelity(double f) {
  detail::require_unit_interval(f, "fully entangled fraction");
  return (2.0 * f + 1.0) / 3.0;
}

}  // namespace ecs
