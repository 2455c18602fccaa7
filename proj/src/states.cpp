#include "ecs/states.hpp"

#include <cmath>
#include <string>

#include "ecs/errors.hpp"

namespace ecs {

CoherentLabel::CoherentLabel(double amplitude) : amplitude_(amplitude) {
  detail::require_finite(amplitude, "coherent amplitude");
}

EcsParams EcsParams::make(double alpha, Parity parity) {
  detail::require_finite(alpha, "alpha");
  if (alpha < 0.0) {
    throw DomainError("alpha must be non-negative, got " + std::to_string(alpha));
  }
  if (parity == Parity::minus && alpha == 0.0) {
    throw DegenerateStateError("odd entangled coherent state vanishes at alpha = 0");
  }
  return EcsParams{alpha, parity};
}

double coherent_overlap(double a, double b) {
  detail::require_finite(a, "overlap amplitude");
  detail::require_finite(b, "overlap amplitude");
  const double d = a - b;
  return std::exp(-0.5 * d * d);
}

double coherent_overlap(CoherentLabel a, CoherentLabel b) {
  return coherent_overlap(a.amplitude(), b.amplitude());
}

namespace {

// 2 +- 2 e^{-x}; expm1 keeps the odd branch accurate for small x.
double two_branch_norm(double x, Parity parity) {
  return parity == Parity::plus ? 2.0 + 2.0 * std::exp(-x) : -2.0 * std::expm1(-x);
}

}  // namespace

double ecs_norm(const EcsParams& params) {
  const EcsParams p = EcsParams::make(params.alpha, params.parity);
  return two_branch_norm(4.0 * p.alpha * p.alpha, p.parity);
}

double even_odd_norm(double alpha, double eta, Parity parity) {
  detail::require_finite(alpha, "alpha");
  detail::require_unit_interval(eta, "eta");
  const double x = 2.0 * eta * alpha * alpha;
  if (parity == Parity::minus && x == 0.0) {
    throw DegenerateStateError("odd coherent basis state vanishes when eta * alpha^2 = 0");
  }
  return two_branch_norm(x, parity);
}

}  // namespace ecs
