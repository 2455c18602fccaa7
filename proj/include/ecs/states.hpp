#pragma once

// Coherent-state algebra on real amplitudes.
//
// Every amplitude in this library is real. A coherent state |a> with real a
// has Fock coefficients e^{-a^2/2} a^n / sqrt(n!), and two such states overlap
// as <a|b> = exp(-(a-b)^2 / 2).

namespace ecs {

enum class Parity { plus, minus };

/// Real amplitude labelling a coherent state |a>.
class CoherentLabel {
 public:
  explicit CoherentLabel(double amplitude);

  double amplitude() const { return amplitude_; }
  CoherentLabel operator-() const { return CoherentLabel(-amplitude_); }

 private:
  double amplitude_;
};

/// Parameters of (|a>|-a> +- |-a>|a>) / sqrt(N+-).
struct EcsParams {
  double alpha;
  Parity parity;

  /// Validates alpha >= 0, finite, and alpha > 0 for the odd state.
  static EcsParams make(double alpha, Parity parity);
};

double coherent_overlap(double a, double b);
double coherent_overlap(CoherentLabel a, CoherentLabel b);

/// N+-(alpha) = 2 +- 2 exp(-4 alpha^2).
double ecs_norm(const EcsParams& params);

/// N+-(eta) = 2 +- 2 exp(-2 eta alpha^2), the squared norm of
/// |sqrt(eta) a> +- |-sqrt(eta) a>.
double even_odd_norm(double alpha, double eta, Parity parity);

}  // namespace ecs
