#include <cmath>
#include <random>

#include "ecs/channels.hpp"
#include "ecs/entanglement.hpp"
#include "ecs/errors.hpp"
#include "reference/reference_values.hpp"
#include "support.hpp"

using namespace ecs;
using linalg::Matrix;

namespace {

SymDensityMatrix sym_matrix(double alpha, double eta) {
  return sym_density_matrix(sym_decohere(EcsParams::make(alpha, Parity::minus), LossChannel(eta)));
}

QubitDensity4 bell() {
  const double h = 1.0 / std::sqrt(2.0);
  const double psi[4] = {0.0, h, -h, 0.0};
  return QubitDensity4(Matrix::outer(psi), BasisTag::even_odd_coherent);
}

QubitDensity4 maximally_mixed() {
  return QubitDensity4(Matrix::identity(4) * 0.25, BasisTag::even_odd_coherent);
}

const double kGridAlpha[] = {0.25, 0.5, 1.0, 2.0};

}  // namespace

TEST_CASE("binary_entropy") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK_NEAR(binary_entropy(0.25), ref::kBinaryEntropy_025, 1e-15);
  CHECK_THROWS_AS(binary_entropy(-0.1), DomainError);
  CHECK_THROWS_AS(binary_entropy(1.1), DomainError);
}

TEST_CASE("eof_from_concurrence") {
  CHECK(eof_from_concurrence(Concurrence(1.0)) == 1.0);
  CHECK(eof_from_concurrence(Concurrence(0.0)) == 0.0);
  CHECK_NEAR(eof_from_concurrence(Concurrence(0.5)), ref::kEofC05, 1e-15);

  // Pure state cos t |01> - sin t |10> has C = sin 2t and reduced entropy H(cos^2 t).
  const double t = 0.5 * std::asin(0.5);
  CHECK_NEAR(eof_from_concurrence(Concurrence(0.5)), binary_entropy(std::cos(t) * std::cos(t)),
             1e-15);

  double prev = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double e = eof_from_concurrence(Concurrence(k / 1000.0));
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("Concurrence range is enforced") {
  CHECK(Concurrence(1.0 + 1e-13).value() == 1.0);
  CHECK(Concurrence(-1e-13).value() == 0.0);
  CHECK_THROWS_AS(Concurrence(1.1), DomainError);
  CHECK_THROWS_AS(Concurrence(-0.1), DomainError);
}

TEST_CASE("wootters_concurrence examples") {
  CHECK_NEAR(wootters_concurrence(bell()).value(), 1.0, 1e-12);
  CHECK_NEAR(wootters_concurrence(maximally_mixed()).value(), 0.0, 1e-15);
  const auto m = sym_matrix(1.0, 0.5);
  CHECK_NEAR(wootters_concurrence(m.rho).value(), ref::kConcurrence_1_05, 1e-12);
  CHECK_NEAR(wootters_concurrence(m.rho).value(),
             (std::exp(2.0) - 1.0) / (std::exp(4.0) - 1.0), 1e-12);
}

TEST_CASE("wootters lambdas have the c0 {2B, -2D, 0, 0} structure") {
  for (double a : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    for (int k = 0; k <= 10; ++k) {
      const double e = 0.1 * k;
      CAPTURE(a);
      CAPTURE(e);
      const auto m = sym_matrix(a, e);
      const auto& c = m.coefficients;
      std::array<double, 4> expect{2 * c.b * c.c0, -2 * c.d * c.c0, 0.0, 0.0};
      std::sort(expect.begin(), expect.end(), std::greater<>());
      const auto lambdas = wootters_lambdas(m.rho);
      for (std::size_t i = 0; i < 4; ++i) CHECK_NEAR(lambdas[i], expect[i], 1e-9);
    }
  }
  const auto lambdas = wootters_lambdas(sym_matrix(0.5, 0.3).rho);
  for (std::size_t i = 0; i < 4; ++i) CHECK_NEAR(lambdas[i], ref::kWoottersLambdas_05_03[i], 1e-9);
}

TEST_CASE("wootters_concurrence properties") {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> g;
  // |+> <-> |-> on both sides is a local unitary: C unchanged.
  const Matrix swap{{0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {1, 0, 0, 0}};
  for (int rep = 0; rep < 50; ++rep) {
    Matrix x(4, 4);
    for (double& v : x.data()) v = g(rng);
    Matrix r = x * linalg::transpose(x);
    r = r * (1.0 / linalg::trace(r));
    const QubitDensity4 rho(r, BasisTag::even_odd_coherent);
    const QubitDensity4 flipped(swap * r * swap, BasisTag::even_odd_coherent);
    const double c = wootters_concurrence(rho).value();
    CHECK(c >= 0.0);
    CHECK(c <= 1.0);
    CHECK_NEAR(wootters_concurrence(flipped).value(), c, 1e-10);
  }
}

TEST_CASE("concurrence_sym_closed") {
  CHECK_NEAR(concurrence_sym_closed(0.001, 0.7).value(), 0.7, 1e-4);
  for (double a : {0.01, 0.5, 1.0, 3.0, 10.0}) {
    CHECK(concurrence_sym_closed(a, 1.0).value() == 1.0);
    CHECK(concurrence_sym_closed(a, 0.0).value() == 0.0);
  }
  CHECK_NEAR(concurrence_sym_closed(1.0, 0.5).value(), ref::kConcurrence_1_05, 1e-14);
  CHECK_NEAR(concurrence_sym_closed(2.0, 0.9).value(), ref::kConcurrence_2_09, 1e-14);
  CHECK_THROWS_AS(concurrence_sym_closed(0.0, 0.5), DegenerateStateError);
  CHECK_THROWS_AS(concurrence_sym_closed(1.0, 1.5), DomainError);
}

TEST_CASE("closed-form concurrence equals Wootters on the analytic matrix") {
  for (double a : kGridAlpha) {
    for (int k = 1; k <= 9; ++k) {
      const double e = 0.1 * k;
      CHECK_NEAR(concurrence_sym_closed(a, e).value(),
                 wootters_concurrence(sym_matrix(a, e).rho).value(), 1e-10);
    }
  }
}

TEST_CASE("fraction_sym_closed") {
  CHECK_NEAR(fraction_sym_closed(0.001, 0.3).value, 0.3, 1e-4);
  CHECK(fraction_sym_closed(2.0, 0.5).value == 0.5);
  CHECK_NEAR(fraction_sym_closed(6.0, 0.8).value, 0.5, 1e-3);
  CHECK_NEAR(fraction_sym_closed(1.0, 0.3).value, ref::kSymFraction_1_03, 1e-14);
  CHECK_NEAR(fraction_sym_closed(0.5, 0.8).value, ref::kSymFraction_05_08, 1e-14);
  CHECK_NEAR(fraction_sym_closed(1.0, 0.3).argmax_beta, std::sqrt(0.3), 1e-15);
  CHECK_THROWS_AS(fraction_sym_closed(0.0, 0.5), DegenerateStateError);
}

TEST_CASE("fraction_asym and fraction_asym_max") {
  const auto lossless = fraction_asym_max(1.0, 1.0);
  CHECK_NEAR(lossless.value, 1.0, 1e-14);
  CHECK(lossless.argmax_beta == 1.0);

  const auto quarter = fraction_asym_max(1.0, 0.25);
  CHECK(quarter.argmax_beta == 0.75);
  CHECK_NEAR(quarter.value, ref::kAsymFraction_1_025, 1e-14);
  CHECK_NEAR(scan_fraction_asym(1.0, 0.25).argmax_beta, 0.75, 1e-6);

  CHECK(fraction_asym_max(0.3, 0.7).value > 0.7);
  CHECK_NEAR(fraction_asym_max(0.3, 0.7).value, ref::kAsymFraction_03_07, 1e-14);
  CHECK_NEAR(fraction_asym_max(2.0, 0.4).value, ref::kAsymFraction_2_04, 1e-14);
  CHECK_NEAR(fraction_asym(2.0, 0.4, ref::kAsymArgmax_2_04), ref::kAsymFraction_2_04, 1e-14);

  CHECK_THROWS_AS(fraction_asym(1.0, 0.5, 0.0), DegenerateStateError);
  CHECK_THROWS_AS(fraction_sym(1.0, 0.5, -1.0), DegenerateStateError);
}

TEST_CASE("numeric scans never beat the analytic maximizers") {
  for (double a : {0.05, 0.25, 0.5, 1.0, 2.0, 3.0}) {
    for (int k = 0; k <= 10; ++k) {
      const double e = 0.1 * k;
      CAPTURE(a);
      CAPTURE(e);
      const auto asym = fraction_asym_max(a, e);
      CHECK(scan_fraction_asym(a, e).value <= asym.value + 1e-9);
      const auto sym = fraction_sym_closed(a, e);
      if (e > 0.0) {
        CHECK(scan_fraction_sym(a, e).value <= sym.value + 1e-9);
        CHECK_NEAR(fraction_sym(a, e, sym.argmax_beta), sym.value, 1e-12);
      }
      CHECK(asym.value >= 0.0);
      CHECK(asym.value <= 1.0);
    }
  }
}

TEST_CASE("eof_lower_bound") {
  CHECK(eof_lower_bound(0.4) == 0.0);
  CHECK(eof_lower_bound(1.0) == 1.0);
  CHECK(eof_lower_bound(0.5) == 0.0);
  CHECK_NEAR(eof_lower_bound(0.75), ref::kEofBound_075, 1e-15);
  CHECK_THROWS_AS(eof_lower_bound(1.2), DomainError);
}

TEST_CASE("partial transpose eigenvalues") {
  const auto large = pt_eigenvalues(sym_matrix(6.0, 0.5).rho);
  for (double l : large) CHECK(l >= -1e-10);
  CHECK_NEAR(pt_eigenvalues(bell())[0], -0.5, 1e-15);
  const auto mid = sym_matrix(1.0, 0.5);
  const auto pt = pt_eigenvalues(mid.rho);
  CHECK(pt[0] < 0.0);
  const auto closed = pt_eigenvalues_closed(mid.coefficients);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK_NEAR(pt[i], ref::kPtEigenvalues_1_05[i], 1e-12);
    CHECK_NEAR(closed[i], ref::kPtEigenvalues_1_05[i], 1e-12);
  }
  const auto far = pt_eigenvalues(sym_matrix(2.0, 0.9).rho);
  for (std::size_t i = 0; i < 4; ++i) CHECK_NEAR(far[i], ref::kPtEigenvalues_2_09[i], 1e-12);
}

TEST_CASE("negativity examples") {
  CHECK_NEAR(negativity(bell()), 1.0, 1e-15);
  CHECK(negativity(maximally_mixed()) == 0.0);
  CHECK_NEAR(negativity(sym_matrix(1.0, 0.5).rho), ref::kNegativity_1_05, 1e-12);
  CHECK_NEAR(negativity(sym_matrix(0.25, 0.1).rho), ref::kNegativity_025_01, 1e-12);

  // Counterexample at eta = 0.5.
  const auto ecs = sym_matrix(0.001, 0.5);
  const auto bell_state = bell_sym_density(LossChannel(0.5));
  CHECK(negativity(ecs.rho) < bell_negativity(bell_state));
  CHECK(eof_from_concurrence(wootters_concurrence(ecs.rho)) > bell_sym_eof(0.5));
}

TEST_CASE("Peres consistency on the symmetric family") {
  for (double a : {0.1, 0.5, 1.0, 2.0, 4.0, 6.0}) {
    for (int k = 0; k <= 10; ++k) {
      const auto m = sym_matrix(a, 0.1 * k);
      const auto pt = pt_eigenvalues(m.rho);
      const bool ppt = pt[0] >= -1e-10;
      CHECK((negativity(m.rho) < 1e-9) == ppt);
      CHECK(negativity(m.rho) >= 0.0);
      CHECK(negativity(m.rho) <= 1.0);
    }
  }
}

TEST_CASE("Bell baselines") {
  CHECK(bell_sym_concurrence(1.0).value() == 1.0);
  CHECK_NEAR(bell_sym_concurrence(0.7).value(), 0.49, 1e-15);
  CHECK(concurrence_sym_closed(0.001, 0.5).value() > bell_sym_concurrence(0.5).value());
  CHECK_NEAR(concurrence_sym_closed(0.001, 0.5).value(), 0.5, 1e-4);
  for (int k = 0; k <= 10; ++k) {
    const double e = 0.1 * k;
    CHECK(bell_asym_fraction(e) == e);
    CHECK(bell_sym_concurrence(e).value() == e * e);
    CHECK_NEAR(bell_negativity(bell_sym_density(LossChannel(e))), e * e, 1e-14);
    CHECK_NEAR(bell_negativity(bell_asym_density(LossChannel(e))), e, 1e-14);
    CHECK(bell_asym_concurrence(e).value() == e);
  }
}

TEST_CASE("ordering counterexample across eta") {
  for (int k = 1; k <= 9; ++k) {
    const double e = 0.1 * k;
    CAPTURE(e);
    const auto ecs = sym_matrix(1e-3, e);
    CHECK(eof_from_concurrence(wootters_concurrence(ecs.rho)) > bell_sym_eof(e));
    CHECK(negativity(ecs.rho) < bell_negativity(bell_sym_density(LossChannel(e))));
  }
}

TEST_CASE("teleport_fidelity") {
  CHECK_NEAR(teleport_fidelity(0.5), 2.0 / 3.0, 1e-15);
  CHECK(teleport_fidelity(1.0) == 1.0);
  CHECK_NEAR(teleport_fidelity(0.8), 13.0 / 15.0, 1e-15);
  CHECK_NEAR(teleport_fidelity(0.0), 1.0 / 3.0, 1e-15);
  CHECK_THROWS_AS(teleport_fidelity(1.5), DomainError);
}
