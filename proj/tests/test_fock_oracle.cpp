#include <cmath>
#include <cstdlib>
#include <numeric>

#include "ecs/channels.hpp"
#include "ecs/entanglement.hpp"
#include "ecs/errors.hpp"
#include "ecs/fock_oracle.hpp"
#include "reference/reference_values.hpp"
#include "support.hpp"

using namespace ecs;
using namespace ecs::fock;

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) s += a[i] * b[i];
  return s;
}

SymDensityMatrix analytic(double alpha, double eta) {
  return sym_density_matrix(sym_decohere(EcsParams::make(alpha, Parity::minus), LossChannel(eta)));
}

// Single-mode reduced density matrix of `mode`.
linalg::Matrix reduced(const MultiModeState& s, std::size_t mode) {
  const std::size_t d = s.dims()[mode];
  const std::size_t inner = s.stride(mode);
  const std::size_t outer = s.size() / (d * inner);
  linalg::Matrix r(d, d);
  const auto a = s.amplitudes();
  for (std::size_t o = 0; o < outer; ++o) {
    for (std::size_t i = 0; i < inner; ++i) {
      for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t q = 0; q < d; ++q) {
          r(p, q) += a[(o * d + p) * inner + i] * a[(o * d + q) * inner + i];
        }
      }
    }
  }
  return r;
}

double fidelity_with(const linalg::Matrix& rho, const std::vector<double>& psi) {
  double f = 0.0;
  for (std::size_t i = 0; i < rho.rows() && i < psi.size(); ++i) {
    for (std::size_t j = 0; j < rho.cols() && j < psi.size(); ++j) f += psi[i] * rho(i, j) * psi[j];
  }
  return f;
}

}  // namespace

TEST_CASE("coherent_fock examples") {
  const auto vac = coherent_fock(0.0, 1e-12);
  REQUIRE(vac.dim() >= 1);
  CHECK(vac.amplitudes[0] == 1.0);
  for (std::size_t n = 1; n < vac.dim(); ++n) CHECK(vac.amplitudes[n] == 0.0);

  const auto one = coherent_fock(1.0, 1e-12);
  CHECK_NEAR(dot(one.amplitudes, one.amplitudes), 1.0, 1e-12);
  CHECK(one.tail_bound < 1e-12);

  CHECK_NEAR(dot(one.amplitudes, coherent_fock(-1.0, 1e-12).amplitudes), ref::kOverlap_1_m1,
             1e-12);
}

TEST_CASE("coherent_fock dimension is minimal and capped") {
  for (double a : {0.1, 1.0, 3.0, 6.0}) {
    const auto s = coherent_fock(a, 1e-12);
    const double norm = dot(s.amplitudes, s.amplitudes);
    CHECK(norm <= 1.0 + 1e-15);
    CHECK(norm >= 1.0 - s.tail_bound - 1e-14);
    CHECK(s.tail_bound < 1e-12);
    // One level fewer would leave too much mass behind.
    const auto shorter = coherent_fock_fixed(a, s.dim() - 1);
    CHECK(1.0 - dot(shorter.amplitudes, shorter.amplitudes) >= 1e-12 * 0.5);
  }
  CHECK_THROWS_AS(coherent_fock(40.0, 1e-12, 512), CapacityError);
  CHECK_THROWS_AS(coherent_fock(1.0, 0.0), DomainError);
}

TEST_CASE("beam splitter examples") {
  const std::size_t dim = 40;
  const auto a = coherent_fock_fixed(1.0, dim).amplitudes;
  std::vector<double> vac(dim, 0.0);
  vac[0] = 1.0;
  const std::vector<std::vector<double>> modes{a, vac};
  auto in = MultiModeState::product(modes);
  in.normalize();

  SUBCASE("eta = 1 is the identity") {
    const auto out = beam_splitter(in, 0, 1, 1.0);
    for (std::size_t k = 0; k < in.size(); ++k) {
      CHECK_NEAR(out.amplitudes()[k], in.amplitudes()[k], 1e-15);
    }
  }
  SUBCASE("eta = 0 swaps the modes") {
    const auto out = beam_splitter(in, 0, 1, 0.0);
    const std::vector<std::vector<double>> swapped{vac, a};
    auto expect = MultiModeState::product(swapped);
    expect.normalize();
    for (std::size_t k = 0; k < in.size(); ++k) {
      CHECK_NEAR(std::abs(out.amplitudes()[k]), std::abs(expect.amplitudes()[k]), 1e-15);
    }
  }
  SUBCASE("eta = 0.5 splits the amplitude") {
    const auto out = beam_splitter(in, 0, 1, 0.5);
    CHECK_NEAR(out.norm_squared(), 1.0, 1e-10);
    const auto target = coherent_fock(std::sqrt(0.5), 1e-14).amplitudes;
    CHECK(fidelity_with(reduced(out, 0), target) > 1 - 1e-10);
    CHECK(fidelity_with(reduced(out, 1), target) > 1 - 1e-10);
  }
}

TEST_CASE("beam splitter is unitary on the whole truncated space") {
  // Every |n, m> with n + m < dim stays inside the truncation, so norms and
  // inner products are preserved exactly.
  const std::size_t dim = 12;
  BeamSplitter bs(0.37, dim, dim);
  for (std::size_t n = 0; n < dim; ++n) {
    for (std::size_t m = 0; n + m < dim; ++m) {
      double norm = 0.0;
      for (std::size_t p = 0; p <= n + m; ++p) norm += bs.element(n, m, p) * bs.element(n, m, p);
      CHECK_NEAR(norm, 1.0, 1e-13);
      if (n + m >= 1 && m >= 1) {
        // Orthogonal to the neighbouring input with the same photon number.
        double ip = 0.0;
        for (std::size_t p = 0; p <= n + m; ++p) ip += bs.element(n, m, p) * bs.element(n + 1, m - 1, p);
        CHECK_NEAR(ip, 0.0, 1e-13);
      }
    }
  }
}

TEST_CASE("Hong-Ou-Mandel: |1,1> at eta = 1/2 has no coincidences") {
  BeamSplitter bs(0.5, 4, 4);
  CHECK_NEAR(bs.element(1, 1, 1), 0.0, 1e-15);
  CHECK_NEAR(std::abs(bs.element(1, 1, 0)), std::sqrt(0.5), 1e-15);
  CHECK_NEAR(std::abs(bs.element(1, 1, 2)), std::sqrt(0.5), 1e-15);
}

TEST_CASE("beam splitter rejects bad input") {
  std::vector<double> v(16, 0.0);
  v[0] = 2.0;
  MultiModeState s({4, 4}, v);
  CHECK_THROWS_AS(beam_splitter(s, 0, 1, 0.5), InvariantError);
  v[0] = 1.0;
  MultiModeState ok({4, 4}, v);
  CHECK_THROWS_AS(beam_splitter(ok, 0, 2, 0.5), DimensionError);
  CHECK_THROWS_AS(beam_splitter(ok, 0, 1, 1.5), DomainError);
}

TEST_CASE("decohered pure states stay normalized") {
  FockOracle oracle;
  for (double a : {0.25, 1.0, 2.0}) {
    CHECK_NEAR(oracle.sym_state(a, 0.3).norm_squared(), 1.0, 1e-10);
    CHECK_NEAR(oracle.asym_state(a, 0.3).norm_squared(), 1.0, 1e-10);
  }
}

TEST_CASE("oracle_sym_matrix examples") {
  const auto pure = oracle_sym_matrix(1.0, 1.0);
  CHECK_NEAR(pure(1, 1), 0.5, 1e-12);
  CHECK_NEAR(pure(1, 2), -0.5, 1e-12);
  CHECK_NEAR(pure(0, 0), 0.0, 1e-12);

  const auto half = oracle_sym_matrix(1.0, 0.5);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      CHECK_NEAR(half(i, j), analytic(1.0, 0.5).rho(i, j), 1e-9);
      CHECK_NEAR(half(i, j), ref::kSymMatrix_1_05[4 * i + j], 1e-9);
    }
  }
  CHECK_NEAR(wootters_concurrence(oracle_sym_matrix(0.5, 0.3)).value(),
             (std::exp(4 * 0.3 * 0.25) - 1) / (std::exp(1.0) - 1), 1e-8);
  CHECK_THROWS_AS(oracle_sym_matrix(1.0, 0.0), DegenerateStateError);
  CHECK_THROWS_AS(oracle_sym_matrix(0.0, 0.5), DegenerateStateError);
}

TEST_CASE("projection captures the whole state") {
  FockOracle oracle;
  for (double a : {0.25, 1.0, 2.0}) {
    const auto& s = oracle.sym_state(a, 0.6);
    const auto basis = even_odd_basis(std::sqrt(0.6) * a, s.dims()[0]);
    CHECK(project_pair(s, 0, 1, basis, basis).residual < 1e-10);
    CHECK_NEAR(dot(basis[0], basis[1]), 0.0, 1e-15);
  }
}

TEST_CASE("oracle_asym_fraction examples") {
  const auto lossless = oracle_asym_fraction(1.0, 1.0);
  CHECK_NEAR(lossless.value, 1.0, 1e-9);
  CHECK_NEAR(lossless.argmax_beta, 1.0, 1e-5);

  const auto quarter = oracle_asym_fraction(1.0, 0.25);
  CHECK_NEAR(quarter.argmax_beta, 0.75, 1e-5);
  CHECK_NEAR(quarter.value, ref::kAsymFraction_1_025, 1e-9);

  CHECK(oracle_asym_fraction(0.3, 0.6).value > 0.6);
  CHECK_NEAR(oracle_asym_fraction(0.3, 0.6).value, ref::kAsymFraction_03_06, 1e-9);
}

TEST_CASE("oracle_env_entanglement examples") {
  CHECK_NEAR(oracle_env_entanglement(1.0, 0.0).value(), 1.0, 1e-8);
  CHECK_NEAR(oracle_env_entanglement(1.0, 0.3).value(), concurrence_sym_closed(1.0, 0.7).value(),
             1e-8);
  CHECK_NEAR(oracle_env_entanglement(1.0, 0.3).value(), ref::kEnvConcurrence_1_03, 1e-8);
  CHECK_NEAR(oracle_env_entanglement(1.0, 1.0).value(), 0.0, 1e-8);

  FockOracle oracle;
  CHECK_NEAR(oracle.asym_fraction(1.0, 0.3, Partner::environment).value,
             ref::kAsymEnvFraction_1_03, 1e-9);
}

TEST_CASE("end-to-end agreement with the analytic module") {
  FockOracle oracle;
  for (double a : {0.25, 0.5, 1.0, 2.0}) {
    for (int k = 1; k <= 9; ++k) {
      const double e = 0.1 * k;
      CAPTURE(a);
      CAPTURE(e);
      const auto exact = analytic(a, e);
      const auto numeric = oracle.sym_matrix(a, e);
      CHECK_NEAR(wootters_concurrence(numeric).value(), concurrence_sym_closed(a, e).value(), 1e-8);
      CHECK_NEAR(negativity(numeric), negativity(exact.rho), 1e-8);
      CHECK_NEAR(pt_eigenvalues(numeric)[0], pt_eigenvalues(exact.rho)[0], 1e-8);
      CHECK_NEAR(oracle.sym_fraction(a, e).value, fraction_sym_closed(a, e).value, 1e-8);
      CHECK_NEAR(oracle.asym_fraction(a, e).value, fraction_asym_max(a, e).value, 1e-8);
    }
  }
}

TEST_CASE("doubling the truncation changes nothing") {
  for (double a : {0.5, 1.0, 1.5}) {
    const double e = 0.4;
    OracleOptions base;
    FockOracle small(base);
    OracleOptions wide = base;
    wide.min_dim = 2 * small.mode_dim(a);
    FockOracle large(wide);
    REQUIRE(large.mode_dim(a) == 2 * small.mode_dim(a));
    CHECK_NEAR(wootters_concurrence(small.sym_matrix(a, e)).value(),
               wootters_concurrence(large.sym_matrix(a, e)).value(), 1e-9);
    CHECK_NEAR(negativity(small.sym_matrix(a, e)), negativity(large.sym_matrix(a, e)), 1e-9);
    CHECK_NEAR(small.sym_fraction(a, e).value, large.sym_fraction(a, e).value, 1e-9);
    CHECK_NEAR(small.asym_fraction(a, e).value, large.asym_fraction(a, e).value, 1e-9);
    CHECK(linalg::max_abs_diff(small.sym_matrix(a, e).matrix(), large.sym_matrix(a, e).matrix()) <
          1e-9);
  }
}

TEST_CASE("capacity limits surface as CapacityError") {
  OracleOptions tight;
  tight.max_dim = 16;
  FockOracle oracle(tight);
  CHECK_THROWS_AS(oracle.sym_matrix(3.0, 0.5), CapacityError);

  OracleOptions small_mem;
  small_mem.max_elements = 1000;
  CHECK_THROWS_AS(FockOracle(small_mem).sym_matrix(1.0, 0.5), CapacityError);
}

TEST_CASE("ECS_MAX_FOCK_DIM overrides the cap") {
  ::setenv("ECS_MAX_FOCK_DIM", "64", 1);
  CHECK(OracleOptions::from_env().max_dim == 64);
  ::setenv("ECS_MAX_FOCK_DIM", "not-a-number", 1);
  CHECK_THROWS(OracleOptions::from_env());
  ::unsetenv("ECS_MAX_FOCK_DIM");
  CHECK(OracleOptions::from_env().max_dim == 512);
}
