#include <cmath>

#include "ecs/errors.hpp"
#include "ecs/search.hpp"
#include "support.hpp"

using namespace ecs::search;

TEST_CASE("golden section finds the vertex of a parabola") {
  const auto r = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0, 1.0);
  CHECK_NEAR(r.argmax, 0.3, 1e-8);
  CHECK(r.value <= 0.0);
  CHECK(r.evaluations > 10);
}

TEST_CASE("golden section handles a maximum on the boundary") {
  const auto r = golden_section_maximize([](double x) { return x; }, 0.0, 2.0);
  CHECK_NEAR(r.argmax, 2.0, 1e-10);
}

TEST_CASE("bracket_and_maximize escapes a local maximum") {
  // Global peak near 2.6, smaller bump near 0.5.
  const auto f = [](double x) {
    return 0.5 * std::exp(-20 * (x - 0.5) * (x - 0.5)) + std::exp(-20 * (x - 2.6) * (x - 2.6));
  };
  const auto r = bracket_and_maximize(f, 0.0, 4.0);
  CHECK_NEAR(r.argmax, 2.6, 1e-6);
  CHECK_NEAR(r.value, 1.0, 1e-12);
}

TEST_CASE("searches are deterministic") {
  const auto f = [](double x) { return std::sin(3 * x) * std::exp(-x); };
  const auto a = bracket_and_maximize(f, 0.0, 4.0);
  const auto b = bracket_and_maximize(f, 0.0, 4.0);
  CHECK(a.argmax == b.argmax);
  CHECK(a.value == b.value);
  CHECK(a.evaluations == b.evaluations);
}

TEST_CASE("empty intervals are rejected") {
  const auto f = [](double x) { return x; };
  CHECK_THROWS_AS(golden_section_maximize(f, 1.0, 1.0), ecs::DomainError);
  CHECK_THROWS_AS(bracket_and_maximize(f, 2.0, 1.0), ecs::DomainError);
}
