#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>

#include "ecs/errors.hpp"

namespace ecs::search {

struct ScalarMax {
  double argmax;
  double value;
  int evaluations;
};

/// Golden-section maximization of f on [lo, hi]. Assumes f is unimodal on
/// the interval; stops once the bracket is narrower than xtol.
inline ScalarMax golden_section_maximize(const std::function<double(double)>& f, double lo,
                                         double hi, double xtol = 1e-12, int max_iter = 300) {
  if (!(lo < hi)) throw DomainError("golden_section_maximize: empty interval");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int evals = 2;
  for (int it = 0; it < max_iter && (b - a) > xtol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++evals;
  }
  return fc >= fd ? ScalarMax{c, fc, evals} : ScalarMax{d, fd, evals};
}

/// Coarse scan of `points` equally spaced abscissae in (lo, hi], then
/// golden-section refinement on the cell pair around the best sample.
inline ScalarMax bracket_and_maximize(const std::function<double(double)>& f, double lo,
                                      double hi, std::size_t points = 64, double xtol = 1e-12) {
  if (!(lo < hi) || points < 2) throw DomainError("bracket_and_maximize: bad interval");
  const double h = (hi - lo) / static_cast<double>(points);
  std::size_t best = 1;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= points; ++i) {
    const double v = f(lo + h * static_cast<double>(i));
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  const double left = lo + h * static_cast<double>(best - 1);
  const double right = lo + h * static_cast<double>(std::min(best + 1, points));
  ScalarMax refined = golden_section_maximize(f, left, right, xtol);
  refined.evaluations += static_cast<int>(points);
  if (best_value > refined.value) {
    return {lo + h * static_cast<double>(best), best_value, refined.evaluations};
  }
  return refined;
}

}  // namespace ecs::search
