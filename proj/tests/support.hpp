#pragma once

#include <cmath>

#include <doctest.h>

// |a - b| <= tol, reporting both values on failure.
#define CHECK_NEAR(a, b, tol)                                                      \
  do {                                                                             \
    const double check_near_a_ = (a);                                              \
    const double check_near_b_ = (b);                                              \
    CHECK_MESSAGE(std::abs(check_near_a_ - check_near_b_) <= (tol),                \
                  #a " = " << check_near_a_ << ", " #b " = " << check_near_b_);    \
  } while (0)
