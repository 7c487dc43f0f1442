#pragma once

// Reflection phases in total reflection (0 < eps < 1).
//
//   nuq < eps < 1:  R =  exp(2 i theta_gt)
//   0 < eps < nuq:  R = -exp(2 i theta_lt)
//
// Every arctangent is evaluated as atan2(numerator, denominator), so the
// closed forms are pinned down to a definite branch rather than "mod pi".

#include <span>
#include <vector>

namespace qstep {

struct PhaseValue {
  double theta = 0;       // principal value in (-pi/2, pi/2]
  int branch_offset = 0;  // multiples of pi added by unwrapping
  bool minus_sign = false;

  double unwrapped() const;
};

double theta_gt(double eps, double nuq);
double theta_lt(double eps, double nuq);
double theta_c(double eps);

/// Pure quaternionic phase. The real scalar alpha in this closed form is
/// (1 - eps^2)^{1/4} / sqrt(2), the common real and imaginary part of
/// alpha_minus at nuq = 1.
double theta_q(double eps);

/// Phase of R continued along eps from the midpoint of its regime, so that
/// unwrapped() is continuous on each regime interval.
PhaseValue phase_of_r(double eps, double nuq);

/// Principal phase of R (minus sign removed below nuq) without continuation.
PhaseValue principal_phase_of_r(double eps, double nuq);

/// Shifts `theta` by a multiple of pi so it lands within pi/2 of `reference`.
double align_branch(double theta, double reference);

/// Continuous phase over an increasing grid lying inside one regime.
std::vector<PhaseValue> unwrap_phase_sweep(std::span<const double> eps_grid, double nuq);

}  // namespace qstep
