#pragma once

// Minima of the delay curves, complex steps that reproduce a quaternionic
// delay at one energy, and crossings of the rescaled curves.

#include <functional>
#include <vector>

#include "qstep/delay.hpp"

namespace qstep {

struct CurveMinimum {
  double eps_star;
  double tau_star;
  double product;  // eps_star * tau_star, i.e. E~ t~ / hbar
};

/// Minimizes f on (lo, hi): coarse scan for a bracketing triple, then
/// golden-section search down to an interval of 1e-9. Points where f throws
/// count as +inf. Throws NoInteriorMinimum when the scan minimum sits on an
/// end of the range or the neighbor certificate at +-1e-4 fails.
CurveMinimum minimize_bracketed(const std::function<double(double)>& f, double lo, double hi);

CurveMinimum find_minimum(CurveKind kind, double nuq = 0.0);

struct RescaleConstants {
  double complex_scale;
  double quaternionic_scale;
};

/// Minimizing energies of the complex and quaternionic curves.
RescaleConstants rescale_constants();

struct MimicSolution {
  double e0_kev;
  double vq_kev;
  double v1_kev;     // largest root
  double delay_kev;  // target quaternionic delay, KeV t0 / hbar
  std::vector<double> roots;
};

/// Complex step height V1 whose reflection delay at e0 equals that of a pure
/// quaternionic step of height vq. Roots are bracketed on a geometric scan of
/// V1 - e0 and refined by bisection to 1e-6 KeV.
MimicSolution mimic_potential(double e0_kev, double vq_kev);

struct Intersection {
  double eps_tilde;
  double tau_tilde;
};

/// Zeros of tau~_c - tau~_q on [lo, hi]: sign-change scan at 1e-3, a second
/// scan at 1e-4, bisection on each bracket.
std::vector<Intersection> curve_intersections(double lo, double hi, const RescaleConstants& scales);

/// Same, over the whole common domain (1e-3, 1/max(scales)).
std::vector<Intersection> curve_intersections(const RescaleConstants& scales);

}  // namespace qstep
