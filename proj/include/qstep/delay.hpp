#pragma once

// Reflection delay times tau = 2 d(theta)/d(eps), in units hbar / V, where V
// is the potential scale the energy was divided by (V1 for a complex step,
// Vq for a pure quaternionic one, V0 in general).

#include <span>
#include <utility>
#include <vector>

namespace qstep {

/// hbar = 1 / sqrt(eps (1 - eps)) for a pure complex step.
double tau_c(double eps);

/// Closed-form delay for a pure quaternionic step (nuq = 1).
double tau_q(double eps);

/// 2 d(theta)/d(eps) by Richardson-refined central differences of the
/// continuous phase of R. Valid for any nuq; throws BoundaryEnergy when the
/// stencil would leave the regime containing eps.
double tau_general(double eps, double nuq);

/// Same derivative, but differentiating theta_gt / theta_lt instead of the
/// phase of R. Second route used for consistency checks.
double tau_general_closed_phase(double eps, double nuq);

/// tau_c at nuq = 0, tau_q at nuq = 1, tau_general otherwise.
double tau_reflection(double eps, double nuq);

enum class CurveKind { Complex, Quaternionic, GeneralNuq, RescaledComplex, RescaledQuaternionic };

const char* to_string(CurveKind k);

struct DelaySample {
  double eps;
  double tau;
};

struct DelayCurve {
  CurveKind kind = CurveKind::Complex;
  double nuq = 0;    // GeneralNuq only
  double scale = 1;  // rescaled kinds: Etilde / V
  std::vector<DelaySample> samples;
  int dropped = 0;
};

/// Evaluates one point of a curve. Rescaled kinds return
/// scale * tau(scale * eps).
double delay_on_curve(CurveKind kind, double eps, double nuq = 0.0, double scale = 1.0);

/// Samples a curve on `grid`; points outside the domain (or not strictly
/// increasing) are dropped and counted.
DelayCurve sample_delay_curve(CurveKind kind, std::span<const double> grid, double nuq = 0.0,
                              double scale = 1.0);

/// (eps~, s_c tau_c(s_c eps~)) and (eps~, s_q tau_q(s_q eps~)) where s_c and
/// s_q are the minimizing energies of the two delay curves.
std::pair<DelayCurve, DelayCurve> rescaled_curves(std::span<const double> eps_tilde_grid,
                                                  double complex_scale,
                                                  double quaternionic_scale);

struct PhysicalStep {
  double v1_kev = 0;
  double v2_kev = 0;
  double v3_kev = 0;

  double vq_kev() const;
  double v0_kev() const;

  static PhysicalStep pure_complex(double v1) { return {v1, 0, 0}; }
  static PhysicalStep pure_quaternionic(double vq) { return {0, vq, 0}; }
};

/// Delay in units of hbar / KeV, i.e. the number KeV * t0 / hbar.
double physical_delay(double e0_kev, const PhysicalStep& step);

}  // namespace qstep
