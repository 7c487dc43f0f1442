#pragma once

// Stationary states of a particle incident from the left on the step
//   V(x) = 0 for x < 0,   i V1 + j V2 + k V3 for x > 0,
// in adimensional form: xi = sqrt(2 m V0) x / hbar, eps = E / V0,
// nuq = Vq / V0 with Vq = sqrt(V2^2 + V3^2), V0 = sqrt(V1^2 + Vq^2),
// rho = atan2(V3, V2).
//
// Region I  (xi < 0): phi = e^{i k xi} + R e^{-i k xi} + j Rt e^{k xi},  k = sqrt(eps)
// Region II (xi > 0): phi = (1 + j gamma) T e^{i a- xi} + (beta + j) Tt e^{-a+ xi}

#include <complex>

#include "qstep/quaternion.hpp"

namespace qstep {

using cplx = std::complex<double>;

/// Half-width of the excluded band around eps = nuq and eps = 1.
inline constexpr double kBoundaryWidth = 1e-9;

struct StepPotential {
  double v1 = 0;
  double v2 = 0;
  double v3 = 0;

  double vq() const;
  double v0() const;
  double nuq() const;
  double rho() const;
};

enum class EnergyRegime {
  BelowNuq,      // 0 < eps < nuq
  Intermediate,  // nuq < eps < 1
  Diffusion,     // eps > 1
};

const char* to_string(EnergyRegime r);

EnergyRegime classify(double eps, double nuq);

/// Open interval (lower, upper) of the regime containing eps; upper is +inf
/// for Diffusion.
struct RegimeInterval {
  EnergyRegime regime;
  double lower;
  double upper;
};
RegimeInterval regime_interval(double eps, double nuq);

struct ModeExponents {
  cplx alpha_minus;
  cplx alpha_plus;
};

/// Per-regime explicit forms: both real in Diffusion; alpha_minus on the
/// positive imaginary axis in Intermediate; alpha_minus in the open upper
/// half-plane with alpha_plus = i conj(alpha_minus) below nuq.
ModeExponents alphas(double eps, double nuq);

/// sqrt(sqrt(eps^2 - nuq^2) -+ sqrt(1 - nuq^2)) with principal branches, no
/// regime logic. Only used to cross-check alphas().
ModeExponents alphas_principal(double eps, double nuq);

struct Couplings {
  cplx beta;
  cplx gamma;
};

Couplings beta_gamma(double eps, double nuq, double rho);

/// beta * gamma = nuq^2 / (eps + sqrt(eps^2 - nuq^2))^2; independent of rho.
cplx beta_gamma_product(double eps, double nuq);

/// Closed-form reflection amplitude obtained by eliminating Tt and T.
cplx reflection_closed_form(double eps, double nuq);

struct ScatteringSolution {
  double eps = 0;
  double nuq = 0;
  double rho = 0;
  EnergyRegime regime = EnergyRegime::Intermediate;
  cplx alpha_minus, alpha_plus, beta, gamma;
  cplx r, r_tilde, t, t_tilde;
};

/// Solves continuity of phi and phi' at xi = 0 as a 4x4 complex system in
/// (R, Rt, T, Tt). Throws SingularSystem when the reciprocal condition
/// estimate drops below 1e-12.
ScatteringSolution solve_matching(double eps, double nuq, double rho);

/// Same solve with caller-supplied mode exponents and couplings (no regime
/// classification); lets tests probe degenerate or wrong-branch inputs.
ScatteringSolution solve_matching(double eps, const ModeExponents& modes, const Couplings& couplings);

enum class Region { Free, Barrier };

/// Evaluates the stationary wavefunction on an explicit side of the step.
Quaterniond wavefunction_on(Region side, const ScatteringSolution& sol, double xi);
Quaterniond wavefunction_derivative_on(Region side, const ScatteringSolution& sol, double xi);

/// Region chosen by the sign of xi (xi < 0 is the free side).
Quaterniond wavefunction_at(const ScatteringSolution& sol, double xi);

}  // namespace qstep
