#include "qstep/phase.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qstep/errors.hpp"
#include "qstep/scatter.hpp"

namespace qstep {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};

// Largest eps step taken while continuing the phase from the regime anchor.
constexpr double kContinuationStep = 2e-3;

void require_total_reflection(double eps) {
  if (!(eps > 0.0 && eps < 1.0))
    throw DomainError("phase defined only for 0 < eps < 1, got eps=" + std::to_string(eps));
}

}  // namespace

double PhaseValue::unwrapped() const { return theta + branch_offset * kPi; }

double theta_gt(double eps, double nuq) {
  if (classify(eps, nuq) != EnergyRegime::Intermediate)
    throw DomainError("theta_gt requires nuq < eps < 1");
  const auto [am, ap] = alphas(eps, nuq);
  const cplx bg = beta_gamma_product(eps, nuq);
  const double k = std::sqrt(eps);
  // Both expressions are real in this regime (bg real, am imaginary, ap real).
  const cplx num = bg * ap * (k - I * am) + I * am * (k + ap);
  const cplx den = k * (k + ap) - bg * k * (k - I * am);
  return std::atan2(num.real(), den.real());
}

double theta_lt(double eps, double nuq) {
  if (classify(eps, nuq) != EnergyRegime::BelowNuq)
    throw DomainError("theta_lt requires 0 < eps < nuq");
  const cplx am = alphas(eps, nuq).alpha_minus;
  const double omega = std::atan2(std::sqrt(nuq * nuq - eps * eps), eps);
  const cplx rot = std::polar(1.0, omega);
  const double k = std::sqrt(eps);
  const double num = eps * std::sin(omega) + k * (I * std::conj(am) * rot).imag();
  const double den = std::norm(am) * std::sin(omega) - k * (am * rot).real();
  return std::atan2(num, den);
}

double theta_c(double eps) {
  require_total_reflection(eps);
  return -std::atan2(std::sqrt(1.0 - eps), std::sqrt(eps));
}

double theta_q(double eps) {
  require_total_reflection(eps);
  const double alpha = std::pow(1.0 - eps * eps, 0.25) / std::numbers::sqrt2;
  const double a2 = alpha * alpha;
  const double k = std::sqrt(eps);
  const double e32 = eps * k;
  return std::atan2(2.0 * alpha * eps + 2.0 * a2 * k + e32, 4.0 * a2 * alpha + 2.0 * a2 * k - e32);
}

double align_branch(double theta, double reference) {
  return theta - kPi * std::round((theta - reference) / kPi);
}

PhaseValue principal_phase_of_r(double eps, double nuq) {
  require_total_reflection(eps);
  const auto regime = classify(eps, nuq);
  const bool minus = regime == EnergyRegime::BelowNuq;
  // Split R into numerator and denominator so neither arg goes through the
  // ratio; the difference of the two args is 2 theta (+ pi below nuq).
  const auto [am, ap] = alphas(eps, nuq);
  const cplx bg = beta_gamma_product(eps, nuq);
  const double k = std::sqrt(eps);
  const cplx num = (k + ap) * (k - am) - bg * (k - I * am) * (k - I * ap);
  const cplx den = (k + ap) * (k + am) - bg * (k - I * am) * (k + I * ap);
  double two_theta = std::arg(num) - std::arg(den) - (minus ? kPi : 0.0);
  // Fold into (-pi, pi] so theta is principal.
  two_theta = std::remainder(two_theta, 2.0 * kPi);
  if (two_theta <= -kPi) two_theta += 2.0 * kPi;
  return {0.5 * two_theta, 0, minus};
}

PhaseValue phase_of_r(double eps, double nuq) {
  PhaseValue out = principal_phase_of_r(eps, nuq);
  const auto span = regime_interval(eps, nuq);
  const double anchor = 0.5 * (span.lower + std::min(span.upper, 1.0));
  const int steps = static_cast<int>(std::ceil(std::abs(eps - anchor) / kContinuationStep));
  double running = principal_phase_of_r(anchor, nuq).theta;
  for (int n = 1; n < steps; ++n) {
    const double e = anchor + (eps - anchor) * n / steps;
    running = align_branch(principal_phase_of_r(e, nuq).theta, running);
  }
  const double continued = align_branch(out.theta, running);
  out.branch_offset = static_cast<int>(std::lround((continued - out.theta) / kPi));
  return out;
}

std::vector<PhaseValue> unwrap_phase_sweep(std::span<const double> eps_grid, double nuq) {
  std::vector<PhaseValue> out;
  out.reserve(eps_grid.size());
  if (eps_grid.empty()) return out;
  out.push_back(phase_of_r(eps_grid.front(), nuq));
  const auto regime = classify(eps_grid.front(), nuq);
  for (std::size_t n = 1; n < eps_grid.size(); ++n) {
    if (classify(eps_grid[n], nuq) != regime)
      throw BoundaryEnergy("phase sweep crosses a regime boundary");
    PhaseValue p = principal_phase_of_r(eps_grid[n], nuq);
    const double continued = align_branch(p.theta, out.back().unwrapped());
    p.branch_offset = static_cast<int>(std::lround((continued - p.theta) / kPi));
    out.push_back(p);
  }
  return out;
}

}  // namespace qstep
