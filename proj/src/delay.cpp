#include "qstep/delay.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qstep/errors.hpp"
#include "qstep/phase.hpp"
#include "qstep/scatter.hpp"

namespace qstep {

namespace {

void require_open_unit(double eps, const char* what) {
  if (!(eps > 0.0 && eps < 1.0)) {
    std::ostringstream os;
    os << what << " defined only for 0 < eps < 1, got eps=" << eps;
    throw DomainError(os.str());
  }
  if (1.0 - eps < kBoundaryWidth) {
    std::ostringstream os;
    os << "boundary energy: " << what << " diverges at eps=" << eps;
    throw BoundaryEnergy(os.str());
  }
}

// Central difference of a phase function with h and h/2, combined by one
// Richardson step. Phases are aligned to theta(eps) before differencing.
template <typename Phase>
double twice_derivative(double eps, double nuq, Phase&& phase) {
  require_open_unit(eps, "delay");
  const auto span = regime_interval(eps, nuq);
  const double room = std::min(eps - span.lower, span.upper - eps);
  const double h = std::max(1e-6, 1e-4 * room);
  for (double e : {eps - h, eps + h}) {
    if (e <= span.lower + kBoundaryWidth || e >= span.upper - kBoundaryWidth) {
      std::ostringstream os;
      os << "boundary energy: difference stencil at eps=" << eps << " crosses a regime boundary";
      throw BoundaryEnergy(os.str());
    }
  }
  const double centre = phase(eps);
  auto central = [&](double step) {
    const double up = align_branch(phase(eps + step), centre);
    const double down = align_branch(phase(eps - step), centre);
    return (up - down) / (2.0 * step);
  };
  const double coarse = central(h);
  const double fine = central(0.5 * h);
  if (std::abs(coarse - fine) > 1e-7 * std::max(1.0, std::abs(fine))) {
    std::ostringstream os;
    os << "phase derivative unstable at eps=" << eps << ", nuq=" << nuq;
    throw Error("derivative_unstable", os.str(), true);
  }
  return 2.0 * (4.0 * fine - coarse) / 3.0;
}

}  // namespace

double tau_c(double eps) {
  require_open_unit(eps, "tau_c");
  return 1.0 / std::sqrt(eps * (1.0 - eps));
}

double tau_q(double eps) {
  require_open_unit(eps, "tau_q");
  const double u = 1.0 - eps * eps;
  const double r2e = std::sqrt(2.0 * eps);
  const double u14 = std::pow(u, 0.25);
  const double u12 = std::sqrt(u);
  const double u34 = u12 * u14;
  const double num = 2.0 + 1.0 / (r2e * u34) + 2.0 * eps / u12 + 2.0 * r2e / u14;
  const double den = eps + r2e * u14 + u12;
  return num / den;
}

double tau_general(double eps, double nuq) {
  return twice_derivative(eps, nuq, [nuq](double e) { return principal_phase_of_r(e, nuq).theta; });
}

double tau_general_closed_phase(double eps, double nuq) {
  return twice_derivative(eps, nuq, [nuq](double e) {
    return classify(e, nuq) == EnergyRegime::BelowNuq ? theta_lt(e, nuq) : theta_gt(e, nuq);
  });
}

double tau_reflection(double eps, double nuq) {
  if (nuq == 0.0) return tau_c(eps);
  if (nuq == 1.0) return tau_q(eps);
  return tau_general(eps, nuq);
}

const char* to_string(CurveKind k) {
  switch (k) {
    case CurveKind::Complex: return "complex";
    case CurveKind::Quaternionic: return "quaternionic";
    case CurveKind::GeneralNuq: return "general";
    case CurveKind::RescaledComplex: return "rescaled_complex";
    case CurveKind::RescaledQuaternionic: return "rescaled_quaternionic";
  }
  return "?";
}

double delay_on_curve(CurveKind kind, double eps, double nuq, double scale) {
  switch (kind) {
    case CurveKind::Complex: return tau_c(eps);
    case CurveKind::Quaternionic: return tau_q(eps);
    case CurveKind::GeneralNuq: return tau_reflection(eps, nuq);
    case CurveKind::RescaledComplex: return scale * tau_c(scale * eps);
    case CurveKind::RescaledQuaternionic: return scale * tau_q(scale * eps);
  }
  return 0.0;
}

DelayCurve sample_delay_curve(CurveKind kind, std::span<const double> grid, double nuq, double scale) {
  DelayCurve curve;
  curve.kind = kind;
  curve.nuq = nuq;
  curve.scale = scale;
  curve.samples.reserve(grid.size());
  for (double e : grid) {
    const bool increasing = curve.samples.empty() || e > curve.samples.back().eps;
    if (!increasing) {
      ++curve.dropped;
      continue;
    }
    try {
      const double tau = delay_on_curve(kind, e, nuq, scale);
      if (std::isfinite(tau) && tau > 0.0) {
        curve.samples.push_back({e, tau});
        continue;
      }
    } catch (const Error&) {
    }
    ++curve.dropped;
  }
  return curve;
}

std::pair<DelayCurve, DelayCurve> rescaled_curves(std::span<const double> grid, double complex_scale,
                                                  double quaternionic_scale) {
  return {sample_delay_curve(CurveKind::RescaledComplex, grid, 0.0, complex_scale),
          sample_delay_curve(CurveKind::RescaledQuaternionic, grid, 1.0, quaternionic_scale)};
}

double PhysicalStep::vq_kev() const { return std::hypot(v2_kev, v3_kev); }
double PhysicalStep::v0_kev() const { return std::hypot(v1_kev, vq_kev()); }

double physical_delay(double e0_kev, const PhysicalStep& step) {
  const double v0 = step.v0_kev();
  if (!(v0 > 0.0) || !std::isfinite(v0)) throw DomainError("potential height must be positive and finite");
  if (!(e0_kev > 0.0) || e0_kev >= v0) {
    std::ostringstream os;
    os << "incoming energy " << e0_kev << " KeV must lie in (0, V0=" << v0 << " KeV)";
    throw DomainError(os.str());
  }
  const double nuq = step.vq_kev() / v0;
  return tau_reflection(e0_kev / v0, nuq) / v0;
}

}  // namespace qstep
