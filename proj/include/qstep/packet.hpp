#pragma once

// Gaussian superposition of stationary states used as an independent check
// of the stationary-phase delay. Each mode carries its exact time factor,
// applied from the right: phi(xi, tau) = sum_n w_n g_n phi_n(xi) e^{-i eps_n tau}.
// Only the free side (xi <= 0) is sampled.

#include <vector>

namespace qstep {

struct XiGrid {
  double min = -1000;
  double max = 0;
  int count = 2001;

  double spacing() const { return (max - min) / (count - 1); }
};

struct PacketConfig {
  double eps0 = 0.5;
  double sigma_eps = 0.02;  // standard deviation of the spectral amplitude
  double nuq = 0;
  double rho = 0;
  int n_modes = 256;
  XiGrid xi;
  std::vector<double> tau_samples;
};

/// Incident group velocity d(xi)/d(tau) = 2 sqrt(eps) of e^{i(sqrt(eps) xi - eps tau)}.
double group_velocity(double eps);

/// Intensity standard deviation in xi of a packet with spectral amplitude
/// exp(-(eps - eps0)^2 / (2 sigma^2)): sqrt(2 eps0) / sigma.
double packet_width(double eps0, double sigma_eps);

/// Grid and sampling times sized from the packet width: tau = 0, one early
/// sample, then eight samples on [tau_min, 3 tau_min] where tau_min puts the
/// incident centre five widths past the step.
PacketConfig make_packet_config(double eps0, double sigma_eps, double nuq, double rho = 0.0,
                                int n_modes = 256);

/// Throws DomainError when the configuration violates its invariants.
void validate(const PacketConfig& cfg);

struct CentroidSample {
  double tau;
  double xi_centroid;       // of |phi_ref|^2 over the grid
  double norm_captured;     // grid norm / spectral (Parseval) norm, clamped to 1
  double width;             // intensity standard deviation
  double incident_overlap;  // incident norm on the grid / spectral norm
  double quaternionic_fraction;  // share of the j channel in the xi < -10 centroid integral
  double grid_norm;
};

struct CentroidTrack {
  std::vector<CentroidSample> samples;
  double reference_norm = 0;  // 2 pi sum w g^2 |R|^2 2 sqrt(eps)

  /// Samples whose incident overlap is below 1e-3.
  std::vector<CentroidSample> late() const;
};

inline constexpr double kLateOverlap = 1e-3;

/// Throws LeakageError if a late sample captures less than 99% of the norm.
CentroidTrack build_and_evolve(const PacketConfig& cfg);

struct TrajectoryFit {
  double slope;
  double intercept;
  double residual_rms;
  double delay;  // -intercept / slope
  int samples_used;
};

/// Least-squares xi = slope * tau + intercept over late samples. The
/// reflected centre obeys xi = -v (tau - tau0), so tau0 = -intercept / slope.
/// Throws FitError with fewer than five late samples or when the residual
/// RMS exceeds 1% of the mean packet width.
TrajectoryFit fit_reflected_trajectory(const CentroidTrack& track);

double extract_delay(const CentroidTrack& track, double eps0);

}  // namespace qstep
