#include "qstep/packet.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qstep/errors.hpp"
#include "qstep/quadrature.hpp"
#include "qstep/scatter.hpp"

namespace qstep {

namespace {

constexpr double kTruncation = 4.0;  // Gaussian cut at 4 sigma
// Below this exponent the evanescent j channel e^{k xi} is not accumulated.
constexpr double kEvanescentCut = -60.0;

struct Mode {
  double eps;
  double k;
  double amplitude;  // w_n g_n
  cplx r;
  cplx r_tilde;
};

}  // namespace

double group_velocity(double eps) { return 2.0 * std::sqrt(eps); }

double packet_width(double eps0, double sigma_eps) { return std::sqrt(2.0 * eps0) / sigma_eps; }

PacketConfig make_packet_config(double eps0, double sigma_eps, double nuq, double rho, int n_modes) {
  PacketConfig cfg;
  cfg.eps0 = eps0;
  cfg.sigma_eps = sigma_eps;
  cfg.nuq = nuq;
  cfg.rho = rho;
  cfg.n_modes = n_modes;
  const double width = packet_width(eps0, sigma_eps);
  const double v = group_velocity(eps0);
  const double tau_min = 5.0 * width / v;
  const double tau_max = 3.0 * tau_min;
  cfg.tau_samples = {0.0, 0.5 * tau_min};
  for (int n = 0; n < 8; ++n) cfg.tau_samples.push_back(tau_min + (tau_max - tau_min) * n / 7.0);
  cfg.xi.max = 0.0;
  cfg.xi.min = -(v * tau_max + 8.0 * width);
  cfg.xi.count = static_cast<int>(std::ceil(-cfg.xi.min / 0.5)) + 1;
  return cfg;
}

void validate(const PacketConfig& cfg) {
  std::ostringstream os;
  if (!(cfg.sigma_eps > 0.0)) os << "sigma_eps must be positive; ";
  if (cfg.n_modes < 64) os << "n_modes must be at least 64; ";
  if (cfg.xi.count < 2 || !(cfg.xi.min < cfg.xi.max) || cfg.xi.max > 0.0)
    os << "xi grid must be an increasing range within xi <= 0; ";
  if (cfg.tau_samples.empty()) os << "no tau samples; ";
  if (!os.str().empty()) throw DomainError(os.str());

  const double lo = cfg.eps0 - kTruncation * cfg.sigma_eps;
  const double hi = cfg.eps0 + kTruncation * cfg.sigma_eps;
  const auto span = regime_interval(cfg.eps0, cfg.nuq);
  if (!(lo > span.lower + kBoundaryWidth && hi < std::min(span.upper, 1.0) - kBoundaryWidth)) {
    os << "spectral window [" << lo << ", " << hi << "] leaves the total-reflection regime ("
       << span.lower << ", " << std::min(span.upper, 1.0) << ")";
    throw DomainError(os.str());
  }
  const double tau_max = *std::max_element(cfg.tau_samples.begin(), cfg.tau_samples.end());
  const double reach = group_velocity(hi) * tau_max;
  if (cfg.xi.min > -reach) {
    os << "xi grid starting at " << cfg.xi.min << " does not reach the reflected packet centre (needs " << -reach << ")";
    throw DomainError(os.str());
  }
}

std::vector<CentroidSample> CentroidTrack::late() const {
  std::vector<CentroidSample> out;
  std::copy_if(samples.begin(), samples.end(), std::back_inserter(out),
               [](const CentroidSample& s) { return s.incident_overlap < kLateOverlap; });
  return out;
}

CentroidTrack build_and_evolve(const PacketConfig& cfg) {
  validate(cfg);
  const auto rule = gauss_legendre(cfg.n_modes, cfg.eps0 - kTruncation * cfg.sigma_eps,
                                   cfg.eps0 + kTruncation * cfg.sigma_eps);
  std::vector<Mode> modes;
  modes.reserve(rule.nodes.size());
  CentroidTrack track;
  for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
    const double e = rule.nodes[n];
    const double g = std::exp(-0.5 * std::pow((e - cfg.eps0) / cfg.sigma_eps, 2));
    const auto sol = solve_matching(e, cfg.nuq, cfg.rho);
    const double k = std::sqrt(e);
    modes.push_back({e, k, rule.weights[n] * g, sol.r, sol.r_tilde});
    // Parseval in k = sqrt(eps): d(eps) = 2 k dk.
    track.reference_norm += 2.0 * std::numbers::pi * rule.weights[n] * g * g * std::norm(sol.r) * 2.0 * k;
  }

  const int count = cfg.xi.count;
  const double dxi = cfg.xi.spacing();
  std::vector<cplx> refl(count), jpart(count), inc(count);

  for (const double tau : cfg.tau_samples) {
    std::fill(refl.begin(), refl.end(), cplx{});
    std::fill(jpart.begin(), jpart.end(), cplx{});
    std::fill(inc.begin(), inc.end(), cplx{});
    for (const auto& m : modes) {
      const cplx time = std::polar(m.amplitude, -m.eps * tau);
      const cplx c_ref = m.r * time;
      const cplx c_j = m.r_tilde * time;
      // e^{-i k xi} advanced along the grid by a fixed phasor.
      const cplx step = std::polar(1.0, -m.k * dxi);
      cplx phasor = std::polar(1.0, -m.k * cfg.xi.min);
      for (int i = 0; i < count; ++i) {
        refl[i] += c_ref * phasor;
        inc[i] += time * std::conj(phasor);
        phasor *= step;
      }
      const int first = std::max(0, static_cast<int>(std::ceil((kEvanescentCut / m.k - cfg.xi.min) / dxi)));
      for (int i = first; i < count; ++i) jpart[i] += c_j * std::exp(m.k * (cfg.xi.min + i * dxi));
    }

    // Trapezoid sums over the grid.
    double norm = 0, first_moment = 0, second_moment = 0, inc_norm = 0;
    double far_total = 0, far_j = 0;
    for (int i = 0; i < count; ++i) {
      const double xi = cfg.xi.min + i * dxi;
      const double wt = (i == 0 || i == count - 1) ? 0.5 * dxi : dxi;
      const double dens = std::norm(refl[i]) + std::norm(jpart[i]);
      norm += wt * dens;
      first_moment += wt * xi * dens;
      second_moment += wt * xi * xi * dens;
      inc_norm += wt * std::norm(inc[i]);
      if (xi < -10.0) {
        far_total += wt * std::abs(xi) * dens;
        far_j += wt * std::abs(xi) * std::norm(jpart[i]);
      }
    }
    CentroidSample s{};
    s.tau = tau;
    s.grid_norm = norm;
    s.xi_centroid = first_moment / norm;
    s.width = std::sqrt(std::max(0.0, second_moment / norm - s.xi_centroid * s.xi_centroid));
    s.norm_captured = std::min(1.0, norm / track.reference_norm);
    s.incident_overlap = inc_norm / track.reference_norm;
    s.quaternionic_fraction = far_total > 0.0 ? far_j / far_total : 0.0;
    track.samples.push_back(s);
  }

  for (const auto& s : track.samples) {
    if (s.incident_overlap < kLateOverlap && s.norm_captured < 0.99) {
      std::ostringstream os;
      os << "reflected packet leaks off the grid at tau=" << s.tau << " (captured " << s.norm_captured << ")";
      throw LeakageError(os.str());
    }
  }
  return track;
}

TrajectoryFit fit_reflected_trajectory(const CentroidTrack& track) {
  const auto late = track.late();
  if (late.size() < 5) throw FitError("fewer than five late samples to fit the reflected trajectory");
  const double n = static_cast<double>(late.size());
  double st = 0, sx = 0, stt = 0, stx = 0, width = 0;
  for (const auto& s : late) {
    st += s.tau;
    sx += s.xi_centroid;
    stt += s.tau * s.tau;
    stx += s.tau * s.xi_centroid;
    width += s.width;
  }
  width /= n;
  const double slope = (n * stx - st * sx) / (n * stt - st * st);
  const double intercept = (sx - slope * st) / n;
  double ss = 0;
  for (const auto& s : late) ss += std::pow(s.xi_centroid - (slope * s.tau + intercept), 2);
  const double rms = std::sqrt(ss / n);
  if (rms > 0.01 * width) {
    std::ostringstream os;
    os << "trajectory fit residual " << rms << " exceeds 1% of packet width " << width;
    throw FitError(os.str());
  }
  return {slope, intercept, rms, -intercept / slope, static_cast<int>(late.size())};
}

double extract_delay(const CentroidTrack& track, double eps0) {
  const auto fit = fit_reflected_trajectory(track);
  const double expected = -group_velocity(eps0);
  if (std::abs(fit.slope - expected) > 0.02 * std::abs(expected)) {
    std::ostringstream os;
    os << "reflected packet speed " << -fit.slope << " inconsistent with group velocity " << -expected;
    throw FitError(os.str());
  }
  return fit.delay;
}

}  // namespace qstep
