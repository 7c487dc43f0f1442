#include "qstep/scatter.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <sstream>

#include "qstep/errors.hpp"

namespace qstep {

namespace {

constexpr cplx I{0.0, 1.0};

std::string describe(double eps, double nuq) {
  std::ostringstream os;
  os.precision(17);
  os << "eps=" << eps << ", nuq=" << nuq;
  return os.str();
}

}  // namespace

double StepPotential::vq() const { return std::hypot(v2, v3); }
double StepPotential::v0() const { return std::hypot(v1, vq()); }
double StepPotential::nuq() const { return vq() / v0(); }
double StepPotential::rho() const { return std::atan2(v3, v2); }

const char* to_string(EnergyRegime r) {
  switch (r) {
    case EnergyRegime::BelowNuq: return "below_nuq";
    case EnergyRegime::Intermediate: return "intermediate";
    case EnergyRegime::Diffusion: return "diffusion";
  }
  return "?";
}

EnergyRegime classify(double eps, double nuq) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw DomainError("energy must be positive and finite: " + describe(eps, nuq));
  if (!(nuq >= 0.0 && nuq <= 1.0))
    throw DomainError("nuq must lie in [0, 1]: " + describe(eps, nuq));
  if (std::abs(eps - nuq) < kBoundaryWidth || std::abs(eps - 1.0) < kBoundaryWidth)
    throw BoundaryEnergy("boundary energy: " + describe(eps, nuq) + " sits on a regime boundary");
  if (eps > 1.0) return EnergyRegime::Diffusion;
  return eps < nuq ? EnergyRegime::BelowNuq : EnergyRegime::Intermediate;
}

RegimeInterval regime_interval(double eps, double nuq) {
  switch (const auto r = classify(eps, nuq)) {
    case EnergyRegime::BelowNuq: return {r, 0.0, nuq};
    case EnergyRegime::Intermediate: return {r, nuq, 1.0};
    case EnergyRegime::Diffusion: return {r, 1.0, std::numeric_limits<double>::infinity()};
  }
  return {EnergyRegime::Intermediate, nuq, 1.0};
}

ModeExponents alphas(double eps, double nuq) {
  const double a = std::sqrt(1.0 - nuq * nuq);
  switch (classify(eps, nuq)) {
    case EnergyRegime::Diffusion: {
      const double s = std::sqrt(eps * eps - nuq * nuq);
      return {std::sqrt(s - a), std::sqrt(s + a)};
    }
    case EnergyRegime::Intermediate: {
      const double s = std::sqrt(eps * eps - nuq * nuq);
      return {I * std::sqrt(a - s), std::sqrt(s + a)};
    }
    case EnergyRegime::BelowNuq: {
      const double half_angle = 0.5 * std::atan2(std::sqrt(nuq * nuq - eps * eps), a);
      const cplx am = I * std::pow(1.0 - eps * eps, 0.25) * std::polar(1.0, -half_angle);
      return {am, I * std::conj(am)};
    }
  }
  return {};
}

ModeExponents alphas_principal(double eps, double nuq) {
  const cplx s = std::sqrt(cplx(eps * eps - nuq * nuq, 0.0));
  const cplx a = std::sqrt(cplx(1.0 - nuq * nuq, 0.0));
  return {std::sqrt(s - a), std::sqrt(s + a)};
}

Couplings beta_gamma(double eps, double nuq, double rho) {
  const cplx d = eps + std::sqrt(cplx(eps * eps - nuq * nuq, 0.0));
  return {I * nuq * std::polar(1.0, rho) / d, -I * nuq * std::polar(1.0, -rho) / d};
}

cplx beta_gamma_product(double eps, double nuq) {
  const cplx d = eps + std::sqrt(cplx(eps * eps - nuq * nuq, 0.0));
  return nuq * nuq / (d * d);
}

cplx reflection_closed_form(double eps, double nuq) {
  const auto [am, ap] = alphas(eps, nuq);
  const cplx bg = beta_gamma_product(eps, nuq);
  const double k = std::sqrt(eps);
  const cplx num = (k + ap) * (k - am) - bg * (k - I * am) * (k - I * ap);
  const cplx den = (k + ap) * (k + am) - bg * (k - I * am) * (k + I * ap);
  return num / den;
}

ScatteringSolution solve_matching(double eps, const ModeExponents& modes, const Couplings& couplings) {
  ScatteringSolution sol;
  sol.eps = eps;
  const auto [am, ap] = modes;
  const auto [beta, gamma] = couplings;
  sol.alpha_minus = am;
  sol.alpha_plus = ap;
  sol.beta = beta;
  sol.gamma = gamma;

  const double k = std::sqrt(eps);
  // Rows: complex and j parts of phi_I(0) = phi_II(0), then of phi_I'(0) = phi_II'(0).
  Eigen::Matrix4cd m;
  m << -1.0, 0.0, 1.0, beta,
       0.0, -1.0, gamma, 1.0,
       I * k, 0.0, I * am, -ap * beta,
       0.0, -k, I * am * gamma, -ap;
  Eigen::Vector4cd rhs(1.0, 0.0, I * k, 0.0);

  const Eigen::PartialPivLU<Eigen::Matrix4cd> lu(m);
  const double rcond = lu.rcond();
  if (!(rcond > 1e-12)) {
    std::ostringstream os;
    os << "matching system is singular (rcond=" << rcond << ") at eps=" << eps;
    throw SingularSystem(os.str());
  }
  const Eigen::Vector4cd x = lu.solve(rhs);
  sol.r = x(0);
  sol.r_tilde = x(1);
  sol.t = x(2);
  sol.t_tilde = x(3);
  return sol;
}

ScatteringSolution solve_matching(double eps, double nuq, double rho) {
  const auto regime = classify(eps, nuq);
  auto sol = solve_matching(eps, alphas(eps, nuq), beta_gamma(eps, nuq, rho));
  sol.nuq = nuq;
  sol.rho = rho;
  sol.regime = regime;
  return sol;
}

Quaterniond wavefunction_on(Region side, const ScatteringSolution& s, double xi) {
  SymplecticPaird p;
  if (side == Region::Free) {
    const double k = std::sqrt(s.eps);
    const cplx in = std::polar(1.0, k * xi);
    p.z1 = in + s.r * std::conj(in);
    p.z2 = s.r_tilde * std::exp(k * xi);
  } else {
    const cplx osc = s.t * std::exp(I * s.alpha_minus * xi);
    const cplx evan = s.t_tilde * std::exp(-s.alpha_plus * xi);
    p.z1 = osc + s.beta * evan;
    p.z2 = s.gamma * osc + evan;
  }
  return symplectic_compose(p);
}

Quaterniond wavefunction_derivative_on(Region side, const ScatteringSolution& s, double xi) {
  SymplecticPaird p;
  if (side == Region::Free) {
    const double k = std::sqrt(s.eps);
    const cplx in = std::polar(1.0, k * xi);
    p.z1 = I * k * (in - s.r * std::conj(in));
    p.z2 = k * s.r_tilde * std::exp(k * xi);
  } else {
    const cplx osc = I * s.alpha_minus * s.t * std::exp(I * s.alpha_minus * xi);
    const cplx evan = -s.alpha_plus * s.t_tilde * std::exp(-s.alpha_plus * xi);
    p.z1 = osc + s.beta * evan;
    p.z2 = s.gamma * osc + evan;
  }
  return symplectic_compose(p);
}

Quaterniond wavefunction_at(const ScatteringSolution& sol, double xi) {
  return wavefunction_on(xi < 0.0 ? Region::Free : Region::Barrier, sol, xi);
}

}  // namespace qstep
