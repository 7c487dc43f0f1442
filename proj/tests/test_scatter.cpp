#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qstep/errors.hpp"
#include "qstep/phase.hpp"
#include "qstep/scatter.hpp"

namespace {

using namespace qstep;
constexpr cplx I{0.0, 1.0};

std::vector<double> eps_grid() {
  std::vector<double> g;
  for (int n = 1; n <= 19; ++n) g.push_back(0.05 * n);
  return g;
}

const std::vector<double> kNuqs{0.0, 0.25, 0.5, 0.75, 1.0};

bool on_boundary(double eps, double nuq) {
  return std::abs(eps - nuq) < kBoundaryWidth || std::abs(eps - 1.0) < kBoundaryWidth;
}

double distance(const Quaterniond& a, const Quaterniond& b) { return (a - b).norm(); }

TEST(StepPotential, DerivedQuantities) {
  const StepPotential s{3.0, 0.0, 4.0};
  EXPECT_DOUBLE_EQ(s.vq(), 4.0);
  EXPECT_DOUBLE_EQ(s.v0(), 5.0);
  EXPECT_DOUBLE_EQ(s.nuq(), 0.8);
  EXPECT_DOUBLE_EQ(s.rho(), std::numbers::pi / 2);
  EXPECT_EQ((StepPotential{2.0, 0.0, 0.0}.nuq()), 0.0);
  EXPECT_EQ((StepPotential{0.0, 1.0, 1.0}.nuq()), 1.0);
}

TEST(Classify, Regimes) {
  EXPECT_EQ(classify(0.5, 1.0), EnergyRegime::BelowNuq);
  EXPECT_EQ(classify(0.5, 0.0), EnergyRegime::Intermediate);
  EXPECT_EQ(classify(1.5, 0.3), EnergyRegime::Diffusion);
}

TEST(Classify, RejectsBoundariesAndBadInput) {
  EXPECT_THROW(classify(1.0, 0.5), BoundaryEnergy);
  EXPECT_THROW(classify(0.5 + 5e-10, 0.5), BoundaryEnergy);
  EXPECT_THROW(classify(1.0 - 5e-10, 0.2), BoundaryEnergy);
  EXPECT_NO_THROW(classify(0.5 + 2e-9, 0.5));
  EXPECT_THROW(classify(0.0, 0.5), DomainError);
  EXPECT_THROW(classify(-0.1, 0.5), DomainError);
  EXPECT_THROW(classify(0.5, 1.2), DomainError);
  EXPECT_THROW(classify(0.5, -0.1), DomainError);
}

TEST(Alphas, Examples) {
  const auto a = alphas(0.5, 0.0);
  EXPECT_NEAR(std::abs(a.alpha_minus - cplx(0, 0.7071067812)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(a.alpha_plus - cplx(1.2247448714, 0)), 0.0, 1e-10);

  const auto b = alphas(0.6, 1.0);
  EXPECT_NEAR(std::abs(b.alpha_minus - 0.6324555320 * cplx(1, 1)), 0.0, 1e-10);
  EXPECT_NEAR(std::abs(b.alpha_plus - 0.6324555320 * cplx(1, 1)), 0.0, 1e-10);

  const auto c = alphas(2.0, 0.6);
  const cplx sum = c.alpha_minus * c.alpha_minus + c.alpha_plus * c.alpha_plus;
  EXPECT_NEAR(std::abs(sum - 2.0 * std::sqrt(4.0 - 0.36)), 0.0, 1e-12);
  EXPECT_NEAR(sum.real(), 3.8157568056, 1e-9);
}

TEST(Alphas, RegimeShapes) {
  for (double nuq : kNuqs) {
    for (double eps : {0.05, 0.3, 0.6, 0.9, 1.3, 2.5}) {
      if (on_boundary(eps, nuq)) continue;
      const auto [am, ap] = alphas(eps, nuq);
      switch (classify(eps, nuq)) {
        case EnergyRegime::Diffusion:
          EXPECT_EQ(am.imag(), 0.0);
          EXPECT_GT(am.real(), 0.0);
          EXPECT_GT(ap.real(), 0.0);
          break;
        case EnergyRegime::Intermediate:
          EXPECT_EQ(am.real(), 0.0);
          EXPECT_GT(am.imag(), 0.0);
          EXPECT_GT(ap.real(), 0.0);
          EXPECT_EQ(ap.imag(), 0.0);
          break;
        case EnergyRegime::BelowNuq:
          EXPECT_GT(am.imag(), 0.0);
          EXPECT_NEAR(std::abs(ap - I * std::conj(am)), 0.0, 1e-13);
          break;
      }
    }
  }
}

TEST(Alphas, ExplicitFormsSatisfyDefiningIdentities) {
  for (double nuq : kNuqs) {
    for (double eps : {0.05, 0.2, 0.45, 0.7, 0.95, 1.2, 3.0}) {
      if (on_boundary(eps, nuq)) continue;
      const auto [am, ap] = alphas(eps, nuq);
      const cplx s = std::sqrt(cplx(eps * eps - nuq * nuq, 0));
      const double a = std::sqrt(1 - nuq * nuq);
      EXPECT_NEAR(std::abs(am * am - (s - a)), 0.0, 1e-12) << eps << " " << nuq;
      EXPECT_NEAR(std::abs(ap * ap - (s + a)), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(am * am * ap * ap - (eps * eps - 1)), 0.0, 1e-12);
      // Principal-branch evaluation of the single formula agrees here.
      const auto p = alphas_principal(eps, nuq);
      EXPECT_NEAR(std::abs(p.alpha_minus - am), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(p.alpha_plus - ap), 0.0, 1e-12);
    }
  }
}

TEST(BetaGamma, Examples) {
  const auto z = beta_gamma(0.4, 0.0, 1.3);
  EXPECT_EQ(z.beta, cplx(0, 0));
  EXPECT_EQ(z.gamma, cplx(0, 0));

  const auto c = beta_gamma(1.0, 0.6, 0.0);
  EXPECT_NEAR(std::abs(c.beta - I / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.gamma + I / 3.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(c.beta * c.gamma - 1.0 / 9.0), 0.0, 1e-15);
}

TEST(BetaGamma, BelowNuqProductIsUnimodularRotation) {
  for (double nuq : {0.5, 0.75, 1.0}) {
    for (double eps : {0.05, 0.2, 0.4}) {
      if (eps >= nuq) continue;
      const cplx bg = beta_gamma_product(eps, nuq);
      const double omega = std::atan2(std::sqrt(nuq * nuq - eps * eps), eps);
      EXPECT_NEAR(std::abs(bg), 1.0, 1e-12);
      EXPECT_NEAR(std::abs(bg - std::polar(1.0, -2 * omega)), 0.0, 1e-12);
    }
  }
}

TEST(BetaGamma, ProductIsRhoFree) {
  for (double rho : {0.0, 0.7, 2.0, -1.4}) {
    const auto c = beta_gamma(0.3, 0.75, rho);
    EXPECT_NEAR(std::abs(c.beta * c.gamma - beta_gamma_product(0.3, 0.75)), 0.0, 1e-14);
  }
}

TEST(ReflectionClosedForm, ComplexLimit) {
  const cplx r = reflection_closed_form(0.36, 0.0);
  EXPECT_NEAR(r.real(), -0.28, 1e-12);
  EXPECT_NEAR(r.imag(), -0.96, 1e-12);
  for (double eps : eps_grid()) {
    const cplx expected = (std::sqrt(eps) - I * std::sqrt(1 - eps)) / (std::sqrt(eps) + I * std::sqrt(1 - eps));
    EXPECT_NEAR(std::abs(reflection_closed_form(eps, 0.0) - expected), 0.0, 1e-12);
  }
}

TEST(ReflectionClosedForm, UnimodularInTotalReflection) {
  for (double nuq : kNuqs)
    for (double eps : eps_grid()) {
      if (on_boundary(eps, nuq)) continue;
      EXPECT_NEAR(std::abs(reflection_closed_form(eps, nuq)), 1.0, 1e-10) << eps << " " << nuq;
    }
}

TEST(ReflectionClosedForm, PureQuaternionicMatchesMinusPhaseForm) {
  const cplx r = reflection_closed_form(0.5, 1.0);
  const cplx expected = -std::polar(1.0, 2.0 * theta_lt(0.5, 1.0));
  EXPECT_NEAR(std::abs(r - expected), 0.0, 1e-10);
}

TEST(SolveMatching, ComplexLimitHasNoQuaternionicChannel) {
  for (double eps : eps_grid()) {
    const auto s = solve_matching(eps, 0.0, 0.4);
    EXPECT_NEAR(std::abs(s.r_tilde), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(s.t_tilde), 0.0, 1e-12);
  }
}

TEST(SolveMatching, AgreesWithClosedFormAndMatchesAtStep) {
  for (double nuq : kNuqs)
    for (double rho : {0.0, 1.1})
      for (double eps : eps_grid()) {
        if (on_boundary(eps, nuq)) continue;
        const auto s = solve_matching(eps, nuq, rho);
        EXPECT_NEAR(std::abs(s.r - reflection_closed_form(eps, nuq)), 0.0, 1e-10);
        EXPECT_NEAR(std::abs(s.r), 1.0, 1e-10);
        EXPECT_LT(distance(wavefunction_on(Region::Free, s, 0.0), wavefunction_on(Region::Barrier, s, 0.0)), 1e-12);
        EXPECT_LT(distance(wavefunction_derivative_on(Region::Free, s, 0.0),
                           wavefunction_derivative_on(Region::Barrier, s, 0.0)),
                  1e-12);
        // Elimination identity between the two transmitted amplitudes.
        const double k = std::sqrt(eps);
        const cplx tt = -s.gamma * (k - I * s.alpha_minus) / (k + s.alpha_plus) * s.t;
        EXPECT_NEAR(std::abs(s.t_tilde - tt), 0.0, 1e-10);
      }
}

TEST(SolveMatching, ResidualsForPureQuaternionicStep) {
  const auto s = solve_matching(0.5, 1.0, 0.0);
  EXPECT_LT(distance(wavefunction_on(Region::Free, s, 0.0), wavefunction_on(Region::Barrier, s, 0.0)), 1e-12);
  EXPECT_LT(distance(wavefunction_derivative_on(Region::Free, s, 0.0),
                     wavefunction_derivative_on(Region::Barrier, s, 0.0)),
            1e-12);
}

TEST(SolveMatching, RhoOnlyRotatesTheQuaternionicChannel) {
  for (double nuq : {0.25, 0.75, 1.0}) {
    const auto s0 = solve_matching(0.6, nuq, 0.0);
    for (double rho : {1.0, 2.0}) {
      const auto s = solve_matching(0.6, nuq, rho);
      EXPECT_NEAR(std::abs(s.r - s0.r), 0.0, 1e-12);
      EXPECT_NEAR(std::abs(s.r_tilde), std::abs(s0.r_tilde), 1e-12);
    }
  }
}

TEST(SolveMatching, DiffusionAmplitudesSatisfyMatching) {
  const auto s = solve_matching(1.5, 0.3, 0.2);
  EXPECT_EQ(s.regime, EnergyRegime::Diffusion);
  EXPECT_LT(distance(wavefunction_on(Region::Free, s, 0.0), wavefunction_on(Region::Barrier, s, 0.0)), 1e-12);
  EXPECT_NEAR(std::abs(s.r - reflection_closed_form(1.5, 0.3)), 0.0, 1e-10);
}

TEST(SolveMatching, DegenerateModesAreSingular) {
  // At eps = nuq the two barrier modes coincide: equal exponents and
  // parallel spinors.
  const double nuq = 0.6;
  const double a = std::sqrt(std::sqrt(1 - nuq * nuq));
  const ModeExponents modes{I * a, cplx(a, 0)};
  const Couplings couplings{I, -I};
  EXPECT_THROW(solve_matching(nuq, modes, couplings), SingularSystem);
}

TEST(Wavefunction, ComplexLimitPlaneWaves) {
  const double eps = 0.4;
  const auto s = solve_matching(eps, 0.0, 0.0);
  const double xi = -std::numbers::pi / std::sqrt(eps);
  const auto q = wavefunction_at(s, xi);
  const auto expected = Quaterniond::from_complex(std::polar(1.0, -std::numbers::pi) + s.r * std::polar(1.0, std::numbers::pi));
  EXPECT_LT(distance(q, expected), 1e-12);
  EXPECT_NEAR(distance(q, Quaterniond::from_complex(-1.0 - s.r)), 0.0, 1e-12);
}

TEST(Wavefunction, EvanescentInsideBarrier) {
  for (double nuq : {0.0, 0.5, 1.0}) {
    const auto s = solve_matching(0.5 + (nuq == 0.5 ? 0.1 : 0.0), nuq, 0.3);
    const double n20 = wavefunction_at(s, 20.0).norm();
    EXPECT_LT(n20, 1e-4);
    EXPECT_LT(wavefunction_at(s, 40.0).norm(), n20);
  }
}

}  // namespace
