#include <gtest/gtest.h>

#include <cstring>
#include <random>

#include "qstep/quaternion.hpp"

namespace {

using qstep::ImaginaryUnit;
using qstep::Quaterniond;
using qstep::SymplecticPaird;
using cplx = std::complex<double>;

const Quaterniond one = Quaterniond::real(1.0);
const Quaterniond qi = Quaterniond::unit_i();
const Quaterniond qj = Quaterniond::unit_j();
const Quaterniond qk = Quaterniond::unit_k();

Quaterniond random_quaternion(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  return {d(rng), d(rng), d(rng), d(rng)};
}

cplx random_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> d(-3.0, 3.0);
  return {d(rng), d(rng)};
}

void expect_near(const Quaterniond& a, const Quaterniond& b, double tol) {
  EXPECT_NEAR(a.w, b.w, tol);
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
}

TEST(Quaternion, DefiningRelationsAreExact) {
  EXPECT_EQ(qi * qi, -one);
  EXPECT_EQ(qj * qj, -one);
  EXPECT_EQ(qk * qk, -one);
  EXPECT_EQ(qi * qj * qk, -one);
  EXPECT_EQ(qi * qj, qk);
  EXPECT_EQ(qj * qi, -qk);
}

TEST(Quaternion, ExpandedProduct) {
  EXPECT_EQ((one + qi) * (one + qj), Quaterniond(1, 1, 1, 1));
}

TEST(Quaternion, NormIsMultiplicative) {
  std::mt19937_64 rng(20240611);
  for (int n = 0; n < 10000; ++n) {
    const auto p = random_quaternion(rng);
    const auto q = random_quaternion(rng);
    const double lhs = (p * q).norm();
    const double rhs = p.norm() * q.norm();
    ASSERT_LE(std::abs(lhs - rhs), 1e-13 * rhs);
  }
}

TEST(Quaternion, ConjugateTimesSelfIsSquaredNorm) {
  std::mt19937_64 rng(7);
  for (int n = 0; n < 100; ++n) {
    const auto q = random_quaternion(rng);
    expect_near(q.conjugate() * q, Quaterniond::real(q.squared_norm()), 1e-12);
  }
  EXPECT_EQ(Quaterniond().squared_norm(), 0.0);
}

TEST(Quaternion, LeftAndRightMultiplicationDiffer) {
  EXPECT_EQ(qstep::left_mul_unit(ImaginaryUnit::I, qj), qk);
  EXPECT_EQ(qstep::right_mul_complex(qj, cplx(0, 1)), -qk);
  EXPECT_EQ(qstep::left_mul_unit(ImaginaryUnit::I, one), qi);
  EXPECT_EQ(qstep::right_mul_complex(one, cplx(0, 1)), qi);
}

TEST(Quaternion, UnitAndComplexActionsMatchHamiltonProduct) {
  std::mt19937_64 rng(11);
  for (int n = 0; n < 200; ++n) {
    const auto q = random_quaternion(rng);
    expect_near(qstep::left_mul_unit(ImaginaryUnit::I, q), qi * q, 1e-15);
    expect_near(qstep::left_mul_unit(ImaginaryUnit::J, q), qj * q, 1e-15);
    expect_near(qstep::left_mul_unit(ImaginaryUnit::K, q), qk * q, 1e-15);
    const cplx c = std::polar(1.0, std::uniform_real_distribution<double>(-3, 3)(rng));
    expect_near(qstep::right_mul_complex(q, c), q * Quaterniond::from_complex(c), 1e-14);
  }
}

TEST(Symplectic, Examples) {
  EXPECT_EQ(qstep::symplectic_decompose(qj), (SymplecticPaird{cplx(0, 0), cplx(1, 0)}));
  EXPECT_EQ(qstep::symplectic_decompose(Quaterniond(1, 1, 1, 1)), (SymplecticPaird{cplx(1, 1), cplx(1, -1)}));
}

TEST(Symplectic, RoundTripIsBitExact) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 1000; ++n) {
    const auto q = random_quaternion(rng);
    const auto back = qstep::symplectic_compose(qstep::symplectic_decompose(q));
    ASSERT_EQ(std::memcmp(&q, &back, sizeof q), 0);
    const SymplecticPaird p{random_complex(rng), random_complex(rng)};
    const auto again = qstep::symplectic_decompose(qstep::symplectic_compose(p));
    ASSERT_EQ(std::memcmp(&p, &again, sizeof p), 0);
  }
  const Quaterniond signed_zero(0.0, -0.0, 0.0, -0.0);
  const auto back = qstep::symplectic_compose(qstep::symplectic_decompose(signed_zero));
  EXPECT_EQ(std::memcmp(&signed_zero, &back, sizeof back), 0);
}

TEST(Symplectic, JAnticommutesWithComplex) {
  std::mt19937_64 rng(5);
  for (int n = 0; n < 200; ++n) {
    const cplx z = random_complex(rng);
    expect_near(qj * Quaterniond::from_complex(z), Quaterniond::from_complex(std::conj(z)) * qj, 1e-15);
  }
}

TEST(Symplectic, ComposeIsComplexPartPlusJTimesSecond) {
  std::mt19937_64 rng(9);
  for (int n = 0; n < 200; ++n) {
    const SymplecticPaird p{random_complex(rng), random_complex(rng)};
    const auto expected = Quaterniond::from_complex(p.z1) + qj * Quaterniond::from_complex(p.z2);
    expect_near(qstep::symplectic_compose(p), expected, 1e-15);
  }
}

TEST(Symplectic, ComplexActionsOnPairs) {
  std::mt19937_64 rng(13);
  for (int n = 0; n < 200; ++n) {
    const auto q = random_quaternion(rng);
    const cplx c = random_complex(rng);
    const auto p = qstep::symplectic_decompose(q);
    const auto cq = Quaterniond::from_complex(c);
    expect_near(qstep::symplectic_compose(qstep::right_mul(p, c)), q * cq, 1e-13);
    expect_near(qstep::symplectic_compose(qstep::left_mul(c, p)), cq * q, 1e-13);
  }
}

}  // namespace
