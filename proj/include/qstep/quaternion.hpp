#pragma once

// Real quaternions q = w + x i + y j + z k and their symplectic form
// q = z1 + j z2 with complex z1, z2.
//
// Sign convention used throughout the library:
//   z1 = w + x i,   z2 = y - z i
// so that j (y - z i) = y j + z k under j i = -k.
//
// Complex numbers are embedded as the (1, i) plane. Because i and j
// anticommute, j z = conj(z) j for every complex z; that single rule is
// what makes left and right multiplication differ.

#include <cmath>
#include <complex>

namespace qstep {

template <typename Scalar>
struct Quaternion {
  Scalar w{0}, x{0}, y{0}, z{0};

  constexpr Quaternion() = default;
  constexpr Quaternion(Scalar w_, Scalar x_, Scalar y_, Scalar z_) : w{w_}, x{x_}, y{y_}, z{z_} {}

  static constexpr Quaternion real(Scalar s) { return {s, 0, 0, 0}; }
  static constexpr Quaternion unit_i() { return {0, 1, 0, 0}; }
  static constexpr Quaternion unit_j() { return {0, 0, 1, 0}; }
  static constexpr Quaternion unit_k() { return {0, 0, 0, 1}; }
  static constexpr Quaternion from_complex(const std::complex<Scalar>& c) {
    return {c.real(), c.imag(), 0, 0};
  }

  constexpr bool operator==(const Quaternion&) const = default;

  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion& operator+=(const Quaternion& o) {
    w += o.w; x += o.x; y += o.y; z += o.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    w -= o.w; x -= o.x; y -= o.y; z -= o.z;
    return *this;
  }

  constexpr Quaternion conjugate() const { return {w, -x, -y, -z}; }
  constexpr Scalar squared_norm() const { return w * w + x * x + y * y + z * z; }
  Scalar norm() const { return std::sqrt(squared_norm()); }
};

template <typename Scalar>
constexpr Quaternion<Scalar> operator+(Quaternion<Scalar> a, const Quaternion<Scalar>& b) {
  return a += b;
}

template <typename Scalar>
constexpr Quaternion<Scalar> operator-(Quaternion<Scalar> a, const Quaternion<Scalar>& b) {
  return a -= b;
}

template <typename Scalar>
constexpr Quaternion<Scalar> operator*(Scalar s, const Quaternion<Scalar>& q) {
  return {s * q.w, s * q.x, s * q.y, s * q.z};
}

/// Hamilton product. Non-commutative.
template <typename Scalar>
constexpr Quaternion<Scalar> operator*(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
          p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
          p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
          p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
}

template <typename Scalar>
constexpr Quaternion<Scalar> qmul(const Quaternion<Scalar>& p, const Quaternion<Scalar>& q) {
  return p * q;
}

enum class ImaginaryUnit { I, J, K };

/// u * q for u in {i, j, k}, written out component-wise.
template <typename Scalar>
constexpr Quaternion<Scalar> left_mul_unit(ImaginaryUnit u, const Quaternion<Scalar>& q) {
  switch (u) {
    case ImaginaryUnit::I: return {-q.x, q.w, -q.z, q.y};
    case ImaginaryUnit::J: return {-q.y, q.z, q.w, -q.x};
    case ImaginaryUnit::K: return {-q.z, -q.y, q.x, q.w};
  }
  return q;
}

/// q * (a + b i), the right action that time evolution uses.
template <typename Scalar>
constexpr Quaternion<Scalar> right_mul_complex(const Quaternion<Scalar>& q, const std::complex<Scalar>& c) {
  const Scalar a = c.real();
  const Scalar b = c.imag();
  return {q.w * a - q.x * b, q.w * b + q.x * a, q.y * a + q.z * b, q.z * a - q.y * b};
}

template <typename Scalar>
struct SymplecticPair {
  std::complex<Scalar> z1{}, z2{};

  constexpr bool operator==(const SymplecticPair&) const = default;

  constexpr SymplecticPair& operator+=(const SymplecticPair& o) {
    z1 += o.z1;
    z2 += o.z2;
    return *this;
  }
};

template <typename Scalar>
constexpr SymplecticPair<Scalar> operator+(SymplecticPair<Scalar> a, const SymplecticPair<Scalar>& b) {
  return a += b;
}

template <typename Scalar>
constexpr SymplecticPair<Scalar> symplectic_decompose(const Quaternion<Scalar>& q) {
  return {{q.w, q.x}, {q.y, -q.z}};
}

template <typename Scalar>
constexpr Quaternion<Scalar> symplectic_compose(const SymplecticPair<Scalar>& p) {
  return {p.z1.real(), p.z1.imag(), p.z2.real(), -p.z2.imag()};
}

// (z1 + j z2) c = z1 c + j (z2 c)
template <typename Scalar>
constexpr SymplecticPair<Scalar> right_mul(const SymplecticPair<Scalar>& p, const std::complex<Scalar>& c) {
  return {p.z1 * c, p.z2 * c};
}

// c (z1 + j z2) = c z1 + j (conj(c) z2)
template <typename Scalar>
constexpr SymplecticPair<Scalar> left_mul(const std::complex<Scalar>& c, const SymplecticPair<Scalar>& p) {
  return {c * p.z1, std::conj(c) * p.z2};
}

template <typename Scalar>
Scalar squared_norm(const SymplecticPair<Scalar>& p) {
  return std::norm(p.z1) + std::norm(p.z2);
}

using Quaterniond = Quaternion<double>;
using SymplecticPaird = SymplecticPair<double>;

}  // namespace qstep
