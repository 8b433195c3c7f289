// Copyright 2026 The Shapeholo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace shapeholo {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vec3& operator+=(const Vec3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr Vec3& operator-=(const Vec3& o) {
    x -= o.x;
    y -= o.y;
    z -= o.z;
    return *this;
  }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }
constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

/// 2x2 complex matrix, row-major.
struct Mat2 {
  std::array<cplx, 4> m{};

  cplx& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
  const cplx& operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

  static Mat2 identity() { return Mat2{{1.0, 0.0, 0.0, 1.0}}; }
  static Mat2 zero() { return Mat2{}; }

  Mat2 operator*(const Mat2& o) const {
    return Mat2{{m[0] * o.m[0] + m[1] * o.m[2], m[0] * o.m[1] + m[1] * o.m[3],
                 m[2] * o.m[0] + m[3] * o.m[2], m[2] * o.m[1] + m[3] * o.m[3]}};
  }
  Mat2 operator+(const Mat2& o) const {
    return Mat2{{m[0] + o.m[0], m[1] + o.m[1], m[2] + o.m[2], m[3] + o.m[3]}};
  }
  Mat2 operator-(const Mat2& o) const {
    return Mat2{{m[0] - o.m[0], m[1] - o.m[1], m[2] - o.m[2], m[3] - o.m[3]}};
  }
  Mat2 operator*(cplx s) const { return Mat2{{m[0] * s, m[1] * s, m[2] * s, m[3] * s}}; }

  Mat2 adjoint() const {
    return Mat2{{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
  }
  cplx trace() const { return m[0] + m[3]; }
  cplx det() const { return m[0] * m[3] - m[1] * m[2]; }
  double frobenius() const {
    double s = 0.0;
    for (const auto& v : m) s += std::norm(v);
    return std::sqrt(s);
  }
};

namespace pauli {
inline const Mat2 X{{0.0, 1.0, 1.0, 0.0}};
inline const Mat2 Y{{0.0, cplx{0.0, -1.0}, cplx{0.0, 1.0}, 0.0}};
inline const Mat2 Z{{1.0, 0.0, 0.0, -1.0}};
inline const Mat2 I = Mat2::identity();
}  // namespace pauli

/// v·σ / (2i): the anti-Hermitian su(2) element with real coefficient vector v.
inline Mat2 su2_from_vector(const Vec3& v) {
  const cplx f{0.0, -0.5};  // 1/(2i)
  return Mat2{{f * v.z, f * cplx{v.x, -v.y}, f * cplx{v.x, v.y}, -f * v.z}};
}

/// Inverse of su2_from_vector for any traceless anti-Hermitian matrix.
inline Vec3 su2_to_vector(const Mat2& a) {
  // a = -i/2 (v·σ)  =>  v·σ = 2i a
  const cplx z = cplx{0.0, 2.0} * a(0, 0);
  const cplx lower = cplx{0.0, 2.0} * a(1, 0);  // vx + i vy
  return {lower.real(), lower.imag(), z.real()};
}

/// exp(-v·σ/(2i)) = cos(|v|/2) + i sin(|v|/2) v̂·σ, exact in SU(2).
inline Mat2 su2_exp_neg(const Vec3& v) {
  const double th = norm(v);
  const double c = std::cos(0.5 * th);
  // sin(th/2)/th, with its series near zero
  const double s = th < 1e-8 ? 0.5 - th * th / 48.0 : std::sin(0.5 * th) / th;
  const cplx i{0.0, 1.0};
  return Mat2{{c + i * s * v.z, i * s * cplx{v.x, -v.y}, i * s * cplx{v.x, v.y}, c - i * s * v.z}};
}

/// Row-major dense square complex matrix (used for 2- and 4-dimensional gates).
class CMatrix {
 public:
  CMatrix() = default;
  explicit CMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  CMatrix(std::size_t dim, std::vector<cplx> data);
  explicit CMatrix(const Mat2& m) : dim_(2), data_(m.m.begin(), m.m.end()) {}

  static CMatrix identity(std::size_t dim);
  static CMatrix diagonal(const std::vector<cplx>& d);

  std::size_t dim() const { return dim_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  const std::vector<cplx>& data() const { return data_; }

  CMatrix operator*(const CMatrix& o) const;
  CMatrix operator-(const CMatrix& o) const;
  CMatrix adjoint() const;
  cplx trace() const;
  double frobenius() const;
  bool is_unitary(double tol) const;
  Mat2 to_mat2() const;

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// Kronecker product a ⊗ b; a acts on the more significant index.
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace shapeholo
