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

#include "shapeholo/types.hpp"

#include <stdexcept>

#include "shapeholo/error.hpp"

namespace shapeholo {

CMatrix::CMatrix(std::size_t dim, std::vector<cplx> data) : dim_(dim), data_(std::move(data)) {
  if (data_.size() != dim_ * dim_) throw ValidationError("CMatrix: data size does not match dimension");
}

CMatrix CMatrix::identity(std::size_t dim) {
  CMatrix out(dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  return out;
}

CMatrix CMatrix::diagonal(const std::vector<cplx>& d) {
  CMatrix out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) out(i, i) = d[i];
  return out;
}

CMatrix CMatrix::operator*(const CMatrix& o) const {
  if (o.dim_ != dim_) throw ValidationError("CMatrix: dimension mismatch in product");
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t k = 0; k < dim_; ++k) {
      const cplx a = (*this)(i, k);
      if (a == cplx{}) continue;
      for (std::size_t j = 0; j < dim_; ++j) out(i, j) += a * o(k, j);
    }
  return out;
}

CMatrix CMatrix::operator-(const CMatrix& o) const {
  if (o.dim_ != dim_) throw ValidationError("CMatrix: dimension mismatch in difference");
  CMatrix out(dim_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - o.data_[i];
  return out;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

cplx CMatrix::trace() const {
  cplx t{};
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::frobenius() const {
  double s = 0.0;
  for (const auto& v : data_) s += std::norm(v);
  return std::sqrt(s);
}

bool CMatrix::is_unitary(double tol) const {
  return (adjoint() * (*this) - identity(dim_)).frobenius() < tol;
}

Mat2 CMatrix::to_mat2() const {
  if (dim_ != 2) throw ValidationError("CMatrix: not a 2x2 matrix");
  return Mat2{{data_[0], data_[1], data_[2], data_[3]}};
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t n = a.dim() * b.dim();
  CMatrix out(n);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      for (std::size_t k = 0; k < b.dim(); ++k)
        for (std::size_t l = 0; l < b.dim(); ++l) out(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
  return out;
}

}  // namespace shapeholo
