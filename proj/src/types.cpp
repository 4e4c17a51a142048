// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/types.hpp"

#include <cmath>

#include "ep/errors.hpp"

namespace ep {

bool is_finite(const CMatrix& a) {
  return a.array().real().isFinite().all() && a.array().imag().isFinite().all();
}

bool is_finite(const CVector& v) {
  return v.array().real().isFinite().all() && v.array().imag().isFinite().all();
}

CMatrix matrix_power(const CMatrix& a, int k) {
  if (a.rows() != a.cols()) throw InvalidInput("matrix_power: matrix must be square");
  if (k < 0) throw InvalidInput("matrix_power: negative exponent");
  CMatrix result = CMatrix::Identity(a.rows(), a.cols());
  for (int i = 0; i < k; ++i) result = result * a;
  return result;
}

}  // namespace ep
