// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/rng.hpp"

namespace ep::rng {

Engine make_stream(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t channel) {
  std::seed_seq seq{
      static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
      static_cast<std::uint32_t>(stream),      static_cast<std::uint32_t>(stream >> 32),
      static_cast<std::uint32_t>(channel),     static_cast<std::uint32_t>(channel >> 32)};
  return Engine(seq);
}

double uniform_pm_half(Engine& eng) {
  // 53-bit mantissa draw in [0, 1), shifted to be symmetric around zero.
  return static_cast<double>(eng() >> 11) * 0x1.0p-53 - 0.5;
}

Complex uniform_complex(Engine& eng) {
  const double re = uniform_pm_half(eng);
  const double im = uniform_pm_half(eng);
  return {re, im};
}

CMatrix uniform_matrix(Eigen::Index rows, Eigen::Index cols, Engine& eng) {
  CMatrix a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      a(i, j) = uniform_complex(eng);
    }
  }
  return a;
}

}  // namespace ep::rng
