// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>

#include "ep/types.hpp"

namespace ep::rng {

using Engine = std::mt19937_64;

/// Deterministic substream derivation: the engine state is a pure function of
/// (master_seed, stream, channel), so parallel consumers can draw independent
/// streams without sharing state. stream is typically a realization index,
/// channel separates the draws inside one realization.
Engine make_stream(std::uint64_t master_seed, std::uint64_t stream, std::uint64_t channel = 0);

/// Uniform double on [-1/2, 1/2], mapped from the top 53 bits of the engine
/// output so the sequence is identical on every platform.
double uniform_pm_half(Engine& eng);

/// Complex number with independent uniform [-1/2, 1/2] real and imaginary parts.
Complex uniform_complex(Engine& eng);

/// Matrix filled row by row with uniform_complex draws.
CMatrix uniform_matrix(Eigen::Index rows, Eigen::Index cols, Engine& eng);

}  // namespace ep::rng
