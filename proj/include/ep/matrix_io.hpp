// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include <json.hpp>

#include "ep/types.hpp"

namespace ep {

// Matrix wire format used everywhere in this repo:
//   {"rows": r, "cols": c, "data": [[re, im], ...]}   (row-major, r*c pairs)
// Parsers reject shape mismatches and non-finite values.

nlohmann::json matrix_to_json(const CMatrix& a);
CMatrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vector_to_json(const CVector& v);
CVector vector_from_json(const nlohmann::json& j);

CMatrix read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const CMatrix& a);

/// FNV-1a 64-bit digest of a file's bytes, as a hex string. Used by run
/// manifests to record which inputs produced an output.
std::string file_digest(const std::string& path);

}  // namespace ep
