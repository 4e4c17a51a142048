// Copyright (c) 2026 eptool contributors.
// SPDX-License-Identifier: Apache-2.0

#include "ep/matrix_io.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>

#include "ep/errors.hpp"

namespace ep {

namespace {

Complex pair_from_json(const nlohmann::json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidInput(std::string(what) + ": entries must be [re, im] pairs");
  }
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) {
    throw InvalidInput(std::string(what) + ": non-finite entry");
  }
  return {re, im};
}

}  // namespace

nlohmann::json matrix_to_json(const CMatrix& a) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      data.push_back({std::real(a(i, j)), std::imag(a(i, j))});
    }
  }
  return {{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

CMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data")) {
    throw InvalidInput("matrix json: expected object with rows, cols, data");
  }
  if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer()) {
    throw InvalidInput("matrix json: rows/cols must be integers");
  }
  const auto rows = j["rows"].get<std::int64_t>();
  const auto cols = j["cols"].get<std::int64_t>();
  if (rows < 0 || cols < 0) throw InvalidInput("matrix json: negative dimensions");
  const auto& data = j["data"];
  if (!data.is_array() || static_cast<std::int64_t>(data.size()) != rows * cols) {
    throw InvalidInput("matrix json: data length does not match rows*cols");
  }
  CMatrix a(rows, cols);
  std::size_t k = 0;
  for (std::int64_t i = 0; i < rows; ++i) {
    for (std::int64_t j2 = 0; j2 < cols; ++j2) {
      a(i, j2) = pair_from_json(data[k++], "matrix json");
    }
  }
  return a;
}

nlohmann::json vector_to_json(const CVector& v) {
  nlohmann::json data = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    data.push_back({std::real(v(i)), std::imag(v(i))});
  }
  return {{"size", v.size()}, {"data", std::move(data)}};
}

CVector vector_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("size") || !j.contains("data")) {
    throw InvalidInput("vector json: expected object with size, data");
  }
  const auto n = j["size"].get<std::int64_t>();
  const auto& data = j["data"];
  if (n < 0 || !data.is_array() || static_cast<std::int64_t>(data.size()) != n) {
    throw InvalidInput("vector json: data length does not match size");
  }
  CVector v(n);
  for (std::int64_t i = 0; i < n; ++i) {
    v(i) = pair_from_json(data[static_cast<std::size_t>(i)], "vector json");
  }
  return v;
}

CMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open matrix file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("cannot parse matrix file " + path + ": " + e.what());
  }
  return matrix_from_json(j);
}

void write_matrix_file(const std::string& path, const CMatrix& a) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot open output file: " + path);
  out << matrix_to_json(a).dump(2) << "\n";
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file for digest: " + path);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      hash ^= static_cast<unsigned char>(buf[i]);
      hash *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  std::ostringstream hex;
  hex << std::hex << hash;
  return hex.str();
}

}  // namespace ep
