// Copyright 2026 The qpure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpure/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace qpure::io {
namespace {

json complex_to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

std::complex<double> complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw FormatError("complex entry must be [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

void expect_kind(const json& j, const char* kind) {
  if (!j.is_object() || !j.contains("kind") || j["kind"] != kind)
    throw FormatError(std::string("expected an object of kind \"") + kind + "\"");
  if (!j.contains("dims") || !j["dims"].is_array() || !j.contains("data"))
    throw FormatError("missing \"dims\" or \"data\"");
  for (const auto& d : j["dims"])
    if (!d.is_number_integer() || d.get<long long>() < 1)
      throw FormatError("dims must be positive integers");
}

void dump_to(std::ostringstream& os, const json& j, int depth) {
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << std::string(std::size_t(depth + 1) * 2, ' ') << json(it.key()).dump() << ": ";
        dump_to(os, it.value(), depth + 1);
      }
      os << "\n" << std::string(std::size_t(depth) * 2, ' ') << "}";
      return;
    }
    case json::value_t::array: {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        dump_to(os, j[i], depth);
      }
      os << "]";
      return;
    }
    case json::value_t::number_float: {
      // -0 would re-parse as the integer 0 and break byte-identical rewrites.
      const double v = j.get<double>() == 0.0 ? 0.0 : j.get<double>();
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      os << buf;
      return;
    }
    default:
      os << j.dump();
  }
}

}  // namespace

json matrix_to_json(const CMatrix<double>& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix<double> matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw FormatError("matrix must be a non-empty array of rows");
  const auto rows = Eigen::Index(j.size());
  const auto cols = Eigen::Index(j[0].size());
  CMatrix<double> m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto& row = j[std::size_t(r)];
    if (!row.is_array() || Eigen::Index(row.size()) != cols)
      throw FormatError("ragged matrix rows");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = complex_from_json(row[std::size_t(c)]);
  }
  if (!m.allFinite()) throw FormatError("non-finite matrix entry");
  return m;
}

json to_json(const DensityOperator<double>& rho) {
  return {{"kind", "state"}, {"dims", json::array({rho.dim()})}, {"data", matrix_to_json(rho.matrix())}};
}

json vector_to_json(const CVector<double>& v) {
  json data = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) data.push_back(complex_to_json(v(i)));
  return {{"kind", "vector"}, {"dims", json::array({v.size()})}, {"data", std::move(data)}};
}

json to_json(const KrausChannel<double>& ch) {
  json data = json::array();
  for (const auto& k : ch.kraus()) data.push_back(matrix_to_json(k));
  return {{"kind", "channel"},
          {"dims", json::array({ch.dim_out(), ch.dim_in()})},
          {"trace_preserving", ch.trace_preserving()},
          {"data", std::move(data)}};
}

DensityOperator<double> state_from_json(const json& j) {
  expect_kind(j, "state");
  if (j["dims"].size() != 1) throw FormatError("state dims must be [d]");
  const auto d = j["dims"][0].get<Eigen::Index>();
  CMatrix<double> m = matrix_from_json(j["data"]);
  if (m.rows() != d || m.cols() != d) throw FormatError("state data does not match dims");
  try {
    return DensityOperator<double>(std::move(m));
  } catch (const Error& e) {
    throw FormatError(std::string("invalid density operator: ") + e.what());
  }
}

CVector<double> vector_from_json(const json& j) {
  expect_kind(j, "vector");
  if (j["dims"].size() != 1) throw FormatError("vector dims must be [d]");
  const auto d = j["dims"][0].get<Eigen::Index>();
  const json& data = j["data"];
  if (!data.is_array() || Eigen::Index(data.size()) != d)
    throw FormatError("vector data does not match dims");
  CVector<double> v(d);
  for (Eigen::Index i = 0; i < d; ++i) v(i) = complex_from_json(data[std::size_t(i)]);
  if (!v.allFinite()) throw FormatError("non-finite vector entry");
  return v;
}

KrausChannel<double> channel_from_json(const json& j) {
  expect_kind(j, "channel");
  if (j["dims"].size() != 2) throw FormatError("channel dims must be [d_out, d_in]");
  const auto d_out = j["dims"][0].get<Eigen::Index>();
  const auto d_in = j["dims"][1].get<Eigen::Index>();
  bool tp = true;
  if (j.contains("trace_preserving")) {
    if (!j["trace_preserving"].is_boolean()) throw FormatError("trace_preserving must be boolean");
    tp = j["trace_preserving"].get<bool>();
  }
  if (!j["data"].is_array() || j["data"].empty())
    throw FormatError("channel needs a non-empty list of Kraus matrices");
  std::vector<CMatrix<double>> ks;
  for (const auto& k : j["data"]) ks.push_back(matrix_from_json(k));
  try {
    return KrausChannel<double>(d_in, d_out, std::move(ks), tp);
  } catch (const Error& e) {
    throw FormatError(std::string("invalid channel: ") + e.what());
  }
}

std::string dump(const json& j) {
  std::ostringstream os;
  dump_to(os, j, 0);
  return os.str();
}

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << dump(j) << "\n";
}

DensityOperator<double> read_state(const std::string& path) {
  return state_from_json(read_file(path));
}

KrausChannel<double> read_channel(const std::string& path) {
  return channel_from_json(read_file(path));
}

}  // namespace qpure::io
