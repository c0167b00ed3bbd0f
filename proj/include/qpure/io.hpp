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

// JSON interchange for states, vectors and channels.
//
// Every complex number is a two-element array [re, im]; matrices are arrays
// of rows (row-major). Layouts:
//
//   {"kind": "state",   "dims": [d],             "data": [[[re,im],...],...]}
//   {"kind": "vector",  "dims": [d],             "data": [[re,im],...]}
//   {"kind": "channel", "dims": [d_out, d_in],   "trace_preserving": true,
//    "data": [<matrix>, ...]}
//
// Floats are written with 17 significant digits, so write -> read -> write
// is byte-identical.

#ifndef QPURE_IO_HPP
#define QPURE_IO_HPP

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qpure/channels.hpp"
#include "qpure/states.hpp"

namespace qpure::io {

using json = nlohmann::json;

/// Malformed or unreadable interchange file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json matrix_to_json(const CMatrix<double>& m);
CMatrix<double> matrix_from_json(const json& j);

json to_json(const DensityOperator<double>& rho);
json to_json(const KrausChannel<double>& ch);
json vector_to_json(const CVector<double>& v);

DensityOperator<double> state_from_json(const json& j);
KrausChannel<double> channel_from_json(const json& j);
CVector<double> vector_from_json(const json& j);

/// Serializes with floats at 17 significant digits; objects are indented,
/// arrays stay on one line. Ends without a trailing newline.
std::string dump(const json& j);

json read_file(const std::string& path);
void write_file(const std::string& path, const json& j);

DensityOperator<double> read_state(const std::string& path);
KrausChannel<double> read_channel(const std::string& path);

}  // namespace qpure::io

#endif  // QPURE_IO_HPP
