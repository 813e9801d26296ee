// Copyright 2026 The entbound Authors
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

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "entbound/channels.hpp"
#include "entbound/probe.hpp"
#include "entbound/qlinalg.hpp"

namespace entbound::io {

using Json = nlohmann::json;

/// Malformed or schema-violating input.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File values are decimal and may be rounded; deviations up to this much in
/// norm, trace or Hermiticity are renormalized away on load.
inline constexpr double kInputSlack = 1e-6;

/// Rows of [re, im] pairs. A bare number is accepted as a real entry.
Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

struct LoadedState {
  DensityMatrix density;
  std::optional<PureState> pure;
};

/// {"dims": [N1, N2], "kind": "density"|"pure", "data": ...}; a pure state's
/// data is a single row of amplitudes.
Json state_to_json(const PureState& psi);
Json state_to_json(const DensityMatrix& rho);
LoadedState state_from_json(const Json& j);

/// {"input_dim": N, "kraus": [matrix, ...]}.
Json channel_to_json(const KrausChannel& ch);
KrausChannel channel_from_json(const Json& j);

/// {"dim": N, "matrix": ...}.
Json probe_to_json(const ProbeState& probe);
ProbeState probe_from_json(const Json& j);

Json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Locale-independent rendering with 12 significant digits.
std::string format_number(double value);

}  // namespace entbound::io
