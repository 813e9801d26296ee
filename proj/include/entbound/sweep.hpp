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

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entbound/channels.hpp"
#include "entbound/io.hpp"
#include "entbound/probe.hpp"

namespace entbound {

/// The 4x4 real two-qubit test state used by the reference experiment,
/// rescaled from its printed trace of 1.0001 to unit trace.
DensityMatrix reference_state();

/// rho(x) = x * base + (1 - x) I / (N1 N2).
DensityMatrix mix_with_identity(const DensityMatrix& base, double x);

/// Evenly spaced grid over [0, 1]; step must divide 1 up to roundoff.
std::vector<double> unit_grid(double step);

struct SweepConfig {
  std::vector<double> x_grid;
  DensityMatrix base_state;
  KrausChannel channel_1;
  KrausChannel channel_2;
  ProbeState probe;
  std::uint64_t seed = 0;

  /// Grid 0:0.01:1, reference_state(), amplitude damping 0.2 on the first
  /// qubit and 0.3 on the second, canonical probe.
  static SweepConfig defaults();
  /// Throws OutOfRange on an empty, unsorted or out-of-[0,1] grid, and
  /// DimensionMismatch if the pieces do not fit together.
  void validate() const;
};

/// Overrides `defaults()` with any of: "x_grid" (list), "x_step" (number),
/// "base_state", "channel_1", "channel_2" (inline schemas), "probe", "seed".
SweepConfig sweep_config_from_json(const io::Json& j);

struct SweepRow {
  double x = 0.0;
  double lower = 0.0;
  /// Wootters concurrence; two qubits only.
  std::optional<double> exact;
  /// Probe-based upper bound; two qubits only.
  std::optional<double> upper;
  double p_total = 1.0;
};

/// A numerical failure at one grid point.
class SweepError : public std::runtime_error {
 public:
  SweepError(double x, const std::string& what) : std::runtime_error(what), x_(x) {}
  double x() const { return x_; }

 private:
  double x_;
};

std::vector<SweepRow> run_sweep(const SweepConfig& config);

inline constexpr const char* kSweepHeader = "x,lower_bound,concurrence,upper_bound,p_total";

/// Header line plus one line per row; fields absent for the bipartition are
/// left empty.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace entbound
