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
#include <string>
#include <vector>

#include "entbound/io.hpp"

namespace entbound {

/// Outcome of one quantified property. `worst_residual` is the largest
/// observed deviation (for equalities) or violation (for inequalities); the
/// property holds iff it does not exceed `tolerance`.
struct PropertyResult {
  std::string suite;
  std::string property;
  int trials = 0;
  int failures = 0;
  double worst_residual = 0.0;
  double tolerance = 0.0;
  /// Seed and inputs of the first failing trial.
  std::optional<io::Json> reproduction;

  bool passed() const { return failures == 0; }
};

/// theorem1, probe-invariance, pt-equivalence, sandwich, mes-basis.
const std::vector<std::string>& check_suite_names();

/// Runs one named suite, or every suite for "all". Trial t draws its inputs
/// from derive_seed(seed, t), so results depend only on (seed, trials).
/// Throws std::invalid_argument for an unknown name.
std::vector<PropertyResult> run_check_suite(const std::string& name, std::uint64_t seed, int trials);

}  // namespace entbound
