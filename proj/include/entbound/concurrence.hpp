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

#include "entbound/qlinalg.hpp"

namespace entbound {

enum class BoundKind { Lower, Upper, Exact };

/// A bound on a nonnegative quantity. `raw` is the formula's value, which may
/// be negative for lower bounds; `clamped` is max(0, raw).
struct BoundValue {
  double raw = 0.0;
  double clamped = 0.0;
  BoundKind kind = BoundKind::Lower;
  /// Set when the value was computed through a probe whose condition number
  /// exceeds kIllConditionedProbe.
  bool ill_conditioned = false;

  static BoundValue make(double raw, BoundKind kind) {
    return {raw, std::max(0.0, raw), kind, false};
  }
};

/// sqrt(2R/(R-1)); throws TrivialDimension for R < 2.
double lower_bound_prefactor(int r);

/// Largest concurrence of any pure state with Schmidt rank bound R.
double max_concurrence(int r);

/// sqrt(4 sum_{i<j} l_i^2 l_j^2) over the Schmidt coefficients.
double concurrence_pure(const PureState& psi);

/// The same quantity as the root of the summed squared 2x2 minors
/// |psi_ip psi_jq - psi_iq psi_jp|^2 of the coefficient matrix.
double concurrence_pure_minors(const PureState& psi);

/// 2 |det psi| for two qubits.
double concurrence_two_qubit_pure(const PureState& psi);

/// Two-qubit mixed-state concurrence max(0, l1 - l2 - l3 - l4) from the
/// spin-flipped state.
double wootters_concurrence(const DensityMatrix& rho);

/// <phi~| rho |phi~> for the canonical maximally entangled state.
double mes_fidelity(const DensityMatrix& rho);

/// sqrt(2R/(R-1)) (<phi~|rho|phi~> - 1/R).
BoundValue fidelity_lower_bound(const DensityMatrix& rho);

/// Fully entangled fraction of a two-qubit state: the largest eigenvalue of
/// the real part of rho written in the magic basis.
double fef_two_qubit(const DensityMatrix& rho);

struct MesSearchOptions {
  int samples = 10000;
  int refinement_steps = 2000;
  std::uint64_t seed = 0;
};

/// max over sampled maximally entangled (U1 (x) U2)|phi~> of <phi|rho|phi>.
/// Always a lower estimate of the true maximum; the canonical state is
/// among the candidates.
double sampled_max_mes_fidelity(const DensityMatrix& rho, const MesSearchOptions& options = {});

/// sqrt(2R/(R-1)) (max_{phi in MES} <phi|rho|phi> - 1/R). Exact for two
/// qubits; a certified under-estimate (via sampling) otherwise.
BoundValue theorem1_bound(const DensityMatrix& rho, const MesSearchOptions& options = {});

/// c_in * C(rho_P) / (2|det P|) * probability_ratio. probability_ratio is
/// p'/p (probe-stage over input-stage probability) and equals 1 for
/// trace-preserving channels.
BoundValue upper_bound_one_sided(double c_in, const DensityMatrix& rho_p, const ComplexMatrix& probe,
                                 double probability_ratio = 1.0);

/// c_in * C(rho_P1)/(2|det P|) * C(rho_P2)/(2|det P|) * probability_ratio,
/// with probability_ratio = p1' p2' / p.
BoundValue upper_bound_two_sided(double c_in, const DensityMatrix& rho_p1,
                                 const DensityMatrix& rho_p2, const ComplexMatrix& probe,
                                 double probability_ratio = 1.0);

}  // namespace entbound
