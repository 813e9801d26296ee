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

#include <vector>

#include "entbound/qlinalg.hpp"

namespace entbound {

/// Below this trace a channel image is treated as annihilated.
inline constexpr double kZeroProbability = 1e-14;

/// Ordered Kraus operators acting on one subsystem. Operators are square and
/// share one dimension. Trace-decreasing sets are accepted and flagged;
/// sets with sum M^dagger M > I are rejected.
class KrausChannel {
 public:
  explicit KrausChannel(std::vector<ComplexMatrix> operators);

  int input_dim() const { return input_dim_; }
  const std::vector<ComplexMatrix>& operators() const { return operators_; }

  /// sum_k M_k^dagger M_k.
  const ComplexMatrix& effect() const { return effect_; }
  /// Spectral norm of effect() - I.
  double completeness_defect() const { return defect_; }
  bool trace_preserving() const { return defect_ <= tol::kIdentity; }

  /// Channel formed by the single operator at `index`.
  KrausChannel truncated(std::size_t index) const;

 private:
  int input_dim_;
  std::vector<ComplexMatrix> operators_;
  ComplexMatrix effect_;
  double defect_;
};

struct ChannelApplication {
  DensityMatrix output;
  double probability;
};

/// sum_k (M_k (x) I) m (M_k (x) I)^dagger, or with I (x) M_k on the second side.
ComplexMatrix apply_unnormalized(const KrausChannel& ch, const ComplexMatrix& m, Dims dims,
                                 Subsystem side);

ChannelApplication apply_one_sided(const KrausChannel& ch, const DensityMatrix& rho,
                                   Subsystem side);

/// ch1 on the first subsystem, ch2 on the second. The probability is the
/// product of the two stagewise probabilities.
ChannelApplication apply_two_sided(const KrausChannel& ch1, const KrausChannel& ch2,
                                   const DensityMatrix& rho);

KrausChannel identity_channel(int dim);

/// {diag(1, sqrt(1-gamma)), sqrt(gamma)|0><1|}.
KrausChannel amplitude_damping(double gamma);

/// Qubit depolarizing channel rho -> (1-p) rho + p I/2.
KrausChannel depolarizing(double p);

/// Qubit phase damping: off-diagonals scale by sqrt(1-lambda).
KrausChannel phase_damping(double lambda);

/// Trace-preserving channel with `num_operators` Gaussian Kraus operators,
/// orthonormalized by effect^{-1/2}.
KrausChannel random_channel(int dim, int num_operators, Rng& rng);

}  // namespace entbound
