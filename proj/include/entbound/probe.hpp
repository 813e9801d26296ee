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

#include "entbound/channels.hpp"
#include "entbound/concurrence.hpp"
#include "entbound/qlinalg.hpp"

namespace entbound {

/// Probes whose condition number exceeds this flag their bounds as
/// ill-conditioned: P^{-1} enters the one-sided bound quadratically and the
/// two-sided bound quartically.
inline constexpr double kIllConditionedProbe = 1e4;

/// Full-rank pure state |P> = sum a_ij |ij> on C^N (x) C^N, held through its
/// coefficient matrix P with a cached inverse.
class ProbeState {
 public:
  int dim() const { return static_cast<int>(matrix_.rows()); }
  const ComplexMatrix& matrix() const { return matrix_; }
  const ComplexMatrix& inverse() const { return inverse_; }
  /// Ratio of largest to smallest singular value of P.
  double condition() const { return condition_; }
  bool ill_conditioned() const { return condition_ > kIllConditionedProbe; }

  PureState state() const;
  DensityMatrix density() const;

  /// The canonical maximally entangled state, P = I / sqrt(N).
  static ProbeState canonical(int n);
  /// Normalized Gaussian coefficient matrix (full rank with probability 1).
  static ProbeState random(int n, Rng& rng);

 private:
  friend ProbeState probe_from_matrix(const ComplexMatrix& p);
  ProbeState(ComplexMatrix matrix, ComplexMatrix inverse, double condition)
      : matrix_(std::move(matrix)), inverse_(std::move(inverse)), condition_(condition) {}

  ComplexMatrix matrix_;
  ComplexMatrix inverse_;
  double condition_;
};

/// Validates P: square, unit Frobenius norm (within 1e-10), smallest singular
/// value above 1e-8.
ProbeState probe_from_matrix(const ComplexMatrix& p);

/// Generalized Bell basis |Phi_j> = N^{-1/2} sum_k w^{j0 k} |k>|k + j1 mod N>,
/// j = N j0 + j1, w = exp(2 pi i / N).
struct MesBasis {
  int dim = 0;
  std::vector<PureState> states;

  /// Coefficient matrix of |Phi_j>. Equals U_j / sqrt(N) for the unitary
  /// shift-and-phase U_j (the Pauli matrices and identity for N = 2).
  ComplexMatrix transition(std::size_t j) const { return state_to_matrix(states.at(j)); }
};

MesBasis mes_basis(int n);

/// L = psi P^{-1}, so that (L (x) I)|P> = |psi>.
ComplexMatrix decompose_via_probe(const PureState& psi, const ProbeState& probe);

/// Channel image of the probe on one side, normalized, with its probability p'.
ChannelApplication evolve_probe(const KrausChannel& ch, const ProbeState& probe, Subsystem side);

/// p_t = p / p' from the reduced state rho_A of the initial state:
/// Tr[rho_P (I (x) (P^{-1} rho_A P^{-dagger})^*)].
double pt_via_reduced(const DensityMatrix& rho, const DensityMatrix& evolved_probe,
                      const ProbeState& probe);

/// p_t as the sum over the generalized Bell basis:
/// sum_m Tr[rho_P (Phi_m (x) P^{-*}) S rho^* S (Phi_m^dagger (x) P^{-T})].
double pt_via_mes_sum(const DensityMatrix& rho, const DensityMatrix& evolved_probe,
                      const ProbeState& probe);

/// Lower bound on the concurrence of the evolved state ($ (x) 1)rho / p,
/// computed from the initial state and the evolved probe alone. With
/// side == Second the roles of the subsystems are exchanged.
BoundValue lower_bound_one_sided(const DensityMatrix& rho, const ChannelApplication& evolved_probe,
                                 const ProbeState& probe, Subsystem side = Subsystem::First);

enum class TwoSidedForm {
  /// Double sum over the generalized Bell basis; uses rho directly.
  MesSum,
  /// Sum over the eigen-decomposition rho = sum_k |Psi_k><Psi_k|.
  Eigen,
};

/// Unnormalized overlap <phi~| ($1 (x) $2) rho |phi~> from the two evolved probes.
double two_sided_mes_overlap(const DensityMatrix& rho, const ChannelApplication& evolved_probe_1,
                             const ChannelApplication& evolved_probe_2, const ProbeState& probe,
                             TwoSidedForm form = TwoSidedForm::MesSum);

/// Effect operator sum_k M_k^dagger M_k of the channel, read off the evolved
/// probe on the given side.
ComplexMatrix effect_from_probe(const ChannelApplication& evolved_probe, const ProbeState& probe,
                                Subsystem side);

/// Probability Tr[($ (x) 1) rho] (or Tr[(1 (x) $) rho]) from the evolved probe.
double one_sided_probability(const DensityMatrix& rho, const ChannelApplication& evolved_probe,
                             const ProbeState& probe, Subsystem side);

/// Total probability Tr[($1 (x) $2) rho] from the evolved probes.
double two_sided_probability(const DensityMatrix& rho, const ChannelApplication& evolved_probe_1,
                             const ChannelApplication& evolved_probe_2, const ProbeState& probe);

BoundValue lower_bound_two_sided(const DensityMatrix& rho, const ChannelApplication& evolved_probe_1,
                                 const ChannelApplication& evolved_probe_2, const ProbeState& probe,
                                 TwoSidedForm form = TwoSidedForm::MesSum);

}  // namespace entbound
