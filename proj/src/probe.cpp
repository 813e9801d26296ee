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

#include "entbound/probe.hpp"

#include <numbers>

namespace entbound {

namespace {

constexpr double kMinProbeSingularValue = 1e-8;
constexpr double kDroppedEigenvalue = 1e-14;

void require_probe_dims(Dims dims, const ProbeState& probe) {
  if (dims.first != probe.dim() || dims.second != probe.dim())
    throw Error(ErrorCode::DimensionMismatch, "state bipartition must be N x N with N the probe dimension");
}

ComplexMatrix unnormalized(const ChannelApplication& app) { return app.output.matrix() * app.probability; }

ComplexMatrix coefficient_matrix(const ComplexVector& v, int n) {
  return Eigen::Map<const ComplexMatrix>(v.data(), n, n).transpose();
}

BoundValue tagged(BoundValue b, const ProbeState& probe) {
  b.ill_conditioned = probe.ill_conditioned();
  return b;
}

}  // namespace

PureState ProbeState::state() const {
  return matrix_to_state(matrix_, Dims{dim(), dim()});
}

DensityMatrix ProbeState::density() const { return DensityMatrix::from_pure(state()); }

ProbeState ProbeState::canonical(int n) {
  return probe_from_matrix(ComplexMatrix::Identity(n, n) / std::sqrt(double(n)));
}

ProbeState ProbeState::random(int n, Rng& rng) {
  ComplexMatrix g = random_ginibre(n, n, rng);
  g /= g.norm();
  return probe_from_matrix(g);
}

ProbeState probe_from_matrix(const ComplexMatrix& p) {
  if (p.rows() != p.cols() || p.rows() < 1)
    throw Error(ErrorCode::DimensionMismatch, "probe matrix must be square");
  if (!all_finite(p)) throw Error(ErrorCode::InvalidState, "non-finite probe entry");
  const double norm = p.norm();
  if (std::abs(norm - 1.0) > tol::kIdentity)
    throw Error(ErrorCode::NotNormalized, "probe Frobenius norm deviates from 1");
  const ComplexMatrix m = p / norm;
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const RealVector& sv = svd.singularValues();
  const double smallest = sv(sv.size() - 1);
  if (!(smallest > kMinProbeSingularValue))
    throw Error(ErrorCode::SingularProbe, "probe coefficient matrix is rank deficient");
  ComplexMatrix inverse = m.partialPivLu().inverse();
  return ProbeState(m, std::move(inverse), sv(0) / smallest);
}

MesBasis mes_basis(int n) {
  if (n < 2) throw Error(ErrorCode::TrivialDimension, "generalized Bell basis needs N >= 2");
  MesBasis basis{n, {}};
  basis.states.reserve(static_cast<std::size_t>(n) * n);
  const Dims dims{n, n};
  const double amp = 1.0 / std::sqrt(double(n));
  for (int j0 = 0; j0 < n; ++j0)
    for (int j1 = 0; j1 < n; ++j1) {
      ComplexVector v = ComplexVector::Zero(n * n);
      for (int k = 0; k < n; ++k) {
        const double phase = 2.0 * std::numbers::pi * j0 * k / n;
        v(k * n + (k + j1) % n) = std::polar(amp, phase);
      }
      basis.states.push_back(PureState::normalized(dims, std::move(v)));
    }
  return basis;
}

ComplexMatrix decompose_via_probe(const PureState& psi, const ProbeState& probe) {
  require_probe_dims(psi.dims(), probe);
  return state_to_matrix(psi) * probe.inverse();
}

ChannelApplication evolve_probe(const KrausChannel& ch, const ProbeState& probe, Subsystem side) {
  return apply_one_sided(ch, probe.density(), side);
}

double pt_via_reduced(const DensityMatrix& rho, const DensityMatrix& evolved_probe,
                      const ProbeState& probe) {
  require_probe_dims(rho.dims(), probe);
  require_probe_dims(evolved_probe.dims(), probe);
  const int n = probe.dim();
  const ComplexMatrix& inv = probe.inverse();
  const ComplexMatrix reduced = partial_trace(rho, Subsystem::First);
  const ComplexMatrix sandwich = (inv * reduced * inv.adjoint()).conjugate();
  const ComplexMatrix lifted = tensor_product(identity<double>(n), sandwich);
  return std::real((evolved_probe.matrix() * lifted).trace());
}

double pt_via_mes_sum(const DensityMatrix& rho, const DensityMatrix& evolved_probe,
                      const ProbeState& probe) {
  require_probe_dims(rho.dims(), probe);
  require_probe_dims(evolved_probe.dims(), probe);
  const int n = probe.dim();
  const ComplexMatrix s = swap_operator(n);
  const ComplexMatrix swapped = s * rho.matrix().conjugate() * s;
  const ComplexMatrix inv_conj = probe.inverse().conjugate();
  const ComplexMatrix inv_t = probe.inverse().transpose();
  const MesBasis basis = mes_basis(n);
  Complex acc = 0.0;
  for (std::size_t m = 0; m < basis.states.size(); ++m) {
    const ComplexMatrix phi = basis.transition(m);
    const ComplexMatrix left = tensor_product(phi, inv_conj);
    const ComplexMatrix right = tensor_product(phi.adjoint(), inv_t);
    acc += (evolved_probe.matrix() * left * swapped * right).trace();
  }
  return std::real(acc);
}

BoundValue lower_bound_one_sided(const DensityMatrix& rho, const ChannelApplication& evolved_probe,
                                 const ProbeState& probe, Subsystem side) {
  require_probe_dims(rho.dims(), probe);
  require_probe_dims(evolved_probe.output.dims(), probe);
  const int n = probe.dim();
  const ComplexMatrix s = swap_operator(n);

  if (side == Subsystem::Second) {
    // Exchange the subsystems: the second-side channel becomes a first-side
    // one acting on S rho S, probed by |P^T>.
    const DensityMatrix rho_swapped(rho.dims(), s * rho.matrix() * s);
    const ChannelApplication probe_swapped{
        DensityMatrix(rho.dims(), s * evolved_probe.output.matrix() * s), evolved_probe.probability};
    return tagged(lower_bound_one_sided(rho_swapped, probe_swapped,
                                        probe_from_matrix(probe.matrix().transpose()),
                                        Subsystem::First),
                  probe);
  }

  const double pt = pt_via_reduced(rho, evolved_probe.output, probe);
  if (!(pt > kZeroProbability))
    throw Error(ErrorCode::ZeroProbability, "channel annihilates the initial state");
  const ComplexMatrix id = identity<double>(n);
  const ComplexMatrix left = tensor_product(id, probe.inverse().transpose());
  const ComplexMatrix right = tensor_product(id, probe.inverse().conjugate());
  const ComplexMatrix f = s * left * evolved_probe.output.matrix() * right * s / (pt * n);
  const double overlap = std::real((f * rho.matrix().conjugate()).trace());
  return tagged(BoundValue::make(lower_bound_prefactor(n) * (overlap - 1.0 / n), BoundKind::Lower),
                probe);
}

double two_sided_mes_overlap(const DensityMatrix& rho, const ChannelApplication& evolved_probe_1,
                             const ChannelApplication& evolved_probe_2, const ProbeState& probe,
                             TwoSidedForm form) {
  require_probe_dims(rho.dims(), probe);
  require_probe_dims(evolved_probe_1.output.dims(), probe);
  require_probe_dims(evolved_probe_2.output.dims(), probe);
  const int n = probe.dim();
  const ComplexMatrix& inv = probe.inverse();
  const ComplexMatrix s = swap_operator(n);
  const ComplexMatrix r1_conj = unnormalized(evolved_probe_1).conjugate();
  const ComplexMatrix r2 = unnormalized(evolved_probe_2);
  Complex acc = 0.0;

  if (form == TwoSidedForm::Eigen) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix());
    const ComplexMatrix id = identity<double>(n);
    const ComplexMatrix swapped_r2 = s * r2 * s;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
      const double w = solver.eigenvalues()(k);
      if (w < kDroppedEigenvalue) continue;
      const ComplexVector v = solver.eigenvectors().col(k) * std::sqrt(w);
      const ComplexMatrix x = inv * coefficient_matrix(v, n) * inv;
      const ComplexMatrix lifted = tensor_product(id, x);
      acc += (r1_conj * lifted * swapped_r2 * lifted.adjoint()).trace();
    }
    return std::real(acc) / n;
  }

  const MesBasis basis = mes_basis(n);
  const std::size_t count = basis.states.size();
  const ComplexMatrix swapped_rho = s * rho.matrix() * s;
  std::vector<ComplexMatrix> lifts;
  lifts.reserve(count);
  for (std::size_t m = 0; m < count; ++m)
    lifts.push_back(tensor_product(basis.transition(m).transpose() * inv.transpose(), inv));
  for (std::size_t m = 0; m < count; ++m) {
    const ComplexVector& phi_m = basis.states[m].amplitudes();
    const ComplexMatrix head = r1_conj * lifts[m] * swapped_rho;
    for (std::size_t k = 0; k < count; ++k) {
      const Complex weight = phi_m.dot(r2 * basis.states[k].amplitudes());
      if (std::abs(weight) == 0.0) continue;
      acc += weight * (head * lifts[k].adjoint()).trace();
    }
  }
  return std::real(acc) / n;
}

ComplexMatrix effect_from_probe(const ChannelApplication& evolved_probe, const ProbeState& probe,
                                Subsystem side) {
  require_probe_dims(evolved_probe.output.dims(), probe);
  const ComplexMatrix& inv = probe.inverse();
  if (side == Subsystem::First) {
    // Tr_A of the image is P^T E^T P^*.
    const ComplexMatrix reduced =
        partial_trace(evolved_probe.output, Subsystem::Second) * evolved_probe.probability;
    return inv.adjoint() * reduced.transpose() * inv;
  }
  // Tr_B of the image is P E^T P^dagger.
  const ComplexMatrix reduced =
      partial_trace(evolved_probe.output, Subsystem::First) * evolved_probe.probability;
  return (inv * reduced * inv.adjoint()).transpose();
}

double one_sided_probability(const DensityMatrix& rho, const ChannelApplication& evolved_probe,
                             const ProbeState& probe, Subsystem side) {
  require_probe_dims(rho.dims(), probe);
  const ComplexMatrix e = effect_from_probe(evolved_probe, probe, side);
  const ComplexMatrix id = identity<double>(probe.dim());
  const ComplexMatrix lifted = side == Subsystem::First ? tensor_product(e, id) : tensor_product(id, e);
  return std::real((lifted * rho.matrix()).trace());
}

double two_sided_probability(const DensityMatrix& rho, const ChannelApplication& evolved_probe_1,
                             const ChannelApplication& evolved_probe_2, const ProbeState& probe) {
  require_probe_dims(rho.dims(), probe);
  const ComplexMatrix e1 = effect_from_probe(evolved_probe_1, probe, Subsystem::First);
  const ComplexMatrix e2 = effect_from_probe(evolved_probe_2, probe, Subsystem::Second);
  return std::real((tensor_product(e1, e2) * rho.matrix()).trace());
}

BoundValue lower_bound_two_sided(const DensityMatrix& rho, const ChannelApplication& evolved_probe_1,
                                 const ChannelApplication& evolved_probe_2, const ProbeState& probe,
                                 TwoSidedForm form) {
  const double overlap = two_sided_mes_overlap(rho, evolved_probe_1, evolved_probe_2, probe, form);
  const double p = two_sided_probability(rho, evolved_probe_1, evolved_probe_2, probe);
  if (!(p > kZeroProbability))
    throw Error(ErrorCode::ZeroProbability, "channels annihilate the initial state");
  const int n = probe.dim();
  return tagged(BoundValue::make(lower_bound_prefactor(n) * (overlap / p - 1.0 / n), BoundKind::Lower),
                probe);
}

}  // namespace entbound
