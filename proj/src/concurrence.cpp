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

#include "entbound/concurrence.hpp"

#include <array>
#include <cmath>
#include <limits>

namespace entbound {

namespace {

void require_two_qubits(Dims dims) {
  if (dims.first != 2 || dims.second != 2)
    throw Error(ErrorCode::DimensionMismatch, "operation is defined for two qubits only");
}

void require_nontrivial(Dims dims) {
  if (dims.rank() < 2)
    throw Error(ErrorCode::TrivialDimension, "concurrence vanishes identically when min(N1,N2) = 1");
}

ComplexMatrix magic_basis() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  ComplexMatrix b = ComplexMatrix::Zero(4, 4);
  // columns: (|00>+|11>)/sqrt2, i(|00>-|11>)/sqrt2, i(|01>+|10>)/sqrt2, (|01>-|10>)/sqrt2
  b(0, 0) = s;
  b(3, 0) = s;
  b(0, 1) = i * s;
  b(3, 1) = -i * s;
  b(1, 2) = i * s;
  b(2, 2) = i * s;
  b(1, 3) = s;
  b(2, 3) = -s;
  return b;
}

double abs_det_2x2(const ComplexMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2)
    throw Error(ErrorCode::DimensionMismatch, "probe matrix must be 2x2");
  return std::abs(m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0));
}

double probe_factor(const DensityMatrix& rho_p, double abs_det) {
  require_two_qubits(rho_p.dims());
  return wootters_concurrence(rho_p) / (2.0 * abs_det);
}

double check_probe_det(const ComplexMatrix& probe) {
  const double d = abs_det_2x2(probe);
  if (!(d > 1e-12)) throw Error(ErrorCode::SingularProbe, "|det P| vanishes");
  return d;
}

/// Hermitian generator with Gaussian entries scaled by `step`.
ComplexMatrix perturbation(int n, double step, Rng& rng) {
  const ComplexMatrix g = random_ginibre(n, n, rng);
  const ComplexMatrix h = (g + g.adjoint()) * (0.5 * step);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  ComplexVector phases(n);
  for (int k = 0; k < n; ++k) phases(k) = std::polar(1.0, solver.eigenvalues()(k));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

}  // namespace

double lower_bound_prefactor(int r) {
  if (r < 2) throw Error(ErrorCode::TrivialDimension, "prefactor is singular for R = 1");
  return std::sqrt(2.0 * r / (r - 1.0));
}

double max_concurrence(int r) { return std::sqrt(2.0 * (r - 1.0) / r); }

double concurrence_pure(const PureState& psi) {
  const RealVector l2 = schmidt_decompose(psi).coefficients.array().square();
  // 2 sum_{i<j} a_i a_j = (sum a)^2 - sum a^2, evaluated pairwise for accuracy.
  double acc = 0.0;
  for (Eigen::Index i = 0; i < l2.size(); ++i)
    for (Eigen::Index j = i + 1; j < l2.size(); ++j) acc += l2(i) * l2(j);
  return std::sqrt(4.0 * acc);
}

double concurrence_pure_minors(const PureState& psi) {
  const ComplexMatrix m = state_to_matrix(psi);
  const int n1 = psi.dims().first;
  const int n2 = psi.dims().second;
  double acc = 0.0;
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n1; ++j) {
      if (i == j) continue;
      for (int p = 0; p < n2; ++p)
        for (int q = 0; q < n2; ++q) {
          if (p == q) continue;
          acc += std::norm(m(i, p) * m(j, q) - m(i, q) * m(j, p));
        }
    }
  return std::sqrt(acc);
}

double concurrence_two_qubit_pure(const PureState& psi) {
  require_two_qubits(psi.dims());
  return 2.0 * abs_det_2x2(state_to_matrix(psi));
}

double wootters_concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho.dims());
  ComplexMatrix yy = ComplexMatrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  // rho = W W^dagger; the lambdas are the singular values of W^T YY W.
  // Eigenvalues at rounding level are dropped, otherwise their square roots
  // leak ~1e-8 into the result for rank-deficient states.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix());
  const RealVector e = solver.eigenvalues();
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, e.maxCoeff());
  RealVector s(4);
  for (int k = 0; k < 4; ++k) s(k) = e(k) > floor ? std::sqrt(e(k)) : 0.0;
  const ComplexMatrix w = solver.eigenvectors() * s.cast<Complex>().asDiagonal();
  const ComplexMatrix tau = w.transpose() * yy * w;
  const RealVector l = Eigen::JacobiSVD<ComplexMatrix>(tau).singularValues();
  return std::max(0.0, l(0) - l(1) - l(2) - l(3));
}

double mes_fidelity(const DensityMatrix& rho) {
  const ComplexVector phi = canonical_mes(rho.dims()).amplitudes();
  return std::real(phi.dot(rho.matrix() * phi));
}

BoundValue fidelity_lower_bound(const DensityMatrix& rho) {
  const int r = rho.dims().rank();
  require_nontrivial(rho.dims());
  return BoundValue::make(lower_bound_prefactor(r) * (mes_fidelity(rho) - 1.0 / r),
                          BoundKind::Lower);
}

double fef_two_qubit(const DensityMatrix& rho) {
  require_two_qubits(rho.dims());
  const ComplexMatrix b = magic_basis();
  const Eigen::Matrix4d overlap = (b.adjoint() * rho.matrix() * b).real();
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> solver(overlap, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double sampled_max_mes_fidelity(const DensityMatrix& rho, const MesSearchOptions& options) {
  const Dims d = rho.dims();
  const ComplexMatrix base = state_to_matrix(canonical_mes(d));
  const auto fidelity = [&](const ComplexMatrix& u1, const ComplexMatrix& u2) {
    const ComplexMatrix c = u1 * base * u2.transpose();
    const ComplexMatrix t = c.transpose();
    const Eigen::Map<const ComplexVector> phi(t.data(), t.size());
    return std::real(phi.dot(rho.matrix() * phi));
  };

  Rng rng(options.seed);
  ComplexMatrix best1 = ComplexMatrix::Identity(d.first, d.first);
  ComplexMatrix best2 = ComplexMatrix::Identity(d.second, d.second);
  double best = fidelity(best1, best2);
  for (int s = 0; s < options.samples; ++s) {
    ComplexMatrix u1 = random_unitary(d.first, rng);
    ComplexMatrix u2 = random_unitary(d.second, rng);
    const double f = fidelity(u1, u2);
    if (f > best) {
      best = f;
      best1 = std::move(u1);
      best2 = std::move(u2);
    }
  }
  // Local random search around the incumbent with a shrinking step.
  double step = 0.3;
  for (int s = 0; s < options.refinement_steps; ++s) {
    const ComplexMatrix u1 = perturbation(d.first, step, rng) * best1;
    const ComplexMatrix u2 = perturbation(d.second, step, rng) * best2;
    const double f = fidelity(u1, u2);
    if (f > best) {
      best = f;
      best1 = u1;
      best2 = u2;
    } else {
      step = std::max(1e-4, step * 0.995);
    }
  }
  return best;
}

BoundValue theorem1_bound(const DensityMatrix& rho, const MesSearchOptions& options) {
  const Dims d = rho.dims();
  require_nontrivial(d);
  const double fmax = (d.first == 2 && d.second == 2) ? fef_two_qubit(rho)
                                                       : sampled_max_mes_fidelity(rho, options);
  const int r = d.rank();
  return BoundValue::make(lower_bound_prefactor(r) * (fmax - 1.0 / r), BoundKind::Lower);
}

BoundValue upper_bound_one_sided(double c_in, const DensityMatrix& rho_p, const ComplexMatrix& probe,
                                 double probability_ratio) {
  const double d = check_probe_det(probe);
  return BoundValue::make(c_in * probe_factor(rho_p, d) * probability_ratio, BoundKind::Upper);
}

BoundValue upper_bound_two_sided(double c_in, const DensityMatrix& rho_p1,
                                 const DensityMatrix& rho_p2, const ComplexMatrix& probe,
                                 double probability_ratio) {
  const double d = check_probe_det(probe);
  return BoundValue::make(
      c_in * probe_factor(rho_p1, d) * probe_factor(rho_p2, d) * probability_ratio,
      BoundKind::Upper);
}

}  // namespace entbound
