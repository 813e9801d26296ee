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

#include "entbound/channels.hpp"

#include <array>
#include <string>

namespace entbound {

namespace {

double spectral_norm_hermitian(const ComplexMatrix& m) {
  return hermitian_eigenvalues(m).cwiseAbs().maxCoeff();
}

void check_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0))
    throw Error(ErrorCode::OutOfRange, std::string(name) + " must lie in [0, 1]");
}

}  // namespace

KrausChannel::KrausChannel(std::vector<ComplexMatrix> operators)
    : operators_(std::move(operators)) {
  if (operators_.empty()) throw Error(ErrorCode::InvalidChannel, "no Kraus operators");
  input_dim_ = static_cast<int>(operators_.front().rows());
  if (input_dim_ < 1) throw Error(ErrorCode::InvalidChannel, "empty Kraus operator");
  effect_ = ComplexMatrix::Zero(input_dim_, input_dim_);
  for (const auto& m : operators_) {
    if (m.rows() != input_dim_ || m.cols() != input_dim_)
      throw Error(ErrorCode::DimensionMismatch, "Kraus operators must be square and equal-sized");
    if (!all_finite(m)) throw Error(ErrorCode::InvalidChannel, "non-finite Kraus entry");
    effect_ += m.adjoint() * m;
  }
  const ComplexMatrix deviation = effect_ - ComplexMatrix::Identity(input_dim_, input_dim_);
  defect_ = spectral_norm_hermitian(deviation);
  if (hermitian_eigenvalues(deviation).maxCoeff() > tol::kIdentity)
    throw Error(ErrorCode::InvalidChannel, "sum of M^dagger M exceeds the identity");
}

KrausChannel KrausChannel::truncated(std::size_t index) const {
  if (index >= operators_.size()) throw Error(ErrorCode::OutOfRange, "Kraus index out of range");
  return KrausChannel({operators_[index]});
}

ComplexMatrix apply_unnormalized(const KrausChannel& ch, const ComplexMatrix& m, Dims dims,
                                 Subsystem side) {
  const int target = side == Subsystem::First ? dims.first : dims.second;
  if (ch.input_dim() != target)
    throw Error(ErrorCode::DimensionMismatch, "channel dimension does not match subsystem");
  if (m.rows() != dims.total() || m.cols() != dims.total())
    throw Error(ErrorCode::DimensionMismatch, "operator shape does not match dims");
  ComplexMatrix out = ComplexMatrix::Zero(m.rows(), m.cols());
  for (const auto& k : ch.operators()) {
    const ComplexMatrix lifted = side == Subsystem::First
                                     ? tensor_product(k, identity<double>(dims.second))
                                     : tensor_product(identity<double>(dims.first), k);
    out.noalias() += lifted * m * lifted.adjoint();
  }
  return out;
}

ChannelApplication apply_one_sided(const KrausChannel& ch, const DensityMatrix& rho,
                                   Subsystem side) {
  const ComplexMatrix image = apply_unnormalized(ch, rho.matrix(), rho.dims(), side);
  const double p = std::real(image.trace());
  if (!(p > kZeroProbability))
    throw Error(ErrorCode::ZeroProbability, "channel annihilates the state");
  return {DensityMatrix::from_unnormalized(rho.dims(), image), p};
}

ChannelApplication apply_two_sided(const KrausChannel& ch1, const KrausChannel& ch2,
                                   const DensityMatrix& rho) {
  const auto first = apply_one_sided(ch1, rho, Subsystem::First);
  const auto second = apply_one_sided(ch2, first.output, Subsystem::Second);
  return {second.output, first.probability * second.probability};
}

KrausChannel identity_channel(int dim) {
  return KrausChannel({ComplexMatrix::Identity(dim, dim)});
}

KrausChannel amplitude_damping(double gamma) {
  check_unit_interval(gamma, "gamma");
  ComplexMatrix m0 = ComplexMatrix::Zero(2, 2);
  m0(0, 0) = 1.0;
  m0(1, 1) = std::sqrt(1.0 - gamma);
  ComplexMatrix m1 = ComplexMatrix::Zero(2, 2);
  m1(0, 1) = std::sqrt(gamma);
  return KrausChannel({m0, m1});
}

KrausChannel depolarizing(double p) {
  check_unit_interval(p, "p");
  const Complex i(0.0, 1.0);
  ComplexMatrix id = ComplexMatrix::Identity(2, 2);
  ComplexMatrix x(2, 2), y(2, 2), z(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, -i, i, 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  const double a = std::sqrt(1.0 - 0.75 * p);
  const double b = std::sqrt(0.25 * p);
  return KrausChannel({a * id, b * x, b * y, b * z});
}

KrausChannel phase_damping(double lambda) {
  check_unit_interval(lambda, "lambda");
  ComplexMatrix k0 = ComplexMatrix::Zero(2, 2);
  k0(0, 0) = 1.0;
  k0(1, 1) = std::sqrt(1.0 - lambda);
  ComplexMatrix k1 = ComplexMatrix::Zero(2, 2);
  k1(1, 1) = std::sqrt(lambda);
  return KrausChannel({k0, k1});
}

KrausChannel random_channel(int dim, int num_operators, Rng& rng) {
  if (dim < 1 || num_operators < 1)
    throw Error(ErrorCode::OutOfRange, "dimension and operator count must be positive");
  std::vector<ComplexMatrix> ops;
  ComplexMatrix effect = ComplexMatrix::Zero(dim, dim);
  for (int k = 0; k < num_operators; ++k) {
    ops.push_back(random_ginibre(dim, dim, rng));
    effect += ops.back().adjoint() * ops.back();
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(effect);
  const RealVector inv_sqrt = solver.eigenvalues().cwiseSqrt().cwiseInverse();
  const ComplexMatrix whitening =
      solver.eigenvectors() * inv_sqrt.asDiagonal() * solver.eigenvectors().adjoint();
  for (auto& m : ops) m = m * whitening;
  return KrausChannel(std::move(ops));
}

}  // namespace entbound
