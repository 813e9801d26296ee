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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <utility>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include "entbound/errors.hpp"

namespace entbound {

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;
using Complex = std::complex<double>;

namespace tol {
/// Hermiticity, trace and normalization of constructed values.
inline constexpr double kStructure = 1e-12;
/// Reconstruction and algebraic identities.
inline constexpr double kIdentity = 1e-10;
/// Agreement between independently derived bounds.
inline constexpr double kBound = 1e-8;
/// Eigenvalues above -kPsd are treated as roundoff and clamped to zero.
inline constexpr double kPsd = 1e-10;
}  // namespace tol

/// Subsystem dimensions (N1, N2) of a bipartite Hilbert space.
struct Dims {
  int first = 0;
  int second = 0;

  constexpr int total() const { return first * second; }
  /// Schmidt rank bound R = min(N1, N2).
  constexpr int rank() const { return std::min(first, second); }
  constexpr bool square() const { return first == second; }
  friend constexpr bool operator==(const Dims&, const Dims&) = default;
};

enum class Subsystem { First, Second };

template <typename Derived>
bool all_finite(const Eigen::MatrixBase<Derived>& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const auto z = m(i, j);
      if (!std::isfinite(std::real(z)) || !std::isfinite(std::imag(z))) return false;
    }
  return true;
}

template <typename Derived>
auto hermiticity_defect(const Eigen::MatrixBase<Derived>& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

/// Eigenvalues of a Hermitian matrix, largest first.
template <typename Derived>
auto hermitian_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using Real = typename Eigen::NumTraits<Scalar>::Real;
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(m.template cast<std::complex<Real>>(),
                                                      Eigen::EigenvaluesOnly);
  RVector<Real> values = solver.eigenvalues().reverse();
  return values;
}

/// Principal square root of a positive-semidefinite Hermitian matrix. Negative
/// eigenvalues from roundoff are clamped to zero first.
template <typename Real>
CMatrix<Real> psd_sqrt(const CMatrix<Real>& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix<Real>> solver(m);
  RVector<Real> roots = solver.eigenvalues().cwiseMax(Real(0)).cwiseSqrt();
  const auto& vecs = solver.eigenvectors();
  return vecs * roots.asDiagonal() * vecs.adjoint();
}

template <typename A, typename B>
auto tensor_product(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  using Scalar = typename A::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out = Eigen::kroneckerProduct(a, b);
  return out;
}

template <typename Real>
CMatrix<Real> identity(int n) {
  return CMatrix<Real>::Identity(n, n);
}

/// Permutation S with S|j>|k> = |k>|j> on C^N (x) C^N.
template <typename Real = double>
CMatrix<Real> swap_operator(int n) {
  CMatrix<Real> s = CMatrix<Real>::Zero(n * n, n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) s(k * n + j, j * n + k) = Real(1);
  return s;
}

// ---------------------------------------------------------------------------
// States

/// Normalized bipartite state vector. Amplitude (i, j) of |ij> lives at
/// index i * N2 + j (first subsystem index major).
template <typename Real>
class BasicPureState {
 public:
  BasicPureState(Dims dims, CVector<Real> amplitudes) : dims_(dims), amps_(std::move(amplitudes)) {
    if (dims_.first < 1 || dims_.second < 1 || amps_.size() != dims_.total())
      throw Error(ErrorCode::DimensionMismatch, "amplitude count does not match dims");
    if (!all_finite(amps_)) throw Error(ErrorCode::InvalidState, "non-finite amplitude");
    if (std::abs(amps_.squaredNorm() - Real(1)) > Real(tol::kStructure))
      throw Error(ErrorCode::NotNormalized, "squared norm deviates from 1");
  }

  /// Rescales `amplitudes` to unit norm before validating.
  static BasicPureState normalized(Dims dims, CVector<Real> amplitudes) {
    const Real norm = amplitudes.norm();
    if (!(norm > Real(0))) throw Error(ErrorCode::NotNormalized, "zero vector");
    amplitudes /= norm;
    return BasicPureState(dims, std::move(amplitudes));
  }

  static BasicPureState basis(Dims dims, int i, int j) {
    CVector<Real> v = CVector<Real>::Zero(dims.total());
    v(i * dims.second + j) = Real(1);
    return BasicPureState(dims, std::move(v));
  }

  Dims dims() const { return dims_; }
  const CVector<Real>& amplitudes() const { return amps_; }
  std::complex<Real> operator()(int i, int j) const { return amps_(i * dims_.second + j); }

  CMatrix<Real> projector() const { return amps_ * amps_.adjoint(); }

 private:
  Dims dims_;
  CVector<Real> amps_;
};

/// Hermitian, positive-semidefinite, unit-trace operator on C^N1 (x) C^N2.
template <typename Real>
class BasicDensityMatrix {
 public:
  BasicDensityMatrix(Dims dims, CMatrix<Real> matrix) : dims_(dims), matrix_(std::move(matrix)) {
    if (dims_.first < 1 || dims_.second < 1 || matrix_.rows() != dims_.total() ||
        matrix_.cols() != dims_.total())
      throw Error(ErrorCode::DimensionMismatch, "density matrix shape does not match dims");
    if (!all_finite(matrix_)) throw Error(ErrorCode::InvalidState, "non-finite entry");
    if (hermiticity_defect(matrix_) > Real(tol::kStructure))
      throw Error(ErrorCode::InvalidState, "matrix is not Hermitian");
    if (std::abs(matrix_.trace() - std::complex<Real>(1)) > Real(tol::kStructure))
      throw Error(ErrorCode::NotNormalized, "trace deviates from 1");
    if (hermitian_eigenvalues(matrix_).minCoeff() < -Real(tol::kPsd))
      throw Error(ErrorCode::InvalidState, "matrix has a negative eigenvalue");
  }

  /// Hermitizes and divides by the trace; for operators that are a density
  /// matrix up to scale and roundoff (channel images, rounded file input).
  static BasicDensityMatrix from_unnormalized(Dims dims, const CMatrix<Real>& m) {
    if (m.rows() != m.cols()) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
    CMatrix<Real> h = (m + m.adjoint()) / Real(2);
    const Real trace = std::real(h.trace());
    if (!(trace > Real(0))) throw Error(ErrorCode::NotNormalized, "trace is not positive");
    h /= trace;
    return BasicDensityMatrix(dims, std::move(h));
  }

  static BasicDensityMatrix from_pure(const BasicPureState<Real>& psi) {
    CMatrix<Real> p = psi.projector();
    p = (p + p.adjoint()).eval() / Real(2);
    return BasicDensityMatrix(psi.dims(), std::move(p));
  }

  static BasicDensityMatrix maximally_mixed(Dims dims) {
    return BasicDensityMatrix(dims, CMatrix<Real>::Identity(dims.total(), dims.total()) /
                                        Real(dims.total()));
  }

  Dims dims() const { return dims_; }
  const CMatrix<Real>& matrix() const { return matrix_; }

 private:
  Dims dims_;
  CMatrix<Real> matrix_;
};

/// |psi> = sum_i coefficients[i] |u_i>|v_i>, with u_i, v_i the columns of
/// left_basis and right_basis.conjugate().
template <typename Real>
struct BasicSchmidtForm {
  RVector<Real> coefficients;
  CMatrix<Real> left_basis;
  CMatrix<Real> right_basis;
};

using PureState = BasicPureState<double>;
using DensityMatrix = BasicDensityMatrix<double>;
using SchmidtForm = BasicSchmidtForm<double>;

// ---------------------------------------------------------------------------
// Structural operations

template <typename Real>
CMatrix<Real> state_to_matrix(const BasicPureState<Real>& psi) {
  const Dims d = psi.dims();
  // Column-major storage of psi^T is the i-major amplitude vector.
  return Eigen::Map<const CMatrix<Real>>(psi.amplitudes().data(), d.second, d.first).transpose();
}

template <typename Derived>
auto matrix_to_state(const Eigen::MatrixBase<Derived>& m, Dims dims) {
  using Real = typename Eigen::NumTraits<typename Derived::Scalar>::Real;
  if (m.rows() != dims.first || m.cols() != dims.second)
    throw Error(ErrorCode::DimensionMismatch, "coefficient matrix shape does not match dims");
  if (std::abs(m.norm() - Real(1)) > Real(tol::kIdentity))
    throw Error(ErrorCode::NotNormalized, "Frobenius norm deviates from 1");
  CMatrix<Real> t = m.transpose().template cast<std::complex<Real>>();
  CVector<Real> amps = Eigen::Map<CVector<Real>>(t.data(), t.size());
  // Absorb the permitted 1e-10 slack so the state invariant (1e-12) holds.
  return BasicPureState<Real>::normalized(dims, std::move(amps));
}

/// Reduced operator on the kept subsystem.
template <typename Real>
CMatrix<Real> partial_trace(const BasicDensityMatrix<Real>& rho, Subsystem keep) {
  const int n1 = rho.dims().first;
  const int n2 = rho.dims().second;
  const auto& m = rho.matrix();
  if (keep == Subsystem::First) {
    CMatrix<Real> out = CMatrix<Real>::Zero(n1, n1);
    for (int i = 0; i < n1; ++i)
      for (int k = 0; k < n1; ++k)
        for (int j = 0; j < n2; ++j) out(i, k) += m(i * n2 + j, k * n2 + j);
    return out;
  }
  CMatrix<Real> out = CMatrix<Real>::Zero(n2, n2);
  for (int j = 0; j < n2; ++j)
    for (int l = 0; l < n2; ++l)
      for (int i = 0; i < n1; ++i) out(j, l) += m(i * n2 + j, i * n2 + l);
  return out;
}

template <typename Real>
BasicSchmidtForm<Real> schmidt_decompose(const BasicPureState<Real>& psi) {
  const CMatrix<Real> m = state_to_matrix(psi);
  Eigen::JacobiSVD<CMatrix<Real>> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  // JacobiSVD already returns singular values in decreasing order.
  return {svd.singularValues(), svd.matrixU(), svd.matrixV()};
}

/// Canonical maximally entangled state (1/sqrt(R)) sum_{i<R} |ii>, embedded in
/// the first R levels of each subsystem.
template <typename Real = double>
BasicPureState<Real> canonical_mes(Dims dims) {
  const int r = dims.rank();
  CVector<Real> v = CVector<Real>::Zero(dims.total());
  for (int i = 0; i < r; ++i) v(i * dims.second + i) = Real(1) / std::sqrt(Real(r));
  return BasicPureState<Real>::normalized(dims, std::move(v));
}

// ---------------------------------------------------------------------------
// Seeded random generation

/// splitmix64 finalizer; gives independent sub-seeds for (seed, index) pairs.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

using Rng = std::mt19937_64;

template <typename Real = double>
CMatrix<Real> random_ginibre(int rows, int cols, Rng& rng) {
  std::normal_distribution<Real> normal(Real(0), Real(1));
  CMatrix<Real> g(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const Real re = normal(rng);
      const Real im = normal(rng);
      g(i, j) = {re, im};
    }
  return g;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase-fixed R).
template <typename Real = double>
CMatrix<Real> random_unitary(int n, Rng& rng) {
  const CMatrix<Real> g = random_ginibre<Real>(n, n, rng);
  Eigen::HouseholderQR<CMatrix<Real>> qr(g);
  CMatrix<Real> q = qr.householderQ();
  const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (int k = 0; k < n; ++k) {
    const std::complex<Real> d = r(k, k);
    const Real mag = std::abs(d);
    if (mag > Real(0)) q.col(k) *= d / mag;
  }
  return q;
}

template <typename Real = double>
BasicPureState<Real> random_pure_state(Dims dims, Rng& rng) {
  CMatrix<Real> g = random_ginibre<Real>(dims.total(), 1, rng);
  return BasicPureState<Real>::normalized(dims, g.col(0));
}

template <typename Real = double>
BasicPureState<Real> random_pure_state(Dims dims, std::uint64_t seed) {
  Rng rng(seed);
  return random_pure_state<Real>(dims, rng);
}

/// G G^dagger / Tr for a Gaussian (N1 N2) x rank factor G.
template <typename Real = double>
BasicDensityMatrix<Real> random_density(Dims dims, int rank, Rng& rng) {
  if (rank < 1 || rank > dims.total())
    throw Error(ErrorCode::InvalidRank, "rank must lie in [1, N1*N2]");
  const CMatrix<Real> g = random_ginibre<Real>(dims.total(), rank, rng);
  return BasicDensityMatrix<Real>::from_unnormalized(dims, g * g.adjoint());
}

template <typename Real = double>
BasicDensityMatrix<Real> random_density(Dims dims, int rank, std::uint64_t seed) {
  Rng rng(seed);
  return random_density<Real>(dims, rank, rng);
}

}  // namespace entbound
