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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "entbound/qlinalg.hpp"
#include "oracles.hpp"

using namespace entbound;

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

PureState bell() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = kInvSqrt2;
  v(3) = kInvSqrt2;
  return PureState::normalized({2, 2}, v);
}

double max_abs(const ComplexMatrix& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST_CASE("state_to_matrix unfolds amplitudes first-index major") {
  const ComplexMatrix m = state_to_matrix(bell());
  CHECK(m.rows() == 2);
  CHECK(std::abs(m(0, 0) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(m(1, 1) - kInvSqrt2) < 1e-15);
  CHECK(std::abs(m(0, 1)) == 0.0);

  const ComplexMatrix basis = state_to_matrix(PureState::basis({2, 2}, 0, 1));
  CHECK(basis(0, 1) == Complex(1.0));
  CHECK(basis.cwiseAbs().sum() == doctest::Approx(1.0));
}

TEST_CASE("matrix_to_state inverts state_to_matrix") {
  ComplexMatrix m = ComplexMatrix::Zero(2, 3);
  m(1, 2) = 1.0;
  const PureState psi = matrix_to_state(m, {2, 3});
  CHECK(psi.amplitudes()(1 * 3 + 2) == Complex(1.0));

  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = d(1, 1) = kInvSqrt2;
  CHECK((matrix_to_state(d, {2, 2}).amplitudes() - bell().amplitudes()).norm() < 1e-15);

  Rng rng(11);
  for (int t = 0; t < 50; ++t) {
    const PureState s = random_pure_state(Dims{2 + t % 2, 3}, rng);
    const PureState back = matrix_to_state(state_to_matrix(s), s.dims());
    CHECK((back.amplitudes() - s.amplitudes()).norm() < 1e-14);
  }
}

TEST_CASE("matrix_to_state rejects bad input") {
  const ComplexMatrix ones = ComplexMatrix::Ones(2, 2);
  CHECK_THROWS_AS(matrix_to_state(ones, {2, 2}), Error);
  try {
    matrix_to_state(ones, {2, 2});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotNormalized);
  }
  try {
    matrix_to_state(ComplexMatrix::Identity(2, 2) * kInvSqrt2, {2, 3});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DimensionMismatch);
  }
}

TEST_CASE("tensor_product") {
  CHECK(max_abs(tensor_product(identity<double>(2), identity<double>(2)) - identity<double>(4)) == 0.0);

  ComplexMatrix p0 = ComplexMatrix::Zero(2, 2), p1 = ComplexMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  ComplexMatrix expect = ComplexMatrix::Zero(4, 4);
  expect(1, 1) = 1.0;
  CHECK(max_abs(tensor_product(p0, p1) - expect) == 0.0);

  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix a = random_ginibre(2, 2, rng), b = random_ginibre(2, 2, rng);
    const ComplexMatrix c = random_ginibre(2, 2, rng), d = random_ginibre(2, 2, rng);
    CHECK(max_abs(tensor_product(a, b) - oracle::kron(a, b)) < 1e-15);
    const ComplexMatrix lhs = tensor_product(a, b) * tensor_product(c, d);
    CHECK(max_abs(lhs - oracle::kron(a * c, b * d)) < 1e-12);
  }
}

TEST_CASE("partial_trace") {
  const DensityMatrix b = DensityMatrix::from_pure(bell());
  CHECK(max_abs(partial_trace(b, Subsystem::First) - identity<double>(2) / 2.0) < 1e-15);
  CHECK(max_abs(partial_trace(b, Subsystem::Second) - identity<double>(2) / 2.0) < 1e-15);

  const DensityMatrix prod = DensityMatrix::from_pure(PureState::basis({2, 2}, 0, 1));
  ComplexMatrix expect = ComplexMatrix::Zero(2, 2);
  expect(0, 0) = 1.0;
  CHECK(max_abs(partial_trace(prod, Subsystem::First) - expect) == 0.0);

  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho = random_density(Dims{3, 3}, 1 + t % 9, rng);
    const ComplexMatrix ra = partial_trace(rho, Subsystem::First);
    CHECK(std::abs(ra.trace() - Complex(1.0)) < 1e-12);
    CHECK(hermiticity_defect(ra) < 1e-15);
    CHECK(max_abs(ra - oracle::trace_second(rho.matrix(), 3, 3)) < 1e-14);
  }
}

TEST_CASE("partial trace of the lifted MES recovers psi psi^dagger") {
  // (psi (x) I)|phi~><phi~|(psi^dagger (x) I) * R traced over B = psi psi^dagger.
  Rng rng(8);
  for (int n : {2, 3, 4}) {
    const PureState psi = random_pure_state(Dims{n, n}, rng);
    const ComplexMatrix m = state_to_matrix(psi);
    const ComplexVector phi = canonical_mes(Dims{n, n}).amplitudes();
    const ComplexVector lifted = tensor_product(m, identity<double>(n)) * phi;
    const DensityMatrix rho({n, n}, (lifted * lifted.adjoint() * double(n)).eval());
    CHECK(max_abs(partial_trace(rho, Subsystem::First) - m * m.adjoint()) < 1e-12);
  }
}

TEST_CASE("schmidt_decompose") {
  const SchmidtForm f = schmidt_decompose(bell());
  CHECK(f.coefficients(0) == doctest::Approx(kInvSqrt2).epsilon(1e-14));
  CHECK(f.coefficients(1) == doctest::Approx(kInvSqrt2).epsilon(1e-14));

  const SchmidtForm p = schmidt_decompose(PureState::basis({2, 2}, 0, 0));
  CHECK(p.coefficients(0) == doctest::Approx(1.0));
  CHECK(std::abs(p.coefficients(1)) < 1e-15);

  Rng rng(21);
  for (int t = 0; t < 50; ++t) {
    const Dims d{2 + t % 2, 2 + (t / 2) % 3};
    const PureState psi = random_pure_state(d, rng);
    const SchmidtForm s = schmidt_decompose(psi);
    const int r = d.rank();
    CHECK(s.coefficients.size() == r);
    for (int i = 1; i < r; ++i) CHECK(s.coefficients(i - 1) >= s.coefficients(i));
    CHECK(std::abs(s.coefficients.squaredNorm() - 1.0) < 1e-12);
    const ComplexMatrix rebuilt = s.left_basis.leftCols(r) * s.coefficients.cast<Complex>().asDiagonal() *
                                  s.right_basis.leftCols(r).adjoint();
    CHECK(max_abs(rebuilt - state_to_matrix(psi)) < 1e-10);
  }
}

TEST_CASE("swap_operator") {
  const ComplexMatrix s = swap_operator(2);
  const ComplexVector v01 = PureState::basis({2, 2}, 0, 1).amplitudes();
  const ComplexVector v10 = PureState::basis({2, 2}, 1, 0).amplitudes();
  CHECK((s * v01 - v10).norm() == 0.0);
  CHECK(max_abs(s * s - identity<double>(4)) == 0.0);
  CHECK(max_abs(s - s.transpose()) == 0.0);

  for (int n : {2, 3, 4}) {
    const ComplexVector phi = canonical_mes(Dims{n, n}).amplitudes();
    CHECK((swap_operator(n) * phi - phi).norm() < 1e-15);
  }

  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const int n = 2 + t % 3;
    const ComplexMatrix a = random_ginibre(n, n, rng), b = random_ginibre(n, n, rng);
    const ComplexMatrix sn = swap_operator(n);
    CHECK(max_abs(sn * tensor_product(a, b) * sn - tensor_product(b, a)) < 1e-13);
  }
}

TEST_CASE("random generation is deterministic and well formed") {
  const PureState a = random_pure_state(Dims{2, 3}, 99);
  const PureState b = random_pure_state(Dims{2, 3}, 99);
  CHECK((a.amplitudes() - b.amplitudes()).norm() == 0.0);
  CHECK(max_abs(random_density(Dims{2, 2}, 3, 7).matrix() - random_density(Dims{2, 2}, 3, 7).matrix()) == 0.0);

  Rng rng(1234);
  for (int t = 0; t < 1000; ++t) {
    const Dims d{2 + t % 2, 2 + (t / 2) % 2};
    // The constructor enforces Hermiticity, unit trace and PSD; re-check here.
    const DensityMatrix rho = random_density(d, 1 + t % d.total(), rng);
    CHECK(hermiticity_defect(rho.matrix()) <= 1e-12);
    CHECK(std::abs(rho.matrix().trace() - Complex(1.0)) <= 1e-12);
    CHECK(hermitian_eigenvalues(rho.matrix()).minCoeff() >= -1e-10);
  }

  for (int t = 0; t < 20; ++t) {
    const DensityMatrix rho = random_density(Dims{3, 3}, 1, rng);
    CHECK(hermitian_eigenvalues(rho.matrix())(0) == doctest::Approx(1.0).epsilon(1e-10));
  }

  CHECK_THROWS_AS(random_density(Dims{2, 2}, 5, 1), Error);
  CHECK_THROWS_AS(random_density(Dims{2, 2}, 0, 1), Error);
}

TEST_CASE("random unitaries are unitary") {
  Rng rng(2);
  for (int n = 1; n <= 5; ++n) {
    const ComplexMatrix u = random_unitary(n, rng);
    CHECK(max_abs(u.adjoint() * u - identity<double>(n)) < 1e-13);
  }
}

TEST_CASE("DensityMatrix invariants are enforced") {
  ComplexMatrix m = ComplexMatrix::Identity(4, 4) / 4.0;
  CHECK_NOTHROW(DensityMatrix({2, 2}, m));
  m(0, 1) = 0.1;  // not Hermitian
  CHECK_THROWS_AS(DensityMatrix({2, 2}, m), Error);
  ComplexMatrix neg = ComplexMatrix::Zero(4, 4);
  neg(0, 0) = 1.5;
  neg(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix({2, 2}, neg), Error);
  CHECK_THROWS_AS(DensityMatrix({2, 3}, ComplexMatrix::Identity(4, 4) / 4.0), Error);
  CHECK_THROWS_AS(DensityMatrix({2, 2}, ComplexMatrix::Identity(4, 4) / 2.0), Error);
}

TEST_CASE("hermitian eigenvalues come largest first") {
  ComplexMatrix m = ComplexMatrix::Zero(3, 3);
  m(0, 0) = 0.1;
  m(1, 1) = 0.7;
  m(2, 2) = 0.2;
  const RealVector e = hermitian_eigenvalues(m);
  CHECK(e(0) == doctest::Approx(0.7));
  CHECK(e(2) == doctest::Approx(0.1));
}

TEST_CASE("types instantiate for long double") {
  using LD = long double;
  CVector<LD> v = CVector<LD>::Zero(4);
  v(0) = v(3) = LD(1) / std::sqrt(LD(2));
  const BasicPureState<LD> psi = BasicPureState<LD>::normalized({2, 2}, v);
  const auto s = schmidt_decompose(psi);
  CHECK(static_cast<double>(s.coefficients(0)) == doctest::Approx(1.0 / std::sqrt(2.0)));
}
