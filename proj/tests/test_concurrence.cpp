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

#include "entbound/channels.hpp"
#include "entbound/concurrence.hpp"
#include "entbound/probe.hpp"
#include "entbound/sweep.hpp"
#include "oracles.hpp"

using namespace entbound;

namespace {

PureState diag_state(std::initializer_list<double> coeffs, int n) {
  ComplexVector v = ComplexVector::Zero(n * n);
  int i = 0;
  for (double c : coeffs) {
    v(i * n + i) = c;
    ++i;
  }
  return PureState::normalized({n, n}, v);
}

DensityMatrix werner(double x) {
  const DensityMatrix bell = DensityMatrix::from_pure(canonical_mes(Dims{2, 2}));
  return DensityMatrix::from_unnormalized({2, 2}, x * bell.matrix() + (1 - x) / 4.0 * identity<double>(4));
}

}  // namespace

TEST_CASE("pure-state concurrence closed forms") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(concurrence_pure(diag_state({s, s}, 2)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(concurrence_pure(canonical_mes(Dims{3, 3})) == doctest::Approx(std::sqrt(4.0 / 3.0)).epsilon(1e-14));
  CHECK(concurrence_pure(canonical_mes(Dims{3, 3})) == doctest::Approx(1.154700538379).epsilon(1e-12));
  CHECK(concurrence_pure(PureState::basis({2, 2}, 0, 0)) == 0.0);

  CHECK(concurrence_two_qubit_pure(diag_state({s, s}, 2)) == doctest::Approx(1.0));
  CHECK(concurrence_two_qubit_pure(PureState::basis({2, 2}, 0, 1)) == 0.0);
  CHECK_THROWS_AS(concurrence_two_qubit_pure(canonical_mes(Dims{3, 3})), Error);
}

TEST_CASE("minor-sum and Schmidt forms agree") {
  Rng rng(100);
  const Dims shapes[] = {{2, 2}, {2, 3}, {3, 3}, {3, 4}};
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const Dims d = shapes[t % 4];
    const PureState psi = random_pure_state(d, rng);
    const double c = concurrence_pure(psi);
    worst = std::max(worst, std::abs(c - concurrence_pure_minors(psi)));
    CHECK(c <= max_concurrence(d.rank()) + 1e-12);
    if (d == Dims{2, 2}) CHECK(std::abs(c - concurrence_two_qubit_pure(psi)) <= 1e-12);
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("Wootters concurrence") {
  CHECK(wootters_concurrence(DensityMatrix::from_pure(canonical_mes(Dims{2, 2}))) ==
        doctest::Approx(1.0).epsilon(1e-7));
  CHECK(wootters_concurrence(DensityMatrix::maximally_mixed({2, 2})) == 0.0);
  // Bell-diagonal Werner family: C = max(0, (3x - 1)/2).
  CHECK(wootters_concurrence(werner(0.8)) == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(wootters_concurrence(werner(0.2)) == 0.0);
  CHECK_THROWS_AS(wootters_concurrence(DensityMatrix::maximally_mixed({2, 3})), Error);

  Rng rng(7);
  for (int t = 0; t < 200; ++t) {
    const DensityMatrix rho = random_density(Dims{2, 2}, 1 + t % 4, rng);
    CHECK(std::abs(wootters_concurrence(rho) - oracle::wootters(rho.matrix())) < 1e-7);
  }
  for (int t = 0; t < 200; ++t) {
    const PureState psi = random_pure_state(Dims{2, 2}, rng);
    CHECK(std::abs(wootters_concurrence(DensityMatrix::from_pure(psi)) - concurrence_pure(psi)) < 1e-7);
  }
}

TEST_CASE("fidelity lower bound") {
  const BoundValue mes = fidelity_lower_bound(DensityMatrix::from_pure(canonical_mes(Dims{2, 2})));
  CHECK(mes.raw == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mes.kind == BoundKind::Lower);

  const BoundValue mixed = fidelity_lower_bound(DensityMatrix::maximally_mixed({2, 2}));
  CHECK(mixed.raw == doctest::Approx(-0.5));
  CHECK(mixed.clamped == 0.0);

  // Four corner entries of the printed reference matrix give 0.7195, raw 0.4390.
  const double printed = 2.0 * ((0.4322 + 2 * 0.3369 + 0.3330) / 2.0 - 0.5);
  CHECK(printed == doctest::Approx(0.4390).epsilon(1e-12));
  const BoundValue ref = fidelity_lower_bound(reference_state());
  // reference_state() is rescaled by 1/1.0001.
  CHECK(ref.raw == doctest::Approx(0.438856114388561).epsilon(1e-12));
  CHECK(std::abs(ref.raw - printed) < 2e-4);

  CHECK_THROWS_AS(fidelity_lower_bound(DensityMatrix::maximally_mixed({1, 4})), Error);
  try {
    fidelity_lower_bound(DensityMatrix::maximally_mixed({1, 4}));
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TrivialDimension);
  }

  // Non-square: canonical MES embedded in the first R levels.
  const PureState embedded = canonical_mes(Dims{2, 3});
  CHECK(fidelity_lower_bound(DensityMatrix::from_pure(embedded)).raw == doctest::Approx(1.0));
}

TEST_CASE("lower bounds never exceed the two-qubit concurrence") {
  Rng rng(77);
  for (int t = 0; t < 500; ++t) {
    const DensityMatrix rho = random_density(Dims{2, 2}, 1 + t % 4, rng);
    const double c = wootters_concurrence(rho);
    const double fid = fidelity_lower_bound(rho).raw;
    const double thm = theorem1_bound(rho).raw;
    CHECK(fid <= c + 1e-9);
    CHECK(thm <= c + 1e-9);
    CHECK(thm >= fid - 1e-12);
  }
}

TEST_CASE("fully entangled fraction") {
  CHECK(fef_two_qubit(DensityMatrix::from_pure(canonical_mes(Dims{2, 2}))) == doctest::Approx(1.0));
  CHECK(fef_two_qubit(DensityMatrix::maximally_mixed({2, 2})) == doctest::Approx(0.25));

  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const PureState psi = random_pure_state(Dims{2, 2}, rng);
    const DensityMatrix rho = DensityMatrix::from_pure(psi);
    const double f = fef_two_qubit(rho);
    CHECK(std::abs(f - (1.0 + concurrence_pure(psi)) / 2.0) < 1e-9);
    CHECK(f >= mes_fidelity(rho) - 1e-12);
  }

  // Brute force over sampled maximally entangled states never beats the
  // analytic value and gets close to it.
  for (int t = 0; t < 3; ++t) {
    const DensityMatrix rho = random_density(Dims{2, 2}, 2 + t, rng);
    const double f = fef_two_qubit(rho);
    const double sampled = oracle::sampled_mes_fidelity(rho.matrix(), 2, 100000, rng);
    CHECK(sampled <= f + 1e-12);
    CHECK(sampled >= f - 5e-3);
  }
}

TEST_CASE("theorem1 bound") {
  const PureState psi = diag_state({std::sqrt(0.9), std::sqrt(0.1)}, 2);
  CHECK(concurrence_pure(psi) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(theorem1_bound(DensityMatrix::from_pure(psi)).raw == doctest::Approx(0.6).epsilon(1e-12));

  const DensityMatrix mes3 = DensityMatrix::from_pure(canonical_mes(Dims{3, 3}));
  CHECK(theorem1_bound(mes3).raw == doctest::Approx(2.0 / std::sqrt(3.0)).epsilon(1e-12));

  Rng rng(8);
  for (int t = 0; t < 1000; ++t) {
    const PureState p = random_pure_state(Dims{2, 2}, rng);
    CHECK(std::abs(theorem1_bound(DensityMatrix::from_pure(p)).raw - concurrence_pure(p)) <= 1e-9);
  }

  // Beyond two qubits the maximum is sampled; it still dominates the fixed
  // canonical overlap and stays below the concurrence for pure states.
  for (int t = 0; t < 10; ++t) {
    const PureState p = random_pure_state(Dims{3, 3}, rng);
    const DensityMatrix rho = DensityMatrix::from_pure(p);
    const double thm = theorem1_bound(rho, {2000, 500, static_cast<std::uint64_t>(t)}).raw;
    CHECK(thm >= fidelity_lower_bound(rho).raw);
    CHECK(thm <= concurrence_pure(p) + 1e-12);
  }
}

TEST_CASE("inequality chain behind the fidelity bound") {
  Rng rng(12);
  const Dims shapes[] = {{2, 2}, {2, 3}, {3, 3}, {4, 4}};
  for (int t = 0; t < 400; ++t) {
    const Dims d = shapes[t % 4];
    const PureState psi = random_pure_state(d, rng);
    const int r = d.rank();
    const RealVector l = schmidt_decompose(psi).coefficients;
    const double overlap = mes_fidelity(DensityMatrix::from_pure(psi));
    const double middle = l.sum() * l.sum() / r;
    const double right = (1.0 + std::sqrt(r * (r - 1) / 2.0) * concurrence_pure(psi)) / r;
    CHECK(overlap <= middle + 1e-12);
    CHECK(middle <= right + 1e-12);
  }
}

TEST_CASE("upper bounds") {
  const ProbeState mes = ProbeState::canonical(2);
  const DensityMatrix bell = mes.density();

  // Canonical probe: 2|det P| = 1 and the bound factorizes.
  const auto ep = evolve_probe(amplitude_damping(0.2), mes, Subsystem::First);
  CHECK(upper_bound_one_sided(0.5, ep.output, mes.matrix()).raw ==
        doctest::Approx(0.5 * wootters_concurrence(ep.output)));

  // Identity channel leaves the probe unchanged: bound = c_in.
  CHECK(upper_bound_one_sided(0.3, bell, mes.matrix()).raw == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(upper_bound_two_sided(0.3, bell, bell, mes.matrix()).raw == doctest::Approx(0.3).epsilon(1e-7));
  CHECK(upper_bound_two_sided(0.0, bell, bell, mes.matrix()).raw == 0.0);
  CHECK(upper_bound_one_sided(0.3, bell, mes.matrix()).kind == BoundKind::Upper);

  ComplexMatrix singular = ComplexMatrix::Zero(2, 2);
  singular(0, 0) = 1.0;
  CHECK_THROWS_AS(upper_bound_one_sided(1.0, bell, singular), Error);

  // Pure inputs saturate the one-sided bound.
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    const PureState psi = random_pure_state(Dims{2, 2}, rng);
    const ProbeState probe = ProbeState::random(2, rng);
    const auto side = t % 2 ? Subsystem::First : Subsystem::Second;
    const auto out = apply_one_sided(amplitude_damping(0.2), DensityMatrix::from_pure(psi), side);
    const auto evolved = evolve_probe(amplitude_damping(0.2), probe, side);
    const double bound = upper_bound_one_sided(concurrence_pure(psi), evolved.output, probe.matrix()).raw;
    CHECK(std::abs(wootters_concurrence(out.output) - bound) <= 1e-9);
  }
}

TEST_CASE("upper bound holds for trace-decreasing channels with the probability ratio") {
  Rng rng(19);
  for (int t = 0; t < 100; ++t) {
    const DensityMatrix rho = random_density(Dims{2, 2}, 1 + t % 4, rng);
    const KrausChannel ch = random_channel(2, 3, rng).truncated(0);
    const ProbeState probe = ProbeState::random(2, rng);
    const auto out = apply_one_sided(ch, rho, Subsystem::First);
    const auto ep = evolve_probe(ch, probe, Subsystem::First);
    const double bound =
        upper_bound_one_sided(wootters_concurrence(rho), ep.output, probe.matrix(), ep.probability / out.probability).raw;
    CHECK(wootters_concurrence(out.output) <= bound + 1e-9);
    if (rho.dims() == Dims{2, 2} && t % 4 == 0) {
      // Pure input: equality.
      CHECK(std::abs(wootters_concurrence(out.output) - bound) <= 1e-7);
    }
  }
}

TEST_CASE("upper bound does not depend on the probe") {
  Rng rng(23);
  const DensityMatrix rho = random_density(Dims{2, 2}, 2, rng);
  const KrausChannel ch = random_channel(2, 2, rng);
  const double c = wootters_concurrence(rho);
  const ProbeState first = ProbeState::random(2, rng);
  const double ref = upper_bound_one_sided(c, evolve_probe(ch, first, Subsystem::First).output, first.matrix()).raw;
  for (int k = 0; k < 100; ++k) {
    const ProbeState probe = ProbeState::random(2, rng);
    const double b = upper_bound_one_sided(c, evolve_probe(ch, probe, Subsystem::First).output, probe.matrix()).raw;
    CHECK(std::abs(b - ref) <= 1e-9);
  }
}

TEST_CASE("sandwich over random states and channels") {
  Rng rng(2024);
  for (int t = 0; t < 500; ++t) {
    const DensityMatrix rho = random_density(Dims{2, 2}, 1 + t % 4, rng);
    const KrausChannel c1 = random_channel(2, 1 + t % 4, rng);
    const KrausChannel c2 = random_channel(2, 1 + (t / 4) % 4, rng);
    const ProbeState mes = ProbeState::canonical(2);
    const auto out = apply_two_sided(c1, c2, rho);
    const double lower = fidelity_lower_bound(out.output).clamped;
    const double exact = wootters_concurrence(out.output);
    const double upper =
        upper_bound_two_sided(wootters_concurrence(rho), evolve_probe(c1, mes, Subsystem::First).output,
                              evolve_probe(c2, mes, Subsystem::Second).output, mes.matrix())
            .raw;
    CHECK(lower <= exact + 1e-9);
    CHECK(exact <= upper + 1e-9);
  }
}
