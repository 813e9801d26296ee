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

#include "entbound/checks.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

#include "entbound/channels.hpp"
#include "entbound/concurrence.hpp"
#include "entbound/probe.hpp"

namespace entbound {

namespace {

using io::Json;

class Tracker {
 public:
  Tracker(std::string suite, std::string property, double tolerance, std::uint64_t seed)
      : seed_(seed) {
    result_.suite = std::move(suite);
    result_.property = std::move(property);
    result_.tolerance = tolerance;
  }

  template <typename Inputs>
  void record(int trial, double residual, Inputs&& inputs) {
    ++result_.trials;
    if (std::isfinite(residual)) result_.worst_residual = std::max(result_.worst_residual, residual);
    if (residual <= result_.tolerance) return;
    if (!std::isfinite(residual)) result_.worst_residual = INFINITY;
    ++result_.failures;
    if (!result_.reproduction) {
      result_.reproduction = Json{{"suite", result_.suite},
                                  {"property", result_.property},
                                  {"seed", seed_},
                                  {"trial", trial},
                                  {"trial_seed", derive_seed(seed_, trial)},
                                  {"residual", std::isfinite(residual) ? Json(residual) : Json()},
                                  {"inputs", inputs()}};
    }
  }

  void record(int trial, double residual) {
    record(trial, residual, [] { return Json::object(); });
  }

  PropertyResult result() const { return result_; }

 private:
  std::uint64_t seed_;
  PropertyResult result_;
};

/// Trace-preserving with probability 1/2, otherwise a single-operator
/// truncation of a random channel.
KrausChannel random_any_channel(int n, Rng& rng, bool& trace_preserving) {
  std::uniform_int_distribution<int> count(1, 4);
  KrausChannel ch = random_channel(n, count(rng), rng);
  trace_preserving = std::bernoulli_distribution(0.5)(rng);
  return trace_preserving ? ch : ch.truncated(0);
}

DensityMatrix random_mixed(Dims d, Rng& rng) {
  std::uniform_int_distribution<int> rank(1, d.total());
  return random_density(d, rank(rng), rng);
}

Json bundle(const DensityMatrix& rho, const KrausChannel& ch, const ProbeState& probe) {
  return {{"state", io::state_to_json(rho)}, {"channel", io::channel_to_json(ch)},
          {"probe", io::probe_to_json(probe)}};
}

// ---------------------------------------------------------------------------

std::vector<PropertyResult> suite_theorem1(std::uint64_t seed, int trials) {
  const std::string suite = "theorem1";
  Tracker saturation(suite, "two-qubit pure saturation |theorem1 - C|", 1e-9, seed);
  Tracker mes(suite, "canonical MES saturation N=3,4", 1e-12, seed);
  Tracker strict(suite, "non-MES pure 3x3 strictly below C (margin 1e-10)", 0.0, seed);
  Tracker chain(suite, "inequality chain F <= (sum l)^2/R <= (1+sqrt(R(R-1)/2)C)/R", 1e-12, seed);
  Tracker dominance(suite, "theorem1 >= fidelity bound", 1e-12, seed);

  for (int n : {3, 4}) {
    const PureState psi = canonical_mes(Dims{n, n});
    const double raw = fidelity_lower_bound(DensityMatrix::from_pure(psi)).raw;
    mes.record(n, std::abs(raw - concurrence_pure(psi)));
  }

  const Dims shapes[] = {{2, 2}, {2, 3}, {3, 3}};
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    {
      const PureState psi = random_pure_state(Dims{2, 2}, rng);
      const double bound = theorem1_bound(DensityMatrix::from_pure(psi)).raw;
      saturation.record(t, std::abs(bound - concurrence_pure(psi)),
                        [&] { return Json{{"state", io::state_to_json(psi)}}; });
    }
    {
      const PureState psi = random_pure_state(Dims{3, 3}, rng);
      const double c = concurrence_pure(psi);
      const double raw = fidelity_lower_bound(DensityMatrix::from_pure(psi)).raw;
      strict.record(t, std::max(0.0, raw - c + 1e-10),
                    [&] { return Json{{"state", io::state_to_json(psi)}}; });
    }
    {
      const Dims d = shapes[t % 3];
      const PureState psi = random_pure_state(d, rng);
      const int r = d.rank();
      const RealVector l = schmidt_decompose(psi).coefficients;
      const double f = mes_fidelity(DensityMatrix::from_pure(psi));
      const double middle = l.sum() * l.sum() / r;
      const double right = (1.0 + std::sqrt(r * (r - 1) / 2.0) * concurrence_pure(psi)) / r;
      chain.record(t, std::max({0.0, f - middle, middle - right}),
                   [&] { return Json{{"state", io::state_to_json(psi)}}; });
    }
    {
      const bool big = t % 4 == 3;
      const Dims d = big ? Dims{3, 3} : Dims{2, 2};
      const DensityMatrix rho = random_mixed(d, rng);
      const MesSearchOptions options{200, 100, derive_seed(seed, t)};
      const double thm = theorem1_bound(rho, options).raw;
      dominance.record(t, std::max(0.0, fidelity_lower_bound(rho).raw - thm),
                       [&] { return Json{{"state", io::state_to_json(rho)}}; });
    }
  }
  return {saturation.result(), mes.result(), strict.result(), chain.result(), dominance.result()};
}

std::vector<PropertyResult> suite_probe_invariance(std::uint64_t seed, int trials) {
  const std::string suite = "probe-invariance";
  constexpr int kProbes = 20;
  Tracker spread2(suite, "one-sided bound spread over probes, 2x2", 1e-8, seed);
  Tracker spread3(suite, "one-sided bound spread over probes, 3x3", 1e-8, seed);
  Tracker spread_two(suite, "two-sided bound spread over probes, 2x2", 1e-8, seed);
  Tracker oracle_one(suite, "one-sided probe bound = direct bound on evolved state", 1e-8, seed);
  Tracker oracle_two(suite, "two-sided probe bound = direct bound on evolved state", 1e-8, seed);
  Tracker forms(suite, "two-sided eigen-decomposition form = MES-sum form", 1e-8, seed);

  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    for (int n : {2, 3}) {
      const Dims d{n, n};
      const DensityMatrix rho = random_mixed(d, rng);
      bool tp = true;
      const KrausChannel ch = random_any_channel(n, rng, tp);
      const Subsystem side = (t % 2 == 0) ? Subsystem::First : Subsystem::Second;
      const double direct = fidelity_lower_bound(apply_one_sided(ch, rho, side).output).raw;
      double lo = INFINITY, hi = -INFINITY;
      for (int k = 0; k < kProbes; ++k) {
        const ProbeState probe = ProbeState::random(n, rng);
        const double b = lower_bound_one_sided(rho, evolve_probe(ch, probe, side), probe, side).raw;
        lo = std::min(lo, b);
        hi = std::max(hi, b);
        oracle_one.record(t, std::abs(b - direct), [&] { return bundle(rho, ch, probe); });
      }
      (n == 2 ? spread2 : spread3).record(t, hi - lo, [&] {
        return Json{{"state", io::state_to_json(rho)}, {"channel", io::channel_to_json(ch)}};
      });
    }
    {
      const int n = (t % 3 == 2) ? 3 : 2;
      const Dims d{n, n};
      const DensityMatrix rho = random_mixed(d, rng);
      bool tp1 = true, tp2 = true;
      const KrausChannel ch1 = random_any_channel(n, rng, tp1);
      const KrausChannel ch2 = random_any_channel(n, rng, tp2);
      const double direct = fidelity_lower_bound(apply_two_sided(ch1, ch2, rho).output).raw;
      double lo = INFINITY, hi = -INFINITY;
      for (int k = 0; k < (n == 2 ? kProbes : 4); ++k) {
        const ProbeState probe = ProbeState::random(n, rng);
        const auto e1 = evolve_probe(ch1, probe, Subsystem::First);
        const auto e2 = evolve_probe(ch2, probe, Subsystem::Second);
        const double b = lower_bound_two_sided(rho, e1, e2, probe).raw;
        const double b_eig = lower_bound_two_sided(rho, e1, e2, probe, TwoSidedForm::Eigen).raw;
        lo = std::min(lo, b);
        hi = std::max(hi, b);
        const auto inputs = [&] {
          Json j = bundle(rho, ch1, probe);
          j["channel_2"] = io::channel_to_json(ch2);
          return j;
        };
        oracle_two.record(t, std::abs(b - direct), inputs);
        forms.record(t, std::abs(b - b_eig), inputs);
      }
      if (n == 2) spread_two.record(t, hi - lo);
    }
  }
  return {spread2.result(),    spread3.result(),    spread_two.result(),
          oracle_one.result(), oracle_two.result(), forms.result()};
}

std::vector<PropertyResult> suite_pt_equivalence(std::uint64_t seed, int trials) {
  const std::string suite = "pt-equivalence";
  Tracker agree(suite, "p_t by MES sum = p_t by reduced state", 1e-10, seed);
  Tracker unit(suite, "trace-preserving channel gives p_t = 1", 1e-10, seed);
  Tracker product(suite, "p = p_t * p' for trace-decreasing channels", 1e-10, seed);

  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const int n = (t % 2 == 0) ? 2 : 3;
    const DensityMatrix rho = random_mixed(Dims{n, n}, rng);
    bool tp = true;
    const KrausChannel ch = random_any_channel(n, rng, tp);
    const ProbeState probe = ProbeState::random(n, rng);
    const auto evolved = evolve_probe(ch, probe, Subsystem::First);
    const double reduced = pt_via_reduced(rho, evolved.output, probe);
    const double summed = pt_via_mes_sum(rho, evolved.output, probe);
    const auto inputs = [&] { return bundle(rho, ch, probe); };
    agree.record(t, std::abs(reduced - summed), inputs);
    if (tp) {
      unit.record(t, std::abs(reduced - 1.0), inputs);
    } else {
      const double p = apply_one_sided(ch, rho, Subsystem::First).probability;
      product.record(t, std::abs(p - reduced * evolved.probability), inputs);
    }
  }
  return {agree.result(), unit.result(), product.result()};
}

std::vector<PropertyResult> suite_sandwich(std::uint64_t seed, int trials) {
  const std::string suite = "sandwich";
  Tracker order(suite, "lower <= concurrence <= upper (2x2, trace-preserving)", 1e-9, seed);
  Tracker equality(suite, "pure input: C(rho_f) = C(psi) C(rho_P) / (2|det P|)", 1e-9, seed);
  Tracker invariance(suite, "upper bound independent of probe", 1e-9, seed);
  const Dims d{2, 2};

  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    const DensityMatrix rho = random_mixed(d, rng);
    std::uniform_int_distribution<int> count(1, 4);
    const KrausChannel ch1 = random_channel(2, count(rng), rng);
    const KrausChannel ch2 = random_channel(2, count(rng), rng);
    const ProbeState probe = ProbeState::random(2, rng);
    const double c_in = wootters_concurrence(rho);

    {  // one-sided
      const auto out = apply_one_sided(ch1, rho, Subsystem::First);
      const auto ep = evolve_probe(ch1, probe, Subsystem::First);
      const double lower = lower_bound_one_sided(rho, ep, probe).clamped;
      const double exact = wootters_concurrence(out.output);
      const double upper = upper_bound_one_sided(c_in, ep.output, probe.matrix()).raw;
      order.record(t, std::max({0.0, lower - exact, exact - upper}),
                   [&] { return bundle(rho, ch1, probe); });

      const ProbeState other = ProbeState::random(2, rng);
      const auto ep_other = evolve_probe(ch1, other, Subsystem::First);
      invariance.record(t, std::abs(upper - upper_bound_one_sided(c_in, ep_other.output, other.matrix()).raw));
    }
    {  // two-sided
      const auto out = apply_two_sided(ch1, ch2, rho);
      const auto e1 = evolve_probe(ch1, probe, Subsystem::First);
      const auto e2 = evolve_probe(ch2, probe, Subsystem::Second);
      const double lower = lower_bound_two_sided(rho, e1, e2, probe).clamped;
      const double exact = wootters_concurrence(out.output);
      const double upper = upper_bound_two_sided(c_in, e1.output, e2.output, probe.matrix()).raw;
      order.record(t, std::max({0.0, lower - exact, exact - upper}), [&] {
        Json j = bundle(rho, ch1, probe);
        j["channel_2"] = io::channel_to_json(ch2);
        return j;
      });
    }
    {  // pure input
      const PureState psi = random_pure_state(d, rng);
      const Subsystem side = (t % 2 == 0) ? Subsystem::First : Subsystem::Second;
      const auto out = apply_one_sided(ch1, DensityMatrix::from_pure(psi), side);
      const auto ep = evolve_probe(ch1, probe, side);
      const double predicted =
          upper_bound_one_sided(concurrence_pure(psi), ep.output, probe.matrix()).raw;
      equality.record(t, std::abs(wootters_concurrence(out.output) - predicted), [&] {
        return Json{{"state", io::state_to_json(psi)},
                    {"channel", io::channel_to_json(ch1)},
                    {"probe", io::probe_to_json(probe)}};
      });
    }
  }
  return {order.result(), equality.result(), invariance.result()};
}

std::vector<PropertyResult> suite_mes_basis(std::uint64_t seed, int trials) {
  const std::string suite = "mes-basis";
  Tracker ortho(suite, "generalized Bell basis orthonormal, N=2..4", 1e-12, seed);
  Tracker complete(suite, "generalized Bell basis resolves the identity, N=2..4", 1e-12, seed);
  Tracker flat(suite, "every basis state has Schmidt coefficients 1/sqrt(N)", 1e-12, seed);
  Tracker swap_inv(suite, "swap fixes the canonical MES, N=2..4", 1e-12, seed);
  Tracker dual(suite, "pure concurrence: minor sum = Schmidt form (2x2, 2x3, 3x3)", 1e-10, seed);
  Tracker builtin(suite, "built-in channels trace-preserving", 1e-12, seed);

  for (int n = 2; n <= 4; ++n) {
    const MesBasis basis = mes_basis(n);
    const auto count = static_cast<Eigen::Index>(basis.states.size());
    ComplexMatrix stack(n * n, count);
    for (Eigen::Index j = 0; j < count; ++j) stack.col(j) = basis.states[j].amplitudes();
    const ComplexMatrix id = ComplexMatrix::Identity(count, count);
    ortho.record(n, (stack.adjoint() * stack - id).cwiseAbs().maxCoeff());
    complete.record(n, (stack * stack.adjoint() - id).cwiseAbs().maxCoeff());
    double worst = 0.0;
    for (const auto& s : basis.states)
      worst = std::max(worst, (schmidt_decompose(s).coefficients.array() - 1.0 / std::sqrt(n)).abs().maxCoeff());
    flat.record(n, worst);
    const ComplexVector phi = canonical_mes(Dims{n, n}).amplitudes();
    swap_inv.record(n, (swap_operator(n) * phi - phi).cwiseAbs().maxCoeff());
  }

  const Dims shapes[] = {{2, 2}, {2, 3}, {3, 3}};
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(seed, t));
    for (const Dims d : shapes) {
      const PureState psi = random_pure_state(d, rng);
      dual.record(t, std::abs(concurrence_pure(psi) - concurrence_pure_minors(psi)),
                  [&] { return Json{{"state", io::state_to_json(psi)}}; });
    }
  }

  for (int k = 0; k <= 10; ++k) {
    const double g = k / 10.0;
    for (const KrausChannel& ch : {amplitude_damping(g), depolarizing(g), phase_damping(g)})
      builtin.record(k, ch.completeness_defect(), [&] { return io::channel_to_json(ch); });
  }
  return {ortho.result(), complete.result(), flat.result(), swap_inv.result(), dual.result(),
          builtin.result()};
}

using SuiteFn = std::function<std::vector<PropertyResult>(std::uint64_t, int)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites = {
      {"theorem1", suite_theorem1},
      {"probe-invariance", suite_probe_invariance},
      {"pt-equivalence", suite_pt_equivalence},
      {"sandwich", suite_sandwich},
      {"mes-basis", suite_mes_basis},
  };
  return suites;
}

}  // namespace

const std::vector<std::string>& check_suite_names() {
  static const std::vector<std::string> names = {"theorem1", "probe-invariance", "pt-equivalence",
                                                 "sandwich", "mes-basis"};
  return names;
}

std::vector<PropertyResult> run_check_suite(const std::string& name, std::uint64_t seed, int trials) {
  if (trials < 1) throw std::invalid_argument("trials must be positive");
  if (name == "all") {
    std::vector<PropertyResult> all;
    for (const auto& n : check_suite_names()) {
      auto part = registry().at(n)(seed, trials);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown check suite: " + name);
  return it->second(seed, trials);
}

}  // namespace entbound
