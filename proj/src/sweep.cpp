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

#include "entbound/sweep.hpp"

#include <cmath>
#include <sstream>

namespace entbound {

DensityMatrix reference_state() {
  Eigen::Matrix4d r;
  r << 0.4322, 0.2113, 0.1073, 0.3369,
       0.2113, 0.1845, 0.0406, 0.1798,
       0.1073, 0.0406, 0.0504, 0.1144,
       0.3369, 0.1798, 0.1144, 0.3330;
  return DensityMatrix::from_unnormalized(Dims{2, 2}, r.cast<Complex>());
}

DensityMatrix mix_with_identity(const DensityMatrix& base, double x) {
  const int n = base.dims().total();
  const ComplexMatrix m = x * base.matrix() + (1.0 - x) / n * ComplexMatrix::Identity(n, n);
  return DensityMatrix::from_unnormalized(base.dims(), m);
}

std::vector<double> unit_grid(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw Error(ErrorCode::OutOfRange, "x step must lie in (0, 1]");
  const double intervals = 1.0 / step;
  const auto count = static_cast<long>(std::llround(intervals));
  if (std::abs(intervals - count) > 1e-9)
    throw Error(ErrorCode::OutOfRange, "x step must divide [0, 1] evenly");
  std::vector<double> grid;
  grid.reserve(count + 1);
  for (long i = 0; i <= count; ++i) grid.push_back(static_cast<double>(i) / count);
  return grid;
}

SweepConfig SweepConfig::defaults() {
  return {unit_grid(0.01),        reference_state(),     amplitude_damping(0.2),
          amplitude_damping(0.3), ProbeState::canonical(2), 0};
}

void SweepConfig::validate() const {
  if (x_grid.empty()) throw Error(ErrorCode::OutOfRange, "x grid is empty");
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    if (!(x_grid[i] >= 0.0 && x_grid[i] <= 1.0))
      throw Error(ErrorCode::OutOfRange, "x values must lie in [0, 1]");
    if (i > 0 && !(x_grid[i] > x_grid[i - 1]))
      throw Error(ErrorCode::OutOfRange, "x grid must be strictly increasing");
  }
  const Dims d = base_state.dims();
  if (!d.square() || d.first != probe.dim())
    throw Error(ErrorCode::DimensionMismatch, "base state must be N x N with N the probe dimension");
  if (channel_1.input_dim() != d.first || channel_2.input_dim() != d.second)
    throw Error(ErrorCode::DimensionMismatch, "channel dimensions do not match the base state");
}

SweepConfig sweep_config_from_json(const io::Json& j) {
  if (!j.is_object()) throw io::ParseError("sweep config must be a JSON object");
  SweepConfig config = SweepConfig::defaults();
  try {
    if (j.contains("x_grid") && j.contains("x_step"))
      throw io::ParseError("give either \"x_grid\" or \"x_step\", not both");
    if (j.contains("x_grid")) config.x_grid = j.at("x_grid").get<std::vector<double>>();
    if (j.contains("x_step")) config.x_grid = unit_grid(j.at("x_step").get<double>());
    if (j.contains("base_state")) config.base_state = io::state_from_json(j.at("base_state")).density;
    if (j.contains("channel_1")) config.channel_1 = io::channel_from_json(j.at("channel_1"));
    if (j.contains("channel_2")) config.channel_2 = io::channel_from_json(j.at("channel_2"));
    if (j.contains("probe")) config.probe = io::probe_from_json(j.at("probe"));
    if (j.contains("seed")) config.seed = j.at("seed").get<std::uint64_t>();
  } catch (const io::Json::exception& e) {
    throw io::ParseError(e.what());
  } catch (const Error& e) {
    throw io::ParseError(e.what());
  }
  return config;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  const bool qubits = config.base_state.dims() == Dims{2, 2};
  const ChannelApplication probe_1 = evolve_probe(config.channel_1, config.probe, Subsystem::First);
  const ChannelApplication probe_2 = evolve_probe(config.channel_2, config.probe, Subsystem::Second);

  std::vector<SweepRow> rows;
  rows.reserve(config.x_grid.size());
  for (const double x : config.x_grid) {
    try {
      const DensityMatrix rho = mix_with_identity(config.base_state, x);
      const ChannelApplication direct = apply_two_sided(config.channel_1, config.channel_2, rho);
      SweepRow row;
      row.x = x;
      row.p_total = direct.probability;
      row.lower = lower_bound_two_sided(rho, probe_1, probe_2, config.probe).clamped;
      if (qubits) {
        row.exact = wootters_concurrence(direct.output);
        const double ratio = probe_1.probability * probe_2.probability / direct.probability;
        row.upper = upper_bound_two_sided(wootters_concurrence(rho), probe_1.output, probe_2.output,
                                          config.probe.matrix(), ratio)
                        .raw;
      }
      rows.push_back(row);
    } catch (const Error& e) {
      throw SweepError(x, e.what());
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << kSweepHeader << '\n';
  const auto opt = [](const std::optional<double>& v) { return v ? io::format_number(*v) : ""; };
  for (const auto& r : rows) {
    out << io::format_number(r.x) << ',' << io::format_number(r.lower) << ',' << opt(r.exact) << ','
        << opt(r.upper) << ',' << io::format_number(r.p_total) << '\n';
  }
  return out.str();
}

}  // namespace entbound
