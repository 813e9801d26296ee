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

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "entbound/channels.hpp"
#include "entbound/checks.hpp"
#include "entbound/concurrence.hpp"
#include "entbound/io.hpp"
#include "entbound/probe.hpp"
#include "entbound/sweep.hpp"

namespace {

using namespace entbound;
using io::Json;

enum Exit : int {
  kOk = 0,
  kPropertyViolation = 1,
  kParse = 2,
  kNumerical = 3,
  kDimension = 4,
  kSingularProbe = 5,
};

enum class LogLevel { Quiet, Info, Debug };

LogLevel log_level() {
  const char* env = std::getenv("ENTBOUND_LOG");
  if (env == nullptr) return LogLevel::Info;
  const std::string v(env);
  if (v == "quiet") return LogLevel::Quiet;
  if (v == "debug") return LogLevel::Debug;
  return LogLevel::Info;
}

void log(LogLevel level, const std::string& msg) {
  if (level != LogLevel::Quiet && level <= log_level()) std::cerr << "[entbound] " << msg << '\n';
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DimensionMismatch:
    case ErrorCode::TrivialDimension: return kDimension;
    case ErrorCode::SingularProbe: return kSingularProbe;
    default: return kNumerical;
  }
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_text_file(path, text);
    log(LogLevel::Info, "wrote " + path);
  }
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(); }

// ---------------------------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string output;
  std::optional<std::uint64_t> seed;
  std::optional<double> step;
};

int cmd_sweep(const SweepArgs& args) {
  SweepConfig config = SweepConfig::defaults();
  try {
    if (!args.config.empty()) config = sweep_config_from_json(io::read_json_file(args.config));
    if (args.step) config.x_grid = unit_grid(*args.step);
    if (args.seed) config.seed = *args.seed;
    config.validate();
  } catch (const io::ParseError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kParse;
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kParse;
  }

  const auto start = std::chrono::steady_clock::now();
  std::vector<SweepRow> rows;
  try {
    rows = run_sweep(config);
  } catch (const SweepError& e) {
    std::cerr << "numerical failure at x = " << io::format_number(e.x()) << ": " << e.what() << '\n';
    return kNumerical;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log(LogLevel::Debug, std::to_string(rows.size()) + " points in " + std::to_string(seconds) + " s");
  emit(sweep_csv(rows), args.output);
  return kOk;
}

// ---------------------------------------------------------------------------

struct BoundArgs {
  std::string state;
  std::vector<std::string> channels;
  std::string side = "first";
  std::string probe;
  std::string method = "probe";
  std::string output;
};

int cmd_bound(const BoundArgs& args) {
  std::optional<io::LoadedState> loaded;
  std::vector<KrausChannel> channels;
  std::optional<ProbeState> probe;
  try {
    loaded = io::state_from_json(io::read_json_file(args.state));
    for (const auto& path : args.channels) channels.push_back(io::channel_from_json(io::read_json_file(path)));
    if (!args.probe.empty()) probe = io::probe_from_json(io::read_json_file(args.probe));
  } catch (const io::ParseError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kParse;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.code());
  }

  try {
    const DensityMatrix& rho = loaded->density;
    const Dims d = rho.dims();
    const bool two_sided = channels.size() == 2;
    const Subsystem side = args.side == "second" ? Subsystem::Second : Subsystem::First;
    if (!probe && d.square()) probe = ProbeState::canonical(d.first);
    if (!probe && args.method == "probe")
      throw Error(ErrorCode::DimensionMismatch, "probe method needs an N x N bipartition");

    const ChannelApplication direct = two_sided ? apply_two_sided(channels[0], channels[1], rho)
                                                : apply_one_sided(channels[0], rho, side);

    std::optional<ChannelApplication> ep1, ep2;
    std::optional<double> p_prime;
    if (probe) {
      if (two_sided) {
        ep1 = evolve_probe(channels[0], *probe, Subsystem::First);
        ep2 = evolve_probe(channels[1], *probe, Subsystem::Second);
        p_prime = ep1->probability * ep2->probability;
      } else {
        ep1 = evolve_probe(channels[0], *probe, side);
        p_prime = ep1->probability;
      }
    }

    BoundValue lower;
    double p = direct.probability;
    if (args.method == "probe") {
      if (two_sided) {
        lower = lower_bound_two_sided(rho, *ep1, *ep2, *probe);
        p = two_sided_probability(rho, *ep1, *ep2, *probe);
      } else {
        lower = lower_bound_one_sided(rho, *ep1, *probe, side);
        p = one_sided_probability(rho, *ep1, *probe, side);
      }
    } else {
      lower = fidelity_lower_bound(direct.output);
    }

    std::optional<double> exact, upper;
    if (d == Dims{2, 2}) {
      exact = wootters_concurrence(direct.output);
      const double c_in = loaded->pure ? concurrence_pure(*loaded->pure) : wootters_concurrence(rho);
      const double ratio = *p_prime / p;
      upper = two_sided ? upper_bound_two_sided(c_in, ep1->output, ep2->output, probe->matrix(), ratio).raw
                        : upper_bound_one_sided(c_in, ep1->output, probe->matrix(), ratio).raw;
    }

    Json report = {{"method", args.method},
                   {"lower_raw", lower.raw},
                   {"lower", lower.clamped},
                   {"exact", optional_number(exact)},
                   {"upper", optional_number(upper)},
                   {"p", p},
                   {"p_prime", optional_number(p_prime)},
                   {"p_t", p_prime ? Json(p / *p_prime) : Json()},
                   {"ill_conditioned", probe && probe->ill_conditioned()}};
    if (probe && probe->ill_conditioned())
      log(LogLevel::Info, "probe condition number " + io::format_number(probe->condition()) +
                              " exceeds 1e4; bound accuracy may degrade");
    emit(report.dump(2) + "\n", args.output);
    return kOk;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return exit_code_for(e.code());
  }
}

// ---------------------------------------------------------------------------

struct CheckArgs {
  std::string suite = "all";
  std::uint64_t seed = 0;
  int trials = 100;
  std::string output;
};

int cmd_check(const CheckArgs& args) {
  std::vector<PropertyResult> results;
  try {
    results = run_check_suite(args.suite, args.seed, args.trials);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kParse;
  }

  int failed = 0;
  Json report = Json::array();
  Json reproductions = Json::array();
  for (const auto& r : results) {
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << ": " << r.property << "  ["
              << (r.trials - r.failures) << "/" << r.trials << " passed, worst residual "
              << io::format_number(r.worst_residual) << ", tolerance " << io::format_number(r.tolerance)
              << "]\n";
    report.push_back({{"suite", r.suite},
                      {"property", r.property},
                      {"trials", r.trials},
                      {"failures", r.failures},
                      {"worst_residual", r.worst_residual},
                      {"tolerance", r.tolerance}});
    if (!r.passed()) {
      ++failed;
      if (r.reproduction) reproductions.push_back(*r.reproduction);
    }
  }
  std::cout << (failed == 0 ? "all properties hold" : std::to_string(failed) + " properties violated")
            << " (" << results.size() << " checked)\n";

  const std::string base = args.output.empty() ? "check-" + args.suite : args.output;
  if (!args.output.empty()) io::write_text_file(args.output, report.dump(2) + "\n");
  if (failed > 0) {
    const std::string path = base + ".repro.json";
    io::write_text_file(path, reproductions.dump(2) + "\n");
    std::cerr << "reproduction bundle written to " << path << '\n';
    return kPropertyViolation;
  }
  return kOk;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::vector<int> dims{2, 2};
  int rank = 0;
  bool pure = false;
  std::string family = "amplitude-damping";
  double param = 0.0;
  int dim = 2;
  int operators = 2;
  std::uint64_t seed = 0;
  std::string output;
};

int cmd_gen(const std::string& kind, const GenArgs& args) {
  try {
    Rng rng(args.seed);
    Json j;
    if (kind == "state") {
      if (args.dims.size() != 2 || args.dims[0] < 1 || args.dims[1] < 1)
        throw Error(ErrorCode::OutOfRange, "--dims takes two positive integers");
      const Dims d{args.dims[0], args.dims[1]};
      if (args.pure) {
        j = io::state_to_json(random_pure_state(d, rng));
      } else {
        j = io::state_to_json(random_density(d, args.rank == 0 ? d.total() : args.rank, rng));
      }
    } else if (kind == "channel") {
      if (args.family == "amplitude-damping") {
        j = io::channel_to_json(amplitude_damping(args.param));
      } else if (args.family == "depolarizing") {
        j = io::channel_to_json(depolarizing(args.param));
      } else if (args.family == "phase-damping") {
        j = io::channel_to_json(phase_damping(args.param));
      } else if (args.family == "random") {
        j = io::channel_to_json(random_channel(args.dim, args.operators, rng));
      } else {
        throw Error(ErrorCode::OutOfRange, "unknown channel family " + args.family);
      }
    } else {
      if (args.dim < 2) throw Error(ErrorCode::OutOfRange, "--dim must be at least 2");
      j = io::probe_to_json(ProbeState::random(args.dim, rng));
    }
    emit(j.dump(2) + "\n", args.output);
    return kOk;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kParse;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Concurrence bounds for bipartite states under Kraus channels"};
  app.require_subcommand(1);

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Lower bound, concurrence and upper bound along rho(x)");
  sweep_cmd->add_option("--config", sweep.config, "JSON sweep configuration");
  sweep_cmd->add_option("--output", sweep.output, "CSV output path (default stdout)");
  sweep_cmd->add_option("--seed", sweep.seed, "Seed recorded with the configuration");
  sweep_cmd->add_option("--step", sweep.step, "x grid step over [0, 1]");

  BoundArgs bound;
  auto* bound_cmd = app.add_subcommand("bound", "Bounds for one state under one or two channels");
  bound_cmd->add_option("state", bound.state, "State JSON")->required();
  bound_cmd->add_option("channels", bound.channels, "One channel JSON (one-sided) or two (two-sided)")
      ->required()
      ->expected(1, 2);
  bound_cmd->add_option("--side", bound.side, "Subsystem for a single channel")
      ->check(CLI::IsMember({"first", "second"}));
  bound_cmd->add_option("--probe-path", bound.probe, "Probe JSON (default canonical MES)");
  bound_cmd->add_option("--method", bound.method, "Lower-bound route")
      ->check(CLI::IsMember({"direct", "probe"}));
  bound_cmd->add_option("--output", bound.output, "Report path (default stdout)");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Run quantified property suites");
  std::vector<std::string> suites = check_suite_names();
  suites.push_back("all");
  check_cmd->add_option("suite", check.suite, "Suite name")->check(CLI::IsMember(suites));
  check_cmd->add_option("--seed", check.seed, "Base seed");
  check_cmd->add_option("--trials", check.trials, "Trials per property")->check(CLI::PositiveNumber);
  check_cmd->add_option("--output", check.output, "JSON report path");

  GenArgs gen;
  std::string gen_kind;
  auto* gen_cmd = app.add_subcommand("gen", "Write a random or named state, channel or probe as JSON");
  gen_cmd->add_option("kind", gen_kind, "state | channel | probe")
      ->required()
      ->check(CLI::IsMember({"state", "channel", "probe"}));
  gen_cmd->add_option("--dims", gen.dims, "State dimensions N1 N2")->expected(2);
  gen_cmd->add_option("--rank", gen.rank, "Density matrix rank (default full)");
  gen_cmd->add_flag("--pure", gen.pure, "Emit a pure state");
  gen_cmd->add_option("--family", gen.family, "Channel family")
      ->check(CLI::IsMember({"amplitude-damping", "depolarizing", "phase-damping", "random"}));
  auto* gamma = gen_cmd->add_option("--gamma", gen.param, "Channel parameter in [0, 1]");
  gen_cmd->add_option("--param", gen.param, "Alias of --gamma")->excludes(gamma);
  gen_cmd->add_option("--dim", gen.dim, "Channel or probe dimension");
  gen_cmd->add_option("--operators", gen.operators, "Kraus operator count (random family)");
  gen_cmd->add_option("--seed", gen.seed, "Seed");
  gen_cmd->add_option("--output", gen.output, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*sweep_cmd) return cmd_sweep(sweep);
    if (*bound_cmd) return cmd_bound(bound);
    if (*check_cmd) return cmd_check(check);
    if (*gen_cmd) return cmd_gen(gen_kind, gen);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kOk;
}
