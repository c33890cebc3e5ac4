// Copyright 2026 The gaussent Authors
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

#include "cli.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gaussent/channels.hpp"
#include "gaussent/entanglement.hpp"
#include "gaussent/fock.hpp"
#include "gaussent/protocols.hpp"
#include "gaussent/state_file.hpp"
#include "gaussent/symplectic.hpp"

namespace gaussent::cli {
namespace {

// Fixed six-decimal rendering; -0.000000 prints as 0.000000.
std::string num(double x) {
  std::string s = fmt::format("{:.6f}", x);
  if (s == "-0.000000") s.erase(0, 1);
  return s;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) s += '\t';
    s += num(xs[i]);
  }
  return s;
}

std::uint64_t default_seed() {
  const char* env = std::getenv(kSeedEnv);
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0') throw StructuralError(fmt::format("{}='{}' is not an unsigned integer", kSeedEnv, env));
  return v;
}

// Explicit flag, then the file's labels, then an even A|B split.
ModePartition resolve_partition(const StateFile& f, const std::string& flag) {
  if (!flag.empty()) {
    auto p = ModePartition::parse(flag);
    if (p.modes() != f.modes()) {
      throw StructuralError(fmt::format("partition '{}' has {} labels for {} modes", flag, p.modes(), f.modes()));
    }
    return p;
  }
  if (f.partition) return *f.partition;
  if (f.modes() % 2 != 0) {
    throw StructuralError(fmt::format("{} modes: pass --partition", f.modes()));
  }
  return ModePartition::split(f.modes() / 2, f.modes() / 2);
}

void emit_state(const GaussianState& s, const std::optional<ModePartition>& p, const std::string& path,
                std::ostream& out) {
  if (path.empty() || path == "-") {
    out << format_state_file(s, p);
  } else {
    write_state_file(path, s, p);
  }
}

struct Args {
  std::string state;
  std::string partition;
  std::vector<std::string> witness;
  std::vector<std::string> glocc;
  std::vector<std::string> locc;
  std::optional<double> attenuation;
  std::string channel_file;
  std::string output;
  int mode = 0;
  std::string homodyne;
  bool vacuum = false;
  int trials = 1000;
  std::optional<std::uint64_t> seed;
  double r = 0.3;
  std::optional<double> v;
  int iters = 2;
  int cutoff = 12;
  int restarts = 8;
  std::int64_t kmax = 1000000;
};

int cmd_validate(const Args& a, std::ostream& out, std::ostream& err) {
  const auto f = read_state_file(a.state);
  const auto rep = validate_covariance(f.gamma);
  out << "valid\t" << (rep.valid ? "true" : "false") << '\n';
  out << "min_eigenvalue\t" << num(rep.min_uncertainty_eigenvalue) << '\n';
  out << "symplectic_eigenvalues\t" << join(rep.symplectic_eigenvalues) << '\n';
  if (!rep.valid) {
    fmt::print(err, "error: gamma + i sigma has eigenvalue {} < 0\n", num(rep.min_uncertainty_eigenvalue));
    return kExitPhysical;
  }
  return kExitOk;
}

int cmd_negativity(const Args& a, std::ostream& out) {
  const auto f = read_state_file(a.state);
  const auto s = f.state();
  out << num(log_negativity_gaussian(s.cov(), resolve_partition(f, a.partition))) << '\n';
  return kExitOk;
}

int cmd_separability(const Args& a, std::ostream& out) {
  const auto f = read_state_file(a.state);
  const auto s = f.state();
  const auto p = resolve_partition(f, a.partition);
  const auto rep = ppt_verdict(s.cov(), p);
  out << "verdict\t" << (rep.verdict == PptVerdict::Ppt ? "PPT" : "NPT") << '\n';
  out << "min_eigenvalue\t" << num(rep.min_eigenvalue) << '\n';
  out << "ppt_implies_separable\t" << (rep.ppt_implies_separable ? "true" : "false") << '\n';
  if (!a.witness.empty()) {
    const Matrix ga = read_matrix_file(a.witness.at(0));
    const Matrix gb = read_matrix_file(a.witness.at(1));
    const bool ok = separability_witness_verify(s.cov(), ga, gb, p);
    out << "witness\t" << (ok ? "verified" : "rejected") << '\n';
  }
  return kExitOk;
}

int cmd_schmidt(const Args& a, std::ostream& out) {
  const auto f = read_state_file(a.state);
  const auto s = f.state();
  const auto nf = schmidt_normal_form(s.cov(), resolve_partition(f, a.partition));
  out << "k\tr\n";
  for (Eigen::Index k = 0; k < nf.r.size(); ++k) out << k << '\t' << num(nf.r(k)) << '\n';
  return kExitOk;
}

int cmd_convert(const Args& a, std::ostream& out) {
  if (a.glocc.empty() == a.locc.empty()) throw StructuralError("convert needs exactly one of --glocc, --locc");
  bool ok = false;
  if (!a.glocc.empty()) {
    const auto r = read_vector_file(a.glocc.at(0));
    const auto rp = read_vector_file(a.glocc.at(1));
    for (double x : r) {
      if (x < 0) throw StructuralError("squeezing parameters must be non-negative");
    }
    ok = glocc_convertible(r, rp);
  } else {
    ok = locc_convertible_pure(read_vector_file(a.locc.at(0)), read_vector_file(a.locc.at(1)));
  }
  out << "convertible\t" << (ok ? "true" : "false") << '\n';
  return kExitOk;
}

int cmd_channel_apply(const Args& a, std::ostream& out) {
  const auto f = read_state_file(a.state);
  const auto s = f.state();
  if (a.attenuation.has_value() == !a.channel_file.empty()) {
    throw StructuralError("channel apply needs exactly one of --attenuation, --file");
  }
  const GaussianChannel ch =
      a.attenuation ? attenuation_channel(*a.attenuation, s.modes()) : read_channel_file(a.channel_file);
  const auto result = apply_channel(s, ch);
  std::optional<ModePartition> p;
  if (f.partition && result.modes() == s.modes()) p = f.partition;
  emit_state(result, p, a.output, out);
  return kExitOk;
}

int cmd_measure(const Args& a, std::ostream& out, std::ostream& err) {
  const auto f = read_state_file(a.state);
  const auto s = f.state();
  if (a.vacuum == !a.homodyne.empty()) throw StructuralError("measure needs exactly one of --homodyne, --vacuum");
  if (a.mode < 0 || a.mode >= s.modes()) {
    throw StructuralError(fmt::format("--mode {} out of range for {} modes", a.mode, s.modes()));
  }
  if (s.modes() < 2) throw StructuralError("measure needs at least two modes");
  std::optional<ModePartition> p;
  if (f.partition) {
    auto parties = f.partition->parties();
    parties.erase(parties.begin() + a.mode);
    p = ModePartition(parties);
  }
  if (a.vacuum) {
    const auto c = vacuum_project(s, a.mode);
    emit_state(c.state, p, a.output, out);
    const std::string line = "probability\t" + num(c.probability) + '\n';
    if (a.output.empty() || a.output == "-") {
      err << line;
    } else {
      out << line;
    }
    return kExitOk;
  }
  Quadrature q = Quadrature::X;
  if (a.homodyne == "X" || a.homodyne == "x") {
    q = Quadrature::X;
  } else if (a.homodyne == "P" || a.homodyne == "p") {
    q = Quadrature::P;
  } else {
    throw StructuralError(fmt::format("--homodyne expects X or P, got '{}'", a.homodyne));
  }
  emit_state(homodyne_condition(s, a.mode, q), p, a.output, out);
  return kExitOk;
}

int cmd_nogo(const Args& a, std::ostream& out) {
  const auto f = read_state_file(a.state);
  const auto s = f.state();
  if (s.modes() != 2) throw StructuralError("distill nogo needs a two-mode state");
  if (a.trials < 1) throw StructuralError("--trials must be positive");
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  const auto res = no_go_monte_carlo(s.cov(), a.trials, seed);
  out << "initial_log_negativity\t" << num(log_negativity_gaussian(s.cov(), ModePartition::split(1, 1))) << '\n';
  out << "trials\t" << a.trials << '\n';
  out << "seed\t" << seed << '\n';
  out << "max_gain\t" << num(res.max_gain) << '\n';
  out << "mean_gain\t" << num(res.mean_gain) << '\n';
  out << "argmax_trial\t" << res.argmax_trial << '\n';
  return kExitOk;
}

int cmd_pipeline(const Args& a, std::ostream& out, std::ostream& err) {
  if (a.r < 0) throw StructuralError("--r must be non-negative");
  if (a.iters < 0) throw StructuralError("--iters must be non-negative");
  if (a.cutoff < 2) throw StructuralError("--cutoff must be at least 2");
  DistillationTrace trace;
  double v = 0.0;
  if (a.v) {
    v = *a.v;
    trace = distill_pipeline(a.r, v, a.iters, a.cutoff);
  } else {
    auto tuned = tune_transmissivity(a.r, a.iters, a.cutoff);
    v = tuned.v;
    trace = std::move(tuned.trace);
  }
  fmt::print(err, "V\t{}\ninitial_log_negativity\t{}\n", num(v), num(trace.initial_log_negativity));
  out << "iteration\tlog_negativity\tp_success\tcumulative_p\tgaussianity_distance\ttail_mass\n";
  for (const auto& rec : trace.records) {
    out << rec.iteration << '\t' << num(rec.log_negativity) << '\t' << num(rec.probability) << '\t'
        << num(rec.cumulative_probability) << '\t' << num(rec.gaussianity_distance) << '\t'
        << fmt::format("{:.6e}", rec.tail_mass) << '\n';
  }
  return kExitOk;
}

int cmd_passive_max(const Args& a, std::ostream& out) {
  const auto f = read_state_file(a.state);
  const auto s = f.state();
  out << "bound\t" << num(passive_max_entanglement(s.cov())) << '\n';
  return kExitOk;
}

int cmd_passive_optimize(const Args& a, std::ostream& out) {
  const auto f = read_state_file(a.state);
  const auto s = f.state();
  if (a.restarts < 1) throw StructuralError("--restarts must be positive");
  const std::uint64_t seed = a.seed ? *a.seed : default_seed();
  const auto opt = passive_optimizer(s.cov(), a.restarts, seed);
  out << "bound\t" << num(passive_max_entanglement(s.cov())) << '\n';
  out << "achieved\t" << num(opt.log_negativity) << '\n';
  out << "modes\t" << opt.mode_a << '\t' << opt.mode_b << '\n';
  return kExitOk;
}

int cmd_continuity(const Args& a, std::ostream& out) {
  if (a.kmax < 10) throw StructuralError("--kmax must be at least 10");
  out << "k\tepsilon\ttrace_distance\tentanglement\tmean_energy\n";
  for (std::int64_t k = 10; k <= a.kmax; k *= 10) {
    const auto pt = continuity_demo(k);
    out << k << '\t' << fmt::format("{:.6e}", pt.epsilon) << '\t' << num(pt.trace_distance) << '\t'
        << num(pt.entanglement) << '\t' << num(pt.mean_energy) << '\n';
    if (k > a.kmax / 10) break;
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian-state entanglement toolkit", "gaussent"};
  app.require_subcommand(1);
  Args a;

  auto* validate = app.add_subcommand("validate", "Check the uncertainty relation of a state file");
  validate->add_option("state", a.state, "State file")->required();

  auto* negativity = app.add_subcommand("negativity", "Logarithmic negativity");
  negativity->add_option("state", a.state, "State file")->required();
  negativity->add_option("--partition", a.partition, "Party label per mode, e.g. AB or AABB");

  auto* separability = app.add_subcommand("separability", "PPT verdict and optional witness check");
  separability->add_option("state", a.state, "State file")->required();
  separability->add_option("--partition", a.partition, "Party label per mode");
  separability->add_option("--witness", a.witness, "Covariance files gamma_A gamma_B")->expected(2);

  auto* schmidt = app.add_subcommand("schmidt", "Two-mode squeezing parameters of a pure state");
  schmidt->add_option("state", a.state, "State file")->required();
  schmidt->add_option("--partition", a.partition, "Party label per mode");

  auto* convert = app.add_subcommand("convert", "Pure-state convertibility");
  convert->add_option("--glocc", a.glocc, "Squeezing vectors r r'")->expected(2);
  convert->add_option("--locc", a.locc, "Schmidt vectors alpha alpha'")->expected(2);

  auto* channel = app.add_subcommand("channel", "Gaussian channels");
  channel->require_subcommand(1);
  auto* channel_apply = channel->add_subcommand("apply", "Apply a channel and write the output state");
  channel_apply->add_option("state", a.state, "State file")->required();
  channel_apply->add_option("--attenuation", a.attenuation, "Pure loss with transmissivity eta on every mode");
  channel_apply->add_option("--file", a.channel_file, "Channel file");
  channel_apply->add_option("-o,--output", a.output, "Output state file (default stdout)");

  auto* measure = app.add_subcommand("measure", "Condition on a measurement of one mode");
  measure->add_option("state", a.state, "State file")->required();
  measure->add_option("--mode", a.mode, "Measured mode, counted from 0")->required();
  measure->add_option("--homodyne", a.homodyne, "Measured quadrature X or P");
  measure->add_flag("--vacuum", a.vacuum, "Project onto the vacuum");
  measure->add_option("-o,--output", a.output, "Output state file (default stdout)");

  auto* distill = app.add_subcommand("distill", "Distillation protocols");
  distill->require_subcommand(1);
  auto* nogo = distill->add_subcommand("nogo", "Random Gaussian LOCC protocols on two copies");
  nogo->add_option("state", a.state, "Two-mode state file")->required();
  nogo->add_option("--trials", a.trials, "Number of random protocols");
  nogo->add_option("--seed", a.seed, "Seed (default from GAUSSENT_SEED, else 1)");
  auto* pipeline = distill->add_subcommand("pipeline", "Click step followed by Gaussification");
  pipeline->add_option("--r", a.r, "Squeezing of the input pairs");
  pipeline->add_option("--V", a.v, "Beam-splitter amplitude transmissivity (default: best on a grid)");
  pipeline->add_option("--iters", a.iters, "Gaussification iterations");
  pipeline->add_option("--cutoff", a.cutoff, "Photon cutoff per mode");

  auto* passive = app.add_subcommand("passive", "Entanglement from passive transformations");
  passive->require_subcommand(1);
  auto* passive_max = passive->add_subcommand("max", "Closed-form bound");
  passive_max->add_option("state", a.state, "State file")->required();
  auto* passive_opt = passive->add_subcommand("optimize", "Numerical optimum over passive unitaries");
  passive_opt->add_option("state", a.state, "State file")->required();
  passive_opt->add_option("--restarts", a.restarts, "Random restarts");
  passive_opt->add_option("--seed", a.seed, "Seed (default from GAUSSENT_SEED, else 1)");

  auto* demo = app.add_subcommand("demo", "Demonstrations");
  demo->require_subcommand(1);
  auto* continuity = demo->add_subcommand("continuity", "Energy-unbounded family near the product state");
  continuity->add_option("--kmax", a.kmax, "Largest k (rows at k = 10, 100, ...)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitStructural;
  }

  try {
    if (*validate) return cmd_validate(a, out, err);
    if (*negativity) return cmd_negativity(a, out);
    if (*separability) return cmd_separability(a, out);
    if (*schmidt) return cmd_schmidt(a, out);
    if (*convert) return cmd_convert(a, out);
    if (*channel_apply) return cmd_channel_apply(a, out);
    if (*measure) return cmd_measure(a, out, err);
    if (*nogo) return cmd_nogo(a, out);
    if (*pipeline) return cmd_pipeline(a, out, err);
    if (*passive_max) return cmd_passive_max(a, out);
    if (*passive_opt) return cmd_passive_optimize(a, out);
    if (*continuity) return cmd_continuity(a, out);
  } catch (const StructuralError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitStructural;
  } catch (const PhysicalError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitPhysical;
  } catch (const InfeasibleError& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    fmt::print(err, "error: {}\n", e.what());
    return kExitStructural;
  }
  return kExitStructural;
}

}  // namespace gaussent::cli
