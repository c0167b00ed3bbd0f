// Copyright 2026 The qpure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qpure/cli.hpp"

#include <CLI11.hpp>

#include "qpure/io.hpp"
#include "qpure/qpure.hpp"

namespace qpure::cli {
namespace {

using io::json;
using State = DensityOperator<double>;

// Dimension conflicts between otherwise valid inputs.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require_dims(const State& a, const State& b) {
  if (a.dim() != b.dim())
    throw UsageError("states have different dimensions (" + std::to_string(a.dim()) +
                     " vs " + std::to_string(b.dim()) + ")");
}

json angles_json(const RVector<double>& a) {
  json out = json::array();
  for (Eigen::Index i = 0; i < a.size(); ++i) out.push_back(a(i));
  return out;
}

void emit(std::ostream& out, const json& j) { out << io::dump(j) << "\n"; }

void write_or_print(const std::string& path, const json& j, std::ostream& out) {
  if (path.empty())
    emit(out, j);
  else
    io::write_file(path, j);
}

int cmd_gen(long dim, long rank, std::uint64_t seed, const std::string& path,
            std::ostream& out, std::ostream& err) {
  if (dim < 1 || rank < 1 || rank > dim) {
    err << "gen: need 1 <= rank <= dim\n";
    return kUsage;
  }
  write_or_print(path, io::to_json(random_density<double>(dim, rank, seed)), out);
  return kOk;
}

json analysis(const State& a, const State& b) {
  const auto jd = jordan(a, b);
  return {{"trace_distance", trace_distance(a, b)},
          {"wcd", wcd(jd)},
          {"jordan_angles", angles_json(jd.angles)},
          {"p_med", p_med(a, b)},
          {"p_wcd", p_wcd(a, b)},
          {"two_state_criterion", to_string(two_state_criterion(a, b))}};
}

int cmd_analyze(const std::string& f1, const std::string& f2, std::ostream& out) {
  const auto a = io::read_state(f1);
  const auto b = io::read_state(f2);
  require_dims(a, b);
  emit(out, analysis(a, b));
  return kOk;
}

int cmd_purify(const std::string& f1, const std::string& f2, const std::string& path,
               std::ostream& out) {
  const auto a = io::read_state(f1);
  const auto b = io::read_state(f2);
  require_dims(a, b);
  const auto bundle = optimal_purifier(a, b);
  write_or_print(path, io::to_json(bundle.full), out);
  if (!path.empty())
    emit(out, {{"achieved_distance", bundle.achieved_distance},
               {"wcd", wcd(bundle.jordan)},
               {"aux_dim", bundle.aux_dim},
               {"kraus_count", bundle.full.kraus().size()}});
  return kOk;
}

int cmd_check(const std::string& f, std::ostream& out) {
  const auto ch = io::read_channel(f);
  const auto rep = validate(ch);
  emit(out, {{"ok", rep.ok},
             {"deviation", rep.deviation},
             {"trace_preserving", ch.trace_preserving()},
             {"dim_in", ch.dim_in()},
             {"dim_out", ch.dim_out()},
             {"kraus_count", ch.kraus().size()}});
  return rep.ok ? kOk : kNegative;
}

int cmd_apply(const std::string& fc, const std::string& fs, const std::string& path,
              std::ostream& out) {
  const auto ch = io::read_channel(fc);
  const auto rho = io::read_state(fs);
  if (rho.dim() != ch.dim_in()) throw UsageError("state dimension differs from channel dim_in");
  const CMatrix<double> y = qpure::apply(ch, rho);
  const double tr = y.trace().real();
  if (!path.empty()) io::write_file(path, io::to_json(State(y)));
  emit(out, {{"dims", json::array({ch.dim_out()})},
             {"trace", tr},
             {"purity", purity(y)},
             {"output", io::matrix_to_json(y)}});
  return kOk;
}

int cmd_bound(const std::vector<std::string>& files, std::ostream& out) {
  const auto r1 = io::read_state(files[0]);
  const auto r2 = io::read_state(files[1]);
  const auto s1 = io::read_state(files[2]);
  const auto s2 = io::read_state(files[3]);
  require_dims(r1, r2);
  require_dims(s1, s2);
  const auto b = product_bound(r1, r2, s1, s2);
  emit(out, {{"lhs", b.lhs},
             {"rhs", b.rhs},
             {"wcd", wcd(r1, r2)},
             {"sigma_distance", trace_distance(s1, s2)},
             {"holds", b.holds()}});
  return b.holds() ? kOk : kNegative;
}

int cmd_usd(const std::vector<std::string>& files, std::ostream& out) {
  std::vector<State> states;
  for (const auto& f : files) states.push_back(io::read_state(f));
  for (const auto& s : states) require_dims(states.front(), s);
  const StateSet<double> ms(std::move(states));
  const auto rep = usd_feasibility(ms);
  json j = {{"feasible", rep.feasible}, {"defects", rep.defects}};
  if (rep.feasible) {
    try {
      j["success_probabilities"] = usd_purifier_demo(ms).success;
    } catch (const Error& e) {
      if (e.code() != Errc::Unsupported) throw;
    }
  }
  emit(out, j);
  return rep.feasible ? kOk : kNegative;
}

int cmd_counterexample(double p, const std::string& out1, const std::string& out2,
                       std::ostream& out, std::ostream& err) {
  if (!(p > 0.0 && p < 0.5)) {
    err << "counterexample: p must lie in (0, 1/2)\n";
    return kUsage;
  }
  const auto [r1, r2] = counter_example(p);
  if (!out1.empty()) io::write_file(out1, io::to_json(r1));
  if (!out2.empty()) io::write_file(out2, io::to_json(r2));
  json j = analysis(r1, r2);
  const auto nc = necessary_criteria(StateSet<double>({r1, r2}));
  j["p"] = p;
  j["same_spectrum"] = nc.same_spectrum;
  j["degenerate_angles"] = nc.degenerate_angles;
  emit(out, j);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qpure: purifying and reversible quantum channels"};
  app.require_subcommand(1);

  long dim = 0, rank = 0;
  std::uint64_t seed = 0;
  double p = 0.25;
  std::string out_path, out1, out2, file1, file2, channel_file;
  std::vector<std::string> files;

  auto* gen = app.add_subcommand("gen", "random Ginibre density operator");
  gen->add_option("--dim", dim, "Hilbert space dimension")->required();
  gen->add_option("--rank", rank, "rank of the state")->required();
  gen->add_option("--seed", seed, "xoshiro256** seed");
  gen->add_option("-o,--out", out_path, "output file (stdout if omitted)");

  auto* analyze = app.add_subcommand("analyze", "distances and Jordan angles of two states");
  analyze->add_option("state1", file1)->required();
  analyze->add_option("state2", file2)->required();

  auto* purify = app.add_subcommand("purify", "optimal purifying channel for two states");
  purify->add_option("state1", file1)->required();
  purify->add_option("state2", file2)->required();
  purify->add_option("-o,--out", out_path, "channel file (stdout if omitted)");

  auto* check = app.add_subcommand("check", "validate a channel file");
  check->add_option("channel", channel_file)->required();

  auto* apply_cmd = app.add_subcommand("apply", "apply a channel to a state");
  apply_cmd->add_option("channel", channel_file)->required();
  apply_cmd->add_option("state", file1)->required();
  apply_cmd->add_option("-o,--out", out_path, "write the output state");

  auto* bound = app.add_subcommand("bound", "product-state trace distance bound");
  bound->add_option("states", files, "rho1 rho2 sigma1 sigma2")->required()->expected(4);

  auto* usd = app.add_subcommand("usd", "unambiguous discrimination feasibility");
  usd->add_option("states", files, "two or more state files")->required()->expected(2, -1);

  auto* counter = app.add_subcommand("counterexample", "same spectra, degenerate angles, not essentially pure");
  counter->add_option("--p", p, "mixing weight in (0, 1/2)");
  counter->add_option("--out1", out1, "write rho1");
  counter->add_option("--out2", out2, "write rho2");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(dim, rank, seed, out_path, out, err);
    if (analyze->parsed()) return cmd_analyze(file1, file2, out);
    if (purify->parsed()) return cmd_purify(file1, file2, out_path, out);
    if (check->parsed()) return cmd_check(channel_file, out);
    if (apply_cmd->parsed()) return cmd_apply(channel_file, file1, out_path, out);
    if (bound->parsed()) return cmd_bound(files, out);
    if (usd->parsed()) return cmd_usd(files, out);
    if (counter->parsed()) return cmd_counterexample(p, out1, out2, out, err);
  } catch (const io::FormatError& e) {
    err << e.what() << "\n";
    return kMalformed;
  } catch (const UsageError& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return kMalformed;
  }
  return kUsage;
}

}  // namespace qpure::cli
