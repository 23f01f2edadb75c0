#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <random>
#include <thread>

#include "tbackup/errors.hpp"
#include "tbackup/generator.hpp"
#include "tbackup/io.hpp"
#include "tbackup/logging.hpp"
#include "tbackup/multiflow.hpp"
#include "tbackup/pipeline.hpp"

namespace fs = std::filesystem;
using namespace tbackup;

namespace {

enum Exit { kOk = 0, kInternal = 1, kInfeasible = 2, kInput = 3 };

struct Outcome {
  int code = kOk;
  std::string text;   // primary output
  std::string error;  // message for stderr
};

template <typename F>
Outcome guarded(F&& body) {
  Outcome out;
  try {
    out.text = body();
  } catch (const ParseError& e) {
    out = {kInput, "", std::string("parse error: ") + e.what()};
  } catch (const InvalidInstance& e) {
    out = {kInput, "", std::string("invalid input: ") + e.what()};
  } catch (const Infeasible& e) {
    out = {kInfeasible, "", std::string("infeasible: ") + e.what()};
  } catch (const InternalError& e) {
    out = {kInternal, "", std::string("internal assertion failed: ") + e.what()};
  } catch (const std::exception& e) {
    out = {kInternal, "", std::string("error: ") + e.what()};
  }
  return out;
}

Instance load(const std::string& path, const std::string& mode) {
  Instance inst = read_instance_file(path);
  if (mode == "edge") return inst.with_mode(Mode::Edge);
  if (mode == "node") return inst.with_mode(Mode::Node);
  return inst;
}

std::string run_solve(const std::string& path, const std::string& mode, bool lp_only, bool trace,
                      std::uint64_t seed) {
  Instance inst = load(path, mode);
  SolveOptions opt;
  opt.lp_only = lp_only;
  opt.seed = seed;
  SolveResult res = solve(inst, opt);
  SolutionFile sol = make_solution_file(inst, res, lp_only);
  if (trace) sol.trace = trace_lines(inst, res);
  return format_solution(sol);
}

int emit(const Outcome& o, const std::string& output) {
  if (!o.error.empty()) std::cerr << o.error << "\n";
  if (o.code != kOk) return o.code;
  if (output.empty() || output == "-") {
    std::cout << o.text;
  } else {
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << output << "\n";
      return kInput;
    }
    f << o.text;
  }
  return kOk;
}

int run_batch(const std::string& dir, const std::string& out_dir, const std::string& mode, bool lp_only,
              bool trace, std::uint64_t seed, unsigned threads) {
  std::vector<fs::path> files;
  for (const auto& ent : fs::directory_iterator(dir)) {
    if (ent.is_regular_file() && ent.path().extension() == ".tb") files.push_back(ent.path());
  }
  std::sort(files.begin(), files.end());
  if (!out_dir.empty()) fs::create_directories(out_dir);
  std::vector<Outcome> results(files.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < files.size();) {
      results[i] = guarded([&] { return run_solve(files[i].string(), mode, lp_only, trace, seed); });
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(files.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  int worst = kOk;
  for (size_t i = 0; i < files.size(); ++i) {
    const auto& r = results[i];
    std::string name = files[i].filename().string();
    if (r.code != kOk) {
      std::cout << name << " exit " << r.code << " " << r.error << "\n";
      worst = std::max(worst, r.code == kInternal ? 4 : r.code);
      continue;
    }
    auto sol = parse_solution(r.text);
    std::cout << name << " cost " << to_string(sol.cost) << " lp_bound " << to_string(sol.lp_bound) << " ratio "
              << to_string(sol.ratio) << "\n";
    if (!out_dir.empty()) {
      std::ofstream f(fs::path(out_dir) / files[i].filename().replace_extension(".sol"), std::ios::binary);
      f << r.text;
    }
  }
  return worst == 4 ? kInternal : worst;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging_from_env();
  CLI::App app{"Terminal backup solver: LP relaxation, half-integral rounding, multiflows"};
  app.require_subcommand(1);

  std::string mode;
  auto add_mode = [&](CLI::App* sub) {
    sub->add_option("--mode", mode, "Override the instance mode")->check(CLI::IsMember({"edge", "node"}));
  };

  std::string input, output, batch, out_dir;
  bool lp_only = false, trace = false;
  std::uint64_t seed = 0;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance and print the solution file");
  solve_cmd->add_option("instance", input, "Instance file");
  add_mode(solve_cmd);
  solve_cmd->add_flag("--lp-only", lp_only, "Stop after the half-integral LP optimum");
  solve_cmd->add_flag("--trace", trace, "Append the laminar family and cycle labelings");
  solve_cmd->add_option("--seed", seed, "Variable-fixing order seed (0 = ascending edge ids)");
  solve_cmd->add_option("-o,--output", output, "Write the solution here instead of stdout");
  auto* batch_opt = solve_cmd->add_option("--batch", batch, "Solve every *.tb file in a directory");
  solve_cmd->add_option("--out-dir", out_dir, "Batch: directory for .sol files")->needs(batch_opt);
  solve_cmd->add_option("--threads", threads, "Batch: worker threads")->needs(batch_opt);

  auto* mf_cmd = app.add_subcommand("multiflow", "Half-integral min-cost multiflow of the LP optimum");
  mf_cmd->add_option("instance", input, "Instance file")->required();
  add_mode(mf_cmd);
  mf_cmd->add_option("-o,--output", output, "Write the listing here instead of stdout");

  std::string solution;
  auto* verify_cmd = app.add_subcommand("verify", "Re-check a solution file against its instance");
  verify_cmd->add_option("instance", input, "Instance file")->required();
  verify_cmd->add_option("solution", solution, "Solution file")->required();

  std::string overlay = "none";
  auto* dot_cmd = app.add_subcommand("export-dot", "Graphviz rendering of an instance");
  dot_cmd->add_option("instance", input, "Instance file")->required();
  add_mode(dot_cmd);
  dot_cmd->add_option("--overlay", overlay, "none, lp, solution or laminar")
      ->check(CLI::IsMember({"none", "lp", "solution", "laminar"}));
  dot_cmd->add_option("-o,--output", output, "Write DOT here instead of stdout");

  int count = 1;
  GeneratorParams gp;
  auto* gen_cmd = app.add_subcommand("generate", "Write random feasible instances");
  gen_cmd->add_option("--seed", seed, "Generator seed");
  gen_cmd->add_option("--count", count, "Number of instances")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--min-nodes", gp.min_nodes)->check(CLI::Range(2, 64));
  gen_cmd->add_option("--max-nodes", gp.max_nodes)->check(CLI::Range(2, 64));
  gen_cmd->add_option("--max-requirement", gp.max_requirement)->check(CLI::Range(1, 8));
  add_mode(gen_cmd);
  gen_cmd->add_option("--out-dir", out_dir, "Directory for NNN.tb files (stdout when one instance)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  if (solve_cmd->parsed()) {
    if (!batch.empty()) return run_batch(batch, out_dir, mode, lp_only, trace, seed, threads);
    if (input.empty()) {
      std::cerr << "solve needs an instance file or --batch\n";
      return kInput;
    }
    return emit(guarded([&] { return run_solve(input, mode, lp_only, trace, seed); }), output);
  }

  if (mf_cmd->parsed()) {
    return emit(guarded([&] {
                  Instance inst = load(input, mode);
                  SolveOptions opt;
                  opt.lp_only = true;
                  SolveResult res = solve(inst, opt);
                  bool node = inst.mode() == Mode::Node;
                  if (node) std::cerr << "warning: node mode; multiflow uses edge connectivity of x\n";
                  auto mf = extract_multiflow(inst, res.half_integral, node);
                  auto rep = verify_multiflow(inst, mf.flow);
                  if (!rep.ok) throw InternalError("extracted multiflow fails verification: " + rep.violations[0]);
                  std::string text = format_multiflow(mf.flow, rep.cost);
                  text += "lp_bound " + to_string(res.lp_bound) + "\n";
                  if (mf.stats.removals > 0) text += "removals " + std::to_string(mf.stats.removals) + "\n";
                  return text;
                }),
                output);
  }

  if (verify_cmd->parsed()) {
    Outcome o = guarded([&] {
      Instance inst = read_instance_file(input);
      std::ifstream f(solution, std::ios::binary);
      if (!f) throw ParseError(0, "cannot open " + solution);
      std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
      SolutionFile sol = parse_solution(text);
      if (sol.mode != inst.mode()) inst = inst.with_mode(sol.mode);
      auto chk = check_solution(inst, sol);
      std::string out = chk.ok ? "feasible" : "infeasible";
      out += " cost " + to_string(sol.x.dot(inst.costs())) + "\n";
      for (const auto& m : chk.messages) out += "  " + m + "\n";
      if (!chk.ok) throw Infeasible(out);
      return out;
    });
    if (o.code == kInfeasible) {
      std::cout << o.error.substr(std::string("infeasible: ").size());
      return kInfeasible;
    }
    return emit(o, "");
  }

  if (dot_cmd->parsed()) {
    return emit(guarded([&] {
                  Instance inst = load(input, mode);
                  Overlay ov = *parse_overlay(overlay);
                  if (ov == Overlay::None) return export_dot(inst, ov);
                  SolveOptions opt;
                  opt.lp_only = ov == Overlay::Lp;
                  SolveResult res = solve(inst, opt);
                  return export_dot(inst, ov, &res);
                }),
                output);
  }

  if (gen_cmd->parsed()) {
    if (gp.min_nodes > gp.max_nodes) {
      std::cerr << "--min-nodes exceeds --max-nodes\n";
      return kInput;
    }
    if (mode == "edge") gp.mode = Mode::Edge;
    if (mode == "node") gp.mode = Mode::Node;
    std::mt19937_64 rng(seed);
    if (!out_dir.empty()) fs::create_directories(out_dir);
    for (int i = 0; i < count; ++i) {
      auto g = random_feasible_instance(rng, gp);
      std::string text = format_instance(g.instance);
      if (out_dir.empty()) {
        if (count > 1) std::cout << "# instance " << i << "\n";
        std::cout << text;
      } else {
        char name[32];
        std::snprintf(name, sizeof name, "%03d.tb", i);
        std::ofstream(fs::path(out_dir) / name, std::ios::binary) << text;
      }
    }
    return kOk;
  }
  return kInput;
}
