#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tbackup/edge_vector.hpp"
#include "tbackup/instance.hpp"
#include "tbackup/multiflow.hpp"
#include "tbackup/pipeline.hpp"

namespace tbackup {

/// Instance text:
///   nodes N
///   terminals t1:r1 t2:r2 ...
///   mode edge|node
///   u v cost capacity|inf      (one line per edge, cost p or p/q)
/// '#' starts a comment. Throws ParseError with the offending line number.
Instance parse_instance(std::string_view text);
Instance read_instance_file(const std::string& path);
std::string format_instance(const Instance& inst);

struct SolutionFile {
  Mode mode = Mode::Edge;
  /// "rounded" for an integer solution, "lp" for the half-integral optimum.
  std::string kind = "rounded";
  EdgeVector x;
  /// Endpoints per edge id, checked against the instance on verify.
  std::vector<std::pair<int, int>> ends;
  Rational cost;
  Rational lp_bound;
  Rational ratio;
  std::vector<std::string> trace;
  std::vector<MultiflowPath> paths;
};

struct FormatOptions {
  bool trace = false;
};

SolutionFile make_solution_file(const Instance& inst, const SolveResult& res, bool lp_only);

/// Trace lines: laminar family, cycles, every label assignment and the choice.
std::vector<std::string> trace_lines(const Instance& inst, const SolveResult& res);

std::string format_solution(const SolutionFile& sol);
SolutionFile parse_solution(std::string_view text);

/// "path value n0 n1 ..." lines with a cost header.
std::string format_multiflow(const Multiflow& flow, const Rational& cost);

struct SolutionCheck {
  bool ok = true;
  std::vector<std::string> messages;
};

/// Re-verifies a solution against its instance: ids and endpoints, stated
/// cost, and feasibility (integer connectivity for "rounded", the LP cut
/// condition for "lp"). Throws InvalidInstance on mismatched ids.
SolutionCheck check_solution(const Instance& inst, const SolutionFile& sol);

enum class Overlay { None, Lp, Solution, Laminar };
std::optional<Overlay> parse_overlay(std::string_view name);

/// Graphviz text. Lp and Solution style edges by value; Laminar draws each
/// family member's inner part as a cluster and names its neighbor set in the
/// cluster label.
std::string export_dot(const Instance& inst, Overlay overlay, const SolveResult* res = nullptr);

}  // namespace tbackup
