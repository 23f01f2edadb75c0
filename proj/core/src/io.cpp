#include "tbackup/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "tbackup/errors.hpp"
#include "tbackup/lp.hpp"
#include "tbackup/oracle.hpp"

namespace tbackup {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long parse_long(std::string_view w, int line, const char* what) {
  long v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size()) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(w) + "'");
  }
  return v;
}

int parse_int(std::string_view w, int line, const char* what) {
  long v = parse_long(w, line, what);
  if (v < INT32_MIN || v > INT32_MAX) throw ParseError(line, std::string(what) + " out of range");
  return static_cast<int>(v);
}

Rational parse_rational_at(std::string_view w, int line, const char* what) {
  try {
    return parse_rational(w);
  } catch (const std::invalid_argument&) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(w) + "'");
  }
}

Mode parse_mode(std::string_view w, int line) {
  if (w == "edge") return Mode::Edge;
  if (w == "node") return Mode::Node;
  throw ParseError(line, "mode must be edge or node, got '" + std::string(w) + "'");
}

template <typename F>
void for_each_line(std::string_view text, F&& f) {
  int number = 0;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view line = text.substr(start, end - start);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (!words.empty()) f(number, words);
    if (end == text.size()) break;
    start = end + 1;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string exact_and_decimal(const Rational& q) { return to_string(q) + " " + to_decimal(q, 6); }

}  // namespace

Instance parse_instance(std::string_view text) {
  std::optional<int> n;
  std::optional<Mode> mode;
  std::vector<std::pair<int, int>> reqs;
  bool have_terminals = false;
  std::vector<EdgeSpec> edges;
  int last_line = 0;
  for_each_line(text, [&](int line, const std::vector<std::string_view>& w) {
    last_line = line;
    if (w[0] == "nodes") {
      if (n) throw ParseError(line, "duplicate nodes line");
      if (w.size() != 2) throw ParseError(line, "expected 'nodes N'");
      n = parse_int(w[1], line, "node count");
      if (*n <= 0) throw ParseError(line, "node count must be positive");
      return;
    }
    if (w[0] == "terminals") {
      if (have_terminals) throw ParseError(line, "duplicate terminals line");
      have_terminals = true;
      for (size_t i = 1; i < w.size(); ++i) {
        auto colon = w[i].find(':');
        if (colon == std::string_view::npos) throw ParseError(line, "terminal must be t:r");
        reqs.emplace_back(parse_int(w[i].substr(0, colon), line, "terminal"),
                          parse_int(w[i].substr(colon + 1), line, "requirement"));
      }
      return;
    }
    if (w[0] == "mode") {
      if (mode) throw ParseError(line, "duplicate mode line");
      if (w.size() != 2) throw ParseError(line, "expected 'mode edge|node'");
      mode = parse_mode(w[1], line);
      return;
    }
    if (!n || !have_terminals || !mode) throw ParseError(line, "edge line before the nodes/terminals/mode header");
    if (w.size() != 4) throw ParseError(line, "expected 'u v cost capacity'");
    EdgeSpec e;
    e.u = parse_int(w[0], line, "endpoint");
    e.v = parse_int(w[1], line, "endpoint");
    if (e.u < 0 || e.u >= *n || e.v < 0 || e.v >= *n) throw ParseError(line, "endpoint out of range");
    if (e.u == e.v) throw ParseError(line, "self-loop");
    e.cost = parse_rational_at(w[2], line, "cost");
    if (e.cost < 0) throw ParseError(line, "negative cost");
    if (w[3] == "inf") {
      e.capacity = Capacity::unbounded();
    } else {
      long c = parse_long(w[3], line, "capacity");
      if (c < 0) throw ParseError(line, "negative capacity");
      e.capacity = Capacity::finite(c);
    }
    edges.push_back(std::move(e));
  });
  if (!n) throw ParseError(last_line + 1, "missing nodes line");
  if (!have_terminals) throw ParseError(last_line + 1, "missing terminals line");
  if (!mode) throw ParseError(last_line + 1, "missing mode line");
  try {
    return Instance(*n, edges, reqs, *mode);
  } catch (const InvalidInstance& e) {
    throw ParseError(last_line + 1, e.what());
  }
}

Instance read_instance_file(const std::string& path) { return parse_instance(read_file(path)); }

std::string format_instance(const Instance& inst) {
  std::string out = "nodes " + std::to_string(inst.num_nodes()) + "\nterminals";
  for (int t : inst.terminals()) out += " " + std::to_string(t) + ":" + std::to_string(inst.requirement(t));
  out += "\nmode ";
  out += to_string(inst.mode());
  out += "\n";
  for (const auto& e : inst.edges()) {
    out += std::to_string(e.u) + " " + std::to_string(e.v) + " " + to_string(e.cost) + " " +
           (e.capacity.is_unbounded() ? std::string("inf") : std::to_string(e.capacity.value())) + "\n";
  }
  return out;
}

std::vector<std::string> trace_lines(const Instance& inst, const SolveResult& res) {
  std::vector<std::string> out;
  out.push_back("lp " + to_string(res.lp.value) + " rounds " + std::to_string(res.lp.rounds) + " cuts " +
                std::to_string(res.lp.cuts) + (res.perturbed ? " perturbed" : ""));
  std::string xs = "half_integral";
  for (int e = 0; e < inst.num_edges(); ++e) xs += " " + to_string(res.half_integral[e]);
  out.push_back(xs);
  if (!res.family) return out;
  const auto& fam = *res.family;
  std::string f = "half_edges";
  for (int e : fam.half_edges) f += " " + std::to_string(e);
  out.push_back(f);
  for (size_t i = 0; i < fam.entries.size(); ++i) {
    const auto& en = fam.entries[i];
    std::string line = "laminar " + std::to_string(i) + " terminal " + std::to_string(en.terminal) + " biset " +
                       format_biset(en.biset) + " requirement " + std::to_string(en.requirement) + " parent " +
                       (en.parent ? std::to_string(*en.parent) : std::string("-")) + " boundary";
    for (int e : en.half_boundary) line += " " + std::to_string(e);
    out.push_back(line);
  }
  if (!res.rounding) return out;
  const auto& r = *res.rounding;
  for (const auto& w : r.structure.witnesses) {
    out.push_back("degree4 node " + std::to_string(w.node) + " outer " + std::to_string(w.outer_entry) +
                  " inner " + std::to_string(w.inner_entry) + " candidates " + std::to_string(w.candidates));
  }
  for (size_t c = 0; c < r.cycles.size(); ++c) {
    const auto& cyc = r.cycles[c];
    std::string line = "cycle " + std::to_string(c) + " k " + std::to_string(cyc.k()) + " terminals";
    for (int t : cyc.terminals) line += " " + std::to_string(t);
    line += " steps";
    for (const auto& s : cyc.steps) {
      line += " " + std::to_string(s.from) + ">" + std::to_string(s.to) + ":e" + std::to_string(s.edge);
    }
    out.push_back(line);
    for (const auto& a : r.assignments[c]) {
      std::string al = "assignment " + std::to_string(c) + "." + std::to_string(a.index + 1) + " cost " +
                       to_string(a.cost) + " labels ";
      for (auto l : a.labels) al += l == Label::Plus ? '+' : '-';
      if (!a.rotatable) al += " unrotatable";
      if (a.feasible) al += *a.feasible ? " feasible" : " infeasible";
      out.push_back(al);
    }
    out.push_back("chosen " + std::to_string(c) + "." + std::to_string(r.chosen[c] + 1));
  }
  return out;
}

SolutionFile make_solution_file(const Instance& inst, const SolveResult& res, bool lp_only) {
  SolutionFile sol;
  sol.mode = inst.mode();
  sol.kind = lp_only ? "lp" : "rounded";
  sol.x = res.solution;
  for (const auto& e : inst.edges()) sol.ends.emplace_back(e.u, e.v);
  sol.cost = res.cost;
  sol.lp_bound = res.lp_bound;
  sol.ratio = res.ratio;
  return sol;
}

std::string format_solution(const SolutionFile& sol) {
  std::string out = "solution ";
  out += sol.kind;
  out += "\nmode ";
  out += to_string(sol.mode);
  out += "\ncost " + exact_and_decimal(sol.cost) + "\n";
  out += "lp_bound " + exact_and_decimal(sol.lp_bound) + "\n";
  out += "ratio " + exact_and_decimal(sol.ratio) + "\n";
  for (int e = 0; e < sol.x.size(); ++e) {
    const auto& [u, v] = sol.ends[static_cast<size_t>(e)];
    out += "edge " + std::to_string(e) + " " + std::to_string(u) + " " + std::to_string(v) + " " +
           to_string(sol.x[e]) + "\n";
  }
  for (const auto& t : sol.trace) out += "trace " + t + "\n";
  for (const auto& p : sol.paths) {
    out += "path " + to_string(p.value);
    for (int v : p.nodes) out += " " + std::to_string(v);
    out += "\n";
  }
  return out;
}

SolutionFile parse_solution(std::string_view text) {
  SolutionFile sol;
  std::vector<Rational> xs;
  bool have_cost = false;
  for_each_line(text, [&](int line, const std::vector<std::string_view>& w) {
    if (w[0] == "solution") {
      if (w.size() != 2 || (w[1] != "rounded" && w[1] != "lp")) throw ParseError(line, "expected 'solution rounded|lp'");
      sol.kind = std::string(w[1]);
    } else if (w[0] == "mode") {
      if (w.size() != 2) throw ParseError(line, "expected 'mode edge|node'");
      sol.mode = parse_mode(w[1], line);
    } else if (w[0] == "cost" || w[0] == "lp_bound" || w[0] == "ratio") {
      if (w.size() < 2) throw ParseError(line, "missing value");
      Rational q = parse_rational_at(w[1], line, "value");
      if (w[0] == "cost") {
        sol.cost = q;
        have_cost = true;
      } else if (w[0] == "lp_bound") {
        sol.lp_bound = q;
      } else {
        sol.ratio = q;
      }
    } else if (w[0] == "edge") {
      if (w.size() != 5) throw ParseError(line, "expected 'edge id u v value'");
      int id = parse_int(w[1], line, "edge id");
      if (id != static_cast<int>(xs.size())) throw ParseError(line, "edge ids must be consecutive from 0");
      sol.ends.emplace_back(parse_int(w[2], line, "endpoint"), parse_int(w[3], line, "endpoint"));
      xs.push_back(parse_rational_at(w[4], line, "edge value"));
    } else if (w[0] == "trace") {
      std::string t;
      for (size_t i = 1; i < w.size(); ++i) t += (i > 1 ? " " : "") + std::string(w[i]);
      sol.trace.push_back(std::move(t));
    } else if (w[0] == "path") {
      if (w.size() < 4) throw ParseError(line, "expected 'path value n0 n1 ...'");
      MultiflowPath p;
      p.value = parse_rational_at(w[1], line, "path value");
      for (size_t i = 2; i < w.size(); ++i) p.nodes.push_back(parse_int(w[i], line, "node"));
      sol.paths.push_back(std::move(p));
    } else {
      throw ParseError(line, "unknown keyword '" + std::string(w[0]) + "'");
    }
  });
  if (!have_cost) throw ParseError(0, "solution has no cost line");
  sol.x = EdgeVector(std::move(xs));
  return sol;
}

std::string format_multiflow(const Multiflow& flow, const Rational& cost) {
  std::string out = "multiflow " + std::to_string(flow.paths.size()) + "\ncost " + exact_and_decimal(cost) + "\n";
  for (const auto& p : flow.paths) {
    out += "path " + to_string(p.value);
    for (int v : p.nodes) out += " " + std::to_string(v);
    out += " edges";
    for (int e : p.edges) out += " " + std::to_string(e);
    out += "\n";
  }
  return out;
}

SolutionCheck check_solution(const Instance& inst, const SolutionFile& sol) {
  if (sol.x.size() != inst.num_edges()) {
    throw InvalidInstance("solution lists " + std::to_string(sol.x.size()) + " edges, instance has " +
                          std::to_string(inst.num_edges()));
  }
  for (const auto& e : inst.edges()) {
    auto [u, v] = sol.ends[static_cast<size_t>(e.id)];
    if (!(u == e.u && v == e.v)) {
      throw InvalidInstance("edge " + std::to_string(e.id) + " endpoints differ from the instance");
    }
  }
  SolutionCheck chk;
  auto fail = [&](std::string m) {
    chk.ok = false;
    chk.messages.push_back(std::move(m));
  };
  Rational cost = sol.x.dot(inst.costs());
  if (cost != sol.cost) fail("stated cost " + to_string(sol.cost) + " differs from c.x = " + to_string(cost));
  if (sol.kind == "lp") {
    if (!sol.x.non_negative()) fail("negative edge value");
    for (const auto& e : inst.edges()) {
      if (!e.capacity.admits(sol.x[e.id])) fail("edge " + std::to_string(e.id) + " exceeds capacity");
    }
    if (auto viol = find_violation(inst, sol.x)) {
      fail("terminal " + std::to_string(viol->terminal) + " cut " + format_biset(viol->biset) + " violated");
    }
  } else {
    auto rep = verify_solution(inst, sol.x);
    if (!rep.feasible) {
      for (auto& d : rep.diagnostics) fail(d);
    }
  }
  return chk;
}

std::optional<Overlay> parse_overlay(std::string_view name) {
  if (name == "none") return Overlay::None;
  if (name == "lp") return Overlay::Lp;
  if (name == "solution") return Overlay::Solution;
  if (name == "laminar") return Overlay::Laminar;
  return std::nullopt;
}

namespace {

std::string edge_style(const Rational& x) {
  if (x == 0) return "style=dotted, color=gray";
  if (!is_integer(x)) return "style=dashed, color=blue";
  if (x == 1) return "style=solid, color=black";
  return "style=bold, color=black, penwidth=" + to_string(x * 2);
}

}  // namespace

std::string export_dot(const Instance& inst, Overlay overlay, const SolveResult* res) {
  if (overlay != Overlay::None && res == nullptr) throw std::invalid_argument("overlay needs a solve result");
  std::string out = "graph tbackup {\n  node [shape=circle];\n";
  auto node_line = [&](int v, const std::string& indent) {
    std::string l = indent + "n" + std::to_string(v) + " [label=\"" + std::to_string(v);
    if (inst.is_terminal(v)) l += "\\nr=" + std::to_string(inst.requirement(v));
    l += "\"";
    if (inst.is_terminal(v)) l += ", shape=doublecircle";
    return l + "];\n";
  };

  std::vector<char> placed(static_cast<size_t>(inst.num_nodes()), 0);
  if (overlay == Overlay::Laminar && res->family) {
    const auto& fam = *res->family;
    std::function<void(int, const std::string&)> emit = [&](int i, const std::string& indent) {
      const auto& en = fam.entries[static_cast<size_t>(i)];
      out += indent + "subgraph cluster_" + std::to_string(i) + " {\n";
      out += indent + "  label=\"t=" + std::to_string(en.terminal) + " gamma=" + format_node_set(en.biset.gamma()) +
             " req=" + std::to_string(en.requirement) + "\";\n";
      for (int c : fam.children(i)) emit(c, indent + "  ");
      for (int v : members(en.biset.inner())) {
        if (placed[static_cast<size_t>(v)]) continue;
        placed[static_cast<size_t>(v)] = 1;
        out += node_line(v, indent + "  ");
      }
      out += indent + "}\n";
    };
    for (int i = 0; i < static_cast<int>(fam.entries.size()); ++i) {
      if (fam.is_maximal(i)) emit(i, "  ");
    }
  }
  for (int v = 0; v < inst.num_nodes(); ++v) {
    if (!placed[static_cast<size_t>(v)]) out += node_line(v, "  ");
  }
  for (const auto& e : inst.edges()) {
    std::string label = "e" + std::to_string(e.id) + " c=" + to_string(e.cost) + " u=" +
                        (e.capacity.is_unbounded() ? std::string("inf") : std::to_string(e.capacity.value()));
    std::string style;
    if (overlay == Overlay::Lp || overlay == Overlay::Laminar) {
      label += " x=" + to_string(res->half_integral[e.id]);
      style = ", " + edge_style(res->half_integral[e.id]);
    } else if (overlay == Overlay::Solution) {
      label += " y=" + to_string(res->solution[e.id]);
      style = ", " + edge_style(res->solution[e.id]);
    }
    out += "  n" + std::to_string(e.u) + " -- n" + std::to_string(e.v) + " [label=\"" + label + "\"" + style + "];\n";
  }
  out += "}\n";
  return out;
}

}  // namespace tbackup
