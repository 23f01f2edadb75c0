#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "tbackup/errors.hpp"
#include "tbackup/io.hpp"
#include "tbackup/pipeline.hpp"

using namespace tbackup;

namespace {

int parse_error_line(const std::string& text) {
  try {
    parse_instance(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST(Io, ParsesHeaderCommentsAndCapacities) {
  auto inst = parse_instance("# demo\nnodes 3\nterminals 0:2 2:1\nmode node\n0 1 3/2 2 # cap\n1 2 0 inf\n");
  EXPECT_EQ(inst.num_nodes(), 3);
  EXPECT_EQ(inst.mode(), Mode::Node);
  EXPECT_EQ(inst.requirement(0), 2);
  EXPECT_EQ(inst.edge(0).cost, make_rational(3, 2));
  EXPECT_EQ(inst.edge(0).capacity, Capacity::finite(2));
  EXPECT_TRUE(inst.edge(1).capacity.is_unbounded());
}

TEST(Io, ParseErrorsCarryLineNumbers) {
  const std::string head = "nodes 3\nterminals 0:1 1:1\nmode edge\n";
  EXPECT_EQ(parse_error_line(head + "0 5 1 inf\n"), 4);
  EXPECT_EQ(parse_error_line(head + "0 1 1 inf\n1 1 1 inf\n"), 5);
  EXPECT_EQ(parse_error_line(head + "0 1 -1 inf\n"), 4);
  EXPECT_EQ(parse_error_line(head + "0 1 x inf\n"), 4);
  EXPECT_EQ(parse_error_line(head + "0 1 1\n"), 4);
  EXPECT_EQ(parse_error_line("nodes 3\nmode both\n"), 2);
  EXPECT_EQ(parse_error_line("0 1 1 inf\n"), 1);
  EXPECT_EQ(parse_error_line("nodes 3\nterminals 0:1\nmode edge\n0 1 1 inf\n"), 5);
  EXPECT_EQ(parse_error_line("nodes 3\nterminals 0:1 2:1\n"), 3);
}

TEST(Io, InstanceRoundTrip) {
  for (const auto& inst : fixtures::random_batch(137, 20)) {
    auto text = format_instance(inst);
    EXPECT_EQ(format_instance(parse_instance(text)), text);
  }
}

TEST(Io, SolutionTextIsFrozen) {
  auto inst = fixtures::triangle();
  auto res = solve(inst);
  auto text = format_solution(make_solution_file(inst, res, false));
  EXPECT_EQ(text,
            "solution rounded\n"
            "mode edge\n"
            "cost 2 2.000000\n"
            "lp_bound 3/2 1.500000\n"
            "ratio 4/3 1.333333\n"
            "edge 0 0 1 1\n"
            "edge 1 1 2 1\n"
            "edge 2 0 2 0\n");
}

TEST(Io, SolutionRoundTripAndCheck) {
  for (const auto& inst : fixtures::random_batch(139, 20, 7, std::nullopt, 3)) {
    auto res = solve(inst);
    auto file = make_solution_file(inst, res, false);
    file.trace = trace_lines(inst, res);
    auto text = format_solution(file);
    auto back = parse_solution(text);
    EXPECT_EQ(format_solution(back), text);
    EXPECT_EQ(back.x, res.solution);
    EXPECT_TRUE(check_solution(inst, back).ok);

    auto lp = make_solution_file(inst, res, true);
    EXPECT_EQ(lp.kind, "lp");
    EXPECT_TRUE(check_solution(inst, parse_solution(format_solution(lp))).ok);
  }
}

TEST(Io, CheckSolutionFlagsTampering) {
  auto inst = fixtures::triangle();
  auto file = make_solution_file(inst, solve(inst), false);
  auto cheap = file;
  cheap.x[0] = 0;
  cheap.cost = 1;
  EXPECT_FALSE(check_solution(inst, cheap).ok);
  auto lying = file;
  lying.cost = 5;
  EXPECT_FALSE(check_solution(inst, lying).ok);
  auto moved = file;
  moved.ends[0] = {0, 2};
  EXPECT_THROW(check_solution(inst, moved), InvalidInstance);
  auto shorter = file;
  shorter.x = EdgeVector(2);
  shorter.ends.pop_back();
  EXPECT_THROW(check_solution(inst, shorter), InvalidInstance);
}

TEST(Io, DotOverlays) {
  auto inst = fixtures::triangle();
  auto res = solve(inst);
  auto lp = export_dot(inst, Overlay::Lp, &res);
  size_t dashed = 0;
  for (size_t p = lp.find("style=dashed"); p != std::string::npos; p = lp.find("style=dashed", p + 1)) ++dashed;
  EXPECT_EQ(dashed, 3u);
  EXPECT_NE(lp.find("x=1/2"), std::string::npos);
  auto plain = export_dot(inst, Overlay::None);
  EXPECT_EQ(plain.find("x="), std::string::npos);
  auto lam = export_dot(inst, Overlay::Laminar, &res);
  EXPECT_NE(lam.find("subgraph cluster"), std::string::npos);
  EXPECT_THROW(export_dot(inst, Overlay::Lp), std::invalid_argument);
  EXPECT_EQ(parse_overlay("laminar"), Overlay::Laminar);
  EXPECT_FALSE(parse_overlay("flow"));
}

TEST(Io, MultiflowListing) {
  Multiflow flow;
  flow.paths.push_back({{0, 1}, {0}, make_rational(1, 2)});
  auto text = format_multiflow(flow, make_rational(1, 2));
  EXPECT_NE(text.find("path 1/2 0 1"), std::string::npos);
}
