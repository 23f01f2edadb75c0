#pragma once

#include <optional>
#include <vector>

#include "tbackup/edge_vector.hpp"
#include "tbackup/instance.hpp"
#include "tbackup/laminar.hpp"

namespace tbackup {

/// One traversal step of a closed trail.
struct CycleStep {
  int edge = -1;
  int from = -1;
  int to = -1;
};

/// Closed trail of half edges. A degree-4 node is passed twice; each pass
/// keeps the edge pair prescribed by the node's witness.
struct HalfCycle {
  std::vector<CycleStep> steps;

  // Filled by sequence_terminals. Segment indices are 0-based: segment i runs
  // from boundary step i (entering terminals[i]) to boundary step i+1.
  std::vector<int> terminals;
  std::vector<int> boundary_steps;
  /// Per step, the segments containing it (one, or two for a boundary step).
  std::vector<std::vector<int>> segments;
  /// Per step and per entry of `segments`, whether the step leaves the inner
  /// part of the segment terminal's biset.
  std::vector<std::vector<bool>> outward;

  int k() const { return static_cast<int>(terminals.size()); }
  bool sequenced() const { return !terminals.empty(); }
};

enum class Label { Plus, Minus };

struct LabelAssignment {
  int index = 0;  // 0-based; index i keeps segment i all Plus
  std::vector<Label> labels;  // per step
  Rational cost;
  /// terminals[i-1] != terminals[i+1] (cyclically). Rotating the trail to
  /// start at segment i then meets the start condition, which the
  /// feasibility argument relies on. With a repeated terminal some
  /// assignments lack this and can violate a cut.
  bool rotatable = true;
  /// Set when round_solution tested the assignment by max flow.
  std::optional<bool> feasible;
};

enum class RoundingPolicy {
  /// Cheapest of the k assignments, as stated; may be infeasible when a
  /// terminal repeats on the cycle (round_solution then throws).
  Cheapest,
  /// Cheapest assignment that keeps the partially rounded vector in P(h,u),
  /// checked by max flow, cycle by cycle.
  CheapestFeasible,
};

/// Splits F into closed trails honoring the degree-4 pairing of `report`.
/// Throws OddDegree on odd half degree and StructureViolation on degree > 4
/// or a degree-4 node without a witness.
std::vector<HalfCycle> decompose_cycles(const Instance& inst, const std::vector<int>& half_edges,
                                        const StructureReport& report);

/// Terminal sequence, segments and inward/outward flags; rotates the trail so
/// step 0 is the first boundary edge with t2 != tk. Throws CycleSequenceError
/// when k is one or even, or the trail does not match the family.
HalfCycle sequence_terminals(const Instance& inst, const LaminarFamily& fam, HalfCycle cycle);

/// The k label assignments. Throws CycleSequenceError if a shared step gets
/// two different labels.
std::vector<LabelAssignment> label_assignments(const HalfCycle& cycle, const std::vector<Rational>& costs);

/// Cheapest assignment, lowest index on ties. No feasibility test.
LabelAssignment best_rounding(const HalfCycle& cycle, const std::vector<Rational>& costs);

struct RoundingResult {
  EdgeVector x;
  StructureReport structure;
  std::vector<HalfCycle> cycles;
  std::vector<std::vector<LabelAssignment>> assignments;
  std::vector<int> chosen;
};

/// floor + rounded half part. Cycles are rounded in order; under
/// CheapestFeasible the remaining cycles stay at 1/2 while an assignment is
/// tested. The final vector is re-verified by max flow; a failure, or a cycle
/// with no feasible assignment, raises InternalError.
RoundingResult round_solution(const Instance& inst, const EdgeVector& floor_part,
                              const EdgeVector& half_part, const LaminarFamily& fam,
                              const std::vector<Rational>& costs,
                              RoundingPolicy policy = RoundingPolicy::CheapestFeasible);

}  // namespace tbackup
