#pragma once

#include <limits>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "causalprobe/ci_tests.hpp"
#include "causalprobe/graph.hpp"

namespace causalprobe {

inline constexpr int kUnboundedCondSize = std::numeric_limits<int>::max();

struct FciParams {
    double alpha = 0.05;   // carried for reporting; the test enforces it
    int maxCondSize = 4;
    bool stableSkeleton = true;
    bool rulesR5R7 = false;  // selection-bias rules, off by default
};

// Audit log of everything that shaped the output PAG. Replaying the events
// from the complete graph reproduces the final graph exactly; orientation
// marks wiped by the post-Possible-D-SEP reset are never logged.
struct TraceEvent {
    enum class Kind { EdgeRemoved, VStructure, RuleFired };
    Kind kind;
    int a = -1;
    int b = -1;
    int c = -1;               // VStructure: the triple is (a, b, c) with collider b
    std::vector<int> sepset;  // EdgeRemoved
    double p = 0.0;           // EdgeRemoved
    int rule = 0;             // RuleFired: 1..10
    Mark markA = Mark::Circle;  // RuleFired: marks on edge (a,b) after firing
    Mark markB = Mark::Circle;
};

struct FciTrace {
    std::vector<TraceEvent> events;
    std::vector<std::string> warnings;  // contradictory orientations
};

Pag replayTrace(const std::vector<std::string>& names, const FciTrace& trace);

std::string traceToJson(const FciTrace& trace, const std::vector<std::string>& names);

// Already-tested conditioning sets per pair, shared between the two skeleton
// phases so a deterministic test is never run twice with the same arguments.
using TestedSets = std::map<std::pair<int, int>, std::set<std::vector<int>>>;

struct SkeletonResult {
    Pag pag;
    SepsetMap sepsets;
};

// Phase 1: PC-style adjacency search from the complete graph, depth 0 upward.
SkeletonResult initialSkeleton(CiTest& test, const std::vector<std::string>& vars,
                               const FciParams& params, FciTrace& trace,
                               TestedSets* tested = nullptr);

// Phase 2/4a: collider orientation; arrowheads at z for every unshielded
// triple (x, z, y) with z outside sepset(x, y). Pass a trace only for the
// final (post-reset) pass.
void orientVStructures(Pag& pag, const SepsetMap& sepsets, FciTrace* trace);

// Phase 3: Possible-D-SEP edge removal, then reset to circles and re-orient
// v-structures. Expects v-structures already oriented on the input.
SkeletonResult finalSkeleton(Pag pag, CiTest& test, SepsetMap sepsets,
                             const FciParams& params, FciTrace& trace,
                             TestedSets* tested = nullptr);

// Phase 4b: Zhang's orientation rules to fixpoint. R1-R4 and R8-R10 always;
// R5-R7 only when params.rulesR5R7 is set. Deterministic sweep order:
// ascending rule id, lexicographic edges.
void applyOrientationRules(Pag& pag, const SepsetMap& sepsets,
                           const FciParams& params, FciTrace& trace);

struct FciResult {
    Pag pag;
    SepsetMap sepsets;
    FciTrace trace;
};

FciResult runFci(CiTest& test, const std::vector<std::string>& vars,
                 const FciParams& params);

}  // namespace causalprobe
