#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace ettp {

// One exam of a per-timeslot assignment problem. Rooms listed in
// `locked_rooms` stay assigned to the exam no matter what; the solver only
// distributes the problem's free rooms on top of them.
struct SlotExam {
    int exam = 0;
    int demand = 0;
    std::vector<int> locked_rooms;
};

struct SlotRoom {
    int room = 0;
    int capacity = 0;
};

// A single-timeslot room-assignment problem. `rooms` lists every room
// available to the slot (locked ones included). Locked patterns must be
// pairwise disjoint subsets of `rooms`.
struct SlotProblem {
    std::vector<SlotExam> exams;
    std::vector<SlotRoom> rooms;
    long node_budget = 1'000'000;
};

enum class SolveStatus { Feasible, Infeasible, BudgetExceeded };

// Patterns per exam, parallel to SlotProblem::exams, sorted ascending.
struct SlotSolveResult {
    SolveStatus status = SolveStatus::Infeasible;
    std::vector<std::vector<int>> patterns;
    long nodes = 0;
};

// Searches for any assignment giving every exam a nonempty pattern of
// pairwise-disjoint rooms with capacity >= demand; rooms may stay unused.
// The search is exhaustive (branch and bound over room->exam labels, rooms
// in decreasing capacity order, pruned on the remaining-capacity bound), so
// Infeasible is a proof that no assignment exists.
SlotSolveResult find_feasible(const SlotProblem& problem);

// Among all feasible assignments, returns one maximizing the minimum over
// exams of capacity(pattern)/demand. Ties break by fewer rooms used, then by
// lexicographically smallest pattern list (exams in problem order, room ids
// ascending), so results are deterministic.
SlotSolveResult find_pcbett_optimal(const SlotProblem& problem);

// Minimum ratio of a solved assignment; +inf for a problem with no exams.
double min_assignment_ratio(const SlotProblem& problem,
                            const std::vector<std::vector<int>>& patterns);

// Smallest sub-pattern still covering `demand`: minimum cardinality, then
// minimum capacity (frees the most), then lexicographic room ids.
// `capacity_of(room)` must be valid for every room in `pattern`.
// Precondition (checked): the full pattern covers the demand.
std::vector<int> minimal_reduction(const std::vector<int>& pattern, int demand,
                                   const std::vector<int>& room_capacities);

}  // namespace ettp
