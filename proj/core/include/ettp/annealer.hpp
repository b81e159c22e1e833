#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "ettp/model.hpp"
#include "ettp/rng.hpp"
#include "ettp/room_assign.hpp"

namespace ettp {

struct AnnealParams {
    double heat_max = 100.0;
    double heat_min = 1.0;
    long cooling_limit = 5000;  // iterations between heat resets
    long iterations = 50000;    // per repetition
    int repetitions = 8;
    // <= 0 selects (heat_min/heat_max)^(1/cooling_limit), one full sweep of
    // the heat range per cooling cycle
    double cooling_rate = 0.0;
    // normalizes the objective delta in the acceptance rule; <= 0 selects
    // initial_objective/100000 (1.0 when the initial objective is 0), which
    // puts the late-phase move scale inside the [heat_min, heat_max] band
    double delta_scale = 0.0;
    bool pcbett_mode = false;
    std::uint64_t seed = 1;
    long node_budget = 1'000'000;  // per slot solve
};

// Walk state of one repetition. In nominal mode the ratio fields of
// `penalties` are not maintained across moves (patterns change but do not
// enter the objective); the integer counters and `weighted` are always
// exact.
struct SolverState {
    int repetition = 0;
    Timetable current;
    PenaltyBreakdown penalties;
    Timetable best;
    double best_value = 0.0;
    double heat = 100.0;
    long iteration = 0;
};

struct ProposalOutcome {
    bool feasible = false;  // both changed slots admitted a room assignment
    bool accepted = false;
    bool improving = false;
    double delta = 0.0;
};

struct AnnealStats {
    long proposals = 0;
    long accepted = 0;
    long rejected_infeasible = 0;
    long feasible_solves = 0;
    long pcbett_solves = 0;
};

struct AnnealResult {
    Timetable best;
    PenaltyBreakdown best_penalties;
    double initial_objective = 0.0;
    AnnealStats stats;
};

// Called after every iteration; `state.current` is the accepted state.
using IterationHook = std::function<void(const SolverState& state, const ProposalOutcome&)>;

struct KempeChain {
    std::vector<int> from_current;  // exams leaving the exam's own slot
    std::vector<int> from_target;   // exams leaving the target slot
};

// Slot solves are pure functions of the slot's member set, and proposals
// revisit the same memberships constantly; one cache per anneal run removes
// most of the solver work.
struct SlotSolveCache {
    std::map<std::vector<int>, SlotSolveResult> results;
    long hits = 0;
    long misses = 0;
};

// Empty list if the parameters are usable; entries name the violated field.
std::vector<std::string> validate_params(const AnnealParams& params);

// Fills the derived defaults (cooling_rate, delta_scale) from the initial
// objective value, leaving explicit settings untouched.
AnnealParams resolve_params(const AnnealParams& params, double initial_objective);

// Greedy seeding: exams in decreasing-students order, first timeslot with no
// conflict where unassigned rooms (largest first) cover the demand.
// nullopt if some exam fits no slot.
std::optional<Timetable> initial_heuristic(const Instance& inst);

// Connected component containing `exam` in the bipartite conflict graph
// between its slot and `target_slot`. Swapping the two sides preserves H3 in
// both slots.
KempeChain kempe_chain(const Instance& inst, const Timetable& tt, int exam, int target_slot);

// Metropolis rule for a worsening move.
double acceptance_probability(double delta, double heat, double delta_scale);

// One annealing step: sample a Kempe move, solve the two changed slots,
// accept or reject, cool (twice on an accepted improvement), reset the heat
// every cooling_limit iterations. params must be resolved.
ProposalOutcome propose_and_accept(SolverState& state, const Instance& inst,
                                   const Weights& weights, const AnnealParams& params, Rng& rng,
                                   AnnealStats* stats = nullptr,
                                   SlotSolveCache* cache = nullptr);

// Full solve: `repetitions` independent walks from the same greedy seed,
// returning the best-valued timetable over all of them (earliest repetition
// wins ties). nullopt when the initial heuristic fails.
std::optional<AnnealResult> anneal(const Instance& inst, const Weights& weights,
                                   const AnnealParams& params, const IterationHook& hook = {});

}  // namespace ettp
