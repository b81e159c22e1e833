#include "ettp/annealer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ettp/room_assign.hpp"

namespace ettp {

std::vector<std::string> validate_params(const AnnealParams& p) {
    std::vector<std::string> out;
    if (p.heat_min < 1.0) out.push_back("heat_min: must be >= 1");
    if (p.heat_max < p.heat_min) out.push_back("heat_max: must be >= heat_min");
    if (p.cooling_limit < 1) out.push_back("cooling_limit: must be >= 1");
    if (p.iterations < p.cooling_limit) out.push_back("iterations: must be >= cooling_limit");
    if (p.repetitions < 1) out.push_back("repetitions: must be >= 1");
    if (p.cooling_rate > 0.0 && p.cooling_rate >= 1.0)
        out.push_back("cooling_rate: must be in (0, 1)");
    if (p.cooling_rate <= 0.0 && p.heat_max <= p.heat_min)
        out.push_back("cooling_rate: cannot derive a rate from heat_max == heat_min");
    if (p.node_budget < 1) out.push_back("node_budget: must be >= 1");
    return out;
}

AnnealParams resolve_params(const AnnealParams& params, double initial_objective) {
    AnnealParams p = params;
    if (p.cooling_rate <= 0.0)
        p.cooling_rate =
            std::pow(p.heat_min / p.heat_max, 1.0 / static_cast<double>(p.cooling_limit));
    if (p.delta_scale <= 0.0)
        p.delta_scale = initial_objective > 0.0 ? initial_objective / 100000.0 : 1.0;
    return p;
}

std::optional<Timetable> initial_heuristic(const Instance& inst) {
    const int n = inst.exam_count();
    const int T = inst.timeslot_count();

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (inst.students(a) != inst.students(b)) return inst.students(a) > inst.students(b);
        return a < b;
    });
    std::vector<int> rooms_by_size(inst.room_count());
    std::iota(rooms_by_size.begin(), rooms_by_size.end(), 0);
    std::sort(rooms_by_size.begin(), rooms_by_size.end(), [&](int a, int b) {
        if (inst.room_capacity(a) != inst.room_capacity(b))
            return inst.room_capacity(a) > inst.room_capacity(b);
        return a < b;
    });

    Timetable tt;
    tt.slots.assign(n, -1);
    tt.room_patterns.assign(n, {});
    std::vector<std::vector<char>> room_used(T, std::vector<char>(inst.room_count(), 0));

    for (int e : order) {
        bool placed = false;
        for (int t = 0; t < T && !placed; ++t) {
            bool clash = false;
            for (const auto& [other, weight] : inst.conflicts_of(e))
                if (tt.slots[other] == t) {
                    clash = true;
                    break;
                }
            if (clash) continue;

            long long cap = 0;
            std::vector<int> picked;
            for (int r : rooms_by_size) {
                if (room_used[t][r]) continue;
                picked.push_back(r);
                cap += inst.room_capacity(r);
                if (cap >= inst.students(e)) break;
            }
            if (cap < inst.students(e)) continue;
            for (int r : picked) room_used[t][r] = 1;
            std::sort(picked.begin(), picked.end());
            tt.slots[e] = t;
            tt.room_patterns[e] = std::move(picked);
            placed = true;
        }
        if (!placed) return std::nullopt;
    }
    return tt;
}

KempeChain kempe_chain(const Instance& inst, const Timetable& tt, int exam, int target_slot) {
    const int own_slot = tt.slots[exam];
    std::vector<char> visited(inst.exam_count(), 0);
    std::vector<int> queue{exam};
    visited[exam] = 1;
    for (size_t head = 0; head < queue.size(); ++head) {
        const int x = queue[head];
        const int opposite = tt.slots[x] == own_slot ? target_slot : own_slot;
        for (const auto& [other, weight] : inst.conflicts_of(x)) {
            if (visited[other] || tt.slots[other] != opposite) continue;
            visited[other] = 1;
            queue.push_back(other);
        }
    }
    KempeChain chain;
    for (int x : queue)
        (tt.slots[x] == own_slot ? chain.from_current : chain.from_target).push_back(x);
    std::sort(chain.from_current.begin(), chain.from_current.end());
    std::sort(chain.from_target.begin(), chain.from_target.end());
    return chain;
}

double acceptance_probability(double delta, double heat, double delta_scale) {
    if (delta <= 0.0) return 1.0;
    return std::exp(-delta / (delta_scale * heat));
}

namespace {

SlotProblem slot_problem_for(const Instance& inst, const std::vector<int>& exams,
                             long node_budget) {
    SlotProblem problem;
    problem.node_budget = node_budget;
    problem.exams.reserve(exams.size());
    for (int e : exams) problem.exams.push_back({e, inst.students(e), {}});
    problem.rooms.reserve(inst.room_count());
    for (int r = 0; r < inst.room_count(); ++r)
        problem.rooms.push_back({r, inst.room_capacity(r)});
    return problem;
}

void cool(SolverState& state, const AnnealParams& params, bool accepted_improvement) {
    state.heat *= accepted_improvement ? params.cooling_rate * params.cooling_rate
                                       : params.cooling_rate;
    if (state.heat < params.heat_min) state.heat = params.heat_min;
    if (state.iteration % params.cooling_limit == 0) state.heat = params.heat_max;
}

}  // namespace

ProposalOutcome propose_and_accept(SolverState& state, const Instance& inst,
                                   const Weights& weights, const AnnealParams& params, Rng& rng,
                                   AnnealStats* stats, SlotSolveCache* cache) {
    ProposalOutcome outcome;
    ++state.iteration;
    if (stats) ++stats->proposals;

    const int T = inst.timeslot_count();
    std::uniform_int_distribution<int> pick_exam(0, inst.exam_count() - 1);
    const int exam = pick_exam(rng);
    const int slot_a = state.current.slots[exam];
    std::uniform_int_distribution<int> pick_slot(0, T - 2);
    int slot_b = pick_slot(rng);
    if (slot_b >= slot_a) ++slot_b;

    const KempeChain chain = kempe_chain(inst, state.current, exam, slot_b);

    SlotSwap move;
    move.slot_a = slot_a;
    move.slot_b = slot_b;
    move.to_b = chain.from_current;
    move.to_a = chain.from_target;

    // Post-move membership of both slots.
    std::vector<char> leaving(inst.exam_count(), 0);
    for (int e : move.to_b) leaving[e] = 1;
    for (int e : move.to_a) leaving[e] = 2;
    std::vector<int> members_a, members_b;
    for (int e = 0; e < inst.exam_count(); ++e) {
        const int slot_after = leaving[e] == 1   ? slot_b
                               : leaving[e] == 2 ? slot_a
                                                 : state.current.slots[e];
        if (slot_after == slot_a) members_a.push_back(e);
        else if (slot_after == slot_b) members_b.push_back(e);
    }

    auto solve = [&](const std::vector<int>& members) {
        if (cache) {
            auto it = cache->results.find(members);
            if (it != cache->results.end()) {
                ++cache->hits;
                return it->second;
            }
            ++cache->misses;
        }
        SlotProblem problem = slot_problem_for(inst, members, params.node_budget);
        if (stats) ++(params.pcbett_mode ? stats->pcbett_solves : stats->feasible_solves);
        SlotSolveResult result =
            params.pcbett_mode ? find_pcbett_optimal(problem) : find_feasible(problem);
        if (cache) cache->results.emplace(members, result);
        return result;
    };
    const SlotSolveResult result_a = solve(members_a);
    SlotSolveResult result_b;
    if (result_a.status == SolveStatus::Feasible) result_b = solve(members_b);

    if (result_a.status != SolveStatus::Feasible || result_b.status != SolveStatus::Feasible) {
        if (stats) ++stats->rejected_infeasible;
        cool(state, params, false);
        return outcome;
    }
    outcome.feasible = true;

    for (size_t i = 0; i < members_a.size(); ++i)
        move.new_patterns.emplace_back(members_a[i], result_a.patterns[i]);
    for (size_t i = 0; i < members_b.size(); ++i)
        move.new_patterns.emplace_back(members_b[i], result_b.patterns[i]);

    const PenaltyDelta delta =
        objective_delta(inst, state.current, state.penalties, move, weights, params.pcbett_mode);
    outcome.delta = delta.weighted;

    bool accept = delta.weighted <= 0.0;
    if (!accept) {
        std::uniform_real_distribution<double> unit(0.0, 1.0);
        accept = unit(rng) < acceptance_probability(delta.weighted, state.heat,
                                                    params.delta_scale);
    }
    if (accept) {
        outcome.accepted = true;
        outcome.improving = delta.weighted < 0.0;
        if (stats) ++stats->accepted;
        apply_swap(state.current, move);
        state.penalties.two_in_a_row += delta.two_in_a_row;
        state.penalties.two_in_a_day += delta.two_in_a_day;
        state.penalties.period_spread += delta.period_spread;
        if (params.pcbett_mode) {
            state.penalties.max_load_ratio = delta.max_load_ratio_after;
            state.penalties.min_capacity_ratio = 1.0 / delta.max_load_ratio_after;
        }
        state.penalties.weighted = weighted_objective(
            state.penalties.two_in_a_row, state.penalties.two_in_a_day,
            state.penalties.period_spread, state.penalties.max_load_ratio, weights,
            params.pcbett_mode);
        if (state.penalties.weighted < state.best_value) {
            state.best_value = state.penalties.weighted;
            state.best = state.current;
        }
    }
    cool(state, params, accept && outcome.improving);
    return outcome;
}

std::optional<AnnealResult> anneal(const Instance& inst, const Weights& weights,
                                   const AnnealParams& params, const IterationHook& hook) {
    auto problems = validate_params(params);
    if (!problems.empty())
        throw std::invalid_argument("anneal: invalid parameters: " + problems.front());

    const auto initial = initial_heuristic(inst);
    if (!initial) return std::nullopt;
    const PenaltyBreakdown initial_penalties =
        soft_penalties(inst, *initial, weights, params.pcbett_mode);
    const AnnealParams resolved = resolve_params(params, initial_penalties.weighted);

    AnnealResult result;
    result.initial_objective = initial_penalties.weighted;
    Timetable best = *initial;
    double best_value = initial_penalties.weighted;
    SlotSolveCache cache;

    for (int rep = 0; rep < resolved.repetitions; ++rep) {
        SolverState state;
        state.repetition = rep;
        state.current = *initial;
        state.penalties = initial_penalties;
        state.best = *initial;
        state.best_value = initial_penalties.weighted;
        state.heat = resolved.heat_max;
        Rng rng(split_seed(resolved.seed, static_cast<std::uint64_t>(rep) + 1));

        if (inst.timeslot_count() >= 2) {
            for (long it = 0; it < resolved.iterations; ++it) {
                const ProposalOutcome outcome = propose_and_accept(state, inst, weights,
                                                                   resolved, rng, &result.stats,
                                                                   &cache);
                if (hook) hook(state, outcome);
            }
        }
        if (state.best_value < best_value) {
            best_value = state.best_value;
            best = state.best;
        }
    }

    result.best = std::move(best);
    result.best_penalties = soft_penalties(inst, result.best, weights, resolved.pcbett_mode);
    return result;
}

}  // namespace ettp
