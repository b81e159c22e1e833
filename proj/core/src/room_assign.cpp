#include "ettp/room_assign.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ettp {

namespace {

// Shared branch-and-bound state over room -> (exam | unused) labels.
// Free rooms are processed in decreasing-capacity order (ids ascending on
// ties); runs of equal-capacity rooms are symmetry-broken by requiring their
// label ranks to be non-decreasing (unused ranks last), which keeps exactly
// the lexicographically smallest representative of every symmetric class.
struct SearchState {
    const SlotProblem& problem;
    std::vector<int> free_rooms;          // indices into problem.rooms
    std::vector<char> eq_prev;            // free room k has same capacity as k-1
    std::vector<long long> suffix_cap;    // free capacity from position k onward
    std::vector<long long> assigned_cap;  // per exam, locked + assigned so far
    std::vector<int> pattern_size;
    std::vector<double> inv_demand;
    std::vector<int> label;  // per free room position: exam index or -1
    long long total_deficit = 0;
    int empty_exams = 0;
    long nodes = 0;
    bool budget_hit = false;

    explicit SearchState(const SlotProblem& p) : problem(p) {
        std::vector<char> locked(p.rooms.size(), 0);
        assigned_cap.assign(p.exams.size(), 0);
        pattern_size.assign(p.exams.size(), 0);
        for (size_t e = 0; e < p.exams.size(); ++e) {
            for (int room_id : p.exams[e].locked_rooms) {
                for (size_t r = 0; r < p.rooms.size(); ++r) {
                    if (p.rooms[r].room == room_id) {
                        locked[r] = 1;
                        assigned_cap[e] += p.rooms[r].capacity;
                        ++pattern_size[e];
                        break;
                    }
                }
            }
        }
        inv_demand.resize(p.exams.size());
        for (size_t e = 0; e < p.exams.size(); ++e) {
            total_deficit += std::max<long long>(0, p.exams[e].demand - assigned_cap[e]);
            if (pattern_size[e] == 0) ++empty_exams;
            inv_demand[e] = 1.0 / static_cast<double>(p.exams[e].demand);
        }
        for (size_t r = 0; r < p.rooms.size(); ++r)
            if (!locked[r]) free_rooms.push_back(static_cast<int>(r));
        std::sort(free_rooms.begin(), free_rooms.end(), [&](int a, int b) {
            if (p.rooms[a].capacity != p.rooms[b].capacity)
                return p.rooms[a].capacity > p.rooms[b].capacity;
            return p.rooms[a].room < p.rooms[b].room;
        });
        eq_prev.assign(free_rooms.size(), 0);
        for (size_t k = 1; k < free_rooms.size(); ++k)
            eq_prev[k] =
                problem.rooms[free_rooms[k]].capacity == problem.rooms[free_rooms[k - 1]].capacity;
        suffix_cap.assign(free_rooms.size() + 1, 0);
        for (int k = static_cast<int>(free_rooms.size()) - 1; k >= 0; --k)
            suffix_cap[k] = suffix_cap[k + 1] + p.rooms[free_rooms[k]].capacity;
        label.assign(free_rooms.size(), -1);
    }

    int exam_count() const { return static_cast<int>(problem.exams.size()); }

    void assign(size_t k, int e) {
        const int cap = problem.rooms[free_rooms[k]].capacity;
        const long long deficit = problem.exams[e].demand - assigned_cap[e];
        total_deficit -= std::max<long long>(0, deficit) - std::max<long long>(0, deficit - cap);
        if (pattern_size[e] == 0) --empty_exams;
        assigned_cap[e] += cap;
        ++pattern_size[e];
        label[k] = e;
    }

    void unassign(size_t k) {
        const int e = label[k];
        const int cap = problem.rooms[free_rooms[k]].capacity;
        assigned_cap[e] -= cap;
        --pattern_size[e];
        if (pattern_size[e] == 0) ++empty_exams;
        const long long deficit = problem.exams[e].demand - assigned_cap[e];
        total_deficit += std::max<long long>(0, deficit) - std::max<long long>(0, deficit - cap);
        label[k] = -1;
    }

    // Label rank for the equal-capacity symmetry constraint.
    int rank_at(size_t k) const { return label[k] < 0 ? exam_count() : label[k]; }
    int min_rank(size_t k) const { return k > 0 && eq_prev[k] ? rank_at(k - 1) : 0; }

    bool all_satisfied() const { return total_deficit == 0 && empty_exams == 0; }

    std::vector<std::vector<int>> current_patterns() const {
        std::vector<std::vector<int>> patterns(problem.exams.size());
        for (size_t e = 0; e < problem.exams.size(); ++e)
            patterns[e] = problem.exams[e].locked_rooms;
        for (size_t k = 0; k < label.size(); ++k)
            if (label[k] >= 0) patterns[label[k]].push_back(problem.rooms[free_rooms[k]].room);
        for (auto& pattern : patterns) std::sort(pattern.begin(), pattern.end());
        return patterns;
    }
};

bool feasible_dfs(SearchState& s, size_t k) {
    if (++s.nodes > s.problem.node_budget) {
        s.budget_hit = true;
        return false;
    }
    if (s.total_deficit > s.suffix_cap[k]) return false;
    const int remaining = static_cast<int>(s.free_rooms.size() - k);
    if (s.empty_exams > remaining) return false;
    if (k == s.free_rooms.size()) return s.all_satisfied();

    const int lo = s.min_rank(k);
    for (int e = lo; e < s.exam_count(); ++e) {
        s.assign(k, e);
        if (feasible_dfs(s, k + 1)) return true;
        s.unassign(k);
        if (s.budget_hit) return false;
    }
    return feasible_dfs(s, k + 1);  // leave the room unused (rank = exam_count)
}

// Full comparison key of a complete assignment: higher min ratio wins, then
// fewer rooms, then lexicographically smaller flattened pattern list.
struct AssignmentKey {
    double ratio = -1.0;
    int rooms_used = 0;
    std::vector<int> flat;

    bool better_than(const AssignmentKey& other) const {
        if (ratio != other.ratio) return ratio > other.ratio;
        if (rooms_used != other.rooms_used) return rooms_used < other.rooms_used;
        return flat < other.flat;
    }
};

AssignmentKey make_key(const SlotProblem& p, const std::vector<std::vector<int>>& patterns) {
    AssignmentKey key;
    key.ratio = std::numeric_limits<double>::infinity();
    for (size_t e = 0; e < p.exams.size(); ++e) {
        long long cap = 0;
        for (int room_id : patterns[e])
            for (const SlotRoom& room : p.rooms)
                if (room.room == room_id) cap += room.capacity;
        key.ratio = std::min(key.ratio, static_cast<double>(cap) /
                                            static_cast<double>(p.exams[e].demand));
        key.rooms_used += static_cast<int>(patterns[e].size());
        for (int room_id : patterns[e]) key.flat.push_back(room_id);
        key.flat.push_back(-1);  // separator between exams
    }
    return key;
}

struct BestAssignment {
    bool found = false;
    AssignmentKey key;
    std::vector<std::vector<int>> patterns;
};

void optimal_dfs(SearchState& s, size_t k, BestAssignment& best) {
    if (++s.nodes > s.problem.node_budget) {
        s.budget_hit = true;
        return;
    }
    if (s.total_deficit > s.suffix_cap[k]) return;
    const int remaining = static_cast<int>(s.free_rooms.size() - k);
    if (s.empty_exams > remaining) return;

    // Remaining free capacity must cover every exam's deficit against the
    // incumbent ratio, or no completion can even tie it. The epsilon keeps
    // true ties explorable despite the rounded ratio product.
    if (best.found) {
        const double target = best.key.ratio;
        double need = 0.0;
        for (int e = 0; e < s.exam_count(); ++e) {
            const double gap = target * static_cast<double>(s.problem.exams[e].demand) -
                               static_cast<double>(s.assigned_cap[e]);
            if (gap > 0.0) need += gap;
        }
        if (need - 1e-6 > static_cast<double>(s.suffix_cap[k])) return;
    }

    if (k == s.free_rooms.size()) {
        if (!s.all_satisfied()) return;
        auto patterns = s.current_patterns();
        AssignmentKey key = make_key(s.problem, patterns);
        if (!best.found || key.better_than(best.key)) {
            best.found = true;
            best.key = std::move(key);
            best.patterns = std::move(patterns);
        }
        return;
    }

    // Neediest exam first so the first dive is a balanced greedy fill; the
    // explored set (and hence the optimum) does not depend on this order.
    const int m = s.exam_count();
    std::pair<double, int> order[32];
    for (int e = 0; e < m; ++e)
        order[e] = {static_cast<double>(s.assigned_cap[e]) * s.inv_demand[e], e};
    std::sort(order, order + m);

    const int lo = s.min_rank(k);
    for (int i = 0; i < m; ++i) {
        const int e = order[i].second;
        if (e < lo) continue;
        s.assign(k, e);
        optimal_dfs(s, k + 1, best);
        s.unassign(k);
        if (s.budget_hit) return;
    }
    optimal_dfs(s, k + 1, best);
}

}  // namespace

SlotSolveResult find_feasible(const SlotProblem& problem) {
    if (problem.exams.size() > 31)
        throw std::invalid_argument("find_feasible: too many exams in one slot");
    SearchState state(problem);
    SlotSolveResult result;
    bool found = feasible_dfs(state, 0);
    result.nodes = state.nodes;
    if (state.budget_hit) {
        result.status = SolveStatus::BudgetExceeded;
        return result;
    }
    if (!found) {
        result.status = SolveStatus::Infeasible;
        return result;
    }
    result.status = SolveStatus::Feasible;
    result.patterns = state.current_patterns();
    return result;
}

SlotSolveResult find_pcbett_optimal(const SlotProblem& problem) {
    if (problem.exams.size() > 31)
        throw std::invalid_argument("find_pcbett_optimal: too many exams in one slot");
    SearchState state(problem);
    BestAssignment best;
    optimal_dfs(state, 0, best);
    SlotSolveResult result;
    result.nodes = state.nodes;
    if (state.budget_hit) {
        result.status = SolveStatus::BudgetExceeded;
        return result;
    }
    if (!best.found) {
        result.status = SolveStatus::Infeasible;
        return result;
    }
    result.status = SolveStatus::Feasible;
    result.patterns = std::move(best.patterns);
    return result;
}

double min_assignment_ratio(const SlotProblem& problem,
                            const std::vector<std::vector<int>>& patterns) {
    double ratio = std::numeric_limits<double>::infinity();
    for (size_t e = 0; e < problem.exams.size(); ++e) {
        long long cap = 0;
        for (int room_id : patterns[e])
            for (const SlotRoom& room : problem.rooms)
                if (room.room == room_id) cap += room.capacity;
        ratio = std::min(ratio, static_cast<double>(cap) /
                                    static_cast<double>(problem.exams[e].demand));
    }
    return ratio;
}

std::vector<int> minimal_reduction(const std::vector<int>& pattern, int demand,
                                   const std::vector<int>& room_capacities) {
    if (pattern.size() > 24)
        throw std::invalid_argument("minimal_reduction: pattern too large to enumerate");
    std::vector<int> sorted = pattern;
    std::sort(sorted.begin(), sorted.end());

    long long full_cap = 0;
    for (int r : sorted) full_cap += room_capacities[r];
    if (full_cap < demand)
        throw std::invalid_argument("minimal_reduction: pattern does not cover the demand");

    const unsigned n = static_cast<unsigned>(sorted.size());
    int best_count = std::numeric_limits<int>::max();
    long long best_cap = std::numeric_limits<long long>::max();
    std::vector<int> best;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        long long cap = 0;
        int count = 0;
        for (unsigned b = 0; b < n; ++b)
            if (mask & (1u << b)) {
                cap += room_capacities[sorted[b]];
                ++count;
            }
        if (cap < demand) continue;
        if (count > best_count || (count == best_count && cap > best_cap)) continue;
        std::vector<int> subset;
        for (unsigned b = 0; b < n; ++b)
            if (mask & (1u << b)) subset.push_back(sorted[b]);
        if (count < best_count || cap < best_cap || subset < best) {
            best_count = count;
            best_cap = cap;
            best = std::move(subset);
        }
    }
    return best;
}

}  // namespace ettp
