#include "ettp/robustness.hpp"

#include <algorithm>
#include <cmath>

#include "ettp/room_assign.hpp"

namespace ettp {

namespace {

std::optional<double> mean_of(const std::vector<RobustnessRow>& rows, int RobustnessRow::*field) {
    if (rows.empty()) return std::nullopt;
    double sum = 0.0;
    for (const RobustnessRow& row : rows) sum += row.*field;
    return sum / static_cast<double>(rows.size());
}

std::vector<int> slot_members(const Instance& inst, const Timetable& tt, int slot) {
    std::vector<int> members;
    for (int e = 0; e < inst.exam_count(); ++e)
        if (tt.slots[e] == slot) members.push_back(e);
    return members;
}

bool slot_disturbed(const Instance& inst, const Timetable& tt, const Disturbance& d, int slot) {
    for (int e = 0; e < inst.exam_count(); ++e)
        if (tt.slots[e] == slot &&
            inst.pattern_capacity(tt.room_patterns[e]) < d.new_students[e])
            return true;
    return false;
}

}  // namespace

std::optional<double> RobustnessReport::mean_unmodified() const {
    return mean_of(rows, &RobustnessRow::unmodified);
}
std::optional<double> RobustnessReport::mean_after_heuristic() const {
    return mean_of(rows, &RobustnessRow::after_heuristic);
}
std::optional<double> RobustnessReport::mean_after_complete() const {
    return mean_of(rows, &RobustnessRow::after_complete);
}

Disturbance disturb(const Instance& inst, double sigma_factor, Rng& rng) {
    Disturbance d;
    d.sigma_factor = sigma_factor;
    d.new_students.resize(inst.exam_count());
    for (int e = 0; e < inst.exam_count(); ++e) {
        const double nominal = static_cast<double>(inst.students(e));
        double drawn = nominal;
        if (sigma_factor > 0.0) {
            std::normal_distribution<double> dist(nominal, sigma_factor * nominal);
            drawn = dist(rng);
        }
        d.new_students[e] = std::max(1, static_cast<int>(std::lround(drawn)));
    }
    return d;
}

int count_disturbed(const Instance& inst, const Disturbance& disturbance, const Timetable& tt) {
    std::vector<char> disturbed(inst.timeslot_count(), 0);
    for (int e = 0; e < inst.exam_count(); ++e)
        if (inst.pattern_capacity(tt.room_patterns[e]) < disturbance.new_students[e])
            disturbed[tt.slots[e]] = 1;
    int count = 0;
    for (char flag : disturbed) count += flag;
    return count;
}

std::optional<std::vector<std::pair<int, std::vector<int>>>> heuristic_recovery(
    const Instance& inst, const Timetable& tt, int slot, const Disturbance& disturbance,
    long node_budget) {
    const std::vector<int> members = slot_members(inst, tt, slot);

    std::vector<std::pair<int, std::vector<int>>> result;
    result.reserve(members.size());
    for (int e : members) result.emplace_back(e, tt.room_patterns[e]);
    if (!slot_disturbed(inst, tt, disturbance, slot)) return result;

    // Step 1: shrink every still-covered exam to a minimal pattern.
    std::vector<char> room_taken(inst.room_count(), 0);
    std::vector<int> deficient;
    for (auto& [e, pattern] : result) {
        const int demand = disturbance.new_students[e];
        if (inst.pattern_capacity(pattern) >= demand)
            pattern = minimal_reduction(pattern, demand, inst.room_capacities());
        else
            deficient.push_back(e);
        for (int r : pattern) room_taken[r] = 1;
    }

    // Step 2: give the freed and originally unused rooms to the deficient
    // exams, keeping their current rooms in place.
    SlotProblem problem;
    problem.node_budget = node_budget;
    std::vector<char> in_problem(inst.room_count(), 0);
    for (auto& [e, pattern] : result) {
        if (!std::binary_search(deficient.begin(), deficient.end(), e)) continue;
        problem.exams.push_back({e, disturbance.new_students[e], pattern});
        for (int r : pattern) in_problem[r] = 1;
    }
    for (int r = 0; r < inst.room_count(); ++r)
        if (in_problem[r] || !room_taken[r]) problem.rooms.push_back({r, inst.room_capacity(r)});

    const SlotSolveResult solved = find_feasible(problem);
    if (solved.status != SolveStatus::Feasible) return std::nullopt;
    for (size_t i = 0; i < problem.exams.size(); ++i)
        for (auto& [e, pattern] : result)
            if (e == problem.exams[i].exam) pattern = solved.patterns[i];
    return result;
}

std::optional<std::vector<std::pair<int, std::vector<int>>>> complete_recovery(
    const Instance& inst, const Timetable& tt, int slot, const Disturbance& disturbance,
    long node_budget) {
    const std::vector<int> members = slot_members(inst, tt, slot);

    SlotProblem problem;
    problem.node_budget = node_budget;
    for (int e : members) problem.exams.push_back({e, disturbance.new_students[e], {}});
    for (int r = 0; r < inst.room_count(); ++r)
        problem.rooms.push_back({r, inst.room_capacity(r)});

    const SlotSolveResult solved = find_feasible(problem);
    if (solved.status != SolveStatus::Feasible) return std::nullopt;
    std::vector<std::pair<int, std::vector<int>>> result;
    result.reserve(members.size());
    for (size_t i = 0; i < members.size(); ++i) result.emplace_back(members[i], solved.patterns[i]);
    return result;
}

RobustnessReport evaluate_robustness(const Instance& inst, const Timetable& tt, int repetitions,
                                     double sigma_factor, std::uint64_t seed, long node_budget) {
    RobustnessReport report;
    for (int rep = 0; rep < repetitions; ++rep) {
        Rng rng(split_seed(seed, static_cast<std::uint64_t>(rep) + 1));
        const Disturbance d = disturb(inst, sigma_factor, rng);

        RobustnessRow row;
        row.repetition = rep;
        for (int slot = 0; slot < inst.timeslot_count(); ++slot) {
            if (!slot_disturbed(inst, tt, d, slot)) continue;
            ++row.unmodified;
            if (!heuristic_recovery(inst, tt, slot, d, node_budget)) ++row.after_heuristic;
            if (!complete_recovery(inst, tt, slot, d, node_budget)) ++row.after_complete;
        }
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace ettp
