#include "ettp/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace ettp {

Instance::Instance(int timeslots, int slots_per_day, std::vector<int> room_capacities,
                   std::vector<int> students, std::vector<Conflict> conflicts)
    : timeslots_(timeslots),
      slots_per_day_(slots_per_day > 0 ? slots_per_day : 1),
      room_capacities_(std::move(room_capacities)),
      students_(std::move(students)),
      conflicts_(std::move(conflicts)) {
    const int n = exam_count();
    adjacency_.assign(n, {});
    for (const Conflict& c : conflicts_) {
        if (c.first < 0 || c.second >= n || c.first >= c.second || c.weight <= 0) continue;
        adjacency_[c.first].emplace_back(c.second, c.weight);
        adjacency_[c.second].emplace_back(c.first, c.weight);
    }
    for (auto& row : adjacency_) std::sort(row.begin(), row.end());
}

long long Instance::pattern_capacity(const std::vector<int>& rooms) const {
    long long total = 0;
    for (int r : rooms) total += room_capacities_[r];
    return total;
}

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> out;
    if (inst.timeslot_count() < 1) out.push_back("timeslots: must be >= 1");
    if (inst.slots_per_day() < 1) out.push_back("slots_per_day: must be >= 1");
    if (inst.slots_per_day() > inst.timeslot_count())
        out.push_back("slots_per_day: must be <= timeslots");
    for (int r = 0; r < inst.room_count(); ++r)
        if (inst.room_capacity(r) < 1)
            out.push_back("rooms[" + std::to_string(r) + "]: capacity must be >= 1");
    for (int e = 0; e < inst.exam_count(); ++e)
        if (inst.students(e) < 1)
            out.push_back("exams[" + std::to_string(e) + "]: students must be >= 1");
    const auto& conflicts = inst.conflicts();
    for (size_t k = 0; k < conflicts.size(); ++k) {
        const Conflict& c = conflicts[k];
        const std::string where = "conflicts[" + std::to_string(k) + "]";
        if (c.first == c.second) {
            out.push_back(where + ": self-conflict (" + std::to_string(c.first) + "," +
                          std::to_string(c.second) + ")");
            continue;
        }
        if (c.first > c.second)
            out.push_back(where + ": key must satisfy i < j");
        if (c.first < 0 || c.second >= inst.exam_count())
            out.push_back(where + ": exam index out of range");
        if (c.weight < 1) out.push_back(where + ": weight must be >= 1");
    }
    return out;
}

std::vector<std::string> check_hard(const Instance& inst, const Timetable& tt) {
    std::vector<std::string> out;
    const int n = inst.exam_count();
    if (static_cast<int>(tt.slots.size()) != n ||
        static_cast<int>(tt.room_patterns.size()) != n) {
        out.push_back("H1: timetable does not assign every exam exactly once");
        return out;
    }
    for (int e = 0; e < n; ++e) {
        if (tt.slots[e] < 0 || tt.slots[e] >= inst.timeslot_count())
            out.push_back("H1: exam " + std::to_string(e) + " has timeslot " +
                          std::to_string(tt.slots[e]) + " out of range");
        if (tt.room_patterns[e].empty())
            out.push_back("H2: exam " + std::to_string(e) + " has no room");
        for (int r : tt.room_patterns[e])
            if (r < 0 || r >= inst.room_count())
                out.push_back("H4: exam " + std::to_string(e) + " references invalid room " +
                              std::to_string(r));
    }
    if (!out.empty()) return out;

    // H3: conflicting pairs must not share a timeslot
    for (const Conflict& c : inst.conflicts()) {
        if (c.weight <= 0) continue;
        if (tt.slots[c.first] == tt.slots[c.second])
            out.push_back("H3: conflicting exams " + std::to_string(c.first) + " and " +
                          std::to_string(c.second) + " share timeslot " +
                          std::to_string(tt.slots[c.first]));
    }

    // H4: within a timeslot no room is used twice
    std::vector<std::vector<std::pair<int, int>>> used(inst.timeslot_count());
    for (int e = 0; e < n; ++e)
        for (int r : tt.room_patterns[e]) used[tt.slots[e]].emplace_back(r, e);
    for (int t = 0; t < inst.timeslot_count(); ++t) {
        auto& v = used[t];
        std::sort(v.begin(), v.end());
        for (size_t k = 1; k < v.size(); ++k)
            if (v[k].first == v[k - 1].first)
                out.push_back("H4: room " + std::to_string(v[k].first) + " used by exams " +
                              std::to_string(v[k - 1].second) + " and " +
                              std::to_string(v[k].second) + " in timeslot " + std::to_string(t));
    }

    // H5: assigned capacity must cover the students
    for (int e = 0; e < n; ++e) {
        long long cap = inst.pattern_capacity(tt.room_patterns[e]);
        if (cap < inst.students(e))
            out.push_back("H5: exam " + std::to_string(e) + " has capacity " +
                          std::to_string(cap) + " < " + std::to_string(inst.students(e)) +
                          " students");
    }
    return out;
}

double weighted_objective(long long two_in_a_row, long long two_in_a_day,
                          long long period_spread, double max_load_ratio,
                          const Weights& weights, bool pcbett_mode) {
    double value = weights.two_in_a_row * static_cast<double>(two_in_a_row) +
                   weights.two_in_a_day * static_cast<double>(two_in_a_day) +
                   weights.period_spread * static_cast<double>(period_spread);
    if (pcbett_mode) value += weights.capacity_ratio * max_load_ratio;
    return value;
}

namespace {

// Adds one conflicting pair's contribution to the S1-S3 counters.
// d == 0 never contributes (hard-infeasible under H3, and period spread
// requires distance > 0).
inline void add_pair(int slot_i, int slot_j, long long weight, int slots_per_day, int lambda,
                     long long& s1, long long& s2, long long& s3) {
    const int d = std::abs(slot_i - slot_j);
    if (slot_i / slots_per_day == slot_j / slots_per_day) {
        if (d == 1) s1 += weight;
        if (d >= 2) s2 += weight;
    }
    if (d > 0 && d < lambda) s3 += weight;
}

// max over exams of students/capacity with the patterns of `tt`, except that
// exams listed in `replaced` use their replacement pattern.
double max_load_with(const Instance& inst, const Timetable& tt,
                     const std::vector<std::pair<int, std::vector<int>>>& replaced) {
    std::vector<const std::vector<int>*> pattern(inst.exam_count());
    for (int e = 0; e < inst.exam_count(); ++e) pattern[e] = &tt.room_patterns[e];
    for (const auto& [e, rooms] : replaced) pattern[e] = &rooms;
    double worst = 0.0;
    for (int e = 0; e < inst.exam_count(); ++e) {
        double cap = static_cast<double>(inst.pattern_capacity(*pattern[e]));
        if (cap <= 0.0) return std::numeric_limits<double>::infinity();
        double load = static_cast<double>(inst.students(e)) / cap;
        if (load > worst) worst = load;
    }
    return worst;
}

}  // namespace

PenaltyBreakdown soft_penalties(const Instance& inst, const Timetable& tt,
                                const Weights& weights, bool pcbett_mode) {
    PenaltyBreakdown out;
    for (const Conflict& c : inst.conflicts())
        add_pair(tt.slots[c.first], tt.slots[c.second], c.weight, inst.slots_per_day(),
                 weights.spread_distance, out.two_in_a_row, out.two_in_a_day,
                 out.period_spread);
    for (int e = 0; e < inst.exam_count(); ++e) {
        double cap = static_cast<double>(inst.pattern_capacity(tt.room_patterns[e]));
        double students = static_cast<double>(inst.students(e));
        if (cap > 0.0) {
            out.min_capacity_ratio = std::min(out.min_capacity_ratio, cap / students);
            out.max_load_ratio = std::max(out.max_load_ratio, students / cap);
        } else {
            out.min_capacity_ratio = 0.0;
            out.max_load_ratio = std::numeric_limits<double>::infinity();
        }
    }
    out.weighted = weighted_objective(out.two_in_a_row, out.two_in_a_day, out.period_spread,
                                      out.max_load_ratio, weights, pcbett_mode);
    return out;
}

PenaltyDelta objective_delta(const Instance& inst, const Timetable& tt,
                             const PenaltyBreakdown& current, const SlotSwap& move,
                             const Weights& weights, bool pcbett_mode) {
    // New slot per moved exam; everyone else stays put.
    std::vector<signed char> moved(inst.exam_count(), 0);
    for (int e : move.to_b) moved[e] = 1;
    for (int e : move.to_a) moved[e] = 2;
    auto slot_after = [&](int e) {
        return moved[e] == 1 ? move.slot_b : moved[e] == 2 ? move.slot_a : tt.slots[e];
    };

    PenaltyDelta delta;
    long long r1 = 0, r2 = 0, r3 = 0;  // removed contributions
    long long a1 = 0, a2 = 0, a3 = 0;  // added contributions
    auto visit = [&](int e) {
        for (const auto& [other, weight] : inst.conflicts_of(e)) {
            if (moved[other] && other < e) continue;  // both endpoints moved: count once
            add_pair(tt.slots[e], tt.slots[other], weight, inst.slots_per_day(),
                     weights.spread_distance, r1, r2, r3);
            add_pair(slot_after(e), slot_after(other), weight, inst.slots_per_day(),
                     weights.spread_distance, a1, a2, a3);
        }
    };
    for (int e : move.to_b) visit(e);
    for (int e : move.to_a) visit(e);
    delta.two_in_a_row = a1 - r1;
    delta.two_in_a_day = a2 - r2;
    delta.period_spread = a3 - r3;

    double load_after = current.max_load_ratio;
    if (pcbett_mode) load_after = max_load_with(inst, tt, move.new_patterns);
    delta.max_load_ratio_after = load_after;

    const double before =
        weighted_objective(current.two_in_a_row, current.two_in_a_day, current.period_spread,
                           current.max_load_ratio, weights, pcbett_mode);
    const double after = weighted_objective(
        current.two_in_a_row + delta.two_in_a_row, current.two_in_a_day + delta.two_in_a_day,
        current.period_spread + delta.period_spread, load_after, weights, pcbett_mode);
    delta.weighted = after - before;
    return delta;
}

void apply_swap(Timetable& tt, const SlotSwap& move) {
    for (int e : move.to_b) tt.slots[e] = move.slot_b;
    for (int e : move.to_a) tt.slots[e] = move.slot_a;
    for (const auto& [e, rooms] : move.new_patterns) tt.room_patterns[e] = rooms;
}

}  // namespace ettp
