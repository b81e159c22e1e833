#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace ettp {

// One entry of the sparse conflict matrix: `weight` students take both
// exams `first` and `second` (first < second, weight >= 1 when present).
struct Conflict {
    int first = 0;
    int second = 0;
    int weight = 0;
};

// An examination timetabling instance. Immutable once constructed; the
// constructor builds a per-exam adjacency index over the conflict list.
class Instance {
public:
    Instance() = default;
    Instance(int timeslots, int slots_per_day, std::vector<int> room_capacities,
             std::vector<int> students, std::vector<Conflict> conflicts);

    int exam_count() const { return static_cast<int>(students_.size()); }
    int room_count() const { return static_cast<int>(room_capacities_.size()); }
    int timeslot_count() const { return timeslots_; }
    int slots_per_day() const { return slots_per_day_; }
    int day_of(int slot) const { return slot / slots_per_day_; }

    int students(int exam) const { return students_[exam]; }
    int room_capacity(int room) const { return room_capacities_[room]; }
    const std::vector<int>& student_counts() const { return students_; }
    const std::vector<int>& room_capacities() const { return room_capacities_; }
    const std::vector<Conflict>& conflicts() const { return conflicts_; }

    // Conflicting partners of `exam` as (other exam, weight), ascending by id.
    // Built only from well-formed conflict entries; malformed ones are left to
    // validate_instance to report.
    const std::vector<std::pair<int, int>>& conflicts_of(int exam) const {
        return adjacency_[exam];
    }

    // Total capacity of a set of rooms.
    long long pattern_capacity(const std::vector<int>& rooms) const;

private:
    int timeslots_ = 0;
    int slots_per_day_ = 1;
    std::vector<int> room_capacities_;
    std::vector<int> students_;
    std::vector<Conflict> conflicts_;
    std::vector<std::vector<std::pair<int, int>>> adjacency_;
};

// A full solution: one timeslot and one room pattern per exam.
// room_patterns[e] is kept sorted ascending.
struct Timetable {
    std::vector<int> slots;
    std::vector<std::vector<int>> room_patterns;
};

// Penalty weights per conflicting student, plus the ratio weight used by the
// robustness-aware objective and the period-spread distance.
struct Weights {
    double two_in_a_row = 300.0;
    double two_in_a_day = 150.0;
    double period_spread = 5.0;
    double capacity_ratio = 3000.0;
    int spread_distance = 4;
};

struct PenaltyBreakdown {
    long long two_in_a_row = 0;
    long long two_in_a_day = 0;
    long long period_spread = 0;
    // min over exams of capacity(pattern)/students; +inf for zero exams
    double min_capacity_ratio = std::numeric_limits<double>::infinity();
    // max over exams of students/capacity(pattern); the term the ratio-aware
    // objective minimizes (reciprocal of min_capacity_ratio)
    double max_load_ratio = 0.0;
    double weighted = 0.0;
};

// A move that exchanges two sets of exams between two timeslots and installs
// fresh room patterns for the exams of the changed slots.
struct SlotSwap {
    int slot_a = 0;
    int slot_b = 0;
    std::vector<int> to_b;  // exams moving slot_a -> slot_b
    std::vector<int> to_a;  // exams moving slot_b -> slot_a
    // (exam, new sorted pattern) for every exam whose pattern changes
    std::vector<std::pair<int, std::vector<int>>> new_patterns;
};

struct PenaltyDelta {
    long long two_in_a_row = 0;
    long long two_in_a_day = 0;
    long long period_spread = 0;
    double max_load_ratio_after = 0.0;
    double weighted = 0.0;
};

// Checks the Instance invariants. Empty result means the instance is
// well-formed; each entry names the offending field and index.
std::vector<std::string> validate_instance(const Instance& inst);

// Checks hard constraints H1-H5. Violation messages are prefixed with the
// constraint id ("H1:".."H5:") so callers can filter by class.
std::vector<std::string> check_hard(const Instance& inst, const Timetable& tt);

// Weighted objective from the integer counters and the worst load ratio.
// soft_penalties and objective_delta both combine through this one function
// so their weighted values are bit-identical.
double weighted_objective(long long two_in_a_row, long long two_in_a_day,
                          long long period_spread, double max_load_ratio,
                          const Weights& weights, bool pcbett_mode);

// Full evaluation of the soft criteria. pcbett_mode switches the weighted
// objective between plain S1-S3 and S1-S3 plus the worst-load term.
PenaltyBreakdown soft_penalties(const Instance& inst, const Timetable& tt,
                                const Weights& weights, bool pcbett_mode);

// Incremental objective change of a SlotSwap. `current` must be the
// breakdown of `tt` under the same weights/mode. The integer deltas are
// exact; the weighted delta equals soft_penalties(after).weighted -
// soft_penalties(before).weighted.
PenaltyDelta objective_delta(const Instance& inst, const Timetable& tt,
                             const PenaltyBreakdown& current, const SlotSwap& move,
                             const Weights& weights, bool pcbett_mode);

// Applies a SlotSwap in place.
void apply_swap(Timetable& tt, const SlotSwap& move);

}  // namespace ettp
