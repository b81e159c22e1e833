#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ettp/model.hpp"
#include "ettp/rng.hpp"

namespace ettp {

// A realized registration scenario: the actual student counts per exam.
struct Disturbance {
    std::vector<int> new_students;
    double sigma_factor = 0.2;
};

struct RobustnessRow {
    int repetition = 0;
    int unmodified = 0;        // disturbed timeslots, no recovery
    int after_heuristic = 0;   // still disturbed after heuristic recovery
    int after_complete = 0;    // still disturbed after complete recovery
};

struct RobustnessReport {
    std::vector<RobustnessRow> rows;

    // Means are absent when there are no repetitions.
    std::optional<double> mean_unmodified() const;
    std::optional<double> mean_after_heuristic() const;
    std::optional<double> mean_after_complete() const;
};

// Per exam: round(Normal(students, sigma_factor * students)), clamped to
// >= 1. sigma_factor == 0 reproduces the nominal counts exactly.
Disturbance disturb(const Instance& inst, double sigma_factor, Rng& rng);

// Timeslots containing at least one exam whose pattern capacity no longer
// covers its realized student count.
int count_disturbed(const Instance& inst, const Disturbance& disturbance, const Timetable& tt);

// Recovered patterns for the exams of `slot`, as (exam, rooms) pairs in
// ascending exam order, or nullopt when the slot cannot be recovered.
//
// Shrinks every still-covered exam to a minimal pattern (rooms are only
// removed, never added), then distributes the freed plus originally unused
// rooms to the deficient exams with the exact slot solver. A slot with no
// deficient exam is returned unchanged.
std::optional<std::vector<std::pair<int, std::vector<int>>>> heuristic_recovery(
    const Instance& inst, const Timetable& tt, int slot, const Disturbance& disturbance,
    long node_budget = 1'000'000);

// Drops all patterns of the slot and reassigns every room from scratch
// against the realized counts. The slot solver is exact, so nullopt proves
// the slot unrecoverable by any room reassignment.
std::optional<std::vector<std::pair<int, std::vector<int>>>> complete_recovery(
    const Instance& inst, const Timetable& tt, int slot, const Disturbance& disturbance,
    long node_budget = 1'000'000);

// Repeats `repetitions` disturbances of `tt` and counts disturbed timeslots
// before recovery and after each strategy applied independently to every
// originally disturbed slot. Timeslot membership is never altered, so the
// S1-S3 penalties are unchanged by construction.
RobustnessReport evaluate_robustness(const Instance& inst, const Timetable& tt, int repetitions,
                                     double sigma_factor, std::uint64_t seed,
                                     long node_budget = 1'000'000);

}  // namespace ettp
