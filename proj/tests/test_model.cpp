#include <doctest.h>

#include <functional>
#include <stdexcept>
#include <string>
#include <random>

#include "ettp/json_io.hpp"
#include "ettp/model.hpp"
#include "oracles.hpp"

using namespace ettp;

namespace {

// Two exams in two timeslots, each with its own big room.
Instance two_exam_instance(int conflict_weight = 0, int timeslots = 6, int slots_per_day = 3) {
    std::vector<Conflict> conflicts;
    if (conflict_weight > 0) conflicts.push_back({0, 1, conflict_weight});
    return Instance(timeslots, slots_per_day, {50, 50}, {10, 10}, conflicts);
}

Timetable simple_timetable(const std::vector<int>& slots, const std::vector<std::vector<int>>& rooms) {
    Timetable tt;
    tt.slots = slots;
    tt.room_patterns = rooms;
    return tt;
}

// Random instance where exam e owns room e; patterns never collide and
// always cover, so only the S1-S3 structure varies.
Instance random_instance(std::mt19937_64& rng, int max_exams = 10) {
    std::uniform_int_distribution<int> nexams(2, max_exams);
    const int n = nexams(rng);
    std::uniform_int_distribution<int> nslots(2, 8);
    const int T = nslots(rng);
    std::uniform_int_distribution<int> spd(1, T);
    std::uniform_int_distribution<int> students(1, 40);
    std::vector<int> nu(n), caps(n);
    for (int e = 0; e < n; ++e) {
        nu[e] = students(rng);
        caps[e] = nu[e] + students(rng);
    }
    std::vector<Conflict> conflicts;
    std::uniform_int_distribution<int> weight(1, 9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (unit(rng) < 0.4) conflicts.push_back({i, j, weight(rng)});
    return Instance(T, spd(rng), caps, nu, conflicts);
}

Timetable random_timetable(const Instance& inst, std::mt19937_64& rng) {
    Timetable tt;
    std::uniform_int_distribution<int> slot(0, inst.timeslot_count() - 1);
    for (int e = 0; e < inst.exam_count(); ++e) {
        tt.slots.push_back(slot(rng));
        tt.room_patterns.push_back({e});
    }
    return tt;
}

SlotSwap random_swap(const Instance& inst, const Timetable& tt, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> slot(0, inst.timeslot_count() - 1);
    SlotSwap move;
    move.slot_a = slot(rng);
    do {
        move.slot_b = slot(rng);
    } while (move.slot_b == move.slot_a);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int e = 0; e < inst.exam_count(); ++e) {
        if (tt.slots[e] == move.slot_a && unit(rng) < 0.5) move.to_b.push_back(e);
        if (tt.slots[e] == move.slot_b && unit(rng) < 0.5) move.to_a.push_back(e);
    }
    return move;
}

}  // namespace

TEST_SUITE("model") {

TEST_CASE("validate_instance accepts a well-formed two-exam instance") {
    CHECK(validate_instance(two_exam_instance(5)).empty());
}

TEST_CASE("validate_instance flags a zero student count with the exam index") {
    Instance bad(6, 3, {50, 50}, {0, 10}, {});
    const auto violations = validate_instance(bad);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("exams[0]") != std::string::npos);
}

TEST_CASE("validate_instance flags a self-conflict") {
    Instance bad(6, 3, {50, 50, 50, 50}, {5, 5, 5, 5}, {{3, 3, 1}});
    const auto violations = validate_instance(bad);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].find("self-conflict") != std::string::npos);
}

TEST_CASE("validate_instance flags reversed keys, zero weights and bad layout") {
    Instance bad(2, 3, {0}, {1}, {{1, 0, 1}, {0, 1, 0}});
    const auto violations = validate_instance(bad);
    // slots_per_day > T, room 0, reversed key, out-of-range exam, weight 0
    CHECK(violations.size() == 5);
}

TEST_CASE("check_hard reports a single H3 violation for a conflicting pair sharing a slot") {
    Instance inst = two_exam_instance(5);
    Timetable tt = simple_timetable({2, 2}, {{0}, {1}});
    const auto violations = check_hard(inst, tt);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rfind("H3:", 0) == 0);
}

TEST_CASE("check_hard reports H5 when capacity falls short") {
    Instance inst(6, 3, {9}, {10}, {});
    Timetable tt = simple_timetable({0}, {{0}});
    const auto violations = check_hard(inst, tt);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].rfind("H5:", 0) == 0);
}

TEST_CASE("check_hard reports H2, H4 and H1 structural problems") {
    Instance inst(6, 3, {50, 50}, {10, 10}, {});
    CHECK(check_hard(inst, simple_timetable({0, 1}, {{}, {1}}))[0].rfind("H2:", 0) == 0);
    CHECK(check_hard(inst, simple_timetable({0, 0}, {{0}, {0}}))[0].rfind("H4:", 0) == 0);
    CHECK(check_hard(inst, simple_timetable({0, 9}, {{0}, {1}}))[0].rfind("H1:", 0) == 0);
}

TEST_CASE("soft_penalties is zero without conflicts") {
    Instance inst = two_exam_instance(0);
    Timetable tt = simple_timetable({0, 1}, {{0}, {1}});
    const PenaltyBreakdown p = soft_penalties(inst, tt, Weights{}, false);
    CHECK(p.two_in_a_row == 0);
    CHECK(p.two_in_a_day == 0);
    CHECK(p.period_spread == 0);
    CHECK(p.weighted == 0.0);
}

TEST_CASE("soft_penalties: adjacent same-day pair with weight 7 costs 2135") {
    Instance inst = two_exam_instance(7);
    Timetable tt = simple_timetable({0, 1}, {{0}, {1}});  // same day, distance 1
    Weights w;  // 300/150/5, lambda 4
    const PenaltyBreakdown p = soft_penalties(inst, tt, w, false);
    CHECK(p.two_in_a_row == 7);
    CHECK(p.two_in_a_day == 0);
    CHECK(p.period_spread == 7);
    CHECK(p.weighted == doctest::Approx(2135.0));
}

TEST_CASE("soft_penalties: same-day non-adjacent pair counts S2 not S1") {
    Instance inst = two_exam_instance(7);
    Timetable tt = simple_timetable({0, 2}, {{0}, {1}});  // same day, distance 2
    const PenaltyBreakdown p = soft_penalties(inst, tt, Weights{}, false);
    CHECK(p.two_in_a_row == 0);
    CHECK(p.two_in_a_day == 7);
    CHECK(p.period_spread == 7);
}

TEST_CASE("soft_penalties: adjacent pair across a day boundary counts only S3") {
    Instance inst = two_exam_instance(7);
    Timetable tt = simple_timetable({2, 3}, {{0}, {1}});  // day 0 -> day 1
    const PenaltyBreakdown p = soft_penalties(inst, tt, Weights{}, false);
    CHECK(p.two_in_a_row == 0);
    CHECK(p.two_in_a_day == 0);
    CHECK(p.period_spread == 7);
}

TEST_CASE("soft_penalties: min capacity ratio of a lone exam") {
    Instance inst(6, 3, {12}, {10}, {});
    Timetable tt = simple_timetable({0}, {{0}});
    const PenaltyBreakdown p = soft_penalties(inst, tt, Weights{}, false);
    CHECK(p.min_capacity_ratio == doctest::Approx(1.2));
    CHECK(p.max_load_ratio == doctest::Approx(10.0 / 12.0));
}

TEST_CASE("pcbett mode adds the worst-load term to the weighted objective") {
    Instance inst(6, 3, {12}, {10}, {});
    Timetable tt = simple_timetable({0}, {{0}});
    Weights w;
    const PenaltyBreakdown nominal = soft_penalties(inst, tt, w, false);
    const PenaltyBreakdown ratio = soft_penalties(inst, tt, w, true);
    CHECK(nominal.weighted == 0.0);
    CHECK(ratio.weighted == doctest::Approx(3000.0 * 10.0 / 12.0));
}

TEST_CASE("objective_delta: the null move is exactly zero") {
    Instance inst = two_exam_instance(7);
    Timetable tt = simple_timetable({0, 1}, {{0}, {1}});
    const PenaltyBreakdown current = soft_penalties(inst, tt, Weights{}, false);
    SlotSwap move;
    move.slot_a = 0;
    move.slot_b = 1;
    const PenaltyDelta d = objective_delta(inst, tt, current, move, Weights{}, false);
    CHECK(d.two_in_a_row == 0);
    CHECK(d.weighted == 0.0);
}

TEST_CASE("objective_delta: separating the adjacent pair recovers -2135") {
    Instance inst = two_exam_instance(7);
    Timetable tt = simple_timetable({0, 1}, {{0}, {1}});
    Weights w;
    const PenaltyBreakdown current = soft_penalties(inst, tt, w, false);
    SlotSwap move;  // move exam 1 from slot 1 to slot 5 (distance 5 >= lambda)
    move.slot_a = 1;
    move.slot_b = 5;
    move.to_b = {1};
    const PenaltyDelta d = objective_delta(inst, tt, current, move, w, false);
    CHECK(d.weighted == doctest::Approx(-2135.0));
    Timetable after = tt;
    apply_swap(after, move);
    CHECK(soft_penalties(inst, after, w, false).weighted == 0.0);
}

TEST_CASE("objective_delta matches full re-evaluation on random moves") {
    std::mt19937_64 rng(20240811);
    Weights w;
    for (int round = 0; round < 300; ++round) {
        const Instance inst = random_instance(rng);
        Timetable tt = random_timetable(inst, rng);
        const bool pcbett = round % 2 == 0;
        PenaltyBreakdown current = soft_penalties(inst, tt, w, pcbett);
        for (int step = 0; step < 5; ++step) {
            const SlotSwap move = random_swap(inst, tt, rng);
            const PenaltyDelta d = objective_delta(inst, tt, current, move, w, pcbett);
            Timetable after = tt;
            apply_swap(after, move);
            const PenaltyBreakdown full = soft_penalties(inst, after, w, pcbett);
            CHECK(full.two_in_a_row - current.two_in_a_row == d.two_in_a_row);
            CHECK(full.two_in_a_day - current.two_in_a_day == d.two_in_a_day);
            CHECK(full.period_spread - current.period_spread == d.period_spread);
            CHECK(full.weighted - current.weighted == d.weighted);
            tt = after;
            current = full;
        }
    }
}

TEST_CASE("deltas summed along a move sequence equal the full-evaluation difference") {
    std::mt19937_64 rng(77);
    Weights w;
    const Instance inst = random_instance(rng);
    Timetable tt = random_timetable(inst, rng);
    const PenaltyBreakdown start = soft_penalties(inst, tt, w, false);
    PenaltyBreakdown current = start;
    long long sum1 = 0, sum2 = 0, sum3 = 0;
    for (int step = 0; step < 50; ++step) {
        const SlotSwap move = random_swap(inst, tt, rng);
        const PenaltyDelta d = objective_delta(inst, tt, current, move, w, false);
        sum1 += d.two_in_a_row;
        sum2 += d.two_in_a_day;
        sum3 += d.period_spread;
        apply_swap(tt, move);
        current.two_in_a_row += d.two_in_a_row;
        current.two_in_a_day += d.two_in_a_day;
        current.period_spread += d.period_spread;
    }
    const PenaltyBreakdown end = soft_penalties(inst, tt, w, false);
    CHECK(end.two_in_a_row - start.two_in_a_row == sum1);
    CHECK(end.two_in_a_day - start.two_in_a_day == sum2);
    CHECK(end.period_spread - start.period_spread == sum3);
}

TEST_CASE("S1-S3 do not depend on room patterns") {
    std::mt19937_64 rng(123);
    const Instance inst = random_instance(rng);
    Timetable tt = random_timetable(inst, rng);
    const PenaltyBreakdown before = soft_penalties(inst, tt, Weights{}, false);
    // replace every pattern; slots untouched
    for (int e = 0; e < inst.exam_count(); ++e)
        tt.room_patterns[e] = {(e + 1) % inst.exam_count()};
    const PenaltyBreakdown after = soft_penalties(inst, tt, Weights{}, false);
    CHECK(before.two_in_a_row == after.two_in_a_row);
    CHECK(before.two_in_a_day == after.two_in_a_day);
    CHECK(before.period_spread == after.period_spread);
}

TEST_CASE("an S1 pair is never an S2 pair but is an S3 pair when lambda > 1") {
    Weights w;
    REQUIRE(w.spread_distance > 1);
    for (int spd = 1; spd <= 4; ++spd)
        for (int t1 = 0; t1 < 8; ++t1)
            for (int t2 = 0; t2 < 8; ++t2) {
                if (t1 == t2) continue;
                Instance inst(8, spd, {50, 50}, {10, 10}, {{0, 1, 1}});
                Timetable tt = simple_timetable({t1, t2}, {{0}, {1}});
                const PenaltyBreakdown p = soft_penalties(inst, tt, w, false);
                CHECK(p.two_in_a_row * p.two_in_a_day == 0);
                if (p.two_in_a_row == 1) CHECK(p.period_spread == 1);
            }
}

TEST_CASE("maximizing min capacity ratio equals minimizing max load ratio") {
    // Exhaustive over assignments for <= 3 exams, <= 4 rooms: the argmax set
    // of min k/nu must equal the argmin set of max nu/k.
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> cap(1, 6), dem(1, 6);
    for (int round = 0; round < 60; ++round) {
        std::uniform_int_distribution<int> nr(1, 4), ne(1, 3);
        std::vector<int> capacities(nr(rng)), demands(ne(rng));
        for (int& c : capacities) c = cap(rng);
        for (int& d : demands) d = dem(rng);
        const auto problem = oracle::make_slot(capacities, demands);

        // Enumerate all feasible assignments; collect both optima.
        struct Leaf {
            double min_ratio;
            double max_load;
            std::vector<std::vector<int>> patterns;
        };
        std::vector<Leaf> leaves;
        std::vector<std::vector<int>> patterns(demands.size());
        std::function<void(size_t)> walk = [&](size_t k) {
            if (k == capacities.size()) {
                double min_ratio = std::numeric_limits<double>::infinity();
                double max_load = 0;
                for (size_t e = 0; e < demands.size(); ++e) {
                    if (patterns[e].empty()) return;
                    long long c = 0;
                    for (int r : patterns[e]) c += capacities[r];
                    if (c < demands[e]) return;
                    min_ratio = std::min(min_ratio, double(c) / demands[e]);
                    max_load = std::max(max_load, double(demands[e]) / c);
                }
                leaves.push_back({min_ratio, max_load, patterns});
                return;
            }
            for (size_t e = 0; e < demands.size(); ++e) {
                patterns[e].push_back(static_cast<int>(k));
                walk(k + 1);
                patterns[e].pop_back();
            }
            walk(k + 1);
        };
        walk(0);
        if (leaves.empty()) continue;
        double best_ratio = -1, best_load = std::numeric_limits<double>::infinity();
        for (const Leaf& leaf : leaves) {
            best_ratio = std::max(best_ratio, leaf.min_ratio);
            best_load = std::min(best_load, leaf.max_load);
        }
        for (const Leaf& leaf : leaves)
            CHECK((leaf.min_ratio == best_ratio) == (leaf.max_load == best_load));
        (void)problem;
    }
}

TEST_CASE("instance JSON round-trips exactly") {
    Instance inst = two_exam_instance(7);
    const std::string text = serialize_instance(inst);
    const Instance back = parse_instance(text);
    CHECK(serialize_instance(back) == text);
    CHECK(back.exam_count() == inst.exam_count());
    CHECK(back.conflicts().size() == 1);
    CHECK(back.conflicts_of(0).size() == 1);
}

TEST_CASE("timetable JSON round-trips exactly") {
    Timetable tt = simple_timetable({0, 3}, {{0, 1}, {2}});
    const std::string text = serialize_timetable(tt);
    const Timetable back = parse_timetable(text, 2);
    CHECK(back.slots == tt.slots);
    CHECK(back.room_patterns == tt.room_patterns);
    CHECK(serialize_timetable(back) == text);
}

TEST_CASE("instance parser rejects malformed input") {
    CHECK_THROWS_AS(parse_instance("{"), std::runtime_error);
    CHECK_THROWS_AS(parse_instance(R"({"timeslots": 3})"), std::runtime_error);
    CHECK_THROWS_AS(
        parse_instance(
            R"({"timeslots":3,"slots_per_day":1,"rooms":[{"id":5,"capacity":4}],"exams":[],"conflicts":[]})"),
        std::runtime_error);
    CHECK_THROWS_AS(parse_timetable(R"({"assignments":[]})", 2), std::runtime_error);
}

}  // TEST_SUITE
