#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <random>

#include "ettp/room_assign.hpp"
#include "oracles.hpp"

using namespace ettp;

TEST_SUITE("room-assign") {

TEST_CASE("find_feasible solves the {8,5,10} / {12,6} slot") {
    const SlotProblem p = oracle::make_slot({8, 5, 10}, {12, 6});
    const SlotSolveResult r = find_feasible(p);
    REQUIRE(r.status == SolveStatus::Feasible);
    long long cap0 = 0, cap1 = 0;
    for (int id : r.patterns[0]) cap0 += p.rooms[id].capacity;
    for (int id : r.patterns[1]) cap1 += p.rooms[id].capacity;
    CHECK(cap0 >= 12);
    CHECK(cap1 >= 6);
}

TEST_CASE("find_feasible proves {5,5,10} / {12,6} infeasible") {
    const SlotProblem p = oracle::make_slot({5, 5, 10}, {12, 6});
    CHECK(find_feasible(p).status == SolveStatus::Infeasible);
    CHECK(oracle::brute_force_slot(p).feasible == false);
}

TEST_CASE("a single exam takes the only sufficient room") {
    const SlotProblem p = oracle::make_slot({15}, {10});
    const SlotSolveResult r = find_feasible(p);
    REQUIRE(r.status == SolveStatus::Feasible);
    CHECK(r.patterns[0] == std::vector<int>{0});
}

TEST_CASE("a slot with no exams is trivially feasible") {
    const SlotProblem p = oracle::make_slot({5, 5}, {});
    CHECK(find_feasible(p).status == SolveStatus::Feasible);
    CHECK(find_pcbett_optimal(p).status == SolveStatus::Feasible);
}

TEST_CASE("find_pcbett_optimal picks the 1.25 split for {8,5,10} / {12,6}") {
    const SlotProblem p = oracle::make_slot({8, 5, 10}, {12, 6});
    const SlotSolveResult r = find_pcbett_optimal(p);
    REQUIRE(r.status == SolveStatus::Feasible);
    CHECK(min_assignment_ratio(p, r.patterns) == doctest::Approx(1.25));
    CHECK(r.patterns[0] == std::vector<int>{1, 2});  // rooms 5 and 10: 15/12
    CHECK(r.patterns[1] == std::vector<int>{0});     // room 8: 8/6
}

TEST_CASE("find_pcbett_optimal on a single exam and room") {
    const SlotProblem p = oracle::make_slot({12}, {10});
    const SlotSolveResult r = find_pcbett_optimal(p);
    REQUIRE(r.status == SolveStatus::Feasible);
    CHECK(min_assignment_ratio(p, r.patterns) == doctest::Approx(1.2));
}

TEST_CASE("find_pcbett_optimal reports infeasible slots") {
    const SlotProblem p = oracle::make_slot({5, 5, 10}, {12, 6});
    CHECK(find_pcbett_optimal(p).status == SolveStatus::Infeasible);
}

TEST_CASE("locked rooms are preserved and count toward capacity") {
    SlotProblem p = oracle::make_slot({8, 5, 10}, {12, 6});
    p.exams[0].locked_rooms = {0};  // exam 0 keeps room 8, needs 4 more
    const SlotSolveResult r = find_feasible(p);
    REQUIRE(r.status == SolveStatus::Feasible);
    CHECK(std::find(r.patterns[0].begin(), r.patterns[0].end(), 0) != r.patterns[0].end());
    long long cap0 = 0;
    for (int id : r.patterns[0]) cap0 += p.rooms[id].capacity;
    CHECK(cap0 >= 12);
}

TEST_CASE("an exhausted node budget is a distinct outcome") {
    SlotProblem p = oracle::make_slot({5, 5, 10}, {12, 6});
    p.node_budget = 2;
    CHECK(find_feasible(p).status == SolveStatus::BudgetExceeded);
    CHECK(find_pcbett_optimal(p).status == SolveStatus::BudgetExceeded);
}

TEST_CASE("solves are deterministic") {
    const SlotProblem p = oracle::make_slot({9, 7, 7, 4}, {11, 6, 3});
    const SlotSolveResult a = find_pcbett_optimal(p);
    const SlotSolveResult b = find_pcbett_optimal(p);
    CHECK(a.status == b.status);
    CHECK(a.patterns == b.patterns);
}

TEST_CASE("desk grid: solver agrees with the unpruned enumerator") {
    // Reduced grid here; the acceptance suite runs the full one.
    for (int c0 = 1; c0 <= 4; ++c0)
        for (int c1 = c0; c1 <= 4; ++c1)
            for (int c2 = c1; c2 <= 4; ++c2)
                for (int d0 = 1; d0 <= 4; ++d0)
                    for (int d1 = d0; d1 <= 4; ++d1) {
                        const SlotProblem p = oracle::make_slot({c0, c1, c2}, {d0, d1});
                        const auto brute = oracle::brute_force_slot(p);
                        const auto feasible = find_feasible(p);
                        const auto optimal = find_pcbett_optimal(p);
                        REQUIRE(feasible.status != SolveStatus::BudgetExceeded);
                        CHECK((feasible.status == SolveStatus::Feasible) == brute.feasible);
                        CHECK((optimal.status == SolveStatus::Feasible) == brute.feasible);
                        if (brute.feasible) {
                            CHECK(min_assignment_ratio(p, optimal.patterns) == brute.best_ratio);
                            CHECK(optimal.patterns == brute.best_patterns);
                        }
                    }
}

TEST_CASE("returned assignments satisfy the slot-local hard constraints") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<int> cap(1, 30), dem(1, 20), nr(1, 5), ne(1, 4);
    for (int round = 0; round < 400; ++round) {
        std::vector<int> capacities(nr(rng)), demands(ne(rng));
        for (int& c : capacities) c = cap(rng);
        for (int& d : demands) d = dem(rng);
        const SlotProblem p = oracle::make_slot(capacities, demands);
        for (const auto& result : {find_feasible(p), find_pcbett_optimal(p)}) {
            if (result.status != SolveStatus::Feasible) continue;
            std::vector<char> used(capacities.size(), 0);
            for (size_t e = 0; e < demands.size(); ++e) {
                CHECK(!result.patterns[e].empty());  // H2
                long long c = 0;
                for (int id : result.patterns[e]) {
                    CHECK(!used[id]);  // H4
                    used[id] = 1;
                    c += capacities[id];
                }
                CHECK(c >= demands[e]);  // H5
            }
        }
    }
}

TEST_CASE("minimal_reduction keeps the single large room") {
    const std::vector<int> caps = {100, 10, 5};
    CHECK(minimal_reduction({0, 1, 2}, 90, caps) == std::vector<int>{0});
}

TEST_CASE("minimal_reduction cannot shrink an exact pattern") {
    const std::vector<int> caps = {50};
    CHECK(minimal_reduction({0}, 50, caps) == std::vector<int>{0});
}

TEST_CASE("minimal_reduction prefers the single sufficient room over the pair") {
    const std::vector<int> caps = {60, 50};
    CHECK(minimal_reduction({0, 1}, 55, caps) == std::vector<int>{0});
}

TEST_CASE("minimal_reduction frees the most capacity among same-size subsets") {
    const std::vector<int> caps = {60, 58, 3};
    CHECK(minimal_reduction({0, 1, 2}, 55, caps) == std::vector<int>{1});
}

TEST_CASE("minimal_reduction rejects an insufficient pattern") {
    const std::vector<int> caps = {10, 10};
    CHECK_THROWS_AS(minimal_reduction({0, 1}, 25, caps), std::invalid_argument);
}

TEST_CASE("minimal_reduction never increases cardinality or capacity") {
    std::mt19937_64 rng(31337);
    std::uniform_int_distribution<int> cap(1, 50), nrooms(1, 8);
    for (int round = 0; round < 300; ++round) {
        const int n = nrooms(rng);
        std::vector<int> caps(n);
        std::vector<int> pattern(n);
        long long total = 0;
        for (int r = 0; r < n; ++r) {
            caps[r] = cap(rng);
            pattern[r] = r;
            total += caps[r];
        }
        std::uniform_int_distribution<int> dem(1, static_cast<int>(total));
        const int demand = dem(rng);
        const auto reduced = minimal_reduction(pattern, demand, caps);
        long long reduced_cap = 0;
        for (int r : reduced) reduced_cap += caps[r];
        CHECK(reduced.size() <= pattern.size());
        CHECK(reduced_cap <= total);
        CHECK(reduced_cap >= demand);
    }
}

}  // TEST_SUITE
