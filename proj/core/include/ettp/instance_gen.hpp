#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ettp/model.hpp"
#include "ettp/rng.hpp"

namespace ettp {

enum class ConflictMode { Uniform, PoissonBinomial };

// Table-style generation settings for one scenario.
struct ScenarioConfig {
    int exam_count = 120;
    int room_count = 8;
    int timeslot_count = 30;
    int slots_per_day = 3;

    // negative binomial (success probability, successes) for room capacities
    double capacity_p = 0.2;
    int capacity_k = 25;

    // Beta(a, b) occupancy fraction for student counts
    double load_a = 10.0;
    double load_b = 5.0;

    ConflictMode conflict_mode = ConflictMode::Uniform;
    double conflict_p = 0.1;        // uniform mode
    double conflict_beta_a = 4.0;   // Poisson-binomial mode: per-exam
    double conflict_beta_b = 6.0;   // probability drawn from Beta(a, b)

    bool suppress_seed_conflicts = false;
};

// The generating partition retained alongside the instance: per exam, the
// seed timeslot and the seed room pattern. Always satisfies H1/H2/H4/H5 on
// the generated instance.
using SeedAssignment = Timetable;

struct GeneratedInstance {
    Instance instance;
    SeedAssignment seed_assignment;
};

// Empty list if the config is usable; entries name the violated field.
std::vector<std::string> validate_config(const ScenarioConfig& config);

// Named presets (scenario1..scenario5) for the standard evaluation settings.
// Throws std::invalid_argument for unknown names.
ScenarioConfig scenario_preset(const std::string& name);
std::vector<std::string> scenario_preset_names();

// One room capacity: negative binomial draw (failures before the k-th
// success at success probability p), clamped to >= 1.
int sample_capacity(double p, int k, Rng& rng);

// Beta(a, b) via the ratio of two gamma draws.
double sample_beta(double a, double b, Rng& rng);

// Part sizes of a random partition of `total` elements into `parts` parts,
// each of size in [1, max_part]. Sequential sampling with a feasibility
// window, so every draw extends to a valid partition.
// Throws std::invalid_argument unless parts <= total <= parts * max_part.
std::vector<int> sample_partition(int total, int parts, int max_part, Rng& rng);

// Generates an instance plus its seed assignment. Identical (config, seed)
// pairs produce identical results.
GeneratedInstance generate_instance(const ScenarioConfig& config, std::uint64_t seed);

}  // namespace ettp
