#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ettp/annealer.hpp"
#include "ettp/instance_gen.hpp"
#include "ettp/model.hpp"
#include "ettp/robustness.hpp"

namespace ettp {

struct ScenarioRef {
    std::string name;
    ScenarioConfig config;
};

// One batch experiment: generate (or load) instances, solve each twice
// (nominal and pcbett), evaluate both timetables under disturbance, and
// aggregate per-scenario summary rows.
struct ExperimentConfig {
    std::vector<ScenarioRef> scenarios;
    int instances_per_scenario = 20;
    AnnealParams anneal;  // seed and pcbett_mode are set per run internally
    Weights weights;
    int disturbance_repetitions = 100;
    double sigma_factor = 0.2;
    std::uint64_t master_seed = 1;
    std::string output_dir = "ettp-out";
    int workers = 0;  // 0: hardware concurrency
    std::vector<std::string> external_instances;  // instance JSON paths
};

struct ModeResult {
    PenaltyBreakdown penalties;   // of the returned best timetable
    double weighted_s13 = 0.0;    // S1-S3 part of the objective
    RobustnessReport robustness;
};

struct InstanceRun {
    std::string scenario;
    int index = 0;
    bool solved = false;  // false: greedy seeding failed, excluded from means
    ModeResult nominal;
    ModeResult pcbett;
};

struct SummaryRow {
    std::string scenario;
    std::string mode;  // "nominal" or "pcbett"
    int instances_solved = 0;
    int instances_excluded = 0;
    double mean_weighted = 0.0;  // S1-S3 weighted objective
    double mean_two_in_a_row = 0.0;
    double mean_two_in_a_day = 0.0;
    double mean_period_spread = 0.0;
    double mean_min_capacity_ratio = 0.0;
    double mean_unmodified = 0.0;
    double mean_after_heuristic = 0.0;
    double mean_after_complete = 0.0;
};

struct ExperimentResult {
    std::vector<SummaryRow> rows;
    std::vector<InstanceRun> runs;
};

// Empty list if the config is usable; entries name the violated field.
std::vector<std::string> validate_experiment_config(const ExperimentConfig& config);

// Applies a named parameter profile ("desk" or "paper") over the config.
void apply_profile(ExperimentConfig& config, const std::string& profile);

// Runs the full pipeline and persists every artifact (instances, seed
// sidecars, timetables, per-instance robustness CSVs, summary files) under
// config.output_dir. Fully deterministic in (config, master_seed).
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes summary_objectives.csv, summary_disturbed.csv and the
// gnuplot-ready weighted_means.dat. Throws on empty rows and on I/O errors.
void emit_reports(const std::vector<SummaryRow>& rows, const std::string& out_dir);

// Declarative JSON config mirroring ExperimentConfig; missing keys keep
// their defaults. Scenario entries are preset names or
// {"name": ..., "config": {...}} objects.
ExperimentConfig parse_experiment_config(const std::string& text);
ScenarioConfig parse_scenario_config(const std::string& text);
std::string serialize_scenario_config(const ScenarioConfig& config);

// CSV helpers shared with the command-line tool.
std::string robustness_csv(const RobustnessReport& report);

}  // namespace ettp
