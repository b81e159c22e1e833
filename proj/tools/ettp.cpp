// Command-line driver: instance generation, annealing solves, disturbance
// evaluation, per-slot room assignment debugging and full batch experiments.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ettp/annealer.hpp"
#include "ettp/experiment.hpp"
#include "ettp/instance_gen.hpp"
#include "ettp/json_io.hpp"
#include "ettp/model.hpp"
#include "ettp/robustness.hpp"
#include "ettp/room_assign.hpp"

namespace fs = std::filesystem;

namespace {

struct GenOptions {
    std::string scenario;
    std::string config_path;
    int count = 1;
    std::uint64_t seed = 1;
    std::string out = ".";
    bool suppress_seed_conflicts = false;
};

struct SolveOptions {
    std::string instance_path;
    std::string out = "timetable.json";
    std::string log_path;
    std::uint64_t seed = 1;
    long iterations = 50'000;
    long cooling_limit = 5'000;
    int repetitions = 8;
    double cooling_rate = 0.0;
    double delta_scale = 0.0;
    bool pcbett = false;
    std::string weights = "300,150,5,3000";
    int lambda = 4;
    long node_budget = 1'000'000;
};

struct EvaluateOptions {
    std::string instance_path;
    std::string timetable_path;
    int reps = 100;
    double sigma = 0.2;
    std::uint64_t seed = 1;
    std::string out = "report.csv";
};

struct RoomAssignOptions {
    std::string slot;  // path or literal JSON
    bool pcbett = false;
};

struct ExperimentOptions {
    std::string config_path;
    std::vector<std::string> scenarios;
    std::string profile;
    int instances = 0;
    int reps = 0;
    double sigma = -1.0;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string out;
    int workers = 0;
    std::string instance_dir;
};

ettp::Weights parse_weights(const std::string& spec, int lambda) {
    ettp::Weights w;
    w.spread_distance = lambda;
    std::istringstream stream(spec);
    std::string part;
    std::vector<double> values;
    while (std::getline(stream, part, ',')) values.push_back(std::stod(part));
    if (values.size() != 4)
        throw std::runtime_error("--weights expects four comma-separated values (w1,w2,w3,w4)");
    w.two_in_a_row = values[0];
    w.two_in_a_day = values[1];
    w.period_spread = values[2];
    w.capacity_ratio = values[3];
    return w;
}

int cmd_gen(const GenOptions& opt) {
    ettp::ScenarioConfig config;
    if (!opt.config_path.empty())
        config = ettp::parse_scenario_config(ettp::read_text_file(opt.config_path));
    else
        config = ettp::scenario_preset(opt.scenario.empty() ? "scenario1" : opt.scenario);
    if (opt.suppress_seed_conflicts) config.suppress_seed_conflicts = true;

    fs::path out(opt.out);
    const bool to_directory = opt.count > 1 || fs::is_directory(out) || out.extension() != ".json";
    if (to_directory) fs::create_directories(out);
    else if (out.has_parent_path()) fs::create_directories(out.parent_path());

    for (int i = 0; i < opt.count; ++i) {
        fs::path path = out;
        if (to_directory) {
            char name[32];
            std::snprintf(name, sizeof(name), "inst%03d.json", i);
            path /= name;
        }
        const auto generated =
            ettp::generate_instance(config, ettp::split_seed(opt.seed, 0, i, 0));
        ettp::save_instance(generated.instance, path.string());
        fs::path seed_path = path;
        seed_path.replace_extension();
        seed_path += ".seed.json";
        ettp::save_timetable(generated.seed_assignment, seed_path.string());
        std::cout << path.string() << "\n";
    }
    return 0;
}

int cmd_solve(const SolveOptions& opt) {
    const ettp::Instance instance = ettp::load_instance(opt.instance_path);
    const auto problems = ettp::validate_instance(instance);
    if (!problems.empty()) throw std::runtime_error(opt.instance_path + ": " + problems.front());

    const ettp::Weights weights = parse_weights(opt.weights, opt.lambda);
    ettp::AnnealParams params;
    params.iterations = opt.iterations;
    params.cooling_limit = opt.cooling_limit;
    params.repetitions = opt.repetitions;
    params.cooling_rate = opt.cooling_rate;
    params.delta_scale = opt.delta_scale;
    params.pcbett_mode = opt.pcbett;
    params.seed = opt.seed;
    params.node_budget = opt.node_budget;

    const std::string log_path = opt.log_path.empty() ? opt.out + ".log.csv" : opt.log_path;
    std::string log = "iteration,heat,current,best\n";
    long global_iteration = 0;
    const auto hook = [&](const ettp::SolverState& state, const ettp::ProposalOutcome&) {
        char line[128];
        std::snprintf(line, sizeof(line), "%ld,%.5f,%.5f,%.5f\n", ++global_iteration, state.heat,
                      state.penalties.weighted, state.best_value);
        log += line;
    };

    const auto result = ettp::anneal(instance, weights, params, hook);
    if (!result)
        throw std::runtime_error("initial heuristic failed: no feasible seeding for " +
                                 opt.instance_path);
    ettp::save_timetable(result->best, opt.out);
    ettp::write_text_file(log_path, log);

    const ettp::PenaltyBreakdown& p = result->best_penalties;
    std::cout << "objective " << p.weighted << " (two_in_a_row " << p.two_in_a_row
              << ", two_in_a_day " << p.two_in_a_day << ", period_spread " << p.period_spread
              << ", min_capacity_ratio " << p.min_capacity_ratio << ")\n";
    std::cout << "timetable " << opt.out << "\n";
    std::cout << "log " << log_path << "\n";
    return 0;
}

int cmd_evaluate(const EvaluateOptions& opt) {
    const ettp::Instance instance = ettp::load_instance(opt.instance_path);
    const ettp::Timetable tt =
        ettp::load_timetable(opt.timetable_path, instance.exam_count());
    const auto violations = ettp::check_hard(instance, tt);
    if (!violations.empty())
        throw std::runtime_error(opt.timetable_path + " is not nominal-feasible: " +
                                 violations.front());

    const ettp::RobustnessReport report =
        ettp::evaluate_robustness(instance, tt, opt.reps, opt.sigma, opt.seed);
    ettp::write_text_file(opt.out, ettp::robustness_csv(report));
    std::cout << "unmodified " << report.mean_unmodified().value_or(0.0) << " heuristic "
              << report.mean_after_heuristic().value_or(0.0) << " complete "
              << report.mean_after_complete().value_or(0.0) << "\n";
    std::cout << "report " << opt.out << "\n";
    return 0;
}

int cmd_room_assign(const RoomAssignOptions& opt) {
    const bool inline_json = !opt.slot.empty() && opt.slot.front() == '{';
    const std::string text = inline_json ? opt.slot : ettp::read_text_file(opt.slot);
    const ettp::SlotProblem problem = ettp::parse_slot_problem(text);
    const ettp::SlotSolveResult result =
        opt.pcbett ? ettp::find_pcbett_optimal(problem) : ettp::find_feasible(problem);
    std::cout << ettp::serialize_slot_result(problem, result);
    return result.status == ettp::SolveStatus::Feasible ? 0 : 1;
}

int cmd_experiment(const ExperimentOptions& opt) {
    ettp::ExperimentConfig config;
    if (!opt.config_path.empty())
        config = ettp::parse_experiment_config(ettp::read_text_file(opt.config_path));
    if (!opt.profile.empty()) ettp::apply_profile(config, opt.profile);
    for (const std::string& name : opt.scenarios)
        config.scenarios.push_back({name, ettp::scenario_preset(name)});
    if (config.scenarios.empty() && opt.instance_dir.empty() &&
        config.external_instances.empty())
        for (const std::string& name : ettp::scenario_preset_names())
            config.scenarios.push_back({name, ettp::scenario_preset(name)});
    if (opt.instances > 0) config.instances_per_scenario = opt.instances;
    if (opt.reps > 0) config.disturbance_repetitions = opt.reps;
    if (opt.sigma >= 0.0) config.sigma_factor = opt.sigma;
    if (opt.seed_given) config.master_seed = opt.seed;
    if (!opt.out.empty()) config.output_dir = opt.out;
    if (opt.workers > 0) config.workers = opt.workers;
    if (!opt.instance_dir.empty()) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(opt.instance_dir)) {
            const std::string name = entry.path().filename().string();
            if (entry.path().extension() == ".json" &&
                name.find(".seed.json") == std::string::npos)
                files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        config.external_instances.insert(config.external_instances.end(), files.begin(),
                                         files.end());
    }

    const ettp::ExperimentResult result = ettp::run_experiment(config);
    for (const ettp::SummaryRow& row : result.rows) {
        char line[256];
        std::snprintf(line, sizeof(line),
                      "%-12s %-8s objective %12.5f  min_ratio %8.5f  disturbed %8.5f -> %8.5f "
                      "-> %8.5f\n",
                      row.scenario.c_str(), row.mode.c_str(), row.mean_weighted,
                      row.mean_min_capacity_ratio, row.mean_unmodified,
                      row.mean_after_heuristic, row.mean_after_complete);
        std::cout << line;
    }
    std::cout << "artifacts " << config.output_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Examination timetabling under data uncertainty: generator, annealing solver, "
                 "recovery evaluation and batch experiments"};
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate random instances");
    gen_cmd->add_option("--scenario", gen.scenario, "Preset name (scenario1..scenario5)");
    gen_cmd->add_option("--config", gen.config_path, "Scenario config JSON file");
    gen_cmd->add_option("--count", gen.count, "Number of instances")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--seed", gen.seed, "Generator seed");
    gen_cmd->add_option("--out", gen.out, "Output file (.json) or directory");
    gen_cmd->add_flag("--suppress-seed-conflicts", gen.suppress_seed_conflicts,
                      "Never generate conflicts inside a seed timeslot");

    SolveOptions solve;
    auto* solve_cmd = app.add_subcommand("solve", "Anneal a timetable for an instance");
    solve_cmd->add_option("--instance", solve.instance_path, "Instance JSON")->required();
    solve_cmd->add_option("--out", solve.out, "Timetable JSON output");
    solve_cmd->add_option("--log", solve.log_path, "Run-log CSV (default <out>.log.csv)");
    solve_cmd->add_option("--seed", solve.seed, "Solver seed");
    solve_cmd->add_option("--iterations", solve.iterations, "Iterations per repetition");
    solve_cmd->add_option("--cooling-limit", solve.cooling_limit,
                          "Iterations between heat resets");
    solve_cmd->add_option("--repetitions", solve.repetitions, "Independent repetitions");
    solve_cmd->add_option("--cooling-rate", solve.cooling_rate,
                          "Cooling rate in (0,1); 0 derives it from the heat range");
    solve_cmd->add_option("--delta-scale", solve.delta_scale,
                          "Acceptance normalization; 0 derives it from the initial objective");
    solve_cmd->add_flag("--pcbett", solve.pcbett,
                        "Optimize room patterns for the capacity-ratio criterion");
    solve_cmd->add_option("--weights", solve.weights, "w1,w2,w3,w4 penalty weights");
    solve_cmd->add_option("--lambda", solve.lambda, "Period spread distance");
    solve_cmd->add_option("--node-budget", solve.node_budget, "Branch-and-bound node budget");
    std::string solve_profile;
    solve_cmd->add_option("--profile", solve_profile, "Parameter profile: desk or paper");

    EvaluateOptions evaluate;
    auto* eval_cmd = app.add_subcommand("evaluate", "Disturb a timetable and measure recovery");
    eval_cmd->add_option("--instance", evaluate.instance_path, "Instance JSON")->required();
    eval_cmd->add_option("--timetable", evaluate.timetable_path, "Timetable JSON")->required();
    eval_cmd->add_option("--reps", evaluate.reps, "Disturbance repetitions");
    eval_cmd->add_option("--sigma", evaluate.sigma, "Disturbance sigma factor");
    eval_cmd->add_option("--seed", evaluate.seed, "Disturbance seed");
    eval_cmd->add_option("--out", evaluate.out, "Report CSV output");

    RoomAssignOptions room;
    auto* room_cmd = app.add_subcommand("room-assign", "Solve a single-slot room assignment");
    room_cmd->add_option("--slot", room.slot, "Slot problem JSON (path or literal)")->required();
    room_cmd->add_flag("--pcbett", room.pcbett, "Maximize the minimum capacity ratio");

    ExperimentOptions experiment;
    auto* exp_cmd = app.add_subcommand("experiment", "Run the full batch pipeline");
    exp_cmd->add_option("--config", experiment.config_path, "Experiment config JSON");
    exp_cmd->add_option("--scenario", experiment.scenarios,
                        "Scenario presets to run (repeatable; default: all five)");
    exp_cmd->add_option("--profile", experiment.profile, "Parameter profile: desk or paper");
    exp_cmd->add_option("--instances", experiment.instances, "Instances per scenario");
    exp_cmd->add_option("--reps", experiment.reps, "Disturbance repetitions");
    exp_cmd->add_option("--sigma", experiment.sigma, "Disturbance sigma factor");
    exp_cmd->add_option("--seed", experiment.seed, "Master seed")
        ->trigger_on_parse()
        ->each([&](const std::string&) { experiment.seed_given = true; });
    exp_cmd->add_option("--out", experiment.out, "Output directory");
    exp_cmd->add_option("--workers", experiment.workers, "Worker threads (0: all cores)");
    exp_cmd->add_option("--instance-dir", experiment.instance_dir,
                        "Directory of external instance JSON files to include");

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen);
        if (solve_cmd->parsed()) {
            if (!solve_profile.empty()) {
                ettp::ExperimentConfig tmp;
                ettp::apply_profile(tmp, solve_profile);
                if (solve_cmd->count("--iterations") == 0)
                    solve.iterations = tmp.anneal.iterations;
                if (solve_cmd->count("--cooling-limit") == 0)
                    solve.cooling_limit = tmp.anneal.cooling_limit;
                if (solve_cmd->count("--repetitions") == 0)
                    solve.repetitions = tmp.anneal.repetitions;
            }
            return cmd_solve(solve);
        }
        if (eval_cmd->parsed()) return cmd_evaluate(evaluate);
        if (room_cmd->parsed()) return cmd_room_assign(room);
        if (exp_cmd->parsed()) return cmd_experiment(experiment);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
