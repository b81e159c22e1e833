#include "ettp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "ettp/json_io.hpp"

namespace ettp {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<std::string> validate_experiment_config(const ExperimentConfig& c) {
    std::vector<std::string> out;
    if (c.scenarios.empty() && c.external_instances.empty())
        out.push_back("scenarios: need at least one scenario or external instance");
    if (c.instances_per_scenario < 1) out.push_back("instances_per_scenario: must be >= 1");
    if (c.disturbance_repetitions < 1) out.push_back("disturbance_repetitions: must be >= 1");
    if (c.sigma_factor < 0.0) out.push_back("sigma_factor: must be >= 0");
    if (c.output_dir.empty()) out.push_back("output_dir: must be set");
    for (const ScenarioRef& s : c.scenarios)
        for (const std::string& problem : validate_config(s.config))
            out.push_back(s.name + ": " + problem);
    for (const std::string& problem : validate_params(c.anneal)) out.push_back(problem);
    return out;
}

void apply_profile(ExperimentConfig& config, const std::string& profile) {
    if (profile == "desk") {
        config.anneal.iterations = 10'000;
        config.anneal.cooling_limit = 1'000;
        config.anneal.repetitions = 2;
        config.instances_per_scenario = 5;
        config.disturbance_repetitions = 20;
    } else if (profile == "paper") {
        config.anneal.iterations = 50'000;
        config.anneal.cooling_limit = 5'000;
        config.anneal.repetitions = 8;
        config.instances_per_scenario = 20;
        config.disturbance_repetitions = 100;
    } else {
        throw std::invalid_argument("unknown profile: " + profile +
                                    " (expected 'desk' or 'paper')");
    }
}

namespace {

std::string format5(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.5f", value);
    return buffer;
}

struct Task {
    std::string scenario;
    int scenario_index = 0;
    int instance_index = 0;
    bool generated = true;       // false: loaded from external_instances
    std::string external_path;   // when !generated
    ScenarioConfig config;       // when generated
};

InstanceRun run_task(const Task& task, const ExperimentConfig& cfg) {
    InstanceRun run;
    run.scenario = task.scenario;
    run.index = task.instance_index;

    const auto seed_for = [&](std::uint64_t stream) {
        return split_seed(cfg.master_seed, static_cast<std::uint64_t>(task.scenario_index),
                          static_cast<std::uint64_t>(task.instance_index), stream);
    };

    const fs::path dir = fs::path(cfg.output_dir) / task.scenario;
    char stem_buf[32];
    std::snprintf(stem_buf, sizeof(stem_buf), "inst%03d", task.instance_index);
    const std::string stem = stem_buf;

    Instance instance;
    if (task.generated) {
        GeneratedInstance generated = generate_instance(task.config, seed_for(0));
        instance = std::move(generated.instance);
        save_instance(instance, (dir / (stem + ".json")).string());
        save_timetable(generated.seed_assignment, (dir / (stem + ".seed.json")).string());
    } else {
        instance = load_instance(task.external_path);
        save_instance(instance, (dir / (stem + ".json")).string());
    }

    const auto solve_mode = [&](bool pcbett, std::uint64_t stream) {
        AnnealParams params = cfg.anneal;
        params.pcbett_mode = pcbett;
        params.seed = seed_for(stream);
        return anneal(instance, cfg.weights, params);
    };
    auto nominal = solve_mode(false, 1);
    if (!nominal) {
        run.solved = false;
        return run;
    }
    auto pcbett = solve_mode(true, 2);
    run.solved = true;

    const auto finish_mode = [&](ModeResult& mode, const AnnealResult& solved,
                                 const std::string& label, std::uint64_t stream) {
        mode.penalties = solved.best_penalties;
        mode.weighted_s13 =
            weighted_objective(solved.best_penalties.two_in_a_row,
                               solved.best_penalties.two_in_a_day,
                               solved.best_penalties.period_spread, 0.0, cfg.weights, false);
        mode.robustness =
            evaluate_robustness(instance, solved.best, cfg.disturbance_repetitions,
                                cfg.sigma_factor, seed_for(stream), cfg.anneal.node_budget);
        save_timetable(solved.best, (dir / (stem + "." + label + ".tt.json")).string());
        write_text_file((dir / (stem + "." + label + ".robustness.csv")).string(),
                        robustness_csv(mode.robustness));
    };
    finish_mode(run.nominal, *nominal, "nominal", 3);
    finish_mode(run.pcbett, *pcbett, "pcbett", 4);
    return run;
}

SummaryRow summarize(const std::string& scenario, const std::string& mode,
                     const std::vector<const InstanceRun*>& runs) {
    SummaryRow row;
    row.scenario = scenario;
    row.mode = mode;
    double n = 0.0;
    for (const InstanceRun* run : runs) {
        if (!run->solved) {
            ++row.instances_excluded;
            continue;
        }
        ++row.instances_solved;
        n += 1.0;
        const ModeResult& m = mode == "nominal" ? run->nominal : run->pcbett;
        row.mean_weighted += m.weighted_s13;
        row.mean_two_in_a_row += static_cast<double>(m.penalties.two_in_a_row);
        row.mean_two_in_a_day += static_cast<double>(m.penalties.two_in_a_day);
        row.mean_period_spread += static_cast<double>(m.penalties.period_spread);
        row.mean_min_capacity_ratio += m.penalties.min_capacity_ratio;
        row.mean_unmodified += m.robustness.mean_unmodified().value_or(0.0);
        row.mean_after_heuristic += m.robustness.mean_after_heuristic().value_or(0.0);
        row.mean_after_complete += m.robustness.mean_after_complete().value_or(0.0);
    }
    if (n > 0.0) {
        row.mean_weighted /= n;
        row.mean_two_in_a_row /= n;
        row.mean_two_in_a_day /= n;
        row.mean_period_spread /= n;
        row.mean_min_capacity_ratio /= n;
        row.mean_unmodified /= n;
        row.mean_after_heuristic /= n;
        row.mean_after_complete /= n;
    }
    return row;
}

ScenarioConfig scenario_from_json(const json& j) {
    ScenarioConfig c;
    if (j.contains("exam_count")) c.exam_count = j["exam_count"].get<int>();
    if (j.contains("room_count")) c.room_count = j["room_count"].get<int>();
    if (j.contains("timeslot_count")) c.timeslot_count = j["timeslot_count"].get<int>();
    if (j.contains("slots_per_day")) c.slots_per_day = j["slots_per_day"].get<int>();
    if (j.contains("capacity_p")) c.capacity_p = j["capacity_p"].get<double>();
    if (j.contains("capacity_k")) c.capacity_k = j["capacity_k"].get<int>();
    if (j.contains("load_a")) c.load_a = j["load_a"].get<double>();
    if (j.contains("load_b")) c.load_b = j["load_b"].get<double>();
    if (j.contains("conflict_mode")) {
        const std::string mode = j["conflict_mode"].get<std::string>();
        if (mode == "uniform") c.conflict_mode = ConflictMode::Uniform;
        else if (mode == "poisson_binomial") c.conflict_mode = ConflictMode::PoissonBinomial;
        else throw std::runtime_error("conflict_mode must be 'uniform' or 'poisson_binomial'");
    }
    if (j.contains("conflict_p")) c.conflict_p = j["conflict_p"].get<double>();
    if (j.contains("conflict_beta_a")) c.conflict_beta_a = j["conflict_beta_a"].get<double>();
    if (j.contains("conflict_beta_b")) c.conflict_beta_b = j["conflict_beta_b"].get<double>();
    if (j.contains("suppress_seed_conflicts"))
        c.suppress_seed_conflicts = j["suppress_seed_conflicts"].get<bool>();
    return c;
}

json scenario_to_json(const ScenarioConfig& c) {
    return json{{"exam_count", c.exam_count},
                {"room_count", c.room_count},
                {"timeslot_count", c.timeslot_count},
                {"slots_per_day", c.slots_per_day},
                {"capacity_p", c.capacity_p},
                {"capacity_k", c.capacity_k},
                {"load_a", c.load_a},
                {"load_b", c.load_b},
                {"conflict_mode",
                 c.conflict_mode == ConflictMode::Uniform ? "uniform" : "poisson_binomial"},
                {"conflict_p", c.conflict_p},
                {"conflict_beta_a", c.conflict_beta_a},
                {"conflict_beta_b", c.conflict_beta_b},
                {"suppress_seed_conflicts", c.suppress_seed_conflicts}};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    auto problems = validate_experiment_config(config);
    if (!problems.empty())
        throw std::invalid_argument("experiment config: " + problems.front());

    std::vector<Task> tasks;
    int scenario_index = 0;
    for (const ScenarioRef& scenario : config.scenarios) {
        fs::create_directories(fs::path(config.output_dir) / scenario.name);
        for (int i = 0; i < config.instances_per_scenario; ++i) {
            Task task;
            task.scenario = scenario.name;
            task.scenario_index = scenario_index;
            task.instance_index = i;
            task.config = scenario.config;
            tasks.push_back(std::move(task));
        }
        ++scenario_index;
    }
    for (const std::string& path : config.external_instances) {
        Task task;
        task.scenario = fs::path(path).stem().string();
        task.scenario_index = scenario_index++;
        task.instance_index = 0;
        task.generated = false;
        task.external_path = path;
        fs::create_directories(fs::path(config.output_dir) / task.scenario);
        tasks.push_back(std::move(task));
    }

    // Instance-level worker pool; every task is a pure function of its seeds,
    // so results do not depend on scheduling.
    std::vector<InstanceRun> runs(tasks.size());
    const int hardware = static_cast<int>(std::thread::hardware_concurrency());
    const int workers = std::min<int>(static_cast<int>(tasks.size()),
                                      config.workers > 0 ? config.workers
                                                         : std::max(1, hardware));
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&]() {
        for (;;) {
            const size_t k = next.fetch_add(1);
            if (k >= tasks.size()) return;
            try {
                runs[k] = run_task(tasks[k], config);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                return;
            }
        }
    };
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (failure) std::rethrow_exception(failure);

    // Aggregate in (scenario, instance, mode) order.
    ExperimentResult result;
    result.runs = std::move(runs);
    std::vector<std::string> scenario_order;
    for (const Task& task : tasks)
        if (scenario_order.empty() || scenario_order.back() != task.scenario)
            scenario_order.push_back(task.scenario);
    for (const std::string& scenario : scenario_order) {
        std::vector<const InstanceRun*> members;
        for (const InstanceRun& run : result.runs)
            if (run.scenario == scenario) members.push_back(&run);
        result.rows.push_back(summarize(scenario, "nominal", members));
        result.rows.push_back(summarize(scenario, "pcbett", members));
    }

    emit_reports(result.rows, config.output_dir);
    return result;
}

void emit_reports(const std::vector<SummaryRow>& rows, const std::string& out_dir) {
    if (rows.empty()) throw std::invalid_argument("emit_reports: no summary rows");
    fs::create_directories(out_dir);

    std::string objectives =
        "scenario,mode,instances_solved,instances_excluded,objective,two_in_a_row,"
        "two_in_a_day,period_spread,min_capacity_ratio\n";
    for (const SummaryRow& row : rows) {
        objectives += row.scenario + "," + row.mode + "," +
                      std::to_string(row.instances_solved) + "," +
                      std::to_string(row.instances_excluded) + "," +
                      format5(row.mean_weighted) + "," + format5(row.mean_two_in_a_row) + "," +
                      format5(row.mean_two_in_a_day) + "," + format5(row.mean_period_spread) +
                      "," + format5(row.mean_min_capacity_ratio) + "\n";
    }
    write_text_file((fs::path(out_dir) / "summary_objectives.csv").string(), objectives);

    std::string disturbed = "scenario,mode,unmodified,heuristic,complete\n";
    for (const SummaryRow& row : rows) {
        disturbed += row.scenario + "," + row.mode + "," + format5(row.mean_unmodified) + "," +
                     format5(row.mean_after_heuristic) + "," +
                     format5(row.mean_after_complete) + "\n";
    }
    write_text_file((fs::path(out_dir) / "summary_disturbed.csv").string(), disturbed);

    // One line per scenario: label, nominal mean, pcbett mean.
    std::string plot = "# scenario nominal pcbett\n";
    for (const SummaryRow& row : rows) {
        if (row.mode != "nominal") continue;
        const SummaryRow* partner = nullptr;
        for (const SummaryRow& other : rows)
            if (other.scenario == row.scenario && other.mode == "pcbett") partner = &other;
        plot += row.scenario + " " + format5(row.mean_weighted) + " " +
                format5(partner ? partner->mean_weighted : 0.0) + "\n";
    }
    write_text_file((fs::path(out_dir) / "weighted_means.dat").string(), plot);
}

ExperimentConfig parse_experiment_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("experiment config JSON: ") + e.what());
    }
    ExperimentConfig c;
    if (j.contains("scenarios")) {
        for (const json& entry : j["scenarios"]) {
            ScenarioRef ref;
            if (entry.is_string()) {
                ref.name = entry.get<std::string>();
                ref.config = scenario_preset(ref.name);
            } else {
                ref.name = entry.at("name").get<std::string>();
                ref.config = scenario_from_json(entry.at("config"));
            }
            c.scenarios.push_back(std::move(ref));
        }
    }
    // The profile sets a baseline; explicit keys override it.
    if (j.contains("profile")) apply_profile(c, j["profile"].get<std::string>());
    if (j.contains("instances_per_scenario"))
        c.instances_per_scenario = j["instances_per_scenario"].get<int>();
    if (j.contains("disturbance_repetitions"))
        c.disturbance_repetitions = j["disturbance_repetitions"].get<int>();
    if (j.contains("sigma_factor")) c.sigma_factor = j["sigma_factor"].get<double>();
    if (j.contains("master_seed")) c.master_seed = j["master_seed"].get<std::uint64_t>();
    if (j.contains("output_dir")) c.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("workers")) c.workers = j["workers"].get<int>();
    if (j.contains("external_instances"))
        c.external_instances = j["external_instances"].get<std::vector<std::string>>();
    if (j.contains("anneal")) {
        const json& a = j["anneal"];
        if (a.contains("heat_max")) c.anneal.heat_max = a["heat_max"].get<double>();
        if (a.contains("heat_min")) c.anneal.heat_min = a["heat_min"].get<double>();
        if (a.contains("cooling_limit")) c.anneal.cooling_limit = a["cooling_limit"].get<long>();
        if (a.contains("iterations")) c.anneal.iterations = a["iterations"].get<long>();
        if (a.contains("repetitions")) c.anneal.repetitions = a["repetitions"].get<int>();
        if (a.contains("cooling_rate")) c.anneal.cooling_rate = a["cooling_rate"].get<double>();
        if (a.contains("delta_scale")) c.anneal.delta_scale = a["delta_scale"].get<double>();
        if (a.contains("node_budget")) c.anneal.node_budget = a["node_budget"].get<long>();
    }
    if (j.contains("weights")) {
        const json& w = j["weights"];
        if (w.contains("two_in_a_row")) c.weights.two_in_a_row = w["two_in_a_row"].get<double>();
        if (w.contains("two_in_a_day")) c.weights.two_in_a_day = w["two_in_a_day"].get<double>();
        if (w.contains("period_spread"))
            c.weights.period_spread = w["period_spread"].get<double>();
        if (w.contains("capacity_ratio"))
            c.weights.capacity_ratio = w["capacity_ratio"].get<double>();
        if (w.contains("lambda")) c.weights.spread_distance = w["lambda"].get<int>();
    }
    return c;
}

ScenarioConfig parse_scenario_config(const std::string& text) {
    try {
        return scenario_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("scenario config JSON: ") + e.what());
    }
}

std::string serialize_scenario_config(const ScenarioConfig& config) {
    return scenario_to_json(config).dump(2) + "\n";
}

std::string robustness_csv(const RobustnessReport& report) {
    std::string out = "rep,unmodified,heuristic,complete\n";
    for (const RobustnessRow& row : report.rows)
        out += std::to_string(row.repetition) + "," + std::to_string(row.unmodified) + "," +
               std::to_string(row.after_heuristic) + "," + std::to_string(row.after_complete) +
               "\n";
    return out;
}

}  // namespace ettp
