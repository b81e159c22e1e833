#include "ettp/instance_gen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ettp {

std::vector<std::string> validate_config(const ScenarioConfig& c) {
    std::vector<std::string> out;
    if (c.exam_count < 1) out.push_back("exam_count: must be >= 1");
    if (c.room_count < 1) out.push_back("room_count: must be >= 1");
    if (c.timeslot_count < 1) out.push_back("timeslot_count: must be >= 1");
    if (c.slots_per_day < 1 || c.slots_per_day > c.timeslot_count)
        out.push_back("slots_per_day: must be in [1, timeslot_count]");
    if (c.timeslot_count > c.exam_count)
        out.push_back("exam_count: need at least one exam per timeslot");
    if (static_cast<long long>(c.timeslot_count) * c.room_count < c.exam_count)
        out.push_back("exam_count: exceeds timeslot_count * room_count");
    if (!(c.capacity_p > 0.0) || c.capacity_p > 1.0)
        out.push_back("capacity_p: must be in (0, 1]");
    if (c.capacity_k < 1) out.push_back("capacity_k: must be >= 1");
    if (!(c.load_a > 0.0) || !(c.load_b > 0.0))
        out.push_back("load_a/load_b: must be > 0");
    if (c.conflict_mode == ConflictMode::Uniform) {
        if (c.conflict_p < 0.0 || c.conflict_p > 1.0)
            out.push_back("conflict_p: must be in [0, 1]");
    } else {
        if (!(c.conflict_beta_a > 0.0) || !(c.conflict_beta_b > 0.0))
            out.push_back("conflict_beta_a/conflict_beta_b: must be > 0");
    }
    return out;
}

ScenarioConfig scenario_preset(const std::string& name) {
    ScenarioConfig c;
    if (name == "scenario1") {
        c.exam_count = 120;
        c.conflict_mode = ConflictMode::Uniform;
        c.conflict_p = 0.1;
    } else if (name == "scenario2") {
        c.exam_count = 120;
        c.conflict_mode = ConflictMode::Uniform;
        c.conflict_p = 0.25;
    } else if (name == "scenario3") {
        c.exam_count = 90;
        c.conflict_mode = ConflictMode::PoissonBinomial;
    } else if (name == "scenario4") {
        c.exam_count = 120;
        c.conflict_mode = ConflictMode::PoissonBinomial;
    } else if (name == "scenario5") {
        c.exam_count = 150;
        c.conflict_mode = ConflictMode::PoissonBinomial;
    } else {
        throw std::invalid_argument("unknown scenario preset: " + name);
    }
    return c;
}

std::vector<std::string> scenario_preset_names() {
    return {"scenario1", "scenario2", "scenario3", "scenario4", "scenario5"};
}

int sample_capacity(double p, int k, Rng& rng) {
    if (p >= 1.0) return 1;  // zero failures before the k-th success
    std::negative_binomial_distribution<int> dist(k, p);
    return std::max(1, dist(rng));
}

double sample_beta(double a, double b, Rng& rng) {
    std::gamma_distribution<double> ga(a, 1.0);
    std::gamma_distribution<double> gb(b, 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    return x / (x + y);
}

std::vector<int> sample_partition(int total, int parts, int max_part, Rng& rng) {
    if (parts < 1 || total < parts || static_cast<long long>(parts) * max_part < total)
        throw std::invalid_argument("sample_partition: no partition with parts in [1, " +
                                    std::to_string(max_part) + "] exists");
    std::vector<int> sizes(parts);
    int remaining = total;
    for (int i = 0; i < parts; ++i) {
        const int parts_left = parts - i - 1;
        const int lo = std::max(1, remaining - parts_left * max_part);
        const int hi = std::min(max_part, remaining - parts_left);
        std::uniform_int_distribution<int> dist(lo, hi);
        sizes[i] = dist(rng);
        remaining -= sizes[i];
    }
    return sizes;
}

GeneratedInstance generate_instance(const ScenarioConfig& config, std::uint64_t seed) {
    auto problems = validate_config(config);
    if (!problems.empty())
        throw std::invalid_argument("generate_instance: invalid config: " + problems.front());

    Rng rng(split_seed(seed, 0));
    const int E = config.exam_count;
    const int R = config.room_count;
    const int T = config.timeslot_count;

    std::vector<int> capacities(R);
    for (int r = 0; r < R; ++r)
        capacities[r] = sample_capacity(config.capacity_p, config.capacity_k, rng);

    // Partition exams 0..E-1 into consecutive blocks of the sampled sizes.
    const std::vector<int> part_sizes = sample_partition(E, T, R, rng);
    std::vector<int> slot_of(E);
    std::vector<std::vector<int>> exams_in(T);
    {
        int next = 0;
        for (int t = 0; t < T; ++t)
            for (int i = 0; i < part_sizes[t]; ++i) {
                slot_of[next] = t;
                exams_in[t].push_back(next);
                ++next;
            }
    }

    // Per slot: shuffle the full room set, deal one room to each exam, then
    // place every remaining room on a uniformly random exam of the slot.
    std::vector<std::vector<int>> patterns(E);
    std::vector<int> students(E);
    std::vector<int> room_order(R);
    for (int t = 0; t < T; ++t) {
        const auto& exams = exams_in[t];
        const int m = static_cast<int>(exams.size());
        for (int r = 0; r < R; ++r) room_order[r] = r;
        std::shuffle(room_order.begin(), room_order.end(), rng);
        for (int i = 0; i < m; ++i) patterns[exams[i]].push_back(room_order[i]);
        std::uniform_int_distribution<int> pick(0, m - 1);
        for (int r = m; r < R; ++r) patterns[exams[pick(rng)]].push_back(room_order[r]);

        for (int e : exams) {
            std::sort(patterns[e].begin(), patterns[e].end());
            long long cap = 0;
            for (int room : patterns[e]) cap += capacities[room];
            const double n = sample_beta(config.load_a, config.load_b, rng);
            long long nu = 1 + static_cast<long long>(std::floor(static_cast<double>(cap) * n));
            students[e] = static_cast<int>(std::clamp<long long>(nu, 1, cap));
        }
    }

    std::vector<double> exam_p;
    if (config.conflict_mode == ConflictMode::PoissonBinomial) {
        exam_p.resize(E);
        for (int e = 0; e < E; ++e)
            exam_p[e] = sample_beta(config.conflict_beta_a, config.conflict_beta_b, rng);
    }

    // One Bernoulli draw per unordered pair; the matrix stays symmetric by
    // storing each pair once.
    std::vector<Conflict> conflicts;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int i = 0; i < E; ++i)
        for (int j = i + 1; j < E; ++j) {
            const double p = config.conflict_mode == ConflictMode::Uniform
                                 ? config.conflict_p
                                 : exam_p[i] * exam_p[j];
            const bool hit = unit(rng) < p;
            if (!hit) continue;
            if (config.suppress_seed_conflicts && slot_of[i] == slot_of[j]) continue;
            conflicts.push_back({i, j, 1});
        }

    GeneratedInstance out;
    out.instance = Instance(T, config.slots_per_day, std::move(capacities), std::move(students),
                            std::move(conflicts));
    out.seed_assignment.slots = std::move(slot_of);
    out.seed_assignment.room_patterns = std::move(patterns);
    return out;
}

}  // namespace ettp
