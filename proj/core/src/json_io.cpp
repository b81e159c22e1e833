#include "ettp/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ettp {

using nlohmann::json;

namespace {

json instance_to_json(const Instance& inst) {
    json rooms = json::array();
    for (int r = 0; r < inst.room_count(); ++r)
        rooms.push_back({{"id", r}, {"capacity", inst.room_capacity(r)}});
    json exams = json::array();
    for (int e = 0; e < inst.exam_count(); ++e)
        exams.push_back({{"id", e}, {"students", inst.students(e)}});
    json conflicts = json::array();
    for (const Conflict& c : inst.conflicts())
        conflicts.push_back(json::array({c.first, c.second, c.weight}));
    return json{{"timeslots", inst.timeslot_count()},
                {"slots_per_day", inst.slots_per_day()},
                {"rooms", rooms},
                {"exams", exams},
                {"conflicts", conflicts}};
}

// Reads a dense 0-based id->value array; entries may appear in any order.
std::vector<int> dense_field(const json& items, const char* id_key, const char* value_key) {
    std::vector<int> values(items.size(), -1);
    for (const json& item : items) {
        const long long id = item.at(id_key).get<long long>();
        if (id < 0 || id >= static_cast<long long>(items.size()))
            throw std::runtime_error(std::string(id_key) + " " + std::to_string(id) +
                                     " is not dense 0-based");
        if (values[static_cast<size_t>(id)] != -1)
            throw std::runtime_error(std::string(id_key) + " " + std::to_string(id) +
                                     " appears twice");
        values[static_cast<size_t>(id)] = item.at(value_key).get<int>();
    }
    return values;
}

Instance instance_from_json(const json& j) {
    const int timeslots = j.at("timeslots").get<int>();
    const int slots_per_day = j.at("slots_per_day").get<int>();
    std::vector<int> capacities = dense_field(j.at("rooms"), "id", "capacity");
    std::vector<int> students = dense_field(j.at("exams"), "id", "students");
    std::vector<Conflict> conflicts;
    for (const json& entry : j.at("conflicts")) {
        if (!entry.is_array() || entry.size() != 3)
            throw std::runtime_error("conflicts entries must be [i, j, weight] triples");
        conflicts.push_back({entry[0].get<int>(), entry[1].get<int>(), entry[2].get<int>()});
    }
    return Instance(timeslots, slots_per_day, std::move(capacities), std::move(students),
                    std::move(conflicts));
}

}  // namespace

std::string serialize_instance(const Instance& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

Instance parse_instance(const std::string& text) {
    try {
        return instance_from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("instance JSON: ") + e.what());
    }
}

void save_instance(const Instance& inst, const std::string& path) {
    write_text_file(path, serialize_instance(inst));
}

Instance load_instance(const std::string& path) {
    try {
        return parse_instance(read_text_file(path));
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::string serialize_timetable(const Timetable& tt) {
    json assignments = json::array();
    for (size_t e = 0; e < tt.slots.size(); ++e)
        assignments.push_back({{"exam", e}, {"timeslot", tt.slots[e]}, {"rooms", tt.room_patterns[e]}});
    return json{{"assignments", assignments}}.dump(2) + "\n";
}

Timetable parse_timetable(const std::string& text, int exam_count) {
    try {
        const json j = json::parse(text);
        Timetable tt;
        tt.slots.assign(exam_count, -1);
        tt.room_patterns.assign(exam_count, {});
        std::vector<char> seen(exam_count, 0);
        for (const json& item : j.at("assignments")) {
            const long long exam = item.at("exam").get<long long>();
            if (exam < 0 || exam >= exam_count)
                throw std::runtime_error("exam " + std::to_string(exam) + " out of range");
            if (seen[static_cast<size_t>(exam)])
                throw std::runtime_error("exam " + std::to_string(exam) + " assigned twice");
            seen[static_cast<size_t>(exam)] = 1;
            tt.slots[static_cast<size_t>(exam)] = item.at("timeslot").get<int>();
            tt.room_patterns[static_cast<size_t>(exam)] =
                item.at("rooms").get<std::vector<int>>();
        }
        for (int e = 0; e < exam_count; ++e)
            if (!seen[e]) throw std::runtime_error("exam " + std::to_string(e) + " missing");
        return tt;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("timetable JSON: ") + e.what());
    }
}

void save_timetable(const Timetable& tt, const std::string& path) {
    write_text_file(path, serialize_timetable(tt));
}

Timetable load_timetable(const std::string& path, int exam_count) {
    try {
        return parse_timetable(read_text_file(path), exam_count);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

SlotProblem parse_slot_problem(const std::string& text) {
    try {
        const json j = json::parse(text);
        SlotProblem problem;
        for (const json& item : j.at("exams")) {
            SlotExam exam;
            exam.exam = item.at("id").get<int>();
            exam.demand = item.at("demand").get<int>();
            if (item.contains("locked")) exam.locked_rooms = item["locked"].get<std::vector<int>>();
            problem.exams.push_back(std::move(exam));
        }
        for (const json& item : j.at("rooms"))
            problem.rooms.push_back({item.at("id").get<int>(), item.at("capacity").get<int>()});
        if (j.contains("node_budget")) problem.node_budget = j["node_budget"].get<long>();
        return problem;
    } catch (const json::exception& e) {
        throw std::runtime_error(std::string("slot problem JSON: ") + e.what());
    }
}

std::string serialize_slot_result(const SlotProblem& problem, const SlotSolveResult& result) {
    json out;
    switch (result.status) {
        case SolveStatus::Feasible: out["status"] = "feasible"; break;
        case SolveStatus::Infeasible: out["status"] = "infeasible"; break;
        case SolveStatus::BudgetExceeded: out["status"] = "budget-exceeded"; break;
    }
    out["nodes"] = result.nodes;
    if (result.status == SolveStatus::Feasible) {
        json assignment = json::array();
        for (size_t i = 0; i < problem.exams.size(); ++i)
            assignment.push_back({{"exam", problem.exams[i].exam}, {"rooms", result.patterns[i]}});
        out["assignment"] = assignment;
        out["min_ratio"] = min_assignment_ratio(problem, result.patterns);
    }
    return out.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed for " + path);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

}  // namespace ettp
