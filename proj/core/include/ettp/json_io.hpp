#pragma once

#include <string>

#include "ettp/model.hpp"
#include "ettp/room_assign.hpp"

namespace ettp {

// Text formats:
//   instance:  {"timeslots": T, "slots_per_day": s,
//               "rooms": [{"id": r, "capacity": c}, ...],
//               "exams": [{"id": e, "students": n}, ...],
//               "conflicts": [[i, j, weight], ...]}        with i < j
//   timetable: {"assignments": [{"exam": e, "timeslot": t, "rooms": [r, ...]}, ...]}
//   slot problem: {"exams": [{"id": e, "demand": d, "locked": [r, ...]}, ...],
//                  "rooms": [{"id": r, "capacity": c}, ...]}
// Ids are dense and 0-based. Parse errors throw std::runtime_error naming
// the offending field (and the path, for the file variants).

std::string serialize_instance(const Instance& inst);
Instance parse_instance(const std::string& text);
void save_instance(const Instance& inst, const std::string& path);
Instance load_instance(const std::string& path);

std::string serialize_timetable(const Timetable& tt);
Timetable parse_timetable(const std::string& text, int exam_count);
void save_timetable(const Timetable& tt, const std::string& path);
Timetable load_timetable(const std::string& path, int exam_count);

SlotProblem parse_slot_problem(const std::string& text);
std::string serialize_slot_result(const SlotProblem& problem, const SlotSolveResult& result);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace ettp
