#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "daam/market.hpp"

namespace daam {

// Market files are JSON:
//   {"students": [names],
//    "colleges": [{"name": ..., "capacity": ...}],
//    "studentPrefs": {student: [college names best-first]},
//    "collegePrefs": {college: [student names best-first]}}
// Parse failures throw MalformedInput naming the offending agent.
Market market_from_json(const nlohmann::json& doc);
nlohmann::ordered_json market_to_json(const Market& market);

Market read_market(std::istream& in);
Market load_market(const std::filesystem::path& path);  // IoError if unreadable
void save_market(const std::filesystem::path& path, const Market& market);

// {"colleges": {college: [students]}, "unmatched": [students]}; members are
// listed by index.
nlohmann::ordered_json matching_to_json(const Market& market, const Matching& matching);

nlohmann::ordered_json names_of(const Market& market, std::span<const StudentId> students);

}  // namespace daam
