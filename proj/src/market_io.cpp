#include "daam/market_io.hpp"

#include <fstream>
#include <map>
#include <string>
#include <tuple>
#include <utility>

#include "daam/errors.hpp"

namespace daam {
namespace {

using nlohmann::json;

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw MalformedInput(std::string("market file: missing field \"") + key + "\"");
  }
  return doc.at(key);
}

std::string name_at(const json& v, const std::string& where) {
  if (!v.is_string()) throw MalformedInput(where + ": expected a name string");
  return v.get<std::string>();
}

std::map<std::string, std::uint32_t> index_names(const std::vector<std::string>& names,
                                                 const char* side) {
  std::map<std::string, std::uint32_t> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!out.emplace(names[i], static_cast<std::uint32_t>(i)).second) {
      throw MalformedInput(std::string("duplicate ") + side + " name '" + names[i] + "'");
    }
  }
  return out;
}

// Resolves one agent's list and checks that it is a permutation of `targets`.
template <typename Id>
std::vector<Id> read_list(const json& prefs, const std::string& owner, const char* owner_side,
                          const std::map<std::string, std::uint32_t>& targets,
                          const char* target_side) {
  const std::string who = std::string(owner_side) + " '" + owner + "'";
  if (!prefs.contains(owner)) throw MalformedInput(who + ": no preference list");
  const json& list = prefs.at(owner);
  if (!list.is_array()) throw MalformedInput(who + ": preference list must be an array");
  std::vector<Id> out;
  std::vector<bool> seen(targets.size(), false);
  for (const json& entry : list) {
    const std::string name = name_at(entry, who);
    auto it = targets.find(name);
    if (it == targets.end()) {
      throw MalformedInput(who + ": unknown " + target_side + " '" + name + "'");
    }
    if (seen[it->second]) {
      throw MalformedInput(who + ": " + target_side + " '" + name + "' listed twice");
    }
    seen[it->second] = true;
    out.push_back(Id{it->second});
  }
  for (const auto& [name, i] : targets) {
    if (!seen[i]) throw MalformedInput(who + ": " + target_side + " '" + name + "' missing");
  }
  return out;
}

}  // namespace

Market market_from_json(const json& doc) {
  std::vector<std::string> students;
  for (const json& v : field(doc, "students")) students.push_back(name_at(v, "students"));

  std::vector<std::string> colleges;
  std::vector<std::size_t> capacities;
  for (const json& v : field(doc, "colleges")) {
    if (!v.is_object()) throw MalformedInput("colleges: expected {\"name\", \"capacity\"} objects");
    const std::string name = name_at(field(v, "name"), "colleges");
    const json& cap = field(v, "capacity");
    if (!cap.is_number_integer() || cap.get<long long>() < 1) {
      throw MalformedInput("college '" + name + "': capacity must be a positive integer");
    }
    colleges.push_back(name);
    capacities.push_back(cap.get<std::size_t>());
  }

  const auto student_index = index_names(students, "student");
  const auto college_index = index_names(colleges, "college");
  const json& student_prefs = field(doc, "studentPrefs");
  const json& college_prefs = field(doc, "collegePrefs");
  for (const auto& [prefs, names, side] :
       {std::tuple{&student_prefs, &student_index, "student"},
        std::tuple{&college_prefs, &college_index, "college"}}) {
    if (!prefs->is_object()) {
      throw MalformedInput(std::string(side) + " preferences must be an object");
    }
    for (const auto& [key, value] : prefs->items()) {
      if (!names->contains(key)) {
        throw MalformedInput(std::string("preferences given for unknown ") + side + " '" + key +
                             "'");
      }
    }
  }

  std::vector<std::vector<CollegeId>> sp;
  for (const std::string& s : students) {
    sp.push_back(read_list<CollegeId>(student_prefs, s, "student", college_index, "college"));
  }
  std::vector<std::vector<StudentId>> cp;
  for (const std::string& c : colleges) {
    cp.push_back(read_list<StudentId>(college_prefs, c, "college", student_index, "student"));
  }
  return Market(std::move(capacities), PreferenceProfile(std::move(sp), std::move(cp)),
                std::move(students), std::move(colleges));
}

nlohmann::ordered_json market_to_json(const Market& market) {
  nlohmann::ordered_json doc;
  doc["students"] = market.student_names();
  doc["colleges"] = nlohmann::ordered_json::array();
  for (std::size_t c = 0; c < market.n_colleges(); ++c) {
    doc["colleges"].push_back(
        {{"name", market.college_name(college(c))}, {"capacity", market.capacity(college(c))}});
  }
  nlohmann::ordered_json sp = nlohmann::ordered_json::object();
  for (std::size_t s = 0; s < market.n_students(); ++s) {
    auto& list = sp[market.student_name(student(s))] = nlohmann::ordered_json::array();
    for (CollegeId c : market.profile().student_list(student(s))) {
      list.push_back(market.college_name(c));
    }
  }
  nlohmann::ordered_json cp = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < market.n_colleges(); ++c) {
    cp[market.college_name(college(c))] =
        names_of(market, market.profile().college_list(college(c)));
  }
  doc["studentPrefs"] = std::move(sp);
  doc["collegePrefs"] = std::move(cp);
  return doc;
}

Market read_market(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw MalformedInput(std::string("market file is not valid JSON: ") + e.what());
  }
  return market_from_json(doc);
}

Market load_market(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_market(in);
}

void save_market(const std::filesystem::path& path, const Market& market) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << market_to_json(market).dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path.string());
}

nlohmann::ordered_json matching_to_json(const Market& market, const Matching& matching) {
  nlohmann::ordered_json doc;
  nlohmann::ordered_json colleges = nlohmann::ordered_json::object();
  for (std::size_t c = 0; c < market.n_colleges(); ++c) {
    colleges[market.college_name(college(c))] = names_of(market, matching.students_of(college(c)));
  }
  doc["colleges"] = std::move(colleges);
  std::vector<StudentId> unmatched;
  for (std::size_t s = 0; s < market.n_students(); ++s) {
    if (!matching.college_of(student(s))) unmatched.push_back(student(s));
  }
  doc["unmatched"] = names_of(market, unmatched);
  return doc;
}

nlohmann::ordered_json names_of(const Market& market, std::span<const StudentId> students) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (StudentId s : students) out.push_back(market.student_name(s));
  return out;
}

}  // namespace daam
