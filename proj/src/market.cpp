#include "daam/market.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

#include "daam/errors.hpp"

namespace daam {
namespace {

constexpr std::size_t kUnranked = std::numeric_limits<std::size_t>::max();

// Fills `ranks` (length n) with the inverse of `list`; reports the first
// missing or repeated entry.
template <typename Id>
void invert_permutation(std::span<const Id> list, std::size_t n, std::size_t* ranks,
                        const std::string& owner) {
  std::fill(ranks, ranks + n, kUnranked);
  if (list.size() != n) {
    throw MalformedInput(owner + ": preference list has " + std::to_string(list.size()) +
                         " entries, expected " + std::to_string(n));
  }
  for (std::size_t pos = 0; pos < list.size(); ++pos) {
    const std::size_t i = index(list[pos]);
    if (i >= n) {
      throw MalformedInput(owner + ": preference list references unknown agent " +
                           std::to_string(i));
    }
    if (ranks[i] != kUnranked) {
      throw MalformedInput(owner + ": preference list repeats agent " + std::to_string(i));
    }
    ranks[i] = pos;
  }
}

}  // namespace

PreferenceProfile::PreferenceProfile(std::vector<std::vector<CollegeId>> student_prefs,
                                     std::vector<std::vector<StudentId>> college_prefs)
    : student_prefs_(std::move(student_prefs)), college_prefs_(std::move(college_prefs)) {
  const std::size_t ns = n_students();
  const std::size_t nc = n_colleges();
  student_rank_.resize(ns * nc);
  college_rank_.resize(ns * nc);
  for (std::size_t s = 0; s < ns; ++s) {
    invert_permutation<CollegeId>(student_prefs_[s], nc, student_rank_.data() + s * nc,
                                  "student " + std::to_string(s));
  }
  for (std::size_t c = 0; c < nc; ++c) rebuild_college_rank(c);
}

void PreferenceProfile::rebuild_college_rank(std::size_t c) {
  invert_permutation<StudentId>(college_prefs_[c], n_students(),
                                college_rank_.data() + c * n_students(),
                                "college " + std::to_string(c));
}

PreferenceProfile PreferenceProfile::with_college_list(CollegeId c,
                                                       std::vector<StudentId> list) const {
  PreferenceProfile copy = *this;
  copy.set_college_list(c, std::move(list));
  return copy;
}

void PreferenceProfile::set_college_list(CollegeId c, std::vector<StudentId> list) {
  if (index(c) >= n_colleges()) {
    throw MalformedInput("unknown college " + std::to_string(index(c)));
  }
  const std::size_t n = n_students();
  std::vector<std::size_t> ranks(n);
  invert_permutation<StudentId>(list, n, ranks.data(), "college " + std::to_string(index(c)));
  std::copy(ranks.begin(), ranks.end(), college_rank_.begin() + static_cast<std::ptrdiff_t>(index(c) * n));
  college_prefs_[index(c)] = std::move(list);
}

Market::Market(std::vector<std::size_t> capacities, PreferenceProfile profile,
               std::vector<std::string> student_names, std::vector<std::string> college_names)
    : capacities_(std::move(capacities)),
      profile_(std::move(profile)),
      student_names_(std::move(student_names)),
      college_names_(std::move(college_names)) {
  if (capacities_.size() != profile_.n_colleges()) {
    throw MalformedInput("capacity vector has " + std::to_string(capacities_.size()) +
                         " entries for " + std::to_string(profile_.n_colleges()) + " colleges");
  }
  for (std::size_t c = 0; c < capacities_.size(); ++c) {
    if (capacities_[c] < 1) {
      throw MalformedInput("college " + std::to_string(c) + " has capacity 0");
    }
  }
  if (student_names_.empty()) {
    for (std::size_t s = 0; s < n_students(); ++s) student_names_.push_back("s" + std::to_string(s));
  }
  if (college_names_.empty()) {
    for (std::size_t c = 0; c < n_colleges(); ++c) college_names_.push_back("c" + std::to_string(c));
  }
  if (student_names_.size() != n_students() || college_names_.size() != n_colleges()) {
    throw MalformedInput("name lists do not match market size");
  }
}

std::optional<StudentId> Market::find_student(const std::string& name) const {
  auto it = std::find(student_names_.begin(), student_names_.end(), name);
  if (it == student_names_.end()) return std::nullopt;
  return student(static_cast<std::size_t>(it - student_names_.begin()));
}

std::optional<CollegeId> Market::find_college(const std::string& name) const {
  auto it = std::find(college_names_.begin(), college_names_.end(), name);
  if (it == college_names_.end()) return std::nullopt;
  return college(static_cast<std::size_t>(it - college_names_.begin()));
}

Market Market::with_college_list(CollegeId c, std::vector<StudentId> list) const {
  Market copy = *this;
  copy.profile_ = profile_.with_college_list(c, std::move(list));
  return copy;
}

Matching::Matching(std::size_t n_students, std::size_t n_colleges)
    : student_match_(n_students), college_match_(n_colleges) {}

Matching::Matching(std::vector<std::optional<CollegeId>> student_match,
                   std::vector<std::vector<StudentId>> college_match)
    : student_match_(std::move(student_match)), college_match_(std::move(college_match)) {
  for (auto& members : college_match_) std::sort(members.begin(), members.end());
}

Matching Matching::from_student_side(std::vector<std::optional<CollegeId>> student_match,
                                     std::size_t n_colleges) {
  Matching m(student_match.size(), n_colleges);
  for (std::size_t s = 0; s < student_match.size(); ++s) {
    if (student_match[s]) m.assign(student(s), *student_match[s]);
  }
  return m;
}

void Matching::assign(StudentId s, CollegeId c) {
  student_match_[index(s)] = c;
  auto& members = college_match_[index(c)];
  members.insert(std::upper_bound(members.begin(), members.end(), s), s);
}

void Matching::validate(const Market& market) const {
  if (n_students() != market.n_students() || n_colleges() != market.n_colleges()) {
    throw MalformedInput("matching size does not match market");
  }
  std::vector<std::size_t> seen(n_students(), 0);
  for (std::size_t c = 0; c < n_colleges(); ++c) {
    const auto& members = college_match_[c];
    if (members.size() > market.capacity(college(c))) {
      throw MalformedInput("college " + market.college_name(college(c)) + " exceeds its capacity");
    }
    for (StudentId s : members) {
      if (index(s) >= n_students()) throw MalformedInput("matching references unknown student");
      if (student_match_[index(s)] != college(c)) {
        throw MalformedInput("inconsistent matching at student " + market.student_name(s));
      }
      ++seen[index(s)];
    }
  }
  for (std::size_t s = 0; s < n_students(); ++s) {
    const std::size_t expected = student_match_[s].has_value() ? 1 : 0;
    if (student_match_[s] && index(*student_match_[s]) >= n_colleges()) {
      throw MalformedInput("matching references unknown college");
    }
    if (seen[s] != expected) {
      throw MalformedInput("inconsistent matching at student " + market.student_name(student(s)));
    }
  }
}

std::vector<StudentId> sorted_by_college(const PreferenceProfile& profile, CollegeId c,
                                         std::vector<StudentId> list) {
  std::sort(list.begin(), list.end(), [&](StudentId a, StudentId b) {
    return profile.college_rank(c, a) < profile.college_rank(c, b);
  });
  return list;
}

}  // namespace daam
