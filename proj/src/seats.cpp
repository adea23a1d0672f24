#include "daam/seats.hpp"

#include <string>

namespace daam {

SeatMapping::SeatMapping(std::span<const std::size_t> capacities) {
  seats_.resize(capacities.size());
  for (std::size_t c = 0; c < capacities.size(); ++c) {
    for (std::size_t i = 0; i < capacities[c]; ++i) {
      seats_[c].push_back(college(parent_.size()));
      parent_.push_back(college(c));
    }
  }
}

SplitMarket split_to_one_to_one(const Market& market) {
  const PreferenceProfile& prefs = market.profile();
  SeatMapping mapping(market.capacities());

  std::vector<std::vector<CollegeId>> student_prefs(market.n_students());
  for (std::size_t s = 0; s < market.n_students(); ++s) {
    student_prefs[s].reserve(mapping.n_seats());
    for (CollegeId c : prefs.student_list(student(s))) {
      const auto seats = mapping.seats_of(c);
      student_prefs[s].insert(student_prefs[s].end(), seats.begin(), seats.end());
    }
  }
  std::vector<std::vector<StudentId>> seat_prefs;
  std::vector<std::string> seat_names;
  seat_prefs.reserve(mapping.n_seats());
  for (std::size_t seat = 0; seat < mapping.n_seats(); ++seat) {
    const CollegeId parent = mapping.parent_of(college(seat));
    const auto list = prefs.college_list(parent);
    seat_prefs.emplace_back(list.begin(), list.end());
    const auto siblings = mapping.seats_of(parent);
    const std::size_t ordinal = index(college(seat)) - index(siblings.front()) + 1;
    seat_names.push_back(market.college_name(parent) + "#" + std::to_string(ordinal));
  }

  std::vector<std::size_t> unit(mapping.n_seats(), 1);
  const auto student_names = market.student_names();
  Market derived(std::move(unit),
                 PreferenceProfile(std::move(student_prefs), std::move(seat_prefs)),
                 {student_names.begin(), student_names.end()}, std::move(seat_names));
  return {std::move(derived), std::move(mapping)};
}

Matching merge_seats(const Matching& seat_matching, const SeatMapping& mapping,
                     std::size_t n_colleges) {
  std::vector<std::optional<CollegeId>> student_match(seat_matching.n_students());
  for (std::size_t s = 0; s < student_match.size(); ++s) {
    if (auto seat = seat_matching.college_of(student(s))) {
      student_match[s] = mapping.parent_of(*seat);
    }
  }
  return Matching::from_student_side(std::move(student_match), n_colleges);
}

}  // namespace daam
