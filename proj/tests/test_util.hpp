#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "daam/market.hpp"
#include "daam/prefgen.hpp"
#include "daam/rng.hpp"

namespace daam::testing {

// Market from index lists; names default to s0.., c0...
inline Market make_market(std::vector<std::size_t> capacities,
                          const std::vector<std::vector<std::uint32_t>>& students,
                          const std::vector<std::vector<std::uint32_t>>& colleges) {
  std::vector<std::vector<CollegeId>> sp;
  for (const auto& list : students) {
    sp.emplace_back();
    for (std::uint32_t c : list) sp.back().push_back(CollegeId{c});
  }
  std::vector<std::vector<StudentId>> cp;
  for (const auto& list : colleges) {
    cp.emplace_back();
    for (std::uint32_t s : list) cp.back().push_back(StudentId{s});
  }
  return Market(std::move(capacities), PreferenceProfile(std::move(sp), std::move(cp)));
}

// a: X > Y, b: Y > X, X: a > b, Y: b > a; unit capacities.
inline Market aligned_market() {
  return Market({1, 1}, make_market({1, 1}, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}}).profile(),
                {"a", "b"}, {"X", "Y"});
}

// IC market with 1..max_students students, 1..max_colleges colleges and
// capacities uniform in 1..max_capacity.
inline Market random_market(std::uint64_t seed, std::size_t max_students,
                            std::size_t max_colleges, std::size_t max_capacity,
                            std::size_t min_students = 1) {
  Rng rng(derive_seed({seed, 0x7e57}));
  const std::size_t ns = min_students + rng.uniform_below(max_students - min_students + 1);
  const std::size_t nc = 1 + rng.uniform_below(max_colleges);
  std::vector<std::size_t> q(nc);
  for (auto& x : q) x = 1 + rng.uniform_below(max_capacity);
  return Market(std::move(q),
                gen_profile(ns, nc, impartial_culture(Side::kStudents, rng.next()),
                            impartial_culture(Side::kColleges, rng.next())));
}

inline std::vector<StudentId> students_named(const Market& market,
                                             std::initializer_list<const char*> names) {
  std::vector<StudentId> out;
  for (const char* n : names) out.push_back(*market.find_student(n));
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<StudentId> members(const Matching& m, CollegeId c) {
  auto span = m.students_of(c);
  return {span.begin(), span.end()};
}

}  // namespace daam::testing
