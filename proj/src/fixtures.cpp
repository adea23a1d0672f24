#include "daam/fixtures.hpp"

#include <algorithm>
#include <string>

namespace daam::fixtures {
namespace {

// head, then every index not mentioned in head or tail (ascending), then tail.
template <typename Id>
std::vector<Id> complete(std::vector<std::size_t> head, std::vector<std::size_t> tail,
                         std::size_t n) {
  std::vector<Id> out;
  auto mentioned = [&](std::size_t i) {
    return std::count(head.begin(), head.end(), i) + std::count(tail.begin(), tail.end(), i) > 0;
  };
  for (std::size_t i : head) out.push_back(Id{static_cast<std::uint32_t>(i)});
  for (std::size_t i = 0; i < n; ++i) {
    if (!mentioned(i)) out.push_back(Id{static_cast<std::uint32_t>(i)});
  }
  for (std::size_t i : tail) out.push_back(Id{static_cast<std::uint32_t>(i)});
  return out;
}

// Students.
enum : std::size_t { s1, s2, s3, s4, t1, t2, t3, u1, u2, u3, kStudents };
// Colleges.
enum : std::size_t { c, c1, c2, c3, c4, kColleges };

}  // namespace

Market rejection_chain_market() {
  std::vector<std::vector<CollegeId>> students = {
      complete<CollegeId>({c1, c2}, {}, kColleges),      // s1
      complete<CollegeId>({c2, c3, c}, {}, kColleges),   // s2
      complete<CollegeId>({c3, c}, {}, kColleges),       // s3
      complete<CollegeId>({c4, c}, {}, kColleges),       // s4
      complete<CollegeId>({c, c1}, {}, kColleges),       // t1
      complete<CollegeId>({c, c2, c4}, {}, kColleges),   // t2
      complete<CollegeId>({c, c3}, {}, kColleges),       // t3
      complete<CollegeId>({}, {c}, kColleges),           // u1
      complete<CollegeId>({}, {c}, kColleges),           // u2
      complete<CollegeId>({}, {c}, kColleges),           // u3
  };
  const std::vector<std::size_t> us = {u1, u2, u3};
  std::vector<std::vector<StudentId>> colleges = {
      complete<StudentId>({s4, t3, s2, t1, s3, t2, s1}, us, kStudents),  // c
      complete<StudentId>({t1, s1}, us, kStudents),                      // c1
      complete<StudentId>({s1, t2, s2}, us, kStudents),                  // c2
      complete<StudentId>({t3, s2, s3}, us, kStudents),                  // c3
      complete<StudentId>({t2, s4}, us, kStudents),                      // c4
  };
  return Market({3, 1, 1, 1, 1}, PreferenceProfile(std::move(students), std::move(colleges)),
                {"s1", "s2", "s3", "s4", "t1", "t2", "t3", "u1", "u2", "u3"},
                {"c", "c1", "c2", "c3", "c4"});
}

std::vector<StudentId> rejection_chain_misreport() {
  return complete<StudentId>({s4, s2, s3, u1, u2, u3, s1, t3, t1, t2}, {}, kStudents);
}

namespace {

Market small_market(std::vector<std::size_t> capacities,
                    const std::vector<std::vector<std::uint32_t>>& students,
                    const std::vector<std::vector<std::uint32_t>>& colleges) {
  std::vector<std::vector<CollegeId>> sp;
  for (const auto& list : students) {
    sp.emplace_back();
    for (std::uint32_t i : list) sp.back().push_back(CollegeId{i});
  }
  std::vector<std::vector<StudentId>> cp;
  for (const auto& list : colleges) {
    cp.emplace_back();
    for (std::uint32_t i : list) cp.back().push_back(StudentId{i});
  }
  return Market(std::move(capacities), PreferenceProfile(std::move(sp), std::move(cp)));
}

}  // namespace

Market demotion_gap_market() {
  return small_market({2, 1}, {{1, 0}, {0, 1}, {0, 1}, {1, 0}},
                      {{3, 0, 2, 1}, {2, 3, 0, 1}});
}

Market seat_gap_market() {
  return small_market({2, 1}, {{1, 0}, {0, 1}, {0, 1}, {0, 1}, {1, 0}},
                      {{4, 1, 2, 0, 3}, {1, 4, 3, 2, 0}});
}

Market offer_gap_market() {
  return small_market({2, 1, 3},
                      {{1, 2, 0}, {0, 1, 2}, {1, 2, 0}, {2, 1, 0}, {0, 2, 1}, {0, 1, 2}, {1, 0, 2}},
                      {{0, 6, 3, 4, 1, 5, 2}, {3, 0, 1, 6, 4, 2, 5}, {4, 3, 0, 5, 6, 1, 2}});
}

}  // namespace daam::fixtures
