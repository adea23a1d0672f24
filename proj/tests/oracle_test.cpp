#include <gtest/gtest.h>

#include "daam/errors.hpp"
#include "daam/fixtures.hpp"
#include "daam/manipulation.hpp"
#include "daam/oracle.hpp"
#include "daam/responsive.hpp"
#include "test_util.hpp"

namespace daam {
namespace {

TEST(Oracle, AlignedMarket) {
  const Market m = testing::aligned_market();
  for (Variant v : {Variant::kStudentProposing, Variant::kCollegeProposing}) {
    const auto r = brute_force_oracle(m, college(0), v);
    EXPECT_FALSE(r.manipulable);
    EXPECT_EQ(r.maximal_outcomes, (std::vector<std::vector<StudentId>>{{student(0)}}));
    EXPECT_EQ(r.daa_executions, 2u);
  }
}

// s0: c0 c1, s1: c0 c1, s2: c1 c0; c0 (q=1): s2 s0 s1; c1 (q=2): s0 s1 s2.
// s2 never leaves c1, so c0 keeps whichever of s0, s1 it ranks higher:
// three reports give {s0} and three give {s1}.
TEST(Oracle, HandEnumeratedThreeStudents) {
  const Market m = testing::make_market({1, 2}, {{0, 1}, {0, 1}, {1, 0}}, {{2, 0, 1}, {0, 1, 2}});
  std::size_t with_s0 = 0;
  std::vector<StudentId> list = {student(0), student(1), student(2)};
  do {
    const auto r = run_daa(m.with_college_list(college(0), list), Variant::kStudentProposing);
    const auto got = r.matching.students_of(college(0));
    ASSERT_EQ(got.size(), 1u);
    with_s0 += got.front() == student(0);
  } while (std::next_permutation(list.begin(), list.end()));
  EXPECT_EQ(with_s0, 3u);

  const auto r = brute_force_oracle(m, college(0), Variant::kStudentProposing);
  EXPECT_FALSE(r.manipulable);
  EXPECT_EQ(r.daa_executions, 6u);
  EXPECT_EQ(r.outcomes, (std::vector<std::vector<StudentId>>{{student(0)}, {student(1)}}));
  EXPECT_EQ(r.maximal_outcomes, (std::vector<std::vector<StudentId>>{{student(0)}}));
}

TEST(Oracle, RefusesLargeMarkets) {
  const Market m = fixtures::rejection_chain_market();
  EXPECT_THROW(brute_force_oracle(m, college(0), Variant::kStudentProposing), SizeGuardError);
  EXPECT_THROW(brute_force_oracle(m, college(0), Variant::kStudentProposing, 9), SizeGuardError);
}

TEST(Oracle, WorkedExampleWithRaisedGuard) {
  const Market m = fixtures::rejection_chain_market();
  const auto r = brute_force_oracle(m, college(0), Variant::kStudentProposing, 10);
  EXPECT_TRUE(r.manipulable);
  const auto opt = find_optimal_manipulation_student_proposing(m, college(0));
  const auto got = opt.result.students_of(college(0));
  for (const auto& o : r.outcomes) {
    EXPECT_NE(responsive_dominates(m.profile(), college(0), o, got, 3), Dominance::kStrictlyBetter);
  }
  ASSERT_EQ(r.maximal_outcomes.size(), 1u);
  EXPECT_EQ(r.maximal_outcomes.front(), testing::students_named(m, {"s3", "s4", "t3"}));
}

}  // namespace
}  // namespace daam
