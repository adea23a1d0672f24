#include <gtest/gtest.h>

#include "daam/errors.hpp"
#include "daam/fixtures.hpp"
#include "daam/manipulation.hpp"
#include "daam/oracle.hpp"
#include "daam/responsive.hpp"
#include "daam/seats.hpp"
#include "test_util.hpp"

namespace daam {
namespace {

using testing::members;
using testing::students_named;

std::vector<StudentId> sorted(std::vector<StudentId> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Replays the report and checks the recorded matching and the set identities.
void expect_sound(const Market& m, const ManipulationReport& r) {
  const auto replay =
      run_daa(m.with_college_list(r.college, r.reported_list), r.variant, {.record_trace = false});
  EXPECT_EQ(replay.matching, r.result);
  const auto truthful = run_daa(m, r.variant).matching;
  EXPECT_EQ(responsive_dominates(m.profile(), r.college, members(r.result, r.college),
                                 members(truthful, r.college), m.capacity(r.college)),
            Dominance::kStrictlyBetter);
  EXPECT_TRUE(r.beneficial);
  EXPECT_EQ(r.lost.size(), r.gained.size());
  for (StudentId u : r.temp_held) {
    EXPECT_NE(r.result.college_of(u), r.college);
    for (StudentId t : r.lost) {
      EXPECT_GT(m.profile().college_rank(r.college, u), m.profile().college_rank(r.college, t));
    }
  }
}

TEST(EvaluateReport, WorkedExampleSets) {
  const Market m = fixtures::rejection_chain_market();
  const auto truthful = run_daa(m, Variant::kStudentProposing);
  const auto r = evaluate_report(m, college(0), Variant::kStudentProposing,
                                 fixtures::rejection_chain_misreport(), truthful);
  EXPECT_TRUE(r.beneficial);
  EXPECT_EQ(sorted(r.lost), students_named(m, {"t1", "t2", "t3"}));
  EXPECT_EQ(sorted(r.gained), students_named(m, {"s2", "s3", "s4"}));
  EXPECT_EQ(sorted(r.temp_held), students_named(m, {"u1", "u2", "u3"}));
}

TEST(StudentProposingFinder, WorkedExample) {
  const Market m = fixtures::rejection_chain_market();
  const auto r = find_manipulation_student_proposing(m, college(0));
  ASSERT_TRUE(r.has_value());
  expect_sound(m, *r);
  EXPECT_EQ(r->lost.size(), 1u);
  EXPECT_EQ(sorted(members(r->result, college(0))), students_named(m, {"s3", "t1", "t3"}));
}

TEST(StudentProposingFinder, OptimalBeatsThePrintedMisreport) {
  const Market m = fixtures::rejection_chain_market();
  const auto r = find_optimal_manipulation_student_proposing(m, college(0));
  expect_sound(m, r);
  const auto got = members(r.result, college(0));
  EXPECT_EQ(sorted(got), students_named(m, {"s3", "s4", "t3"}));
  EXPECT_EQ(responsive_dominates(m.profile(), college(0), got,
                                 students_named(m, {"s2", "s3", "s4"}), 3),
            Dominance::kStrictlyBetter);
  EXPECT_EQ(r.iterations, 2u);
}

TEST(StudentProposingFinder, AlignedMarketHasNothing) {
  const Market m = testing::aligned_market();
  for (std::size_t c = 0; c < 2; ++c) {
    EXPECT_FALSE(find_manipulation_student_proposing(m, college(c)).has_value());
    const auto opt = find_optimal_manipulation_student_proposing(m, college(c));
    EXPECT_FALSE(opt.beneficial);
    EXPECT_EQ(opt.iterations, 0u);
    EXPECT_EQ(opt.reported_list, std::vector<StudentId>(m.profile().college_list(college(c)).begin(),
                                                        m.profile().college_list(college(c)).end()));
  }
}

TEST(StudentProposingFinder, PruningConditions) {
  // c0 is underfilled; c1 fills but receives exactly q proposals.
  const Market m = testing::make_market({3, 1}, {{0, 1}, {1, 0}}, {{0, 1}, {1, 0}});
  const auto truthful = run_daa(m, Variant::kStudentProposing);
  EXPECT_FALSE(may_manipulate_student_proposing(m, college(0), truthful));
  EXPECT_FALSE(may_manipulate_student_proposing(m, college(1), truthful));
  EXPECT_THROW(find_manipulation_student_proposing(m, college(5)), MalformedInput);
}

TEST(StudentProposingFinder, FindsManipulationsNoSingleDemotionReaches) {
  const Market m = fixtures::demotion_gap_market();
  const CollegeId c1 = college(1);
  const auto truthful = run_daa(m, Variant::kStudentProposing);
  EXPECT_EQ(members(truthful.matching, c1), (std::vector<StudentId>{student(3)}));
  EXPECT_FALSE(find_single_demotion_manipulation(m, c1, truthful).has_value());
  EXPECT_TRUE(brute_force_oracle(m, c1, Variant::kStudentProposing).manipulable);
  const auto r = find_manipulation_student_proposing(m, c1);
  ASSERT_TRUE(r.has_value());
  expect_sound(m, *r);
  EXPECT_EQ(members(r->result, c1), (std::vector<StudentId>{student(2)}));
}

TEST(StudentProposingFinder, SingleDemotionWitnessReplays) {
  const Market m = fixtures::rejection_chain_market();
  const auto truthful = run_daa(m, Variant::kStudentProposing);
  const auto r = find_single_demotion_manipulation(m, college(0), truthful);
  ASSERT_TRUE(r.has_value());
  ASSERT_TRUE(r->demotion.has_value());
  const auto truth = m.profile().college_list(college(0));
  EXPECT_EQ(apply_demotion(truth, *r->demotion), r->reported_list);
  expect_sound(m, *r);
}

TEST(SeatPath, SeatGainImpliesCollegeGain) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Market m = testing::random_market(seed, 6, 3, 3);
    for (std::size_t c = 0; c < m.n_colleges(); ++c) {
      const auto seat = find_seat_manipulation(m, college(c));
      if (!seat) continue;
      EXPECT_TRUE(find_manipulation_student_proposing(m, college(c)).has_value()) << "seed " << seed;
    }
  }
}

TEST(SeatPath, SeatWitnessReplaysInSplitMarket) {
  const Market m = fixtures::rejection_chain_market();
  const auto seat = find_seat_manipulation(m, college(0));
  ASSERT_TRUE(seat.has_value());
  const SplitMarket split = split_to_one_to_one(m);
  const auto truthful = run_daa(split.market, Variant::kStudentProposing).matching;
  const auto got = run_daa(split.market.with_college_list(seat->seat, seat->reported_list),
                           Variant::kStudentProposing)
                       .matching;
  EXPECT_EQ(members(got, seat->seat), (std::vector<StudentId>{seat->partner}));
  const StudentId before = truthful.students_of(seat->seat).front();
  EXPECT_LT(split.market.profile().college_rank(seat->seat, seat->partner),
            split.market.profile().college_rank(seat->seat, before));
}

TEST(SeatPath, CollegeGainWithoutAnySeatGain) {
  const Market m = fixtures::seat_gap_market();
  const CollegeId c0 = college(0);
  const auto r = find_manipulation_student_proposing(m, c0);
  ASSERT_TRUE(r.has_value());
  expect_sound(m, *r);
  const auto report = evaluate_report(m, c0, Variant::kStudentProposing,
                                      {student(4), student(2), student(3), student(0), student(1)},
                                      run_daa(m, Variant::kStudentProposing));
  EXPECT_TRUE(report.beneficial);
  EXPECT_FALSE(find_seat_manipulation(m, c0).has_value());
  const SplitMarket split = split_to_one_to_one(m);
  for (CollegeId seat : split.mapping.seats_of(c0)) {
    EXPECT_FALSE(brute_force_oracle(split.market, seat, Variant::kStudentProposing).manipulable);
  }
}

TEST(CollegeProposingFinder, PruningAndBudget) {
  const Market aligned = testing::aligned_market();
  EXPECT_FALSE(find_manipulation_college_proposing(aligned, college(0)).has_value());

  const Market roomy = testing::make_market({3}, {{0}, {0}}, {{0, 1}});
  const auto truthful = run_daa(roomy, Variant::kCollegeProposing);
  EXPECT_FALSE(may_manipulate_college_proposing(roomy, college(0), truthful));
  EXPECT_FALSE(find_manipulation_college_proposing(roomy, college(0), true).has_value());
}

// Six-student markets with c0 (q=2) and c1 (q=1); the witness must replay
// and no reachable outcome may beat the optimal one.
TEST(CollegeProposingFinder, SeededSixStudentMarket) {
  std::size_t found = 0;
  for (std::uint64_t seed = 0; seed < 400 && found < 10; ++seed) {
    const Market m = testing::random_market(seed, 6, 2, 1, 6);
    if (m.n_colleges() != 2) continue;
    const Market two = Market({2, 1}, m.profile());
    const auto oracle = brute_force_oracle(two, college(0), Variant::kCollegeProposing);
    const auto r = find_manipulation_college_proposing(two, college(0), true);
    EXPECT_EQ(r.has_value(), oracle.manipulable) << "seed " << seed;
    if (!r) continue;
    ++found;
    expect_sound(two, *r);
    EXPECT_LE(r->daa_executions, 1u);
    EXPECT_FALSE(r->withheld.empty());
    const auto got = members(r->result, college(0));
    for (const auto& best : oracle.outcomes) {
      EXPECT_NE(responsive_dominates(two.profile(), college(0), best, got, 2),
                Dominance::kStrictlyBetter);
    }
  }
  EXPECT_GT(found, 0u);
}

TEST(CollegeProposingFinder, ManipulationOnlyWithholdsProposals) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    const Market m = testing::random_market(seed, 8, 3, 4);
    for (std::size_t c = 0; c < m.n_colleges(); ++c) {
      const auto r = find_manipulation_college_proposing(m, college(c), seed % 2 == 0);
      if (!r) continue;
      expect_sound(m, *r);
      const std::size_t q = m.capacity(college(c));
      EXPECT_LE(r->daa_executions, (std::size_t{1} << (q - 1)) - 1);
      const auto before = run_daa(m, Variant::kCollegeProposing).trace.proposed_to_by(c);
      const auto after = run_daa(m.with_college_list(college(c), r->reported_list),
                                 Variant::kCollegeProposing)
                             .trace.proposed_to_by(c);
      EXPECT_TRUE(std::includes(before.begin(), before.end(), after.begin(), after.end()));
    }
  }
}

TEST(CollegeProposingFinder, MissesGainFromWithholdingDepartedOffer) {
  const Market m = fixtures::offer_gap_market();
  const CollegeId c2 = college(2);
  EXPECT_EQ(members(run_daa(m, Variant::kCollegeProposing).matching, c2),
            sorted({student(1), student(3), student(5)}));
  EXPECT_TRUE(brute_force_oracle(m, c2, Variant::kCollegeProposing).manipulable);
  EXPECT_FALSE(find_manipulation_college_proposing(m, c2, true).has_value());

  const auto wide = find_offer_withholding_manipulation(m, c2, true);
  ASSERT_TRUE(wide.has_value());
  expect_sound(m, *wide);
  EXPECT_EQ(members(wide->result, c2), sorted({student(1), student(4), student(5)}));
  EXPECT_EQ(sorted(wide->withheld), sorted({student(0), student(3)}));
}

TEST(CollegeProposingFinder, OfferWithholdingAgreesWithOracle) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Market m = testing::random_market(seed, 7, 3, 3, 5);
    for (std::size_t c = 0; c < m.n_colleges(); ++c) {
      const auto r = find_offer_withholding_manipulation(m, college(c));
      ASSERT_EQ(r.has_value(),
                brute_force_oracle(m, college(c), Variant::kCollegeProposing).manipulable)
          << "seed " << seed;
      if (r) expect_sound(m, *r);
    }
  }
}

TEST(CollegeProposingFinder, OfferWithholdingSizeGuard) {
  EXPECT_THROW(find_offer_withholding_manipulation(fixtures::offer_gap_market(), college(2), false, 1),
               SizeGuardError);
}

TEST(Finders, AgreeWithOracleOnSmallMarkets) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Market m = testing::random_market(seed, 6, 3, 3);
    for (std::size_t c = 0; c < m.n_colleges(); ++c) {
      const auto sp_oracle = brute_force_oracle(m, college(c), Variant::kStudentProposing);
      const auto sp = find_manipulation_student_proposing(m, college(c));
      ASSERT_EQ(sp.has_value(), sp_oracle.manipulable) << "seed " << seed;
      if (sp) {
        expect_sound(m, *sp);
        EXPECT_EQ(sp->lost.size(), 1u);
        const auto opt = members(find_optimal_manipulation_student_proposing(m, college(c)).result,
                                 college(c));
        for (const auto& o : sp_oracle.outcomes) {
          EXPECT_NE(responsive_dominates(m.profile(), college(c), o, opt, m.capacity(college(c))),
                    Dominance::kStrictlyBetter)
              << "seed " << seed;
        }
      }
      const auto cp_oracle = brute_force_oracle(m, college(c), Variant::kCollegeProposing);
      EXPECT_EQ(find_manipulation_college_proposing(m, college(c)).has_value(),
                cp_oracle.manipulable)
          << "seed " << seed;
    }
  }
}

TEST(ApplyDemotion, MovesOneStudent) {
  const std::vector<StudentId> list = {student(0), student(1), student(2), student(3)};
  EXPECT_EQ(apply_demotion(list, {student(1), 3}),
            (std::vector<StudentId>{student(0), student(2), student(3), student(1)}));
  EXPECT_THROW(apply_demotion(list, {student(1), 4}), MalformedInput);
  EXPECT_THROW(apply_demotion(list, {student(7), 0}), MalformedInput);
}

}  // namespace
}  // namespace daam
