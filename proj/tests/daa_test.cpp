#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <map>

#include "daam/daa.hpp"
#include "daam/errors.hpp"
#include "daam/fixtures.hpp"
#include "daam/rng.hpp"
#include "daam/stability.hpp"
#include "test_util.hpp"

namespace daam {
namespace {

using testing::members;
using testing::students_named;

// name -> college name or "" for unmatched.
std::map<std::string, std::string> by_name(const Market& m, const Matching& mu) {
  std::map<std::string, std::string> out;
  for (std::size_t s = 0; s < m.n_students(); ++s) {
    const auto c = mu.college_of(student(s));
    out[m.student_name(student(s))] = c ? m.college_name(*c) : "";
  }
  return out;
}

TEST(Daa, WorkedExampleTruthful) {
  const Market m = fixtures::rejection_chain_market();
  const auto result = run_daa(m, Variant::kStudentProposing);
  const std::map<std::string, std::string> expected = {
      {"s1", "c1"}, {"s2", "c2"}, {"s3", "c3"}, {"s4", "c4"}, {"t1", "c"},
      {"t2", "c"},  {"t3", "c"},  {"u1", ""},   {"u2", ""},   {"u3", ""}};
  EXPECT_EQ(by_name(m, result.matching), expected);
}

TEST(Daa, WorkedExampleMisreport) {
  const Market m = fixtures::rejection_chain_market();
  const auto result = run_daa(m.with_college_list(college(0), fixtures::rejection_chain_misreport()),
                              Variant::kStudentProposing);
  const std::map<std::string, std::string> expected = {
      {"s1", "c2"}, {"s2", "c"},  {"s3", "c"},  {"s4", "c"}, {"t1", "c1"},
      {"t2", "c4"}, {"t3", "c3"}, {"u1", ""},   {"u2", ""},  {"u3", ""}};
  EXPECT_EQ(by_name(m, result.matching), expected);
}

TEST(Daa, AlignedMarketBothVariants) {
  const Market m = testing::aligned_market();
  for (Variant v : {Variant::kStudentProposing, Variant::kCollegeProposing}) {
    const auto r = run_daa(m, v);
    EXPECT_EQ(r.matching.college_of(student(0)), college(0));
    EXPECT_EQ(r.matching.college_of(student(1)), college(1));
  }
}

TEST(Daa, CollegeProposingRefillsAfterRejection) {
  // c0 (q=2) offers s0, s1; s0 prefers c1, which also offers to s0.
  const Market m = testing::make_market({2, 1}, {{1, 0}, {0, 1}, {0, 1}},
                                        {{0, 1, 2}, {0, 1, 2}});
  const auto r = run_daa(m, Variant::kCollegeProposing);
  EXPECT_EQ(members(r.matching, college(0)), (std::vector<StudentId>{student(1), student(2)}));
  EXPECT_EQ(members(r.matching, college(1)), (std::vector<StudentId>{student(0)}));
  EXPECT_EQ(r.trace.proposals_to(2), 1u);  // s2 hears from c0 only, in round 2
  EXPECT_EQ(r.trace.received[2].front().round, 2u);
}

TEST(Daa, TruncationMakesOthersUnacceptable) {
  const Market m = testing::aligned_market();
  const std::vector<StudentId> only_b = {student(1)};
  const auto r = run_daa(m, Variant::kStudentProposing, {.truncation = Truncation{college(0), only_b}});
  EXPECT_FALSE(r.matching.college_of(student(0)).has_value());
  EXPECT_EQ(r.matching.college_of(student(1)), college(1));
  ASSERT_FALSE(r.trace.rejections.empty());
  EXPECT_FALSE(r.trace.rejections.front().in_favor_of.has_value());

  const auto cp = run_daa(m, Variant::kCollegeProposing, {.truncation = Truncation{college(0), only_b}});
  EXPECT_EQ(cp.trace.proposals_to(0), 0u);  // X offers only to b, Y prefers b too
  EXPECT_EQ(cp.trace.proposals_to(1), 2u);
}

TEST(Daa, RejectsBadProposerOrder) {
  const Market m = testing::aligned_market();
  const std::vector<std::uint32_t> repeated = {0, 0};
  EXPECT_THROW(run_daa(m, Variant::kStudentProposing, {.proposer_order = repeated}), MalformedInput);
  const std::vector<std::uint32_t> short_order = {0};
  EXPECT_THROW(run_daa(m, Variant::kStudentProposing, {.proposer_order = short_order}),
               MalformedInput);
}

TEST(Daa, TraceSanity) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Market m = testing::random_market(seed, 12, 4, 3);
    for (Variant v : {Variant::kStudentProposing, Variant::kCollegeProposing}) {
      const auto r = run_daa(m, v);
      const std::size_t n_proposers =
          v == Variant::kStudentProposing ? m.n_students() : m.n_colleges();
      const std::size_t n_proposees =
          v == Variant::kStudentProposing ? m.n_colleges() : m.n_students();
      for (std::size_t r_ix = 0; r_ix < n_proposees; ++r_ix) {
        std::vector<std::uint32_t> who;
        for (const Proposal& p : r.trace.received[r_ix]) who.push_back(p.proposer);
        std::sort(who.begin(), who.end());
        EXPECT_EQ(std::adjacent_find(who.begin(), who.end()), who.end());
      }
      for (std::size_t p = 0; p < n_proposers; ++p) {
        EXPECT_LE(r.trace.proposed_to_by(p).size(), n_proposees);
      }
      for (const Rejection& rej : r.trace.rejections) {
        const auto& got = r.trace.received[rej.rejecter];
        EXPECT_TRUE(std::any_of(got.begin(), got.end(), [&](const Proposal& p) {
          return p.proposer == rej.rejected && p.round <= rej.round;
        }));
        ASSERT_TRUE(rej.in_favor_of.has_value());  // complete lists
        EXPECT_NE(*rej.in_favor_of, rej.rejected);
      }
    }
  }
}

TEST(Daa, UnderfilledCollegeRejectedNobody) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Market m = testing::random_market(seed, 10, 4, 4);
    const auto r = run_daa(m, Variant::kStudentProposing);
    for (std::size_t c = 0; c < m.n_colleges(); ++c) {
      if (r.matching.students_of(college(c)).size() >= m.capacity(college(c))) continue;
      EXPECT_LE(r.trace.proposals_to(c), m.capacity(college(c)));
      EXPECT_TRUE(std::none_of(r.trace.rejections.begin(), r.trace.rejections.end(),
                               [&](const Rejection& x) { return x.rejecter == c; }));
    }
  }
}

TEST(Daa, OutputIsStable) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Market m = testing::random_market(seed, 30, 6, 5);
    for (Variant v : {Variant::kStudentProposing, Variant::kCollegeProposing}) {
      const auto st = is_stable(m, run_daa(m, v).matching);
      EXPECT_TRUE(st.stable) << "seed " << seed << ' ' << to_string(v);
    }
  }
}

TEST(Daa, ProposerOrderDoesNotMatter) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Market m = testing::random_market(seed, 20, 5, 4);
    Rng rng(seed);
    for (Variant v : {Variant::kStudentProposing, Variant::kCollegeProposing}) {
      const Matching base = run_daa(m, v).matching;
      const std::size_t n = v == Variant::kStudentProposing ? m.n_students() : m.n_colleges();
      for (int k = 0; k < 5; ++k) {
        std::vector<std::uint32_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<std::uint32_t>(i);
        rng.shuffle(order.begin(), order.end());
        EXPECT_EQ(run_daa(m, v, {.proposer_order = order}).matching, base);
      }
    }
  }
}

// Every stable matching of a small market, by exhaustive assignment.
std::vector<Matching> all_stable_matchings(const Market& m) {
  std::vector<Matching> out;
  std::vector<std::optional<CollegeId>> assign(m.n_students());
  std::vector<std::size_t> load(m.n_colleges(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t s) {
    if (s == m.n_students()) {
      Matching mu = Matching::from_student_side(assign, m.n_colleges());
      if (is_stable(m, mu).stable) out.push_back(std::move(mu));
      return;
    }
    assign[s] = std::nullopt;
    rec(s + 1);
    for (std::size_t c = 0; c < m.n_colleges(); ++c) {
      if (load[c] == m.capacity(college(c))) continue;
      ++load[c];
      assign[s] = college(c);
      rec(s + 1);
      --load[c];
    }
    assign[s] = std::nullopt;
  };
  rec(0);
  return out;
}

// Rank of s's partner, n_colleges when unmatched.
std::size_t partner_rank(const Market& m, const Matching& mu, StudentId s) {
  const auto c = mu.college_of(s);
  return c ? m.profile().student_rank(s, *c) : m.n_colleges();
}

TEST(Daa, StudentProposingIsStudentOptimal) {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const Market m = testing::random_market(seed, 6, 3, 2);
    const Matching daa = run_daa(m, Variant::kStudentProposing).matching;
    const auto stable = all_stable_matchings(m);
    ASSERT_FALSE(stable.empty());
    EXPECT_NE(std::find(stable.begin(), stable.end(), daa), stable.end());
    for (std::size_t s = 0; s < m.n_students(); ++s) {
      for (const Matching& mu : stable) {
        EXPECT_LE(partner_rank(m, daa, student(s)), partner_rank(m, mu, student(s)))
            << "seed " << seed;
      }
    }
  }
}

TEST(Daa, StudentProposingIsStrategyproofForStudents) {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    const Market m = testing::random_market(seed, 6, 3, 2);
    const Matching truthful = run_daa(m, Variant::kStudentProposing, {.record_trace = false}).matching;
    for (std::size_t s = 0; s < m.n_students(); ++s) {
      const std::size_t honest = partner_rank(m, truthful, student(s));
      auto list = std::vector<CollegeId>(m.profile().student_list(student(s)).begin(),
                                         m.profile().student_list(student(s)).end());
      std::sort(list.begin(), list.end());
      do {
        std::vector<std::vector<CollegeId>> sp;
        std::vector<std::vector<StudentId>> cp;
        for (std::size_t i = 0; i < m.n_students(); ++i) {
          const auto l = m.profile().student_list(student(i));
          sp.emplace_back(l.begin(), l.end());
        }
        for (std::size_t c = 0; c < m.n_colleges(); ++c) {
          const auto l = m.profile().college_list(college(c));
          cp.emplace_back(l.begin(), l.end());
        }
        sp[s] = list;
        const Market lied({m.capacities().begin(), m.capacities().end()},
                          PreferenceProfile(std::move(sp), std::move(cp)));
        const Matching got = run_daa(lied, Variant::kStudentProposing, {.record_trace = false}).matching;
        EXPECT_GE(partner_rank(m, got, student(s)), honest) << "seed " << seed;
      } while (std::next_permutation(list.begin(), list.end()));
    }
  }
}

}  // namespace
}  // namespace daam
