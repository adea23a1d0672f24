#pragma once

#include <vector>

#include "daam/market.hpp"

namespace daam::fixtures {

// Ten students s1..s4, t1..t3, u1..u3 and colleges c (capacity 3), c1..c4
// (capacity 1) where c profits from rejecting its whole truthful match
// through three chains of rejections. Entries the construction leaves open
// are filled with the remaining agents in index order.
Market rejection_chain_market();

// c's misreport s4 > s2 > s3 > u1 > u2 > u3 > s1 > t3 > t1 > t2.
std::vector<StudentId> rejection_chain_misreport();

// Four students, c0 (capacity 2) and c1 (capacity 1). c1 can trade its
// truthful partner s3 for s2, but only with reports s2 > s1 > s0 > s3 or
// s2 > s1 > s3 > s0; no report that merely demotes s3 works.
Market demotion_gap_market();

// Five students, c0 (capacity 2) and c1 (capacity 1). c0 gains s4 in place
// of s1 by ranking s1 last, yet in the seat-split market neither seat of c0
// can improve on its own.
Market seat_gap_market();

// Seven students and colleges c0 (capacity 2), c1 (capacity 1), c2
// (capacity 3). Under college-proposing DAA c2 gets {s1, s3, s5}; it gets
// {s1, s4, s5} by moving s3 and s0 to the end of its list. s0 received an
// offer from c2 but is not in its truthful match, so withholding members
// alone cannot find this.
Market offer_gap_market();

}  // namespace daam::fixtures
