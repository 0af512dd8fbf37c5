#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "hitmat/zero_one_matrix.hpp"

namespace hitmat {

using bigint = boost::multiprecision::cpp_int;
using rational = boost::multiprecision::cpp_rational;

/* Fraction-free elimination over the integers (Bareiss).  Every division in
 * the update step is exact, entries stay integral, and the result is the
 * rank/determinant over the rationals with certainty.  Used as the slow
 * certification route against the modular kernels; it shares no code with
 * them.  Cubic in n with big-integer entries, so callers gate it to small n. */
int bareiss_rank(const ZeroOneMatrix& m);
bigint bareiss_determinant(const ZeroOneMatrix& m);

}  // namespace hitmat
