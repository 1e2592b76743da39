// series.hpp -- exact integer value-distributions and their convolution.
//
// A Dist is the value distribution of a finite weighted multiset of integers,
// stored densely over the arithmetic progression offset + stride*i.  Keeping
// the stride explicit is what makes quadratic terms with a common scale W
// affordable: their supports live in W*Z, so arrays shrink by a factor W.
//
// Convolution is exact over the integers.  The backend is a number-theoretic
// transform modulo two 62-bit primes with Chinese-remainder reconstruction
// (one prime suffices when an a-priori value bound allows it), schoolbook
// below a small length threshold, direct scatter for sparse supports, and an
// overlap-add blocked transform when only a narrow output window is needed --
// the windowed path is what keeps memory bounded when term value ranges are
// quadratically large but the equation forces near-cancellation.
#pragma once

#include <utility>
#include <vector>

#include "mono/common.hpp"

namespace mono::series {

struct Dist {
    i64 offset = 0;  // value represented by counts[0]
    i64 stride = 1;  // >= 1
    std::vector<u64> counts;

    bool empty() const { return counts.empty(); }
    std::size_t size() const { return counts.size(); }
    i64 min_value() const { return offset; }
    i64 max_value() const { return offset + stride * static_cast<i64>(counts.size() - 1); }
    u128 mass() const;
    u64 max_count() const;
};

// One summand of a side: sorted (value, weight) support.  Weights are 1 for
// plain constraint sets and arbitrary positive for weighted sequences.
struct Support {
    std::vector<std::pair<i64, u64>> items;  // ascending values, distinct

    static Support from_values(std::vector<i64> values);                 // weight 1 each
    static Support from_weighted(std::vector<std::pair<i64, u64>> items);
};

// Value distribution of the sum of all supports, restricted to the window
// [window_lo, window_hi].  Restriction is exact: values outside the window
// are dropped only when no completion by the remaining summands can re-enter
// it.  An empty Dist means no attainable value lies in the window.
Dist aggregate(std::vector<Support> parts, i64 window_lo, i64 window_hi);

// Sum over v in [window_lo, window_hi] of a(v)*b(v), respecting both
// progressions.
u128 inner_product(const Dist& a, const Dist& b, i64 window_lo, i64 window_hi);

// Full convolution of two dense distributions (used directly by tests and by
// moments that need a whole distribution, e.g. L2 masses of convolved
// majorants).
Dist convolve(const Dist& a, const Dist& b);

// Dist of a single support list (dense over its own span).
Dist densify(const Support& s);

}  // namespace mono::series
