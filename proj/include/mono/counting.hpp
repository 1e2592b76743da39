// counting.hpp -- exact solution counting for diagonal equations with each
// variable constrained to its own finite set.
//
// Two independent routes compute the same number: pruned brute-force
// enumeration (the oracle) and inner products of convolved representation
// series (the fast path).  All results are exact integers.
#pragma once

#include <vector>

#include "mono/colouring.hpp"
#include "mono/common.hpp"
#include "mono/equations.hpp"
#include "mono/series.hpp"

namespace mono::counting {

struct Term {
    i64 coeff;                    // nonzero
    int exponent;                 // 1 or 2
    i64 scale = 1;                // positive multiplier applied to the whole term
    std::vector<i64> constraint;  // finite set of positive integers

    // Value contributed by x: scale * coeff * x^exponent.
    i64 value_of(i64 x) const;
};

struct CountQuery {
    std::vector<Term> lhs, rhs;
};

// Dense counts of m -> #{x in constraint : scale*coeff*x^exponent = m}.
struct RepresentationSeries {
    i64 offset = 0;  // lowest represented value
    std::vector<u64> counts;
};

// Exact count of tuples with lhs sum = rhs sum by pruned enumeration.
// Requires the product of constraint-set sizes to be at most 10^8.
u64 count_brute(const CountQuery& q);

RepresentationSeries representation_series(const Term& t);

// Exact count via convolution of representation series; provably equal to
// count_brute.  Requires each side's value range to span at most 2^34.
u128 count_convolution(const CountQuery& q);

struct MonochromaticCounts {
    std::vector<u128> per_colour;  // entry j-1: all variables in colour class j
    std::size_t argmax_colour;     // 1-based; lowest index on ties
    u128 max_count;
};

MonochromaticCounts count_monochromatic(const equations::DiagonalEquation& eq,
                                        const colourings::Colouring& c);

// Least-squares fit of log y against log x; zero counts are excluded and a
// fit with fewer than 3 surviving points raises fit_error.
struct PowerFit {
    double slope = 0;
    double intercept = 0;
    std::vector<double> residuals;
    std::size_t points_used = 0;
};

PowerFit fit_power_law(const std::vector<std::pair<double, double>>& xy);

}  // namespace mono::counting
