// search.hpp -- monochromatic {x, y, x+y, xy} configurations and their
// conversion into exact solutions of x1^2 - x2^2 = y^2 + z, plus the
// substitution identity that turns product configurations into solutions of
// general zero-sum quadratic equations.
#pragma once

#include <vector>

#include "mono/colouring.hpp"
#include "mono/common.hpp"

namespace mono::search {

struct HindmanConfig {
    i64 x, y;      // x <= y
    i64 sum;       // x + y
    i64 product;   // x * y
    bool degenerate;  // x == y or x + y == x * y
};

// All monochromatic {x, y, x+y, xy} with x <= y <= limit and all four values
// inside the colouring's domain, sorted by (x, y).
std::vector<HindmanConfig> hindman_search(const colourings::Colouring& c, i64 limit);

struct BadCaseSolution {
    i64 x1, x2, y, z;  // x1^2 - x2^2 = y^2 + z
};

// ((x+y)/2, x/2, y/2, xy/2); requires all four configuration values even and
// verifies the identity exactly.
BadCaseSolution config_to_bad_solution(const HindmanConfig& cfg);

struct MoreiraCheck {
    bool holds;               // the substituted tuple solves the equation
    i64 a_scaled;             // 2 * sum a_i u_i after the sign adjustment
    i64 b_sum;                // sum of linear coefficients
    std::vector<i64> u_used;  // u after the sign adjustment
    std::vector<i128> xs, ys; // substituted solution
};

// Verifies that x_i := b(x + u_i y)/a and y_j := b(xy + v_j z)/a solve
// sum a_i x_i^2 = sum b_j y_j, given sum a_i u_i^2 = 0, sum a_i = 0 and
// sum b_j v_j = 0.  Divisibility failures raise usage_error naming the value.
MoreiraCheck moreira_identity_check(const std::vector<i64>& u, const std::vector<i64>& v,
                                    const std::vector<i64>& a_coeffs,
                                    const std::vector<i64>& b_coeffs, i64 x, i64 y, i64 z);

}  // namespace mono::search
