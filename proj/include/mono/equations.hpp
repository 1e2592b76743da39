// equations.hpp -- diagonal linear-quadratic Diophantine equations and their
// partition-regularity classification.
//
// An equation is  a_1 x_1^2 + ... + a_s x_s^2 = b_1 y_1 + ... + b_t y_t  with
// all coefficients nonzero.  The classifier decides partition regularity from
// zero-sum coefficient subsets, with one conjectural shape (s = 3, t = 1 and a
// cancelling pair of quadratic coefficients) reported separately, and the pure
// quadratic case left open below five variables.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mono/common.hpp"

namespace mono::equations {

struct DiagonalEquation {
    std::vector<i64> quad_coeffs;  // a_1..a_s
    std::vector<i64> lin_coeffs;   // b_1..b_t

    DiagonalEquation(std::vector<i64> quad, std::vector<i64> lin);

    std::size_t s() const { return quad_coeffs.size(); }
    std::size_t t() const { return lin_coeffs.size(); }

    // Divides every coefficient by the gcd of all of them.  Verdicts are
    // gcd-invariant, so this is a user-visible utility, never applied
    // implicitly.
    DiagonalEquation normalized() const;
};

enum class Regularity { Regular, NotRegular, ConjecturallyRegular, OpenTheory };

enum class WitnessSide { Quadratic, Linear };

struct Witness {
    WitnessSide side;
    std::vector<std::size_t> indices;  // 1-based, ascending
};

struct RegularityVerdict {
    Regularity status;
    std::optional<Witness> witness;
    std::string justification;  // citation tag for the theorem applied
};

const char* to_string(Regularity r);

// Lexicographically least nonempty index subset (1-based) with zero sum, or
// nullopt.  Exhaustive search; lists longer than 30 raise capacity_error.
std::optional<std::vector<std::size_t>> subset_sum_zero(const std::vector<i64>& coeffs);

// The one conjectural shape: s = 3, t = 1, with a_i + a_j = 0 for some pair.
bool is_bad_case(const DiagonalEquation& eq);

RegularityVerdict classify(const DiagonalEquation& eq);

}  // namespace mono::equations
