// equations.cpp -- partition-regularity classifier.
#include "mono/equations.hpp"

#include <algorithm>

namespace mono::equations {

namespace {

constexpr std::size_t kSubsetSearchCap = 30;

void check_coeffs(const std::vector<i64>& v, const char* side) {
    for (i64 c : v)
        require(c != 0, std::string("zero coefficient on ") + side + " side");
}

}  // namespace

DiagonalEquation::DiagonalEquation(std::vector<i64> quad, std::vector<i64> lin)
    : quad_coeffs(std::move(quad)), lin_coeffs(std::move(lin)) {
    require(!quad_coeffs.empty() || !lin_coeffs.empty(), "equation needs at least one term");
    check_coeffs(quad_coeffs, "quadratic");
    check_coeffs(lin_coeffs, "linear");
}

DiagonalEquation DiagonalEquation::normalized() const {
    i64 g = 0;
    for (i64 c : quad_coeffs) g = gcd_i64(g, c);
    for (i64 c : lin_coeffs) g = gcd_i64(g, c);
    DiagonalEquation out = *this;
    for (i64& c : out.quad_coeffs) c /= g;
    for (i64& c : out.lin_coeffs) c /= g;
    return out;
}

const char* to_string(Regularity r) {
    switch (r) {
        case Regularity::Regular: return "Regular";
        case Regularity::NotRegular: return "NotRegular";
        case Regularity::ConjecturallyRegular: return "ConjecturallyRegular";
        case Regularity::OpenTheory: return "OpenTheory";
    }
    return "?";
}

std::optional<std::vector<std::size_t>> subset_sum_zero(const std::vector<i64>& coeffs) {
    const std::size_t n = coeffs.size();
    require(n >= 1, "subset_sum_zero: empty list");
    check_coeffs(coeffs, "given");
    if (n > kSubsetSearchCap)
        throw capacity_error("subset_sum_zero: more than 30 coefficients");

    // Suffix bounds let us abandon branches whose remaining coefficients
    // cannot bring the partial sum back to zero.
    std::vector<i128> suffix_min(n + 1, 0), suffix_max(n + 1, 0);
    for (std::size_t i = n; i-- > 0;) {
        i128 c = coeffs[i];
        suffix_min[i] = suffix_min[i + 1] + (c < 0 ? c : 0);
        suffix_max[i] = suffix_max[i + 1] + (c > 0 ? c : 0);
    }

    // Depth-first with include-before-skip visits index subsets in
    // lexicographic order, so the first zero-sum subset found is the answer.
    std::vector<std::size_t> chosen;
    std::optional<std::vector<std::size_t>> found;
    auto dfs = [&](auto&& self, std::size_t i, i128 sum) -> bool {
        if (!chosen.empty() && sum == 0) {
            found = chosen;
            return true;
        }
        if (i == n) return false;
        if (sum + suffix_min[i] > 0 || sum + suffix_max[i] < 0) return false;
        chosen.push_back(i + 1);
        if (self(self, i + 1, sum + coeffs[i])) return true;
        chosen.pop_back();
        return self(self, i + 1, sum);
    };
    dfs(dfs, 0, 0);
    return found;
}

bool is_bad_case(const DiagonalEquation& eq) {
    if (eq.s() != 3 || eq.t() != 1) return false;
    const auto& a = eq.quad_coeffs;
    return a[0] + a[1] == 0 || a[0] + a[2] == 0 || a[1] + a[2] == 0;
}

RegularityVerdict classify(const DiagonalEquation& eq) {
    auto quad_zero = eq.s() > 0 ? subset_sum_zero(eq.quad_coeffs) : std::nullopt;
    auto lin_zero = eq.t() > 0 ? subset_sum_zero(eq.lin_coeffs) : std::nullopt;

    auto witness_of = [&]() -> std::optional<Witness> {
        if (quad_zero) return Witness{WitnessSide::Quadratic, *quad_zero};
        if (lin_zero) return Witness{WitnessSide::Linear, *lin_zero};
        return std::nullopt;
    };

    if (eq.s() == 0) {
        // Pure linear equation: Rado's criterion is exact.
        if (lin_zero)
            return {Regularity::Regular, Witness{WitnessSide::Linear, *lin_zero}, "rado"};
        return {Regularity::NotRegular, std::nullopt, "rado"};
    }

    if (eq.t() == 0) {
        // Pure quadratic equation: the zero-sum criterion decides for s >= 5;
        // fewer square variables is open theory.
        if (!quad_zero)
            return {Regularity::NotRegular, std::nullopt, "clp-necessary"};
        if (eq.s() >= 5)
            return {Regularity::Regular, Witness{WitnessSide::Quadratic, *quad_zero},
                    "quadric-counting"};
        return {Regularity::OpenTheory, Witness{WitnessSide::Quadratic, *quad_zero},
                "open-squares-few-variables"};
    }

    if (!quad_zero && !lin_zero)
        return {Regularity::NotRegular, std::nullopt, "dinasso-luperi-baglini"};
    if (is_bad_case(eq))
        return {Regularity::ConjecturallyRegular, witness_of(), "bad-case-conjecture"};
    return {Regularity::Regular, witness_of(), "linear-quadratic-criteria"};
}

}  // namespace mono::equations
