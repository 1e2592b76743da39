// counting.cpp
#include "mono/counting.hpp"

#include <algorithm>
#include <cmath>

namespace mono::counting {

namespace {

constexpr u128 kBruteBudget = 100000000;      // product of constraint sizes
constexpr i64 kSpanCap = i64(1) << 34;        // per-side value range
constexpr i64 kValueCap = i64(1) << 56;       // individual term values

void validate_term(const Term& t) {
    require(t.coeff != 0, "term coefficient must be nonzero");
    require(t.exponent == 1 || t.exponent == 2, "term exponent must be 1 or 2");
    require(t.scale >= 1, "term scale must be positive");
    for (i64 x : t.constraint)
        require(x >= 1, "constraint elements must be positive integers");
}

i64 term_value(const Term& t, i64 x) {
    i128 v = i128(x);
    if (t.exponent == 2) v = v * x;
    v = checked_mul_i128(v, i128(t.coeff) * t.scale);
    if (v > kValueCap || v < -kValueCap)
        throw capacity_error("term value exceeds the engine's 2^56 magnitude cap");
    return static_cast<i64>(v);
}

// Signed contributions of all terms: lhs as-is, rhs negated, so solutions are
// tuples with total zero.
struct SignedTerm {
    const Term* term;
    i64 sign;  // +1 for lhs, -1 for rhs
    std::vector<i64> values;
    i64 min_v = 0, max_v = 0;
};

std::vector<SignedTerm> signed_terms(const CountQuery& q) {
    std::vector<SignedTerm> out;
    for (const Term& t : q.lhs) {
        validate_term(t);
        out.push_back({&t, +1, {}, 0, 0});
    }
    for (const Term& t : q.rhs) {
        validate_term(t);
        out.push_back({&t, -1, {}, 0, 0});
    }
    for (auto& st : out) {
        st.values.reserve(st.term->constraint.size());
        for (i64 x : st.term->constraint) st.values.push_back(st.sign * term_value(*st.term, x));
        std::sort(st.values.begin(), st.values.end());
        if (!st.values.empty()) {
            st.min_v = st.values.front();
            st.max_v = st.values.back();
        }
    }
    return out;
}

}  // namespace

i64 Term::value_of(i64 x) const { return term_value(*this, x); }

u64 count_brute(const CountQuery& q) {
    auto terms = signed_terms(q);
    require(!terms.empty(), "query needs at least one term");
    for (const auto& t : terms)
        if (t.values.empty()) return 0;

    u128 product = 1;
    for (const auto& t : terms) {
        product *= t.values.size();
        if (product > kBruteBudget)
            throw capacity_error("brute-force enumeration budget (10^8 tuples) exceeded");
    }

    // Small sets first; the largest set is resolved by lookup, not iteration.
    std::sort(terms.begin(), terms.end(),
              [](const SignedTerm& a, const SignedTerm& b) { return a.values.size() < b.values.size(); });

    const std::size_t k = terms.size();
    std::vector<i128> suffix_min(k + 1, 0), suffix_max(k + 1, 0);
    for (std::size_t i = k; i-- > 0;) {
        suffix_min[i] = suffix_min[i + 1] + terms[i].min_v;
        suffix_max[i] = suffix_max[i + 1] + terms[i].max_v;
    }

    const auto& last = terms[k - 1].values;
    u64 count = 0;
    auto dfs = [&](auto&& self, std::size_t level, i128 partial) -> void {
        if (partial + suffix_min[level] > 0 || partial + suffix_max[level] < 0) return;
        if (level == k - 1) {
            const i128 need = -partial;
            if (need < last.front() || need > last.back()) return;
            const i64 need64 = static_cast<i64>(need);
            count += std::binary_search(last.begin(), last.end(), need64) ? 1 : 0;
            return;
        }
        for (i64 v : terms[level].values) self(self, level + 1, partial + v);
    };
    if (k == 1) {
        // Single term: solutions are values equal to zero.
        for (i64 v : last)
            if (v == 0) ++count;
        return count;
    }
    dfs(dfs, 0, 0);
    return count;
}

RepresentationSeries representation_series(const Term& t) {
    validate_term(t);
    RepresentationSeries out;
    if (t.constraint.empty()) return out;
    std::vector<i64> values;
    values.reserve(t.constraint.size());
    for (i64 x : t.constraint) values.push_back(term_value(t, x));
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    const i64 span = *mx - *mn;
    if (span >= (i64(1) << 26))
        throw capacity_error("representation series span exceeds 2^26 entries");
    out.offset = *mn;
    out.counts.assign(static_cast<std::size_t>(span) + 1, 0);
    for (i64 v : values) out.counts[static_cast<std::size_t>(v - *mn)]++;
    return out;
}

namespace {

struct SidePlan {
    std::vector<series::Support> parts;
    i128 lo = 0, hi = 0;
    bool has_empty_constraint = false;
};

SidePlan plan_side(const std::vector<Term>& terms) {
    SidePlan plan;
    for (const Term& t : terms) {
        validate_term(t);
        if (t.constraint.empty()) {
            plan.has_empty_constraint = true;
            return plan;
        }
        std::vector<i64> values;
        values.reserve(t.constraint.size());
        for (i64 x : t.constraint) values.push_back(term_value(t, x));
        auto s = series::Support::from_values(std::move(values));
        plan.lo += s.items.front().first;
        plan.hi += s.items.back().first;
        plan.parts.push_back(std::move(s));
    }
    return plan;
}

}  // namespace

u128 count_convolution(const CountQuery& q) {
    require(!q.lhs.empty() || !q.rhs.empty(), "query needs at least one term");
    SidePlan lhs = plan_side(q.lhs);
    SidePlan rhs = plan_side(q.rhs);
    if (lhs.has_empty_constraint || rhs.has_empty_constraint) return 0;

    const i128 wlo = std::max(lhs.lo, rhs.lo);
    const i128 whi = std::min(lhs.hi, rhs.hi);
    if (wlo > whi) return 0;
    // Raw term ranges may span ~|a|N^2; only the window the two sides share
    // is ever materialised, so the capacity bound applies there.
    if (whi - wlo > kSpanCap)
        throw capacity_error("shared value range exceeds the 2^34 cap");
    const i64 lo = static_cast<i64>(wlo);
    const i64 hi = static_cast<i64>(whi);

    series::Dist left = series::aggregate(std::move(lhs.parts), lo, hi);
    if (left.empty()) return 0;
    series::Dist right = series::aggregate(std::move(rhs.parts), lo, hi);
    if (right.empty()) return 0;
    return series::inner_product(left, right, lo, hi);
}

MonochromaticCounts count_monochromatic(const equations::DiagonalEquation& eq,
                                        const colourings::Colouring& c) {
    MonochromaticCounts out;
    out.per_colour.reserve(c.r());
    auto classes = c.all_classes();
    for (u64 j = 0; j < c.r(); ++j) {
        const auto& cls = classes[j];
        if (cls.empty()) {
            out.per_colour.push_back(0);
            continue;
        }
        CountQuery q;
        for (i64 a : eq.quad_coeffs) q.lhs.push_back(Term{a, 2, 1, cls});
        for (i64 b : eq.lin_coeffs) q.rhs.push_back(Term{b, 1, 1, cls});
        out.per_colour.push_back(count_convolution(q));
    }
    out.argmax_colour = 1;
    out.max_count = out.per_colour.empty() ? 0 : out.per_colour[0];
    for (std::size_t j = 1; j < out.per_colour.size(); ++j) {
        if (out.per_colour[j] > out.max_count) {
            out.max_count = out.per_colour[j];
            out.argmax_colour = j + 1;
        }
    }
    return out;
}

PowerFit fit_power_law(const std::vector<std::pair<double, double>>& xy) {
    std::vector<std::pair<double, double>> logs;
    for (const auto& [x, y] : xy) {
        if (y <= 0) continue;  // zero counts carry no slope information
        logs.push_back({std::log(x), std::log(y)});
    }
    if (logs.size() < 3) throw fit_error("fewer than 3 nonzero points for the log-log fit");

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [lx, ly] : logs) {
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(logs.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0) throw fit_error("degenerate x-grid for the log-log fit");

    PowerFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    fit.points_used = logs.size();
    fit.residuals.reserve(logs.size());
    for (const auto& [lx, ly] : logs)
        fit.residuals.push_back(ly - (fit.intercept + fit.slope * lx));
    return fit;
}

}  // namespace mono::counting
