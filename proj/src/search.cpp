// search.cpp
#include "mono/search.hpp"

#include <algorithm>

namespace mono::search {

std::vector<HindmanConfig> hindman_search(const colourings::Colouring& c, i64 limit) {
    require(limit >= 1, "hindman_search: limit must be positive");
    require(limit <= c.n(), "hindman_search: limit exceeds the colouring domain");
    const i64 n = c.n();
    std::vector<HindmanConfig> out;
    for (i64 x = 1; x <= limit; ++x) {
        if (x * x > n) break;  // xy >= x^2 already out of range
        const std::uint32_t colour = c.colour(x);
        const i64 y_max = std::min(limit, n / x);
        for (i64 y = x; y <= y_max; ++y) {
            if (x + y > n) break;
            if (c.colour(y) != colour) continue;
            if (c.colour(x + y) != colour) continue;
            if (c.colour(x * y) != colour) continue;
            out.push_back({x, y, x + y, x * y, x == y || x + y == x * y});
        }
    }
    return out;  // loops emit in (x, y) order already
}

BadCaseSolution config_to_bad_solution(const HindmanConfig& cfg) {
    require(cfg.x % 2 == 0 && cfg.y % 2 == 0 && cfg.sum % 2 == 0 && cfg.product % 2 == 0,
            "config_to_bad_solution: all four configuration values must be even");
    BadCaseSolution s{cfg.sum / 2, cfg.x / 2, cfg.y / 2, cfg.product / 2};
    const i128 lhs = i128(s.x1) * s.x1 - i128(s.x2) * s.x2;
    const i128 rhs = i128(s.y) * s.y + s.z;
    if (lhs != rhs) throw internal_error("bad-case lifting identity failed");
    return s;
}

MoreiraCheck moreira_identity_check(const std::vector<i64>& u, const std::vector<i64>& v,
                                    const std::vector<i64>& a_coeffs,
                                    const std::vector<i64>& b_coeffs, i64 x, i64 y, i64 z) {
    require(u.size() == a_coeffs.size(), "u must match the quadratic coefficients");
    require(v.size() == b_coeffs.size(), "v must match the linear coefficients");
    require(!a_coeffs.empty() && !b_coeffs.empty(), "need quadratic and linear coefficients");

    i128 quad_sum = 0, quad_u2 = 0;
    for (std::size_t i = 0; i < a_coeffs.size(); ++i) {
        require(a_coeffs[i] != 0, "zero quadratic coefficient");
        quad_sum += a_coeffs[i];
        quad_u2 += i128(a_coeffs[i]) * u[i] * u[i];
    }
    require(quad_sum == 0, "quadratic coefficients must sum to zero");
    require(quad_u2 == 0, "u must satisfy sum a_i u_i^2 = 0");

    i128 lin_v = 0;
    for (std::size_t j = 0; j < b_coeffs.size(); ++j) {
        require(b_coeffs[j] != 0, "zero linear coefficient");
        lin_v += i128(b_coeffs[j]) * v[j];
    }
    require(lin_v == 0, "v must satisfy sum b_j v_j = 0");

    // a := 2 sum a_i u_i, made positive: flip all u_i if negative; if zero,
    // flip the first nonzero u_i (which makes the sum nonzero) and repeat.
    std::vector<i64> uu = u;
    auto weighted_sum = [&] {
        i128 s = 0;
        for (std::size_t i = 0; i < uu.size(); ++i) s += i128(a_coeffs[i]) * uu[i];
        return s;
    };
    i128 au = weighted_sum();
    if (au == 0) {
        bool flipped = false;
        for (std::size_t i = 0; i < uu.size(); ++i) {
            if (uu[i] != 0) {
                uu[i] = -uu[i];
                flipped = true;
                break;
            }
        }
        require(flipped, "u must not be identically zero");
        au = weighted_sum();
    }
    if (au < 0) {
        for (i64& ui : uu) ui = -ui;
        au = -au;
    }
    const i128 a2 = 2 * au;
    require(a2 <= (i128(1) << 62), "scaled coefficient a overflows");

    MoreiraCheck out;
    out.a_scaled = static_cast<i64>(a2);
    out.u_used = uu;
    i128 bsum = 0;
    for (i64 b : b_coeffs) bsum += b;
    require(bsum >= -(i128(1) << 62) && bsum <= (i128(1) << 62), "b sum overflows");
    out.b_sum = static_cast<i64>(bsum);

    auto check_div = [&](i128 value, const char* what) {
        if (value % a2 != 0)
            throw usage_error(std::string("divisibility failure: a = ") +
                              std::to_string(out.a_scaled) + " does not divide " + what + " = " +
                              to_string_i128(value));
    };

    check_div(y, "y");
    check_div(x, "x");
    check_div(i128(x) + y, "x+y");
    for (std::size_t i = 0; i < uu.size(); ++i)
        check_div(i128(x) + i128(uu[i]) * y, "x+u_i*y");
    check_div(i128(x) * y, "x*y");
    for (std::size_t j = 0; j < v.size(); ++j)
        check_div(i128(x) * y + i128(v[j]) * z, "x*y+v_j*z");

    for (std::size_t i = 0; i < uu.size(); ++i)
        out.xs.push_back(i128(out.b_sum) * ((i128(x) + i128(uu[i]) * y) / a2));
    for (std::size_t j = 0; j < v.size(); ++j)
        out.ys.push_back(i128(out.b_sum) * ((i128(x) * y + i128(v[j]) * z) / a2));

    i128 lhs = 0, rhs = 0;
    for (std::size_t i = 0; i < out.xs.size(); ++i)
        lhs += i128(a_coeffs[i]) * checked_mul_i128(out.xs[i], out.xs[i]);
    for (std::size_t j = 0; j < out.ys.size(); ++j) rhs += i128(b_coeffs[j]) * out.ys[j];
    out.holds = lhs == rhs;
    return out;
}

}  // namespace mono::search
