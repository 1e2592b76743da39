// harmonic.cpp
//
// Numerical notes.  Complex sums use pairwise (tree) reduction, so results are
// bit-stable across worker schedules and the rounding error is O(log n) ulps.
// Grid evaluations at alpha = k/M reduce k*position mod M in integers first,
// so grid phases are exact even for quadratically large positions.  Phase
// accumulation in the Bohr-set scan is incremental, keeping the rounding drift
// linear in the number of steps rather than in x^2.
#include "mono/harmonic.hpp"

#include <algorithm>
#include <cmath>

namespace mono::harmonic {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

std::vector<cd> phase_table(std::size_t m) {
    std::vector<cd> t(m);
    for (std::size_t j = 0; j < m; ++j) {
        double ang = kTwoPi * double(j) / double(m);
        t[j] = {std::cos(ang), std::sin(ang)};
    }
    return t;
}

// Mean over r in [q] of table[(a r^2 + b r) mod q] using integer stepping:
// f(r+1) - f(r) = a(2r+1) + b.
cd quadratic_mean_with_table(i64 q, i64 a, i64 b, const std::vector<cd>& table,
                             std::vector<cd>& buf) {
    a = ((a % q) + q) % q;
    b = ((b % q) + q) % q;
    buf.resize(static_cast<std::size_t>(q));
    i64 cur = 0;                 // f(0) = 0
    i64 dv = (a + b) % q;        // f(1) - f(0)
    const i64 ddv = (2 * a) % q;
    for (i64 r = 1; r <= q; ++r) {
        cur += dv;
        if (cur >= q) cur -= q;
        dv += ddv;
        if (dv >= q) dv -= q;
        buf[static_cast<std::size_t>(r - 1)] = table[static_cast<std::size_t>(cur)];
    }
    return pairwise_sum(buf) / double(q);
}

i64 quad_value(i64 scale, i64 x) {
    i128 v = checked_mul_i128(i128(x) * x, scale);
    if (v > (i128(1) << 56)) throw capacity_error("quadratic value exceeds 2^56");
    return static_cast<i64>(v);
}

}  // namespace

cd gauss_sum(i64 q, i64 a, i64 b) {
    require(q >= 1, "gauss_sum: q must be positive");
    if (q > 1000000) throw capacity_error("gauss_sum: q above 10^6");
    auto table = phase_table(static_cast<std::size_t>(q));
    std::vector<cd> buf;
    return quadratic_mean_with_table(q, a, b, table, buf);
}

cd w_gauss_mean(i64 w_param, i64 xi, i64 a, i64 q) {
    require(w_param >= 2 && w_param % 2 == 0, "w_gauss_mean: W must be even and positive");
    require(xi >= 1 && xi <= w_param && gcd_i64(xi, w_param) == 1,
            "w_gauss_mean: xi must lie in [W] and be coprime to W");
    require(q >= 1, "w_gauss_mean: q must be positive");
    require(gcd_i64(a, q) == 1, "w_gauss_mean: hcf(a, q) = 1 required");
    if (q > 1000000) throw capacity_error("w_gauss_mean: q above 10^6");
    // phase (a * (W/2 r^2 + xi r)) / q = (a*W/2) r^2 / q + (a*xi) r / q
    auto table = phase_table(static_cast<std::size_t>(q));
    std::vector<cd> buf;
    const i64 aa = static_cast<i64>((i128(a % q) * ((w_param / 2) % q)) % q);
    const i64 bb = static_cast<i64>((i128(a % q) * (xi % q)) % q);
    return quadratic_mean_with_table(q, aa, bb, table, buf);
}

Majorant build_majorant(i64 range_n, i64 w_param, i64 xi) {
    require(range_n >= 1, "majorant: N must be positive");
    require(w_param >= 2 && w_param % 2 == 0, "majorant: W must be even and positive");
    require(xi >= 1 && xi <= w_param && gcd_i64(xi, w_param) == 1,
            "majorant: xi must lie in [W] and be coprime to W");
    Majorant nu;
    nu.n = range_n;
    nu.w_param = w_param;
    nu.xi = xi;
    const i64 half_w = w_param / 2;
    for (i64 x = 1;; ++x) {
        const i128 pos = i128(half_w) * x * x + i128(xi) * x;
        if (pos > range_n) break;
        const i64 weight = w_param * x + xi;
        nu.support.push_back({static_cast<i64>(pos), weight});
        nu.l1 = checked_add_u128(nu.l1, static_cast<u64>(weight));
    }
    return nu;
}

ExpSumGrid make_grid(std::vector<cd> values, double l1_bound, i64 max_freq) {
    for (const cd& v : values) {
        if (std::abs(v) > l1_bound * (1.0 + 1e-9) + 1e-9)
            throw internal_error("exponential-sum grid violates the triangle-inequality bound");
    }
    ExpSumGrid g;
    g.values = std::move(values);
    g.l1_bound = l1_bound;
    g.max_freq = max_freq;
    return g;
}

cd majorant_transform(const Majorant& nu, double alpha) {
    std::vector<cd> buf;
    buf.reserve(nu.support.size());
    for (const auto& [pos, w] : nu.support)
        buf.push_back(double(w) * unit_phase(alpha * double(pos)));
    return pairwise_sum(buf);
}

namespace {

// Direct grid evaluation with exact integer phase folding.
std::vector<cd> grid_direct(const std::vector<std::pair<i64, u64>>& support,
                            std::size_t grid_size) {
    auto table = phase_table(grid_size);
    std::vector<cd> out(grid_size);
    parallel_for(grid_size, [&](std::size_t k) {
        std::vector<cd> buf;
        buf.reserve(support.size());
        for (const auto& [pos, w] : support) {
            const u64 idx = static_cast<u64>((u128(k) * static_cast<u64>(pos)) % grid_size);
            buf.push_back(double(w) * table[static_cast<std::size_t>(idx)]);
        }
        out[k] = pairwise_sum(buf);
    });
    return out;
}

void fft_inplace(std::vector<cd>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = kTwoPi / double(len);  // e(+1/len): synthesis direction
        const cd wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cd w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cd u = a[i + k];
                const cd v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

ExpSumGrid majorant_fourier(const Majorant& nu, std::size_t grid_size) {
    require(grid_size >= 1, "majorant_fourier: empty grid");
    std::vector<std::pair<i64, u64>> support;
    support.reserve(nu.support.size());
    i64 max_freq = 0;
    for (const auto& [pos, w] : nu.support) {
        support.push_back({pos, static_cast<u64>(w)});
        max_freq = std::max(max_freq, pos);
    }
    return make_grid(grid_direct(support, grid_size), double(nu.l1), max_freq);
}

cd box_transform(i64 n, double alpha) {
    const double dist = torus_norm(alpha);
    if (dist * double(n) < 1e-12) return {double(n), 0.0};
    // sum_{m=1..n} e(m a) = e((n+1)a/2) sin(pi n a) / sin(pi a)
    const double s = std::sin(M_PI * double(n) * alpha) / std::sin(M_PI * alpha);
    return s * unit_phase(alpha * double(n + 1) / 2.0);
}

cd major_arc_approx(const Majorant& nu, i64 a, i64 q, double alpha) {
    require(q >= 1, "major_arc_approx: q must be positive");
    require(gcd_i64(a, q) == 1, "major_arc_approx: hcf(a, q) = 1 required");
    auto table = phase_table(static_cast<std::size_t>(q));
    std::vector<cd> buf;
    const i64 aa = static_cast<i64>((i128(((a % q) + q) % q) * ((nu.w_param / 2) % q)) % q);
    const i64 bb = static_cast<i64>((i128(((a % q) + q) % q) * (nu.xi % q)) % q);
    const cd local = quadratic_mean_with_table(q, aa, bb, table, buf);

    const double beta = alpha - double(a) / double(q);
    cd integral;
    if (std::abs(beta) * double(nu.n) < 1e-12) {
        integral = {double(nu.n), 0.0};
    } else {
        const cd i2pi(0.0, kTwoPi * beta);
        integral = (unit_phase(beta * double(nu.n)) - cd(1.0, 0.0)) / i2pi;
    }
    return local * integral;
}

namespace {

series::Support sequence_support(const WeightedSequence& f, i64 sign) {
    require(f.exponent == 1 || f.exponent == 2, "sequence exponent must be 1 or 2");
    require(f.scale >= 1, "sequence scale must be positive");
    std::vector<std::pair<i64, u64>> items;
    items.reserve(f.weights.size());
    for (const auto& [x, w] : f.weights) {
        require(x >= 1, "sequence positions must be positive");
        if (w == 0) continue;
        const i64 v = f.exponent == 2 ? quad_value(f.scale, x)
                                      : static_cast<i64>(checked_mul_i128(i128(f.scale), x));
        items.push_back({sign * v, w});
    }
    return series::Support::from_weighted(std::move(items));
}

u128 even_moment_of_parts(std::vector<series::Support> lhs_parts,
                          std::vector<series::Support> rhs_parts) {
    i128 llo = 0, lhi = 0, rlo = 0, rhi = 0;
    for (const auto& p : lhs_parts) {
        if (p.items.empty()) return 0;
        llo += p.items.front().first;
        lhi += p.items.back().first;
    }
    for (const auto& p : rhs_parts) {
        if (p.items.empty()) return 0;
        rlo += p.items.front().first;
        rhi += p.items.back().first;
    }
    const i128 wlo = std::max(llo, rlo);
    const i128 whi = std::min(lhi, rhi);
    if (wlo > whi) return 0;
    const i64 lo = static_cast<i64>(wlo);
    const i64 hi = static_cast<i64>(whi);
    series::Dist left = series::aggregate(std::move(lhs_parts), lo, hi);
    if (left.empty()) return 0;
    series::Dist right = series::aggregate(std::move(rhs_parts), lo, hi);
    if (right.empty()) return 0;
    return series::inner_product(left, right, lo, hi);
}

}  // namespace

u128 lp_moment_even(const WeightedSequence& f, int p) {
    require(p == 2 || p == 4 || p == 6 || p == 8, "even moment: p must be 2, 4, 6 or 8");
    const int half = p / 2;
    std::vector<series::Support> lhs, rhs;
    for (int i = 0; i < half; ++i) {
        lhs.push_back(sequence_support(f, +1));
        rhs.push_back(sequence_support(f, +1));
    }
    return even_moment_of_parts(std::move(lhs), std::move(rhs));
}

u128 mixed_moment_quad_lin(i64 n, i64 w_param, int p) {
    require(p == 2 || p == 4 || p == 6 || p == 8, "mixed moment: p must be 2, 4, 6 or 8");
    require(n >= 4, "mixed moment: need n >= 4");
    require(w_param >= 1, "mixed moment: W must be positive");
    const int half = p / 2;

    WeightedSequence quad, lin;
    quad.exponent = 2;
    quad.scale = w_param;
    lin.exponent = 1;
    lin.scale = 1;
    for (i64 x = n / 2 + 1; x <= n; ++x) {
        quad.weights.push_back({x, 1});
        lin.weights.push_back({x, 1});
    }

    // |F G|^p counts solutions of
    //   sum_i (W x_i^2 + y_i) = sum_i (W x_i'^2 + y_i'),   i = 1..p/2,
    // rebalanced so all quadratic terms sit on one side: the window then has
    // linear width and the quadratic side convolves on a stride-W progression.
    std::vector<series::Support> lhs, rhs;
    for (int i = 0; i < half; ++i) {
        lhs.push_back(sequence_support(quad, +1));
        lhs.push_back(sequence_support(quad, -1));
        rhs.push_back(sequence_support(lin, +1));
        rhs.push_back(sequence_support(lin, -1));
    }
    return even_moment_of_parts(std::move(lhs), std::move(rhs));
}

ExpSumGrid sequence_fourier(const WeightedSequence& f, std::size_t grid_size) {
    require(grid_size >= 1, "sequence_fourier: empty grid");
    auto support = sequence_support(f, +1).items;
    i64 max_freq = 0;
    double l1 = 0;
    for (const auto& [pos, w] : support) {
        max_freq = std::max(max_freq, pos < 0 ? -pos : pos);
        l1 += double(w);
    }

    if (!is_pow2(grid_size) || support.size() * grid_size <= (std::size_t(1) << 22))
        return make_grid(grid_direct(support, grid_size), l1, max_freq);

    // Dense input on a power-of-two grid: fold positions mod M and transform.
    std::vector<cd> folded(grid_size, cd(0.0, 0.0));
    for (const auto& [pos, w] : support)
        folded[static_cast<std::size_t>(((pos % i64(grid_size)) + i64(grid_size)) %
                                        i64(grid_size))] += double(w);
    fft_inplace(folded);
    return make_grid(std::move(folded), l1, max_freq);
}

double lp_norm_quadrature(const ExpSumGrid& g, double p) {
    require(p > 0, "quadrature: p must be positive");
    if (g.max_freq > 0)
        require(g.size() >= 8 * static_cast<std::size_t>(g.max_freq),
                "quadrature: grid must oversample the polynomial by 8x");
    double sum = 0;
    for (const cd& v : g.values) sum += std::pow(std::abs(v), p);
    return sum / double(g.size());
}

RationalApprox rational_approx(double alpha, i64 max_q) {
    require(max_q >= 1, "rational_approx: Q must be positive");
    double frac = alpha - std::floor(alpha);

    RationalApprox best;
    auto consider = [&](i64 num, i64 den) {
        if (den < 1 || den > max_q) return;
        const i64 g = gcd_i64(num == 0 ? den : num, den);
        num /= g;
        den /= g;
        const double err = std::abs(frac - double(num) / double(den));
        if (err < best.err || (err == best.err && den < best.denominator)) {
            best = {num, den, err};
        }
    };
    best = {0, 1, std::abs(frac)};

    // Continued-fraction convergents plus the final fan of semiconvergents.
    i64 p_prev = 1, q_prev = 0;  // p_{-1}/q_{-1}
    i64 p_cur = 0, q_cur = 1;    // p_0/q_0 with a_0 = 0 on [0,1)
    double x = frac;
    for (int iter = 0; iter < 64; ++iter) {
        consider(p_cur, q_cur);
        const double fx = x - std::floor(x);
        if (fx < 1e-15) break;
        x = 1.0 / fx;
        if (x > 4e18) break;
        const i64 a = static_cast<i64>(std::floor(x));
        const i128 q_next = i128(a) * q_cur + q_prev;
        if (q_next > max_q) {
            // largest semiconvergent still within the cap
            const i64 j = (max_q - q_prev) / q_cur;
            if (j >= 1) consider(j * p_cur + p_prev, j * q_cur + q_prev);
            break;
        }
        const i64 p_next = a * p_cur + p_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = static_cast<i64>(q_next);
    }
    best.err = std::min(best.err, 1.0 - best.err);  // torus distance
    return best;
}

i64 divisor_partial(i64 n, i64 q_cap) {
    require(q_cap >= 1, "divisor_partial: Q must be positive");
    if (n < 0) n = -n;
    if (n == 0) return q_cap;
    i64 count = 0;
    for (i64 d = 1; d * d <= n; ++d) {
        if (n % d != 0) continue;
        if (d <= q_cap) ++count;
        const i64 e = n / d;
        if (e != d && e <= q_cap) ++count;
    }
    return count;
}

u128 divisor_moment(i64 x_cap, i64 q_cap, int b_exp) {
    require(x_cap >= 0 && q_cap >= 1 && b_exp >= 1, "divisor_moment: bad parameters");
    if (i128(x_cap) * q_cap > 1000000000)
        throw capacity_error("divisor_moment: X*Q beyond the 10^9 enumeration budget");
    std::vector<std::uint32_t> d(static_cast<std::size_t>(x_cap) + 1, 0);
    for (i64 q = 1; q <= q_cap; ++q)
        for (i64 m = 0; m <= x_cap; m += q) d[static_cast<std::size_t>(m)]++;

    auto powb = [&](u64 base) {
        u128 r = 1;
        for (int i = 0; i < b_exp; ++i) r = checked_mul_u128(r, base);
        return r;
    };
    u128 total = powb(d[0]);  // n = 0: every q divides 0
    for (i64 m = 1; m <= x_cap; ++m)
        total = checked_add_u128(total, checked_mul_u128(2, powb(d[static_cast<std::size_t>(m)])));
    return total;
}

double fejer_kernel(i64 n, double alpha) {
    require(n >= 1, "fejer_kernel: N must be positive");
    const double dist = torus_norm(alpha);
    if (dist * double(n) < 1e-12) return double(n);
    const double s = std::sin(M_PI * double(n) * alpha) / std::sin(M_PI * alpha);
    return s * s / double(n);
}

std::vector<i64> quadratic_bohr_set(i64 n, const std::vector<double>& theta,
                                    const std::vector<double>& beta, double eta, i64 c,
                                    i64 w_param) {
    require(n >= 1, "bohr set: N must be positive");
    if (n > 10000000) throw capacity_error("bohr set: N above 10^7 scan budget");
    require(theta.size() <= 4, "bohr set: at most 4 quadratic frequencies");
    require(beta.size() <= 4, "bohr set: at most 4 linear frequencies");
    require(eta > 0, "bohr set: eta must be positive");
    require(c >= 1 && w_param >= 1, "bohr set: c and W must be positive");

    // x = c*k scans multiples of c; phases advance incrementally so rounding
    // drift stays linear in the number of steps.
    const double tol = eta + 1e-9;
    std::vector<double> quad_phase(theta.size(), 0.0), quad_step(theta.size());
    std::vector<double> lin_phase(beta.size(), 0.0), lin_step(beta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) {
        double base = theta[i] * double(w_param) * double(c);  // theta W c k^2
        base -= std::floor(base);
        quad_step[i] = base;
    }
    for (std::size_t i = 0; i < beta.size(); ++i) {
        double base = beta[i];  // beta k
        base -= std::floor(base);
        lin_step[i] = base;
    }

    std::vector<i64> out;
    for (i64 k = 1; k * c <= n; ++k) {
        // advance: theta W c ((k)^2 - (k-1)^2) = theta W c (2k - 1)
        for (std::size_t i = 0; i < theta.size(); ++i) {
            quad_phase[i] += quad_step[i] * double(2 * k - 1);
            quad_phase[i] -= std::floor(quad_phase[i]);
        }
        for (std::size_t i = 0; i < beta.size(); ++i) {
            lin_phase[i] += lin_step[i];
            lin_phase[i] -= std::floor(lin_phase[i]);
        }
        bool ok = true;
        for (std::size_t i = 0; ok && i < theta.size(); ++i)
            ok = std::min(quad_phase[i], 1.0 - quad_phase[i]) <= tol;
        for (std::size_t i = 0; ok && i < beta.size(); ++i)
            ok = std::min(lin_phase[i], 1.0 - lin_phase[i]) <= tol;
        if (ok) out.push_back(k * c);
    }
    return out;
}

double hua_ratio(i64 n, i64 w_param, i64 xi) {
    Majorant nu = build_majorant(n, w_param, xi);
    std::vector<std::pair<i64, u64>> items;
    items.reserve(nu.support.size());
    for (const auto& [pos, w] : nu.support) items.push_back({pos, static_cast<u64>(w)});
    auto support = series::Support::from_weighted(std::move(items));
    std::vector<series::Support> parts{support, support};
    series::Dist conv =
        series::aggregate(std::move(parts), 2 * nu.support.front().first,
                          2 * nu.support.back().first);
    u128 l1 = 0;
    u128 l2sq = 0;
    for (u64 v : conv.counts) {
        l1 = checked_add_u128(l1, v);
        l2sq = checked_add_u128(l2sq, u128(v) * v);
    }
    require(l1 > 0, "hua_ratio: empty convolved majorant");
    return std::sqrt(double(l2sq)) / double(l1);
}

namespace {

// Box transform at the exact rational k/m; the phase n*k/m is reduced in
// integers first, so the value stays accurate for n far beyond 2^53.
cd box_at_rational(i64 n, u64 k, u64 m) {
    if (k % m == 0) return {double(n), 0.0};
    const u128 nk = u128(static_cast<u64>(n)) * k;
    const u64 whole = static_cast<u64>(nk / m);
    const u64 frac = static_cast<u64>(nk % m);
    double s_num = std::sin(M_PI * double(frac) / double(m));
    if (whole & 1) s_num = -s_num;
    const double s_den = std::sin(M_PI * double(k % m) / double(m));
    const u64 ph = static_cast<u64>(u128(static_cast<u64>(n) + 1) * k % (2 * m));
    return unit_phase(double(ph) / double(2 * m)) * (s_num / s_den);
}

}  // namespace

double fourier_decay_sup(i64 n, i64 w_param, i64 xi, std::size_t grid_size) {
    Majorant nu = build_majorant(n, w_param, xi);
    ExpSumGrid grid = majorant_fourier(nu, grid_size);
    std::vector<double> diffs(grid_size);
    parallel_for(grid_size, [&](std::size_t k) {
        diffs[k] = std::abs(grid.values[k] - box_at_rational(n, k, grid_size));
    });
    double sup = 0;
    for (double d : diffs) sup = std::max(sup, d);
    return sup / double(n);
}

}  // namespace mono::harmonic
