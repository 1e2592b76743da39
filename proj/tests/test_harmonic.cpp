#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>

#include "mono/harmonic.hpp"

using namespace mono;
using namespace mono::harmonic;

namespace {

cd direct_quadratic_mean(i64 q, i64 a, i64 b) {
    cd sum{0, 0};
    for (i64 r = 1; r <= q; ++r)
        sum += unit_phase(double(a * r * r + b * r) / double(q));
    return sum / double(q);
}

}  // namespace

TEST_CASE("gauss_sum: spec examples") {
    CHECK(std::abs(gauss_sum(1, 0, 0) - cd(1, 0)) < 1e-12);

    // (4,1,0): direct 4-term oracle gives (1+i)/2
    const cd oracle = direct_quadratic_mean(4, 1, 0);
    CHECK(std::abs(oracle - cd(0.5, 0.5)) < 1e-12);
    const cd got = gauss_sum(4, 1, 0);
    CHECK(std::abs(got - cd(0.5, 0.5)) < 1e-12);
    CHECK(std::abs(got) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-12));
    // the bound gcd(2,4)/4 = 1/2 is attained
    CHECK(std::norm(got) == doctest::Approx(0.5).epsilon(1e-12));

    CHECK(std::abs(gauss_sum(2, 1, 1) - cd(1, 0)) < 1e-12);
}

TEST_CASE("gauss_sum bound |E|^2 <= gcd(2a,q)/q for q <= 60") {
    for (i64 q = 1; q <= 60; ++q) {
        for (i64 a = 1; a <= q; ++a) {
            for (i64 b = 1; b <= q; ++b) {
                const double bound = double(gcd_i64(2 * a, q)) / double(q);
                CHECK(std::norm(gauss_sum(q, a, b)) <= bound + 1e-12);
            }
        }
    }
}

TEST_CASE("w_gauss_mean: vanishing and unit cases") {
    CHECK(std::abs(w_gauss_mean(4, 1, 1, 2)) < 1e-12);        // terms cancel
    CHECK(std::abs(w_gauss_mean(2, 1, 1, 1) - cd(1, 0)) < 1e-12);
    CHECK(std::abs(w_gauss_mean(6, 5, 1, 3)) <= 1e-10);       // gcd(3, 3) = 3 > 1

    // otherwise bounded by q^{-1/2}
    for (i64 q : {5, 7, 11, 13}) {
        const double m = std::abs(w_gauss_mean(6, 1, 2 % q == 0 ? 1 : 2, q));
        CHECK(m <= 1.0 / std::sqrt(double(q)) + 1e-10);
    }

    CHECK_THROWS_AS(w_gauss_mean(3, 1, 1, 2), usage_error);   // W odd
    CHECK_THROWS_AS(w_gauss_mean(4, 2, 1, 3), usage_error);   // xi not coprime
    CHECK_THROWS_AS(w_gauss_mean(4, 1, 2, 4), usage_error);   // a not coprime
}

TEST_CASE("majorant: support and mass for n = 12, W = 2, xi = 1") {
    // oracle: positions n = x(x+1) for W = 2, xi = 1
    std::vector<std::pair<i64, i64>> expect;
    for (i64 x = 1; x * (x + 1) <= 12; ++x) expect.push_back({x * (x + 1), 2 * x + 1});
    CHECK(expect == std::vector<std::pair<i64, i64>>{{2, 3}, {6, 5}, {12, 7}});

    auto nu = build_majorant(12, 2, 1);
    CHECK(nu.support == expect);
    CHECK(nu.l1 == 15);

    // transform at 0 is the mass; at 1/2 all phases are integral
    CHECK(std::abs(majorant_transform(nu, 0.0) - cd(15, 0)) < 1e-12);
    CHECK(std::abs(majorant_transform(nu, 0.5) - cd(15, 0)) < 1e-9);

    auto grid = majorant_fourier(nu, 16);
    CHECK(std::abs(grid.values[0] - cd(15, 0)) < 1e-12);
    CHECK(std::abs(grid.values[8] - cd(15, 0)) < 1e-9);

    CHECK_THROWS_AS(build_majorant(12, 3, 1), usage_error);
    CHECK_THROWS_AS(build_majorant(12, 4, 2), usage_error);
}

TEST_CASE("grid construction enforces the triangle-inequality bound") {
    CHECK_THROWS_AS(make_grid({cd(10, 0)}, 2.0, 1), internal_error);
}

TEST_CASE("major_arc_approx") {
    auto nu = build_majorant(1 << 16, 2, 1);

    // alpha = a/q exactly: the integral degenerates to N
    const cd at_rational = major_arc_approx(nu, 1, 3, 1.0 / 3.0);
    const cd local = w_gauss_mean(2, 1, 1, 3);
    CHECK(std::abs(at_rational - local * double(nu.n)) < 1e-6 * double(nu.n));

    // q = 1, a = 0, alpha = 0: main term N approximates the mass within
    // a few multiples of sqrt(W/N)
    for (i64 w : {2, 6}) {
        auto nuw = build_majorant(1 << 16, w, 1);
        const cd main = major_arc_approx(nuw, 0, 1, 0.0);
        const double rel = std::abs(main - cd(double(nuw.l1), 0)) / double(nuw.n);
        CHECK(rel <= 4.0 * std::sqrt(double(w) / double(nuw.n)));
    }

    // W = 4, xi = 1, q = 2, a = 1: the local mean vanishes
    auto nu4 = build_majorant(1 << 12, 4, 1);
    CHECK(std::abs(major_arc_approx(nu4, 1, 2, 0.5 + 1e-7)) < 1e-8 * double(nu4.n));
}

TEST_CASE("lp_moment_even: Parseval and fourth moments") {
    WeightedSequence box4;
    for (i64 x = 1; x <= 4; ++x) box4.weights.push_back({x, 1});
    CHECK(lp_moment_even(box4, 2) == 4);
    CHECK(lp_moment_even(box4, 4) == 44);

    // Parseval is exact for arbitrary weights and both exponents
    SplitMix64 rng(31);
    for (int trial = 0; trial < 30; ++trial) {
        WeightedSequence f;
        f.exponent = rng.below(2) ? 2 : 1;
        f.scale = 1 + i64(rng.below(3));
        u128 sumsq = 0;
        for (i64 x = 1; x <= 40; ++x) {
            const u64 w = rng.below(6);
            if (w == 0) continue;
            f.weights.push_back({x, w});
            sumsq += u128(w) * w;
        }
        if (f.weights.empty()) f.weights.push_back({1, 1});
        if (sumsq == 0) sumsq = 1;
        CHECK(lp_moment_even(f, 2) == sumsq);
    }

    CHECK_THROWS_AS(lp_moment_even(box4, 3), usage_error);
}

TEST_CASE("mixed moment: diagonal-only example on (4, 8]") {
    CHECK(mixed_moment_quad_lin(8, 1, 2) == 16);
}

TEST_CASE("mixed moment agrees with brute enumeration at p = 4") {
    // 8 variables over (4, 8]: 4^8 = 65536 tuples
    const i64 n = 8, w = 2;
    u64 expect = 0;
    for (i64 x1 = 5; x1 <= 8; ++x1)
        for (i64 x2 = 5; x2 <= 8; ++x2)
            for (i64 x3 = 5; x3 <= 8; ++x3)
                for (i64 x4 = 5; x4 <= 8; ++x4)
                    for (i64 y1 = 5; y1 <= 8; ++y1)
                        for (i64 y2 = 5; y2 <= 8; ++y2)
                            for (i64 y3 = 5; y3 <= 8; ++y3)
                                for (i64 y4 = 5; y4 <= 8; ++y4)
                                    if (w * (x1 * x1 + x2 * x2 - x3 * x3 - x4 * x4) +
                                            (y1 + y2 - y3 - y4) ==
                                        0)
                                        ++expect;
    CHECK(mixed_moment_quad_lin(n, w, 4) == expect);
}

TEST_CASE("quadrature: exactness at even p on oversampled grids") {
    WeightedSequence single;
    single.weights.push_back({3, 1});
    auto g1 = sequence_fourier(single, 64);
    for (double p : {0.5, 1.0, 2.0, 4.0})
        CHECK(lp_norm_quadrature(g1, p) == doctest::Approx(1.0).epsilon(1e-12));

    WeightedSequence box4;
    for (i64 x = 1; x <= 4; ++x) box4.weights.push_back({x, 1});
    auto g4 = sequence_fourier(box4, 64);
    CHECK(lp_norm_quadrature(g4, 2) == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(lp_norm_quadrature(g4, 4) == doctest::Approx(44.0).epsilon(1e-6));

    auto tiny = sequence_fourier(box4, 16);  // 16 < 8 * max_freq = 32
    CHECK_THROWS_AS(lp_norm_quadrature(tiny, 2), usage_error);
}

TEST_CASE("rational_approx: convergents and semiconvergents") {
    auto r1 = rational_approx(0.5, 10);
    CHECK(r1.numerator == 1);
    CHECK(r1.denominator == 2);
    CHECK(r1.err == 0.0);

    auto r2 = rational_approx(0.333, 10);
    CHECK(r2.numerator == 1);
    CHECK(r2.denominator == 3);

    auto r3 = rational_approx(0.1415926, 10);
    CHECK(r3.numerator == 1);
    CHECK(r3.denominator == 7);

    SplitMix64 rng(12);
    for (int trial = 0; trial < 200; ++trial) {
        const double alpha = rng.unit();
        const i64 cap = 1 + i64(rng.below(200));
        auto r = rational_approx(alpha, cap);
        CHECK(r.denominator >= 1);
        CHECK(r.denominator <= cap);
        CHECK(gcd_i64(r.numerator == 0 ? r.denominator : r.numerator, r.denominator) == 1);
        // optimality among all fractions with small denominators
        double best = 1.0;
        for (i64 q = 1; q <= cap; ++q) {
            const double a_real = std::round(alpha * double(q));
            best = std::min(best, std::abs(alpha - a_real / double(q)));
        }
        CHECK(r.err <= best + 1e-12);
    }
}

TEST_CASE("divisor sums") {
    CHECK(divisor_partial(6, 3) == 3);
    CHECK(divisor_partial(1, 100) == 1);
    CHECK(divisor_partial(12, 4) == 4);
    CHECK(divisor_partial(0, 17) == 17);
    CHECK(divisor_partial(-6, 3) == 3);

    // moment against a direct double loop
    const i64 x_cap = 40, q_cap = 6;
    u128 expect = 0;
    for (i64 n = -x_cap; n <= x_cap; ++n) {
        const i64 d = divisor_partial(n, q_cap);
        expect += u128(d) * d;
    }
    CHECK(divisor_moment(x_cap, q_cap, 2) == expect);

    CHECK_THROWS_AS(divisor_moment(1 << 20, 1 << 12, 2), capacity_error);
}

TEST_CASE("fejer kernel") {
    CHECK(fejer_kernel(64, 0.0) == 64.0);
    CHECK(fejer_kernel(64, 1.0) == 64.0);
    // grid mean = integral = 1 (degree < grid size)
    const i64 n = 64;
    const std::size_t m = 8 * 64;
    double mean = 0;
    for (std::size_t k = 0; k < m; ++k) mean += fejer_kernel(n, double(k) / double(m));
    mean /= double(m);
    CHECK(mean == doctest::Approx(1.0).epsilon(1e-9));
    for (std::size_t k = 0; k < 97; ++k) CHECK(fejer_kernel(31, double(k) / 97.0) >= 0.0);
}

TEST_CASE("quadratic Bohr sets") {
    auto b = quadratic_bohr_set(30, {1.0 / 5.0}, {0.0}, 0.1, 1, 1);
    CHECK(b == std::vector<i64>{5, 10, 15, 20, 25, 30});

    // with c = 2 the scan runs over even x and the condition reads 2k^2/3
    auto b2 = quadratic_bohr_set(30, {1.0 / 3.0}, {}, 0.1, 2, 1);
    CHECK(b2 == std::vector<i64>{6, 12, 18, 24, 30});

    // a linear condition alone
    auto b3 = quadratic_bohr_set(20, {}, {1.0 / 4.0}, 0.05, 1, 1);
    CHECK(b3 == std::vector<i64>{4, 8, 12, 16, 20});

    CHECK_THROWS_AS(quadratic_bohr_set(10, {0.1, 0.2, 0.3, 0.4, 0.5}, {}, 0.1, 1, 1),
                    usage_error);
    CHECK_THROWS_AS(quadratic_bohr_set(100000000, {0.5}, {}, 0.1, 1, 1), capacity_error);
}

TEST_CASE("hua ratio of the convolved majorant decays like N^{-1/2}") {
    std::vector<std::pair<double, double>> pts;
    for (int e = 14; e <= 20; ++e) {
        const i64 n = i64(1) << e;
        pts.push_back({double(n), hua_ratio(n, 2, 1)});
    }
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(pts[i].second < pts[i - 1].second);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto& [x, y] : pts) {
        const double lx = std::log(x), ly = std::log(y);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double nn = double(pts.size());
    const double slope = (nn * sxy - sx * sy) / (nn * sxx - sx * sx);
    CHECK(slope == doctest::Approx(-0.5).epsilon(0.2));  // within +-0.1 absolute
    CHECK(std::abs(slope + 0.5) <= 0.1);
}

TEST_CASE("fourier decay sup is non-increasing in the smoothness cutoff") {
    // The sup is carried by the peaks at rationals a/q with q the least prime
    // coprime to W/2, so the grid must contain 1/5, 1/7, 1/11, 1/13 and N must
    // dwarf W^3 for the major-arc shape to emerge.
    const i64 n = i64(1) << 38;
    const std::size_t grid = 5005;  // 5 * 7 * 11 * 13
    std::vector<i64> w_values{12, 60, 420, 4620};  // 2 * primorial(w), w = 3, 5, 7, 11
    double prev = 1e300;
    for (i64 w : w_values) {
        const double sup = fourier_decay_sup(n, w, 1, grid);
        CHECK(sup <= prev + 1e-12);
        prev = sup;
    }
}

TEST_CASE("minor-arc envelope: |nu^| small away from small-denominator rationals") {
    const i64 n = i64(1) << 16;
    auto nu = build_majorant(n, 2, 1);
    SplitMix64 rng(2718);
    int kept = 0;
    int attempts = 0;
    while (kept < 200 && attempts < 100000) {
        ++attempts;
        const double alpha = rng.unit();
        if (rational_approx(alpha, 50).err <= 50.0 / double(n)) continue;
        ++kept;
        CHECK(std::abs(majorant_transform(nu, alpha)) <= 0.2 * double(nu.l1));
    }
    CHECK(kept == 200);
}
