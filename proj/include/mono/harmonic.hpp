// harmonic.hpp -- the exponential-sum toolkit: quadratic Gauss sums, the
// weighted square majorant and its transform, torus moments (exact at even
// exponents, quadrature otherwise), best rational approximation, partial
// divisor sums, the Fejer kernel and quadratic Bohr sets.
#pragma once

#include <complex>
#include <vector>

#include "mono/common.hpp"
#include "mono/series.hpp"

namespace mono::harmonic {

using cd = std::complex<double>;

// Mean (1/q) sum_{r in [q]} e((a r^2 + b r)/q).  Satisfies
// |result|^2 <= gcd(2a, q)/q exactly.
cd gauss_sum(i64 q, i64 a, i64 b);

// Mean (1/q) sum_{r in [q]} e(a(W/2 r^2 + xi r)/q) for even W, gcd(xi, W) = 1
// and gcd(a, q) = 1.  Vanishes whenever gcd(q, W/2) > 1.
cd w_gauss_mean(i64 w_param, i64 xi, i64 a, i64 q);

// The weighted square majorant: position n = W/2 x^2 + xi x carries weight
// W x + xi, for x = 1, 2, ... while n <= range_n.
struct Majorant {
    i64 n;
    i64 w_param;
    i64 xi;
    std::vector<std::pair<i64, i64>> support;  // (position, weight), ascending
    u128 l1 = 0;                               // sum of weights = transform at 0
};

Majorant build_majorant(i64 range_n, i64 w_param, i64 xi);

// Equispaced torus samples of an exponential sum; values[k] is the sum at
// alpha = k/M.  Construction checks |values[k]| <= l1_bound.
struct ExpSumGrid {
    std::vector<cd> values;
    double l1_bound = 0;
    i64 max_freq = 0;  // largest |frequency| of the underlying polynomial

    std::size_t size() const { return values.size(); }
};

ExpSumGrid make_grid(std::vector<cd> values, double l1_bound, i64 max_freq);

// Transform of the majorant at alpha, and on a full grid (direct evaluation
// over the sparse support).
cd majorant_transform(const Majorant& nu, double alpha);
ExpSumGrid majorant_fourier(const Majorant& nu, std::size_t grid_size);

// sum_{n=1..N} e(alpha n), closed form.
cd box_transform(i64 n, double alpha);

// Main term of the major-arc approximation at alpha near a/q:
// [mean_{r in [q]} e(a(W/2 r^2 + xi r)/q)] * Int_0^N e((alpha - a/q) t) dt.
cd major_arc_approx(const Majorant& nu, i64 a, i64 q, double alpha);

// Weighted finite sequence whose transform is sum_x weight(x) e(alpha * scale * x^exponent).
struct WeightedSequence {
    int exponent = 1;
    i64 scale = 1;
    std::vector<std::pair<i64, u64>> weights;  // (x, weight), x >= 1
};

// Exact even moment: integral over the torus of |transform|^p, p in {2,4,6,8},
// computed as the solution count of the associated p-fold equation.
u128 lp_moment_even(const WeightedSequence& f, int p);

// Exact mixed moment: integral of |F(alpha) G(alpha)|^p where F sums
// e(W alpha x^2) and G sums e(alpha y), both over (n/2, n].
u128 mixed_moment_quad_lin(i64 n, i64 w_param, int p);

// Transform grid of a weighted sequence (FFT-folded for dense inputs).
ExpSumGrid sequence_fourier(const WeightedSequence& f, std::size_t grid_size);

// Riemann mean of |values|^p over the grid, i.e. a quadrature for the p-th
// moment; exact up to rounding for even p when the grid oversamples the
// polynomial (grid_size >= 8 * max_freq enforced).
double lp_norm_quadrature(const ExpSumGrid& g, double p);

struct RationalApprox {
    i64 numerator = 0;
    i64 denominator = 1;
    double err = 0;  // torus distance |alpha - a/q|
};

// Best rational approximation with denominator <= max_q (convergents and
// semiconvergents of the continued fraction expansion).
RationalApprox rational_approx(double alpha, i64 max_q);

// d(n, Q) = #{1 <= q <= Q : q | n}; every q divides 0.
i64 divisor_partial(i64 n, i64 q_cap);

// sum_{|n| <= X} d(n, Q)^B, exact.
u128 divisor_moment(i64 x_cap, i64 q_cap, int b_exp);

// N^{-1} |box_transform(N, alpha)|^2 with the alpha -> 0 limit handled exactly.
double fejer_kernel(i64 n, double alpha);

// {x in [n] : c | x, |theta_i W x^2 / c|_T <= eta for all i,
//             |beta_i x / c|_T <= eta for all i}
std::vector<i64> quadratic_bohr_set(i64 n, const std::vector<double>& theta,
                                    const std::vector<double>& beta, double eta, i64 c,
                                    i64 w_param);

// |nu * nu|_2 / |nu * nu|_1 for the convolved majorant, from exact integer
// masses.  Decays like N^{-1/2} at fixed W.
double hua_ratio(i64 n, i64 w_param, i64 xi);

// Grid sup of |nu^ - box^| / N: the flattening of the majorant's transform.
double fourier_decay_sup(i64 n, i64 w_param, i64 xi, std::size_t grid_size);

}  // namespace mono::harmonic
