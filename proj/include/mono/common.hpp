// common.hpp -- shared integer types, error taxonomy, RNG and small numeric helpers.
#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mono {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128_t;
using u128 = __uint128_t;

// ---------------------------------------------------------------------------
// Errors.  The CLI maps these onto its exit-code contract:
//   usage_error / parse_error / fit_error -> 2,  capacity_error -> 3,
//   internal_error -> 4.
// ---------------------------------------------------------------------------

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct capacity_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct parse_error : usage_error {
    parse_error(const std::string& what, long line)
        : usage_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    long line;
};

struct fit_error : usage_error {
    using usage_error::usage_error;
};

struct internal_error : std::logic_error {
    using std::logic_error::logic_error;
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw usage_error(what);
}

// ---------------------------------------------------------------------------
// 128-bit helpers.  All counting arithmetic is checked: overflow raises
// capacity_error rather than wrapping.
// ---------------------------------------------------------------------------

inline std::string to_string_u128(u128 v) {
    if (v == 0) return "0";
    std::string s;
    while (v > 0) {
        s.push_back(char('0' + int(v % 10)));
        v /= 10;
    }
    return std::string(s.rbegin(), s.rend());
}

inline std::string to_string_i128(i128 v) {
    if (v < 0) return "-" + to_string_u128(u128(-v));
    return to_string_u128(u128(v));
}

inline u128 checked_add_u128(u128 a, u128 b) {
    u128 s = a + b;
    if (s < a) throw capacity_error("128-bit unsigned overflow in addition");
    return s;
}

inline u128 checked_mul_u128(u128 a, u128 b) {
    if (a != 0 && b > ~u128(0) / a) throw capacity_error("128-bit unsigned overflow in multiplication");
    return a * b;
}

inline i128 checked_mul_i128(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw capacity_error("128-bit overflow in multiplication");
    return r;
}

inline i128 checked_add_i128(i128 a, i128 b) {
    i128 r;
    if (__builtin_add_overflow(a, b, &r)) throw capacity_error("128-bit overflow in addition");
    return r;
}

// Exact integer square root (largest r with r*r <= n).
inline u64 isqrt_u64(u64 n) {
    if (n == 0) return 0;
    u64 r = static_cast<u64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && u128(r) * r > n) --r;
    while (u128(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline i64 gcd_i64(i64 a, i64 b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

// ---------------------------------------------------------------------------
// SplitMix64: the project's single deterministic generator.  Splitting gives
// independent streams so whole experiments reproduce from one seed regardless
// of scheduling.
// ---------------------------------------------------------------------------

struct SplitMix64 {
    u64 state;

    explicit SplitMix64(u64 seed = 0) : state(seed) {}

    u64 next() {
        u64 z = (state += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Unbiased uniform draw from [0, bound).
    u64 below(u64 bound) {
        u64 threshold = (0 - bound) % bound;
        for (;;) {
            u64 v = next();
            if (v >= threshold) return v % bound;
        }
    }

    double unit() { return double(next() >> 11) * 0x1.0p-53; }

    // Derive an independent child stream; label keeps siblings distinct.
    SplitMix64 split(u64 label) const {
        SplitMix64 base(state ^ (0xD1B54A32D192ED03ull * (label + 1)));
        return SplitMix64(base.next());
    }
};

// ---------------------------------------------------------------------------
// Pairwise (tree) reduction for complex sums: deterministic error independent
// of scheduling, relative error ~1e-9 for up to 1e7 terms.
// ---------------------------------------------------------------------------

inline std::complex<double> pairwise_sum(const std::complex<double>* data, std::size_t n) {
    if (n == 0) return {0.0, 0.0};
    if (n <= 8) {
        std::complex<double> s = data[0];
        for (std::size_t i = 1; i < n; ++i) s += data[i];
        return s;
    }
    std::size_t h = n / 2;
    return pairwise_sum(data, h) + pairwise_sum(data + h, n - h);
}

inline std::complex<double> pairwise_sum(const std::vector<std::complex<double>>& v) {
    return pairwise_sum(v.data(), v.size());
}

// e(x) = exp(2*pi*i*x), evaluated on the reduced fractional part.
inline std::complex<double> unit_phase(double x) {
    double frac = x - std::floor(x);
    double t = 6.28318530717958647692528676655900577 * frac;
    return {std::cos(t), std::sin(t)};
}

// Distance to the nearest integer.
inline double torus_norm(double x) {
    double frac = x - std::floor(x);
    return frac <= 0.5 ? frac : 1.0 - frac;
}

std::size_t worker_count();

// Deterministic parallel map over [0, n): fn(i) may run on any worker.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace mono
