// series.cpp -- exact strided convolution engine.
//
// Aggregation strategy: a side's summands are combined pairwise, always
// picking the pair whose (window-trimmed) result needs the fewest dense
// entries.  After each combination the partial distribution is restricted to
// the range that the remaining summands can still steer into the target
// window; this restriction is exact and is what bounds memory when individual
// terms span ~N^2 values but the final window spans ~N.
#include "mono/series.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace mono::series {

namespace {

// NTT-friendly primes: 29*2^57 + 1 and 27*2^56 + 1, primitive roots 3 and 5.
struct NttPrime {
    u64 p;
    u64 g;
};
constexpr NttPrime kP1{4179340454199820289ull, 3};
constexpr NttPrime kP2{1945555039024054273ull, 5};

constexpr std::size_t kSchoolbookLen = std::size_t(1) << 10;
constexpr u128 kSchoolbookCost = u128(1) << 20;
constexpr u128 kScatterCost = u128(1) << 26;
constexpr u128 kShiftAddCost = u128(1) << 26;
constexpr std::size_t kNttSizeCap = std::size_t(1) << 27;
constexpr std::size_t kDenseCap = std::size_t(1) << 28;
constexpr std::size_t kOutChunk = std::size_t(1) << 18;

u64 mulmod(u64 a, u64 b, u64 p) { return static_cast<u64>(u128(a) * b % p); }

u64 powmod(u64 a, u64 e, u64 p) {
    u64 r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod(r, a, p);
        a = mulmod(a, a, p);
        e >>= 1;
    }
    return r;
}

std::size_t next_pow2(std::size_t n) {
    std::size_t r = 1;
    while (r < n) r <<= 1;
    return r;
}

// Montgomery arithmetic: the transform hot loop must not divide.
struct Montgomery {
    u64 p;
    u64 p_neg_inv;  // -p^{-1} mod 2^64
    u64 r2;         // (2^64)^2 mod p

    explicit Montgomery(u64 prime) : p(prime) {
        u64 inv = prime;  // Newton iteration for p^{-1} mod 2^64
        for (int i = 0; i < 5; ++i) inv *= 2 - prime * inv;
        p_neg_inv = ~inv + 1;
        const u64 r = (~u64(0)) % prime + 1;  // 2^64 mod p
        r2 = mulmod(r, r, prime);
    }

    u64 reduce(u128 t) const {
        const u64 m = static_cast<u64>(t) * p_neg_inv;
        const u64 hi = static_cast<u64>((t + u128(m) * p) >> 64);
        return hi >= p ? hi - p : hi;
    }

    u64 mul(u64 a, u64 b) const { return reduce(u128(a) * b); }
    u64 to_mont(u64 a) const { return mul(a, r2); }
    u64 from_mont(u64 a) const { return reduce(u128(a)); }
};

const Montgomery kM1(kP1.p);
const Montgomery kM2(kP2.p);

// In-place transform; a holds Montgomery-form residues.
void ntt(std::vector<u64>& a, bool inverse, const NttPrime& P, const Montgomery& M) {
    const std::size_t n = a.size();
    const u64 p = P.p;
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        u64 wlen = powmod(P.g, (p - 1) / len, p);
        if (inverse) wlen = powmod(wlen, p - 2, p);
        const u64 wlen_m = M.to_mont(wlen);
        for (std::size_t i = 0; i < n; i += len) {
            u64 w = M.to_mont(1);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const u64 u = a[i + k];
                const u64 v = M.mul(a[i + k + len / 2], w);
                a[i + k] = u + v < p ? u + v : u + v - p;
                a[i + k + len / 2] = u >= v ? u - v : u + p - v;
                w = M.mul(w, wlen_m);
            }
        }
    }
    if (inverse) {
        const u64 ninv = M.to_mont(powmod(n % p, p - 2, p));
        for (auto& x : a) x = M.mul(x, ninv);
    }
}

// Linear convolution of a and b modulo P, truncated to the first `want` terms.
std::vector<u64> conv_mod(const u64* a, std::size_t na, const u64* b, std::size_t nb,
                          const NttPrime& P, const Montgomery& M, std::size_t want) {
    std::size_t full = na + nb - 1;
    std::size_t sz = next_pow2(full);
    if (sz > kNttSizeCap) throw capacity_error("transform size exceeds the engine cap");
    std::vector<u64> fa(sz, 0), fb(sz, 0);
    // Entering the Montgomery domain once on input and once after the inverse
    // transform costs one extra multiply per element.
    for (std::size_t i = 0; i < na; ++i) fa[i] = M.to_mont(a[i] % P.p);
    for (std::size_t i = 0; i < nb; ++i) fb[i] = M.to_mont(b[i] % P.p);
    ntt(fa, false, P, M);
    ntt(fb, false, P, M);
    for (std::size_t i = 0; i < sz; ++i) fa[i] = M.mul(fa[i], fb[i]);
    ntt(fa, true, P, M);
    fa.resize(std::min(full, want));
    for (auto& x : fa) x = M.from_mont(x);
    return fa;
}

u128 saturating_mul(u128 a, u128 b) {
    if (a != 0 && b > ~u128(0) / a) return ~u128(0);
    return a * b;
}

// Upper bound for any value of conv(a, b): min(|a|_1 * |b|_inf, |b|_1 * |a|_inf).
u128 conv_value_bound(u128 mass_a, u64 max_a, u128 mass_b, u64 max_b) {
    return std::min(saturating_mul(mass_a, max_b), saturating_mul(mass_b, max_a));
}

const u128 kCrtSpan = u128(kP1.p) * kP2.p;
const u64 kInvP1modP2 = powmod(kP1.p % kP2.p, kP2.p - 2, kP2.p);

u128 crt_combine(u64 r1, u64 r2) {
    u64 r1m = r1 % kP2.p;
    u64 diff = r2 >= r1m ? r2 - r1m : r2 + kP2.p - r1m;
    u64 t = mulmod(diff, kInvP1modP2, kP2.p);
    return u128(r1) + u128(kP1.p) * t;
}

// Adds the exact convolution values of (a*b) at result indices
// [out_lo, out_lo + out_len) into out_accum[0..out_len).  The a-priori value
// bound selects one prime or the two-prime CRT reconstruction.
void conv_exact_into(const u64* a, std::size_t na, const u64* b, std::size_t nb,
                     std::size_t out_lo, std::size_t out_len, u128 bound, u64* out_accum) {
    std::size_t want = out_lo + out_len;
    if (bound < kP1.p) {
        auto c = conv_mod(a, na, b, nb, kP1, kM1, want);
        for (std::size_t k = 0; k < out_len && out_lo + k < c.size(); ++k) {
            u64 v = c[out_lo + k];
            u64 s = out_accum[k] + v;
            if (s < v) throw capacity_error("convolution count overflows 64 bits");
            out_accum[k] = s;
        }
        return;
    }
    if (bound >= kCrtSpan)
        throw capacity_error("convolution values exceed the two-prime reconstruction range");
    auto c1 = conv_mod(a, na, b, nb, kP1, kM1, want);
    auto c2 = conv_mod(a, na, b, nb, kP2, kM2, want);
    for (std::size_t k = 0; k < out_len && out_lo + k < c1.size(); ++k) {
        u128 v = crt_combine(c1[out_lo + k], c2[out_lo + k]);
        u128 s = checked_add_u128(v, out_accum[k]);
        if (s > u128(~u64(0))) throw capacity_error("convolution count overflows 64 bits");
        out_accum[k] = static_cast<u64>(s);
    }
}

// ---------------------------------------------------------------------------
// Aggregation nodes.
// ---------------------------------------------------------------------------

struct Node {
    bool sparse = true;
    std::vector<std::pair<i64, u64>> items;  // sparse only
    Dist dist;                               // dense only
    i64 lo = 0, hi = 0;                      // attained value bounds
    i64 diffg = 0;   // gcd of pairwise value differences (0 when a single value)
    u128 mass = 0;
    u64 maxc = 0;
    std::size_t nnz = 0;

    i64 stride() const { return diffg == 0 ? 1 : diffg; }
    bool empty() const { return nnz == 0; }
};

Node node_from_items(std::vector<std::pair<i64, u64>> items) {
    Node n;
    n.sparse = true;
    n.items = std::move(items);
    n.nnz = n.items.size();
    if (n.items.empty()) return n;
    n.lo = n.items.front().first;
    n.hi = n.items.back().first;
    i64 g = 0;
    u128 mass = 0;
    u64 maxc = 0;
    i64 prev = n.lo;
    for (const auto& [v, c] : n.items) {
        g = gcd_i64(g, v - prev);
        prev = v;
        mass = checked_add_u128(mass, c);
        maxc = std::max(maxc, c);
    }
    n.diffg = g;
    n.mass = mass;
    n.maxc = maxc;
    return n;
}

Node node_from_dist(Dist d) {
    Node n;
    n.sparse = false;
    u128 mass = 0;
    u64 maxc = 0;
    std::size_t first = 0, last = 0;
    bool seen = false;
    for (std::size_t i = 0; i < d.counts.size(); ++i) {
        if (d.counts[i] == 0) continue;
        if (!seen) first = i;
        seen = true;
        last = i;
        ++n.nnz;
        mass = checked_add_u128(mass, d.counts[i]);
        maxc = std::max(maxc, d.counts[i]);
    }
    if (!seen) return Node{};
    if (first > 0 || last + 1 < d.counts.size()) {
        std::vector<u64> trimmed(d.counts.begin() + first, d.counts.begin() + last + 1);
        d.offset += d.stride * static_cast<i64>(first);
        d.counts = std::move(trimmed);
    }
    n.lo = d.offset;
    n.hi = d.max_value();
    n.diffg = d.counts.size() == 1 ? 0 : d.stride;
    n.mass = mass;
    n.maxc = maxc;
    n.dist = std::move(d);
    return n;
}

// Restrict a node to [lo, hi].  Exact as long as [lo, hi] contains every value
// the remaining summands could complete into the target window.
Node trim_node(Node n, i64 lo, i64 hi) {
    if (n.empty()) return n;
    if (n.lo >= lo && n.hi <= hi) return n;
    if (n.sparse) {
        std::vector<std::pair<i64, u64>> kept;
        for (const auto& it : n.items)
            if (it.first >= lo && it.first <= hi) kept.push_back(it);
        return node_from_items(std::move(kept));
    }
    const Dist& d = n.dist;
    const i64 s = d.stride;
    i64 first_v = std::max(d.offset, lo);
    i64 rem = ((first_v - d.offset) % s + s) % s;
    if (rem != 0) first_v += s - rem;
    i64 last_v = std::min(d.max_value(), hi);
    last_v -= ((last_v - d.offset) % s + s) % s;
    if (first_v > last_v) return Node{};
    std::size_t i0 = static_cast<std::size_t>((first_v - d.offset) / s);
    std::size_t i1 = static_cast<std::size_t>((last_v - d.offset) / s);
    Dist out;
    out.offset = first_v;
    out.stride = s;
    out.counts.assign(d.counts.begin() + i0, d.counts.begin() + i1 + 1);
    return node_from_dist(std::move(out));
}

struct TargetRange {
    i64 lo = 0, hi = 0;  // aligned, inclusive
    i64 stride = 1;
    std::size_t len = 0;
    bool empty = true;
};

TargetRange target_range(const Node& a, const Node& b, i64 feas_lo, i64 feas_hi) {
    TargetRange t;
    const i64 g = gcd_i64(a.diffg, b.diffg);
    t.stride = g == 0 ? 1 : g;
    const i128 base = i128(a.lo) + b.lo;
    i128 rlo = std::max<i128>(base, feas_lo);
    i128 rhi = std::min<i128>(i128(a.hi) + b.hi, feas_hi);
    if (g > 0) {
        i128 rem = ((rlo - base) % g + g) % g;
        if (rem != 0) rlo += g - rem;
        rhi -= ((rhi - base) % g + g) % g;
    } else if (rlo > base || base > rhi) {
        return t;
    } else {
        rlo = rhi = base;
    }
    if (rlo > rhi) return t;
    t.lo = static_cast<i64>(rlo);
    t.hi = static_cast<i64>(rhi);
    t.len = static_cast<std::size_t>((rhi - rlo) / t.stride) + 1;
    t.empty = false;
    return t;
}

void ensure_dense_cap(std::size_t len, const char* ctx) {
    if (len > kDenseCap)
        throw capacity_error(std::string(ctx) + ": dense range of " + std::to_string(len) +
                             " entries exceeds the memory budget");
}

Dist densify_node(const Node& n, i64 stride, i64 lo, std::size_t len) {
    ensure_dense_cap(len, "densify");
    Dist d;
    d.offset = lo;
    d.stride = stride;
    d.counts.assign(len, 0);
    if (n.sparse) {
        for (const auto& [v, c] : n.items)
            d.counts[static_cast<std::size_t>((v - lo) / stride)] += c;
    } else {
        const i64 step = n.dist.counts.size() == 1 ? 0 : n.dist.stride / stride;
        const i64 base = (n.dist.offset - lo) / stride;
        for (std::size_t i = 0; i < n.dist.counts.size(); ++i)
            if (n.dist.counts[i] != 0)
                d.counts[static_cast<std::size_t>(base + static_cast<i64>(i) * step)] +=
                    n.dist.counts[i];
    }
    return d;
}

// ---------------------------------------------------------------------------
// Pairwise combination paths.
// ---------------------------------------------------------------------------

Node combine_scatter(const Node& a, const Node& b, const TargetRange& t) {
    ensure_dense_cap(t.len, "scatter");
    Dist out;
    out.offset = t.lo;
    out.stride = t.stride;
    out.counts.assign(t.len, 0);
    const bool unit = a.maxc == 1 && b.maxc == 1;
    for (const auto& [va, ca] : a.items) {
        for (const auto& [vb, cb] : b.items) {
            const i64 v = va + vb;
            if (v < t.lo || v > t.hi) continue;
            const std::size_t idx = static_cast<std::size_t>((v - t.lo) / t.stride);
            if (unit) {
                if (++out.counts[idx] == 0) throw capacity_error("scatter count overflow");
            } else {
                u128 s = u128(ca) * cb + out.counts[idx];
                if (s > u128(~u64(0))) throw capacity_error("scatter count overflows 64 bits");
                out.counts[idx] = static_cast<u64>(s);
            }
        }
    }
    return node_from_dist(std::move(out));
}

Node combine_shift_add(const Node& sp, const Node& dn, const TargetRange& t) {
    ensure_dense_cap(t.len, "shift-add");
    Dist out;
    out.offset = t.lo;
    out.stride = t.stride;
    out.counts.assign(t.len, 0);
    const Dist& d = dn.dist;
    const i64 step = d.counts.size() == 1 ? 1 : d.stride / t.stride;
    const bool risky =
        conv_value_bound(sp.mass, sp.maxc, dn.mass, dn.maxc) >= (u128(1) << 63);
    for (const auto& [v, c] : sp.items) {
        const i64 base_v = v + d.offset;
        if (base_v > t.hi) continue;  // even k = 0 overshoots the window
        i64 k_lo = 0, k_hi = static_cast<i64>(d.counts.size()) - 1;
        if (base_v < t.lo) k_lo = (t.lo - base_v + d.stride - 1) / d.stride;
        if (base_v + k_hi * d.stride > t.hi) k_hi = (t.hi - base_v) / d.stride;
        if (k_lo > k_hi) continue;
        std::size_t idx = static_cast<std::size_t>((base_v + k_lo * d.stride - t.lo) / t.stride);
        if (risky) {
            for (i64 k = k_lo; k <= k_hi; ++k, idx += step) {
                u128 s = u128(c) * d.counts[k] + out.counts[idx];
                if (s > u128(~u64(0))) throw capacity_error("shift-add count overflows 64 bits");
                out.counts[idx] = static_cast<u64>(s);
            }
        } else if (c == 1) {
            for (i64 k = k_lo; k <= k_hi; ++k, idx += step) out.counts[idx] += d.counts[k];
        } else {
            for (i64 k = k_lo; k <= k_hi; ++k, idx += step) out.counts[idx] += c * d.counts[k];
        }
    }
    return node_from_dist(std::move(out));
}

double blocked_cost(std::size_t nbig, std::size_t nsmall, std::size_t out_len) {
    const std::size_t chunk = std::min(out_len, kOutChunk);
    const std::size_t block =
        std::min<std::size_t>(std::max<std::size_t>(std::size_t(1) << 13, next_pow2(chunk)),
                              std::size_t(1) << 16);
    const std::size_t P = next_pow2(block + std::min(nsmall, chunk + block));
    const double per_block = 3.0 * double(P) * (std::log2(double(P)) + 1);
    const double nchunks = double((out_len + kOutChunk - 1) / kOutChunk);
    return per_block * double((nbig + block - 1) / block) * nchunks;
}

// Windowed dense convolution; a and b share stride t.stride.
Node combine_dense(const Dist& a, const Dist& b, u128 bound, const TargetRange& t) {
    const std::size_t na = a.counts.size(), nb = b.counts.size();
    const i64 base = a.offset + b.offset;
    const std::size_t k_lo = static_cast<std::size_t>((t.lo - base) / t.stride);
    const std::size_t out_len = t.len;
    ensure_dense_cap(out_len, "convolution output");
    if (bound > (~u128(0) >> 1)) throw capacity_error("convolution value bound overflows");

    Dist out;
    out.offset = t.lo;
    out.stride = t.stride;

    const std::size_t full = na + nb - 1;

    if (u128(na) * nb <= kSchoolbookCost || full <= kSchoolbookLen) {
        std::vector<u128> acc(out_len, 0);
        for (std::size_t i = 0; i < na; ++i) {
            if (a.counts[i] == 0) continue;
            const u128 ai = a.counts[i];
            const std::size_t j0 = k_lo > i ? k_lo - i : 0;
            const std::size_t j_end = k_lo + out_len > i ? k_lo + out_len - i : 0;
            const std::size_t j1 = std::min(nb, j_end);
            for (std::size_t j = j0; j < j1; ++j) acc[i + j - k_lo] += ai * b.counts[j];
        }
        out.counts.resize(out_len);
        for (std::size_t k = 0; k < out_len; ++k) {
            if (acc[k] > u128(~u64(0)))
                throw capacity_error("convolution count overflows 64 bits");
            out.counts[k] = static_cast<u64>(acc[k]);
        }
        return node_from_dist(std::move(out));
    }

    const double cost_blocked = blocked_cost(std::max(na, nb), std::min(na, nb), out_len);
    const std::size_t p_full = next_pow2(full);
    const double cost_full = p_full <= kNttSizeCap
                                 ? 3.0 * double(p_full) * (std::log2(double(p_full)) + 1)
                                 : 1e300;

    if (cost_full <= cost_blocked) {
        out.counts.assign(out_len, 0);
        conv_exact_into(a.counts.data(), na, b.counts.data(), nb, k_lo, out_len, bound,
                        out.counts.data());
        return node_from_dist(std::move(out));
    }

    // Overlap-add over blocks of the longer input, producing only the window;
    // wide windows are processed in chunks so block transforms stay small.
    const u64* big = a.counts.data();
    std::size_t nbig = na;
    const u64* sml = b.counts.data();
    std::size_t nsml = nb;
    if (nbig < nsml) {
        std::swap(big, sml);
        std::swap(nbig, nsml);
    }

    out.counts.assign(out_len, 0);
    for (std::size_t chunk = 0; chunk < out_len; chunk += kOutChunk) {
        const std::size_t clen = std::min(kOutChunk, out_len - chunk);
        const i64 c_lo = static_cast<i64>(k_lo + chunk);
        const std::size_t block = std::min<std::size_t>(
            std::max<std::size_t>(std::size_t(1) << 13, next_pow2(clen)), std::size_t(1) << 16);

        // Blocks of `big` that can reach conv indices [c_lo, c_lo + clen).
        i64 i_min = c_lo - static_cast<i64>(nsml) + 1;
        i64 i_max = c_lo + static_cast<i64>(clen) - 1;
        i_min = std::max<i64>(i_min, 0);
        i_max = std::min<i64>(i_max, static_cast<i64>(nbig) - 1);
        if (i_min > i_max) continue;
        const std::size_t first_block = static_cast<std::size_t>(i_min) / block;
        const std::size_t last_block = static_cast<std::size_t>(i_max) / block;

        const std::size_t nthreads =
            std::min(worker_count(), last_block - first_block + 1);
        std::vector<std::vector<u64>> partial(nthreads);
        std::vector<std::exception_ptr> errors(nthreads);
        std::atomic<std::size_t> cursor{first_block};

        auto work = [&](std::size_t tid) {
            auto& acc = partial[tid];
            acc.assign(clen, 0);
            std::vector<u64> tmp;
            for (;;) {
                const std::size_t bi = cursor.fetch_add(1);
                if (bi > last_block) return;
                const std::size_t s = bi * block;
                const std::size_t blen = std::min(block, nbig - s);
                i64 j0 = c_lo - static_cast<i64>(s + blen - 1);
                i64 j1 = c_lo + static_cast<i64>(clen) - 1 - static_cast<i64>(s);
                j0 = std::max<i64>(j0, 0);
                j1 = std::min<i64>(j1, static_cast<i64>(nsml) - 1);
                if (j0 > j1) continue;
                const std::size_t slo = static_cast<std::size_t>(j0);
                const std::size_t slen = static_cast<std::size_t>(j1 - j0 + 1);
                // Product index k corresponds to conv index s + slo + k.
                const i64 shift = static_cast<i64>(s + slo);
                i64 rel_lo = c_lo - shift;
                i64 rel_hi = c_lo + static_cast<i64>(clen) - 1 - shift;
                rel_lo = std::max<i64>(rel_lo, 0);
                rel_hi = std::min<i64>(rel_hi, static_cast<i64>(blen + slen) - 2);
                if (rel_lo > rel_hi) continue;
                const std::size_t rlen = static_cast<std::size_t>(rel_hi - rel_lo + 1);
                tmp.assign(rlen, 0);
                conv_exact_into(big + s, blen, sml + slo, slen,
                                static_cast<std::size_t>(rel_lo), rlen, bound, tmp.data());
                for (std::size_t k = 0; k < rlen; ++k) {
                    const std::size_t oi =
                        static_cast<std::size_t>(shift + rel_lo + static_cast<i64>(k) - c_lo);
                    const u64 v = tmp[k];
                    const u64 sum = acc[oi] + v;
                    if (sum < v) throw capacity_error("convolution count overflows 64 bits");
                    acc[oi] = sum;
                }
            }
        };

        if (nthreads <= 1) {
            work(0);
        } else {
            std::vector<std::thread> pool;
            for (std::size_t tid = 0; tid < nthreads; ++tid)
                pool.emplace_back([&, tid] {
                    try {
                        work(tid);
                    } catch (...) {
                        errors[tid] = std::current_exception();
                        cursor.store(last_block + 1);
                    }
                });
            for (auto& th : pool) th.join();
            for (auto& e : errors)
                if (e) std::rethrow_exception(e);
        }

        for (std::size_t tid = 0; tid < nthreads; ++tid) {
            if (partial[tid].empty()) continue;
            for (std::size_t k = 0; k < clen; ++k) {
                const u64 v = partial[tid][k];
                const u64 sum = out.counts[chunk + k] + v;
                if (sum < v) throw capacity_error("convolution count overflows 64 bits");
                out.counts[chunk + k] = sum;
            }
        }
    }
    return node_from_dist(std::move(out));
}

// Estimated work for combining two nodes into the given target, mirroring the
// dispatch in combine().  Used by the pair-selection loop.
double estimate_cost(const Node& a, const Node& b, const TargetRange& t) {
    if (t.empty) return 0;
    if (t.len > kDenseCap) return 1e300;
    if (a.sparse && b.sparse && u128(a.nnz) * b.nnz <= kScatterCost)
        return double(a.nnz) * double(b.nnz);
    if (a.sparse && !b.sparse && u128(a.nnz) * b.dist.counts.size() <= kShiftAddCost)
        return double(a.nnz) * double(std::min<std::size_t>(b.dist.counts.size(), t.len));
    if (b.sparse && !a.sparse && u128(b.nnz) * a.dist.counts.size() <= kShiftAddCost)
        return double(b.nnz) * double(std::min<std::size_t>(a.dist.counts.size(), t.len));
    const double la = double(a.hi - a.lo) / double(t.stride) + 1;
    const double lb = double(b.hi - b.lo) / double(t.stride) + 1;
    if (la * lb <= double(kSchoolbookCost)) return la * lb;
    const double full = la + lb;
    const double cost_full = 3.0 * full * (std::log2(full) + 1);
    const double cost_blk =
        blocked_cost(static_cast<std::size_t>(std::max(la, lb)),
                     static_cast<std::size_t>(std::min(la, lb)), t.len);
    return la + lb + std::min(cost_full, cost_blk);  // densify + transform
}

Node combine(const Node& a, const Node& b, i64 feas_lo, i64 feas_hi) {
    if (a.empty() || b.empty()) return Node{};
    const TargetRange t = target_range(a, b, feas_lo, feas_hi);
    if (t.empty) return Node{};

    if (a.sparse && b.sparse && u128(a.nnz) * b.nnz <= kScatterCost)
        return combine_scatter(a, b, t);

    const u128 bound = conv_value_bound(a.mass, a.maxc, b.mass, b.maxc);

    if (a.sparse && !b.sparse && u128(a.nnz) * b.dist.counts.size() <= kShiftAddCost &&
        (b.dist.counts.size() == 1 || b.dist.stride % t.stride == 0))
        return combine_shift_add(a, b, t);
    if (b.sparse && !a.sparse && u128(b.nnz) * a.dist.counts.size() <= kShiftAddCost &&
        (a.dist.counts.size() == 1 || a.dist.stride % t.stride == 0))
        return combine_shift_add(b, a, t);

    auto densify_for = [&](const Node& n) -> Dist {
        if (!n.sparse && (n.dist.counts.size() == 1 || n.dist.stride == t.stride))
            return n.dist;
        const std::size_t len = static_cast<std::size_t>((n.hi - n.lo) / t.stride) + 1;
        return densify_node(n, t.stride, n.lo, len);
    };
    Dist da = densify_for(a);
    Dist db = densify_for(b);
    if (da.counts.size() == 1) da.stride = t.stride;
    if (db.counts.size() == 1) db.stride = t.stride;
    return combine_dense(da, db, bound, t);
}

Dist node_to_dist(Node n) {
    if (n.empty()) return Dist{0, 1, {}};
    if (n.sparse) {
        const i64 stride = n.stride();
        const std::size_t len = static_cast<std::size_t>((n.hi - n.lo) / stride) + 1;
        return densify_node(n, stride, n.lo, len);
    }
    return std::move(n.dist);
}

}  // namespace

// ---------------------------------------------------------------------------
// Public interface.
// ---------------------------------------------------------------------------

u128 Dist::mass() const {
    u128 m = 0;
    for (u64 c : counts) m = checked_add_u128(m, c);
    return m;
}

u64 Dist::max_count() const {
    u64 m = 0;
    for (u64 c : counts) m = std::max(m, c);
    return m;
}

Support Support::from_values(std::vector<i64> values) {
    std::sort(values.begin(), values.end());
    Support s;
    s.items.reserve(values.size());
    for (i64 v : values) {
        if (!s.items.empty() && s.items.back().first == v)
            s.items.back().second++;
        else
            s.items.push_back({v, 1});
    }
    return s;
}

Support Support::from_weighted(std::vector<std::pair<i64, u64>> items) {
    std::sort(items.begin(), items.end());
    Support s;
    for (auto& [v, c] : items) {
        if (c == 0) continue;
        if (!s.items.empty() && s.items.back().first == v) {
            const u64 sum = s.items.back().second + c;
            if (sum < c) throw capacity_error("support weight overflow");
            s.items.back().second = sum;
        } else {
            s.items.push_back({v, c});
        }
    }
    return s;
}

Dist densify(const Support& s) { return node_to_dist(node_from_items(s.items)); }

Dist aggregate(std::vector<Support> parts, i64 window_lo, i64 window_hi) {
    if (window_lo > window_hi) return Dist{0, 1, {}};
    if (parts.empty()) {
        if (window_lo <= 0 && 0 <= window_hi) return Dist{0, 1, {1}};
        return Dist{0, 1, {}};
    }

    std::vector<Node> nodes;
    nodes.reserve(parts.size());
    for (auto& p : parts) {
        Node n = node_from_items(std::move(p.items));
        if (n.empty()) return Dist{0, 1, {}};
        nodes.push_back(std::move(n));
    }

    auto others_bounds = [&](std::size_t skip_i, std::size_t skip_j) {
        i128 lo = 0, hi = 0;
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            if (k == skip_i || k == skip_j) continue;
            lo += nodes[k].lo;
            hi += nodes[k].hi;
        }
        return std::pair<i128, i128>(lo, hi);
    };

    auto clamp64 = [](i128 v) {
        const i128 lim = i128(1) << 62;
        if (v > lim) v = lim;
        if (v < -lim) v = -lim;
        return static_cast<i64>(v);
    };

    // Pre-trim each summand to what the others can still compensate for.
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        auto [olo, ohi] = others_bounds(i, i);
        Node t = trim_node(std::move(nodes[i]), clamp64(i128(window_lo) - ohi),
                           clamp64(i128(window_hi) - olo));
        if (t.empty()) return Dist{0, 1, {}};
        nodes[i] = std::move(t);
    }

    // Pair selection: cheapest combination first; ties go to the smaller
    // result, then to the pair whose value range is centred on the window.
    // Centred partial sums are the ones later trims can shrink, so cancelling
    // pairs merge early and one-sided bulk waits for the final windowed pass.
    const i128 window_mid = (i128(window_lo) + window_hi) / 2;
    while (nodes.size() > 1) {
        std::size_t best_i = 0, best_j = 1;
        double best_cost = 1e301;
        u128 best_len = ~u128(0);
        u128 best_off = ~u128(0);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            for (std::size_t j = i + 1; j < nodes.size(); ++j) {
                auto [olo, ohi] = others_bounds(i, j);
                const TargetRange t =
                    target_range(nodes[i], nodes[j], clamp64(i128(window_lo) - ohi),
                                 clamp64(i128(window_hi) - olo));
                const double cost = estimate_cost(nodes[i], nodes[j], t);
                const u128 len = t.empty ? 0 : t.len;
                const i128 mid = t.empty ? window_mid : (i128(t.lo) + t.hi) / 2;
                const i128 d = mid - window_mid;
                const u128 off = u128(d < 0 ? -d : d);
                if (cost < best_cost ||
                    (cost == best_cost &&
                     (len < best_len || (len == best_len && off < best_off)))) {
                    best_cost = cost;
                    best_len = len;
                    best_off = off;
                    best_i = i;
                    best_j = j;
                }
            }
        }
        auto [olo, ohi] = others_bounds(best_i, best_j);
        Node merged = combine(nodes[best_i], nodes[best_j], clamp64(i128(window_lo) - ohi),
                              clamp64(i128(window_hi) - olo));
        if (merged.empty()) return Dist{0, 1, {}};
        nodes.erase(nodes.begin() + best_j);
        nodes[best_i] = std::move(merged);
    }

    return node_to_dist(trim_node(std::move(nodes[0]), window_lo, window_hi));
}

u128 inner_product(const Dist& a, const Dist& b, i64 window_lo, i64 window_hi) {
    if (a.empty() || b.empty()) return 0;
    const i64 lo = std::max({window_lo, a.min_value(), b.min_value()});
    const i64 hi = std::min({window_hi, a.max_value(), b.max_value()});
    if (lo > hi) return 0;

    // Solve v = a.offset (mod a.stride) and v = b.offset (mod b.stride).
    const i64 g = gcd_i64(a.stride, b.stride);
    const i64 diff = b.offset - a.offset;
    if (((diff % g) + g) % g != 0) return 0;
    const i128 lcm = i128(a.stride) / g * b.stride;

    i64 inv = 0;
    const i64 m2 = b.stride / g;
    {
        i64 r0 = ((a.stride / g) % m2 + m2) % m2, r1 = m2;
        i64 s0 = 1, s1 = 0;
        while (r1 != 0) {
            const i64 q = r0 / r1;
            const i64 r2 = r0 - q * r1;
            r0 = r1;
            r1 = r2;
            const i64 s2 = s0 - q * s1;
            s0 = s1;
            s1 = s2;
        }
        inv = ((s0 % m2) + m2) % m2;
    }
    const i128 t0 = m2 == 1 ? 0 : (i128(((diff / g) % m2 + m2) % m2) * inv) % m2;
    const i128 v0 = i128(a.offset) + i128(a.stride) * t0;  // one solution mod lcm

    const i128 delta = i128(lo) - v0;
    const i128 steps = delta >= 0 ? (delta + lcm - 1) / lcm : -((-delta) / lcm);
    i128 v = v0 + steps * lcm;

    u128 total = 0;
    for (; v <= hi; v += lcm) {
        const std::size_t ia = static_cast<std::size_t>((v - a.offset) / a.stride);
        const std::size_t ib = static_cast<std::size_t>((v - b.offset) / b.stride);
        total = checked_add_u128(total, u128(a.counts[ia]) * b.counts[ib]);
    }
    return total;
}

Dist convolve(const Dist& a, const Dist& b) {
    Node na = node_from_dist(a);
    Node nb = node_from_dist(b);
    if (na.empty() || nb.empty()) return Dist{0, 1, {}};
    const i64 big = i64(1) << 62;
    return node_to_dist(combine(na, nb, -big, big));
}

}  // namespace mono::series
