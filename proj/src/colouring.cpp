// colouring.cpp
#include "mono/colouring.hpp"

#include <fstream>
#include <sstream>

namespace mono::colourings {

Colouring::Colouring(i64 n, u64 r, std::vector<std::uint32_t> assignment)
    : n_(n), r_(r), assignment_(std::move(assignment)) {
    require(n >= 1, "colouring: domain size must be positive");
    require(r >= 1, "colouring: colour count must be positive");
    require(assignment_.size() == static_cast<std::size_t>(n),
            "colouring: assignment must cover [N]");
    for (std::uint32_t c : assignment_)
        require(c >= 1 && c <= r, "colouring: colour index out of range");
}

std::vector<i64> Colouring::colour_class(u64 j) const {
    std::vector<i64> out;
    for (i64 x = 1; x <= n_; ++x)
        if (colour(x) == j) out.push_back(x);
    return out;
}

std::vector<std::vector<i64>> Colouring::all_classes() const {
    std::vector<std::vector<i64>> out(r_);
    for (i64 x = 1; x <= n_; ++x) out[colour(x) - 1].push_back(x);
    return out;
}

Colouring extremal_colouring(i64 n, u64 r) {
    require(n >= 2, "extremal colouring: need n >= 2");
    require(r >= 1, "extremal colouring: need r >= 1");
    // thresholds[j] = floor(n^{1/2^j}); iterating isqrt is exact by the
    // nested-floor property floor(sqrt(floor(sqrt(n)))) = floor(n^{1/4}).
    std::vector<i64> thresholds(r + 1);
    thresholds[0] = n;
    for (u64 j = 1; j <= r; ++j)
        thresholds[j] = static_cast<i64>(isqrt_u64(static_cast<u64>(thresholds[j - 1])));

    std::vector<std::uint32_t> assign(static_cast<std::size_t>(n));
    for (i64 x = 1; x <= n; ++x) {
        std::uint32_t c = static_cast<std::uint32_t>(r);  // head interval [1, thresholds[r-1]]
        for (u64 j = 1; j < r; ++j) {
            if (x > thresholds[j]) {
                c = static_cast<std::uint32_t>(j);
                break;
            }
        }
        assign[static_cast<std::size_t>(x - 1)] = c;
    }
    return Colouring(n, r, std::move(assign));
}

Colouring congruence_colouring(i64 n, i64 modulus) {
    require(modulus >= 1, "congruence colouring: modulus must be >= 1");
    std::vector<std::uint32_t> assign(static_cast<std::size_t>(n));
    for (i64 x = 1; x <= n; ++x)
        assign[static_cast<std::size_t>(x - 1)] = static_cast<std::uint32_t>(1 + (x % modulus));
    return Colouring(n, static_cast<u64>(modulus), std::move(assign));
}

Colouring random_colouring(i64 n, u64 r, u64 seed) {
    SplitMix64 rng(seed);
    std::vector<std::uint32_t> assign(static_cast<std::size_t>(n));
    for (auto& c : assign) c = static_cast<std::uint32_t>(1 + rng.below(r));
    return Colouring(n, r, std::move(assign));
}

void write_colouring(const Colouring& c, std::ostream& out) {
    out << c.n() << ' ' << c.r() << '\n';
    for (i64 x = 1; x <= c.n(); ++x) out << c.colour(x) << '\n';
}

void save_colouring(const Colouring& c, const std::string& path) {
    std::ofstream out(path);
    require(out.good(), "cannot open for writing: " + path);
    write_colouring(c, out);
    out.flush();
    require(out.good(), "write failed: " + path);
}

Colouring read_colouring(std::istream& in) {
    std::string line;
    long lineno = 0;

    auto next_line = [&]() -> std::string& {
        if (!std::getline(in, line)) throw parse_error("colouring file truncated", lineno + 1);
        ++lineno;
        return line;
    };

    std::istringstream header(next_line());
    i64 n = 0;
    i64 r = 0;
    if (!(header >> n >> r) || n < 1 || r < 1)
        throw parse_error("colouring header must be 'N r' with positive integers", lineno);

    std::vector<std::uint32_t> assign;
    assign.reserve(static_cast<std::size_t>(n));
    for (i64 x = 1; x <= n; ++x) {
        std::istringstream row(next_line());
        i64 c = 0;
        if (!(row >> c)) throw parse_error("expected a colour index", lineno);
        if (c < 1 || c > r)
            throw parse_error("colour index " + std::to_string(c) + " outside [1, " +
                                  std::to_string(r) + "]",
                              lineno);
        assign.push_back(static_cast<std::uint32_t>(c));
    }
    return Colouring(n, static_cast<u64>(r), std::move(assign));
}

Colouring load_colouring(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open colouring file: " + path);
    return read_colouring(in);
}

Colouring lift_colouring(const Colouring& c, const LiftMode& mode, i64 out_n) {
    const i64 n = c.n();
    const u64 r = c.r();

    if (mode.kind == LiftMode::Halving) {
        if (out_n == 0) out_n = 2 * n;
        std::vector<std::uint32_t> assign(static_cast<std::size_t>(out_n));
        for (i64 m = 1; m <= out_n; ++m) {
            if (m % 2 == 1) {
                assign[m - 1] = static_cast<std::uint32_t>(r + 1);
            } else {
                if (m / 2 > n)
                    throw usage_error("halving lift: index " + std::to_string(m) +
                                      " refers past the base colouring");
                assign[m - 1] = c.colour(m / 2);
            }
        }
        return Colouring(out_n, r + 1, std::move(assign));
    }

    const i64 a = mode.a;
    const i64 b = mode.b;
    require(a >= 1 && b >= 1, "modular lift: need a, b >= 1");
    if (out_n == 0) out_n = (n / b) * a;
    require(out_n >= 1, "modular lift: empty lifted domain");
    std::vector<std::uint32_t> assign(static_cast<std::size_t>(out_n));
    for (i64 m = 1; m <= out_n; ++m) {
        if (m % a == 0) {
            i64 ref = b * (m / a);
            if (ref > n)
                throw usage_error("modular lift: index " + std::to_string(m) + " references " +
                                  std::to_string(ref) + " beyond the base domain");
            assign[m - 1] = c.colour(ref);
        } else {
            assign[m - 1] = static_cast<std::uint32_t>(r + static_cast<u64>(m % a));
        }
    }
    return Colouring(out_n, r + static_cast<u64>(a), std::move(assign));
}

}  // namespace mono::colourings
