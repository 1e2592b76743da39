#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mono/colouring.hpp"

using namespace mono;
using namespace mono::colourings;

namespace {

// Independent oracle for floor(n^{1/2^j}): binary search on x^(2^j) <= n.
i64 iterated_root_oracle(i64 n, int j) {
    i64 lo = 1, hi = n;
    while (lo < hi) {
        const i64 mid = (lo + hi + 1) / 2;
        i128 pw = 1;
        bool over = false;
        for (i64 k = 0; k < (i64(1) << j); ++k) {
            pw *= mid;
            if (pw > n) {
                over = true;
                break;
            }
        }
        if (over)
            hi = mid - 1;
        else
            lo = mid;
    }
    return lo;
}

std::string temp_path(const char* name) {
    return std::string("colouring_test_") + name + ".txt";
}

}  // namespace

TEST_CASE("extremal colouring: spec examples") {
    auto c = extremal_colouring(16, 2);
    for (i64 x = 1; x <= 4; ++x) CHECK(c.colour(x) == 2);
    for (i64 x = 5; x <= 16; ++x) CHECK(c.colour(x) == 1);

    auto c1 = extremal_colouring(16, 1);
    for (i64 x = 1; x <= 16; ++x) CHECK(c1.colour(x) == 1);

    // boundaries at 10 = floor(100^{1/2}) and 3 = floor(100^{1/4})
    CHECK(iterated_root_oracle(100, 1) == 10);
    CHECK(iterated_root_oracle(100, 2) == 3);
    auto c3 = extremal_colouring(100, 3);
    CHECK(c3.colour(100) == 1);
    CHECK(c3.colour(11) == 1);
    CHECK(c3.colour(10) == 2);
    CHECK(c3.colour(4) == 2);
    CHECK(c3.colour(3) == 3);
    CHECK(c3.colour(1) == 3);
}

TEST_CASE("extremal colouring: exhaustive partition check for n <= 10^4, r <= 6") {
    for (i64 n = 2; n <= 10000; ++n) {
        for (u64 r = 1; r <= 6; ++r) {
            auto c = extremal_colouring(n, r);
            // boundaries: colour changes only at the iterated roots, and the
            // class of x is determined by threshold comparisons
            i64 acc = 0;
            std::vector<i64> thresholds(r + 1);
            thresholds[0] = n;
            for (u64 j = 1; j <= r; ++j)
                thresholds[j] = iterated_root_oracle(n, static_cast<int>(j));
            for (i64 x = 1; x <= n; ++x) {
                u64 expect = r;
                for (u64 j = 1; j < r; ++j) {
                    if (x > thresholds[j]) {
                        expect = j;
                        break;
                    }
                }
                if (c.colour(x) != expect) {
                    ++acc;  // count mismatches to avoid 10^8 assertions
                }
            }
            REQUIRE(acc == 0);
        }
    }
}

TEST_CASE("extremal threshold monotonicity: adjacent classes touch") {
    for (i64 n : {37, 100, 4096, 65536}) {
        for (u64 r = 2; r <= 5; ++r) {
            auto c = extremal_colouring(n, r);
            for (i64 x = 1; x + 1 <= n; ++x) {
                const i64 a = c.colour(x), b = c.colour(x + 1);
                CHECK(a >= b);  // colours only decrease going up
            }
        }
    }
}

TEST_CASE("congruence colouring parity example") {
    auto c = congruence_colouring(6, 2);
    std::vector<std::uint32_t> expect{2, 1, 2, 1, 2, 1};
    CHECK(c.assignment() == expect);
    CHECK(c.r() == 2);
}

TEST_CASE("random colouring: deterministic in the seed") {
    auto a = random_colouring(1000, 3, 7);
    auto b = random_colouring(1000, 3, 7);
    auto d = random_colouring(1000, 3, 8);
    CHECK(a.assignment() == b.assignment());
    CHECK(a.assignment() != d.assignment());
    for (auto col : a.assignment()) CHECK((col >= 1 && col <= 3));
}

TEST_CASE("save/load round trip is bit exact") {
    auto c = random_colouring(10, 3, 7);
    const auto path = temp_path("roundtrip");
    save_colouring(c, path);
    auto back = load_colouring(path);
    CHECK(back.n() == c.n());
    CHECK(back.r() == c.r());
    CHECK(back.assignment() == c.assignment());

    std::ifstream f1(path);
    std::ostringstream s1;
    s1 << f1.rdbuf();
    const auto path2 = temp_path("roundtrip2");
    save_colouring(back, path2);
    std::ifstream f2(path2);
    std::ostringstream s2;
    s2 << f2.rdbuf();
    CHECK(s1.str() == s2.str());
    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("load rejects malformed files with a line number") {
    std::istringstream zero_colour("3 2\n1\n0\n2\n");
    try {
        read_colouring(zero_colour);
        FAIL("expected parse error");
    } catch (const parse_error& e) {
        CHECK(e.line == 3);
    }

    std::istringstream truncated("4 2\n1\n2\n");
    CHECK_THROWS_AS(read_colouring(truncated), parse_error);

    std::istringstream bad_header("x y\n");
    CHECK_THROWS_AS(read_colouring(bad_header), parse_error);
}

TEST_CASE("halving lift: spec example") {
    Colouring ones(4, 1, {1, 1, 1, 1});
    auto lifted = lift_colouring(ones, LiftMode::halving(), 8);
    CHECK(lifted.r() == 2);
    for (i64 m = 1; m <= 8; ++m) CHECK(lifted.colour(m) == (m % 2 == 1 ? 2u : 1u));
    CHECK_THROWS_AS(lift_colouring(ones, LiftMode::halving(), 10), usage_error);
}

TEST_CASE("modular lift: substitution and residue classes") {
    auto parity = congruence_colouring(8, 2);

    auto l2 = lift_colouring(parity, LiftMode::modular(2, 1), 16);
    CHECK(l2.colour(4) == parity.colour(2));
    CHECK(l2.colour(10) == parity.colour(5));
    CHECK(l2.colour(3) == parity.r() + 1);  // 3 mod 2 = 1
    CHECK(l2.r() == parity.r() + 2);

    auto l3 = lift_colouring(parity, LiftMode::modular(3, 1), 24);
    CHECK(l3.colour(5) == parity.r() + 2);  // 5 mod 3 = 2
    CHECK(l3.colour(6) == parity.colour(2));

    // referencing past the base domain names the offending index
    try {
        lift_colouring(parity, LiftMode::modular(2, 1), 18);
        FAIL("expected domain error");
    } catch (const usage_error& e) {
        CHECK(std::string(e.what()).find("18") != std::string::npos);
    }
}

TEST_CASE("empty colour classes are legal") {
    Colouring c(4, 5, {1, 1, 2, 2});
    CHECK(c.colour_class(3).empty());
    CHECK(c.colour_class(1).size() == 2);
}
