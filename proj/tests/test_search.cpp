#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "mono/search.hpp"

using namespace mono;
using namespace mono::search;
using mono::colourings::Colouring;

namespace {

// Independent oracle: quadruple scan with no admissibility shortcuts.
std::set<std::pair<i64, i64>> hindman_oracle(const Colouring& c, i64 limit) {
    std::set<std::pair<i64, i64>> out;
    for (i64 x = 1; x <= limit; ++x)
        for (i64 y = x; y <= limit; ++y) {
            if (x + y > c.n() || x * y > c.n()) continue;
            const auto col = c.colour(x);
            if (c.colour(y) == col && c.colour(x + y) == col && c.colour(x * y) == col)
                out.insert({x, y});
        }
    return out;
}

}  // namespace

TEST_CASE("hindman_search on the 1-colouring of [18]") {
    Colouring ones(18, 1, std::vector<std::uint32_t>(18, 1));
    auto configs = hindman_search(ones, 18);
    auto expect = hindman_oracle(ones, 18);

    std::set<std::pair<i64, i64>> got;
    for (const auto& cfg : configs) {
        got.insert({cfg.x, cfg.y});
        CHECK(cfg.sum == cfg.x + cfg.y);
        CHECK(cfg.product == cfg.x * cfg.y);
    }
    CHECK(got == expect);
    CHECK(got.count({2, 2}) == 1);
    CHECK(got.count({3, 6}) == 1);

    // output sorted by (x, y)
    for (std::size_t i = 1; i < configs.size(); ++i) {
        CHECK(std::pair(configs[i - 1].x, configs[i - 1].y) <
              std::pair(configs[i].x, configs[i].y));
    }

    // degeneracy flags
    for (const auto& cfg : configs)
        CHECK(cfg.degenerate == (cfg.x == cfg.y || cfg.sum == cfg.product));
}

TEST_CASE("colour separation removes configurations") {
    std::vector<std::uint32_t> assign(18, 1);
    assign[6 - 1] = 2;  // separate 6 from 3
    Colouring c(18, 2, assign);
    auto configs = hindman_search(c, 18);
    for (const auto& cfg : configs) CHECK(!(cfg.x == 3 && cfg.y == 6));
}

TEST_CASE("admissibility: xy must stay within the domain") {
    Colouring ones(6, 1, std::vector<std::uint32_t>(6, 1));
    auto configs = hindman_search(ones, 6);
    for (const auto& cfg : configs) {
        CHECK(cfg.product <= 6);
        CHECK(cfg.sum <= 6);
    }
    // limit so small that nothing fits: x = y = 1 gives xy = 1 but x+y = 2;
    // on [1] nothing is admissible
    Colouring one(1, 1, {1});
    CHECK(hindman_search(one, 1).empty());
}

TEST_CASE("monochromaticity is re-verified post hoc") {
    auto c = colourings::random_colouring(400, 3, 5);
    for (const auto& cfg : hindman_search(c, 400)) {
        const auto col = c.colour(cfg.x);
        CHECK(c.colour(cfg.y) == col);
        CHECK(c.colour(cfg.sum) == col);
        CHECK(c.colour(cfg.product) == col);
    }
}

TEST_CASE("config_to_bad_solution: algebraic identities") {
    auto s1 = config_to_bad_solution({6, 10, 16, 60, false});
    CHECK(s1.x1 == 8);
    CHECK(s1.x2 == 3);
    CHECK(s1.y == 5);
    CHECK(s1.z == 30);
    CHECK(i64(64) - 9 == 25 + 30);

    auto s2 = config_to_bad_solution({2, 2, 4, 4, true});
    CHECK(s2.x1 == 2);
    CHECK(s2.x2 == 1);
    CHECK(s2.y == 1);
    CHECK(s2.z == 2);

    CHECK_THROWS_AS(config_to_bad_solution({3, 6, 9, 18, false}), usage_error);
}

TEST_CASE("halving-lifted colourings only admit even configurations") {
    auto base = colourings::random_colouring(300, 2, 77);
    auto lifted = colourings::lift_colouring(base, colourings::LiftMode::halving());
    auto configs = hindman_search(lifted, lifted.n());
    CHECK(!configs.empty());
    for (const auto& cfg : configs) {
        CHECK(cfg.x % 2 == 0);
        CHECK(cfg.y % 2 == 0);
        // the lifted solution exists and satisfies the equation exactly
        auto sol = config_to_bad_solution(cfg);
        CHECK(i128(sol.x1) * sol.x1 - i128(sol.x2) * sol.x2 == i128(sol.y) * sol.y + sol.z);
    }
}

TEST_CASE("moreira identity: two-variable cancelling pair") {
    // a = (1,-1), u = (1,-1): scaled a = 2(1*1 + (-1)(-1)) = 4
    auto res = moreira_identity_check({1, -1}, {1, 2}, {1, -1}, {2, -1}, 4, 4, 4);
    CHECK(res.a_scaled == 4);
    CHECK(res.b_sum == 1);
    CHECK(res.holds);
}

TEST_CASE("moreira identity: sign-flip rule when sum a_i u_i = 0") {
    // u = (1,1,1) against a = (1,1,-2): weighted sum 0, flip first entry,
    // then the whole vector, landing on (1,-1,-1) with a = 4
    auto res = moreira_identity_check({1, 1, 1}, {0}, {1, 1, -2}, {1}, 4, 4, 1);
    CHECK(res.a_scaled == 4);
    CHECK(res.u_used == std::vector<i64>{1, -1, -1});
    CHECK(res.holds);
}

TEST_CASE("moreira identity: degenerate and failing inputs") {
    CHECK_THROWS_AS(moreira_identity_check({0, 0}, {0}, {1, -1}, {1}, 4, 4, 4), usage_error);
    // wrong quadratic relation
    CHECK_THROWS_AS(moreira_identity_check({1, 2}, {0}, {1, -1}, {1}, 4, 4, 4), usage_error);
    // divisibility failure names the offending value
    try {
        moreira_identity_check({1, -1}, {0}, {1, -1}, {1}, 4, 3, 4);
        FAIL("expected divisibility error");
    } catch (const usage_error& e) {
        CHECK(std::string(e.what()).find("y = 3") != std::string::npos);
    }
}

TEST_CASE("moreira identity holds across random admissible inputs") {
    SplitMix64 rng(404);
    for (int trial = 0; trial < 200; ++trial) {
        // build a zero-sum quadratic relation from a cancelling pair
        const i64 u0 = i64(rng.below(5)) + 1;
        std::vector<i64> a{1, -1};
        std::vector<i64> u{u0, u0};  // 1*u0^2 - 1*u0^2 = 0
        std::vector<i64> b{2, -1};
        const i64 v0 = i64(rng.below(4));
        std::vector<i64> v{v0, 2 * v0};  // 2*v0 - 2*v0 = 0

        // after flipping, a = 2*2*u0 = 4u0
        const i64 A = 4 * u0;
        const i64 x = A * (i64(rng.below(6)) + 1);
        const i64 y = A * (i64(rng.below(6)) + 1);
        const i64 z = A * (i64(rng.below(6)) + 1);
        auto res = moreira_identity_check(u, v, a, b, x, y, z);
        CHECK(res.holds);
    }
}
