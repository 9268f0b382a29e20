#include <doctest.h>

#include "oracles.hpp"
#include "slicegf/errors.hpp"
#include "slicegf/mindist.hpp"

using namespace slicegf;

namespace {

GeneratorMatrix matrix(unsigned p, std::size_t k, std::size_t n, std::vector<Digit> entries)
{
    return GeneratorMatrix(FieldSpec(p), k, n, std::move(entries));
}

GeneratorMatrix identity(unsigned p, std::size_t k)
{
    std::vector<Digit> e(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) e[i * k + i] = 1;
    return matrix(p, k, k, e);
}

const GeneratorMatrix& tetracode()
{
    static const GeneratorMatrix g = matrix(3, 2, 4, {1, 0, 1, 1, 0, 1, 1, 2});
    return g;
}

std::vector<EngineOptions> all_option_sets()
{
    std::vector<EngineOptions> out;
    for (int bits = 0; bits < 32; ++bits) {
        EngineOptions o;
        o.use_isometric = bits & 1;
        o.early_termination = bits & 2;
        o.word_width = (bits & 4) ? WordWidth::Bits32 : WordWidth::Bits64;
        o.threads = (bits & 8) ? 3 : 1;
        o.force_generic_arith = bits & 16;
        out.push_back(o);
    }
    return out;
}

} // namespace

TEST_CASE("lower bound evaluations")
{
    CHECK(lower_bound(1, 1, 5, 5) == 2);
    CHECK(lower_bound(2, 2, 10, 10) == 6);
    CHECK(lower_bound(3, 2, 25, 8) == 4);
    // nothing finished yet at g reproduces the full bound of g - 1
    CHECK(partial_lower_bound(3, 0, 2, 10, 10) == lower_bound(2, 2, 10, 10));
    CHECK(partial_lower_bound(3, 2, 2, 10, 10) == lower_bound(3, 2, 10, 10));
    CHECK(partial_lower_bound(3, 1, 2, 10, 10) == 7);
    CHECK(partial_lower_bound(3, 1, 3, 10, 4) == 4 + 3 + 0);
}

TEST_CASE("visit counts")
{
    CHECK(stage_visit_count(5, 1, 7) == 5);
    CHECK(stage_visit_count(5, 2, 7) == 60);
    CHECK(stage_visit_count(5, 6, 7) == 0);
    CHECK(stage_visit_count(200, 100, 65521) == std::numeric_limits<std::uint64_t>::max());
    for (std::size_t k = 1; k < 12; ++k) {
        for (std::size_t g = 1; g <= k; ++g) {
            CHECK(stage_visit_count(k, g, 5) == oracle::binomial(k, g) * oracle::power(4, g - 1));
        }
    }
}

TEST_CASE("enumerate_stage")
{
    SUBCASE("I_2 over F3, g = 2")
    {
        const auto gamma = gamma_set(identity(3, 2));
        const auto r = enumerate_stage(gamma, 0, 2, 10);
        CHECK(r.visited == 2);
        CHECK(r.upper == 2);
    }
    SUBCASE("g = 1 is the minimum row weight")
    {
        const auto g = matrix(5, 3, 6, {1, 0, 0, 1, 1, 1, 0, 1, 0, 0, 2, 0, 0, 0, 1, 3, 0, 0});
        const auto gamma = gamma_set(g);
        const auto r = enumerate_stage(gamma, 0, 1, 100);
        CHECK(r.visited == 3);
        CHECK(r.upper == 2);
        CHECK(enumerate_stage(gamma, 0, 1, 1).upper == 1);
    }
    SUBCASE("g beyond the row count")
    {
        const auto gamma = gamma_set(identity(3, 2));
        const auto r = enumerate_stage(gamma, 0, 3, 9);
        CHECK(r.visited == 0);
        CHECK(r.upper == 9);
        CHECK_THROWS_AS(enumerate_stage(gamma, 1, 1, 9), InputError);
    }
    SUBCASE("random F7 code, g = 2")
    {
        const auto g = random_code(7, 6, 14, 3);
        const auto gamma = gamma_set(g);
        for (const auto& o : all_option_sets()) {
            CHECK(enumerate_stage(gamma, 0, 2, 100, o).visited == oracle::binomial(6, 2) * 6);
        }
    }
}

TEST_CASE("small codes")
{
    for (const auto& o : all_option_sets()) {
        CHECK(minimum_weight(identity(7, 4), o).distance == 1);
        CHECK(minimum_weight(matrix(7, 1, 5, {1, 1, 1, 1, 1}), o).distance == 5);
        CHECK(minimum_weight(tetracode(), o).distance == 3);
        CHECK(minimum_weight(identity(11, 3), o).distance == 1);
    }
    CHECK(brute_force_min_weight(identity(3, 3)) == 1);
    CHECK(brute_force_min_weight(tetracode()) == 3);
    CHECK_THROWS_AS(minimum_weight(matrix(3, 2, 3, {1, 2, 0, 2, 1, 0})), RankDeficientError);
    EngineOptions zero_threads;
    zero_threads.threads = 0;
    CHECK_THROWS_AS(minimum_weight(tetracode(), zero_threads), InputError);
}

TEST_CASE("brute force budget")
{
    const auto g = random_code(7, 10, 20, 1);
    CHECK_THROWS_AS(brute_force_min_weight(g), BudgetExceeded);
    CHECK_THROWS_AS(brute_force_min_weight(random_code(3, 5, 8, 1), 100), BudgetExceeded);
    CHECK_NOTHROW(brute_force_min_weight(random_code(3, 5, 8, 1), 242));
    CHECK_THROWS_AS(brute_force_min_weight(random_code(3, 40, 40, 1)), BudgetExceeded);
}

TEST_CASE("engine against the dense oracle")
{
    struct Case {
        unsigned p;
        std::size_t k, n;
    };
    const Case cases[] = {{3, 6, 12}, {3, 8, 20}, {5, 5, 15}, {7, 6, 20}, {7, 8, 16}, {11, 4, 14}, {13, 3, 10},
                          {31, 3, 9}, {3, 1, 7}, {5, 7, 7}, {7, 2, 30}, {17, 3, 12}};
    std::uint64_t seed = 100;
    for (const auto& c : cases) {
        for (int rep = 0; rep < 3; ++rep, ++seed) {
            const auto g = random_code(c.p, c.k, c.n, seed);
            const auto expected = oracle::min_distance({g.entries().begin(), g.entries().end()}, c.k, c.n, c.p);
            CAPTURE(c.p);
            CAPTURE(c.k);
            CAPTURE(c.n);
            CAPTURE(seed);
            CHECK(brute_force_min_weight(g) == expected);
            for (const auto& o : all_option_sets()) CHECK(minimum_weight(g, o).distance == expected);
        }
    }
}

TEST_CASE("bound bookkeeping")
{
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const unsigned p = seed % 2 ? 3 : 7;
        const auto g = random_code(p, 4 + seed % 5, 12 + seed % 13, seed);
        for (const bool early : {false, true}) {
            EngineOptions o;
            o.early_termination = early;
            const auto result = minimum_weight(g, o);
            const auto& s = result.state;
            CHECK(result.distance <= g.n() - g.k() + 1);
            CHECK(s.upper == result.distance);
            CHECK(s.lower >= 1);
            std::size_t previous_lower = 1;
            std::size_t previous_upper = g.n() - g.k() + 1;
            for (const auto& snap : s.snapshots) {
                CHECK(snap.lower > previous_lower);
                CHECK(snap.upper <= previous_upper);
                previous_lower = snap.lower;
                previous_upper = snap.upper;
            }
            for (const auto& stage : s.stage_log) {
                if (!early) {
                    CHECK(stage.visited == stage_visit_count(g.k(), stage.g, p));
                }
                CHECK(stage.upper_after <= g.n() - g.k() + 1);
            }
            if (!early) CHECK_FALSE(s.terminated_early);
        }
    }
}
