#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "slicegf/arith.hpp"

using namespace slicegf;

namespace {

template <SliceWord Word>
SlicedVector<Word> sliced(unsigned p, std::vector<Digit> digits)
{
    return pack<Word>(DenseVector(FieldSpec(p), std::move(digits)));
}

template <SliceWord Word>
std::vector<Digit> dense(const SlicedVector<Word>& s)
{
    const auto d = unpack(s);
    return {d.digits().begin(), d.digits().end()};
}

/// Every pair (a, b) in F_p x F_p, one per lane.
struct Pairs {
    std::vector<Digit> a, b;
};

Pairs all_pairs(unsigned p)
{
    Pairs out;
    for (unsigned x = 0; x < p; ++x) {
        for (unsigned y = 0; y < p; ++y) {
            out.a.push_back(x);
            out.b.push_back(y);
        }
    }
    return out;
}

} // namespace

TEST_CASE("worked examples of the looping adders")
{
    SUBCASE("F7 5 + 2: loop not entered, t = 1")
    {
        AddTrace<std::uint64_t> trace;
        const auto c = add_generic_mersenne(sliced<std::uint64_t>(7, {5}), sliced<std::uint64_t>(7, {2}), &trace);
        CHECK(dense(c) == std::vector<Digit>{0});
        CHECK(trace.iterations == 0);
        CHECK((trace.t[0] & 1u) == 1u);
    }
    SUBCASE("F7 5 + 6: three iterations, t = 0")
    {
        AddTrace<std::uint64_t> trace;
        const auto c = add_generic_mersenne(sliced<std::uint64_t>(7, {5}), sliced<std::uint64_t>(7, {6}), &trace);
        CHECK(dense(c) == std::vector<Digit>{4});
        CHECK(trace.iterations == 3);
        CHECK((trace.t[0] & 1u) == 0u);
    }
    SUBCASE("F11 10 + 9: four iterations, t = 0")
    {
        AddTrace<std::uint32_t> trace;
        const auto c = add_generic_any(sliced<std::uint32_t>(11, {10}), sliced<std::uint32_t>(11, {9}), &trace);
        CHECK(dense(c) == std::vector<Digit>{8});
        CHECK(trace.iterations == 4);
        CHECK((trace.t[0] & 1u) == 0u);
    }
    SUBCASE("F11 5 + 7 needs the conditional subtraction")
    {
        CHECK(dense(add_generic_any(sliced<std::uint64_t>(11, {5}), sliced<std::uint64_t>(11, {7}))) ==
              std::vector<Digit>{1});
    }
}

TEST_CASE_TEMPLATE("exhaustive adder tables", Word, std::uint32_t, std::uint64_t)
{
    for (const unsigned p : {3u, 5u, 7u, 11u, 13u, 17u, 19u, 31u, 61u, 127u}) {
        CAPTURE(p);
        const auto pairs = all_pairs(p);
        const auto v = sliced<Word>(p, pairs.a);
        const auto w = sliced<Word>(p, pairs.b);
        const auto sum = oracle::add(pairs.a, pairs.b, p);
        const auto diff = oracle::combine(pairs.a, p - 1, pairs.b, p);

        CHECK(dense(add(v, w)) == sum);
        CHECK(dense(add(v, w, AddPath::Generic)) == sum);
        if (FieldSpec(p).is_mersenne()) {
            CHECK(dense(add_generic_mersenne(v, w)) == sum);
            CHECK_THROWS_AS(add_generic_any(v, w), InputError);
        } else {
            CHECK(dense(add_generic_any(v, w)) == sum);
            CHECK_THROWS_AS(add_generic_mersenne(v, w), InputError);
        }
        CHECK(dense(sub(v, w)) == diff);
        CHECK(dense(sub(v, w, AddPath::Generic)) == diff);
        CHECK(dense(negate(w)) == oracle::combine(std::vector<Digit>(pairs.b.size(), 0), p - 1, pairs.b, p));
        for (unsigned h = 0; h < p; ++h) {
            CHECK(dense(scalar_multiply(w, h)) == oracle::combine(std::vector<Digit>(pairs.b.size(), 0), h, pairs.b, p));
        }
        for (unsigned h = 1; h < p; ++h) CHECK(dense(combine(v, h, w)) == oracle::combine(pairs.a, h, pairs.b, p));
    }
}

TEST_CASE_TEMPLATE("specialized adders", Word, std::uint32_t, std::uint64_t)
{
    SUBCASE("F3")
    {
        CHECK(dense(add_f3(sliced<Word>(3, {1}), sliced<Word>(3, {2}))) == std::vector<Digit>{0});
        CHECK(dense(add_f3(sliced<Word>(3, {2}), sliced<Word>(3, {2}))) == std::vector<Digit>{1});
        const auto pairs = all_pairs(3);
        const auto v = sliced<Word>(3, pairs.a), w = sliced<Word>(3, pairs.b);
        CHECK(add_f3(v, w) == add_generic_mersenne(v, w));
        CHECK_THROWS_AS(add_f3(sliced<Word>(7, {1}), sliced<Word>(7, {1})), InputError);
    }
    SUBCASE("F7")
    {
        CHECK(dense(add_f7(sliced<Word>(7, {3}), sliced<Word>(7, {4}))) == std::vector<Digit>{0});
        CHECK(dense(add_f7(sliced<Word>(7, {5}), sliced<Word>(7, {6}))) == std::vector<Digit>{4});
        const auto pairs = all_pairs(7);
        const auto v = sliced<Word>(7, pairs.a), w = sliced<Word>(7, pairs.b);
        CHECK(add_f7(v, w) == add_generic_mersenne(v, w));
        CHECK(dense(add_f7(v, w)) == oracle::add(pairs.a, pairs.b, 7));
    }
    SUBCASE("random F3 lanes")
    {
        std::mt19937_64 rng(3);
        const auto a = oracle::random_digits(rng, 3, 64), b = oracle::random_digits(rng, 3, 64);
        CHECK(dense(add_f3(sliced<Word>(3, a), sliced<Word>(3, b))) == oracle::add(a, b, 3));
    }
    SUBCASE("large random vectors for every field")
    {
        std::mt19937_64 rng(17);
        for (const unsigned p : {3u, 5u, 7u, 11u, 13u, 31u, 8191u, 65521u}) {
            const auto a = oracle::random_digits(rng, p, 777), b = oracle::random_digits(rng, p, 777);
            const auto v = sliced<Word>(p, a), w = sliced<Word>(p, b);
            CHECK(dense(add(v, w)) == oracle::add(a, b, p));
            CHECK(dense(sub(add(v, w), w)) == a);
        }
    }
    SUBCASE("operand mismatches")
    {
        CHECK_THROWS_AS(add(sliced<Word>(3, {1}), sliced<Word>(5, {1})), InputError);
        CHECK_THROWS_AS(add(sliced<Word>(3, {1}), sliced<Word>(3, {1, 1})), InputError);
    }
}

TEST_CASE_TEMPLATE("KAT encoding", Word, std::uint32_t, std::uint64_t)
{
    const KatVector<Word> zero(1);
    CHECK(add_f3_kat(zero, zero) == zero);
    CHECK((zero.plane(0)[0] & 1u) == 1u);
    CHECK((zero.plane(1)[0] & 1u) == 1u);
    CHECK(add_f3_kat(to_kat(sliced<Word>(3, {1})), to_kat(sliced<Word>(3, {2}))) == zero);

    const auto pairs = all_pairs(3);
    const auto v = sliced<Word>(3, pairs.a), w = sliced<Word>(3, pairs.b);
    CHECK(dense(from_kat(add_f3_kat(to_kat(v), to_kat(w)))) == oracle::add(pairs.a, pairs.b, 3));
    CHECK(from_kat(to_kat(v)) == v);
}

TEST_CASE_TEMPLATE("negate and subtract", Word, std::uint32_t, std::uint64_t)
{
    CHECK(dense(negate(sliced<Word>(7, {3}))) == std::vector<Digit>{4});
    CHECK(dense(negate(sliced<Word>(3, {0}))) == std::vector<Digit>{0});
    std::mt19937_64 rng(9);
    const auto a = oracle::random_digits(rng, 3, 100), b = oracle::random_digits(rng, 3, 100);
    const auto v = sliced<Word>(3, a), w = sliced<Word>(3, b);
    CHECK(sub(v, v) == SlicedVector<Word>(FieldSpec(3), 100));
    CHECK(sub(v, w) == combine(v, 2, w));
}

TEST_CASE_TEMPLATE("plane rotations", Word, std::uint32_t, std::uint64_t)
{
    const auto three = sliced<Word>(7, {3});
    CHECK(dense(rotate_planes(three, 1)) == std::vector<Digit>{6});
    CHECK(dense(rotate_planes(three, 2)) == std::vector<Digit>{5});
    CHECK(rotate_planes(three, 0) == three);
    CHECK_THROWS_AS(rotate_planes(three, 3), InputError);
    CHECK_THROWS_AS(rotate_planes(three, -1), InputError);
    CHECK_THROWS_AS(rotate_planes(sliced<Word>(11, {3}), 1), InputError);
}

TEST_CASE_TEMPLATE("combine paths", Word, std::uint32_t, std::uint64_t)
{
    std::mt19937_64 rng(21);
    const auto a = oracle::random_digits(rng, 7, 10'000), b = oracle::random_digits(rng, 7, 10'000);
    const auto v = sliced<Word>(7, a), w = sliced<Word>(7, b);
    CHECK(combine(v, 3, w) == sub(v, rotate_planes(w, 2)));
    CHECK(combine(v, 1, w) == add(v, w));
    for (unsigned h = 1; h < 7; ++h) {
        CAPTURE(h);
        CHECK(dense(combine(v, h, w)) == oracle::combine(a, h, b, 7));
    }
    CHECK_THROWS_AS(combine(v, 0, w), InputError);
    CHECK_THROWS_AS(combine(v, 7, w), InputError);

    const auto a3 = oracle::random_digits(rng, 3, 50), b3 = oracle::random_digits(rng, 3, 50);
    CHECK(combine(sliced<Word>(3, a3), 1, sliced<Word>(3, b3)) == add(sliced<Word>(3, a3), sliced<Word>(3, b3)));
}

TEST_CASE_TEMPLATE("fused F3 add and subtract", Word, std::uint32_t, std::uint64_t)
{
    std::mt19937_64 rng(8);
    const auto a = oracle::random_digits(rng, 3, 200), b = oracle::random_digits(rng, 3, 200);
    const auto v = sliced<Word>(3, a), w = sliced<Word>(3, b);
    const SlicedVector<Word> zero(FieldSpec(3), 200);
    const auto [s, d] = addsub_f3(v, w);
    CHECK(s == add(v, w));
    CHECK(d == sub(v, w));
    const auto [s0, d0] = addsub_f3(v, zero);
    CHECK(s0 == v);
    CHECK(d0 == v);
    const auto [s1, d1] = addsub_f3(zero, w);
    CHECK(s1 == w);
    CHECK(d1 == negate(w));
}

TEST_CASE_TEMPLATE("isometric masks", Word, std::uint32_t, std::uint64_t)
{
    CHECK(weight_of_mask(isometric_sub_mask(sliced<Word>(3, {1, 2, 0}), sliced<Word>(3, {1, 2, 0}))) == 0);
    const auto m = isometric_sub_mask(sliced<Word>(3, {1, 2, 0}), sliced<Word>(3, {1, 0, 0}));
    CHECK_FALSE(m.test(0));
    CHECK(m.test(1));
    CHECK_FALSE(m.test(2));

    CHECK_FALSE(isometric_add_mask(sliced<Word>(3, {1}), sliced<Word>(3, {2})).test(0));
    CHECK_FALSE(isometric_add_mask(sliced<Word>(7, {3}), sliced<Word>(7, {4})).test(0));
    CHECK(isometric_add_mask(sliced<Word>(7, {3}), sliced<Word>(7, {3})).test(0));
    CHECK_FALSE(isometric_add_mask(sliced<Word>(7, {0}), sliced<Word>(7, {0})).test(0));

    for (const unsigned p : {3u, 5u, 7u, 11u, 31u}) {
        const auto pairs = all_pairs(p);
        const auto v = sliced<Word>(p, pairs.a), w = sliced<Word>(p, pairs.b);
        CHECK(isometric_add_mask(v, w) == support(add(v, w)));
        CHECK(isometric_sub_mask(v, w) == support(sub(v, w)));
    }
}
