#pragma once

// Word-level sliced arithmetic over plane-major buffers.
//
// Every kernel takes operands laid out as r planes of `words` words each
// (plane j at offset j * words) and writes a result in the same layout. Output
// may alias an input. Inputs must be normalized; outputs are normalized.

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <string>

#include "slicegf/errors.hpp"
#include "slicegf/field.hpp"
#include "slicegf/sliced.hpp"

namespace slicegf::kernel {

/// Optional per-call diagnostics of the looping adders.
template <SliceWord Word>
struct AddTrace {
    int iterations = 0;     ///< Largest loop count seen over all words.
    std::vector<Word> t;    ///< Lanes where the final reduction fired, per word.
};

/// Loop bound for the generic adders. Mersenne carries retire within r passes;
/// the zero-padded shift plus injected correction can take longer, and 2r has
/// held for every prime below 1100.
inline int loop_bound(const FieldSpec& field) noexcept
{
    return field.is_mersenne() ? field.bits() : 2 * field.bits();
}

template <SliceWord Word>
inline void add_f3(const Word* a, const Word* b, Word* out, std::size_t words) noexcept
{
    for (std::size_t w = 0; w < words; ++w) {
        const Word a0 = a[w], a1 = a[words + w];
        const Word b0 = b[w], b1 = b[words + w];
        Word s0 = a0 ^ b0;
        const Word carry0 = a0 & b0;
        const Word s1 = a1 ^ b1 ^ carry0;
        const Word carry1 = a1 & b1;
        s0 ^= carry1;
        const Word t = s0 & s1;
        out[w] = s0 ^ t;
        out[words + w] = s1 ^ t;
    }
}

template <SliceWord Word>
inline void add_f7(const Word* a, const Word* b, Word* out, std::size_t words) noexcept
{
    for (std::size_t w = 0; w < words; ++w) {
        const Word a0 = a[w], a1 = a[words + w], a2 = a[2 * words + w];
        const Word b0 = b[w], b1 = b[words + w], b2 = b[2 * words + w];
        Word s0 = a0 ^ b0;
        Word carry0 = a0 & b0;
        Word s1 = a1 ^ b1 ^ carry0;
        Word carry1 = (a1 & b1) | (a1 & carry0) | (b1 & carry0);
        Word s2 = a2 ^ b2 ^ carry1;
        const Word carry2 = (a2 & b2) | (a2 & carry1) | (b2 & carry1);
        // wrap-around: 8 = 1 (mod 7)
        carry0 = s0 & carry2;
        s0 ^= carry2;
        carry1 = s1 & carry0;
        s1 ^= carry0;
        s2 ^= carry1;
        const Word t = s0 & s1 & s2;
        out[w] = s0 ^ t;
        out[words + w] = s1 ^ t;
        out[2 * words + w] = s2 ^ t;
    }
}

/// Generic adder for p = 2^r - 1: xor/and with the carry vector rotated one
/// plane up (the top carry wraps to plane 0 since 2^r = 1), then the all-ones
/// column is folded back to zero.
template <SliceWord Word>
inline void add_mersenne(const FieldSpec& field, const Word* a, const Word* b, Word* out, std::size_t words,
                         AddTrace<Word>* trace = nullptr)
{
    const int r = field.bits();
    const int bound = loop_bound(field);
    std::array<Word, kMaxBits> d{};
    std::array<Word, kMaxBits> e{};
    if (trace) trace->t.assign(words, Word{0});
    for (std::size_t w = 0; w < words; ++w) {
        Word pending = 0;
        for (int j = 0; j < r; ++j) {
            const Word vj = a[j * words + w], wj = b[j * words + w];
            d[j] = vj ^ wj;
            e[j] = vj & wj;
            pending |= e[j];
        }
        int iterations = 0;
        while (pending != 0) {
            if (++iterations > bound) throw InvariantViolation("Mersenne adder exceeded its loop bound");
            const Word top = e[r - 1];
            Word carry_in = top;
            pending = 0;
            for (int j = 0; j < r; ++j) {
                const Word next_carry = e[j];
                const Word v = d[j];
                d[j] = v ^ carry_in;
                e[j] = v & carry_in;
                pending |= e[j];
                carry_in = next_carry;
            }
        }
        Word t = ~Word{0};
        for (int j = 0; j < r; ++j) t &= d[j];
        for (int j = 0; j < r; ++j) out[j * words + w] = d[j] ^ t;
        if (trace) {
            trace->iterations = std::max(trace->iterations, iterations);
            trace->t[w] = t;
        }
    }
}

/// Generic adder for p != 2^r - 1: zero-padded carry shift, with the carry
/// leaving the top plane re-injected as the correction 2^r - p (three-input
/// majority carry). The loop leaves a value in [0, 2^r) congruent to the sum;
/// a final conditional subtraction of p brings it into [0, p).
template <SliceWord Word>
inline void add_general(const FieldSpec& field, const Word* a, const Word* b, Word* out, std::size_t words,
                        AddTrace<Word>* trace = nullptr)
{
    const int r = field.bits();
    const int bound = loop_bound(field);
    std::array<Word, kMaxBits> d{};
    std::array<Word, kMaxBits> e{};
    if (trace) trace->t.assign(words, Word{0});
    for (std::size_t w = 0; w < words; ++w) {
        Word pending = 0;
        for (int j = 0; j < r; ++j) {
            const Word vj = a[j * words + w], wj = b[j * words + w];
            d[j] = vj ^ wj;
            e[j] = vj & wj;
            pending |= e[j];
        }
        int iterations = 0;
        while (pending != 0) {
            if (++iterations > bound) throw InvariantViolation("general adder exceeded its loop bound");
            const Word epsilon = e[r - 1];
            Word shifted = 0;
            pending = 0;
            for (int j = 0; j < r; ++j) {
                const Word next_shifted = e[j];
                const Word v = d[j];
                const Word ef = field.correction_bit(j) ? epsilon : Word{0};
                d[j] = v ^ shifted ^ ef;
                e[j] = (v & shifted) | (v & ef) | (shifted & ef);
                pending |= e[j];
                shifted = next_shifted;
            }
        }
        // d >= p  <=>  d + (2^r - p) carries out of r bits; then d - p is that sum mod 2^r.
        std::array<Word, kMaxBits> reduced{};
        Word carry = 0;
        for (int j = 0; j < r; ++j) {
            if (field.correction_bit(j)) {
                reduced[j] = ~(d[j] ^ carry);
                carry = d[j] | carry;
            } else {
                reduced[j] = d[j] ^ carry;
                carry = d[j] & carry;
            }
        }
        const Word t = carry;
        for (int j = 0; j < r; ++j) out[j * words + w] = d[j] ^ (t & (d[j] ^ reduced[j]));
        if (trace) {
            trace->iterations = std::max(trace->iterations, iterations);
            trace->t[w] = t;
        }
    }
}

/// Exact addition, dispatching to the fastest adder for the field.
template <SliceWord Word>
inline void add_auto(const FieldSpec& field, const Word* a, const Word* b, Word* out, std::size_t words)
{
    switch (field.p()) {
    case 3: add_f3(a, b, out, words); return;
    case 7: add_f7(a, b, out, words); return;
    default: break;
    }
    if (field.is_mersenne()) {
        add_mersenne(field, a, b, out, words);
    } else {
        add_general(field, a, b, out, words);
    }
}

/// Exact addition through Algorithm-1/5 style loops only (no specializations).
template <SliceWord Word>
inline void add_generic(const FieldSpec& field, const Word* a, const Word* b, Word* out, std::size_t words)
{
    if (field.is_mersenne()) {
        add_mersenne(field, a, b, out, words);
    } else {
        add_general(field, a, b, out, words);
    }
}

/// Fused F3 add and subtract: reads each operand word once.
template <SliceWord Word>
inline void addsub_f3(const Word* a, const Word* b, Word* sum, Word* diff, std::size_t words) noexcept
{
    for (std::size_t w = 0; w < words; ++w) {
        const Word a0 = a[w], a1 = a[words + w];
        const Word b0 = b[w], b1 = b[words + w];
        {
            Word s0 = a0 ^ b0;
            const Word s1 = a1 ^ b1 ^ (a0 & b0);
            s0 ^= a1 & b1;
            const Word t = s0 & s1;
            sum[w] = s0 ^ t;
            sum[words + w] = s1 ^ t;
        }
        {
            // -b swaps the planes of b
            Word s0 = a0 ^ b1;
            const Word s1 = a1 ^ b0 ^ (a0 & b1);
            s0 ^= a1 & b0;
            const Word t = s0 & s1;
            diff[w] = s0 ^ t;
            diff[words + w] = s1 ^ t;
        }
    }
}

/// Weight of a - b without materializing it: popcount of OR over planes of a ^ b.
template <SliceWord Word>
inline std::size_t sub_weight(const Word* a, const Word* b, int r, std::size_t words) noexcept
{
    std::size_t total = 0;
    for (std::size_t w = 0; w < words; ++w) {
        Word any = a[w] ^ b[w];
        for (int j = 1; j < r; ++j) any |= a[j * words + w] ^ b[j * words + w];
        total += static_cast<std::size_t>(std::popcount(any));
    }
    return total;
}

template <SliceWord Word>
inline std::size_t plane_weight(const Word* a, int r, std::size_t words) noexcept
{
    std::size_t total = 0;
    for (std::size_t w = 0; w < words; ++w) {
        Word any = a[w];
        for (int j = 1; j < r; ++j) any |= a[j * words + w];
        total += static_cast<std::size_t>(std::popcount(any));
    }
    return total;
}

} // namespace slicegf::kernel
