#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace slicegf {

using Digit = std::uint32_t;

/// Largest supported element width in bits (p < 2^16).
inline constexpr int kMaxBits = 16;

bool is_prime(std::uint64_t value) noexcept;

/// An odd prime p together with the constants the sliced adders need.
///
/// `bits()` is r = floor(log2 p) + 1. `correction()` is 2^r - p; its binary
/// expansion is the vector added back when a carry leaves the top plane of a
/// non-Mersenne field. `one_positions()` lists the set bits of p.
class FieldSpec {
public:
    /// Throws InputError unless 3 <= p < 2^16 and p is prime.
    explicit FieldSpec(unsigned p);

    unsigned p() const noexcept { return p_; }
    int bits() const noexcept { return bits_; }
    bool is_mersenne() const noexcept { return correction_ == 1; }
    unsigned correction() const noexcept { return correction_; }
    bool correction_bit(int plane) const noexcept { return ((correction_ >> plane) & 1u) != 0; }
    std::span<const int> one_positions() const noexcept { return one_positions_; }

    friend bool operator==(const FieldSpec& a, const FieldSpec& b) noexcept { return a.p_ == b.p_; }

private:
    unsigned p_;
    int bits_;
    unsigned correction_;
    std::vector<int> one_positions_;
};

/// n digits of F_p, each in [0, p-1].
class DenseVector {
public:
    /// Throws InputError if any digit is >= p.
    DenseVector(FieldSpec field, std::vector<Digit> digits);
    static DenseVector zeros(FieldSpec field, std::size_t n);

    const FieldSpec& field() const noexcept { return field_; }
    std::span<const Digit> digits() const noexcept { return digits_; }
    std::size_t size() const noexcept { return digits_.size(); }
    Digit operator[](std::size_t i) const noexcept { return digits_[i]; }

    friend bool operator==(const DenseVector&, const DenseVector&) = default;

private:
    FieldSpec field_;
    std::vector<Digit> digits_;
};

} // namespace slicegf
