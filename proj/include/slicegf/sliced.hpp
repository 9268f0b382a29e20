#pragma once

// Sliced-bit storage: bit j of element i lives in plane j, word i / W, bit i % W.

#include <bit>
#include <concepts>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "slicegf/errors.hpp"
#include "slicegf/field.hpp"

namespace slicegf {

template <class Word>
concept SliceWord = std::same_as<Word, std::uint32_t> || std::same_as<Word, std::uint64_t>;

template <SliceWord Word>
inline constexpr int kWordBits = std::numeric_limits<Word>::digits;

template <SliceWord Word>
constexpr std::size_t words_for(std::size_t n) noexcept
{
    return (n + kWordBits<Word> - 1) / kWordBits<Word>;
}

/// Mask of the valid lanes in the last word of an n-lane plane (all ones when
/// n is a multiple of the word width, zero when n == 0).
template <SliceWord Word>
constexpr Word tail_mask(std::size_t n) noexcept
{
    if (n == 0) return 0;
    const std::size_t rem = n % kWordBits<Word>;
    return rem == 0 ? ~Word{0} : static_cast<Word>((Word{1} << rem) - 1);
}

template <SliceWord Word>
class SlicedVector {
public:
    static constexpr int word_width = kWordBits<Word>;

    /// The zero vector of length n.
    SlicedVector(FieldSpec field, std::size_t n)
        : field_(std::move(field)), n_(n), words_(words_for<Word>(n)),
          data_(static_cast<std::size_t>(field_.bits()) * words_, Word{0})
    {
    }

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t size() const noexcept { return n_; }
    std::size_t words() const noexcept { return words_; }
    int bits() const noexcept { return field_.bits(); }

    std::span<const Word> plane(int j) const noexcept { return {data_.data() + j * words_, words_}; }
    std::span<Word> plane(int j) noexcept { return {data_.data() + j * words_, words_}; }

    /// Plane-major storage: plane j occupies [j * words(), (j + 1) * words()).
    std::span<const Word> data() const noexcept { return data_; }
    std::span<Word> data() noexcept { return data_; }

    friend bool operator==(const SlicedVector&, const SlicedVector&) = default;

private:
    FieldSpec field_;
    std::size_t n_;
    std::size_t words_;
    std::vector<Word> data_;
};

/// One plane marking the coordinates declared nonzero.
template <SliceWord Word>
class NonzeroMask {
public:
    explicit NonzeroMask(std::size_t n) : n_(n), bits_(words_for<Word>(n), Word{0}) {}
    NonzeroMask(std::size_t n, std::vector<Word> bits) : n_(n), bits_(std::move(bits))
    {
        if (bits_.size() != words_for<Word>(n)) throw InputError("mask word count does not match length");
        if (!bits_.empty()) bits_.back() &= tail_mask<Word>(n);
    }

    std::size_t size() const noexcept { return n_; }
    std::span<const Word> bits() const noexcept { return bits_; }
    bool test(std::size_t i) const noexcept { return (bits_[i / kWordBits<Word>] >> (i % kWordBits<Word>)) & 1u; }

    friend bool operator==(const NonzeroMask&, const NonzeroMask&) = default;

private:
    std::size_t n_;
    std::vector<Word> bits_;
};

template <SliceWord Word>
SlicedVector<Word> pack(const DenseVector& v)
{
    SlicedVector<Word> out(v.field(), v.size());
    const int r = v.field().bits();
    const auto digits = v.digits();
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const std::size_t word = i / kWordBits<Word>;
        const Word lane = Word{1} << (i % kWordBits<Word>);
        for (int j = 0; j < r; ++j) {
            if ((digits[i] >> j) & 1u) out.plane(j)[word] |= lane;
        }
    }
    return out;
}

/// Throws InvariantViolation if a column decodes to a value >= p.
template <SliceWord Word>
DenseVector unpack(const SlicedVector<Word>& s)
{
    std::vector<Digit> digits(s.size(), 0);
    const int r = s.bits();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const std::size_t word = i / kWordBits<Word>;
        const int lane = static_cast<int>(i % kWordBits<Word>);
        Digit value = 0;
        for (int j = 0; j < r; ++j) value |= static_cast<Digit>((s.plane(j)[word] >> lane) & 1u) << j;
        if (value >= s.field().p()) {
            throw InvariantViolation("sliced column " + std::to_string(i) + " decodes to " + std::to_string(value) +
                                     " >= p");
        }
        digits[i] = value;
    }
    return DenseVector(s.field(), std::move(digits));
}

/// Hamming weight: popcount of the OR of all planes (zero is the all-zero column).
template <SliceWord Word>
std::size_t weight(const SlicedVector<Word>& s) noexcept
{
    std::size_t total = 0;
    for (std::size_t w = 0; w < s.words(); ++w) {
        Word any = 0;
        for (int j = 0; j < s.bits(); ++j) any |= s.plane(j)[w];
        total += static_cast<std::size_t>(std::popcount(any));
    }
    return total;
}

template <SliceWord Word>
std::size_t weight_of_mask(const NonzeroMask<Word>& m) noexcept
{
    std::size_t total = 0;
    for (Word w : m.bits()) total += static_cast<std::size_t>(std::popcount(w));
    return total;
}

/// OR of all planes as a mask; the nonzero pattern of the vector.
template <SliceWord Word>
NonzeroMask<Word> support(const SlicedVector<Word>& s)
{
    std::vector<Word> bits(s.words(), Word{0});
    for (int j = 0; j < s.bits(); ++j) {
        for (std::size_t w = 0; w < s.words(); ++w) bits[w] |= s.plane(j)[w];
    }
    return NonzeroMask<Word>(s.size(), std::move(bits));
}

} // namespace slicegf
