#pragma once

#include <utility>

#include "slicegf/kernels.hpp"
#include "slicegf/sliced.hpp"

namespace slicegf {

using kernel::AddTrace;

enum class AddPath {
    Auto,    ///< specialized F3/F7 adders where available
    Generic, ///< always the looping Mersenne / non-Mersenne adder
};

/// Element-wise (v + w) mod p. Throws InputError on field or length mismatch.
template <SliceWord Word>
SlicedVector<Word> add(const SlicedVector<Word>& v, const SlicedVector<Word>& w, AddPath path = AddPath::Auto);

/// Looping adder for p = 2^r - 1. Throws InputError for other fields.
template <SliceWord Word>
SlicedVector<Word> add_generic_mersenne(const SlicedVector<Word>& v, const SlicedVector<Word>& w,
                                        AddTrace<Word>* trace = nullptr);

/// Looping adder for p != 2^r - 1. Throws InputError for Mersenne fields.
template <SliceWord Word>
SlicedVector<Word> add_generic_any(const SlicedVector<Word>& v, const SlicedVector<Word>& w,
                                   AddTrace<Word>* trace = nullptr);

template <SliceWord Word>
SlicedVector<Word> add_f3(const SlicedVector<Word>& v, const SlicedVector<Word>& w);

template <SliceWord Word>
SlicedVector<Word> add_f7(const SlicedVector<Word>& v, const SlicedVector<Word>& w);

template <SliceWord Word>
SlicedVector<Word> negate(const SlicedVector<Word>& v);

template <SliceWord Word>
SlicedVector<Word> sub(const SlicedVector<Word>& v, const SlicedVector<Word>& w, AddPath path = AddPath::Auto);

/// Multiplication by 2^shift for Mersenne p: plane j of the result is plane
/// (j - shift) mod r of w.
template <SliceWord Word>
SlicedVector<Word> rotate_planes(const SlicedVector<Word>& w, int shift);

/// h * w for h in [0, p-1].
template <SliceWord Word>
SlicedVector<Word> scalar_multiply(const SlicedVector<Word>& w, unsigned h);

/// Element-wise (v + h*w) mod p for h in [1, p-1].
template <SliceWord Word>
SlicedVector<Word> combine(const SlicedVector<Word>& v, unsigned h, const SlicedVector<Word>& w);

/// (v + w, v - w) over F3 in one pass.
template <SliceWord Word>
std::pair<SlicedVector<Word>, SlicedVector<Word>> addsub_f3(const SlicedVector<Word>& v, const SlicedVector<Word>& w);

/// Nonzero pattern of v - w: OR over planes of v xor w.
template <SliceWord Word>
NonzeroMask<Word> isometric_sub_mask(const SlicedVector<Word>& v, const SlicedVector<Word>& w);

/// Nonzero pattern of v + w without computing the sum (F3 and Mersenne p);
/// other fields fall back to the exact sum.
template <SliceWord Word>
NonzeroMask<Word> isometric_add_mask(const SlicedVector<Word>& v, const SlicedVector<Word>& w);

/// Two-plane F3 vector in the encoding 0 = (1,1), 1 = (0,1), 2 = (1,0).
/// Lanes past the logical length hold the encoding of zero.
template <SliceWord Word>
class KatVector {
public:
    explicit KatVector(std::size_t n);

    std::size_t size() const noexcept { return n_; }
    std::size_t words() const noexcept { return words_; }
    std::span<const Word> plane(int j) const noexcept { return {data_.data() + j * words_, words_}; }
    std::span<Word> plane(int j) noexcept { return {data_.data() + j * words_, words_}; }
    std::span<const Word> data() const noexcept { return data_; }
    std::span<Word> data() noexcept { return data_; }

    friend bool operator==(const KatVector&, const KatVector&) = default;

private:
    std::size_t n_;
    std::size_t words_;
    std::vector<Word> data_;
};

template <SliceWord Word>
KatVector<Word> to_kat(const SlicedVector<Word>& natural);

template <SliceWord Word>
SlicedVector<Word> from_kat(const KatVector<Word>& kat);

template <SliceWord Word>
KatVector<Word> add_f3_kat(const KatVector<Word>& a, const KatVector<Word>& b);

namespace kernel {

/// The six-instruction F3 adder in the KAT encoding.
template <SliceWord Word>
inline void add_f3_kat(const Word* a, const Word* b, Word* out, std::size_t words) noexcept
{
    for (std::size_t w = 0; w < words; ++w) {
        const Word a0 = a[w], a1 = a[words + w];
        const Word t0 = a0 ^ b[w];
        const Word t1 = a1 ^ b[words + w];
        const Word u0 = t0 ^ a1;
        const Word u1 = t1 ^ a0;
        out[w] = t1 | u0;
        out[words + w] = t0 | u1;
    }
}

} // namespace kernel

#define SLICEGF_DECLARE_ARITH(Word)                                                                                   \
    extern template SlicedVector<Word> add(const SlicedVector<Word>&, const SlicedVector<Word>&, AddPath);             \
    extern template SlicedVector<Word> add_generic_mersenne(const SlicedVector<Word>&, const SlicedVector<Word>&,      \
                                                            AddTrace<Word>*);                                          \
    extern template SlicedVector<Word> add_generic_any(const SlicedVector<Word>&, const SlicedVector<Word>&,           \
                                                       AddTrace<Word>*);                                               \
    extern template SlicedVector<Word> add_f3(const SlicedVector<Word>&, const SlicedVector<Word>&);                   \
    extern template SlicedVector<Word> add_f7(const SlicedVector<Word>&, const SlicedVector<Word>&);                   \
    extern template SlicedVector<Word> negate(const SlicedVector<Word>&);                                              \
    extern template SlicedVector<Word> sub(const SlicedVector<Word>&, const SlicedVector<Word>&, AddPath);             \
    extern template SlicedVector<Word> rotate_planes(const SlicedVector<Word>&, int);                                  \
    extern template SlicedVector<Word> scalar_multiply(const SlicedVector<Word>&, unsigned);                           \
    extern template SlicedVector<Word> combine(const SlicedVector<Word>&, unsigned, const SlicedVector<Word>&);        \
    extern template std::pair<SlicedVector<Word>, SlicedVector<Word>> addsub_f3(const SlicedVector<Word>&,             \
                                                                                const SlicedVector<Word>&);            \
    extern template NonzeroMask<Word> isometric_sub_mask(const SlicedVector<Word>&, const SlicedVector<Word>&);        \
    extern template NonzeroMask<Word> isometric_add_mask(const SlicedVector<Word>&, const SlicedVector<Word>&);        \
    extern template class KatVector<Word>;                                                                             \
    extern template KatVector<Word> to_kat(const SlicedVector<Word>&);                                                 \
    extern template SlicedVector<Word> from_kat(const KatVector<Word>&);                                               \
    extern template KatVector<Word> add_f3_kat(const KatVector<Word>&, const KatVector<Word>&);

SLICEGF_DECLARE_ARITH(std::uint32_t)
SLICEGF_DECLARE_ARITH(std::uint64_t)

#undef SLICEGF_DECLARE_ARITH

} // namespace slicegf
