#include "slicegf/arith.hpp"

#include <algorithm>
#include <string>

namespace slicegf {
namespace {

template <SliceWord Word>
void require_compatible(const SlicedVector<Word>& v, const SlicedVector<Word>& w)
{
    if (!(v.field() == w.field())) {
        throw InputError("operand fields differ: p = " + std::to_string(v.field().p()) + " vs " +
                         std::to_string(w.field().p()));
    }
    if (v.size() != w.size()) {
        throw InputError("operand lengths differ: " + std::to_string(v.size()) + " vs " + std::to_string(w.size()));
    }
}

void require_prime(const FieldSpec& field, unsigned p, const char* op)
{
    if (field.p() != p) {
        throw InputError(std::string(op) + " requires p = " + std::to_string(p) + ", got " +
                         std::to_string(field.p()));
    }
}

/// s with 2^s = h (mod p), or -1. Only meaningful for Mersenne p, where the
/// powers of two are exactly 1, 2, ..., 2^(r-1).
int power_of_two_exponent(unsigned h) noexcept
{
    return (h != 0 && std::has_single_bit(h)) ? std::countr_zero(h) : -1;
}

} // namespace

template <SliceWord Word>
SlicedVector<Word> add(const SlicedVector<Word>& v, const SlicedVector<Word>& w, AddPath path)
{
    require_compatible(v, w);
    SlicedVector<Word> out(v.field(), v.size());
    if (path == AddPath::Generic) {
        kernel::add_generic(v.field(), v.data().data(), w.data().data(), out.data().data(), v.words());
    } else {
        kernel::add_auto(v.field(), v.data().data(), w.data().data(), out.data().data(), v.words());
    }
    return out;
}

template <SliceWord Word>
SlicedVector<Word> add_generic_mersenne(const SlicedVector<Word>& v, const SlicedVector<Word>& w,
                                        AddTrace<Word>* trace)
{
    require_compatible(v, w);
    if (!v.field().is_mersenne()) {
        throw InputError("add_generic_mersenne requires p = 2^r - 1, got " + std::to_string(v.field().p()));
    }
    SlicedVector<Word> out(v.field(), v.size());
    kernel::add_mersenne(v.field(), v.data().data(), w.data().data(), out.data().data(), v.words(), trace);
    return out;
}

template <SliceWord Word>
SlicedVector<Word> add_generic_any(const SlicedVector<Word>& v, const SlicedVector<Word>& w, AddTrace<Word>* trace)
{
    require_compatible(v, w);
    if (v.field().is_mersenne()) {
        throw InputError("add_generic_any is for p != 2^r - 1; p = " + std::to_string(v.field().p()) +
                         " is Mersenne");
    }
    SlicedVector<Word> out(v.field(), v.size());
    kernel::add_general(v.field(), v.data().data(), w.data().data(), out.data().data(), v.words(), trace);
    return out;
}

template <SliceWord Word>
SlicedVector<Word> add_f3(const SlicedVector<Word>& v, const SlicedVector<Word>& w)
{
    require_compatible(v, w);
    require_prime(v.field(), 3, "add_f3");
    SlicedVector<Word> out(v.field(), v.size());
    kernel::add_f3(v.data().data(), w.data().data(), out.data().data(), v.words());
    return out;
}

template <SliceWord Word>
SlicedVector<Word> add_f7(const SlicedVector<Word>& v, const SlicedVector<Word>& w)
{
    require_compatible(v, w);
    require_prime(v.field(), 7, "add_f7");
    SlicedVector<Word> out(v.field(), v.size());
    kernel::add_f7(v.data().data(), w.data().data(), out.data().data(), v.words());
    return out;
}

template <SliceWord Word>
SlicedVector<Word> negate(const SlicedVector<Word>& v)
{
    const FieldSpec& field = v.field();
    const int r = field.bits();
    SlicedVector<Word> out(field, v.size());
    if (field.p() == 3) {
        std::ranges::copy(v.plane(1), out.plane(0).begin());
        std::ranges::copy(v.plane(0), out.plane(1).begin());
        return out;
    }
    if (field.is_mersenne()) {
        // p - x = NOT x on r bits; zero (and the tail) become all-ones and fold back to zero.
        for (std::size_t w = 0; w < v.words(); ++w) {
            Word t = ~Word{0};
            for (int j = 0; j < r; ++j) {
                const Word c = ~v.plane(j)[w];
                out.plane(j)[w] = c;
                t &= c;
            }
            for (int j = 0; j < r; ++j) out.plane(j)[w] ^= t;
        }
        return out;
    }
    const DenseVector dense = unpack(v);
    std::vector<Digit> digits(dense.size());
    std::ranges::transform(dense.digits(), digits.begin(),
                           [p = field.p()](Digit x) { return x == 0 ? Digit{0} : static_cast<Digit>(p - x); });
    return pack<Word>(DenseVector(field, std::move(digits)));
}

template <SliceWord Word>
SlicedVector<Word> sub(const SlicedVector<Word>& v, const SlicedVector<Word>& w, AddPath path)
{
    require_compatible(v, w);
    return add(v, negate(w), path);
}

template <SliceWord Word>
SlicedVector<Word> rotate_planes(const SlicedVector<Word>& w, int shift)
{
    const FieldSpec& field = w.field();
    if (!field.is_mersenne()) {
        throw InputError("rotate_planes requires p = 2^r - 1, got " + std::to_string(field.p()));
    }
    const int r = field.bits();
    if (shift < 0 || shift >= r) {
        throw InputError("rotation " + std::to_string(shift) + " outside [0, " + std::to_string(r) + ")");
    }
    SlicedVector<Word> out(field, w.size());
    for (int j = 0; j < r; ++j) std::ranges::copy(w.plane((j - shift + r) % r), out.plane(j).begin());
    return out;
}

template <SliceWord Word>
SlicedVector<Word> scalar_multiply(const SlicedVector<Word>& w, unsigned h)
{
    const FieldSpec& field = w.field();
    if (h >= field.p()) {
        throw InputError("scalar " + std::to_string(h) + " not below p = " + std::to_string(field.p()));
    }
    if (h == 0) return SlicedVector<Word>(field, w.size());
    if (field.is_mersenne()) {
        if (const int s = power_of_two_exponent(h); s >= 0) return rotate_planes(w, s);
        if (const int s = power_of_two_exponent(field.p() - h); s >= 0) return negate(rotate_planes(w, s));
        // h = sum of 2^s over its set bits
        SlicedVector<Word> acc(field, w.size());
        for (int s = 0; s < field.bits(); ++s) {
            if ((h >> s) & 1u) acc = add(acc, rotate_planes(w, s));
        }
        return acc;
    }
    // double-and-add, most significant bit first
    SlicedVector<Word> acc(field, w.size());
    for (int s = std::bit_width(h) - 1; s >= 0; --s) {
        acc = add(acc, acc);
        if ((h >> s) & 1u) acc = add(acc, w);
    }
    return acc;
}

template <SliceWord Word>
SlicedVector<Word> combine(const SlicedVector<Word>& v, unsigned h, const SlicedVector<Word>& w)
{
    require_compatible(v, w);
    const FieldSpec& field = v.field();
    if (h == 0 || h >= field.p()) {
        throw InputError("combination scalar " + std::to_string(h) + " outside [1, " + std::to_string(field.p() - 1) +
                         "]");
    }
    if (field.p() == 3) return h == 1 ? add(v, w) : sub(v, w);
    if (field.is_mersenne()) {
        if (const int s = power_of_two_exponent(h); s >= 0) return add(v, rotate_planes(w, s));
        if (const int s = power_of_two_exponent(field.p() - h); s >= 0) return sub(v, rotate_planes(w, s));
    }
    return add(v, scalar_multiply(w, h));
}

template <SliceWord Word>
std::pair<SlicedVector<Word>, SlicedVector<Word>> addsub_f3(const SlicedVector<Word>& v, const SlicedVector<Word>& w)
{
    require_compatible(v, w);
    require_prime(v.field(), 3, "addsub_f3");
    std::pair<SlicedVector<Word>, SlicedVector<Word>> out{SlicedVector<Word>(v.field(), v.size()),
                                                          SlicedVector<Word>(v.field(), v.size())};
    kernel::addsub_f3(v.data().data(), w.data().data(), out.first.data().data(), out.second.data().data(),
                      v.words());
    return out;
}

template <SliceWord Word>
NonzeroMask<Word> isometric_sub_mask(const SlicedVector<Word>& v, const SlicedVector<Word>& w)
{
    require_compatible(v, w);
    std::vector<Word> bits(v.words(), Word{0});
    for (int j = 0; j < v.bits(); ++j) {
        for (std::size_t i = 0; i < v.words(); ++i) bits[i] |= v.plane(j)[i] ^ w.plane(j)[i];
    }
    return NonzeroMask<Word>(v.size(), std::move(bits));
}

template <SliceWord Word>
NonzeroMask<Word> isometric_add_mask(const SlicedVector<Word>& v, const SlicedVector<Word>& w)
{
    require_compatible(v, w);
    const FieldSpec& field = v.field();
    std::vector<Word> bits(v.words(), Word{0});
    if (field.p() == 3) {
        for (std::size_t i = 0; i < v.words(); ++i) {
            const Word c0 = v.plane(0)[i] | w.plane(0)[i];
            const Word c1 = v.plane(1)[i] | w.plane(1)[i];
            bits[i] = c0 ^ c1;
        }
    } else if (field.is_mersenne()) {
        // a + b = 0 iff both are zero or b is the bitwise complement of a.
        const Word tail = tail_mask<Word>(v.size());
        for (std::size_t i = 0; i < v.words(); ++i) {
            const Word lanes = (i + 1 == v.words()) ? tail : ~Word{0};
            Word not_complement = 0;
            Word either = 0;
            for (int j = 0; j < v.bits(); ++j) {
                not_complement |= ~(v.plane(j)[i] ^ w.plane(j)[i]) & lanes;
                either |= v.plane(j)[i] | w.plane(j)[i];
            }
            bits[i] = not_complement & either;
        }
    } else {
        return support(add(v, w));
    }
    return NonzeroMask<Word>(v.size(), std::move(bits));
}

template <SliceWord Word>
KatVector<Word>::KatVector(std::size_t n) : n_(n), words_(words_for<Word>(n)), data_(2 * words_, ~Word{0})
{
}

template <SliceWord Word>
KatVector<Word> to_kat(const SlicedVector<Word>& natural)
{
    require_prime(natural.field(), 3, "to_kat");
    // natural (a0, a1) -> KAT (not a0, not a1); tail lanes become (1,1), the KAT zero.
    KatVector<Word> out(natural.size());
    for (int j = 0; j < 2; ++j) {
        for (std::size_t i = 0; i < natural.words(); ++i) out.plane(j)[i] = ~natural.plane(j)[i];
    }
    return out;
}

template <SliceWord Word>
SlicedVector<Word> from_kat(const KatVector<Word>& kat)
{
    SlicedVector<Word> out(FieldSpec(3), kat.size());
    const Word tail = tail_mask<Word>(kat.size());
    for (int j = 0; j < 2; ++j) {
        for (std::size_t i = 0; i < kat.words(); ++i) {
            const Word lanes = (i + 1 == kat.words()) ? tail : ~Word{0};
            out.plane(j)[i] = ~kat.plane(j)[i] & lanes;
        }
    }
    return out;
}

template <SliceWord Word>
KatVector<Word> add_f3_kat(const KatVector<Word>& a, const KatVector<Word>& b)
{
    if (a.size() != b.size()) {
        throw InputError("operand lengths differ: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    }
    KatVector<Word> out(a.size());
    kernel::add_f3_kat(a.data().data(), b.data().data(), out.data().data(), a.words());
    return out;
}

#define SLICEGF_INSTANTIATE_ARITH(Word)                                                                               \
    template SlicedVector<Word> add(const SlicedVector<Word>&, const SlicedVector<Word>&, AddPath);                    \
    template SlicedVector<Word> add_generic_mersenne(const SlicedVector<Word>&, const SlicedVector<Word>&,             \
                                                     AddTrace<Word>*);                                                 \
    template SlicedVector<Word> add_generic_any(const SlicedVector<Word>&, const SlicedVector<Word>&, AddTrace<Word>*); \
    template SlicedVector<Word> add_f3(const SlicedVector<Word>&, const SlicedVector<Word>&);                          \
    template SlicedVector<Word> add_f7(const SlicedVector<Word>&, const SlicedVector<Word>&);                          \
    template SlicedVector<Word> negate(const SlicedVector<Word>&);                                                     \
    template SlicedVector<Word> sub(const SlicedVector<Word>&, const SlicedVector<Word>&, AddPath);                    \
    template SlicedVector<Word> rotate_planes(const SlicedVector<Word>&, int);                                         \
    template SlicedVector<Word> scalar_multiply(const SlicedVector<Word>&, unsigned);                                  \
    template SlicedVector<Word> combine(const SlicedVector<Word>&, unsigned, const SlicedVector<Word>&);               \
    template std::pair<SlicedVector<Word>, SlicedVector<Word>> addsub_f3(const SlicedVector<Word>&,                    \
                                                                         const SlicedVector<Word>&);                   \
    template NonzeroMask<Word> isometric_sub_mask(const SlicedVector<Word>&, const SlicedVector<Word>&);               \
    template NonzeroMask<Word> isometric_add_mask(const SlicedVector<Word>&, const SlicedVector<Word>&);               \
    template class KatVector<Word>;                                                                                    \
    template KatVector<Word> to_kat(const SlicedVector<Word>&);                                                        \
    template SlicedVector<Word> from_kat(const KatVector<Word>&);                                                      \
    template KatVector<Word> add_f3_kat(const KatVector<Word>&, const KatVector<Word>&);

SLICEGF_INSTANTIATE_ARITH(std::uint32_t)
SLICEGF_INSTANTIATE_ARITH(std::uint64_t)

} // namespace slicegf
