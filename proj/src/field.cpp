#include "slicegf/field.hpp"

#include <bit>
#include <string>

#include "slicegf/errors.hpp"

namespace slicegf {

bool is_prime(std::uint64_t value) noexcept
{
    if (value < 2) return false;
    if (value % 2 == 0) return value == 2;
    for (std::uint64_t d = 3; d * d <= value; d += 2) {
        if (value % d == 0) return false;
    }
    return true;
}

FieldSpec::FieldSpec(unsigned p)
    : p_(p), bits_(0), correction_(0)
{
    if (p < 3 || !is_prime(p)) {
        throw InputError("p must be prime >= 3, got " + std::to_string(p));
    }
    if (p >= (1u << kMaxBits)) {
        throw InputError("p must be below 2^" + std::to_string(kMaxBits));
    }
    bits_ = static_cast<int>(std::bit_width(p));
    correction_ = (1u << bits_) - p;
    for (int i = 0; i < bits_; ++i) {
        if ((p >> i) & 1u) one_positions_.push_back(i);
    }
}

DenseVector::DenseVector(FieldSpec field, std::vector<Digit> digits)
    : field_(std::move(field)), digits_(std::move(digits))
{
    for (std::size_t i = 0; i < digits_.size(); ++i) {
        if (digits_[i] >= field_.p()) {
            throw InputError("digit " + std::to_string(digits_[i]) + " at position " + std::to_string(i) +
                             " is not below p = " + std::to_string(field_.p()));
        }
    }
}

DenseVector DenseVector::zeros(FieldSpec field, std::size_t n)
{
    return DenseVector(std::move(field), std::vector<Digit>(n, 0));
}

} // namespace slicegf
