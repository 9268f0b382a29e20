#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slicegf/field.hpp"

namespace slicegf {

/// Dense k x n matrix over F_p whose rows generate a linear code.
class GeneratorMatrix {
public:
    /// `entries` is row-major, k * n digits. Throws InputError if k == 0,
    /// k > n, the entry count is wrong, or a digit is >= p.
    GeneratorMatrix(FieldSpec field, std::size_t k, std::size_t n, std::vector<Digit> entries);

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t n() const noexcept { return n_; }
    Digit at(std::size_t row, std::size_t col) const noexcept { return entries_[row * n_ + col]; }
    std::span<const Digit> row(std::size_t i) const noexcept { return {entries_.data() + i * n_, n_}; }
    std::span<const Digit> entries() const noexcept { return entries_; }
    DenseVector row_vector(std::size_t i) const;

    friend bool operator==(const GeneratorMatrix&, const GeneratorMatrix&) = default;

private:
    FieldSpec field_;
    std::size_t k_;
    std::size_t n_;
    std::vector<Digit> entries_;
};

/// Reads the text matrix format:
///
///     # optional comment lines
///     p <prime>
///     k <rows>
///     n <columns>
///     <k lines of n space-separated digits>
///
/// Throws InputError on any deviation.
GeneratorMatrix parse_matrix(std::string_view text);

/// Canonical text form: no comments, single spaces, trailing newline.
std::string serialize_matrix(const GeneratorMatrix& g);

/// Rank over F_p by Gaussian elimination.
std::size_t rank(const GeneratorMatrix& g);

/// Random full-rank k x n generator matrix, identical for identical
/// arguments on every platform. Rows are redrawn until they are independent of
/// the rows already accepted.
GeneratorMatrix random_code(unsigned p, std::size_t k, std::size_t n, std::uint64_t seed);

/// A systematic generator matrix: the first `rank` rows carry the identity on
/// `info_set` (row t has its 1 at column info_set[t]); any remaining rows are
/// zero on `info_set`.
struct GammaMatrix {
    GeneratorMatrix matrix;
    std::vector<std::size_t> info_set;
    std::size_t rank = 0;
};

/// Systematic matrices with pairwise disjoint information sets, ranks
/// k = k_1 = ... = k_{m-1} >= k_m.
struct GammaSet {
    std::vector<GammaMatrix> matrices;

    std::size_t m() const noexcept { return matrices.size(); }
    std::size_t k_m() const noexcept { return matrices.back().rank; }
    std::vector<std::size_t> ranks() const;
};

/// Greedy construction: eliminate on the columns no earlier information set
/// used, scanning columns left to right and rows top to bottom. Stops once the
/// unused columns have no pivot or after the first matrix of rank below k.
/// Throws RankDeficientError if rank(G) < k.
GammaSet gamma_set(const GeneratorMatrix& g);

} // namespace slicegf
