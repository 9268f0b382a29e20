#pragma once

// Minimum distance of a linear code by the Brouwer-Zimmermann enumeration
// over several systematic generator matrices, with saved prefix sums and
// weight-only final additions.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "slicegf/linear_code.hpp"

namespace slicegf {

enum class WordWidth { Bits32 = 32, Bits64 = 64 };

struct EngineOptions {
    unsigned threads = 1;
    bool use_isometric = true;
    bool early_termination = true;
    WordWidth word_width = WordWidth::Bits64;
    bool force_generic_arith = false;
};

/// One enumeration pass of Gamma_j at information weight g.
struct StageRecord {
    std::size_t g = 0;
    std::size_t matrix = 0;
    std::uint64_t visited = 0;
    std::size_t best_weight = 0; ///< smallest weight met in this pass
    std::size_t upper_after = 0;
};

struct BoundSnapshot {
    std::size_t g = 0;
    std::size_t lower = 0;
    std::size_t upper = 0;
};

struct BZState {
    std::size_t lower = 1;
    std::size_t upper = 0;
    std::size_t g = 0; ///< last information weight processed
    bool terminated_early = false;
    std::vector<StageRecord> stage_log;
    std::vector<BoundSnapshot> snapshots; ///< one per finished g (or early stop)

    std::uint64_t codewords_visited() const noexcept;
};

struct MinDistResult {
    std::size_t distance = 0;
    BZState state;
};

struct StageResult {
    std::size_t upper = 0;
    std::uint64_t visited = 0;
};

/// (m - 1)(g + 1) + max{0, g + 1 - k + k_m}: the weight every codeword not yet
/// enumerated must have once all m matrices are done at information weight g.
std::size_t lower_bound(std::size_t g, std::size_t m, std::size_t k, std::size_t k_m);

/// Same bound when Gamma_1..Gamma_done have finished weight g and the rest
/// only weight g - 1.
std::size_t partial_lower_bound(std::size_t g, std::size_t done, std::size_t m, std::size_t k, std::size_t k_m);

/// Visits every a_1 r_{i_1} + ... + a_g r_{i_g} over the rows of Gamma_j with
/// i_1 < ... < i_g, a_1 = 1 and a_t in [1, p-1]; returns min(upper_in, weights).
/// g larger than the row count returns upper_in with nothing visited.
StageResult enumerate_stage(const GammaSet& gamma, std::size_t j, std::size_t g, std::size_t upper_in,
                            const EngineOptions& options = {});

/// Throws RankDeficientError when rank(G) < k, InvariantViolation if an
/// enumerated combination is the zero word.
MinDistResult minimum_weight(const GeneratorMatrix& g, const EngineOptions& options = {});

inline constexpr std::uint64_t kDefaultBruteForceBudget = 20'000'000;

/// Exhaustive min weight over all p^k - 1 nonzero messages. Throws
/// BudgetExceeded when p^k - 1 exceeds `budget`.
std::size_t brute_force_min_weight(const GeneratorMatrix& g, std::uint64_t budget = kDefaultBruteForceBudget);

/// C(rows, g) * (p - 1)^(g - 1), saturating at UINT64_MAX.
std::uint64_t stage_visit_count(std::size_t rows, std::size_t g, unsigned p);

} // namespace slicegf
