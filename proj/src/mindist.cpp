#include "slicegf/mindist.hpp"

#include <algorithm>
#include <atomic>
#include <cstring>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "slicegf/arith.hpp"
#include "slicegf/errors.hpp"
#include "slicegf/kernels.hpp"
#include "slicegf/sliced.hpp"

namespace slicegf {
namespace {

constexpr std::size_t kNoWeight = std::numeric_limits<std::size_t>::max();

/// Every multiple h * row (h in [0, p)) of every row of one Gamma matrix,
/// pre-sliced so the enumeration never multiplies.
template <SliceWord Word>
class RowBank {
public:
    explicit RowBank(const GammaMatrix& gamma)
        : field_(gamma.matrix.field()), rows_(gamma.matrix.k()), words_(words_for<Word>(gamma.matrix.n())),
          stride_(static_cast<std::size_t>(field_.bits()) * words_),
          data_(rows_ * field_.p() * stride_, Word{0})
    {
        for (std::size_t i = 0; i < rows_; ++i) {
            const auto sliced = pack<Word>(gamma.matrix.row_vector(i));
            for (unsigned h = 1; h < field_.p(); ++h) {
                const auto product = scalar_multiply(sliced, h);
                std::ranges::copy(product.data(), data_.begin() + static_cast<std::ptrdiff_t>((i * field_.p() + h) * stride_));
            }
        }
    }

    const FieldSpec& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t words() const noexcept { return words_; }
    std::size_t stride() const noexcept { return stride_; }
    const Word* multiple(std::size_t row, unsigned h) const noexcept
    {
        return data_.data() + (row * field_.p() + h) * stride_;
    }

private:
    FieldSpec field_;
    std::size_t rows_;
    std::size_t words_;
    std::size_t stride_;
    std::vector<Word> data_;
};

struct F3Adder {
    template <SliceWord Word>
    void operator()(const Word* a, const Word* b, Word* out, std::size_t words) const noexcept
    {
        kernel::add_f3(a, b, out, words);
    }
};

struct F7Adder {
    template <SliceWord Word>
    void operator()(const Word* a, const Word* b, Word* out, std::size_t words) const noexcept
    {
        kernel::add_f7(a, b, out, words);
    }
};

struct MersenneAdder {
    const FieldSpec* field;
    template <SliceWord Word>
    void operator()(const Word* a, const Word* b, Word* out, std::size_t words) const
    {
        kernel::add_mersenne(*field, a, b, out, words);
    }
};

struct GeneralAdder {
    const FieldSpec* field;
    template <SliceWord Word>
    void operator()(const Word* a, const Word* b, Word* out, std::size_t words) const
    {
        kernel::add_general(*field, a, b, out, words);
    }
};

/// Work unit: a fixed prefix of outermost row indices.
struct Unit {
    std::size_t first = 0;
    std::size_t second = 0; ///< used when g >= 3
};

std::vector<Unit> make_units(std::size_t rows, std::size_t g)
{
    std::vector<Unit> units;
    if (g == 1) {
        units.push_back({});
    } else if (g == 2) {
        for (std::size_t i = 0; i + 1 < rows; ++i) units.push_back({i, 0});
    } else {
        for (std::size_t i = 0; i + g <= rows; ++i) {
            for (std::size_t j = i + 1; j + g - 1 <= rows; ++j) units.push_back({i, j});
        }
    }
    return units;
}

/// Enumerates one pass with a private stack of exact prefix sums per worker:
/// slot t holds S_t = r_{i_1} + a_2 r_{i_2} + ... + a_t r_{i_t}. Only the last
/// term of each combination is added outside the stack, weight-only when
/// isometric mode is on.
template <SliceWord Word, class Adder>
class PassRunner {
public:
    struct Local {
        std::vector<Word> stack;
        std::vector<Word> scratch;
        std::uint64_t visited = 0;
        std::size_t best = kNoWeight;
#ifndef NDEBUG
        std::vector<std::size_t> rows_used;
        std::vector<unsigned> coefficients;
#endif
    };

    PassRunner(const RowBank<Word>& bank, std::size_t g, bool isometric, Adder adder)
        : bank_(bank), g_(g), p_(bank.field().p()), r_(bank.field().bits()), words_(bank.words()),
          stride_(bank.stride()), isometric_(isometric), adder_(adder)
    {
    }

    Local make_local() const
    {
        Local local;
        local.stack.assign((g_ + 1) * stride_, Word{0});
        local.scratch.assign(2 * stride_, Word{0});
#ifndef NDEBUG
        local.rows_used.assign(g_ + 1, 0);
        local.coefficients.assign(g_ + 1, 0);
#endif
        return local;
    }

    void run(const Unit& unit, Local& local) const
    {
        if (g_ == 1) {
            for (std::size_t i = 0; i < bank_.rows(); ++i) {
                record(kernel::plane_weight(bank_.multiple(i, 1), r_, words_), local);
                ++local.visited;
            }
            return;
        }
        remember(0, unit.first, 1, local);
        if (g_ == 2) {
            innermost(1, unit.first + 1, bank_.multiple(unit.first, 1), local);
            return;
        }
        Word* slot = local.stack.data() + 2 * stride_;
        for (unsigned a = 1; a < p_; ++a) {
            adder_(bank_.multiple(unit.first, 1), bank_.multiple(unit.second, a), slot, words_);
            remember(1, unit.second, a, local);
            descend(2, unit.second + 1, slot, local);
        }
    }

private:
    /// `prefix` is S_depth; picks term depth + 1.
    void descend(std::size_t depth, std::size_t start, const Word* prefix, Local& local) const
    {
        if (depth + 1 == g_) {
            innermost(depth, start, prefix, local);
            return;
        }
        Word* slot = local.stack.data() + (depth + 1) * stride_;
        const std::size_t stop = bank_.rows() - (g_ - depth) + 1;
        for (std::size_t i = start; i < stop; ++i) {
            for (unsigned a = 1; a < p_; ++a) {
                adder_(prefix, bank_.multiple(i, a), slot, words_);
                remember(depth, i, a, local);
                descend(depth + 1, i + 1, slot, local);
            }
        }
    }

    void innermost(std::size_t depth, std::size_t start, const Word* prefix, Local& local) const
    {
        debug_check_prefix(depth, prefix, local);
        for (std::size_t i = start; i < bank_.rows(); ++i) {
            if (isometric_) {
                // prefix + a r_i = 0  iff  prefix = (p - a) r_i
                for (unsigned a = 1; a < p_; ++a) {
                    const std::size_t w = kernel::sub_weight(prefix, bank_.multiple(i, p_ - a), r_, words_);
                    debug_check_isometry(prefix, i, a, w, local);
                    record(w, local);
                }
            } else if constexpr (std::is_same_v<Adder, F3Adder>) {
                Word* sum = local.scratch.data();
                Word* diff = sum + stride_;
                kernel::addsub_f3(prefix, bank_.multiple(i, 1), sum, diff, words_);
                record(kernel::plane_weight(sum, r_, words_), local);
                record(kernel::plane_weight(diff, r_, words_), local);
            } else {
                Word* sum = local.scratch.data();
                for (unsigned a = 1; a < p_; ++a) {
                    adder_(prefix, bank_.multiple(i, a), sum, words_);
                    record(kernel::plane_weight(sum, r_, words_), local);
                }
            }
            local.visited += p_ - 1;
        }
    }

    static void record(std::size_t w, Local& local)
    {
        if (w == 0) throw InvariantViolation("enumerated combination is the zero codeword; Gamma rows are dependent");
        if (w < local.best) local.best = w;
    }

    void remember([[maybe_unused]] std::size_t depth, [[maybe_unused]] std::size_t row, [[maybe_unused]] unsigned a,
                  [[maybe_unused]] Local& local) const
    {
#ifndef NDEBUG
        local.rows_used[depth] = row;
        local.coefficients[depth] = a;
#endif
    }

    void debug_check_prefix([[maybe_unused]] std::size_t depth, [[maybe_unused]] const Word* prefix,
                            [[maybe_unused]] Local& local) const
    {
#ifndef NDEBUG
        if ((local.visited & 0x3ff) != 0) return;
        std::vector<Word> acc(stride_, Word{0});
        for (std::size_t t = 0; t < depth; ++t) {
            adder_(acc.data(), bank_.multiple(local.rows_used[t], local.coefficients[t]), acc.data(), words_);
        }
        if (!std::equal(acc.begin(), acc.end(), prefix)) throw InvariantViolation("saved prefix sum is stale");
#endif
    }

    void debug_check_isometry([[maybe_unused]] const Word* prefix, [[maybe_unused]] std::size_t row,
                              [[maybe_unused]] unsigned a, [[maybe_unused]] std::size_t w,
                              [[maybe_unused]] Local& local) const
    {
#ifndef NDEBUG
        if (((local.visited + a) & 0x3ff) != 0) return;
        std::vector<Word> exact(stride_);
        adder_(prefix, bank_.multiple(row, a), exact.data(), words_);
        if (kernel::plane_weight(exact.data(), r_, words_) != w) {
            throw InvariantViolation("isometric weight differs from exact weight");
        }
#endif
    }

    const RowBank<Word>& bank_;
    std::size_t g_;
    unsigned p_;
    int r_;
    std::size_t words_;
    std::size_t stride_;
    bool isometric_;
    Adder adder_;
};

void atomic_min(std::atomic<std::size_t>& target, std::size_t value) noexcept
{
    std::size_t current = target.load(std::memory_order_relaxed);
    while (value < current && !target.compare_exchange_weak(current, value, std::memory_order_relaxed)) {
    }
}

struct PassOutcome {
    std::size_t best = kNoWeight;
    std::uint64_t visited = 0;
};

template <SliceWord Word, class Adder>
PassOutcome run_pass_with(const RowBank<Word>& bank, std::size_t g, const EngineOptions& options, Adder adder)
{
    const PassRunner<Word, Adder> runner(bank, g, options.use_isometric, adder);
    const std::vector<Unit> units = make_units(bank.rows(), g);

    std::atomic<std::size_t> next_unit{0};
    std::atomic<std::size_t> best{kNoWeight};
    std::atomic<std::uint64_t> visited{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        try {
            auto local = runner.make_local();
            for (std::size_t u; (u = next_unit.fetch_add(1, std::memory_order_relaxed)) < units.size();) {
                runner.run(units[u], local);
            }
            atomic_min(best, local.best);
            visited.fetch_add(local.visited, std::memory_order_relaxed);
        } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next_unit.store(units.size());
        }
    };

    const std::size_t workers = std::min<std::size_t>(std::max(1u, options.threads), units.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return {best.load(), visited.load()};
}

template <SliceWord Word>
PassOutcome run_pass(const RowBank<Word>& bank, std::size_t g, const EngineOptions& options)
{
    if (g == 0 || g > bank.rows()) return {};
    const FieldSpec& field = bank.field();
    if (!options.force_generic_arith) {
        if (field.p() == 3) return run_pass_with(bank, g, options, F3Adder{});
        if (field.p() == 7) return run_pass_with(bank, g, options, F7Adder{});
    }
    if (field.is_mersenne()) return run_pass_with(bank, g, options, MersenneAdder{&field});
    return run_pass_with(bank, g, options, GeneralAdder{&field});
}

std::size_t contribution(std::size_t g_done, std::size_t k, std::size_t rank_j)
{
    // weight on the information set of an unseen codeword: at least g + 1 - (k - k_j)
    const std::size_t deficit = k - rank_j;
    return g_done + 1 > deficit ? g_done + 1 - deficit : 0;
}

template <SliceWord Word>
MinDistResult minimum_weight_with(const GeneratorMatrix& g, const EngineOptions& options)
{
    const GammaSet gamma = gamma_set(g);
    const std::size_t k = g.k(), n = g.n(), m = gamma.m(), k_m = gamma.k_m();

    std::vector<RowBank<Word>> banks;
    banks.reserve(m);
    for (const auto& matrix : gamma.matrices) banks.emplace_back(matrix);

    MinDistResult result;
    BZState& state = result.state;
    state.lower = 1;
    state.upper = n - k + 1;

    for (std::size_t weight = 1; weight <= k && state.lower < state.upper; ++weight) {
        state.g = weight;
        for (std::size_t j = 0; j < m; ++j) {
            const PassOutcome pass = run_pass(banks[j], weight, options);
            state.upper = std::min(state.upper, pass.best);
            state.stage_log.push_back({weight, j, pass.visited, pass.best, state.upper});
            if (options.early_termination && j + 1 < m) {
                const std::size_t partial = partial_lower_bound(weight, j + 1, m, k, k_m);
                if (state.upper <= partial) {
                    state.lower = std::max(state.lower, partial);
                    state.terminated_early = true;
                    break;
                }
            }
        }
        if (!state.terminated_early) state.lower = lower_bound(weight, m, k, k_m);
        state.snapshots.push_back({weight, state.lower, state.upper});
        if (state.terminated_early) break;
    }
    result.distance = state.upper;
    return result;
}

} // namespace

std::uint64_t BZState::codewords_visited() const noexcept
{
    std::uint64_t total = 0;
    for (const auto& s : stage_log) total += s.visited;
    return total;
}

std::size_t lower_bound(std::size_t g, std::size_t m, std::size_t k, std::size_t k_m)
{
    const std::size_t tail = g + 1 + k_m > k ? g + 1 + k_m - k : 0;
    return (m - 1) * (g + 1) + tail;
}

std::size_t partial_lower_bound(std::size_t g, std::size_t done, std::size_t m, std::size_t k, std::size_t k_m)
{
    std::size_t total = 0;
    for (std::size_t j = 0; j < m; ++j) {
        const std::size_t rank_j = (j + 1 == m) ? k_m : k;
        total += contribution(j < done ? g : g - 1, k, rank_j);
    }
    return total;
}

StageResult enumerate_stage(const GammaSet& gamma, std::size_t j, std::size_t g, std::size_t upper_in,
                            const EngineOptions& options)
{
    if (j >= gamma.m()) throw InputError("no Gamma matrix with index " + std::to_string(j));
    const auto finish = [&](const PassOutcome& pass) { return StageResult{std::min(upper_in, pass.best), pass.visited}; };
    if (options.word_width == WordWidth::Bits32) {
        return finish(run_pass(RowBank<std::uint32_t>(gamma.matrices[j]), g, options));
    }
    return finish(run_pass(RowBank<std::uint64_t>(gamma.matrices[j]), g, options));
}

MinDistResult minimum_weight(const GeneratorMatrix& g, const EngineOptions& options)
{
    if (options.threads == 0) throw InputError("thread count must be at least 1");
    if (options.word_width == WordWidth::Bits32) return minimum_weight_with<std::uint32_t>(g, options);
    return minimum_weight_with<std::uint64_t>(g, options);
}

std::uint64_t stage_visit_count(std::size_t rows, std::size_t g, unsigned p)
{
    if (g == 0 || g > rows) return 0;
    constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
    // C(rows, g) built as a running product that stays an exact integer
    unsigned __int128 count = 1;
    for (std::size_t i = 1; i <= g; ++i) {
        count = count * (rows - g + i) / i;
        if (count > kMax) return kMax;
    }
    for (std::size_t i = 1; i < g; ++i) {
        count *= (p - 1);
        if (count > kMax) return kMax;
    }
    return static_cast<std::uint64_t>(count);
}

std::size_t brute_force_min_weight(const GeneratorMatrix& g, std::uint64_t budget)
{
    const std::size_t k = g.k(), n = g.n();
    const unsigned p = g.field().p();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > (budget + 1) / p + 1) throw BudgetExceeded("p^k - 1 exceeds the brute-force budget");
        total *= p;
    }
    if (total - 1 > budget) {
        throw BudgetExceeded("p^k - 1 = " + std::to_string(total - 1) + " exceeds the brute-force budget of " +
                             std::to_string(budget));
    }

    // Odometer over message digits; bumping digit i by one adds row i (mod p),
    // including the wrap p - 1 -> 0.
    std::vector<Digit> message(k, 0);
    std::vector<Digit> word(n, 0);
    std::size_t nonzero = 0;
    std::size_t best = kNoWeight;
    for (std::uint64_t step = 1; step < total; ++step) {
        std::size_t i = 0;
        for (;;) {
            const auto row = g.row(i);
            for (std::size_t c = 0; c < n; ++c) {
                if (row[c] == 0) continue;
                const Digit before = word[c];
                Digit after = before + row[c];
                if (after >= p) after -= p;
                word[c] = after;
                if (before == 0) ++nonzero;
                if (after == 0) --nonzero;
            }
            if (++message[i] < p) break;
            message[i] = 0;
            ++i;
        }
        // zero only when G is rank deficient; the zero word is not a codeword of interest
        if (nonzero != 0) best = std::min(best, nonzero);
    }
    return best;
}

} // namespace slicegf
