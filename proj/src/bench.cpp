#include "slicegf/bench.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "slicegf/arith.hpp"
#include "slicegf/errors.hpp"
#include "slicegf/kernels.hpp"

namespace slicegf {
namespace {

using Clock = std::chrono::steady_clock;

struct Workload {
    FieldSpec field;
    std::size_t length;
    std::vector<Digit> a; // vectors * length, row-major
    std::vector<Digit> b;
};

Workload make_workload(const BenchConfig& config)
{
    Workload w{FieldSpec(config.p), config.length, {}, {}};
    std::mt19937_64 rng(config.seed);
    const std::size_t total = config.vectors * config.length;
    w.a.resize(total);
    w.b.resize(total);
    for (auto& d : w.a) d = static_cast<Digit>(rng() % config.p);
    for (auto& d : w.b) d = static_cast<Digit>(rng() % config.p);
    return w;
}

std::uint64_t checksum(const std::vector<Digit>& digits)
{
    std::uint64_t h = 0xcbf29ce484222325ull; // FNV-1a
    for (const Digit d : digits) {
        h = (h ^ (d & 0xffu)) * 0x100000001b3ull;
        h = (h ^ (d >> 8)) * 0x100000001b3ull;
    }
    return h;
}

template <class Body>
double time_it(Body&& body)
{
    const auto start = Clock::now();
    body();
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// --- sliced -----------------------------------------------------------------

template <SliceWord Word>
std::vector<Word> slice_all(const Workload& w, const std::vector<Digit>& digits, std::size_t vectors)
{
    const std::size_t stride = static_cast<std::size_t>(w.field.bits()) * words_for<Word>(w.length);
    std::vector<Word> out(vectors * stride);
    for (std::size_t v = 0; v < vectors; ++v) {
        std::vector<Digit> row(digits.begin() + static_cast<std::ptrdiff_t>(v * w.length),
                               digits.begin() + static_cast<std::ptrdiff_t>((v + 1) * w.length));
        const auto sliced = pack<Word>(DenseVector(w.field, std::move(row)));
        std::ranges::copy(sliced.data(), out.begin() + static_cast<std::ptrdiff_t>(v * stride));
    }
    return out;
}

template <SliceWord Word>
std::vector<Digit> unslice_all(const Workload& w, const std::vector<Word>& data, std::size_t vectors)
{
    const std::size_t words = words_for<Word>(w.length);
    const std::size_t stride = static_cast<std::size_t>(w.field.bits()) * words;
    std::vector<Digit> out;
    out.reserve(vectors * w.length);
    for (std::size_t v = 0; v < vectors; ++v) {
        SlicedVector<Word> s(w.field, w.length);
        std::copy_n(data.begin() + static_cast<std::ptrdiff_t>(v * stride), stride, s.data().begin());
        const auto dense = unpack(s);
        out.insert(out.end(), dense.digits().begin(), dense.digits().end());
    }
    return out;
}

template <SliceWord Word, class Add>
BenchResult bench_sliced(const Workload& w, const BenchConfig& config, Add add)
{
    const std::size_t words = words_for<Word>(w.length);
    const std::size_t stride = static_cast<std::size_t>(w.field.bits()) * words;
    auto a = slice_all<Word>(w, w.a, config.vectors);
    const auto b = slice_all<Word>(w, w.b, config.vectors);
    const double seconds = time_it([&] {
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
            for (std::size_t v = 0; v < config.vectors; ++v) {
                Word* av = a.data() + v * stride;
                add(av, b.data() + v * stride, av, words);
            }
        }
    });
    return {seconds, checksum(unslice_all<Word>(w, a, config.vectors))};
}

template <SliceWord Word>
BenchResult dispatch_sliced(const Workload& w, const BenchConfig& config)
{
    const FieldSpec& field = w.field;
    switch (field.p()) {
    case 3:
        return bench_sliced<Word>(w, config, [](const Word* x, const Word* y, Word* o, std::size_t n) {
            kernel::add_f3(x, y, o, n);
        });
    case 7:
        return bench_sliced<Word>(w, config, [](const Word* x, const Word* y, Word* o, std::size_t n) {
            kernel::add_f7(x, y, o, n);
        });
    default:
        return bench_sliced<Word>(w, config, [&field](const Word* x, const Word* y, Word* o, std::size_t n) {
            kernel::add_auto(field, x, y, o, n);
        });
    }
}

BenchResult bench_kat(const Workload& w, const BenchConfig& config)
{
    using Word = std::uint64_t;
    const std::size_t words = words_for<Word>(w.length);
    const std::size_t stride = 2 * words;
    auto to_kat_all = [&](const std::vector<Digit>& digits) {
        auto natural = slice_all<Word>(w, digits, config.vectors);
        for (std::size_t v = 0; v < config.vectors; ++v) {
            SlicedVector<Word> s(w.field, w.length);
            std::copy_n(natural.begin() + static_cast<std::ptrdiff_t>(v * stride), stride, s.data().begin());
            const auto kat = to_kat(s);
            std::ranges::copy(kat.data(), natural.begin() + static_cast<std::ptrdiff_t>(v * stride));
        }
        return natural;
    };
    auto a = to_kat_all(w.a);
    const auto b = to_kat_all(w.b);
    const double seconds = time_it([&] {
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
            for (std::size_t v = 0; v < config.vectors; ++v) {
                Word* av = a.data() + v * stride;
                kernel::add_f3_kat(av, b.data() + v * stride, av, words);
            }
        }
    });
    std::vector<Digit> out;
    out.reserve(w.a.size());
    for (std::size_t v = 0; v < config.vectors; ++v) {
        KatVector<Word> kat(w.length);
        std::copy_n(a.begin() + static_cast<std::ptrdiff_t>(v * stride), stride, kat.data().begin());
        const auto dense = unpack(from_kat(kat));
        out.insert(out.end(), dense.digits().begin(), dense.digits().end());
    }
    return {seconds, checksum(out)};
}

// --- contiguous -------------------------------------------------------------

/// Modulus either fixed at compile time (the F3/F7 specializations a
/// hand-written benchmark would use) or read at run time.
template <unsigned P>
struct Modulus {
    static constexpr std::uint32_t value(std::uint32_t) noexcept { return P; }
};
template <>
struct Modulus<0> {
    static std::uint32_t value(std::uint32_t runtime) noexcept { return runtime; }
};

template <unsigned P, bool UseModulo>
BenchResult bench_contig8_for(const Workload& w, const BenchConfig& config)
{
    const std::uint32_t p = Modulus<P>::value(w.field.p());
    if (p > 127) throw InputError("contiguous 8-bit layouts need p < 128");
    std::vector<std::uint8_t> a(w.a.begin(), w.a.end());
    const std::vector<std::uint8_t> b(w.b.begin(), w.b.end());
    const std::size_t len = w.length;
    const double seconds = time_it([&] {
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
            for (std::size_t v = 0; v < config.vectors; ++v) {
                std::uint8_t* x = a.data() + v * len;
                const std::uint8_t* y = b.data() + v * len;
                for (std::size_t i = 0; i < len; ++i) {
                    if constexpr (UseModulo) {
                        x[i] = static_cast<std::uint8_t>((x[i] + y[i]) % p);
                    } else {
                        const std::uint8_t s = static_cast<std::uint8_t>(x[i] + y[i]);
                        x[i] = s >= p ? static_cast<std::uint8_t>(s - p) : s;
                    }
                }
            }
        }
    });
    return {seconds, checksum(std::vector<Digit>(a.begin(), a.end()))};
}

template <bool UseModulo>
BenchResult bench_contig8(const Workload& w, const BenchConfig& config)
{
    switch (w.field.p()) {
    case 3: return bench_contig8_for<3, UseModulo>(w, config);
    case 7: return bench_contig8_for<7, UseModulo>(w, config);
    default: return bench_contig8_for<0, UseModulo>(w, config);
    }
}

template <unsigned P>
BenchResult bench_contig32_for(const Workload& w, const BenchConfig& config)
{
    const std::uint32_t p = Modulus<P>::value(w.field.p());
    const unsigned bits = static_cast<unsigned>(w.field.bits());
    const std::size_t per_word = 32 / bits;
    const std::size_t words = (w.length + per_word - 1) / per_word;
    const std::uint32_t digit_mask = (1u << bits) - 1;

    auto pack_all = [&](const std::vector<Digit>& digits) {
        std::vector<std::uint32_t> out(config.vectors * words, 0);
        for (std::size_t v = 0; v < config.vectors; ++v) {
            for (std::size_t i = 0; i < w.length; ++i) {
                out[v * words + i / per_word] |= digits[v * w.length + i] << (bits * (i % per_word));
            }
        }
        return out;
    };
    auto a = pack_all(w.a);
    const auto b = pack_all(w.b);
    const double seconds = time_it([&] {
        for (std::size_t rep = 0; rep < config.reps; ++rep) {
            for (std::size_t v = 0; v < config.vectors; ++v) {
                std::uint32_t* x = a.data() + v * words;
                const std::uint32_t* y = b.data() + v * words;
                for (std::size_t i = 0; i < words; ++i) {
                    std::uint32_t packed = 0;
                    for (std::size_t d = 0; d < per_word; ++d) {
                        const unsigned shift = static_cast<unsigned>(bits * d);
                        std::uint32_t s = ((x[i] >> shift) & digit_mask) + ((y[i] >> shift) & digit_mask);
                        if (s >= p) s -= p;
                        packed |= s << shift;
                    }
                    x[i] = packed;
                }
            }
        }
    });
    std::vector<Digit> out(w.a.size());
    for (std::size_t v = 0; v < config.vectors; ++v) {
        for (std::size_t i = 0; i < w.length; ++i) {
            out[v * w.length + i] = (a[v * words + i / per_word] >> (bits * (i % per_word))) & digit_mask;
        }
    }
    return {seconds, checksum(out)};
}

BenchResult bench_contig32(const Workload& w, const BenchConfig& config)
{
    switch (w.field.p()) {
    case 3: return bench_contig32_for<3>(w, config);
    case 7: return bench_contig32_for<7>(w, config);
    default: return bench_contig32_for<0>(w, config);
    }
}

constexpr std::array<std::pair<BenchMethod, std::string_view>, 6> kMethodNames{{
    {BenchMethod::Sliced64, "sliced64"},
    {BenchMethod::Sliced32, "sliced32"},
    {BenchMethod::Contig8, "contig8"},
    {BenchMethod::Contig8Mod, "contig8mod"},
    {BenchMethod::Contig32, "contig32"},
    {BenchMethod::Kat3, "kat3"},
}};

} // namespace

std::optional<BenchMethod> parse_bench_method(std::string_view name)
{
    for (const auto& [method, text] : kMethodNames) {
        if (text == name) return method;
    }
    return std::nullopt;
}

std::string_view method_name(BenchMethod method)
{
    for (const auto& [m, text] : kMethodNames) {
        if (m == method) return text;
    }
    return "unknown";
}

BenchResult run_add_benchmark(const BenchConfig& config)
{
    if (config.method == BenchMethod::Kat3 && config.p != 3) {
        throw InputError("method kat3 is only defined for p = 3");
    }
    if (config.length == 0 || config.vectors == 0) throw InputError("benchmark needs non-empty vectors");
    const Workload w = make_workload(config);
    switch (config.method) {
    case BenchMethod::Sliced64: return dispatch_sliced<std::uint64_t>(w, config);
    case BenchMethod::Sliced32: return dispatch_sliced<std::uint32_t>(w, config);
    case BenchMethod::Contig8: return bench_contig8<false>(w, config);
    case BenchMethod::Contig8Mod: return bench_contig8<true>(w, config);
    case BenchMethod::Contig32: return bench_contig32(w, config);
    case BenchMethod::Kat3: return bench_kat(w, config);
    }
    throw InputError("unknown benchmark method");
}

std::string bench_header()
{
    char line[128];
    std::snprintf(line, sizeof line, "%-12s %5s %6s %8s %8s %12s  %-16s", "method", "p", "len", "vectors", "reps",
                  "seconds", "checksum");
    return line;
}

std::string format_bench_row(const BenchConfig& config, const BenchResult& result)
{
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %5u %6zu %8zu %8zu %12.6f  %016llx",
                  std::string(method_name(config.method)).c_str(), config.p, config.length, config.vectors,
                  config.reps, result.seconds, static_cast<unsigned long long>(result.checksum));
    return line;
}

} // namespace slicegf
