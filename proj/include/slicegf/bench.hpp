#pragma once

// Vector-addition throughput harness: two sets of vectors, the first
// accumulating the second `reps` times, across storage layouts.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace slicegf {

enum class BenchMethod {
    Sliced64,   ///< sliced-bit storage, 64-bit words
    Sliced32,   ///< sliced-bit storage, 32-bit words
    Contig8,    ///< one digit per byte, compare-and-subtract reduction
    Contig8Mod, ///< one digit per byte, % reduction
    Contig32,   ///< floor(32 / r) digits packed per 32-bit word
    Kat3,       ///< sliced 64-bit words, KAT encoding (p = 3 only)
};

std::optional<BenchMethod> parse_bench_method(std::string_view name);
std::string_view method_name(BenchMethod method);

struct BenchConfig {
    unsigned p = 3;
    BenchMethod method = BenchMethod::Sliced64;
    std::size_t length = 512;
    std::size_t vectors = 10'000;
    std::size_t reps = 10'000;
    std::uint64_t seed = 1;
};

struct BenchResult {
    double seconds = 0.0;
    std::uint64_t checksum = 0; ///< hash of the final accumulated digits
};

/// Throws InputError for invalid method/field combinations or empty workloads.
BenchResult run_add_benchmark(const BenchConfig& config);

std::string bench_header();
std::string format_bench_row(const BenchConfig& config, const BenchResult& result);

} // namespace slicegf
