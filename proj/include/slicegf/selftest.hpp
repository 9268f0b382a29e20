#pragma once

// Exhaustive adder tables, mask and round-trip checks, and the oracle sweep
// behind `slicegf selftest`.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace slicegf {

struct SelftestOptions {
    bool deep = false;
    /// Run the F3 table against the line-7 "and" variant of the optimized
    /// F3 adder instead of the shipped one.
    bool mutate_f3_line7 = false;
};

struct SelftestReport {
    std::size_t checks = 0;
    std::size_t failed_checks = 0;
    std::size_t codes_verified = 0;
    std::vector<std::string> failures; ///< first few failure descriptions

    bool passed() const noexcept { return failed_checks == 0; }
};

/// Writes one line per section to `log` and a final PASS/FAIL summary.
SelftestReport run_selftest(const SelftestOptions& options, std::ostream& log);

/// Scalar optimized F3 adder on the natural encoding; `line7_xor` selects
/// s0 ^= carry1 (correct) or s0 &= carry1.
unsigned f3_optimized_add(unsigned a, unsigned b, bool line7_xor);

/// The (a, b) pairs over F3 where f3_optimized_add disagrees with (a + b) mod 3.
std::vector<std::pair<unsigned, unsigned>> f3_line7_failures(bool line7_xor);

/// Non-Mersenne scalar addition whose final step is the one-bit AND
/// reduction (t = AND of d over the one-bits of p, then d ^= t * p). It only
/// clears d == p and leaves d in (p, 2^r) unreduced.
unsigned and_reduced_general_add(unsigned p, unsigned a, unsigned b);

} // namespace slicegf
