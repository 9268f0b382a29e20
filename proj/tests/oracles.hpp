#pragma once

// Plain dense reference implementations. They share nothing with the
// library beyond the Digit type.

#include <cstdint>
#include <random>
#include <vector>

#include "slicegf/field.hpp"

namespace oracle {

using slicegf::Digit;

inline std::vector<Digit> random_digits(std::mt19937_64& rng, unsigned p, std::size_t n)
{
    std::vector<Digit> out(n);
    for (auto& d : out) d = static_cast<Digit>(rng() % p);
    return out;
}

inline std::vector<Digit> add(const std::vector<Digit>& a, const std::vector<Digit>& b, unsigned p)
{
    std::vector<Digit> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + b[i]) % p;
    return out;
}

inline std::vector<Digit> combine(const std::vector<Digit>& a, unsigned h, const std::vector<Digit>& b, unsigned p)
{
    std::vector<Digit> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = (a[i] + h * b[i]) % p;
    return out;
}

inline std::size_t nonzeros(const std::vector<Digit>& v)
{
    std::size_t count = 0;
    for (const Digit d : v) count += d != 0;
    return count;
}

/// Minimum nonzero weight over all p^k messages m, codeword = sum m_i * row_i.
inline std::size_t min_distance(const std::vector<Digit>& rows, std::size_t k, std::size_t n, unsigned p)
{
    std::vector<Digit> message(k, 0);
    std::size_t best = n + 1;
    for (;;) {
        std::size_t i = 0;
        while (i < k && message[i] == p - 1) message[i++] = 0;
        if (i == k) break;
        ++message[i];
        std::size_t weight = 0;
        for (std::size_t c = 0; c < n; ++c) {
            std::uint64_t sum = 0;
            for (std::size_t r = 0; r < k; ++r) sum += static_cast<std::uint64_t>(message[r]) * rows[r * n + c];
            weight += sum % p != 0;
        }
        if (weight != 0 && weight < best) best = weight;
    }
    return best;
}

/// Rank by plain row reduction modulo p.
inline std::size_t rank(std::vector<Digit> m, std::size_t rows, std::size_t cols, unsigned p)
{
    auto inv = [p](std::uint64_t a) {
        std::uint64_t r = 1;
        for (unsigned e = p - 2; e; e >>= 1, a = a * a % p) {
            if (e & 1) r = r * a % p;
        }
        return r;
    };
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot * cols + c] == 0) ++pivot;
        if (pivot == rows) continue;
        for (std::size_t j = 0; j < cols; ++j) std::swap(m[pivot * cols + j], m[rank * cols + j]);
        const std::uint64_t scale = inv(m[rank * cols + c]);
        for (std::size_t j = 0; j < cols; ++j) m[rank * cols + j] = static_cast<Digit>(m[rank * cols + j] * scale % p);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r * cols + c] == 0) continue;
            const std::uint64_t f = m[r * cols + c];
            for (std::size_t j = 0; j < cols; ++j) {
                m[r * cols + j] = static_cast<Digit>((m[r * cols + j] + (p - f) * m[rank * cols + j]) % p);
            }
        }
        ++rank;
    }
    return rank;
}

inline std::uint64_t binomial(std::size_t n, std::size_t k)
{
    if (k > n) return 0;
    std::uint64_t out = 1;
    for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

inline std::uint64_t power(std::uint64_t base, std::size_t exp)
{
    std::uint64_t out = 1;
    while (exp--) out *= base;
    return out;
}

} // namespace oracle
