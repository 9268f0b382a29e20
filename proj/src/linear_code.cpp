#include "slicegf/linear_code.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <random>
#include <sstream>

#include "slicegf/errors.hpp"

namespace slicegf {
namespace {

Digit mul_mod(Digit a, Digit b, unsigned p) noexcept
{
    return static_cast<Digit>((static_cast<std::uint64_t>(a) * b) % p);
}

Digit inverse_mod(Digit a, unsigned p) noexcept
{
    // a^(p-2) by square-and-multiply
    Digit result = 1;
    Digit base = a;
    for (unsigned e = p - 2; e != 0; e >>= 1) {
        if (e & 1u) result = mul_mod(result, base, p);
        base = mul_mod(base, base, p);
    }
    return result;
}

/// row[target] -= factor * row[source] over a row-major k x n buffer.
void subtract_row(std::vector<Digit>& m, std::size_t n, std::size_t target, std::size_t source, Digit factor,
                  unsigned p)
{
    if (factor == 0) return;
    const Digit neg = static_cast<Digit>(p - factor);
    for (std::size_t c = 0; c < n; ++c) {
        const Digit s = m[source * n + c];
        if (s != 0) m[target * n + c] = static_cast<Digit>((m[target * n + c] + mul_mod(neg, s, p)) % p);
    }
}

void scale_row(std::vector<Digit>& m, std::size_t n, std::size_t row, Digit factor, unsigned p)
{
    for (std::size_t c = 0; c < n; ++c) m[row * n + c] = mul_mod(m[row * n + c], factor, p);
}

struct Elimination {
    std::vector<Digit> reduced;
    std::vector<std::size_t> pivot_columns;
    std::vector<std::size_t> pivot_rows;
};

/// Gauss-Jordan elimination restricted to the columns where `eligible` is true.
Elimination eliminate(const GeneratorMatrix& g, const std::vector<bool>& eligible)
{
    const std::size_t k = g.k(), n = g.n();
    const unsigned p = g.field().p();
    Elimination out{std::vector<Digit>(g.entries().begin(), g.entries().end()), {}, {}};
    std::vector<bool> row_taken(k, false);
    for (std::size_t c = 0; c < n && out.pivot_columns.size() < k; ++c) {
        if (!eligible[c]) continue;
        std::size_t pivot = k;
        for (std::size_t r = 0; r < k; ++r) {
            if (!row_taken[r] && out.reduced[r * n + c] != 0) {
                pivot = r;
                break;
            }
        }
        if (pivot == k) continue;
        scale_row(out.reduced, n, pivot, inverse_mod(out.reduced[pivot * n + c], p), p);
        for (std::size_t r = 0; r < k; ++r) {
            if (r != pivot) subtract_row(out.reduced, n, r, pivot, out.reduced[r * n + c], p);
        }
        row_taken[pivot] = true;
        out.pivot_columns.push_back(c);
        out.pivot_rows.push_back(pivot);
    }
    return out;
}

std::string_view trim(std::string_view s) noexcept
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t pos = 0;
    while (pos < line.size()) {
        const auto start = line.find_first_not_of(" \t", pos);
        if (start == std::string_view::npos) break;
        auto end = line.find_first_of(" \t", start);
        if (end == std::string_view::npos) end = line.size();
        fields.push_back(line.substr(start, end - start));
        pos = end;
    }
    return fields;
}

std::uint64_t parse_uint(std::string_view token, std::size_t line_no)
{
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
        throw InputError("line " + std::to_string(line_no) + ": expected a non-negative integer, got '" +
                         std::string(token) + "'");
    }
    return value;
}

/// Uniform integer in [0, bound) from raw 64-bit draws (rejection sampling),
/// so the sequence depends only on the mt19937_64 stream.
std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound)
{
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
    for (;;) {
        const std::uint64_t x = rng();
        if (x < limit) return x % bound;
    }
}

} // namespace

GeneratorMatrix::GeneratorMatrix(FieldSpec field, std::size_t k, std::size_t n, std::vector<Digit> entries)
    : field_(std::move(field)), k_(k), n_(n), entries_(std::move(entries))
{
    if (k_ == 0) throw InputError("generator matrix needs k >= 1");
    if (k_ > n_) throw InputError("generator matrix needs k <= n (k = " + std::to_string(k_) + ", n = " + std::to_string(n_) + ")");
    if (entries_.size() != k_ * n_) throw InputError("generator matrix entry count is not k * n");
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        if (entries_[i] >= field_.p()) {
            throw InputError("entry (" + std::to_string(i / n_) + ", " + std::to_string(i % n_) + ") = " +
                             std::to_string(entries_[i]) + " is not below p = " + std::to_string(field_.p()));
        }
    }
}

DenseVector GeneratorMatrix::row_vector(std::size_t i) const
{
    const auto r = row(i);
    return DenseVector(field_, std::vector<Digit>(r.begin(), r.end()));
}

GeneratorMatrix parse_matrix(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t line_no = 0;
    for (std::size_t pos = 0; pos <= text.size();) {
        auto end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++line_no;
        const auto line = trim(text.substr(pos, end - pos));
        if (!line.empty() && line.front() != '#') lines.emplace_back(line_no, line);
        pos = end + 1;
    }

    const char* const keys[] = {"p", "k", "n"};
    std::uint64_t header[3] = {};
    if (lines.size() < 3) throw InputError("matrix file needs the header lines 'p', 'k' and 'n'");
    for (int h = 0; h < 3; ++h) {
        const auto [no, line] = lines[h];
        const auto fields = split_fields(line);
        if (fields.size() != 2 || fields[0] != keys[h]) {
            throw InputError("line " + std::to_string(no) + ": expected '" + keys[h] + " <int>'");
        }
        header[h] = parse_uint(fields[1], no);
    }
    if (header[0] > std::numeric_limits<unsigned>::max()) throw InputError("p is too large");
    const FieldSpec field(static_cast<unsigned>(header[0]));
    const std::size_t k = header[1], n = header[2];
    if (k == 0 || k > n) throw InputError("header needs 1 <= k <= n");
    if (lines.size() - 3 != k) {
        throw InputError("header declares k = " + std::to_string(k) + " rows but " + std::to_string(lines.size() - 3) +
                         " follow");
    }

    std::vector<Digit> entries;
    entries.reserve(k * n);
    for (std::size_t r = 0; r < k; ++r) {
        const auto [no, line] = lines[3 + r];
        const auto fields = split_fields(line);
        if (fields.size() != n) {
            throw InputError("line " + std::to_string(no) + ": expected " + std::to_string(n) + " digits, got " +
                             std::to_string(fields.size()));
        }
        for (const auto token : fields) {
            const auto value = parse_uint(token, no);
            if (value >= field.p()) {
                throw InputError("line " + std::to_string(no) + ": digit " + std::to_string(value) +
                                 " is not below p = " + std::to_string(field.p()));
            }
            entries.push_back(static_cast<Digit>(value));
        }
    }
    return GeneratorMatrix(field, k, n, std::move(entries));
}

std::string serialize_matrix(const GeneratorMatrix& g)
{
    std::ostringstream out;
    out << "p " << g.field().p() << "\nk " << g.k() << "\nn " << g.n() << '\n';
    for (std::size_t r = 0; r < g.k(); ++r) {
        const auto row = g.row(r);
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? " " : "") << row[c];
        out << '\n';
    }
    return out.str();
}

std::size_t rank(const GeneratorMatrix& g)
{
    return eliminate(g, std::vector<bool>(g.n(), true)).pivot_columns.size();
}

GeneratorMatrix random_code(unsigned p, std::size_t k, std::size_t n, std::uint64_t seed)
{
    const FieldSpec field(p);
    if (k == 0 || k > n) throw InputError("random_code needs 1 <= k <= n");
    constexpr int kMaxDrawsPerRow = 1000;

    std::mt19937_64 rng(seed);
    std::vector<Digit> entries;
    entries.reserve(k * n);
    // Echelon copy of the accepted rows: basis[b] has a leading 1 at lead[b].
    std::vector<std::vector<Digit>> basis;
    std::vector<std::size_t> lead;

    for (std::size_t r = 0; r < k; ++r) {
        bool accepted = false;
        for (int attempt = 0; attempt < kMaxDrawsPerRow && !accepted; ++attempt) {
            std::vector<Digit> row(n);
            for (auto& d : row) d = static_cast<Digit>(draw_below(rng, p));
            std::vector<Digit> reduced = row;
            for (std::size_t b = 0; b < basis.size(); ++b) {
                const Digit factor = reduced[lead[b]];
                if (factor == 0) continue;
                const Digit neg = static_cast<Digit>(p - factor);
                for (std::size_t c = 0; c < n; ++c) {
                    reduced[c] = static_cast<Digit>((reduced[c] + mul_mod(neg, basis[b][c], p)) % p);
                }
            }
            const auto it = std::ranges::find_if(reduced, [](Digit d) { return d != 0; });
            if (it == reduced.end()) continue;
            const std::size_t col = static_cast<std::size_t>(it - reduced.begin());
            const Digit inv = inverse_mod(*it, p);
            for (auto& d : reduced) d = mul_mod(d, inv, p);
            basis.push_back(std::move(reduced));
            lead.push_back(col);
            entries.insert(entries.end(), row.begin(), row.end());
            accepted = true;
        }
        if (!accepted) throw InputError("random_code could not draw an independent row");
    }
    return GeneratorMatrix(field, k, n, std::move(entries));
}

std::vector<std::size_t> GammaSet::ranks() const
{
    std::vector<std::size_t> out;
    out.reserve(matrices.size());
    for (const auto& g : matrices) out.push_back(g.rank);
    return out;
}

GammaSet gamma_set(const GeneratorMatrix& g)
{
    const std::size_t k = g.k(), n = g.n();
    GammaSet set;
    std::vector<bool> used(n, false);
    for (;;) {
        std::vector<bool> eligible(n);
        for (std::size_t c = 0; c < n; ++c) eligible[c] = !used[c];
        Elimination e = eliminate(g, eligible);
        const std::size_t found = e.pivot_columns.size();
        if (found == 0) break;
        if (set.matrices.empty() && found < k) {
            throw RankDeficientError("rank < k: generator matrix has rank " + std::to_string(found) + " but k = " +
                                     std::to_string(k));
        }

        // pivot rows first, in pivot order, then the rest in original order
        std::vector<std::size_t> order = e.pivot_rows;
        for (std::size_t r = 0; r < k; ++r) {
            if (std::ranges::find(e.pivot_rows, r) == e.pivot_rows.end()) order.push_back(r);
        }
        std::vector<Digit> entries;
        entries.reserve(k * n);
        for (const std::size_t r : order) {
            entries.insert(entries.end(), e.reduced.begin() + static_cast<std::ptrdiff_t>(r * n),
                           e.reduced.begin() + static_cast<std::ptrdiff_t>((r + 1) * n));
        }
        for (const std::size_t c : e.pivot_columns) used[c] = true;
        set.matrices.push_back(GammaMatrix{GeneratorMatrix(g.field(), k, n, std::move(entries)),
                                           std::move(e.pivot_columns), found});
        if (found < k) break;
    }
    return set;
}

} // namespace slicegf
