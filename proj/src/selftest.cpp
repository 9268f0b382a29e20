#include "slicegf/selftest.hpp"

#include <ostream>
#include <random>
#include <sstream>

#include "slicegf/arith.hpp"
#include "slicegf/linear_code.hpp"
#include "slicegf/mindist.hpp"

namespace slicegf {
namespace {

constexpr std::size_t kMaxRecordedFailures = 20;

class Checker {
public:
    explicit Checker(SelftestReport& report) : report_(report) {}

    void expect(bool ok, const std::string& what)
    {
        ++report_.checks;
        ++section_checks_;
        if (ok) return;
        ++section_failures_;
        ++report_.failed_checks;
        if (report_.failures.size() < kMaxRecordedFailures) report_.failures.push_back(what);
    }

    /// Returns the counts accumulated since the previous call.
    std::pair<std::size_t, std::size_t> take_section()
    {
        const auto out = std::pair{section_checks_, section_failures_};
        section_checks_ = section_failures_ = 0;
        return out;
    }

private:
    SelftestReport& report_;
    std::size_t section_checks_ = 0;
    std::size_t section_failures_ = 0;
};

void section_line(std::ostream& log, Checker& checker, const std::string& name)
{
    const auto [checks, failures] = checker.take_section();
    log << "  " << name << ": " << checks - failures << "/" << checks << (failures ? "  FAIL" : "") << '\n';
}

/// All p^2 pairs laid out lane by lane: lane a * p + b holds (a, b).
struct PairTable {
    DenseVector left;
    DenseVector right;
};

PairTable pair_table(const FieldSpec& field)
{
    const unsigned p = field.p();
    std::vector<Digit> a, b;
    for (unsigned x = 0; x < p; ++x) {
        for (unsigned y = 0; y < p; ++y) {
            a.push_back(x);
            b.push_back(y);
        }
    }
    return {DenseVector(field, std::move(a)), DenseVector(field, std::move(b))};
}

template <SliceWord Word>
void compare_lanes(Checker& checker, const std::string& name, const PairTable& table, const SlicedVector<Word>& got,
                   auto&& expected)
{
    const unsigned p = table.left.field().p();
    const auto dense = unpack(got);
    for (std::size_t i = 0; i < dense.size(); ++i) {
        const unsigned a = table.left[i], b = table.right[i];
        const unsigned want = expected(a, b);
        std::ostringstream what;
        what << name << " p=" << p << " w=" << kWordBits<Word> << ": " << a << "," << b << " -> " << dense[i]
             << " expected " << want;
        checker.expect(dense[i] == want, what.str());
    }
}

/// Sliced F3 adder with the optimized derivation's line 7 selectable.
template <SliceWord Word>
SlicedVector<Word> add_f3_line7(const SlicedVector<Word>& v, const SlicedVector<Word>& w, bool line7_xor)
{
    SlicedVector<Word> out(v.field(), v.size());
    const std::size_t words = v.words();
    for (std::size_t i = 0; i < words; ++i) {
        const Word a0 = v.plane(0)[i], a1 = v.plane(1)[i];
        const Word b0 = w.plane(0)[i], b1 = w.plane(1)[i];
        Word s0 = a0 ^ b0;
        const Word carry0 = a0 & b0;
        const Word s1 = a1 ^ b1 ^ carry0;
        const Word carry1 = a1 & b1;
        s0 = line7_xor ? (s0 ^ carry1) : (s0 & carry1);
        const Word t = s0 & s1;
        out.plane(0)[i] = (s0 ^ t) & tail_mask<Word>(i + 1 == words ? v.size() : kWordBits<Word>);
        out.plane(1)[i] = (s1 ^ t) & tail_mask<Word>(i + 1 == words ? v.size() : kWordBits<Word>);
    }
    return out;
}

template <SliceWord Word>
void adder_tables(Checker& checker, const FieldSpec& field, const SelftestOptions& options)
{
    const unsigned p = field.p();
    const PairTable table = pair_table(field);
    const auto v = pack<Word>(table.left);
    const auto w = pack<Word>(table.right);
    const auto plus = [p](unsigned a, unsigned b) { return (a + b) % p; };
    const auto minus = [p](unsigned a, unsigned b) { return (a + p - b) % p; };

    compare_lanes(checker, "add", table, add(v, w), plus);
    compare_lanes(checker, "add generic", table, add(v, w, AddPath::Generic), plus);
    if (field.is_mersenne()) {
        compare_lanes(checker, "add_generic_mersenne", table, add_generic_mersenne(v, w), plus);
    } else {
        compare_lanes(checker, "add_generic_any", table, add_generic_any(v, w), plus);
    }
    if (p == 3) {
        const auto f3 = options.mutate_f3_line7 ? add_f3_line7(v, w, false) : add_f3(v, w);
        compare_lanes(checker, "add_f3", table, f3, plus);
        compare_lanes(checker, "add_f3_kat", table, from_kat(add_f3_kat(to_kat(v), to_kat(w))), plus);
        const auto [sum, diff] = addsub_f3(v, w);
        compare_lanes(checker, "addsub_f3 sum", table, sum, plus);
        compare_lanes(checker, "addsub_f3 diff", table, diff, minus);
    }
    if (p == 7) compare_lanes(checker, "add_f7", table, add_f7(v, w), plus);
    compare_lanes(checker, "sub", table, sub(v, w), minus);
    compare_lanes(checker, "negate", table, negate(w), [p](unsigned, unsigned b) { return (p - b) % p; });
    for (unsigned h = 1; h < p; ++h) {
        compare_lanes(checker, "combine h=" + std::to_string(h), table, combine(v, h, w),
                      [p, h](unsigned a, unsigned b) { return (a + h * b) % p; });
    }
}

template <SliceWord Word>
void mask_checks(Checker& checker, const FieldSpec& field)
{
    const PairTable table = pair_table(field);
    const auto v = pack<Word>(table.left);
    const auto w = pack<Word>(table.right);
    const std::string tag = " p=" + std::to_string(field.p()) + " w=" + std::to_string(kWordBits<Word>);
    checker.expect(isometric_sub_mask(v, w) == support(sub(v, w)), "isometric_sub_mask" + tag);
    checker.expect(isometric_add_mask(v, w) == support(add(v, w)), "isometric_add_mask" + tag);
    checker.expect(weight_of_mask(support(add(v, w))) == weight(add(v, w)), "weight" + tag);
}

template <SliceWord Word>
void round_trips(Checker& checker, const FieldSpec& field, std::mt19937_64& rng)
{
    const std::string tag = " p=" + std::to_string(field.p()) + " w=" + std::to_string(kWordBits<Word>);
    for (const std::size_t n : {std::size_t{1}, std::size_t{31}, std::size_t{64}, std::size_t{65}, std::size_t{200}}) {
        std::vector<Digit> digits(n);
        for (auto& d : digits) d = static_cast<Digit>(rng() % field.p());
        const DenseVector dense(field, std::move(digits));
        const auto sliced = pack<Word>(dense);
        checker.expect(unpack(sliced) == dense, "pack/unpack n=" + std::to_string(n) + tag);
        if (field.p() == 3) {
            checker.expect(from_kat(to_kat(sliced)) == sliced, "kat round trip n=" + std::to_string(n) + tag);
        }
        checker.expect(sub(add(sliced, sliced), sliced) == sliced, "(v + v) - v n=" + std::to_string(n) + tag);
    }
}

void line7_demonstration(Checker& checker, std::ostream& log)
{
    const auto with_and = f3_line7_failures(false);
    const auto with_xor = f3_line7_failures(true);
    bool and_fails_2_2 = false;
    for (const auto& [a, b] : with_and) and_fails_2_2 = and_fails_2_2 || (a == 2 && b == 2);
    log << "  F3 optimized adder, line 7 'and': " << 9 - with_and.size() << "/9 pairs correct";
    if (!with_and.empty()) {
        log << ", wrong at";
        for (const auto& [a, b] : with_and) log << ' ' << a << '+' << b;
    }
    log << '\n';
    log << "  F3 optimized adder, line 7 'xor': " << 9 - with_xor.size() << "/9 pairs correct\n";
    checker.expect(and_fails_2_2, "line 7 'and' variant should fail at 2+2");
    checker.expect(with_xor.empty(), "line 7 'xor' variant should pass all 9 pairs");
}

void and_reduction_demonstration(Checker& checker, std::ostream& log)
{
    std::size_t wrong = 0, total = 0;
    for (const unsigned p : {5u, 11u, 13u}) {
        for (unsigned a = 0; a < p; ++a) {
            for (unsigned b = 0; b < p; ++b) {
                ++total;
                if (and_reduced_general_add(p, a, b) != (a + b) % p) ++wrong;
            }
        }
    }
    const unsigned example = and_reduced_general_add(11, 5, 7);
    log << "  non-Mersenne adder, one-bit AND final reduction: " << wrong << "/" << total
        << " pairs wrong over p in {5, 11, 13} (F11 5+7 -> " << example << ")\n";
    checker.expect(example != 1, "AND reduction should mis-reduce F11 5+7");
}

void oracle_sweep(Checker& checker, SelftestReport& report, std::ostream& log)
{
    constexpr std::size_t kCodes = 200;
    constexpr unsigned kPrimes[] = {3, 5, 7, 11};
    std::mt19937_64 rng(2024);
    for (std::size_t i = 0; i < kCodes; ++i) {
        const unsigned p = kPrimes[i % 4];
        std::size_t max_k = 1;
        std::uint64_t size = p;
        while (size * p <= 100'000) {
            size *= p;
            ++max_k;
        }
        const std::size_t k = 1 + rng() % max_k;
        const std::size_t n = k + rng() % (26 - k);
        const auto g = random_code(p, k, n, 1000 + i);
        EngineOptions options;
        options.use_isometric = (i & 1) == 0;
        options.word_width = (i & 2) ? WordWidth::Bits32 : WordWidth::Bits64;
        const auto d = minimum_weight(g, options).distance;
        const auto oracle = brute_force_min_weight(g);
        checker.expect(d == oracle, "code " + std::to_string(i) + " (p=" + std::to_string(p) + ", k=" +
                                        std::to_string(k) + ", n=" + std::to_string(n) + "): engine " +
                                        std::to_string(d) + ", brute force " + std::to_string(oracle));
        if (d == oracle) ++report.codes_verified;
    }
    section_line(log, checker, "oracle sweep");
    log << "  codes verified: " << report.codes_verified << '\n';
}

} // namespace

unsigned f3_optimized_add(unsigned a, unsigned b, bool line7_xor)
{
    const unsigned a0 = a & 1u, a1 = a >> 1, b0 = b & 1u, b1 = b >> 1;
    unsigned s0 = a0 ^ b0;
    const unsigned carry0 = a0 & b0;
    const unsigned s1 = a1 ^ b1 ^ carry0;
    const unsigned carry1 = a1 & b1;
    s0 = line7_xor ? (s0 ^ carry1) : (s0 & carry1);
    const unsigned t = s0 & s1;
    return (s0 ^ t) | ((s1 ^ t) << 1);
}

std::vector<std::pair<unsigned, unsigned>> f3_line7_failures(bool line7_xor)
{
    std::vector<std::pair<unsigned, unsigned>> out;
    for (unsigned a = 0; a < 3; ++a) {
        for (unsigned b = 0; b < 3; ++b) {
            if (f3_optimized_add(a, b, line7_xor) != (a + b) % 3) out.emplace_back(a, b);
        }
    }
    return out;
}

unsigned and_reduced_general_add(unsigned p, unsigned a, unsigned b)
{
    const FieldSpec field(p);
    const int r = field.bits();
    const unsigned full = (1u << r) - 1;
    const unsigned f = field.correction();
    unsigned d = a ^ b, e = a & b;
    for (int guard = 0; e != 0 && guard < 64; ++guard) {
        const unsigned epsilon = (e >> (r - 1)) & 1u;
        const unsigned v = d, w = (e << 1) & full;
        const unsigned ef = epsilon ? f : 0u;
        d = v ^ w ^ ef;
        e = (v & w) | (v & ef) | (w & ef);
    }
    bool t = true;
    for (const int pos : field.one_positions()) t = t && ((d >> pos) & 1u);
    return t ? d ^ p : d;
}

SelftestReport run_selftest(const SelftestOptions& options, std::ostream& log)
{
    SelftestReport report;
    Checker checker(report);
    std::vector<unsigned> primes{3, 5, 7};
    if (options.deep) primes.insert(primes.end(), {11, 13, 31});

    for (const unsigned p : primes) {
        const FieldSpec field(p);
        adder_tables<std::uint32_t>(checker, field, options);
        adder_tables<std::uint64_t>(checker, field, options);
        section_line(log, checker, "adder tables p=" + std::to_string(p));
    }
    for (const unsigned p : primes) {
        mask_checks<std::uint32_t>(checker, FieldSpec(p));
        mask_checks<std::uint64_t>(checker, FieldSpec(p));
    }
    section_line(log, checker, "isometric masks");

    std::mt19937_64 rng(7);
    for (const unsigned p : primes) {
        round_trips<std::uint32_t>(checker, FieldSpec(p), rng);
        round_trips<std::uint64_t>(checker, FieldSpec(p), rng);
    }
    section_line(log, checker, "round trips");

    line7_demonstration(checker, log);
    and_reduction_demonstration(checker, log);
    section_line(log, checker, "documented corrections");

    if (options.deep) oracle_sweep(checker, report, log);

    for (const auto& failure : report.failures) log << "  failed: " << failure << '\n';
    log << (report.passed() ? "PASS" : "FAIL") << ": " << report.checks << " checks";
    if (!report.passed()) log << ", " << report.failed_checks << " failed";
    log << '\n';
    return report;
}

} // namespace slicegf
