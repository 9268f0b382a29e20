#include "slicegf/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "slicegf/bench.hpp"
#include "slicegf/errors.hpp"
#include "slicegf/linear_code.hpp"
#include "slicegf/mindist.hpp"
#include "slicegf/selftest.hpp"

namespace slicegf {
namespace {

struct GenArgs {
    unsigned p = 0;
    std::size_t k = 0;
    std::size_t n = 0;
    std::uint64_t seed = 1;
    std::string out;
    std::optional<std::size_t> count;
};

struct MindistArgs {
    std::string in;
    unsigned threads = 1;
    unsigned word = 64;
    bool no_isometric = false;
    bool no_early_term = false;
    bool force_generic = false;
    bool verify = false;
    bool json = false;
};

struct BenchArgs {
    unsigned p = 3;
    std::string method = "sliced64";
    BenchConfig config;
};

struct SelftestArgs {
    bool deep = false;
    bool f3_line7_and = false;
};

/// <stem>_<i><ext> for the i-th file of a --count run.
std::filesystem::path numbered_path(const std::filesystem::path& base, std::size_t i)
{
    std::filesystem::path out = base;
    out.replace_filename(base.stem().string() + "_" + std::to_string(i) + base.extension().string());
    return out;
}

bool write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) return false;
    file << text;
    file.flush();
    return static_cast<bool>(file);
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err)
{
    if (args.p < 3 || !is_prime(args.p) || args.p >= (1u << kMaxBits)) {
        err << "error: p must be prime ≥ 3 (and below 65536), got " << args.p << '\n';
        return kExitUsage;
    }
    if (args.k == 0 || args.k > args.n) {
        err << "error: need 1 ≤ k ≤ n, got k = " << args.k << ", n = " << args.n << '\n';
        return kExitUsage;
    }
    if (args.count && *args.count == 0) {
        err << "error: --count must be at least 1\n";
        return kExitUsage;
    }
    const std::size_t count = args.count.value_or(1);
    for (std::size_t i = 0; i < count; ++i) {
        const std::filesystem::path path = args.count ? numbered_path(args.out, i) : std::filesystem::path(args.out);
        const auto g = random_code(args.p, args.k, args.n, args.seed + i);
        if (!write_file(path, serialize_matrix(g))) {
            err << "error: cannot write " << path.string() << '\n';
            return kExitInput;
        }
        out << "wrote " << path.string() << '\n';
    }
    return kExitOk;
}

std::string read_file(const std::string& path)
{
    std::ifstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot read " + path);
    std::ostringstream text;
    text << file.rdbuf();
    return text.str();
}

nlohmann::json report_json(const MindistArgs& args, const GeneratorMatrix& g, const MinDistResult& result,
                           double seconds, std::optional<std::size_t> oracle)
{
    nlohmann::json stages = nlohmann::json::array();
    for (const auto& s : result.state.snapshots) stages.push_back({{"g", s.g}, {"L", s.lower}, {"U", s.upper}});
    nlohmann::json report{
        {"p", g.field().p()},
        {"k", g.k()},
        {"n", g.n()},
        {"d", result.distance},
        {"elapsed_seconds", seconds},
        {"codewords_visited", result.state.codewords_visited()},
        {"stages", stages},
        {"options",
         {{"threads", args.threads},
          {"word", args.word},
          {"isometric", !args.no_isometric},
          {"early_termination", !args.no_early_term},
          {"force_generic", args.force_generic},
          {"verify_brute_force", args.verify}}},
        {"input", args.in},
        {"terminated_early", result.state.terminated_early},
    };
    if (oracle) report["brute_force_d"] = *oracle;
    return report;
}

void human_report(std::ostream& err, const MindistArgs& args, const GeneratorMatrix& g, const MinDistResult& result,
                  double seconds)
{
    err << "input            " << args.in << '\n'
        << "code             [" << g.n() << ", " << g.k() << "] over F" << g.field().p() << '\n'
        << "distance         " << result.distance << '\n'
        << "elapsed          " << seconds << " s\n"
        << "codewords        " << result.state.codewords_visited() << '\n'
        << "early stop       " << (result.state.terminated_early ? "yes" : "no") << '\n'
        << "options          threads=" << args.threads << " word=" << args.word
        << " isometric=" << (args.no_isometric ? "off" : "on") << " early-term=" << (args.no_early_term ? "off" : "on")
        << " generic=" << (args.force_generic ? "on" : "off") << '\n';
    for (const auto& s : result.state.snapshots) {
        err << "  g=" << s.g << "  L=" << s.lower << "  U=" << s.upper << '\n';
    }
}

int cmd_mindist(const MindistArgs& args, std::ostream& out, std::ostream& err)
{
    EngineOptions options;
    options.threads = args.threads;
    options.use_isometric = !args.no_isometric;
    options.early_termination = !args.no_early_term;
    options.word_width = args.word == 32 ? WordWidth::Bits32 : WordWidth::Bits64;
    options.force_generic_arith = args.force_generic;

    std::optional<GeneratorMatrix> g;
    try {
        g = parse_matrix(read_file(args.in));
    } catch (const InputError& e) {
        err << "error: " << args.in << ": " << e.what() << '\n';
        return kExitInput;
    }

    MinDistResult result;
    double seconds = 0.0;
    try {
        const auto start = std::chrono::steady_clock::now();
        result = minimum_weight(*g, options);
        seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kExitFailure;
    }

    std::optional<std::size_t> oracle;
    if (args.verify) {
        try {
            oracle = brute_force_min_weight(*g);
        } catch (const BudgetExceeded& e) {
            err << "brute-force check skipped: " << e.what() << '\n';
        }
    }

    if (args.json) {
        out << report_json(args, *g, result, seconds, oracle).dump(2) << '\n';
    } else {
        out << "mindist " << result.distance << '\n';
        human_report(err, args, *g, result, seconds);
    }
    if (oracle) {
        if (*oracle != result.distance) {
            err << "oracle mismatch: engine " << result.distance << ", brute force " << *oracle << '\n';
            return kExitFailure;
        }
        err << "brute force      agrees (" << *oracle << ")\n";
    }
    return kExitOk;
}

int cmd_bench(BenchArgs args, std::ostream& out, std::ostream& err)
{
    const auto method = parse_bench_method(args.method);
    if (!method) {
        err << "error: unknown method '" << args.method << "'\n";
        return kExitUsage;
    }
    if (args.p < 3 || !is_prime(args.p) || args.p >= (1u << kMaxBits)) {
        err << "error: p must be prime ≥ 3, got " << args.p << '\n';
        return kExitUsage;
    }
    args.config.p = args.p;
    args.config.method = *method;
    try {
        const auto result = run_add_benchmark(args.config);
        out << bench_header() << '\n' << format_bench_row(args.config, result) << '\n';
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitOk;
}

int cmd_selftest(const SelftestArgs& args, std::ostream& out)
{
    SelftestOptions options;
    options.deep = args.deep;
    options.mutate_f3_line7 = args.f3_line7_and;
    return run_selftest(options, out).passed() ? kExitOk : kExitFailure;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Sliced-bit finite field arithmetic and minimum distance of linear codes", "slicegf"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Write random full-rank generator matrices");
    gen_cmd->add_option("--p", gen.p, "Field characteristic (prime ≥ 3)")->required();
    gen_cmd->add_option("--k", gen.k, "Dimension")->required();
    gen_cmd->add_option("--n", gen.n, "Length")->required();
    gen_cmd->add_option("--seed", gen.seed, "RNG seed")->capture_default_str();
    gen_cmd->add_option("--out", gen.out, "Output file")->required();
    gen_cmd->add_option("--count", gen.count, "Write N files <stem>_<i><ext> with seeds seed+i");

    MindistArgs mindist;
    auto* mindist_cmd = app.add_subcommand("mindist", "Minimum distance of the code in a matrix file");
    mindist_cmd->add_option("--in", mindist.in, "Matrix file")->required();
    mindist_cmd->add_option("--threads", mindist.threads, "Worker threads")
        ->capture_default_str()
        ->check(CLI::Range(1u, 1024u));
    mindist_cmd->add_option("--word", mindist.word, "Word width")->capture_default_str()->check(CLI::IsMember({32u, 64u}));
    mindist_cmd->add_flag("--no-isometric", mindist.no_isometric, "Compute every final sum exactly");
    mindist_cmd->add_flag("--no-early-term", mindist.no_early_term, "Finish every stage");
    mindist_cmd->add_flag("--force-generic", mindist.force_generic, "Use the looping adders even for F3/F7");
    mindist_cmd->add_flag("--verify-brute-force", mindist.verify, "Check against exhaustive enumeration");
    mindist_cmd->add_flag("--json", mindist.json, "Print the JSON report instead of the mindist line");

    BenchArgs bench;
    auto* bench_cmd = app.add_subcommand("bench-add", "Time vector additions across storage layouts");
    bench_cmd->add_option("--p", bench.p, "Field characteristic")->capture_default_str();
    bench_cmd->add_option("--method", bench.method, "sliced64 | sliced32 | contig8 | contig8mod | contig32 | kat3")
        ->capture_default_str();
    bench_cmd->add_option("--len", bench.config.length, "Digits per vector")->capture_default_str();
    bench_cmd->add_option("--vectors", bench.config.vectors, "Vectors per set")->capture_default_str();
    bench_cmd->add_option("--reps", bench.config.reps, "Repetitions")->capture_default_str();
    bench_cmd->add_option("--seed", bench.config.seed, "Operand seed")->capture_default_str();

    SelftestArgs selftest;
    auto* selftest_cmd = app.add_subcommand("selftest", "Exhaustive arithmetic checks");
    selftest_cmd->add_flag("--deep", selftest.deep, "Add p = 11, 13, 31 and a 200-code oracle sweep");
    selftest_cmd->add_flag("--f3-line7-and", selftest.f3_line7_and,
                           "Test the F3 table against the line-7 'and' variant of the optimized adder");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (gen_cmd->parsed()) return cmd_gen(gen, out, err);
        if (mindist_cmd->parsed()) return cmd_mindist(mindist, out, err);
        if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
        if (selftest_cmd->parsed()) return cmd_selftest(selftest, out);
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const InvariantViolation& e) {
        err << "invariant violation: " << e.what() << '\n';
        return kExitFailure;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

} // namespace slicegf
