#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "slicegf/cli.hpp"

using namespace slicegf;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch_dir()
{
    const auto dir = std::filesystem::temp_directory_path() / "slicegf_cli_test";
    std::filesystem::create_directories(dir);
    return dir;
}

std::string slurp(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::filesystem::path write_text(const std::string& name, const std::string& text)
{
    const auto path = scratch_dir() / name;
    std::ofstream(path, std::ios::binary) << text;
    return path;
}

} // namespace

TEST_CASE("gen")
{
    const auto path = (scratch_dir() / "c.mat").string();
    const auto first = run({"gen", "--p", "3", "--k", "5", "--n", "10", "--seed", "1", "--out", path});
    CHECK(first.code == 0);
    const auto text = slurp(path);
    CHECK(text.rfind("p 3\nk 5\nn 10\n", 0) == 0);
    CHECK(run({"gen", "--p", "3", "--k", "5", "--n", "10", "--seed", "1", "--out", path}).code == 0);
    CHECK(slurp(path) == text);

    const auto bad = run({"gen", "--p", "4", "--k", "5", "--n", "10", "--seed", "1", "--out", path});
    CHECK(bad.code == kExitUsage);
    CHECK(bad.err.find("p must be prime ≥ 3") != std::string::npos);
    CHECK(run({"gen", "--p", "3", "--k", "11", "--n", "10", "--out", path}).code == kExitUsage);
    CHECK(run({"gen", "--p", "3", "--k", "5"}).code == kExitUsage);
    CHECK(run({"gen", "--p", "3", "--k", "2", "--n", "4", "--out", "/nonexistent/dir/x.mat"}).code == kExitInput);

    const auto many = (scratch_dir() / "batch.mat").string();
    CHECK(run({"gen", "--p", "7", "--k", "3", "--n", "8", "--seed", "10", "--out", many, "--count", "3"}).code == 0);
    std::set<std::string> contents;
    for (int i = 0; i < 3; ++i) {
        const auto file = scratch_dir() / ("batch_" + std::to_string(i) + ".mat");
        REQUIRE(std::filesystem::exists(file));
        contents.insert(slurp(file));
    }
    CHECK(contents.size() == 3);
    const auto single = (scratch_dir() / "single.mat").string();
    run({"gen", "--p", "7", "--k", "3", "--n", "8", "--seed", "11", "--out", single});
    CHECK(contents.count(slurp(single)) == 1);
}

TEST_CASE("mindist")
{
    const auto rep = write_text("repetition_f7_n5.mat", "p 7\nk 1\nn 5\n1 1 1 1 1\n").string();
    const auto r = run({"mindist", "--in", rep});
    CHECK(r.code == 0);
    CHECK(r.out == "mindist 5\n");
    CHECK_FALSE(r.err.empty());

    const auto tetra = write_text("tetracode.mat", "p 3\nk 2\nn 4\n1 0 1 1\n0 1 1 2\n").string();
    CHECK(run({"mindist", "--in", tetra, "--verify-brute-force"}).out == "mindist 3\n");
    CHECK(run({"mindist", "--in", tetra, "--verify-brute-force"}).code == 0);

    const auto code = (scratch_dir() / "m.mat").string();
    run({"gen", "--p", "5", "--k", "6", "--n", "18", "--seed", "4", "--out", code});
    const auto one = run({"mindist", "--in", code});
    for (const auto& extra : std::vector<std::vector<std::string>>{{"--threads", "4"},
                                                                   {"--word", "32"},
                                                                   {"--no-isometric"},
                                                                   {"--no-early-term"},
                                                                   {"--force-generic"},
                                                                   {"--verify-brute-force"}}) {
        std::vector<std::string> args{"mindist", "--in", code};
        args.insert(args.end(), extra.begin(), extra.end());
        const auto other = run(args);
        CHECK(other.code == 0);
        CHECK(other.out == one.out);
    }

    CHECK(run({"mindist", "--in", (scratch_dir() / "missing.mat").string()}).code == kExitInput);
    CHECK(run({"mindist", "--in", write_text("bad.mat", "p 3\nk 2\nn 2\n1 0\n").string()}).code == kExitInput);
    CHECK(run({"mindist", "--in", write_text("dep.mat", "p 3\nk 2\nn 2\n1 1\n2 2\n").string()}).code == kExitInput);
    CHECK(run({"mindist", "--in", code, "--word", "16"}).code == kExitUsage);
    CHECK(run({"mindist", "--in", code, "--threads", "0"}).code == kExitUsage);
    CHECK(run({"mindist"}).code == kExitUsage);
}

TEST_CASE("mindist --json")
{
    const auto code = (scratch_dir() / "j.mat").string();
    run({"gen", "--p", "3", "--k", "5", "--n", "12", "--seed", "2", "--out", code});
    const auto r = run({"mindist", "--in", code, "--json", "--threads", "2"});
    CHECK(r.code == 0);
    const auto report = nlohmann::json::parse(r.out);
    for (const char* key : {"p", "k", "n", "d", "elapsed_seconds", "codewords_visited", "stages", "options"}) {
        CHECK(report.contains(key));
    }
    CHECK(report["p"] == 3);
    CHECK(report["n"] == 12);
    CHECK(report["options"]["threads"] == 2);
    CHECK(report["d"].get<int>() <= 12 - 5 + 1);
    REQUIRE_FALSE(report["stages"].empty());
    for (const auto& stage : report["stages"]) {
        CHECK(stage.contains("g"));
        CHECK(stage.contains("L"));
        CHECK(stage.contains("U"));
    }
}

TEST_CASE("bench-add")
{
    const auto kat = run({"bench-add", "--p", "3", "--method", "kat3", "--len", "64", "--vectors", "4", "--reps", "2"});
    CHECK(kat.code == 0);
    CHECK(kat.out.find("kat3") != std::string::npos);
    CHECK(run({"bench-add", "--p", "7", "--method", "kat3"}).code == kExitUsage);
    CHECK(run({"bench-add", "--p", "7", "--method", "nope"}).code == kExitUsage);
    CHECK(run({"bench-add", "--p", "9", "--method", "sliced64"}).code == kExitUsage);

    for (const char* p : {"3", "5", "7", "11"}) {
        std::set<std::string> checksums;
        for (const char* method : {"sliced64", "sliced32", "contig8", "contig8mod", "contig32", "kat3"}) {
            if (std::string(method) == "kat3" && std::string(p) != "3") continue;
            const auto r = run({"bench-add", "--p", p, "--method", method, "--len", "64", "--vectors", "10", "--reps",
                                "10"});
            REQUIRE(r.code == 0);
            const auto row = r.out.substr(r.out.find('\n') + 1);
            checksums.insert(row.substr(row.find_last_of(' ') + 1));
        }
        CAPTURE(p);
        CHECK(checksums.size() == 1);
    }
}

TEST_CASE("selftest")
{
    const auto quick = run({"selftest"});
    CHECK(quick.code == 0);
    CHECK(quick.out.find("PASS") != std::string::npos);

    const auto deep = run({"selftest", "--deep"});
    CHECK(deep.code == 0);
    CHECK(deep.out.find("codes verified: 200") != std::string::npos);

    const auto mutated = run({"selftest", "--f3-line7-and"});
    CHECK(mutated.code == kExitFailure);
    CHECK(mutated.out.find("FAIL") != std::string::npos);
    CHECK(mutated.out.find("2,2 -> 0 expected 1") != std::string::npos);
}

TEST_CASE("usage")
{
    CHECK(run({}).code == kExitUsage);
    CHECK(run({"frobnicate"}).code == kExitUsage);
    CHECK(run({"--help"}).code == kExitOk);
}
