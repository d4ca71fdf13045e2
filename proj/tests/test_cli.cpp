#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "zariski/io.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = zariski::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp(const std::string& name) { return fs::temp_directory_path() / ("zariski_cli_" + name); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("gram text output") {
    auto r = run({"gram", "--indices", "1,2,3"});
    CHECK(r.code == 0);
    CHECK(r.out == "[[3,-1,-1],[-1,3,-1],[-1,-1,3]]\n");
    r = run({"gram", "--indices", "L1,L2,L4"});
    CHECK(r.out == "[[3,-1,-1],[-1,3,1],[-1,1,3]]\n");
    r = run({"gram", "--indices", "2, 4 ,7"});
    CHECK(r.out == "[[3,1,1],[1,3,1],[1,1,3]]\n");
}

TEST_CASE("structured output") {
    const auto r = run({"gram", "--indices", "1,2,4", "--format", "structured"});
    REQUIRE(r.code == 0);
    const auto report = zariski::io::load_report(r.out);
    CHECK(report.status == "ok");
    CHECK(report.input == "builtin:klein");
    CHECK(report.input_digest == zariski::io::dataset_digest(zariski::io::builtin_klein()));
    CHECK(report.command == std::vector<std::string>{"gram", "--indices", "1,2,4", "--format", "structured"});
    CHECK(report.results["matrix"] == json{{3, -1, -1}, {-1, 3, 1}, {-1, 1, 3}});
    CHECK(report.results["lines"] == json{"L1", "L2", "L4"});
}

TEST_CASE("invariants, connected numbers and parity") {
    CHECK(run({"invariants", "--indices", "1,2,3,5"}).out == "(0,4)\n");
    CHECK(run({"invariants", "--indices", "1,2,3,6"}).out == "(2,2)\n");
    CHECK(run({"invariants", "--indices", "1,2,4,7"}).out == "(4,0)\n");
    const auto c = run({"connected", "--indices", "1,2,3", "--format", "structured", "--oracle"});
    REQUIRE(c.code == 0);
    const auto report = zariski::io::load_report(c.out);
    CHECK(report.results["connected_number"] == 2);
    CHECK(report.results["methods"]["parity"] == 2);
    CHECK(report.results["methods"]["determinant"] == 2);
    REQUIRE(report.oracle.has_value());
    CHECK((*report.oracle)["connected_number"] == 2);
    CHECK(run({"connected", "--indices", "1,2,4"}).out.rfind("connected number: 1\n", 0) == 0);

    const auto p = run({"parity", "--indices", "1,2,3,4,5", "--format", "structured"});
    REQUIRE(p.code == 0);
    const auto pr = zariski::io::load_report(p.out).results;
    CHECK(pr["m_I"].get<long long>() * 3 == 2 * pr["M"].get<long long>() + pr["count2"].get<long long>());
}

TEST_CASE("classify") {
    const auto r = run({"classify", "--indices", "1,2,3,4,5,6,7", "--size", "4", "--format", "structured"});
    REQUIRE(r.code == 0);
    const auto res = zariski::io::load_report(r.out).results;
    CHECK(res["examined"] == 35);
    CHECK(res["distinct_invariants"] == 3);
    std::size_t total = 0;
    for (const auto& cls : res["classes"]) total += cls["count"].get<std::size_t>();
    CHECK(total == 35);

    const auto big = run({"classify", "--size", "10"});
    CHECK(big.code == 1);
    CHECK(big.err.find("--limit") != std::string::npos);
    CHECK(run({"classify", "--size", "10", "--limit", "5"}).code == 1);
    CHECK(run({"classify"}).code == 2);
    CHECK(run({"classify", "--size", "2"}).code == 2);
}

TEST_CASE("output is deterministic") {
    for (const std::vector<std::string>& args :
         {std::vector<std::string>{"classify", "--size", "3", "--indices", "1,2,3,4,5,6,7,8,9", "--format", "structured"},
          std::vector<std::string>{"find-bitangents", "--format", "structured"},
          std::vector<std::string>{"derive-sections", "--indices", "8,9,10", "--format", "structured"}}) {
        const auto a = run(args), b = run(args);
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("exit codes") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"gram", "--no-such-flag"}).code == 2);
    CHECK(run({"gram", "--format", "xml"}).code == 2);
    CHECK(run({"gram", "--indices", "1,99"}).code == 2);
    CHECK(run({"gram", "--indices", "1,,2"}).code == 2);
    CHECK(run({"gram", "--indices", "1,1"}).code == 2);
    CHECK(run({"gram", "--input", "/nonexistent/file.json"}).code == 2);
    const auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("classify") != std::string::npos);
    CHECK(run({"gram", "--help"}).code == 0);

    const auto bad = temp("bad.json");
    std::ofstream(bad) << "{\"format\": \"zariski-dataset/1\"}";
    const auto r = run({"gram", "--input", bad.string(), "--format", "structured"});
    CHECK(r.code == 2);
    CHECK(zariski::io::load_report(r.out).status == "usage-error");
    fs::remove(bad);

    const auto shortfall = run({"find-bitangents", "--seeds", "3", "--expect", "28", "--format", "structured"});
    CHECK(shortfall.code == 1);
    CHECK(zariski::io::load_report(shortfall.out).status == "domain-error");
}

TEST_CASE("dataset files through the CLI") {
    const auto ds = temp("klein.json");
    const auto full = temp("klein_full.json");
    REQUIRE(run({"klein", "--output", ds.string()}).code == 0);
    CHECK(zariski::io::read_dataset_file(ds) == zariski::io::builtin_klein());

    const auto r = run({"gram", "--input", ds.string(), "--indices", "1,2,3", "--format", "structured"});
    CHECK(zariski::io::load_report(r.out).input == ds.string());

    REQUIRE(run({"derive-sections", "--input", ds.string(), "--dataset-out", full.string()}).code == 0);
    const auto filled = zariski::io::read_dataset_file(full);
    for (const auto& e : filled.lines) CHECK(e.section.has_value());
    // The stored sections of L1..L7 are kept.
    for (std::size_t k = 0; k < 7; ++k) CHECK(filled.lines[k] == zariski::io::builtin_klein().lines[k]);

    const auto out = temp("gram.txt");
    REQUIRE(run({"gram", "--input", full.string(), "--output", out.string()}).code == 0);
    CHECK(slurp(out).rfind("[[3,", 0) == 0);
    CHECK(run({"verify", "--input", full.string()}).code == 0);

    // Tampering with a stored section makes verification fail.
    auto doc = zariski::io::dataset_to_json(filled);
    doc["bitangents"][0]["section"]["e"][0] = "5/1";
    std::ofstream(full) << doc.dump();
    CHECK(run({"verify", "--input", full.string()}).code == 1);

    fs::remove(ds);
    fs::remove(full);
    fs::remove(out);
}

TEST_CASE("numeric commands") {
    const auto r = run({"find-bitangents", "--expect", "28", "--format", "structured"});
    REQUIRE(r.code == 0);
    const auto res = zariski::io::load_report(r.out).results;
    CHECK(res["found"] == 28);
    CHECK(res["matched_dataset_lines"] == 28);
    CHECK(run({"oracle-connected", "--indices", "1,2,3"}).out == "numeric connected number: 2\n");
    CHECK(run({"oracle-connected", "--indices", "1,2,4", "--embedding", "2"}).code == 1);
}
