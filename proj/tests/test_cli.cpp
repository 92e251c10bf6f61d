#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int code;
    std::string out;
};

Run run_cli(const std::string& args) {
    const std::string cmd = std::string(PROGLAB_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p != nullptr);
    std::string out;
    std::array<char, 4096> buf;
    size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), n);
    const int status = pclose(p);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("search emits the witness") {
    auto r = run_cli("search --N 7 --method exhaustive");
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema"] == "proglab.report/2");
    CHECK(j["result"]["size"] == 4);
    CHECK(j["result"]["witness"] == nlohmann::json({1, 2, 4, 5}));
    CHECK(j["config"]["seed"] == 1);
    CHECK(j.contains("elapsed_ms"));
    CHECK(j.contains("version"));
    auto csv = run_cli("search --N 7 --format csv");
    CHECK(csv.out == "member\n1\n2\n4\n5\n");
}

TEST_CASE("config errors exit 2") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("frobnicate").code == 2);
    CHECK(run_cli("search --N 0").code == 2);
    CHECK(run_cli("search --N 7 --format xml").code == 2);
    CHECK(run_cli("expsum --W 2 --r 5").code == 2);
    CHECK(run_cli("expsum --W 30 --T 100000 --order 6 --budget-ms 1").code == 2);
}

TEST_CASE("identical config and seed give byte-identical reports") {
    for (const char* args : {"count --N 400 --seed 7", "norms --N 80 --L 6 --k 3 --seed 3",
                             "nil --x 3 --y -2 --seed 5", "expsum --W 2 --T 20 --order 6 --points 16"}) {
        auto a = run_cli(std::string(args) + " --deterministic");
        auto b = run_cli(std::string(args) + " --deterministic --workers 1");
        CHECK(a.code == 0);
        CHECK(a.out.size() > 0);
        // Worker count is not part of the report, so the bytes must match.
        CHECK(a.out == b.out);
    }
}

TEST_CASE("different seeds differ") {
    auto a = nlohmann::json::parse(run_cli("count --N 400 --seed 1").out);
    auto b = nlohmann::json::parse(run_cli("count --N 400 --seed 2").out);
    CHECK(a["result"] != b["result"]);
}

TEST_CASE("--out writes the report") {
    const std::string path = "cli_test_out.json";
    auto r = run_cli("nil --x 1 --y 2 --out " + path);
    CHECK(r.code == 0);
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    auto j = nlohmann::json::parse(ss.str());
    CHECK(j["passed"] == true);
    std::remove(path.c_str());
}

TEST_CASE("verify-all on one module") {
    auto r = run_cli("verify-all --module arith --format csv");
    CHECK(r.code == 0);
    CHECK(r.out.rfind("check,passed,measured,threshold\n", 0) == 0);
}

}
