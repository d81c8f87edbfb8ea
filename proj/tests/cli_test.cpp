// SPDX-License-Identifier: MIT
// End-to-end checks of the command-line binary: exit codes, output schemas,
// byte-stable reruns, file output, and environment-variable overrides. Every
// invocation goes through the real executable named by OPDIAM_CLI_PATH.

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <complex>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "opdiam/json_io.hpp"
#include "opdiam/matrix.hpp"
#include "opdiam/superop.hpp"

using namespace opdiam;
using nlohmann::json;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Scratch directory for fixtures and captured output, one per process.
const std::string& work_dir() {
    static const std::string dir = [] {
        std::string d = "/tmp/opdiam_cli_test_" + std::to_string(::getpid());
        if (std::system(("mkdir -p " + d).c_str()) != 0) d = "/tmp";
        return d;
    }();
    return dir;
}

// `prefix` lets a test set environment variables for the child only.
RunResult run_cli(const std::string& args, const std::string& prefix = "") {
    const std::string out_path = work_dir() + "/stdout.txt";
    const std::string cmd =
        prefix + std::string(OPDIAM_CLI_PATH) + " " + args + " > " + out_path + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    return r;
}

const std::string& fixture_e12() {
    static const std::string path = [] {
        const std::string p = work_dir() + "/e12.json";
        write_matrix_file(p, ComplexMatrix::unit(2, 0, 1));
        return p;
    }();
    return path;
}

const std::string& fixture_identity2() {
    static const std::string path = [] {
        const std::string p = work_dir() + "/i2.json";
        write_matrix_file(p, ComplexMatrix::identity(2));
        return p;
    }();
    return path;
}

const std::string& fixture_transpose(std::size_t n) {
    static std::string paths[4];
    std::string& p = paths[n];
    if (p.empty()) {
        p = work_dir() + "/transpose" + std::to_string(n) + ".json";
        write_superop_file(p, named_example("transpose", n));
    }
    return p;
}

} // namespace

TEST_CASE("help succeeds and bad invocations exit with the validation code") {
    CHECK(run_cli("--help").exit_code == 0);
    CHECK(run_cli("").exit_code == 2);           // a subcommand is required
    CHECK(run_cli("frobnicate").exit_code == 2); // unknown subcommand
    CHECK(run_cli("diam " + work_dir() + "/does_not_exist.json").exit_code == 2);

    const std::string bad = work_dir() + "/bad.json";
    write_text_file(bad, "{oops");
    CHECK(run_cli("diam " + bad).exit_code == 2);
}

TEST_CASE("the dimension cap surfaces as exit code three") {
    const RunResult r = run_cli("map-analyze " + fixture_transpose(3) + " --max-dim 2");
    CHECK(r.exit_code == 3);
}

TEST_CASE("diam reports the unit diameter of a matrix unit with live witnesses") {
    const RunResult r = run_cli("diam " + fixture_e12());
    REQUIRE(r.exit_code == 0);
    CHECK(r.out.find("\"value\": 1.0") != std::string::npos);

    const json doc = json::parse(r.out);
    CHECK(std::abs(doc["value"].get<double>() - 1.0) <= 1e-8);
    const cplx rv(doc["rayleigh_v"]["re"].get<double>(), doc["rayleigh_v"]["im"].get<double>());
    const cplx rw(doc["rayleigh_w"]["re"].get<double>(), doc["rayleigh_w"]["im"].get<double>());
    CHECK(std::abs(std::abs(rv - rw) - 1.0) <= 1e-6);
}

TEST_CASE("range collapses to the single point one for the identity matrix") {
    const RunResult r = run_cli("range " + fixture_identity2() + " --grid 32");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["grid"].get<std::size_t>() == 32);
    REQUIRE(doc["boundary_re"].size() == 32);
    for (std::size_t i = 0; i < 32; ++i) {
        CHECK(std::abs(doc["boundary_re"][i].get<double>() - 1.0) <= 1e-12);
        CHECK(std::abs(doc["boundary_im"][i].get<double>()) <= 1e-12);
    }
    // The support of the one-point range at 1 is exactly cos(theta).
    CHECK(std::abs(doc["support"][0].get<double>() - 1.0) <= 1e-12);
}

TEST_CASE("repeated runs with one seed produce identical bytes") {
    const std::string args = "map-analyze " + fixture_transpose(2) + " --seed 11 --restarts 8";
    const RunResult first = run_cli(args);
    const RunResult second = run_cli(args);
    REQUIRE(first.exit_code == 0);
    CHECK(first.out == second.out);

    const RunResult rep1 = run_cli("replicate --filter S2.*");
    const RunResult rep2 = run_cli("replicate --filter S2.*");
    REQUIRE(rep1.exit_code == 0);
    CHECK(rep1.out == rep2.out);
}

TEST_CASE("--out writes exactly the bytes that stdout would carry") {
    const std::string out_file = work_dir() + "/diam_out.json";
    const RunResult direct = run_cli("diam " + fixture_e12());
    const RunResult filed = run_cli("diam " + fixture_e12() + " --out " + out_file);
    REQUIRE(filed.exit_code == 0);
    CHECK(filed.out.empty());
    CHECK(slurp(out_file) == direct.out);
}

TEST_CASE("map-analyze emits flags, certified estimates, and a clean ledger") {
    const RunResult r = run_cli("map-analyze " + fixture_transpose(2) + " --restarts 8");
    REQUIRE(r.exit_code == 0);
    const json doc = json::parse(r.out);
    CHECK(doc["dim_in"].get<int>() == 2);
    CHECK(doc["flags"]["self_adjoint"].get<bool>());
    CHECK(doc["flags"]["unital"].get<bool>());
    CHECK_FALSE(doc["flags"]["cp"].get<bool>());
    // A map loaded from its Choi matrix carries no positivity certificate:
    // only constructors that can prove positivity set that flag.
    CHECK_FALSE(doc["flags"]["positive_certified"].get<bool>());

    bool saw_cb = false;
    for (const json& est : doc["estimates"]) {
        if (est["quantity"] == "cb") {
            saw_cb = true;
            CHECK(std::abs(est["lower"].get<double>() - 2.0) <= 1e-8);
            CHECK(est["level"].get<int>() == 2);
        }
        if (est["quantity"] == "diam") {
            CHECK(est["lower"].get<double>() >= 1.0 - 2e-3);
            // Without a positivity certificate the best upper is twice the
            // operator norm, which is one for this map.
            CHECK(std::abs(est["upper"].get<double>() - 2.0) <= 1e-8);
        }
    }
    CHECK(saw_cb);
    for (const json& row : doc["ledger"]) CHECK(row["status"].get<std::string>() != "violated");
}

TEST_CASE("replicate formats agree on the summary counts") {
    const RunResult js = run_cli("replicate --filter S2.*");
    REQUIRE(js.exit_code == 0);
    const json doc = json::parse(js.out);
    const std::size_t total = doc["rows"].size();
    REQUIRE(total > 0);
    CHECK(doc["summary"]["pass"].get<std::size_t>() == total);
    CHECK(doc["summary"]["fail"].get<std::size_t>() == 0);

    const RunResult md = run_cli("replicate --filter S2.* --format md");
    const std::string tally = std::to_string(total) + " facts: " + std::to_string(total) +
                              " pass, 0 fail, 0 inconclusive";
    CHECK(md.out.find(tally) != std::string::npos);

    const RunResult csv = run_cli("replicate --filter S2.* --format csv");
    CHECK(csv.out.rfind(
              "fact_id,expected,provenance,computed_lower,computed_upper,status,regime,anchor",
              0) == 0);
}

TEST_CASE("environment variables configure the run and flags beat them") {
    const RunResult from_env =
        run_cli("range " + fixture_identity2(), "OPDIAM_GRID=16 ");
    REQUIRE(from_env.exit_code == 0);
    CHECK(json::parse(from_env.out)["grid"].get<std::size_t>() == 16);

    const RunResult flag_wins =
        run_cli("range " + fixture_identity2() + " --grid 8", "OPDIAM_GRID=16 ");
    REQUIRE(flag_wins.exit_code == 0);
    CHECK(json::parse(flag_wins.out)["grid"].get<std::size_t>() == 8);
}
