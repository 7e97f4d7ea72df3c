#include "support.hpp"

#include "exotic/cli.hpp"

#include <catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace exotic;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "exotic");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("exotic_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("validate reports counts and exit status", "[cli]") {
    auto r = run({"validate", "--builtin", "cp2-9"});
    CHECK(r.code == cli::ok);
    CHECK(r.out.find("f-vector 9 36 84 90 36") != std::string::npos);
    CHECK(r.out.find("euler characteristic 3") != std::string::npos);

    const auto dir = scratch("validate");
    io::write_json_file(dir / "flipped.json", io::json{{"pentachora", {{2, 1, 3, 4, 5}, {1, 2, 3, 4, 6}, {1, 2, 3, 5, 6},
                                                                        {1, 2, 4, 5, 6}, {1, 3, 4, 5, 6}, {2, 3, 4, 5, 6}}}});
    r = run({"validate", "--input", (dir / "flipped.json").string()});
    CHECK(r.code == cli::validation_failure);
    CHECK(r.out.find("equal induced orientations") != std::string::npos);
}

TEST_CASE("usage errors exit with 64", "[cli]") {
    CHECK(run({}).code == cli::usage_error);
    CHECK(run({"frobnicate"}).code == cli::usage_error);
    CHECK(run({"build", "--seed", "1", "--cocycle", "x.json"}).code == cli::usage_error);
    CHECK(run({"build", "--builtin", "cp2-9", "--input", "x.json", "--seed", "1"}).code == cli::usage_error);
    CHECK(run({"build", "--builtin", "torus"}).code == cli::usage_error);
    CHECK(run({"build", "--seed", "1", "--tol", "-1"}).code == cli::usage_error);
    CHECK(run({"check"}).code == cli::usage_error);
    CHECK(run({"build", "--seed", "1", "--root", "17", "--out", scratch("root").string()}).code == cli::usage_error);
    CHECK(run({"export"}).code == cli::usage_error);
}

TEST_CASE("cocycle failures map to exit codes 1 and 2", "[cli]") {
    const auto dir = scratch("cocycle");
    const auto& tri = testing::boundary();
    io::write_json_file(dir / "zero.json", io::cocycle_to_json(tri, Cocycle2{std::vector<Complex>(tri.count(2))}));
    auto open = testing::demo_omega(tri);
    open.values[0] += 1.0;
    io::write_json_file(dir / "open.json", io::cocycle_to_json(tri, open));
    CHECK(run({"cocycle", "--cocycle", (dir / "zero.json").string()}).code == cli::genericity_failure);
    CHECK(run({"build", "--cocycle", (dir / "zero.json").string(), "--out", dir.string()}).code == cli::genericity_failure);
    CHECK(run({"cocycle", "--cocycle", (dir / "open.json").string()}).code == cli::validation_failure);
    CHECK(run({"check", "--cocycle", (dir / "open.json").string()}).code == cli::validation_failure);
    CHECK(run({"cocycle", "--cocycle", (dir / "missing.json").string()}).code == cli::validation_failure);
}

TEST_CASE("a saved cocycle reproduces the seeded build", "[cli]") {
    const auto dir = scratch("roundtrip");
    REQUIRE(run({"cocycle", "--builtin", "cp2-9", "--seed", "5", "--out", (dir / "omega.json").string()}).code == cli::ok);
    REQUIRE(run({"build", "--builtin", "cp2-9", "--seed", "5", "--out", (dir / "seeded").string()}).code == cli::ok);
    REQUIRE(run({"build", "--builtin", "cp2-9", "--cocycle", (dir / "omega.json").string(), "--out", (dir / "file").string()})
                .code == cli::ok);
    for (const char* f : {"f1.mtx", "f2.mtx", "f3.mtx", "f4.mtx", "f5.mtx"})
        CHECK(slurp(dir / "seeded" / f) == slurp(dir / "file" / f));
    const auto report = io::read_json_file(dir / "seeded" / "report.json");
    CHECK(report["schema"] == 1);
    CHECK(report["passed"] == true);
    CHECK(report["ranks"]["f1"] == 1);
    const auto manifest = io::read_json_file(dir / "seeded" / "manifest.json");
    CHECK(manifest["seed"] == 5);
    CHECK(manifest["source"] == "cp2-9");
    CHECK(fs::exists(dir / "seeded" / "operators.json"));
    CHECK(fs::exists(dir / "seeded" / "weights.json"));
}

TEST_CASE("export re-emits identical matrices", "[cli]") {
    const auto dir = scratch("export");
    REQUIRE(run({"build", "--seed", "9", "--root", "3", "--out", (dir / "a").string()}).code == cli::ok);
    fs::create_directories(dir / "b");
    REQUIRE(run({"export", "--manifest", (dir / "a" / "manifest.json").string(), "--out", (dir / "b").string()}).code == cli::ok);
    for (const char* f : {"f1.mtx", "f2.mtx", "f3.mtx", "f4.mtx", "f5.mtx"}) CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
}

TEST_CASE("check runs the whole suite", "[cli]") {
    const auto r = run({"check", "--builtin", "boundary-5-simplex", "--seed", "4"});
    CHECK(r.code == cli::ok);
    CHECK(r.out.find("gauge/annihilation") != std::string::npos);
    CHECK(r.out.find("tree_transition_det") != std::string::npos);
    CHECK(r.out.find("PASS") != std::string::npos);
}
