#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "eisheat/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "eisheat");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = eis::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch_dir(const std::string& name) {
    const auto dir = fs::temp_directory_path() / ("eisheat_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::vector<std::string> lines_of(const fs::path& p) {
    std::ifstream is(p);
    std::vector<std::string> lines;
    for (std::string line; std::getline(is, line);) lines.push_back(line);
    return lines;
}

}  // namespace

TEST_CASE("run writes one row per grid point") {
    const auto dir = scratch_dir("run");
    const auto csv = dir / "run.csv";
    const auto r = invoke({"run", "--scheme", "block2", "--c", "-0.25", "--problem", "exp-cos", "--n", "64", "--t",
                           "1", "--output", csv.string()});
    REQUIRE(r.code == eis::cli::kOk);
    CHECK(r.out.find("error = ") != std::string::npos);
    const auto lines = lines_of(csv);
    REQUIRE(lines.size() == 132);
    CHECK(lines[0].rfind("# command=run,scheme=block2,c=-0.25,problem=exp-cos", 0) == 0);
    CHECK(lines[1] == "x,v,exact,error");
}

TEST_CASE("identical configurations yield identical files") {
    const auto dir = scratch_dir("repro");
    for (const char* name : {"a.csv", "b.csv"}) {
        const auto r = invoke({"run", "--scheme", "block3-high", "--c", "-0.385", "--integrator", "rk6", "--n", "16",
                               "--t", "0.1", "--output", (dir / name).string()});
        REQUIRE(r.code == 0);
    }
    CHECK(lines_of(dir / "a.csv") == lines_of(dir / "b.csv"));
}

TEST_CASE("run at t = 0 reproduces the initial condition") {
    const auto dir = scratch_dir("t0");
    const auto r = invoke({"run", "--t", "0", "--n", "16", "--output", (dir / "t0.csv").string()});
    REQUIRE(r.code == 0);
    const auto lines = lines_of(dir / "t0.csv");
    for (std::size_t i = 2; i < lines.size(); ++i) CHECK(lines[i].substr(lines[i].rfind(',') + 1) == "0");
}

TEST_CASE("unstable parameter exits with the numerical failure code") {
    const auto dir = scratch_dir("unstable");
    const auto r = invoke({"run", "--scheme", "block2", "--c", "0.6", "--n", "64", "--output-dir", dir.string()});
    CHECK(r.code == eis::cli::kNumericalFailure);
    CHECK(r.err.find("unstable") != std::string::npos);
}

TEST_CASE("exit codes distinguish parse and precondition errors") {
    CHECK(invoke({"run", "--n"}).code == eis::cli::kParseError);
    CHECK(invoke({"frobnicate"}).code == eis::cli::kParseError);
    CHECK(invoke({}).code == eis::cli::kParseError);
    CHECK(invoke({"run", "--scheme", "block9"}).code == eis::cli::kPreconditionError);
    CHECK(invoke({"run", "--n", "31"}).code == eis::cli::kPreconditionError);
    CHECK(invoke({"figure", "--id", "7"}).code == eis::cli::kPreconditionError);
    CHECK(invoke({"--help"}).code == eis::cli::kOk);
}

TEST_CASE("symbol prints a stability verdict") {
    const auto dir = scratch_dir("symbol");
    auto r = invoke({"symbol", "--scheme", "block2", "--c", "0.3", "--n", "64", "--output-dir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("stable=true") != std::string::npos);
    CHECK(fs::exists(dir / "symbol_block2_c0.3_N64.csv"));
    r = invoke({"symbol", "--scheme", "block3-high", "--c", "-0.385", "--output-dir", dir.string()});
    CHECK(r.out.find("stable=true") != std::string::npos);
    r = invoke({"symbol", "--scheme", "block2", "--c", "0.6", "--output-dir", dir.string()});
    CHECK(r.out.find("stable=false") != std::string::npos);
}

TEST_CASE("cost table") {
    const auto r = invoke({"cost-table"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("2 2/3") != std::string::npos);
    CHECK(r.out.find("3 2/3") != std::string::npos);
    std::istringstream is(r.out);
    std::string line;
    bool found = false;
    while (std::getline(is, line)) {
        if (line.rfind("standard 4th order", 0) == 0) {
            std::istringstream fields(line.substr(18));
            int pts = 0;
            std::string adds, mults;
            fields >> pts >> adds >> mults;
            CHECK(pts == 2);
            CHECK(adds == "4");
            CHECK(mults == "5");
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("converge and figure write curves plus a summary") {
    const auto dir = scratch_dir("figure");
    auto r = invoke({"figure", "--id", "1a", "--ladder", "8,16,32", "--output-dir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "fig1a_c0.csv"));
    CHECK(fs::exists(dir / "fig1a_c1.csv"));
    CHECK(lines_of(dir / "fig1a_summary.csv").size() == 4);

    r = invoke({"converge", "--scheme", "std2", "--ladder", "8,16,32", "--t", "0.2", "--output-dir", dir.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("fitted order") != std::string::npos);
    CHECK(lines_of(dir / "converge_std2_c0.csv").size() == 5);

    r = invoke({"converge", "--scheme", "block2", "--c", "0.7", "--ladder", "8,16,32", "--output-dir", dir.string()});
    CHECK(r.code == eis::cli::kNumericalFailure);
}

TEST_CASE("output directory defaults to the environment variable") {
    const auto dir = scratch_dir("env");
    ::setenv("EISHEAT_OUTPUT_DIR", dir.string().c_str(), 1);
    const auto r = invoke({"run", "--scheme", "std2", "--n", "8", "--t", "0.1"});
    ::unsetenv("EISHEAT_OUTPUT_DIR");
    REQUIRE(r.code == 0);
    CHECK(fs::exists(dir / "run_std2_c0_N8.csv"));
}
