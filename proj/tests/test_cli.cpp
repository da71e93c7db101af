#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

RunResult run(const std::string& args) {
    const std::string cmd = std::string(CSDEPTH_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult result;
    std::array<char, 4096> buffer;
    while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
        result.out.append(buffer.data(), got);
    const int status = pclose(pipe);
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

std::string data_file(const std::string& name) { return std::string(CSDEPTH_DATA_DIR) + "/" + name; }

std::string temp_file(const std::string& name, const std::string& contents) {
    const std::string path = std::string("/tmp/csdepth_test_") + name;
    std::ofstream out(path);
    out << contents;
    return path;
}

}  // namespace

TEST_CASE("depth subcommand") {
    const auto result = run("depth " + data_file("points8.txt") + " 0 0");
    CHECK(result.exit_code == 0);
    CHECK(result.out == "6\n");

    const auto breakdown = run("depth " + data_file("points8.txt") + " 0 0 --breakdown");
    CHECK(breakdown.exit_code == 0);
    CHECK(breakdown.out.find("colourful depth: 6") != std::string::npos);
    CHECK(breakdown.out.find("all-triangle depth: 20") != std::string::npos);
}

TEST_CASE("depth rejects degenerate files with line numbers") {
    const std::string path = temp_file("dup.txt", "1 1 1\n2 5 0\n3 0 5\n2 1 1\n");
    const auto result = run("depth " + path + " 0 0");
    CHECK(result.exit_code == 2);
    CHECK(result.out.find("line 1") != std::string::npos);
    CHECK(result.out.find("line 4") != std::string::npos);
}

TEST_CASE("depth rejects malformed files as usage errors") {
    const std::string path = temp_file("bad.txt", "1 2 3\n2 oops 4\n");
    const auto result = run("depth " + path + " 0 0");
    CHECK(result.exit_code == 1);
    CHECK(result.out.find("line 2") != std::string::npos);
}

TEST_CASE("sorted flag checks its promise") {
    // colour 1 listed in ccw order around the origin already
    const std::string good = temp_file("sorted.txt", "1 2 1\n1 -1 2\n1 -1 -3\n2 1 1\n3 -2 1\n");
    const auto ok = run("depth " + good + " 0 0 --sorted");
    CHECK(ok.exit_code == 0);

    const std::string bad = temp_file("unsorted.txt", "1 -1 2\n1 2 1\n1 -1 -3\n2 1 1\n3 -2 1\n");
    const auto rejected = run("depth " + bad + " 0 0 --sorted");
    CHECK(rejected.exit_code == 2);
    CHECK(rejected.out.find("not sorted") != std::string::npos);
}

TEST_CASE("median subcommand") {
    for (const std::string engine : {"xsweep", "topsweep"}) {
        const auto result = run("median " + data_file("points7.txt") + " --engine " + engine);
        CHECK(result.exit_code == 0);
        CHECK(result.out.find("depth: 8\n") != std::string::npos);
        CHECK(result.out.find("at: 16 20\n") != std::string::npos);
    }
    const auto all = run("median " + data_file("points7.txt") + " --all");
    CHECK(all.out.find("max: 16 20") != std::string::npos);
}

TEST_CASE("median degeneracy and the perturbation fallback") {
    const std::string path = temp_file("vertical.txt", "1 0 0\n2 0 3\n3 1 5\n3 4 1\n");
    const auto rejected = run("median " + path);
    CHECK(rejected.exit_code == 2);
    CHECK(rejected.out.find("vertical") != std::string::npos);

    const auto sheared = run("median " + path + " --perturb 7");
    CHECK(sheared.exit_code == 0);
    CHECK(sheared.out.find("# shear applied") != std::string::npos);
    CHECK(sheared.out.find("depth: 2\n") != std::string::npos);
}

TEST_CASE("gen reproducibility") {
    const auto a = run("gen --sizes 3 3 2 --seed 9");
    const auto b = run("gen --sizes 3 3 2 --seed 9");
    const auto c = run("gen --sizes 3 3 2 --seed 10");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out != c.out);

    const std::string path = temp_file("gen.txt", a.out);
    const auto depth = run("depth " + path + " 0 0");
    CHECK(depth.exit_code == 0);
}

TEST_CASE("verify passes on generated batches and on files") {
    const auto fuzz = run("verify --random 12 --nmax 12 --seed 5 --workers 2");
    CHECK(fuzz.exit_code == 0);
    CHECK(fuzz.out.find("all consistent") != std::string::npos);

    const auto file = run("verify " + data_file("points8.txt"));
    CHECK(file.exit_code == 0);
}

TEST_CASE("verify worker count comes from the environment too") {
    const std::string cmd = "CSDEPTH_WORKERS=3 " + std::string(CSDEPTH_CLI_PATH) +
                            " verify --random 8 --nmax 10 --seed 6 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buffer;
    while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
        out.append(buffer.data(), got);
    const int status = pclose(pipe);
    CHECK(WEXITSTATUS(status) == 0);
    CHECK(out.find("all consistent") != std::string::npos);
}

TEST_CASE("bench emits the versioned table") {
    const auto result = run("bench --op depth --n 200 400 --k 4 --seed 3");
    CHECK(result.exit_code == 0);
    CHECK(result.out.rfind("# csdepth-bench v1", 0) == 0);
    CHECK(result.out.find("n,k,op,engine,wall_ms,primitive_ops,peak_bytes") != std::string::npos);
    CHECK(result.out.find("200,4,depth,sorted,") != std::string::npos);
    CHECK(result.out.find("# loglog-slope depth sorted ") != std::string::npos);

    const auto median = run("bench --op median --n 12 18 --k 3 --seed 2 --engine xsweep topsweep");
    CHECK(median.exit_code == 0);
    CHECK(median.out.find("12,3,median,xsweep,") != std::string::npos);
    CHECK(median.out.find("18,3,median,topsweep,") != std::string::npos);
    CHECK(median.out.find("# loglog-slope median xsweep ") != std::string::npos);
    CHECK(median.out.find("# loglog-slope median topsweep ") != std::string::npos);
}

TEST_CASE("plot renders deterministic svg") {
    const auto a = run("plot " + data_file("points8.txt") + " --segments");
    const auto b = run("plot " + data_file("points8.txt") + " --segments");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out.find("<!-- csdepth-svg v1 -->") != std::string::npos);
    CHECK(a.out.find("<svg") != std::string::npos);

    const auto median = run("plot " + data_file("points7.txt") + " --median");
    CHECK(median.exit_code == 0);
    CHECK(median.out.find("<path") != std::string::npos);
}

TEST_CASE("usage errors exit with code one") {
    CHECK(run("").exit_code == 1);
    CHECK(run("depth").exit_code == 1);
    CHECK(run("median missing-file.txt").exit_code == 1);
}
