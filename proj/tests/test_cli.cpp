#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <catch_amalgamated.hpp>

#include "qasm_check.hpp"

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
    const std::string cmd = std::string(QPER_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "qper_cli_test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("usage errors exit with 1") {
    CHECK(run("") == 1);
    CHECK(run("bogus") == 1);
    CHECK(run("match --input 0") == 1);           // missing --weight
    CHECK(run("train --target 5 --out /dev/null") == 1);  // digit out of range
    TempDir dir;
    CHECK(run("qasm --input 11111 --weight 11111 --out " + (dir.path / "x.qasm").string()) == 1);
}

TEST_CASE("io errors exit with 2") {
    CHECK(run("heatmap -n 1 --exact --out /nonexistent_qper_dir/x.csv") == 2);
}

TEST_CASE("strict training exits 3 on non-convergence") {
    TempDir dir;
    const std::string out = (dir.path / "t.jsonl").string();
    CHECK(run("train --target 1122 --seed 1 --max-steps 2 --strict --out " + out) == 3);
    CHECK(run("train --target 1122 --seed 1 --max-steps 2 --out " + out) == 0);
}

TEST_CASE("heatmap writes the grid and optional image") {
    TempDir dir;
    const fs::path csv = dir.path / "hm.csv";
    const fs::path pgm = dir.path / "hm.pgm";
    REQUIRE(run("heatmap -n 2 --exact --out " + csv.string() + " --ppm " + pgm.string()) == 0);
    const std::string content = slurp(csv);
    std::istringstream in(content);
    std::string line;
    std::size_t rows = 0;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 17);  // header + 16
    CHECK(slurp(pgm).rfind("P2\n16 16\n255\n", 0) == 0);
}

TEST_CASE("train trace ends with a summary record") {
    TempDir dir;
    const fs::path out = dir.path / "t.jsonl";
    REQUIRE(run("train --target 1122 --seed 7 --out " + out.string()) == 0);
    const std::string content = slurp(out);
    CHECK(content.find("\"step\":0") != std::string::npos);
    CHECK(content.find("{\"converged\":true,\"total_steps\":") != std::string::npos);
}

TEST_CASE("batch summary carries the expected keys") {
    TempDir dir;
    const fs::path out = dir.path / "b.json";
    REQUIRE(run("batch --target 12 --sessions 3 --seed 2 --out " + out.string()) == 0);
    const std::string content = slurp(out);
    for (const char* key : {"\"sessions\": 3", "\"convergence_rate\"", "\"mean_steps\"",
                            "\"median_steps\"", "\"max_steps_observed\"",
                            "\"mean_fidelity_curve\""})
        CHECK(content.find(key) != std::string::npos);
}

TEST_CASE("qasm subcommand writes a well-formed program") {
    TempDir dir;
    const fs::path out = dir.path / "c.qasm";
    REQUIRE(run("qasm --input 21 --weight 30 --out " + out.string()) == 0);
    const auto rep = qasm_check::check(slurp(out));
    INFO(rep.error);
    CHECK(rep.valid);
    CHECK(rep.single_qubit_gates == 6);
    CHECK(rep.multi_qubit_gates == 1);
}

TEST_CASE("config file values apply beneath flags") {
    TempDir dir;
    const fs::path cfg = dir.path / "cfg.ini";
    const fs::path a = dir.path / "a.csv";
    const fs::path b = dir.path / "b.csv";
    std::ofstream(cfg) << "[heatmap]\nseed=5\nshots=1024\nqubits=1\n";
    REQUIRE(run("--config " + cfg.string() + " heatmap --out " + a.string()) == 0);
    REQUIRE(run("heatmap -n 1 --shots 1024 --seed 5 --out " + b.string()) == 0);
    CHECK(slurp(a) == slurp(b));
    // a flag overrides the config value
    const fs::path c = dir.path / "c.csv";
    REQUIRE(run("--config " + cfg.string() + " heatmap --seed 6 --out " + c.string()) == 0);
    CHECK(slurp(c) != slurp(a));
}
