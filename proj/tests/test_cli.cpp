#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

std::string cli_path() {
    const char* p = std::getenv("BQSCAT_CLI");
    REQUIRE_MESSAGE(p != nullptr, "BQSCAT_CLI must point at the command-line binary");
    return p;
}

int run(const std::string& args) {
    const int status = std::system((cli_path() + " " + args + " > /dev/null 2>&1").c_str());
    REQUIRE(status != -1);
    REQUIRE(WIFEXITED(status));
    return WEXITSTATUS(status);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

const std::string kDir = "cli_scratch";

struct Setup {
    Setup() { (void)std::system(("rm -rf " + kDir + " && mkdir -p " + kDir).c_str()); }
} setup_once;

} // namespace

TEST_CASE("generate writes deterministic dataset files") {
    CHECK(run("generate --preset zero --out " + kDir + "/zero.json") == 0);
    CHECK(run("generate --preset wavepacket --eps 1e-3 --seed 7 --out " + kDir + "/wp_a.json") == 0);
    CHECK(run("generate --preset wavepacket --eps 1e-3 --seed 7 --out " + kDir + "/wp_b.json") == 0);
    CHECK(slurp(kDir + "/wp_a.json") == slurp(kDir + "/wp_b.json"));
    CHECK(slurp(kDir + "/zero.json").find("\"preset\": \"zero\"") != std::string::npos);
}

TEST_CASE("invalid inputs exit with the invalid-input code") {
    CHECK(run("generate --preset bogus --out " + kDir + "/x.json") == 2);
    CHECK(run("generate --preset zero --out /nonexistent-dir/x.json") == 2);
    CHECK(run("scatter --config " + kDir + "/missing.json --out " + kDir + "/s.csv") == 2);
    CHECK(run("verify") == 2); // --config is required
    spit(kDir + "/corrupt.json", "{ not json");
    CHECK(run("verify --config " + kDir + "/corrupt.json") == 2);
    spit(kDir + "/badschema.json", "{\"format\": 99, \"kind\": \"preset\"}");
    CHECK(run("verify --config " + kDir + "/badschema.json") == 2);
    CHECK(run("frobnicate") == 2); // unknown subcommand
}

TEST_CASE("scatter emits an all-zero deterministic table for zero data") {
    REQUIRE(run("generate --preset zero --out " + kDir + "/zero.json") == 0);
    CHECK(run("scatter --config " + kDir + "/zero.json --out " + kDir + "/s1.csv") == 0);
    CHECK(run("scatter --config " + kDir + "/zero.json --out " + kDir + "/s2.csv") == 0);
    const std::string csv = slurp(kDir + "/s1.csv");
    CHECK(csv == slurp(kDir + "/s2.csv"));
    CHECK(csv.rfind("k_re,k_im,name,value_re,value_im\n", 0) == 0);
    // every sampled coefficient value is exactly zero
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line); // header
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto tail = line.substr(line.find(',', line.find(',') + 1) + 1);
        const auto v = tail.substr(tail.find(',') + 1);
        CHECK(v == "0,0");
        ++rows;
    }
    CHECK(rows > 100);
}

TEST_CASE("jump-export covers all 54 pieces") {
    REQUIRE(run("generate --preset zero --out " + kDir + "/zero.json") == 0);
    CHECK(run("jump-export --config " + kDir + "/zero.json --samples 1 --out " + kDir +
              "/j.csv") == 0);
    const std::string csv = slurp(kDir + "/j.csv");
    int rows = -1; // discount the header
    for (char c : csv)
        if (c == '\n') ++rows;
    CHECK(rows == 54);
    CHECK(csv.find("G7pp,") != std::string::npos);
}

TEST_CASE("verify on zero data passes and reports byte-identically") {
    REQUIRE(run("generate --preset zero --out " + kDir + "/zero.json") == 0);
    CHECK(run("verify --config " + kDir + "/zero.json --out " + kDir + "/r1.json") == 0);
    CHECK(run("verify --config " + kDir + "/zero.json --out " + kDir + "/r2.json") == 0);
    const std::string rep = slurp(kDir + "/r1.json");
    CHECK(rep == slurp(kDir + "/r2.json"));
    CHECK(rep.find("\"all_pass\": true") != std::string::npos);
    // non-generic data is reported informationally, not as a failure
    CHECK(rep.find("\"generic\": false") != std::string::npos);
}

TEST_CASE("recover on zero data returns the zero field") {
    REQUIRE(run("generate --preset zero --out " + kDir + "/zero.json") == 0);
    CHECK(run("recover --config " + kDir + "/zero.json --x 1 --t 0.5 --out " + kDir +
              "/rec.json") == 0);
    const std::string rep = slurp(kDir + "/rec.json");
    CHECK(rep.find("\"u_a\": 0.0") != std::string::npos);
    CHECK(rep.find("\"u_b\": 0.0") != std::string::npos);
    CHECK(run("recover --config " + kDir + "/zero.json --x -1 --t 0.5") == 2);
}

TEST_CASE("config files predefine generation parameters") {
    spit(kDir + "/genconf.json", "{\"preset\": \"zero\", \"out\": \"" + kDir + "/fromconf.json\"}");
    CHECK(run("generate --config " + kDir + "/genconf.json") == 0);
    CHECK(slurp(kDir + "/fromconf.json").find("\"preset\": \"zero\"") != std::string::npos);
}
