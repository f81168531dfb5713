#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <sys/wait.h>
#include <unistd.h>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kCli = SPLINEWIDTH_CLI_PATH;

fs::path scratch_dir() {
    static const fs::path base = [] {
        fs::path p = fs::temp_directory_path() /
                     ("splinewidth_cli_test_" + std::to_string(::getpid()));
        fs::remove_all(p);
        fs::create_directories(p);
        return p;
    }();
    return base;
}

fs::path write_config(const std::string& name, const json& cfg) {
    const fs::path path = scratch_dir() / name;
    std::ofstream out(path);
    out << cfg.dump(2) << "\n";
    return path;
}

int run_cli(const std::string& args) {
    const int rc = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("single-interval constant projection attains its bound through the CLI") {
    const json cfg = {{"n", {1}},      {"p", {0}},
                      {"r", {1}},      {"functions", {"cos_0.5"}},
                      {"seeds", {0}},  {"amplitude_fraction", 0.0}};
    const fs::path conf = write_config("poincare.json", cfg);
    const fs::path out = scratch_dir() / "poincare";
    REQUIRE(run_cli("project --config " + conf.string() + " --out " + out.string()) == 0);

    const std::string csv = slurp(out / "project.csv");
    REQUIRE_FALSE(csv.empty());
    // header + one row
    std::istringstream lines(csv);
    std::string header, row;
    std::getline(lines, header);
    std::getline(lines, row);
    CHECK(header.rfind("seed,n,p,r,function", 0) == 0);
    // ratio is the second-to-last field
    const auto last_comma = row.rfind(',');
    const auto prev_comma = row.rfind(',', last_comma - 1);
    const double ratio = std::stod(row.substr(prev_comma + 1, last_comma - prev_comma - 1));
    CHECK(ratio == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(row.substr(last_comma + 1) == "pass");

    CHECK(fs::exists(out / "project.svg"));
    CHECK(fs::exists(out / "project_summary.json"));
    const json manifest = json::parse(slurp(out / "manifest.json"));
    CHECK(manifest.contains("config_hash"));
    REQUIRE(manifest.contains("cells"));
    CHECK(manifest["cells"].size() == 1);
    CHECK(manifest["cells"][0]["status"] == "pass");
}

TEST_CASE("output bytes are identical across thread counts") {
    const json cfg = {{"n", {5, 6}}, {"p", {1, 2, 3}}, {"r", {1, 2}},
                      {"functions", {"sin_1", "exp"}}, {"seeds", {0, 3}}};
    const fs::path conf = write_config("sweep.json", cfg);
    const fs::path out1 = scratch_dir() / "sweep1";
    const fs::path out4 = scratch_dir() / "sweep4";
    REQUIRE(run_cli("project --config " + conf.string() + " --out " + out1.string() +
                    " --threads 1") == 0);
    REQUIRE(run_cli("project --config " + conf.string() + " --out " + out4.string() +
                    " --threads 4") == 0);
    CHECK(slurp(out1 / "project.csv") == slurp(out4 / "project.csv"));
    // summaries agree except for the wall-clock entry
    json s1 = json::parse(slurp(out1 / "project_summary.json"));
    json s4 = json::parse(slurp(out4 / "project_summary.json"));
    s1.erase("wall_time_s");
    s4.erase("wall_time_s");
    CHECK(s1 == s4);
}

TEST_CASE("invalid configuration exits with status 3 and names the field") {
    const fs::path conf = write_config("bad.json", json{{"p", "oops"}});
    const fs::path out = scratch_dir() / "bad";
    const std::string log = (scratch_dir() / "bad.log").string();
    const int rc = std::system((kCli + " project --config " + conf.string() + " --out " +
                                out.string() + " 2>" + log + " >/dev/null")
                                   .c_str());
    CHECK(WEXITSTATUS(rc) == 3);
    const std::string err = slurp(log);
    CHECK(err.find("config error") != std::string::npos);
    CHECK(err.find("p") != std::string::npos);
}

TEST_CASE("missing config file exits with status 3") {
    CHECK(run_cli("project --config " + (scratch_dir() / "nope.json").string()) == 3);
}

TEST_CASE("outlier counting passes at the default threshold and fails at an absurd one") {
    const json cfg = {{"n", {50}}, {"cases", {{3, 0}}}};
    const fs::path conf = write_config("outliers.json", cfg);
    const fs::path out = scratch_dir() / "outliers";
    REQUIRE(run_cli("outliers --config " + conf.string() + " --out " + out.string()) == 0);
    const json summary = json::parse(slurp(out / "outliers_summary.json"));
    CHECK(summary["fail"] == 0);

    // a separation factor of 1e9 hides every outlier, so the expected count
    // is missed and the run reports failure
    const fs::path out2 = scratch_dir() / "outliers_absurd";
    CHECK(run_cli("outliers --config " + conf.string() + " --out " + out2.string() +
                  " --outlier-threshold 1e9") == 2);
}

TEST_CASE("branch counting reports the expected split through the CLI") {
    const json cfg = {{"n", {20}}, {"cases", {{3, 1}}}};
    const fs::path conf = write_config("branches.json", cfg);
    const fs::path out = scratch_dir() / "branches";
    REQUIRE(run_cli("branches --config " + conf.string() + " --out " + out.string()) == 0);
    const std::string csv = slurp(out / "branches.csv");
    // row: n,p,k,dim,branches,expected,status
    CHECK(csv.find("20,3,1,40,2,2,pass") != std::string::npos);
}

TEST_CASE("unknown subcommands are rejected") {
    CHECK(run_cli("frobnicate --config x.json") != 0);
}
