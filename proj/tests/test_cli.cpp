#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ptkit/cli.hpp"
#include "ptkit/report.hpp"

using namespace ptkit;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliResult {
    int code;
    std::string out;
    std::string err;
};

CliResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path temp_dir(const std::string& tag) {
    const fs::path dir = fs::temp_directory_path() / ("ptkit_cli_" + tag);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(bool(in), "missing file: " << path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace

TEST_CASE("classify a built-in family against a parity literal") {
    const CliResult r = run_cli(
        {"classify", "--family", "h1_pt", "--set", "a=8,b=2,c=-3", "--parity", "diag(-1,1)"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    REQUIRE(j["verdicts"].size() == 4);
    CHECK(j["verdicts"][0]["check"] == "pt");
    CHECK(j["verdicts"][0]["holds"] == true);
    CHECK(j["verdicts"][1]["check"] == "anti_pt");
    CHECK(j["verdicts"][1]["holds"] == false);
    CHECK(j["verdicts"][2]["check"] == "commutes_with_c");
    CHECK(j["verdicts"][2]["holds"] == true);
    CHECK(j["verdicts"][3]["check"] == "commutes_with_c_pt");
    CHECK(j["verdicts"][3]["holds"] == false);
    CHECK(j["metadata"]["parity_mode"] == "diag(-1,1)");
}

TEST_CASE("classify search discovers the exchange parity of the complex-diagonal family") {
    const CliResult r =
        run_cli({"classify", "--family", "h_original", "--set", "a=8,b=2,c=-3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    int anti_hits = 0;
    for (const auto& v : j["verdicts"]) {
        if (v["check"] == "anti_pt" && v["holds"] == true) {
            ++anti_hits;
            CHECK(v["parity"].get<std::string>().find("[[0,") != std::string::npos);
        }
        if (v["check"] == "pt") CHECK(v["holds"] == false);
    }
    CHECK(anti_hits == 2);
}

TEST_CASE("ep prints the refined locations") {
    const CliResult r = run_cli({"ep", "--family", "h1_pt", "--set", "a=8", "--alias", "c=b",
                                 "--param", "b", "--range", "-10:10"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "-8.000000\n8.000000\n");

    const CliResult none = run_cli({"ep", "--family", "h1_pt", "--set", "a=20", "--alias", "c=b",
                                    "--param", "b", "--range", "-10:0"});
    REQUIRE(none.code == 0);
    CHECK(none.out.empty());
}

TEST_CASE("case writes the three report files, matching direct library output") {
    const fs::path dir = temp_dir("case1");
    const CliResult r = run_cli({"case", "1", "--out", dir.string()});
    REQUIRE(r.code == 0);
    for (const char* suffix : {".csv", ".json", ".svg"}) {
        CHECK(fs::exists(dir / ("case1" + std::string(suffix))));
    }

    const SweepSpec spec = preset_case(1);
    const ReportBundle bundle = make_sweep_bundle(spec, run_sweep(spec));
    CHECK(read_file(dir / "case1.csv") == to_csv(bundle));
    CHECK(read_file(dir / "case1.json") == to_json(bundle));
    CHECK(read_file(dir / "case1.svg") == to_svg(bundle, SvgComponent::Both));
    fs::remove_all(dir);
}

TEST_CASE("sweep with explicit flags reproduces the preset bytes") {
    const fs::path dir = temp_dir("sweep1");
    const CliResult r =
        run_cli({"sweep", "--family", "h1_pt", "--param", "b", "--range", "0:10", "--steps",
                 "1001", "--set", "a=8,c=-3", "--out", dir.string()});
    REQUIRE(r.code == 0);

    const SweepSpec spec = preset_case(1);
    const ReportBundle bundle = make_sweep_bundle(spec, run_sweep(spec));
    CHECK(read_file(dir / "sweep.csv") == to_csv(bundle));
    CHECK(read_file(dir / "sweep.json") == to_json(bundle));
    fs::remove_all(dir);
}

TEST_CASE("transform reports the discrepancy") {
    const CliResult r = run_cli({"transform", "--set", "a=8,b=2,c=-3"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["spectra_equal"] == false);
    CHECK(std::abs(j["entry_diff_norm"].get<double>() - 2.0 * std::sqrt(13.0)) <= 1e-12);
    CHECK(j["exact"][0][0][0] == -8.0);
    CHECK(j["exact"][0][0][1] == -3.0);
    CHECK(j["printed"][0][0][0] == -11.0);

    const CliResult same = run_cli({"transform", "--set", "a=8,b=2,c=0"});
    CHECK(json::parse(same.out)["spectra_equal"] == true);
}

TEST_CASE("usage errors exit with code 1 and print a synopsis") {
    const std::vector<std::vector<std::string>> bad = {
        {"bogus"},
        {"case", "5", "--out", "x"},
        {"case", "1"},
        {"sweep", "--family", "h1_pt", "--param", "b", "--out", "x"},
        {"sweep", "--family", "h1_pt", "--param", "b", "--range", "10", "--out", "x"},
        {"sweep", "--family", "h1_pt", "--param", "b", "--range", "10:0", "--set", "a=8,c=1",
         "--out", "x"},
        {"sweep", "--family", "h1_pt", "--param", "b", "--range", "0:10", "--steps", "1",
         "--set", "a=8,c=1", "--out", "x"},
        {"sweep", "--family", "h1_pt", "--param", "b", "--range", "0:10", "--set", "a=8",
         "--out", "x"},
        {"sweep", "--family", "h1_pt", "--param", "b", "--range", "0:10", "--set", "a=8,c=1",
         "--quantity", "cube", "--out", "x"},
        {"sweep", "--family", "h1_pt", "--param", "b", "--range", "0:10", "--set", "a=8",
         "--alias", "c=a", "--out", "x"},
        {"classify", "--family", "h1_pt", "--template", "x.ham", "--set", "a=1,b=2,c=3"},
        {"classify", "--set", "a=1,b=2,c=3"},
        {"classify", "--family", "nope", "--set", "a=1,b=2,c=3"},
        {"classify", "--family", "h1_pt", "--set", "a=1,b=2"},
        {"classify", "--family", "h1_pt", "--set", "a=1,b=2,c=3,a=4"},
        {"classify", "--family", "h1_pt", "--set", "a=1,b=2,c=x"},
        {"classify", "--family", "h1_pt", "--set", "a=1,b=2,c=3", "--parity", "diag(2,1)"},
        {"classify", "--family", "h1_pt", "--set", "a=1,b=2,c=3", "--unknown-flag"},
        {"ep", "--family", "h1_pt", "--set", "a=8", "--alias", "c=b", "--param", "b",
         "--range", "-10:10", "--tol", "-1"},
        {"transform", "--set", "a=1,b=2"},
    };
    for (const auto& args : bad) {
        const CliResult r = run_cli(args);
        CHECK_MESSAGE(r.code == 1, "expected usage failure for: " << args[0]);
        CHECK(r.err.find("usage:") != std::string::npos);
    }
}

TEST_CASE("computation failures exit with code 2") {
    const fs::path dir = temp_dir("badtemplate");
    const fs::path ham = dir / "div.ham";
    {
        std::ofstream out(ham);
        out << "name: div\nparams: b\ndim: 2\n1/b | 0\n0 | 1\n";
    }
    const CliResult r = run_cli({"classify", "--template", ham.string(), "--set", "b=0"});
    CHECK(r.code == 2);
    CHECK(r.err.find("division by zero") != std::string::npos);

    const CliResult missing = run_cli(
        {"classify", "--template", (dir / "absent.ham").string(), "--set", "b=1"});
    CHECK(missing.code == 2);
    fs::remove_all(dir);
}

TEST_CASE("identical invocations produce identical bytes") {
    const std::vector<std::string> args = {"classify", "--family", "h_original", "--set",
                                           "a=3,b=1,c=2"};
    const CliResult first = run_cli(args);
    const CliResult second = run_cli(args);
    CHECK(first.code == 0);
    CHECK(first.out == second.out);
}

TEST_CASE("help exits cleanly") {
    const CliResult r = run_cli({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("classify") != std::string::npos);
}
