#include "rnmw/cli.hpp"
#include "rnmw/error.hpp"
#include "rnmw/moments.hpp"

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace rnmw;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "rnmw_cli_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

void spit(const fs::path& p, const std::string& s) { std::ofstream(p, std::ios::binary) << s; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ',')) cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

const std::string kAarset = RNMW_DATA_DIR "/aarset.csv";

}  // namespace

TEST_CASE("dataset parsing") {
    const auto a = cli::parse_dataset("time,status\n1.5,1\n2,0\n# note\n\n3e0;1\n", "a");
    REQUIRE(a.size() == 3);
    CHECK(a.censored() == 1);
    CHECK(a.observations()[2].time == 3.0);
    CHECK(cli::parse_dataset("0.5\n0.7\t\n", "b").size() == 2);
    CHECK_THROWS_AS(cli::parse_dataset("", "e"), InputError);
    CHECK_THROWS_AS(cli::parse_dataset("1,2\n", "bad status"), InputError);
    CHECK_THROWS_AS(cli::parse_dataset("1,1\nx,1\n", "late text"), InputError);
    CHECK_THROWS_AS(cli::parse_dataset("-1\n", "negative"), InputError);
    CHECK_THROWS_AS(cli::parse_dataset("1,5\n", "odd"), InputError);
    double v = 0;
    CHECK(cli::parse_real("1.25", v));
    CHECK(v == 1.25);
    CHECK_FALSE(cli::parse_real("1,25", v));
    CHECK_FALSE(cli::parse_real("1.2x", v));
}

TEST_CASE("fit command") {
    const auto empty = scratch("empty.csv");
    spit(empty, "");
    CHECK(run({"fit", "--input", empty.string()}).code == cli::kInputError);
    CHECK(run({"fit", "--input", "/definitely/not/here.csv"}).code == cli::kInputError);
    CHECK(run({"fit"}).code == cli::kInputError);

    const auto only = scratch("rnmw_only.json");
    const auto r = run({"fit", "--input", kAarset, "--model", "rnmw", "--out", only.string()});
    CHECK(r.code == cli::kOk);
    const auto jo = cli::read_json(only.string());
    CHECK_FALSE(jo.contains("lrt"));
    CHECK(jo["models"].contains("RNMW"));
    CHECK_FALSE(jo["models"].contains("NMW"));

    const auto both = scratch("both.json");
    const auto b = run({"fit", "--input", kAarset, "--out", both.string()});
    CHECK(b.code == cli::kOk);
    CHECK(b.out.find("Likelihood ratio test") != std::string::npos);
    const auto jb = cli::read_json(both.string());
    REQUIRE(jb.contains("lrt"));
    CHECK(jb["lrt"]["df"] == 2);
    CHECK(jb["models"]["RNMW"]["criteria"]["k"] == 3);
    CHECK(jb["models"]["NMW"]["criteria"]["k"] == 5);

    // Reading and re-dumping a report reproduces its bytes; so does rerunning.
    const std::string bytes = slurp(both);
    CHECK(cli::dump_json(jb) == bytes);
    const auto again = scratch("both2.json");
    run({"fit", "--input", kAarset, "--out", again.string()});
    CHECK(slurp(again) == bytes);
}

TEST_CASE("curves command") {
    const auto prefix = scratch("exp_").string();
    const auto r = run({"curves", "--params", "1.3,0,1,1,0", "--out", prefix, "--points", "50"});
    REQUIRE(r.code == cli::kOk);
    const auto ttt = csv_rows(slurp(prefix + "ttt.csv"));
    REQUIRE(ttt.size() == 50);
    for (std::size_t i = 1; i < ttt.size(); ++i) CHECK(std::abs(std::stod(ttt[i][1]) - std::stod(ttt[i][0])) < 1e-8);
    const auto surv = csv_rows(slurp(prefix + "survival.csv"));
    CHECK(surv[1][0] == "0");
    CHECK(surv[1][1] == "1");

    // Censored input: TTT notice, other files still present.
    const auto cens = scratch("cens.csv");
    spit(cens, "time,status\n1,1\n2,0\n3,1\n4,1\n");
    const auto cp = scratch("cens_").string();
    fs::remove(cp + "ttt_empirical.csv");
    const auto c = run({"curves", "--params", "0.3,0.01,0.5", "--input", cens.string(), "--out", cp});
    CHECK(c.code == cli::kOk);
    CHECK(c.err.find("censored") != std::string::npos);
    CHECK_FALSE(fs::exists(cp + "ttt_empirical.csv"));
    for (const char* f : {"pdf.csv", "survival.csv", "hazard.csv", "ttt.csv"}) CHECK(fs::exists(cp + f));
    const auto km = csv_rows(slurp(cp + "survival.csv"));
    CHECK(km[0].back() == "kaplan_meier");

    // Hazard minimum marker for the tabulated Aarset estimates.
    const auto hp = scratch("aarset_").string();
    REQUIRE(run({"curves", "--params", "0.102,3.644e-8,0.180", "--input", kAarset, "--out", hp}).code == cli::kOk);
    const auto rows = csv_rows(slurp(hp + "hazard.csv"));
    std::size_t mark = 0;
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].back() == "1") mark = i;
    REQUIRE(mark > 1);
    REQUIRE(mark + 1 < rows.size());
    for (std::size_t i = 2; i <= mark; ++i) CHECK(std::stod(rows[i][1]) < std::stod(rows[i - 1][1]));
    for (std::size_t i = mark + 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) > std::stod(rows[i - 1][1]));
    CHECK(fs::exists(hp + "ttt_empirical.csv"));

    CHECK(run({"curves", "--out", hp}).code == cli::kInputError);
    CHECK(run({"curves", "--params", "1,2", "--out", hp}).code == cli::kInputError);
}

TEST_CASE("sweep command") {
    const auto r = run({"sweep", "--grid", "0.5:0.5:0.1,0.2:0.2:0.1,0.9:0.9:0.1"});
    REQUIRE(r.code == cli::kOk);
    const auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 2);
    const auto c = central_stats({0.5, 0.2, 0.9});
    CHECK(std::stod(rows[1][3]) == c.skewness);
    CHECK(std::stod(rows[1][4]) == c.kurtosis);
    CHECK(rows[1][5] == "ok");
    CHECK(run({"sweep", "--grid", "1:0:1"}).code == cli::kInputError);
    CHECK(run({"sweep", "--grid", "bogus"}).code == cli::kInputError);
}

TEST_CASE("sample command") {
    const auto a = run({"sample", "--params", "0.1,0.001,0.2", "--n", "100", "--seed", "9"});
    const auto b = run({"sample", "--params", "0.1,0.001,0.2", "--n", "100", "--seed", "9"});
    REQUIRE(a.code == cli::kOk);
    CHECK(a.out == b.out);
    CHECK(csv_rows(a.out).size() == 101);
    CHECK(run({"sample", "--params", "0.1,0.001,0.2", "--n", "0"}).out == "time\n");
    CHECK(run({"sample", "--params", "0.1,-1,0.2", "--n", "3"}).code == cli::kInputError);
    CHECK(run({"sample", "--params", "0,0,1", "--n", "3"}).code == cli::kInputError);
}

TEST_CASE("installed binary returns the documented exit codes") {
    const auto empty = scratch("empty_bin.csv");
    spit(empty, "");
    const std::string cmd = std::string(RNMW_CLI_PATH) + " fit --input " + empty.string() + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    REQUIRE(WIFEXITED(status));
    CHECK(WEXITSTATUS(status) == 2);
}
