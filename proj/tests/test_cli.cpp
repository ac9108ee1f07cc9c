#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "unitfrac/io.hpp"

namespace fs = std::filesystem;
using unitfrac::io::Json;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = unitfrac::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path data_dir() {
    fs::path dir(UNITFRAC_TEST_DATA_DIR);
    fs::create_directories(dir);
    return dir;
}

std::string write_lines(const std::string& name, const std::vector<std::string>& lines) {
    auto path = data_dir() / name;
    std::ofstream f(path, std::ios::binary);
    for (const auto& l : lines) f << l << '\n';
    return path.string();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        rows.push_back(cells);
    }
    return rows;
}

Json footer(const std::string& text) {
    auto pos = text.rfind("# ");
    REQUIRE(pos != std::string::npos);
    return Json::parse(text.substr(pos + 2));
}

// the whole enclosure rounds to the quoted decimal, checked without doubles
bool rounds_to(const Json& iv, const char* decimal) {
    auto lo = unitfrac::Rational::parse(iv["lo"].get<std::string>());
    auto hi = unitfrac::Rational::parse(iv["hi"].get<std::string>());
    std::string digits(decimal);
    auto dot = digits.find('.');
    std::string den = "1" + std::string(digits.size() - dot - 1, '0');
    digits.erase(dot, 1);
    auto x = unitfrac::Rational::parse(digits + "/" + den);
    auto half_ulp = unitfrac::Rational::parse("1/" + den) / unitfrac::Rational(2);
    return x - half_ulp <= lo && hi < x + half_ulp;
}

} // namespace

TEST_CASE("expand examples", "[cli]") {
    auto r = run({"expand", "--theta", "19/48", "--algo", "greedy", "--terms", "2", "--format", "json"});
    REQUIRE(r.code == 0);
    auto doc = Json::parse(r.out);
    CHECK(doc["a"] == Json({"3", "17"}));
    CHECK(doc["b"] == Json({"3", "17"}));

    r = run({"expand", "--theta", "19/48", "--algo", "gt", "--t", "4/3", "--terms", "2", "--last-greedy",
             "--format", "json"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["b"] == Json({"4", "7"}));

    r = run({"expand", "--theta", "0/1", "--terms", "2"});
    CHECK(r.code == 2);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    CHECK(run({"expand", "--theta", "3/2", "--terms", "2"}).code == 2);
    CHECK(run({"expand", "--theta", "abc", "--terms", "2"}).code == 2);
    CHECK(run({"expand", "--terms", "2"}).code == 2);
    CHECK(run({"expand", "--theta", "1/2", "--algo", "bogus", "--terms", "2"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("expand replays an explicit list", "[cli]") {
    auto b = write_lines("replay.txt", {"3", "8", "120"});
    auto r = run({"expand", "--theta", "3/4", "--algo", "wgaa", "--b-file", b, "--format", "csv"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 4);
    CHECK(rows[1][1] == "2");
    CHECK(rows[2][1] == "3");
    CHECK(rows[3][1] == "4");
    // b_1 = 1 breaks b_n >= a_n
    auto bad = write_lines("replay_bad.txt", {"1", "8"});
    CHECK(run({"expand", "--theta", "3/4", "--algo", "wgaa", "--b-file", bad}).code == 2);
}

TEST_CASE("verify examples", "[cli]") {
    std::vector<std::string> b, a;
    for (long n = 1; n <= 500; ++n) {
        b.push_back(std::to_string(n * (n + 2)));
        a.push_back(std::to_string(n + 1));
    }
    auto b_file = write_lines("ex1_b.txt", b);
    auto a_file = write_lines("ex1_a.txt", a);
    auto r = run({"verify", "--b-file", b_file, "--theta", "3/4", "--a-file", a_file, "--format", "csv"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 501);
    for (std::size_t n = 1; n <= 500; ++n) {
        REQUIRE(rows[n][2] == std::to_string(n + 1));
        REQUIRE(rows[n].back() == "pass");
    }

    // a wrong expectation is a failed check, not a usage error
    a[99] = "7";
    auto wrong = write_lines("ex1_a_wrong.txt", a);
    r = run({"verify", "--b-file", b_file, "--theta", "3/4", "--a-file", wrong});
    CHECK(r.code == 1);
    CHECK(r.err.find("n = 100") != std::string::npos);

    std::vector<std::string> fib_b{"3", "6", "7", "13", "20", "34", "54", "89"};
    auto fib = write_lines("fib_b6.txt", fib_b);
    r = run({"verify", "--family", "fibonacci", "--b-file", fib, "--format", "csv"});
    CHECK(r.code == 1);
    CHECK(r.err.find("n = 2") != std::string::npos);
    fib_b[1] = "5";
    auto fib_ok = write_lines("fib_b5.txt", fib_b);
    CHECK(run({"verify", "--family", "fibonacci", "--b-file", fib_ok}).code == 0);
    CHECK(run({"verify", "--family", "arithmetic:a=2,d=1", "--terms", "50"}).code == 0);

    auto empty = write_lines("empty.txt", {});
    CHECK(run({"verify", "--b-file", empty, "--theta", "3/4"}).code == 2);
    CHECK(run({"verify", "--b-file", (data_dir() / "missing.txt").string(), "--theta", "3/4"}).code == 2);
    CHECK(run({"verify"}).code == 2);
}

TEST_CASE("unique sweep agrees with the integer count", "[cli]") {
    auto r = run({"unique", "--range", "300"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 1 + 298 * 299 / 2);
    CHECK(rows[0].back() == "agree");
    for (std::size_t i = 1; i < rows.size(); ++i) REQUIRE(rows[i].back() == "true");

    auto relaxed = run({"unique", "--range", "60", "--mode", "e18"});
    REQUIRE(relaxed.code == 0);
    for (const auto& row : csv_rows(relaxed.out)) REQUIRE((row.back() == "true" || row.back() == "agree"));

    auto s1 = run({"unique", "--range", "200", "--sample", "50", "--seed", "9"});
    auto s2 = run({"unique", "--range", "200", "--sample", "50", "--seed", "9"});
    auto s3 = run({"unique", "--range", "200", "--sample", "50", "--seed", "10"});
    CHECK(s1.out == s2.out);
    CHECK(s1.out != s3.out);
    CHECK(csv_rows(s1.out).size() == 51);
    CHECK(run({"unique", "--range", "20", "--mode", "e9"}).code == 2);
}

TEST_CASE("family output and enclosure", "[cli]") {
    auto r = run({"family", "--spec", "geometric:a=2,r=3", "--terms", "40", "--theta-enclosure"});
    REQUIRE(r.code == 0);
    auto rows = csv_rows(r.out);
    REQUIRE(rows.size() == 41);
    CHECK(rows[1] == std::vector<std::string>{"1", "2", "2"});
    CHECK(rows[2] == std::vector<std::string>{"2", "6", "8"});
    auto f = footer(r.out);
    CHECK(rounds_to(f["theta_enclosure"], "0.68215"));
    CHECK_FALSE(rounds_to(f["theta_enclosure"], "0.68216"));
    CHECK(unitfrac::Rational::parse(f["theta_enclosure"]["width"].get<std::string>()) <
          unitfrac::Rational::parse("1/100000"));

    r = run({"family", "--spec", "fibonacci", "--terms", "50", "--verify"});
    REQUIRE(r.code == 0);
    CHECK(footer(r.out)["jump_check"]["holds"] == true);
    CHECK(run({"family", "--spec", "geometric:a=2,r=1"}).code == 2);
    CHECK(run({"family", "--spec", "sylvester"}).code == 2);
}

TEST_CASE("construct certifies a plateau target", "[cli]") {
    auto plateau = write_lines("plateau.txt", {"2", "2", "3", "3", "3", "5", "5", "8"});
    auto r = run({"construct", "--a-file", plateau, "--repeat-last-delta", "--depth", "25"});
    REQUIRE(r.code == 0);
    auto doc = Json::parse(r.out);
    CHECK(doc["step3_certified"] == true);
    CHECK(doc["step4_certified"] == true);
    CHECK(doc["jump_indices"].size() == 25);
    CHECK(doc["a_prefix"][0] == "2");
    CHECK(doc["a_prefix"][1] == "2");

    // a finite file needs an explicit continuation rule
    CHECK(run({"construct", "--a-file", plateau, "--depth", "25"}).code == 2);
    auto decreasing = write_lines("decreasing.txt", {"4", "3"});
    CHECK(run({"construct", "--a-file", decreasing, "--repeat-last-delta"}).code == 2);

    r = run({"construct", "--family", "arithmetic:a=2,d=1", "--depth", "10"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["target"].get<std::string>().find("arithmetic") != std::string::npos);
}

TEST_CASE("classify reports", "[cli]") {
    auto r = run({"classify", "--family", "geometric:a=2,r=3", "--terms", "30"});
    REQUIRE(r.code == 0);
    auto doc = Json::parse(r.out);
    CHECK(doc["verdict"] == "producible-evidence");
    r = run({"classify", "--family", "arithmetic:a=2,d=1", "--terms", "100", "--t-grid", "1,3/2,2"});
    REQUIRE(r.code == 0);
    CHECK(Json::parse(r.out)["verdict"] == "not-producible-evidence");
    CHECK(run({"classify", "--family", "fibonacci", "--t-grid", "1/2"}).code == 2);
}

TEST_CASE("output is deterministic and files match stdout", "[cli]") {
    std::vector<std::string> args{"construct", "--family", "geometric:a=2,r=4", "--depth", "8", "--seed", "3"};
    auto first = run(args);
    auto second = run(args);
    REQUIRE(first.code == 0);
    CHECK(first.out == second.out);

    auto path = (data_dir() / "construct.json").string();
    auto to_file = args;
    to_file.insert(to_file.end(), {"--output", path});
    REQUIRE(run(to_file).code == 0);
    std::ifstream f(path, std::ios::binary);
    std::stringstream contents;
    contents << f.rdbuf();
    CHECK(contents.str() == first.out);
}

TEST_CASE("term cap comes from the environment", "[cli]") {
    ::setenv("UNITFRAC_MAX_TERMS", "5", 1);
    CHECK(run({"expand", "--theta", "1/2", "--terms", "6"}).code == 2);
    CHECK(run({"expand", "--theta", "1/2", "--terms", "5"}).code == 0);
    ::setenv("UNITFRAC_MAX_TERMS", "lots", 1);
    CHECK(run({"expand", "--theta", "1/2", "--terms", "5"}).code == 2);
    ::unsetenv("UNITFRAC_MAX_TERMS");
    CHECK(run({"expand", "--theta", "1/2", "--terms", "10001"}).code == 2);
}
