#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "qxsort/cli.hpp"

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result run(std::initializer_list<const char*> args) {
    std::vector<const char*> argv{"qxsort"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = qxsort::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string p;
    while (std::getline(ss, p, sep)) parts.push_back(p);
    return parts;
}

// Field `col` of CSV line `row` (0 = header).
std::string cell(const std::string& csv, std::size_t row, std::size_t col) { return split(split(csv, '\n')[row], ',')[col]; }

}  // namespace

TEST_CASE("bench") {
    auto r = run({"bench", "--algo", "mergesort", "--n", "4", "--trials", "exhaustive", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(split(r.out, '\n')[0] ==
          "algo,alpha,pivot,base_case,n,trials,seed,mean_comps,stddev_comps,b_emp,mean_swaps");
    CHECK(cell(r.out, 1, 7) == "4.6667");
    CHECK(cell(r.out, 1, 5) == "24");

    r = run({"bench", "--algo", "qms", "--pivot", "mo3", "--alpha", "1/2", "--n", "65536", "--trials", "400", "--seed",
             "1", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(std::stod(cell(r.out, 1, 9)) == doctest::Approx(-0.85).epsilon(0.03 / 0.85));

    // same plan and seed, same bytes
    const auto a = run({"bench", "--algo", "qms", "qhs", "mergesort", "--n", "1000", "2^11", "--trials", "20",
                        "--format", "csv"});
    const auto b = run({"bench", "--algo", "qms", "qhs", "mergesort", "--n", "1000", "2^11", "--trials", "20",
                        "--format", "csv"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(split(a.out, '\n').size() == 7);

    const auto table = run({"bench", "--n", "100", "--trials", "3"});
    CHECK(table.code == 0);
    CHECK(table.out.find("mean_comps") != std::string::npos);
}

TEST_CASE("bench usage errors") {
    CHECK(run({"bench"}).code == 2);
    CHECK(run({"bench", "--n"}).code != 0);
    CHECK(run({"bench", "--n", "10", "--trials", "exhaustive"}).code == 2);
    CHECK(run({"bench", "--n", "0"}).code == 2);
    CHECK(run({"bench", "--n", "100", "--alpha", "1/4"}).code == 2);
    CHECK(run({"bench", "--n", "100", "--pivot", "mo4"}).code == 2);
    CHECK(run({"bench", "--n", "100", "--algo", "quick"}).code == 2);
    CHECK(run({"bench", "--n", "100", "--x", "external-heapsort"}).code == 2);
    CHECK(run({"bench", "--n", "100", "--format", "xml"}).code != 0);
    CHECK(run({}).code != 0);
}

TEST_CASE("theory") {
    auto r = run({"theory", "--k", "3", "--alpha", "1/2", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(std::stod(cell(r.out, 1, 2)) == doctest::Approx(0.4050).epsilon(5e-5 / 0.405));
    const double lo = std::stod(cell(r.out, 1, 3)), hi = std::stod(cell(r.out, 1, 4));
    CHECK(lo >= -0.8596);
    CHECK(hi <= -0.8358 + 1e-4);
    CHECK(lo < hi);

    r = run({"theory", "--k", "1", "--alpha", "1", "--format", "csv"});
    CHECK(std::stod(cell(r.out, 1, 2)) == doctest::Approx(1.1146).epsilon(5e-5));
    r = run({"theory", "--k", "21", "--alpha", "1/4", "--format", "csv"});
    CHECK(std::stod(cell(r.out, 1, 2)) == doctest::Approx(0.05498).epsilon(1e-3));
    CHECK(cell(r.out, 1, 6) == "no reference");

    r = run({"theory", "--grid", "paper", "--format", "csv"});
    CHECK(split(r.out, '\n').size() == 16);
    CHECK(run({"theory", "--k", "2"}).code == 2);
}

TEST_CASE("tabulate") {
    auto r = run({"tabulate", "--N", "8192", "--pivot", "mo3", "--alpha", "1/2", "--every", "4096", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(cell(r.out, 0, 2) == "sd_over_n");
    CHECK(std::stod(cell(r.out, 2, 3)) == doctest::Approx(-0.84).epsilon(0.02 / 0.84));

    r = run({"tabulate", "--N", "8192", "--pivot", "mo1", "--every", "8192", "--format", "csv"});
    REQUIRE(r.code == 0);
    CHECK(std::stod(cell(r.out, 1, 2)) == doctest::Approx(0.654).epsilon(0.01 / 0.654));

    CHECK(run({"tabulate", "--N", "20000"}).code == 2);
    CHECK(run({"tabulate", "--N", "2", "--pivot", "mo3"}).code == 2);
    CHECK(run({"tabulate", "--N", "100", "--pivot", "sqrt"}).code == 2);
    CHECK(run({"tabulate", "--N", "100", "--pivot", "mo3+mom"}).code == 2);
    CHECK(run({"tabulate", "--N", "100", "--x", "external-heapsort", "--pivot", "mo1"}).code == 0);
}

TEST_CASE("verify") {
    auto r = run({"verify", "--only", "q-table"});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("[PASS] q-table", 0) == 0);
    r = run({"verify", "--only", "q-table", "mi-worstcase", "--format", "csv"});
    CHECK(r.code == 0);
    CHECK(split(r.out, '\n').size() == 3);
    CHECK(run({"verify", "--only", "no-such-check"}).code == 2);
}

TEST_CASE("output file") {
    const std::string path = "qxsort_cli_test.csv";
    auto r = run({"theory", "--format", "csv", "--out", path.c_str()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "k,alpha,q,b_pred_lo,b_pred_hi,H,var_c0,var_c1");
    std::remove(path.c_str());
    CHECK(run({"theory", "--out", "/nonexistent/dir/x.csv"}).code == 2);
}
