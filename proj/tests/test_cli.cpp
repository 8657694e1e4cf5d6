#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "srm/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run_cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = srm::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

class TempDir {
public:
    TempDir() {
        path_ = fs::temp_directory_path() /
                ("srm_cli_test_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter_++));
        fs::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    fs::path file(const std::string& name, const std::string& content) const {
        const fs::path p = path_ / name;
        std::ofstream f(p);
        f << content;
        return p;
    }
    const fs::path& path() const { return path_; }

private:
    static inline int counter_ = 0;
    fs::path path_;
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::istringstream in(line);
    std::string cell;
    while (std::getline(in, cell, ',')) cells.push_back(cell);
    return cells;
}

}  // namespace

TEST_CASE("compute prints benchmark-precision values") {
    const auto r = run_cli({"compute", "--dist", "uniform", "--spectrum", "exp", "--k", "1",
                            "--mode", "repro", "--rule", "simpson", "--n", "10000"});
    CHECK(r.code == 0);
    CHECK(r.out == "value\n0.582\n");

    const auto es = run_cli({"compute", "--dist", "uniform", "--spectrum", "es", "--alpha",
                             "0"});
    CHECK(es.code == 0);
    CHECK(es.out == "value\n0.500\n");

    const auto var = run_cli({"compute", "--dist", "uniform", "--spectrum", "var",
                              "--alpha", "0.95"});
    CHECK(var.code == 0);
    CHECK(var.out == "value\n0.950\n");
}

TEST_CASE("compute full precision and pretty report") {
    const auto full = run_cli({"compute", "--dist", "uniform", "--spectrum", "es",
                               "--alpha", "0", "--precision", "full"});
    CHECK(full.code == 0);
    CHECK(full.out.substr(0, 6) == "value\n");
    CHECK(std::stod(split_lines(full.out)[1]) == doctest::Approx(0.5).epsilon(1e-12));

    const auto pretty = run_cli({"compute", "--dist", "cauchy", "--spectrum", "exp", "--k",
                                 "5", "--mode", "repro", "--rule", "simpson", "--n",
                                 "10000", "--format", "pretty"});
    CHECK(pretty.code == 0);
    CHECK(pretty.out.find("distribution") != std::string::npos);
    CHECK(pretty.out.find("warning") != std::string::npos);  // heavy tail note
}

TEST_CASE("table output") {
    const auto r = run_cli({"table", "--id", "1"});
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 5);
    const auto header = split_csv(lines[0]);
    REQUIRE(header.size() == 6);
    CHECK(header[0] == "k");
    CHECK(header[1] == "standard_normal");
    // k = 5 row, standard normal column
    const auto row = split_csv(lines[2]);
    CHECK(row[0] == "5");
    CHECK(row[1] == "1.080");
    CHECK(r.out.find('#') == std::string::npos);  // csv carries no annotations

    const auto again = run_cli({"table", "--id", "1"});
    CHECK(again.out == r.out);  // byte-stable

    const auto pretty = run_cli({"table", "--id", "1", "--format", "pretty"});
    CHECK(pretty.out.find("# heavy-tail: grid-sensitive") != std::string::npos);

    const auto tsv = run_cli({"table", "--id", "3", "--format", "tsv"});
    CHECK(split_lines(tsv.out)[0].find('\t') != std::string::npos);

    CHECK(run_cli({"table", "--id", "4"}).code == 2);
}

TEST_CASE("table 2 carries the limit rows") {
    const auto r = run_cli({"table", "--id", "2"});
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 6);  // header + gamma rows + the two limit rows
    CHECK(split_csv(lines[1])[0] == "->0");
    const auto limit_row = split_csv(lines[5]);
    CHECK(limit_row[0] == "->1");
    CHECK(limit_row[3] == "0.500");  // uniform mean
    CHECK(limit_row[4] == "0.333");  // beta mean
    CHECK(limit_row[5] == "-0.576");
}

TEST_CASE("figure output") {
    const auto r = run_cli({"figure", "--id", "5"});
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 1002);
    CHECK(split_csv(lines[0]) == std::vector<std::string>{"p", "gamma_1.5", "gamma_5"});
    const auto last = split_csv(lines[1001]);
    CHECK(last[0] == "1");
    CHECK(last[2] == "5");

    CHECK(run_cli({"figure", "--id", "0"}).code == 2);
}

TEST_CASE("sweep output") {
    const auto r = run_cli({"sweep", "--dist", "uniform", "--family", "power-high",
                            "--from", "1.1", "--to", "20", "--points", "4", "--log",
                            "--mode", "repro", "--rule", "trapezoid", "--n", "10000"});
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 5);
    CHECK(split_csv(lines[0]) == std::vector<std::string>{"gamma", "value"});
    CHECK(std::stod(split_csv(lines[1])[1]) == doctest::Approx(0.5237).epsilon(1e-3));
    CHECK(std::stod(split_csv(lines[4])[1]) == doctest::Approx(0.9504).epsilon(1e-3));

    CHECK(run_cli({"sweep", "--dist", "uniform", "--family", "exp", "--from", "10",
                   "--to", "1", "--points", "4"}).code == 2);
}

TEST_CASE("empirical runs") {
    TempDir tmp;
    const auto two = tmp.file("two.csv", "0\n1\n");
    const auto r = run_cli({"empirical", "--input", two.string(), "--spectrum", "es",
                            "--alpha", "0.5"});
    REQUIRE(r.code == 0);
    const auto lines = split_lines(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(split_csv(lines[0]) ==
          std::vector<std::string>{"n", "spectrum", "srm", "captured_mass"});
    const auto row = split_csv(lines[1]);
    CHECK(row[0] == "2");
    CHECK(std::stod(row[2]) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::stod(row[3]) == 1.0);

    const auto single = tmp.file("one.csv", "loss\n5\n");
    const auto r1 = run_cli({"empirical", "--input", single.string(), "--spectrum", "exp",
                             "--k", "2"});
    CHECK(std::stod(split_csv(split_lines(r1.out)[1])[2]) ==
          doctest::Approx(5.0).epsilon(1e-12));

    const auto three = tmp.file("three.csv", "1\n2\n3\n");
    const auto r2 = run_cli({"empirical", "--input", three.string(), "--spectrum", "var",
                             "--alpha", "0.5"});
    CHECK(std::stod(split_csv(split_lines(r2.out)[1])[2]) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("empirical ingestion errors carry line numbers") {
    TempDir tmp;
    const auto bad = tmp.file("bad.csv", "1.0\nnot-a-loss\n");
    const auto r = run_cli({"empirical", "--input", bad.string(), "--spectrum", "es",
                            "--alpha", "0.5"});
    CHECK(r.code == 2);
    CHECK(r.err.find(":2") != std::string::npos);

    const auto missing = run_cli({"empirical", "--input",
                                  (tmp.path() / "nope.csv").string(), "--spectrum", "es",
                                  "--alpha", "0.5"});
    CHECK(missing.code == 2);
    CHECK_FALSE(missing.err.empty());
}

TEST_CASE("validation errors name the offending key and exit 2") {
    const auto unknown = run_cli({"compute", "--dist", "uniform", "--spectrum", "es",
                                  "--alpha", "0", "--definitely-not-a-flag"});
    CHECK(unknown.code == 2);
    CHECK_FALSE(unknown.err.empty());

    const auto bad_gamma = run_cli({"compute", "--dist", "uniform", "--spectrum",
                                    "power-low", "--gamma", "1"});
    CHECK(bad_gamma.code == 2);
    CHECK(bad_gamma.err.find("gamma") != std::string::npos);

    const auto missing_param = run_cli({"compute", "--dist", "uniform", "--spectrum",
                                        "exp"});
    CHECK(missing_param.code == 2);
    CHECK(missing_param.err.find("--k") != std::string::npos);

    const auto odd_simpson = run_cli({"compute", "--dist", "uniform", "--spectrum", "exp",
                                      "--k", "1", "--mode", "repro", "--rule", "simpson",
                                      "--n", "9999"});
    CHECK(odd_simpson.code == 2);
    CHECK(odd_simpson.err.find("Simpson") != std::string::npos);

    CHECK(run_cli({}).code == 2);
}

TEST_CASE("config file provides defaults and flags override it") {
    TempDir tmp;
    const auto cfg = tmp.file("run.cfg",
                              "dist=uniform\n"
                              "spectrum=exp\n"
                              "k=1\n"
                              "mode=repro\n"
                              "rule=simpson\n"
                              "n=10000\n");
    const auto r = run_cli({"compute", "--config", cfg.string()});
    CHECK(r.code == 0);
    CHECK(r.out == "value\n0.582\n");

    const auto overridden = run_cli({"compute", "--config", cfg.string(), "--k", "5"});
    CHECK(overridden.code == 0);
    CHECK(overridden.out == "value\n0.806\n");
}

TEST_CASE("thread cap changes nothing about the output bytes") {
    const auto baseline = run_cli({"table", "--id", "3"});
    ::setenv("SRM_NUM_THREADS", "1", 1);
    const auto capped = run_cli({"table", "--id", "3"});
    ::unsetenv("SRM_NUM_THREADS");
    CHECK(capped.code == 0);
    CHECK(capped.out == baseline.out);

    ::setenv("SRM_NUM_THREADS", "many", 1);
    const auto bad = run_cli({"table", "--id", "3"});
    ::unsetenv("SRM_NUM_THREADS");
    CHECK(bad.code == 2);
    CHECK(bad.err.find("SRM_NUM_THREADS") != std::string::npos);
}

TEST_CASE("--out writes atomically") {
    TempDir tmp;
    const auto target = tmp.path() / "table1.csv";
    const auto r = run_cli({"table", "--id", "1", "--out", target.string()});
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    REQUIRE(fs::exists(target));
    CHECK_FALSE(fs::exists(target.string() + ".tmp"));

    std::ifstream f(target);
    std::stringstream content;
    content << f.rdbuf();
    CHECK(content.str() == run_cli({"table", "--id", "1"}).out);

    const auto bad = run_cli({"table", "--id", "1", "--out",
                              (tmp.path() / "missing-dir" / "t.csv").string()});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("--out") != std::string::npos);
}
