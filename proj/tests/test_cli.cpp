#include <doctest.h>

#include "cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace fs = std::filesystem;
using electra::cli::run_cli;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

fs::path scratch(const std::string& name) {
    auto p = fs::temp_directory_path() / ("electra_cli_" + std::to_string(::getpid())) / name;
    fs::remove_all(p);
    return p;
}

Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int code = run_cli(args, o, e);
    return {code, o.str(), e.str()};
}

double field(const std::string& line, const std::string& key) {
    auto pos = line.find(" " + key + "=");
    REQUIRE(pos != std::string::npos);
    return std::stod(line.substr(pos + key.size() + 2));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("table fixtures") {
    auto dir = scratch("table_l");
    auto r = run({"table", "--model", "peak-linear-i", "--max-n", "7", "--check-fixtures", "--out", dir.string()});
    CHECK(r.code == 0);
    CHECK(r.out.find("table PASS") != std::string::npos);
    for (const char* f : {"pmf.csv", "phase.csv", "phase_exact.csv", "means.csv", "config.json", "manifest.json"})
        CHECK(fs::exists(dir / f));
    auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(manifest["exit_code"] == 0);
    auto config = nlohmann::json::parse(slurp(dir / "config.json"));
    CHECK(config["model"] == "peak-linear-i");
    CHECK(config["max_n"] == 7);

    CHECK(run({"table", "--model", "peak-circular", "--max-n", "7", "--check-fixtures", "--out",
               scratch("table_c").string()})
              .code == 0);
    CHECK(run({"table", "--model", "peak-linear-i", "--max-n", "5", "--init", "altcost", "--check-fixtures", "--out",
               scratch("table_a").string()})
              .code == 0);
    auto toy = run({"table", "--model", "toy", "--max-n", "16", "--check-fixtures", "--out", scratch("toy").string()});
    CHECK(toy.code == 0);
    CHECK(toy.out.find("mismatches=0") != std::string::npos);
    CHECK(run({"table", "--model", "fair-coin", "--check-fixtures", "--out", scratch("nofx").string()}).code == 2);
}

TEST_CASE("output directory from the environment") {
    auto dir = scratch("env");
    ::setenv("ELECTRA_OUT", dir.string().c_str(), 1);
    auto r = run({"table", "--model", "fair-coin", "--max-n", "10"});
    ::unsetenv("ELECTRA_OUT");
    CHECK(r.code == 0);
    CHECK(fs::exists(dir / "phase.csv"));
    auto head = slurp(dir / "phase.csv").substr(0, 9);
    CHECK(head == "n,j,prob\n");
}

TEST_CASE("figures") {
    auto dir = scratch("fig");
    auto f1 = run({"figure", "fig1", "--out", dir.string()});
    REQUIRE(f1.code == 0);
    // Peak-to-peak band of the linear residual on n = 50..500, frozen from the engine: 0.223909.
    CHECK(field(f1.out, "amplitude") == doctest::Approx(0.223909).epsilon(1e-5));
    auto f8 = run({"figure", "fig8", "--out", dir.string()});
    CHECK(field(f8.out, "sup_gap") < 0.015);
    auto f12 = run({"figure", "fig12", "--out", dir.string()});
    CHECK(field(f12.out, "sup_gap") < 0.0055);
    CHECK(run({"figure", "fig10", "--out", dir.string()}).code == 0);
    auto csv = slurp(dir / "fig10.csv");
    CHECK(csv.find("observed_circular") != std::string::npos);
    CHECK(csv.find("observed_linear") != std::string::npos);
    auto f5 = run({"figure", "fig5", "--out", dir.string()});
    CHECK(field(f5.out, "monotone_violations") > 0);
    CHECK(run({"figure", "fig2", "--overlays", "--out", dir.string()}).code == 0);
    CHECK(slurp(dir / "fig2.csv").find("gumbel_ref") != std::string::npos);
    CHECK(run({"figure", "fig13", "--out", dir.string()}).code == 2);
}

TEST_CASE("condition checks") {
    auto dir = scratch("check");
    auto fair = run({"check", "--model", "fair-coin", "--alpha", "0.5", "--n-max", "200", "--out", dir.string()});
    CHECK(fair.code == 0);
    CHECK(fair.out.find("condition PASS") != std::string::npos);
    auto det = run({"check", "--model", "det-halving", "--alpha", "0.5", "--out", dir.string()});
    CHECK(det.code == 1);
    CHECK(det.out.find("ii=FAIL") != std::string::npos);
    auto biased = run({"check", "--model", "biased-coin", "--p", "0.3", "--alpha", "0.3", "--n-max", "50", "--out",
                       dir.string()});
    CHECK(biased.code == 1);
    CHECK(biased.out.find("witness (i): n=2 k=1") != std::string::npos);
    CHECK(run({"check", "--model", "nope", "--out", dir.string()}).code == 2);
    CHECK(run({"check", "--model", "biased-coin", "--p", "x", "--out", dir.string()}).code == 2);
}

TEST_CASE("simulation and periodicity commands") {
    auto dir = scratch("sim");
    auto c2 = run({"simulate", "--variant", "true-persistent", "--estimate", "c2", "--n", "2000", "--trials", "300",
                   "--seed", "1", "--out", dir.string()});
    CHECK(c2.code == 0);
    CHECK(c2.out.find("c2=0.10968686810094") != std::string::npos);
    CHECK(fs::exists(dir / "summary.csv"));
    auto rounds = run({"simulate", "--variant", "redraw-circular", "--n", "50", "--trials", "100", "--out",
                       dir.string()});
    CHECK(rounds.code == 0);
    CHECK(fs::exists(dir / "results.csv"));
    CHECK(run({"simulate", "--variant", "ring", "--out", dir.string()}).code == 2);

    auto per = run({"periodicity", "--model", "peak-linear-i", "--n-lo", "50", "--n-hi", "500", "--L", "5", "--out",
                    dir.string()});
    CHECK(per.code == 0);
    CHECK(field(per.out, "sup_gap") < 0.015);
    CHECK(std::abs(field(per.out, "mass") - 1.0) < 0.02);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"bogus"}).code == 2);
    CHECK(run({"table", "--max-n", "abc"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}
