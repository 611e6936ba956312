#include "doctest.h"

#include "brocard/cli.hpp"

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;

    nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.code = brocard::run_cli(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("brocard-cli-" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace

TEST_CASE("hunt brocard reports the three Brocard solutions") {
    const auto r = cli({"hunt", "brocard", "--poly", "x^2-1", "--lmax", "100"});
    REQUIRE(r.code == 0);
    const auto j = r.json();
    std::vector<std::string> positive;
    for (const auto& e : j["entries"]) {
        if (e["verdict"] != "Representable") continue;
        for (const auto& x : e["witness"]) {
            if (x.get<std::string>()[0] != '-') positive.push_back(x.get<std::string>());
        }
    }
    CHECK(positive == std::vector<std::string>{"5", "11", "71"});
    CHECK(j["entries"].size() == 100);
    CHECK(j.contains("meta"));
}

TEST_CASE("rep test and three-squares") {
    const auto r = cli({"rep", "test", "1,0,1", "45"});
    REQUIRE(r.code == 0);
    CHECK(r.json()["verdict"] == "Representable");
    CHECK(r.json()["witness"] == nlohmann::json::array({"6", "3"}));
    const auto no = cli({"rep", "test", "x^2+y^2", "21"});
    CHECK(no.code == 0);
    CHECK(no.json()["verdict"] == "NotRepresentable");
    // Indefinite form with no eligible blocker: undecided.
    const auto open = cli({"rep", "test", "x^2-2y^2", "7"});
    CHECK(open.code == 1);
    CHECK(open.json()["verdict"] == "Unknown");
    CHECK(cli({"rep", "three-squares", "7"}).json()["sum_of_three_squares"] == false);
    CHECK(cli({"rep", "three-squares", "6"}).json()["sum_of_three_squares"] == true);
}

TEST_CASE("profiles") {
    const auto f = cli({"fact", "profile", "--kind", "factorial", "--l", "10"});
    REQUIRE(f.code == 0);
    CHECK(f.json()["profile"]["2"] == 8);
    const auto p = cli({"pik", "profile", "--delta", "-4", "--l", "5"});
    CHECK(p.json()["profile"] == nlohmann::json{{"2", 3}, {"5", 2}});
    CHECK(cli({"pik", "count", "--delta", "-4", "--n", "25"}).json()["count"] == 3);
    const auto b = cli({"bharg", "profile", "--set", "Z", "--l", "6", "--primes", "7"});
    CHECK(b.json()["profile"] == nlohmann::json{{"2", 4}, {"3", 2}, {"5", 1}});
    const auto o = cli({"bharg", "order", "--set", "Z", "--p", "2", "--len", "3"});
    CHECK(o.json()["values"] == nlohmann::json::array({0, 0, 1, 1}));
    const auto g = cli({"bharg", "growth", "--set", "Z", "--range", "10:12", "--primes", "13", "--csv"});
    CHECK(g.out.rfind("l,log_radical,log_value,ratio,truncated\n", 0) == 0);
}

TEST_CASE("form subcommands") {
    const auto info = cli({"form", "info", "x^2-y^2"});
    REQUIRE(info.code == 0);
    CHECK(info.json()["irreducible"] == false);
    CHECK(info.json()["factorization"]["factors"].size() == 2);
    const auto ct = cli({"form", "cycletype", "x^2+y^2", "--prime", "7"});
    CHECK(ct.json()["primes"][0]["cycle"] == nlohmann::json::array({2}));
    const auto bad = cli({"form", "cycletype", "x^2+y^2", "--upto", "10"}).json()["primes"][0];
    CHECK(bad["good"] == false);
    const auto ps = cli({"form", "pset", "x^2+y^2", "--upto", "30"});
    CHECK(ps.json()["primes"] == nlohmann::json::array({3, 7, 11, 19, 23}));
    const auto d = cli({"form", "density", "x^2+y^2", "--upto", "1000", "--csv"});
    CHECK(d.out.rfind("prime_bound,with_root,sample,density\n1000,", 0) == 0);
}

TEST_CASE("hunt family, gaps, parity and certify") {
    const auto fam = cli({"hunt", "family", "--arange", "4:30"});
    REQUIRE(fam.code == 0);
    CHECK(fam.json()["all_hold"] == true);
    CHECK(fam.json()["rows"][0]["x"] == "7");

    const auto gaps = cli({"hunt", "gaps", "--residue", "3:4", "--range", "11:100", "--ratio", "1.05"});
    CHECK(gaps.code == 0);
    CHECK_FALSE(gaps.json()["violations"].empty());
    CHECK(cli({"hunt", "gaps", "--residue", "3:4", "--range", "11:100000"}).json()["violations"].empty());
    CHECK(cli({"hunt", "gaps", "--form", "x^2+y^2", "--range", "11:100000"}).json()["violations"].empty());
    CHECK(cli({"hunt", "gaps", "--residue", "3:4", "--range", "11:1000", "--csv"}).out == "p,next\n");

    const auto par = cli({"hunt", "parity", "--delta", "-4", "--rhs", "factorial", "--range", "7:7"});
    CHECK(par.json()["rows"][0]["pass"] == false);
    CHECK(par.json()["rows"][0]["prime"] == 7);

    const auto cert = cli({"hunt", "certify", "--form", "x^2+y^2", "--rhs", "factorial", "--range", "7:10"});
    REQUIRE(cert.code == 0);
    const auto entries = cert.json()["entries"];
    for (const auto& e : entries) CHECK(e["prime"] == 7);
    // Degree 4 with nothing to block: Unknown dominates.
    const auto open = cli({"hunt", "certify", "--form", "x^4+y^4", "--rhs", "primorial", "--range", "1:1"});
    CHECK(open.code == 1);
    CHECK(open.json()["entries"][0]["verdict"] == "Unknown");
}

TEST_CASE("usage errors exit with 2") {
    CHECK(cli({}).code == 2);
    CHECK(cli({"form"}).code == 2);
    CHECK(cli({"hunt", "brocard", "--poly", "x^2-1"}).code == 2);
    CHECK(cli({"hunt", "brocard", "--poly", "x^2-1", "--lmax", "5000"}).code == 2);
    CHECK(cli({"hunt", "family", "--arange", "4-30"}).code == 2);
    CHECK(cli({"hunt", "family", "--arange", "2:30"}).code == 2);
    CHECK(cli({"form", "info", "x^2+"}).code == 2);
    CHECK(cli({"form", "cycletype", "x^2+y^2", "--prime", "9"}).code == 2);
    CHECK(cli({"form", "cycletype", "x^2+y^2"}).code == 2);
    CHECK(cli({"rep", "test", "x^2+y^2", "abc"}).code == 2);
    CHECK(cli({"hunt", "gaps", "--range", "1:10"}).code == 2);
    CHECK(cli({"--workers", "0", "fact", "profile", "--l", "3"}).code == 2);
    const auto bad = cli({"frobnicate"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("usage error") != std::string::npos);
    CHECK(cli({"--help"}).code == 0);
}

TEST_CASE("digit bound is honored") {
    const auto r = cli({"--digit-bound", "20", "hunt", "family", "--arange", "4:30"});
    CHECK(r.code == 1);
    CHECK(r.err.find("digit bound") != std::string::npos);
    const auto b = cli({"--digit-bound", "50", "hunt", "brocard", "--poly", "x^2-1", "--lmax", "60"});
    // l! past 50 digits is Unknown; the decided entries still outnumber them.
    CHECK(b.code == 0);
    std::size_t unknown = 0;
    const auto entries = b.json()["entries"];
    for (const auto& e : entries) unknown += e["verdict"] == "Unknown" ? 1 : 0;
    CHECK(unknown > 0);
}

TEST_CASE("no-meta output is byte-identical across runs and worker counts") {
    const std::vector<std::string> args{"--no-meta", "hunt", "certify", "--form", "x^2+xy+y^2", "--rhs", "pik:-3",
                                        "--range", "1:150"};
    const auto a = cli(args);
    auto with_workers = args;
    with_workers.insert(with_workers.begin(), {"--workers", "4"});
    const auto b = cli(with_workers);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.json().contains("meta"));
}

TEST_CASE("config file with flag overrides") {
    const auto dir = scratch_dir("config");
    const auto cfg = dir / "run.conf";
    std::ofstream(cfg) << "# run settings\ndigit-bound = 20\nworkers = 2\n";
    CHECK(cli({"--config", cfg.string(), "hunt", "family", "--arange", "4:30"}).code == 1);
    CHECK(cli({"--config", cfg.string(), "--digit-bound", "100", "hunt", "family", "--arange", "4:30"}).code == 0);
    const auto bad = dir / "bad.conf";
    std::ofstream(bad) << "no-such-key = 1\n";
    CHECK(cli({"--config", bad.string(), "hunt", "family", "--arange", "4:5"}).code == 2);
}

TEST_CASE("output file and directory override") {
    const auto dir = scratch_dir("out");
    const auto target = dir / "family.json";
    REQUIRE(cli({"--output", target.string(), "hunt", "family", "--arange", "4:6"}).code == 0);
    CHECK(std::filesystem::exists(target));

    const auto other = scratch_dir("override");
    ::setenv("BROCARD_OUTPUT_DIR", other.c_str(), 1);
    const auto r = cli({"-o", "elsewhere/gaps.json", "hunt", "gaps", "--residue", "1:4", "--range", "11:1000"});
    ::unsetenv("BROCARD_OUTPUT_DIR");
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(other / "gaps.json");
    CHECK(nlohmann::json::parse(in)["violations"].empty());
}
