#include <doctest.h>

#include "gelfond/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace gelfond;
namespace fs = std::filesystem;

namespace {

const fs::path kData = fs::path(__FILE__).parent_path() / "data";

struct Run {
    int code;
    std::string out;
};

// cli_main with stdout and stderr captured.
Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "gelfond-lab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    std::ostringstream out, err;
    auto* o = std::cout.rdbuf(out.rdbuf());
    auto* e = std::cerr.rdbuf(err.rdbuf());
    int code = cli_main(static_cast<int>(argv.size()), argv.data());
    std::cout.rdbuf(o);
    std::cerr.rdbuf(e);
    return {code, out.str()};
}

std::string data(const char* name) { return (kData / name).string(); }

fs::path temp_file(const std::string& name) { return fs::temp_directory_path() / ("gelfond_cli_" + name); }

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("zarankiewicz subcommand") {
    CHECK(run({"zarankiewicz", "2", "2", "2", "2"}).out == "4 (bound 4)\n");
    Run r = run({"zarankiewicz", "2", "2", "3", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == "7 (bound 7)\n");
    CHECK(run({"zarankiewicz", "3", "3", "3", "3"}).out.find("bound") == std::string::npos);
    CHECK(run({"zarankiewicz", "2", "2", "5", "5"}).code == kExitUsage);
    CHECK(run({"zarankiewicz", "2", "2"}).code == kExitUsage);
}

TEST_CASE("verify campaigns") {
    Run r = run({"verify", "detid", "--trials", "100", "--seed", "7"});
    CHECK(r.code == kExitOk);
    std::istringstream lines(r.out);
    int count = 0;
    for (std::string line; std::getline(lines, line); ++count) {
        auto j = nlohmann::json::parse(line);
        CHECK(j["trial"] == count);
        CHECK(j["outcome"] == "HOLDS");
    }
    CHECK(count == 100);
    CHECK(run({"verify", "nosuch"}).code == kExitUsage);
    CHECK(run({"verify"}).code == kExitUsage);
}

TEST_CASE("reports are byte-identical for a seed, whatever the worker count") {
    for (const auto& suite : suite_names()) {
        INFO(suite);
        Run a = run({"verify", suite, "--trials", "20", "--seed", "11", "--workers", "1"});
        Run b = run({"verify", suite, "--trials", "20", "--seed", "11", "--workers", "4"});
        CHECK(a.code == kExitOk);
        CHECK(a.out == b.out);
        Run c = run({"verify", suite, "--trials", "20", "--seed", "12", "--workers", "4"});
        CHECK(c.out != a.out);
    }
}

TEST_CASE("summary line and output file") {
    fs::path out = temp_file("report.jsonl");
    Run r = run({"verify", "propZ", "--trials", "10", "--out", out.string(), "--summary"});
    CHECK(r.code == 0);
    auto s = nlohmann::json::parse(r.out);
    CHECK(s["summary"] == true);
    CHECK(s["holds"] == 10);
    std::string body = slurp(out);
    CHECK(std::count(body.begin(), body.end(), '\n') == 10);
    fs::remove(out);
}

TEST_CASE("propfg single instance") {
    Run r = run({"verify", "propfg", "--points", data("propfg.points"), "--f", data("f.poly"), "--g", data("g.poly"),
                 "--t", "1"});
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["claim"] == "propFG");
    CHECK(j["verdict"] == "HOLDS");
    CHECK(run({"verify", "propfg", "--f", data("f.poly")}).code == kExitUsage);
    CHECK(run({"verify", "propfg", "--points", "/nonexistent", "--f", data("f.poly"), "--g", data("g.poly")}).code ==
          kExitUsage);
}

TEST_CASE("pipeline subcommand exit codes") {
    Run q = run({"pipeline", "propQ", data("propQ_identity.json")});
    CHECK(q.code == kExitOk);
    CHECK(nlohmann::json::parse(q.out)["Q"] == "2 -3 1");

    Run rej = run({"pipeline", "propR", data("propR_kappa20.json")});
    CHECK(rej.code == kExitRejected);
    auto jr = nlohmann::json::parse(rej.out);
    CHECK(jr.contains("rejected"));
    CHECK(!jr.contains("trace"));

    Run ok = run({"pipeline", "propR", data("propR.json")});
    CHECK(ok.code == kExitOk);

    Run ter = run({"pipeline", "propRter", data("propRter.json")});
    CHECK(ter.code == kExitOk);
    auto jt = nlohmann::json::parse(ter.out);
    CHECK(jt["certificate"]["S"] == "1 -20 150 -500 625");
    CHECK(jt["trace"]["stages"].size() == 8);

    CHECK(run({"pipeline", "propR", "/nonexistent.json"}).code == kExitUsage);
    CHECK(run({"pipeline", "propX", data("propR.json")}).code == kExitUsage);
}

TEST_CASE("construct subcommand") {
    Run r = run({"construct", data("construct_xi0.json")});
    CHECK(r.code == kExitOk);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["status"] == "HOLDS");
    CHECK(j["certificate"]["coefficients"] == nlohmann::json({"0", "0", "0", "0", "0", "0", "1"}));

    fs::path bad = temp_file("bad.json");
    std::ofstream(bad) << "{not json";
    CHECK(run({"construct", bad.string()}).code == kExitUsage);
    fs::remove(bad);
}

TEST_CASE("partition and gcd-translates") {
    fs::path e = temp_file("e.lat");
    std::ofstream(e) << "6\n0 0 0 0 0 0\n";
    Run r = run({"partition", e.string()});
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["verdict"]["verdict"] == "HOLDS");
    CHECK(run({"partition", e.string(), "--ell", "0"}).code == 0);
    fs::remove(e);

    Run g = run({"gcd-translates", data("g.poly"), "--scales", "1 -1"});
    CHECK(g.code == kExitUsage);  // -1 is not a positive rational
    Run g2 = run({"gcd-translates", data("f.poly"), "--scales", "2 3 5", "--ell", "0"});
    CHECK(g2.code == kExitOk);
    CHECK(nlohmann::json::parse(g2.out)["Q"] == "1");
}
