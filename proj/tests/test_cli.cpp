#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "affchab/cli.hpp"
#include "affchab/error.hpp"
#include "fixtures.hpp"

using namespace affchab;
using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::string d(const std::string& name) { return fixture::path(name); }

std::vector<std::string> cubic_args(long q, bool prune) {
    std::vector<std::string> a{"bound", "--curve", d("cubic_curve.json")};
    for (long l : {7L, 3L, 5L}) a.insert(a.end(), {"--fibre", d("cubic_fibre_" + std::to_string(l) + ".json")});
    if (q != 5) a.insert(a.end(), {"--fibre", d("cubic_fibre_" + std::to_string(q) + ".json")});
    a.insert(a.end(), {"-S", std::to_string(q), "-p", "7", "--json"});
    if (prune) a.push_back("--prune");
    return a;
}

}  // namespace

TEST_CASE("bound for the quartic and sextic curves") {
    Run r = run({"bound", "--curve", d("quartic_curve.json"), "-p", "5", "--json"});
    REQUIRE(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["bound"] == 5);
    CHECK(j["method"] == "hyperelliptic");
    CHECK(j["schema_version"] == 1);
    Run sextic = run({"bound", "--curve", d("sextic_curve.json"), "-p", "7", "--json"});
    CHECK(json::parse(sextic.out)["bound"] == 6);
    Run text = run({"bound", "--curve", d("quartic_curve.json"), "-p", "5"});
    CHECK(text.out.find("5") != std::string::npos);
}

TEST_CASE("bound for the cubic curve") {
    for (long q : {2L, 5L, 11L, 13L, 19L}) {
        bool split = q % 3 == 1;
        Run pruned = run(cubic_args(q, true));
        REQUIRE(pruned.code == kExitOk);
        CHECK(json::parse(pruned.out)["bound"] == (split ? 18 : 6));
        Run plain = run(cubic_args(q, false));
        CHECK(json::parse(plain.out)["bound"] == (split ? 24 : 12));
    }
}

TEST_CASE("check-conditions") {
    Run r = run({"check-conditions", "--curve", d("zeta3_curve.json"), "--fibre", d("zeta3_fibre_1549a.json"),
                 "--fibre", d("zeta3_fibre_1549b.json"), "-p", "7", "--json"});
    REQUIRE(r.code == kExitOk);
    json j = json::parse(r.out);
    CHECK(j["all_pass"] == true);
    CHECK(j["ker_sigma_rank"] == 2);
    CHECK(j["types"][0]["condition_5_1"]["lhs"] == 4);
    CHECK(j["types"][0]["condition_5_1"]["rhs"] == 5);
    Run text = run({"check-conditions", "--curve", d("zeta3_curve.json"), "--fibre", d("zeta3_fibre_1549a.json"),
                    "--fibre", d("zeta3_fibre_1549b.json"), "-p", "7"});
    CHECK(text.out.find("4 < 5") != std::string::npos);
    Run fail = run({"check-conditions", "--curve", d("zeta3_curve.json"), "--fibre", d("zeta3_fibre_1549a.json"),
                    "--fibre", d("zeta3_fibre_1549b.json"), "-p", "7", "--rank", "99"});
    CHECK(fail.code == kExitCondition);
    CHECK(fail.out.find("FAIL") != std::string::npos);
}

TEST_CASE("strassmann exit codes") {
    std::vector<std::string> base{"strassmann", "--curve", d("zeta3_curve.json"), "--alpha", d("zeta3_alpha.json"),
                                  "-p", "7"};
    Run full = run(base);
    CHECK(full.code == kExitOk);
    CHECK(full.out.find("Exact(1)") != std::string::npos);
    auto j_args = base;
    j_args.push_back("--json");
    json j = json::parse(run(j_args).out);
    CHECK(j["total"] == 6);
    CHECK(j["bound"] == 6);
    CHECK(j["discs"].size() == 6);
    auto p3 = base;
    p3.insert(p3.end(), {"--prec", "3"});
    CHECK(run(p3).code == kExitOk);
    auto p2 = base;
    p2.insert(p2.end(), {"--prec", "2"});
    CHECK(run(p2).code == kExitInconclusive);
}

TEST_CASE("other subcommands") {
    Run c = run({"count-points", "--curve", d("quartic_curve.json"), "-p", "5", "--json"});
    REQUIRE(c.code == kExitOk);
    CHECK(json::parse(c.out)["count"] == 3);
    Run s = run({"search", "--curve", d("quartic_curve.json"), "--height", "100", "--json"});
    CHECK(json::parse(s.out)["count"] == 5);
    Run sg = run({"sigma", "--curve", d("zeta3_curve.json"), "--fibre", d("zeta3_fibre_1549a.json"), "--json"});
    REQUIRE(sg.code == kExitOk);
    json j = json::parse(sg.out);
    CHECK(j["fibres"][0]["d_transversal"] == true);
    CHECK(j["classes"].size() == 1);
}

TEST_CASE("input errors") {
    CHECK(run({"bound", "--curve", "/nonexistent.json", "-p", "5"}).code == kExitInput);
    CHECK(run({"bound"}).code == kExitInput);
    CHECK(run({"frobnicate"}).code == kExitInput);
    CHECK(run({"bound", "--curve", d("quartic_curve.json"), "-p", "5", "--fibre", d("cubic_curve.json")}).code ==
          kExitInput);
    Run bad = run({"bound", "--curve", d("quartic_curve.json"), "-p", "3"});
    CHECK(bad.code == kExitCondition);
    CHECK_FALSE(bad.err.empty());
}

TEST_CASE("curve file parsing") {
    CurveSpec s = parse_curve_file(oracle::slurp(d("quartic_curve.json")));
    REQUIRE(s.curve);
    CHECK(s.inv.genus == 1);
    CHECK(s.inv.n1 == 2);
    CHECK(s.inv.rank == 1);
    CHECK(s.has_rank);
    CurveSpec e = parse_curve_file(oracle::slurp(d("cubic_curve.json")));
    CHECK_FALSE(e.curve);
    CHECK(e.inv.n == 3);
    CHECK_THROWS_WITH_AS(parse_curve_file("{\"model\": \"external\"}"), doctest::Contains("ParseError"), Error);
    CHECK_THROWS_WITH_AS(parse_curve_file("not json"), doctest::Contains("ParseError"), Error);
}
