#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "../tools/cli_app.hpp"
#include "test_util.hpp"

using namespace qps;

namespace {

std::string data_path(const std::string& name) {
    return std::string(TEST_DATA_DIR) + "/" + name;
}

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out;
    const int code = cli::run_cli(args, out);
    return {code, out.str()};
}

void check_no_floats(const Json& j) {
    if (j.is_number_float())
        FAIL("floating-point value in CLI output: " + j.dump());
    if (j.is_object())
        for (const auto& [key, value] : j.items())
            check_no_floats(value);
    if (j.is_array())
        for (const Json& value : j)
            check_no_floats(value);
}

} // namespace

TEST_CASE("mass command emits the exact value with its factors") {
    const CliResult r = run({"mass", "--curve", data_path("p1_q2.json"), "--rank", "2"});
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.output);
    CHECK(doc["value"] == "1/3");
    CHECK(doc["factors"]["flag_factor"] == "1");
    CHECK(doc["factors"]["power_factor"] == "1/8");
    CHECK(doc["factors"]["unit_factor"] == "1");
    CHECK(doc["factors"]["zeta_factors"][0] == "8/3");
    check_no_floats(doc);
}

TEST_CASE("mass command with parabolic data") {
    const CliResult r = run({"mass", "--curve", data_path("p1_q2_s1.json"), "--rank", "2",
                             "--parabolic", data_path("full_flag_1pt.json")});
    REQUIRE(r.exit_code == 0);
    CHECK(Json::parse(r.output)["value"] == "1");
}

TEST_CASE("divisors command") {
    const CliResult r = run({"divisors", "--curve", data_path("p1_q2.json"), "--rank", "2",
                             "--precision", "3"});
    REQUIRE(r.exit_code == 0);
    const Json doc = Json::parse(r.output);
    CHECK(doc["rank"] == 2);
    CHECK(doc["counts"] == Json::array({"1", "9", "53"}));
    CHECK(doc["limit"] == "16/3");
    check_no_floats(doc);
}

TEST_CASE("zeta and limits commands") {
    const CliResult z =
        run({"zeta", "--curve", data_path("p1_q2_s2.json"), "--precision", "4"});
    REQUIRE(z.exit_code == 0);
    CHECK(Json::parse(z.output)["coefficients"] == Json::array({"1", "1", "2", "4"}));

    const CliResult l =
        run({"limits", "--curve", data_path("elliptic_q2.json"), "--rank", "2", "--n", "25"});
    REQUIRE(l.exit_code == 0);
    const Json doc = Json::parse(l.output);
    CHECK(doc["unfixed"] == "9");
    CHECK(doc["fixed_determinant"] == "3");
    check_no_floats(doc);
}

TEST_CASE("verify subcommands succeed on matching identities") {
    CHECK(run({"verify", "local", "--q", "2", "--rank", "2", "--n-max", "6"}).exit_code == 0);
    CHECK(run({"verify", "divisors", "--q", "2", "--rank", "2", "--n-max", "3",
               "--marked-points", "inf,0"})
              .exit_code == 0);
    CHECK(run({"verify", "mass", "--q", "2", "--rank", "2", "--degree", "0", "--cutoff", "12"})
              .exit_code == 0);
    CHECK(run({"verify", "parabolic", "--q", "2", "--parabolic",
               data_path("full_flag_1pt.json"), "--marked-points", "inf", "--degree", "0",
               "--cutoff", "10"})
              .exit_code == 0);
    CHECK(run({"verify", "hom", "--q", "2", "--rank", "2", "--marked-points", "inf",
               "--twists", "1,1"})
              .exit_code == 0);
    CHECK(run({"verify", "lemma22", "--q", "2", "--d-max", "3"}).exit_code == 0);
    CHECK(run({"verify", "eq8", "--q", "2", "--rank", "2", "--degree", "2",
               "--marked-points", "inf", "--parabolic", data_path("full_flag_1pt.json"),
               "--cutoff", "4"})
              .exit_code == 0);
}

TEST_CASE("verification shortfall exits with code 2") {
    // cutoff 0 omits the only bundle contributing in degree 1
    const CliResult r = run({"verify", "eq8", "--q", "2", "--rank", "2", "--degree", "1",
                             "--marked-points", "inf", "--cutoff", "0"});
    CHECK(r.exit_code == 2);
    const Json doc = Json::parse(r.output);
    CHECK(doc["match"] == false);
}

TEST_CASE("input errors exit with code 1 and a structured report") {
    const CliResult missing = run({"mass", "--curve", data_path("nope.json"), "--rank", "2"});
    CHECK(missing.exit_code == 1);
    CHECK(Json::parse(missing.output)["error"] == "IoError");

    const CliResult usage = run({"mass"});
    CHECK(usage.exit_code == 1);
    CHECK(Json::parse(usage.output)["error"] == "UsageError");

    const CliResult mismatch = run({"mass", "--curve", data_path("p1_q2.json"), "--rank", "2",
                                    "--parabolic", data_path("full_flag_1pt.json")});
    CHECK(mismatch.exit_code == 1);
    CHECK(Json::parse(mismatch.output)["error"] == "PointCountMismatch");
}

TEST_CASE("curve JSON wants exactly one description and one marked-point form") {
    CHECK(error_kind([] {
              curve_from_json(Json::parse(R"({"q":2,"genus":0,"weil_numerator":["1"],
                                              "point_counts":[]})"));
          }) == "ParseError");
    CHECK(error_kind([] {
              curve_from_json(Json::parse(R"({"q":2,"genus":0})"));
          }) == "ParseError");
    CHECK(error_kind([] {
              curve_from_json(Json::parse(R"({"q":2,"genus":0,"weil_numerator":["1"],
                                              "marked_count":1,"marked_points":["inf"]})"));
          }) == "ParseError");
    CHECK(error_kind([] {
              curve_from_json(Json::parse(R"({"q":2,"genus":0,"weil_numerator":["1"],
                                              "marked_points":["inf","inf"]})"));
          }) == "InvalidArgument");

    const CurveInput input = curve_from_json(
        Json::parse(R"({"q":2,"genus":0,"weil_numerator":["1"],"marked_points":["0","inf"]})"));
    CHECK(input.curve.marked_count == 2);
    REQUIRE(input.marked_points.size() == 2);
    CHECK(input.marked_points[1].at_infinity);
}

TEST_CASE("output is byte-identical across runs") {
    const std::vector<std::vector<std::string>> invocations = {
        {"mass", "--curve", data_path("p1_q2.json"), "--rank", "3"},
        {"divisors", "--curve", data_path("p1_q3.json"), "--rank", "2", "--precision", "5"},
        {"verify", "parabolic", "--q", "2", "--parabolic", data_path("full_flag_2pt.json"),
         "--marked-points", "inf,0", "--degree", "0", "--cutoff", "8"},
        {"verify", "lemma22", "--q", "3", "--d-max", "3"},
    };
    for (const auto& args : invocations) {
        const CliResult first = run(args);
        const CliResult second = run(args);
        CHECK(first.exit_code == second.exit_code);
        CHECK(first.output == second.output);
        check_no_floats(Json::parse(first.output));
    }
}
