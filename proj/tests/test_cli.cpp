#include "ultrachase/cli.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace ultrachase;
namespace fs = std::filesystem;

namespace {

Json unit_omega_json() {
    return Json{{"kind", "omega"}, {"weight_exps", Json::array()}, {"tail_weight_exp", "0"}};
}

Json base_spec(Json sparse) {
    return Json{{"base", 2},
                {"domain", unit_omega_json()},
                {"codomain", unit_omega_json()},
                {"sparse", std::move(sparse)},
                {"row_tails", Json::array()}};
}

fs::path write_spec(const std::string& name, const Json& spec) {
    const fs::path path = fs::temp_directory_path() / ("ultrachase_" + name + ".json");
    std::ofstream out(path);
    out << spec.dump(2);
    return path;
}

struct RunOutput {
    int code = 0;
    std::string out;
    std::string err;
    Json report;
};

RunOutput run(std::vector<std::string> args) {
    std::ostringstream out, err;
    RunOutput result;
    result.code = cli::main_entry(args, out, err);
    result.out = out.str();
    result.err = err.str();
    if (!result.out.empty() && result.out.front() == '{') {
        result.report = Json::parse(result.out);
    }
    return result;
}

Json sparse_entry(Index j, Index i, const std::string& q) {
    return Json{{"j", j}, {"i", i}, {"value", Json::array({Json::array({q, "1"})})}};
}

} // namespace

TEST_CASE("norm command reports the exact exponent") {
    const auto path = write_spec("single", base_spec(Json::array({sparse_entry(0, 0, "-3")})));
    const RunOutput r = run({"norm", path.string()});
    CHECK(r.code == 0);
    CHECK(r.report["results"]["operator_norm"]["exp"] == "3");
    CHECK(r.report["all_pass"] == true);
    CHECK(r.err.find("elapsed_ms=") != std::string::npos);
}

TEST_CASE("reduce command matches the two-entry reduction") {
    const auto path = write_spec(
        "two", base_spec(Json::array({sparse_entry(0, 0, "-2"), sparse_entry(1, 1, "0")})));
    const RunOutput r = run({"reduce", path.string()});
    CHECK(r.code == 0);
    CHECK(r.report["results"]["j0"] == Json::array({0}));
    CHECK(r.report["results"]["norm_before"]["exp"] == "2");
    CHECK(r.report["results"]["norm_after"]["exp"] == "0");
}

TEST_CASE("chase rejects a zero operator with a validation error") {
    const auto path = write_spec("zero", base_spec(Json::array()));
    const RunOutput r = run({"chase", path.string(), "--r", "1/1"});
    CHECK(r.code == 2);
    CHECK(r.err.find("non-zero") != std::string::npos);
}

TEST_CASE("chase and ultra certify witnesses end to end") {
    const auto path = write_spec(
        "two2", base_spec(Json::array({sparse_entry(0, 0, "-2"), sparse_entry(1, 1, "0")})));
    const RunOutput chase = run({"chase", path.string(), "--r", "0"});
    CHECK(chase.code == 0);
    CHECK(chase.report["results"]["witness"]["r_prime"]["exp"] == "-1");
    CHECK(chase.report["results"]["witness"]["j0"] == Json::array({0}));

    const RunOutput ultra = run({"ultra", path.string(), "--r", "0"});
    CHECK(ultra.code == 0);
    CHECK(ultra.report["results"]["witness"]["u0"] == Json::array());
    CHECK(ultra.report["all_pass"] == true);
}

TEST_CASE("adversary command emits a verified transcript") {
    Json sparse = Json::array(
        {sparse_entry(0, 0, "-3"), sparse_entry(1, 1, "-3"), sparse_entry(2, 2, "-3")});
    const auto path = write_spec("diag3", base_spec(std::move(sparse)));
    const RunOutput r = run({"adversary", path.string(), "--r", "0", "--max-steps", "64"});
    CHECK(r.code == 0);
    CHECK(r.report["results"]["transcript"]["outcome"]["kind"] == "certified");
    CHECK(r.report["results"]["transcript"]["steps"].size() == 3);
    CHECK(r.report["results"]["verification"]["all_pass"] == true);

    const RunOutput cut = run({"adversary", path.string(), "--r", "0", "--max-steps", "0"});
    CHECK(cut.code == 1);
    CHECK(cut.report["results"]["transcript"]["outcome"]["kind"] == "exhausted");
}

TEST_CASE("ideals demos construct prime, disjoint system and ultrafilter") {
    const RunOutput r = run({"ideals", "--demo", "closure01"});
    CHECK(r.code == 0);
    CHECK(r.report["results"]["prime"] == Json::array({2}));
    CHECK(r.report["results"]["disjoint_system"] == Json::array({Json::array({2})}));
    CHECK(r.report["results"]["ultrafilter"]["generator"] == 2);

    const auto path = write_spec("ideal", Json{{"ground", 3},
                                               {"generators", Json::array({Json::array({0}),
                                                                           Json::array({1})})}});
    const RunOutput file_run = run({"ideals", path.string()});
    CHECK(file_run.code == 0);
    CHECK(file_run.report["results"]["prime"] == Json::array({2}));

    const RunOutput bad = run({"ideals", "--demo", "nope"});
    CHECK(bad.code == 2);
}

TEST_CASE("spec round-trips through its canonical form") {
    Json spec = base_spec(Json::array({sparse_entry(0, 0, "-2"), sparse_entry(1, 1, "0")}));
    spec["row_tails"] = Json::array({Json{{"j", 4},
                                          {"i_start", 2},
                                          {"lead", Json::array({Json::array({"1/2", "3"})})},
                                          {"ratio_exp", "1/2"}}});
    spec["diag_tail"] = Json{{"j_start", 5},
                             {"lead", Json::array({Json::array({"0", "1"})})},
                             {"ratio_exp", "1"}};
    spec["r"] = "1/2";
    spec["max_steps"] = 32;

    const cli::SpecFile parsed = cli::parse_spec(spec);
    const Json canonical = cli::spec_to_json(parsed);
    const cli::SpecFile reparsed = cli::parse_spec(canonical);
    CHECK(cli::spec_to_json(reparsed).dump() == canonical.dump());
    CHECK(parsed.op == reparsed.op);
}

TEST_CASE("selftest filter runs a single criterion deterministically") {
    const RunOutput a = run({"selftest", "--seed", "7", "--filter", "valuation"});
    CHECK(a.code == 0);
    CHECK(a.report["results"]["criteria"].size() == 1);
    CHECK(a.report["results"]["criteria"][0]["name"] == "valuation-laws");
    CHECK(a.report["results"]["criteria"][0]["pass"] == true);

    const RunOutput b = run({"selftest", "--seed", "7", "--filter", "valuation"});
    CHECK(a.out == b.out);

    const RunOutput ideals = run({"selftest", "--seed", "7", "--filter", "ideals"});
    CHECK(ideals.code == 0);
    CHECK(ideals.report["results"]["criteria"].size() == 1);
    CHECK(ideals.report["results"]["criteria"][0]["name"] == "ideals-analogs");
}

TEST_CASE("shipped sample specs stay runnable") {
    const std::string dir = ULTRACHASE_SPECS_DIR;
    CHECK(run({"norm", dir + "/single_entry.json"}).code == 0);
    CHECK(run({"reduce", dir + "/norm_reduction.json"}).code == 0);
    CHECK(run({"chase", dir + "/norm_reduction.json"}).code == 0); // r from the file
    CHECK(run({"norm", dir + "/mixed_tails.json"}).code == 0);
    CHECK(run({"ultra", dir + "/mixed_tails.json"}).code == 0);
    const RunOutput adv = run({"adversary", dir + "/adversary_three_steps.json"});
    CHECK(adv.code == 0);
    CHECK(adv.report["results"]["transcript"]["steps"].size() == 3);
    CHECK(run({"ideals", dir + "/ideal_closure01.json"}).code == 0);
}

TEST_CASE("malformed specs fail with diagnostics") {
    const fs::path path = fs::temp_directory_path() / "ultrachase_broken.json";
    {
        std::ofstream out(path);
        out << "{ not json";
    }
    const RunOutput r = run({"norm", path.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("error:") != std::string::npos);

    const RunOutput missing = run({"norm", (fs::temp_directory_path() / "nope.json").string()});
    CHECK(missing.code == 2);

    Json bad = base_spec(Json::array({sparse_entry(0, 0, "-3")}));
    bad["base"] = 4;
    const RunOutput composite = run({"norm", write_spec("base4", bad).string()});
    CHECK(composite.code == 2);
    CHECK(composite.err.find("prime") != std::string::npos);
}
