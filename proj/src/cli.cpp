#include "ultrachase/cli.hpp"

#include "ultrachase/chase.hpp"
#include "ultrachase/generators.hpp"
#include "ultrachase/selftest.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace ultrachase::cli {

namespace {

bool is_prime_number(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d) {
        if (p % d == 0) return false;
    }
    return true;
}

Json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open spec file '" + path + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError("spec file '" + path + "': " + e.what());
    }
    return j;
}

struct Report {
    Json body;
    bool all_pass = true;

    Report(const std::string& command, int base, const std::string& input_digest) {
        body["command"] = command;
        body["base"] = base;
        body["input_digest"] = input_digest;
        body["results"] = Json::object();
        body["checks"] = Json::array();
    }

    void result(const std::string& key, Json value) { body["results"][key] = std::move(value); }

    void check(const std::string& name, bool pass, const std::string& detail = "") {
        Json c{{"name", name}, {"pass", pass}};
        if (!detail.empty()) c["detail"] = detail;
        body["checks"].push_back(std::move(c));
        all_pass = all_pass && pass;
    }

    int emit(std::ostream& out, const std::optional<std::string>& out_path) {
        body["all_pass"] = all_pass;
        const std::string text = body.dump(2) + "\n";
        out << text;
        if (out_path) {
            std::ofstream file(*out_path);
            if (!file) throw std::runtime_error("cannot write report to '" + *out_path + "'");
            file << text;
        }
        return all_pass ? 0 : 1;
    }
};

/// The operator commands share the load/validate/parameter plumbing.
struct OperatorProblem {
    SpecFile spec;
    std::string input_digest;
    NormValue r;

    OperatorProblem(const std::string& path, const std::optional<std::string>& r_flag,
                    std::optional<int> base_flag, bool needs_r)
        : spec(parse_spec(load_json(path))) {
        input_digest = digest(spec_to_json(spec).dump());
        if (base_flag) spec.base = *base_flag;
        if (!is_prime_number(spec.base)) {
            throw ParseError("base " + std::to_string(spec.base) + " is not a prime");
        }
        if (r_flag) spec.r_exp = parse_rational(*r_flag);
        if (needs_r) {
            if (!spec.r_exp) throw ParseError("command needs --r (or an \"r\" field in the spec)");
            r = NormValue::pos(*spec.r_exp);
        }
        const auto violations = validate(spec.op);
        if (!violations.empty()) {
            std::string msg = "operator validation failed:";
            for (const auto& v : violations) msg += "\n  " + v;
            throw ParseError(msg);
        }
    }
};

void attach_witness_checks(Report& report, const OperatorDesc& f, const NormValue& r,
                           const NormValue& r_prime, const IndexSetOf& i0, const IndexSetOf& j0,
                           bool certified) {
    report.check("witness-certified", certified);
    report.check("inclusion-holds", check_inclusion(f, r_prime, i0, j0, r));
    report.check("radius-exceeds-bound", r_prime * operator_norm(f) > r,
                 "needs r' ||f|| > r exactly");
}

int cmd_norm(const OperatorProblem& p, Report& report, const std::optional<std::string>& out_path,
             std::ostream& out) {
    const NormValue norm = operator_norm(p.spec.op);
    NormValue by_probes = NormValue::zero();
    const auto cols = active_columns(p.spec.op);
    for (Index i : cols) {
        const PVector probe_vec = probe(p.spec.op, i);
        by_probes = nv_max(by_probes, apply(p.spec.op, probe_vec).norm() *
                                          probe_vec.norm().inverse());
    }
    report.result("operator_norm", to_json(norm));
    report.result("probe_oracle", to_json(by_probes));
    report.result("probe_columns", static_cast<std::uint64_t>(cols.size()));
    report.check("norm-attained-by-probes", norm == by_probes);
    return report.emit(out, out_path);
}

int cmd_chase(const OperatorProblem& p, Report& report, const std::optional<std::string>& out_path,
              std::ostream& out) {
    const Witness w = chase_witness(p.spec.op, p.r);
    report.result("witness", to_json(w));
    attach_witness_checks(report, p.spec.op, p.r, w.r_prime, w.i0, w.j0, w.certified);
    return report.emit(out, out_path);
}

int cmd_ultra(const OperatorProblem& p, Report& report, std::uint64_t seed,
              const std::optional<std::string>& out_path, std::ostream& out) {
    const UltraWitness u = chase_witness_ultra(p.spec.op, p.r);
    report.result("witness", to_json(u));
    attach_witness_checks(report, p.spec.op, p.r, u.r_prime, u.u0.points(), u.j0, u.certified);

    Rng rng(seed);
    std::vector<PVector> samples;
    for (int k = 0; k < 50; ++k) samples.push_back(random_vector(rng, p.spec.op.domain()));
    report.check("principal-region-equivalence",
                 region_equiv_principal(u.u0, u.u0.points(), u.r_prime, samples),
                 "symbolic normal form plus 50 sampled vectors");
    return report.emit(out, out_path);
}

int cmd_reduce(const OperatorProblem& p, Report& report, const std::optional<std::string>& out_path,
               std::ostream& out) {
    const NormReduction red = norm_reduction(p.spec.op);
    report.result("i0", to_json(red.i0));
    report.result("j0", to_json(red.j0));
    report.result("norm_before", to_json(red.norm_before));
    report.result("norm_after", to_json(red.norm_after));
    report.check("strict-reduction", red.norm_after < red.norm_before);
    return report.emit(out, out_path);
}

int cmd_adversary(const OperatorProblem& p, Report& report, Index max_steps,
                  const std::optional<std::string>& out_path, std::ostream& out) {
    const Transcript t = adversary_run(p.spec.op, p.r, max_steps);
    report.result("transcript", to_json(t));
    report.check("certified-within-budget", t.certified(),
                 t.certified() ? "" : "budget " + std::to_string(max_steps) + " exhausted");
    const TranscriptReport verdict = verify_transcript(p.spec.op, p.r, t);
    report.result("verification", to_json(verdict));
    std::string first_failure;
    for (const CheckResult* c : verdict.failures()) {
        first_failure = c->name;
        break;
    }
    report.check("transcript-verifies", verdict.all_pass(), first_failure);
    return report.emit(out, out_path);
}

int cmd_ideals(const std::optional<std::string>& path, const std::string& demo, Report& report,
               const std::optional<std::string>& out_path, std::ostream& out) {
    std::optional<ProperIdeal> ideal;
    if (path) {
        const IdealSpec spec = parse_ideal_spec(load_json(*path));
        ideal = ProperIdeal::closure(spec.ground, spec.generators);
    } else if (demo == "closure01") {
        ideal = ProperIdeal::closure(3, {0b001, 0b010});
    } else if (demo == "singleton") {
        ideal = ProperIdeal::closure(1, {});
    } else if (demo == "coatom4") {
        ideal = ProperIdeal::closure(4, {0b0111});
    } else {
        throw ParseError("unknown --demo '" + demo +
                         "' (available: closure01, singleton, coatom4) and no spec file given");
    }

    Json members = Json::array();
    for (Mask m : ideal->members()) members.push_back(mask_to_json(m));
    report.result("ground", ideal->ground());
    report.result("members", std::move(members));

    const Mask prime = find_prime(*ideal);
    const Mask descent = find_prime_descent(*ideal);
    report.result("prime", mask_to_json(prime));
    report.result("prime_by_descent", mask_to_json(descent));
    report.check("least-prime-valid", is_prime(*ideal, prime));
    report.check("descent-reaches-a-prime", is_prime(*ideal, descent));

    const std::vector<Mask> u0 = max_disjoint_system(*ideal);
    Json u0_json = Json::array();
    for (Mask m : u0) u0_json.push_back(mask_to_json(m));
    report.result("disjoint_system", std::move(u0_json));
    std::string why;
    report.check("disjoint-system-maximal", check_disjoint_system(*ideal, u0, &why), why);

    const UltrafilterResult uf = ultrafilter_from_prime(*ideal, prime);
    Json family = Json::array();
    for (Mask m : uf.family) family.push_back(mask_to_json(m));
    report.result("ultrafilter",
                  Json{{"generator", uf.generator}, {"family", std::move(family)}});
    report.check("ultrafilter-dichotomy", is_ultrafilter(ideal->ground(), uf.family));
    return report.emit(out, out_path);
}

int cmd_selftest(std::uint64_t seed, const std::string& filter, Report& report,
                 const std::optional<std::string>& out_path, std::ostream& out) {
    const auto results = run_selftest(SelftestOptions{seed, filter});
    report.result("seed", seed);
    report.result("filter", filter);
    report.result("criteria", to_json(results));
    std::uint64_t total_cases = 0;
    for (const auto& r : results) {
        report.check("criterion-" + std::to_string(r.id) + "-" + r.name, r.pass, r.detail);
        total_cases += r.cases;
    }
    report.result("total_cases", total_cases);
    return report.emit(out, out_path);
}

} // namespace

SpecFile parse_spec(const Json& j) {
    int base = 2;
    if (j.contains("base")) {
        if (!j.at("base").is_number_integer()) throw ParseError("spec.base: must be an integer");
        base = j.at("base").get<int>();
    }
    OperatorDesc op = operator_from_json(j, "spec");
    std::optional<Rational> r_exp;
    if (j.contains("r")) {
        if (!j.at("r").is_string()) throw ParseError("spec.r: must be a rational string");
        r_exp = parse_rational(j.at("r").get<std::string>());
    }
    std::optional<Index> max_steps;
    if (j.contains("max_steps")) {
        const Json& v = j.at("max_steps");
        if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
            throw ParseError("spec.max_steps: must be a non-negative integer");
        }
        max_steps = v.get<Index>();
    }
    return SpecFile{base, std::move(op), std::move(r_exp), max_steps};
}

Json spec_to_json(const SpecFile& spec) {
    Json j;
    j["base"] = spec.base;
    Json op = to_json(spec.op);
    for (auto& [key, value] : op.items()) j[key] = value;
    if (spec.r_exp) j["r"] = to_string(*spec.r_exp);
    if (spec.max_steps) j["max_steps"] = *spec.max_steps;
    return j;
}

IdealSpec parse_ideal_spec(const Json& j) {
    if (!j.is_object() || !j.contains("ground") || !j.at("ground").is_number_integer()) {
        throw ParseError("ideal spec: needs an integer 'ground'");
    }
    IdealSpec spec;
    spec.ground = j.at("ground").get<int>();
    if (j.contains("generators")) {
        if (!j.at("generators").is_array()) throw ParseError("ideal spec: 'generators' must be an array");
        for (const auto& g : j.at("generators")) {
            if (!g.is_array()) throw ParseError("ideal spec: each generator is an element array");
            Mask m = 0;
            for (const auto& e : g) {
                if (!e.is_number_integer() || e.get<int>() < 0 || e.get<int>() >= spec.ground) {
                    throw ParseError("ideal spec: generator element out of range");
                }
                m |= 1u << e.get<int>();
            }
            spec.generators.push_back(m);
        }
    }
    return spec;
}

std::string digest(const std::string& payload) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : payload) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    std::ostringstream os;
    os << "fnv1a:" << std::hex << h;
    return os.str();
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact-arithmetic toolkit for ultrametric product-to-sum operator analysis"};
    app.require_subcommand(1);

    std::string spec_path;
    std::optional<std::string> r_flag;
    std::optional<int> base_flag;
    std::optional<std::string> out_path;
    Index max_steps = 64;
    std::uint64_t seed = 7;
    std::string filter;
    std::string demo;
    std::optional<std::string> ideal_path;

    auto add_operator_command = [&](const std::string& name, const std::string& help,
                                    bool takes_r) {
        CLI::App* cmd = app.add_subcommand(name, help);
        cmd->add_option("spec", spec_path, "operator spec file (JSON)")->required();
        if (takes_r) cmd->add_option("--r", r_flag, "radius exponent, p^<num/den>");
        cmd->add_option("--base", base_flag, "override the base prime");
        cmd->add_option("--out", out_path, "also write the report to this path");
        return cmd;
    };

    add_operator_command("norm", "operator norm with probe verification", false);
    add_operator_command("chase", "certified witness triple (r', I0, J0)", true);
    CLI::App* ultra_cmd = add_operator_command("ultra", "witness with I0 as principal "
                                                        "ultrafilters", true);
    ultra_cmd->add_option("--seed", seed, "sample seed for the equivalence check");
    add_operator_command("reduce", "strict norm reduction (I0, J0)", false);
    CLI::App* adversary_cmd =
        add_operator_command("adversary", "adversarial recursion transcript + verification", true);
    adversary_cmd->add_option("--max-steps", max_steps, "recursion budget");

    CLI::App* ideals_cmd = app.add_subcommand("ideals", "prime element, disjoint system and "
                                                        "ultrafilter of a finite proper ideal");
    ideals_cmd->add_option("spec", ideal_path, "ideal spec file (JSON)");
    ideals_cmd->add_option("--demo", demo, "built-in ideal: closure01, singleton, coatom4");
    ideals_cmd->add_option("--out", out_path, "also write the report to this path");

    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the full property suite");
    selftest_cmd->add_option("--seed", seed, "deterministic seed");
    selftest_cmd->add_option("--filter", filter, "run only criteria whose name contains this");
    selftest_cmd->add_option("--out", out_path, "also write the report to this path");

    std::vector<std::string> argv_copy = args;
    try {
        std::vector<const char*> argv;
        argv.push_back("ultrachase");
        for (const auto& a : argv_copy) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? 0 : 2;
    }

    const auto started = std::chrono::steady_clock::now();
    int code = 2;
    try {
        if (app.got_subcommand("norm")) {
            OperatorProblem p(spec_path, r_flag, base_flag, false);
            Report report("norm", p.spec.base, p.input_digest);
            code = cmd_norm(p, report, out_path, out);
        } else if (app.got_subcommand("chase")) {
            OperatorProblem p(spec_path, r_flag, base_flag, true);
            Report report("chase", p.spec.base, p.input_digest);
            code = cmd_chase(p, report, out_path, out);
        } else if (app.got_subcommand("ultra")) {
            OperatorProblem p(spec_path, r_flag, base_flag, true);
            Report report("ultra", p.spec.base, p.input_digest);
            code = cmd_ultra(p, report, seed, out_path, out);
        } else if (app.got_subcommand("reduce")) {
            OperatorProblem p(spec_path, r_flag, base_flag, false);
            Report report("reduce", p.spec.base, p.input_digest);
            code = cmd_reduce(p, report, out_path, out);
        } else if (app.got_subcommand("adversary")) {
            OperatorProblem p(spec_path, r_flag, base_flag, true);
            if (p.spec.max_steps && adversary_cmd->count("--max-steps") == 0) {
                max_steps = *p.spec.max_steps;
            }
            Report report("adversary", p.spec.base, p.input_digest);
            code = cmd_adversary(p, report, max_steps, out_path, out);
        } else if (app.got_subcommand("ideals")) {
            const std::string input = ideal_path ? *ideal_path : ("demo:" + demo);
            Report report("ideals", 2, digest(input));
            code = cmd_ideals(ideal_path, demo, report, out_path, out);
        } else if (app.got_subcommand("selftest")) {
            Report report("selftest", 2,
                          digest("selftest:" + std::to_string(seed) + ":" + filter));
            code = cmd_selftest(seed, filter, report, out_path, out);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - started);
    // Wall time goes to stderr so reports stay byte-identical across runs.
    err << "elapsed_ms=" << elapsed.count() << "\n";
    return code;
}

} // namespace ultrachase::cli
