#include "ultrachase/selftest.hpp"

#include "ultrachase/chase.hpp"
#include "ultrachase/generators.hpp"

#include <algorithm>

namespace ultrachase {

namespace {

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t tag, std::uint64_t k) {
    Rng r(seed ^ (tag * 0xd1342543de82ef95ull) ^ (k * 0xaf251af3b0f025b5ull));
    return r.next();
}

/// Collects per-case checks for one criterion; the first failure is kept.
class Tally {
public:
    void check(bool ok, const std::string& context) {
        ++cases_;
        if (!ok && detail_.empty()) detail_ = context;
    }
    bool pass() const { return detail_.empty(); }
    std::uint64_t cases() const { return cases_; }
    const std::string& detail() const { return detail_; }

private:
    std::uint64_t cases_ = 0;
    std::string detail_;
};

std::string case_tag(const char* what, std::uint64_t k) {
    return std::string(what) + " failed at case " + std::to_string(k);
}

CriterionResult valuation_laws(std::uint64_t seed) {
    Tally t;
    for (std::uint64_t k = 0; k < 10000; ++k) {
        Rng rng(sub_seed(seed, 1, k));
        const Scalar a = random_scalar(rng);
        const Scalar b = random_scalar(rng);
        const Scalar prod = a * b;
        t.check(prod.norm() == a.norm() * b.norm(), case_tag("|ab| = |a||b|", k));
        const NormValue bound = nv_max(a.norm(), b.norm());
        const Scalar sum = a + b;
        const Scalar diff = a - b;
        t.check(sum.norm() <= bound, case_tag("|a+b| <= max(|a|,|b|)", k));
        t.check(diff.norm() <= bound, case_tag("|a-b| <= max(|a|,|b|)", k));
        if (a.norm() != b.norm()) {
            t.check(sum.norm() == bound, case_tag("isoceles equality (sum)", k));
            t.check(diff.norm() == bound, case_tag("isoceles equality (diff)", k));
        }
    }
    return {1, "valuation-laws", t.pass(), t.cases(), t.detail()};
}

CriterionResult operator_norm_attainment(std::uint64_t seed) {
    Tally t;
    for (std::uint64_t k = 0; k < 200; ++k) {
        Rng rng(sub_seed(seed, 2, k));
        const OperatorDesc f = random_operator(rng);
        const NormValue norm = operator_norm(f);

        NormValue by_probes = NormValue::zero();
        for (Index i : active_columns(f)) {
            const PVector p = probe(f, i);
            by_probes = nv_max(by_probes, apply(f, p).norm() * p.norm().inverse());
        }
        t.check(norm == by_probes, case_tag("norm equals probe maximum", k));

        for (int v = 0; v < 5; ++v) {
            const PVector x = random_vector(rng, f.domain());
            t.check(apply(f, x).norm() <= norm * x.norm(), case_tag("||f(x)|| <= ||f|| ||x||", k));
        }
    }
    return {2, "operator-norm-attainment", t.pass(), t.cases(), t.detail()};
}

CriterionResult chase_witnesses(std::uint64_t seed) {
    Tally t;
    for (std::uint64_t k = 0; k < 200; ++k) {
        Rng rng(sub_seed(seed, 3, k));
        const OperatorDesc f = random_operator(rng);
        const NormValue r = NormValue::pos(rational_of(rng.range(-3, 3)));

        const Witness w = chase_witness(f, r);
        t.check(w.certified, case_tag("witness certified", k));
        t.check(check_inclusion(f, w.r_prime, w.i0, w.j0, r), case_tag("inclusion holds", k));
        t.check(w.r_prime * operator_norm(f) > r, case_tag("r' ||f|| > r", k));

        for (int v = 0; v < 5; ++v) {
            const PVector x = random_vector_in_prod_region(rng, f.domain(), w.i0, w.r_prime);
            t.check(in_region(apply(f, x), SumRegion{w.j0, r}),
                    case_tag("image lands in the witness region", k));
        }
    }
    return {3, "chase-witnesses", t.pass(), t.cases(), t.detail()};
}

CriterionResult norm_reduction_strictness(std::uint64_t seed) {
    Tally t;
    for (std::uint64_t k = 0; k < 200; ++k) {
        // Same derivation as criterion 3, so the very same operators are
        // reduced that were chased above.
        Rng rng(sub_seed(seed, 3, k));
        const OperatorDesc f = random_operator(rng);
        const NormReduction red = norm_reduction(f);
        t.check(red.norm_after < red.norm_before, case_tag("strict reduction", k));
        t.check(red.norm_before == operator_norm(f), case_tag("before matches ||f||", k));
        t.check(red.norm_after == operator_norm(restrict(f, RestrictionSpec{red.i0, red.j0})),
                case_tag("after matches restricted norm", k));
    }
    return {4, "norm-reduction-strictness", t.pass(), t.cases(), t.detail()};
}

CriterionResult adversary_recursion(std::uint64_t seed) {
    Tally t;
    for (std::uint64_t k = 0; k < 100; ++k) {
        Rng rng(sub_seed(seed, 5, k));
        const OperatorDesc f = random_operator_isolated_maxima(rng, 3);
        const NormValue r = NormValue::pos(rational_of(rng.range(-3, 3)));

        const Transcript tr = adversary_run(f, r, 64);
        t.check(tr.certified(), case_tag("certification within budget", k));
        t.check(tr.steps.size() >= 3, case_tag("at least three recursion steps", k));

        const TranscriptReport report = verify_transcript(f, r, tr);
        std::string broken;
        for (const CheckResult* c : report.failures()) {
            broken = c->name;
            break;
        }
        t.check(report.all_pass(), case_tag(("transcript check " + broken).c_str(), k));
    }
    return {5, "adversary-recursion", t.pass(), t.cases(), t.detail()};
}

CriterionResult oracle_dichotomy(std::uint64_t seed) {
    Tally t;
    for (std::uint64_t k = 0; k < 500; ++k) {
        Rng rng(sub_seed(seed, 6, k));
        const OperatorDesc f = random_operator(rng);
        const NormValue r = NormValue::pos(rational_of(rng.range(-3, 3)));
        const NormValue r_prime = NormValue::pos(rng.rational(-3, 3));
        IndexSetOf i0, j0;
        for (long n = rng.range(0, 3); n > 0; --n) i0.insert(static_cast<Index>(rng.range(0, 9)));
        for (long n = rng.range(0, 3); n > 0; --n) j0.insert(static_cast<Index>(rng.range(0, 9)));

        const bool included = check_inclusion(f, r_prime, i0, j0, r);
        const auto cx = counterexample(f, r, r_prime, i0, j0);
        t.check(included == !cx.has_value(), case_tag("exactly one oracle fires", k));
        if (cx) {
            t.check(in_region(*cx, ProdRegion{i0, r_prime}),
                    case_tag("counterexample lies in the domain region", k));
            t.check(!in_region(apply(f, *cx), SumRegion{j0, r}),
                    case_tag("counterexample image escapes the codomain region", k));
        }
    }
    return {6, "oracle-dichotomy", t.pass(), t.cases(), t.detail()};
}

void exercise_ideal(Tally& t, const ProperIdeal& ideal, const std::string& context) {
    const std::vector<Mask> brute = prime_set_bruteforce(ideal);
    const std::vector<Mask> split = prime_set_by_splitting(ideal);
    t.check(brute == split, context + ": splitting route disagrees with brute force");
    t.check(!brute.empty() && find_prime(ideal) == brute.front(),
            context + ": find_prime is not the least prime");
    t.check(std::binary_search(brute.begin(), brute.end(), find_prime_descent(ideal)),
            context + ": descent did not land on a prime");

    std::string why;
    t.check(check_disjoint_system(ideal, max_disjoint_system(ideal), &why),
            context + ": disjoint system: " + why);

    const Mask full = full_mask(ideal.ground());
    for (Mask m = 0; m <= full; ++m) {
        const bool ultra = is_ultrafilter(ideal.ground(), filter_family(ideal, m));
        t.check(ultra == is_prime(ideal, m),
                context + ": ultra dichotomy mismatch at M = " + mask_to_string(m));
    }
    for (Mask m : brute) {
        const UltrafilterResult uf = ultrafilter_from_prime(ideal, m);
        t.check(uf.generator >= 0 && (m & (1u << uf.generator)) != 0,
                context + ": generator outside M = " + mask_to_string(m));
    }
}

CriterionResult ideal_analogs(std::uint64_t seed) {
    Tally t;
    for (int n = 1; n <= 4; ++n) {
        // Exhaustive: on a finite ground set every proper ideal is the
        // power set of a proper subset.
        const Mask full = full_mask(n);
        for (Mask m = 0; m < full; ++m) {
            exercise_ideal(t, ProperIdeal::closure(n, {m}),
                           "n=" + std::to_string(n) + " M=" + mask_to_string(m));
        }
    }
    for (int n = 5; n <= 6; ++n) {
        for (std::uint64_t k = 0; k < 100; ++k) {
            Rng rng(sub_seed(seed, 7, (static_cast<std::uint64_t>(n) << 32) | k));
            exercise_ideal(t, random_proper_ideal(rng, n),
                           "n=" + std::to_string(n) + " case " + std::to_string(k));
        }
    }
    for (int n = 1; n <= 3; ++n) {
        const DEmptyCertificate cert = finite_D_empty(n);
        t.check(cert.by_enumeration && cert.families_checked == (1ull << (1u << n)),
                "finite_D_empty enumeration incomplete at n=" + std::to_string(n));
    }
    return {7, "ideals-analogs", t.pass(), t.cases(), t.detail()};
}

CriterionResult principal_equivalence(std::uint64_t seed) {
    Tally t;
    for (std::uint64_t k = 0; k < 100; ++k) {
        Rng rng(sub_seed(seed, 8, k));
        IndexSetOf i0;
        for (long n = rng.range(0, 4); n > 0; --n) i0.insert(static_cast<Index>(rng.range(0, 8)));
        const NormValue radius = random_pos_norm(rng);
        const WeightFamily space = random_weight_family(rng, false);
        std::vector<PVector> samples;
        for (int v = 0; v < 100; ++v) samples.push_back(random_vector(rng, space));
        t.check(region_equiv_principal(UltraSet::principal_image(i0), i0, radius, samples),
                case_tag("principal region equivalence", k));

        const OperatorDesc f = random_operator(rng);
        const NormValue r = NormValue::pos(rational_of(rng.range(-3, 3)));
        const UltraWitness u = chase_witness_ultra(f, r);
        t.check(u.certified, case_tag("ultra witness certified", k));
        t.check(check_inclusion(f, u.r_prime, u.u0.points(), u.j0, r),
                case_tag("ultra witness maps back to a certified witness", k));
    }
    return {8, "principal-equivalence", t.pass(), t.cases(), t.detail()};
}

std::vector<CriterionResult> run_criteria(const SelftestOptions& options, bool with_determinism);

CriterionResult determinism(const SelftestOptions& options) {
    SelftestOptions inner = options;
    const std::string a = to_json(run_criteria(inner, false)).dump(2);
    const std::string b = to_json(run_criteria(inner, false)).dump(2);
    CriterionResult r{9, "determinism", a == b, 1, ""};
    if (!r.pass) r.detail = "rerun with the same seed produced a different report";
    return r;
}

std::vector<CriterionResult> run_criteria(const SelftestOptions& options, bool with_determinism) {
    std::vector<CriterionResult> out;
    auto want = [&](const std::string& name) {
        return options.filter.empty() || name.find(options.filter) != std::string::npos;
    };
    if (want("valuation-laws")) out.push_back(valuation_laws(options.seed));
    if (want("operator-norm-attainment")) out.push_back(operator_norm_attainment(options.seed));
    if (want("chase-witnesses")) out.push_back(chase_witnesses(options.seed));
    if (want("norm-reduction-strictness")) out.push_back(norm_reduction_strictness(options.seed));
    if (want("adversary-recursion")) out.push_back(adversary_recursion(options.seed));
    if (want("oracle-dichotomy")) out.push_back(oracle_dichotomy(options.seed));
    if (want("ideals-analogs")) out.push_back(ideal_analogs(options.seed));
    if (want("principal-equivalence")) out.push_back(principal_equivalence(options.seed));
    if (with_determinism && want("determinism")) out.push_back(determinism(options));
    return out;
}

} // namespace

std::vector<CriterionResult> run_selftest(const SelftestOptions& options) {
    return run_criteria(options, true);
}

Json to_json(const std::vector<CriterionResult>& results) {
    Json j = Json::array();
    for (const auto& r : results) {
        Json e{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"cases", r.cases}};
        if (!r.detail.empty()) e["detail"] = r.detail;
        j.push_back(std::move(e));
    }
    return j;
}

} // namespace ultrachase
