#include "ultrachase/chase.hpp"
#include "ultrachase/generators.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ultrachase;

namespace {

Scalar tpow(long qn, long qd = 1) { return Scalar::power(rational_of(qn, qd)); }

OperatorDesc unit_op() {
    return OperatorDesc(WeightFamily::unit_omega(), WeightFamily::unit_omega());
}

/// m_{0,0} = p^2, m_{1,1} = 1 over unit weights.
OperatorDesc two_entry_op() {
    OperatorDesc f = unit_op();
    f.add_sparse(0, 0, tpow(-2));
    f.add_sparse(1, 1, tpow(0));
    return f;
}

/// m_{j,j} = p^-j along the diagonal.
OperatorDesc diag_op() {
    OperatorDesc f = unit_op();
    f.set_diag_tail(DiagTail{0, tpow(0), rational_of(1)});
    return f;
}

const CheckResult* find_check(const TranscriptReport& report, const std::string& name) {
    for (const auto& c : report.checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

} // namespace

TEST_CASE("check_inclusion evaluates the witness inequality row by row") {
    const OperatorDesc f = two_entry_op();
    const NormValue r = NormValue::one();
    CHECK(check_inclusion(f, NormValue::pos(-1), {}, {0}, r));
    CHECK_FALSE(check_inclusion(f, NormValue::pos(-1), {}, {}, r));
    // Removing every active column kills the image at any radius.
    CHECK(check_inclusion(f, NormValue::pos(5), {0, 1}, {}, NormValue::pos(-5)));
}

TEST_CASE("chase_witness certifies the pinned triple") {
    SUBCASE("finite domains vanish entirely") {
        OperatorDesc f(WeightFamily::unit_finite(3), WeightFamily::unit_omega());
        f.add_sparse(0, 0, tpow(-2));
        const Witness w = chase_witness(f, NormValue::one());
        CHECK(w.r_prime == NormValue::pos(-1));
        CHECK(w.i0 == IndexSetOf{0, 1, 2});
        CHECK(w.j0.empty());
        CHECK(w.certified);
    }
    SUBCASE("rows above the threshold form J0") {
        const Witness w = chase_witness(two_entry_op(), NormValue::one());
        CHECK(w.r_prime == NormValue::pos(-1));
        CHECK(w.i0.empty());
        CHECK(w.j0 == IndexSetOf{0});
        CHECK(w.certified);
    }
    SUBCASE("diagonal tails contribute finitely many rows") {
        const Witness w = chase_witness(diag_op(), NormValue::one());
        // ||f|| = 1 here, so the pinned radius p * r / ||f|| is p itself;
        // anything not above r / ||f|| = 1 would not be a witness radius.
        CHECK(w.r_prime == NormValue::pos(1));
        CHECK(w.j0 == IndexSetOf{0});
        CHECK(w.certified);
        CHECK(w.r_prime * operator_norm(diag_op()) > NormValue::one());
    }
    SUBCASE("zero operators are rejected") {
        CHECK_THROWS_AS(chase_witness(unit_op(), NormValue::one()), std::invalid_argument);
        const OperatorDesc z =
            OperatorDesc::zero(WeightFamily::unit_omega(), WeightFamily::unit_omega());
        CHECK_THROWS_AS(chase_witness(z, NormValue::one()), std::invalid_argument);
    }
}

TEST_CASE("chase_witness_ultra maps the vanishing set through the embedding") {
    const UltraWitness u = chase_witness_ultra(two_entry_op(), NormValue::one());
    CHECK(u.u0.points().empty());
    CHECK(u.j0 == IndexSetOf{0});
    CHECK(u.certified);

    OperatorDesc fin(WeightFamily::unit_finite(3), WeightFamily::unit_omega());
    fin.add_sparse(0, 0, tpow(0));
    const UltraWitness uf = chase_witness_ultra(fin, NormValue::one());
    CHECK(uf.u0.points() == IndexSetOf{0, 1, 2});
    CHECK(uf.certified);

    CHECK(UltraSet::principal_image({0, 2}).points() == IndexSetOf{0, 2});

    Rng rng(404);
    std::vector<PVector> samples;
    for (int k = 0; k < 100; ++k) samples.push_back(random_vector(rng, fin.domain()));
    CHECK(region_equiv_principal(uf.u0, {0, 1, 2}, uf.r_prime, samples));
}

TEST_CASE("norm_reduction removes the norm-achieving rows and strictly shrinks") {
    SUBCASE("unique maximum") {
        const NormReduction red = norm_reduction(two_entry_op());
        CHECK(red.i0.empty());
        CHECK(red.j0 == IndexSetOf{0});
        CHECK(red.norm_before == NormValue::pos(2));
        CHECK(red.norm_after == NormValue::one());
    }
    SUBCASE("diagonal maximum sits at the start") {
        const NormReduction red = norm_reduction(diag_op());
        CHECK(red.j0 == IndexSetOf{0});
        CHECK(red.norm_before == NormValue::one());
        CHECK(red.norm_after == NormValue::pos(-1));
    }
    SUBCASE("all maxima are collected") {
        OperatorDesc f = unit_op();
        f.add_sparse(0, 0, tpow(-2));
        f.add_sparse(3, 1, tpow(-2));
        f.add_sparse(5, 2, tpow(0));
        const NormReduction red = norm_reduction(f);
        CHECK(red.j0 == IndexSetOf{0, 3});
        CHECK(red.norm_after == NormValue::one());
    }
}

TEST_CASE("scaling_scalar solves for the exact norm") {
    const WeightFamily unit = WeightFamily::unit_omega();
    const PVector x(unit, {{0, tpow(-3, 2)}});
    CHECK(x.norm() == NormValue::pos(3, 2));
    CHECK(scaling_scalar(x, NormValue::pos(1, 2)) == tpow(1));
    CHECK(scaling_scalar(x, x.norm()) == tpow(0));

    const PVector y(unit, {{4, tpow(1)}});
    CHECK(scaling_scalar(y, NormValue::pos(2)) == tpow(-3));

    CHECK_THROWS_AS(scaling_scalar(PVector::zero(unit), NormValue::one()),
                    std::invalid_argument);

    Rng rng(17);
    for (int k = 0; k < 300; ++k) {
        const PVector v = random_vector(rng, unit);
        if (v.is_zero()) continue;
        const NormValue target = random_pos_norm(rng);
        const Scalar c = scaling_scalar(v, target);
        CHECK(c.norm() * v.norm() == target);
        CHECK(v.scaled(c).norm() == target);
    }
}

TEST_CASE("counterexample returns the least violating coordinate vector") {
    OperatorDesc f = two_entry_op();
    const NormValue r = NormValue::one();

    const auto cx = counterexample(f, r, NormValue::one(), {}, {});
    REQUIRE(cx.has_value());
    CHECK(cx->coord(0) == tpow(0));
    CHECK(cx->norm() == NormValue::one());
    CHECK(apply(f, *cx).coord_norm(0) == NormValue::pos(2));
    CHECK(in_region(*cx, ProdRegion{{}, NormValue::one()}));
    CHECK_FALSE(in_region(apply(f, *cx), SumRegion{{}, r}));

    CHECK_FALSE(counterexample(f, r, NormValue::one(), {}, {0}).has_value());
    CHECK_FALSE(counterexample(f, r, NormValue::pos(9), {0, 1}, {}).has_value());
}

TEST_CASE("oracle dichotomy on random candidates") {
    Rng rng(606);
    for (int k = 0; k < 200; ++k) {
        const OperatorDesc f = random_operator(rng);
        const NormValue r = NormValue::pos(rational_of(rng.range(-3, 3)));
        const NormValue r_prime = NormValue::pos(rng.rational(-3, 3));
        IndexSetOf i0, j0;
        for (long n = rng.range(0, 3); n > 0; --n) i0.insert(static_cast<Index>(rng.range(0, 9)));
        for (long n = rng.range(0, 3); n > 0; --n) j0.insert(static_cast<Index>(rng.range(0, 9)));

        const bool included = check_inclusion(f, r_prime, i0, j0, r);
        const auto cx = counterexample(f, r, r_prime, i0, j0);
        CHECK(included == !cx.has_value());
        if (cx) {
            CHECK(in_region(*cx, ProdRegion{i0, r_prime}));
            CHECK_FALSE(in_region(apply(f, *cx), SumRegion{j0, r}));
        }
    }
}

TEST_CASE("adversary recursion replays the proof on the three-entry diagonal") {
    OperatorDesc f = unit_op();
    for (Index j = 0; j < 3; ++j) f.add_sparse(j, j, tpow(-3));
    const NormValue r = NormValue::one();

    const Transcript t = adversary_run(f, r, 64);
    CHECK(t.r_prime0 == NormValue::pos(-2));
    REQUIRE(t.steps.size() == 3);
    for (Index n = 0; n < 3; ++n) {
        const TranscriptStep& step = t.steps[n];
        CHECK(step.j == n);
        CHECK(step.x.coord(n) == tpow(2));
        CHECK(step.x.norm() == NormValue::pos(-2));
        CHECK(apply(f, step.x).coord_norm(step.j) == NormValue::pos(1));
        CHECK(step.r_prime_next == NormValue::pos(-2));
        IndexSetOf expected_blocked;
        for (Index h = 0; h < n; ++h) expected_blocked.insert(h);
        CHECK(step.j_blocked == expected_blocked);
    }
    REQUIRE(t.certified());
    const auto& cert = std::get<TranscriptCertified>(t.outcome);
    CHECK(cert.at_step == 3);
    CHECK(cert.witness.i0 == IndexSetOf{0, 1, 2});
    CHECK(cert.witness.j0 == IndexSetOf{0, 1, 2});
    CHECK(cert.witness.r_prime == NormValue::pos(-2));

    const TranscriptReport report = verify_transcript(f, r, t);
    CHECK(report.all_pass());
    const CheckResult* dom = find_check(report, "dominance[1]");
    REQUIRE(dom != nullptr);
    CHECK(dom->pass);
}

TEST_CASE("adversary handles single entries and empty budgets") {
    OperatorDesc f = unit_op();
    f.add_sparse(0, 0, tpow(0));
    const Transcript t = adversary_run(f, NormValue::one(), 64);
    CHECK(t.certified());
    CHECK(t.steps.size() == 1);
    CHECK(verify_transcript(f, NormValue::one(), t).all_pass());

    const Transcript cut = adversary_run(f, NormValue::one(), 0);
    CHECK_FALSE(cut.certified());
    CHECK(std::get<TranscriptExhausted>(cut.outcome).max_steps == 0);
    CHECK(verify_transcript(f, NormValue::one(), cut).all_pass()); // vacuous

    OperatorDesc fin(WeightFamily::unit_finite(2), WeightFamily::unit_omega());
    fin.add_sparse(0, 0, tpow(0));
    CHECK_THROWS_AS(adversary_run(fin, NormValue::one(), 8), std::invalid_argument);
}

TEST_CASE("verify_transcript flags an injected support violation") {
    OperatorDesc f = unit_op();
    for (Index j = 0; j < 3; ++j) f.add_sparse(j, j, tpow(-3));
    const NormValue r = NormValue::one();
    Transcript t = adversary_run(f, r, 64);
    REQUIRE(t.steps.size() == 3);

    // x(1) mutated to live on coordinate 0, inside the vanishing prefix.
    t.steps[1].x = PVector(f.domain(), {{0, tpow(2)}});
    const TranscriptReport report = verify_transcript(f, r, t);
    CHECK_FALSE(report.all_pass());
    const CheckResult* c3 = find_check(report, "cond3[1]");
    REQUIRE(c3 != nullptr);
    CHECK_FALSE(c3->pass);
    const CheckResult* c3_first = find_check(report, "cond3[0]");
    REQUIRE(c3_first != nullptr);
    CHECK(c3_first->pass);

    CHECK_THROWS_AS(verify_transcript(f, NormValue::pos(5), t), std::invalid_argument);
}

TEST_CASE("verify_transcript flags a broken radius update rule") {
    OperatorDesc f = unit_op();
    for (Index j = 0; j < 3; ++j) f.add_sparse(j, j, tpow(-3));
    const NormValue r = NormValue::one();
    Transcript t = adversary_run(f, r, 64);
    REQUIRE(t.steps.size() == 3);

    // As if the min rule were dropped and the radius grew back: (2) and (4)
    // break at the mutated step.
    t.steps[0].r_prime_next = NormValue::pos(4);
    const TranscriptReport report = verify_transcript(f, r, t);
    CHECK_FALSE(report.all_pass());
    const CheckResult* c2 = find_check(report, "cond2[0]");
    REQUIRE(c2 != nullptr);
    CHECK_FALSE(c2->pass);
    const CheckResult* c4 = find_check(report, "cond4[0]");
    REQUIRE(c4 != nullptr);
    CHECK_FALSE(c4->pass);
    const CheckResult* c2_next = find_check(report, "cond2[1]");
    REQUIRE(c2_next != nullptr);
    CHECK(c2_next->pass);
}

TEST_CASE("adversary terminates within the super-threshold row budget") {
    Rng rng(808);
    int ran = 0;
    while (ran < 60) {
        const OperatorDesc f = random_operator(rng);
        if (f.domain().index_set().is_finite()) continue;
        ++ran;
        const NormValue r = NormValue::pos(rational_of(rng.range(-3, 3)));
        const Transcript t = adversary_run(f, r, 256);
        CHECK(t.certified());

        IndexSetOf sparse_rows;
        for (const auto& [ji, a] : f.sparse()) sparse_rows.insert(ji.first);
        std::size_t tail_rows_above = 0;
        for (Index j : rows_with_sup_above(f, operator_norm(f).shifted(-1))) {
            if (!sparse_rows.count(j)) ++tail_rows_above;
        }
        CHECK(t.steps.size() <= sparse_rows.size() + tail_rows_above);

        CHECK(verify_transcript(f, r, t).all_pass());
    }
}

TEST_CASE("engineered operators drive full-length verified recursions") {
    Rng rng(909);
    for (int k = 0; k < 30; ++k) {
        const OperatorDesc f = random_operator_isolated_maxima(rng, 3);
        const NormValue r = NormValue::pos(rational_of(rng.range(-3, 3)));
        const Transcript t = adversary_run(f, r, 64);
        REQUIRE(t.certified());
        CHECK(t.steps.size() >= 3);
        CHECK(verify_transcript(f, r, t).all_pass());
    }
}
