#include "ultrachase/generators.hpp"
#include "ultrachase/operators.hpp"

#include <doctest.h>

#include <algorithm>

using namespace ultrachase;

namespace {

Scalar tpow(long qn, long qd = 1) { return Scalar::power(rational_of(qn, qd)); }

OperatorDesc unit_op() {
    return OperatorDesc(WeightFamily::unit_omega(), WeightFamily::unit_omega());
}

bool has_violation(const std::vector<std::string>& violations, const std::string& needle) {
    return std::any_of(violations.begin(), violations.end(), [&](const std::string& v) {
        return v.find(needle) != std::string::npos;
    });
}

} // namespace

TEST_CASE("validate accepts a single sparse entry and reports breaches by field") {
    OperatorDesc ok = unit_op();
    ok.add_sparse(0, 0, tpow(0));
    CHECK(validate(ok).empty());

    OperatorDesc flat = unit_op();
    flat.set_row_tail(1, RowTail{0, tpow(0), rational_of(0)});
    CHECK(has_violation(validate(flat), "non-decaying"));

    OperatorDesc overlapping = unit_op();
    overlapping.set_diag_tail(DiagTail{3, tpow(0), rational_of(1)});
    overlapping.add_sparse(5, 5, tpow(0));
    CHECK(has_violation(validate(overlapping), "overlap"));

    OperatorDesc empty = unit_op();
    CHECK(has_violation(validate(empty), "non-zero"));

    OperatorDesc finite_tail(WeightFamily::unit_finite(3), WeightFamily::unit_omega());
    finite_tail.set_row_tail(0, RowTail{0, tpow(0), rational_of(1)});
    CHECK(has_violation(validate(finite_tail), "omega domain"));

    OperatorDesc early(WeightFamily::omega({NormValue::pos(1)}, NormValue::one()),
                       WeightFamily::unit_omega());
    early.set_row_tail(0, RowTail{0, tpow(0), rational_of(1)});
    CHECK(has_violation(validate(early), "stabilize"));
}

TEST_CASE("effective entries combine the weights with the entry norm") {
    // a_{1,2} = t^-2 with w_2 = p, u_1 = p^-1: m = p^-1 * p^2 * p^-1 = 1
    OperatorDesc f(WeightFamily::omega({NormValue::one(), NormValue::one(), NormValue::pos(1)},
                                       NormValue::one()),
                   WeightFamily::omega({NormValue::one(), NormValue::pos(-1)}, NormValue::one()));
    f.add_sparse(1, 2, tpow(-2));
    CHECK(effective_entry(f, 1, 2) == NormValue::one());
    CHECK(effective_entry(f, 0, 0).is_zero());

    OperatorDesc diag = unit_op();
    diag.set_diag_tail(DiagTail{0, tpow(0), rational_of(1)});
    for (Index j = 0; j < 6; ++j) {
        CHECK(effective_entry(diag, j, j) == NormValue::pos(-static_cast<long>(j)));
    }
}

TEST_CASE("apply acts exactly on finitely supported vectors") {
    OperatorDesc f = unit_op();
    f.add_sparse(0, 0, tpow(-1));
    f.add_sparse(0, 1, tpow(0));
    const PVector x(f.domain(), {{0, tpow(0)}, {1, tpow(0)}});
    const PVector fx = apply(f, x);
    CHECK(fx.coord(0) == tpow(-1) + tpow(0));
    CHECK(fx.norm() == NormValue::pos(1));

    OperatorDesc g = unit_op();
    g.add_sparse(0, 0, tpow(0));
    g.add_sparse(0, 1, Scalar::monomial(rational_of(0), rational_of(-1)));
    CHECK(apply(g, x).is_zero());

    CHECK(apply(f, PVector::zero(f.domain())).is_zero());

    CHECK_THROWS_AS(apply(f, PVector::zero(WeightFamily::unit_finite(2))),
                    std::invalid_argument);
}

TEST_CASE("operator norm is the max effective entry and is attained by probes") {
    OperatorDesc f = unit_op();
    f.add_sparse(0, 0, tpow(-1));
    f.add_sparse(1, 2, tpow(-1));
    CHECK(operator_norm(f) == NormValue::pos(1));
    NormValue by_probes = NormValue::zero();
    for (Index i : active_columns(f)) {
        const PVector p = probe(f, i);
        by_probes = nv_max(by_probes, apply(f, p).norm() * p.norm().inverse());
    }
    CHECK(by_probes == operator_norm(f));

    OperatorDesc diag = unit_op();
    diag.set_diag_tail(DiagTail{0, tpow(0), rational_of(1)});
    CHECK(operator_norm(diag) == NormValue::one());

    OperatorDesc single = unit_op();
    single.add_sparse(0, 0, tpow(-3));
    CHECK(operator_norm(single) == NormValue::pos(3));
}

TEST_CASE("probes are unit vectors realizing the column supremum") {
    OperatorDesc f(WeightFamily::omega({NormValue::one(), NormValue::one(), NormValue::pos(1)},
                                       NormValue::one()),
                   WeightFamily::unit_omega());
    f.add_sparse(0, 2, tpow(-2));
    const PVector p2 = probe(f, 2);
    CHECK(p2.coord(2) == tpow(1));
    CHECK(p2.norm() == NormValue::one());

    OperatorDesc g = unit_op();
    g.add_sparse(0, 4, tpow(-2));
    g.add_sparse(3, 4, tpow(-1));
    const PVector p4 = probe(g, 4);
    CHECK(p4.coord(4) == tpow(0));
    CHECK(apply(g, p4).norm() == NormValue::pos(2));

    CHECK_THROWS_AS(probe(g, 5), std::invalid_argument);
}

TEST_CASE("restriction projects rows and columns and clips tails") {
    OperatorDesc f = unit_op();
    f.add_sparse(0, 0, tpow(0));
    f.add_sparse(0, 1, tpow(1));
    f.add_sparse(1, 0, tpow(2));

    const OperatorDesc no_row0 = restrict(f, {{}, {0}});
    CHECK(no_row0.sparse().size() == 1);
    CHECK(no_row0.sparse().count({1, 0}) == 1);

    CHECK(restrict(f, {{}, {}}) == f);

    const OperatorDesc nothing = restrict(f, {{}, {0, 1}});
    CHECK(nothing.zero_flagged());
    CHECK(operator_norm(nothing).is_zero());
    CHECK(validate(nothing).empty());

    // Clipping a tail around removed interior columns re-expresses the
    // survivors as sparse entries and restarts the tail after the last cut.
    OperatorDesc tailed = unit_op();
    tailed.set_row_tail(0, RowTail{2, tpow(0), rational_of(1, 2)});
    const OperatorDesc clipped = restrict(tailed, {{3, 5}, {}});
    CHECK(validate(clipped).empty());
    for (Index i = 0; i < 10; ++i) {
        if (i == 3 || i == 5) {
            CHECK_FALSE(clipped.has_entry(0, i));
        } else {
            CHECK(clipped.entry(0, i) == tailed.entry(0, i));
        }
    }

    OperatorDesc diag = unit_op();
    diag.set_diag_tail(DiagTail{0, tpow(0), rational_of(1)});
    const OperatorDesc cut = restrict(diag, {{}, {0}});
    CHECK(validate(cut).empty());
    CHECK_FALSE(cut.has_entry(0, 0));
    CHECK(operator_norm(cut) == NormValue::pos(-1));
}

TEST_CASE("restriction never increases the norm") {
    Rng rng(5150);
    for (int k = 0; k < 200; ++k) {
        const OperatorDesc f = random_operator(rng);
        IndexSetOf i0, j0;
        for (long n = rng.range(0, 3); n > 0; --n) i0.insert(static_cast<Index>(rng.range(0, 9)));
        for (long n = rng.range(0, 3); n > 0; --n) j0.insert(static_cast<Index>(rng.range(0, 9)));
        const OperatorDesc g = restrict(f, {i0, j0});
        CHECK(validate(g).empty());
        CHECK(operator_norm(g) <= operator_norm(f));
        // Restriction must agree with the original entry by entry.
        for (Index j = 0; j < 14; ++j) {
            for (Index i = 0; i < 14; ++i) {
                if (!f.domain().index_set().contains(i)) continue;
                if (!f.codomain().index_set().contains(j)) continue;
                if (i0.count(i) || j0.count(j)) {
                    CHECK_FALSE(g.has_entry(j, i));
                } else {
                    CHECK(g.entry(j, i) == f.entry(j, i));
                }
            }
        }
    }
}

TEST_CASE("apply is linear and bounded by the operator norm") {
    Rng rng(31337);
    for (int k = 0; k < 200; ++k) {
        const OperatorDesc f = random_operator(rng);
        const PVector x = random_vector(rng, f.domain());
        const PVector y = random_vector(rng, f.domain());
        const Scalar a = random_scalar(rng, 2);
        const Scalar b = random_scalar(rng, 2);

        const PVector lhs = apply(f, x.scaled(a) + y.scaled(b));
        const PVector rhs = apply(f, x).scaled(a) + apply(f, y).scaled(b);
        CHECK(lhs == rhs);

        CHECK(apply(f, x).norm() <= operator_norm(f) * x.norm());
    }
}
