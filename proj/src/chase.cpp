#include "ultrachase/chase.hpp"

#include <algorithm>

namespace ultrachase {

namespace {

void require_usable(const OperatorDesc& f, const char* who) {
    if (f.zero_flagged() || (f.sparse().empty() && f.row_tails().empty() && !f.diag_tail())) {
        throw std::invalid_argument(std::string(who) + ": f must be non-zero");
    }
}

/// Least violating column in row j, or nullopt. A position violates the
/// candidate triple when r_prime_cand * m_{j,i} > r.
std::optional<Index> least_violating_column(const OperatorDesc& f, Index j, const NormValue& r,
                                            const NormValue& r_prime_cand,
                                            const IndexSetOf& i0) {
    auto violates = [&](Index i) { return r_prime_cand * effective_entry(f, j, i) > r; };
    std::optional<Index> best;
    auto offer = [&](Index i) {
        if (!best || i < *best) best = i;
    };
    auto lo = f.sparse().lower_bound({j, 0});
    auto hi = f.sparse().lower_bound({j + 1, 0});
    for (auto it = lo; it != hi; ++it) {
        const Index i = it->first.second;
        if (!i0.count(i) && violates(i)) {
            offer(i);
            break; // ascending, so the first violating sparse column is least
        }
    }
    if (auto it = f.row_tails().find(j); it != f.row_tails().end()) {
        Index i = it->second.i_start;
        while (i0.count(i)) ++i;
        // Tail norms decay, so only the first surviving column can be the
        // least violating one.
        if (violates(i)) offer(i);
    }
    if (f.diag_tail() && j >= f.diag_tail()->j_start && !i0.count(j) && violates(j)) offer(j);
    return best;
}

std::optional<std::pair<Index, Index>> find_violation(const OperatorDesc& f, const NormValue& r,
                                                      const NormValue& r_prime_cand,
                                                      const IndexSetOf& i0,
                                                      const IndexSetOf& j0) {
    if (f.zero_flagged() || r_prime_cand.is_zero()) return std::nullopt;
    for (Index j : candidate_rows(f, j0, i0)) {
        if (j0.count(j)) continue;
        if (auto i = least_violating_column(f, j, r, r_prime_cand, i0)) return {{j, *i}};
    }
    return std::nullopt;
}

/// Single-coordinate vector at i of norm exactly target.
PVector scaled_unit(const WeightFamily& space, Index i, const NormValue& target) {
    Rational e = space.weight(i).exponent() - target.exponent();
    return PVector::unit(space, i, Scalar::power(std::move(e)));
}

IndexSetOf prefix_set(Index n) {
    IndexSetOf s;
    for (Index i = 0; i < n; ++i) s.insert(i);
    return s;
}

std::string nv_str(const NormValue& v) { return v.to_string(); }

} // namespace

bool TranscriptReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
}

std::vector<const CheckResult*> TranscriptReport::failures() const {
    std::vector<const CheckResult*> out;
    for (const auto& c : checks) {
        if (!c.pass) out.push_back(&c);
    }
    return out;
}

bool check_inclusion(const OperatorDesc& f, const NormValue& r_prime, const IndexSetOf& i0,
                     const IndexSetOf& j0, const NormValue& r) {
    if (f.zero_flagged()) return true;
    for (Index j : candidate_rows(f, j0, i0)) {
        if (j0.count(j)) continue;
        if (r_prime * row_sup(f, j, i0) > r) return false;
    }
    return true;
}

Witness chase_witness(const OperatorDesc& f, const NormValue& r) {
    require_usable(f, "chase_witness");
    if (!r.is_pos()) throw std::invalid_argument("chase_witness: r must be positive");

    const NormValue norm = operator_norm(f);
    const NormValue r_prime = norm.inverse() * r.shifted(1); // p * r / ||f||

    Witness w;
    w.r_prime = r_prime;
    if (f.domain().index_set().is_finite()) {
        w.i0 = prefix_set(f.domain().index_set().size);
    } else {
        // Rows that can beat r at radius r': those with sup above ||f||/p.
        for (Index j : rows_with_sup_above(f, norm.shifted(-1))) w.j0.insert(j);
    }
    w.certified = check_inclusion(f, w.r_prime, w.i0, w.j0, r);
    if (!w.certified) {
        throw std::logic_error("chase_witness: constructed triple failed certification");
    }
    return w;
}

UltraWitness chase_witness_ultra(const OperatorDesc& f, const NormValue& r) {
    Witness w = chase_witness(f, r);
    UltraWitness u;
    u.r_prime = w.r_prime;
    u.u0 = UltraSet::principal_image(w.i0);
    u.j0 = w.j0;
    u.certified = w.certified && region_equiv_principal(u.u0, w.i0, w.r_prime, {});
    return u;
}

NormReduction norm_reduction(const OperatorDesc& f) {
    require_usable(f, "norm_reduction");
    const NormValue before = operator_norm(f);

    // Collect every row holding a norm-achieving position. Tail suprema sit
    // at the tail starts, so the candidate positions are finite.
    NormReduction red;
    red.norm_before = before;
    for (const auto& [ji, a] : f.sparse()) {
        if (effective_entry(f, ji.first, ji.second) == before) red.j0.insert(ji.first);
    }
    for (const auto& [j, tail] : f.row_tails()) {
        if (effective_entry(f, j, tail.i_start) == before) red.j0.insert(j);
    }
    if (f.diag_tail()) {
        const Index j = f.diag_tail()->j_start;
        if (effective_entry(f, j, j) == before) red.j0.insert(j);
    }

    red.norm_after = operator_norm(restrict(f, RestrictionSpec{red.i0, red.j0}));
    if (!(red.norm_after < red.norm_before)) {
        throw std::logic_error("norm_reduction: restriction failed to reduce the norm");
    }
    return red;
}

Scalar scaling_scalar(const PVector& x, const NormValue& r_prime) {
    if (x.is_zero()) throw std::invalid_argument("scaling_scalar: x must be non-zero");
    if (!r_prime.is_pos()) throw std::invalid_argument("scaling_scalar: rPrime must be positive");
    // |t^e| * ||x|| = rPrime at e = exp(||x||) - exp(rPrime).
    return Scalar::power(x.norm().exponent() - r_prime.exponent());
}

std::optional<PVector> counterexample(const OperatorDesc& f, const NormValue& r,
                                      const NormValue& r_prime_cand, const IndexSetOf& i0,
                                      const IndexSetOf& j0) {
    auto hit = find_violation(f, r, r_prime_cand, i0, j0);
    if (!hit) return std::nullopt;
    return scaled_unit(f.domain(), hit->second, r_prime_cand);
}

Transcript adversary_run(const OperatorDesc& f, const NormValue& r, Index max_steps) {
    require_usable(f, "adversary_run");
    if (f.domain().index_set().is_finite()) {
        throw std::invalid_argument("adversary_run: requires an omega domain");
    }
    if (!r.is_pos()) throw std::invalid_argument("adversary_run: r must be positive");

    const NormValue norm = operator_norm(f);
    Transcript t;
    t.r = r;
    t.r_prime0 = norm.inverse() * r.shifted(1);

    NormValue r_prime = t.r_prime0;
    IndexSetOf blocked; // J'_n
    std::vector<PVector> images;

    for (Index n = 0;; ++n) {
        if (n >= max_steps) {
            // Representable rather than fatal: certification is guaranteed
            // for this operator family, so suites treat Exhausted as a
            // failure instead of crashing on it.
            t.outcome = TranscriptExhausted{max_steps};
            return t;
        }
        const IndexSetOf vanish = prefix_set(n);
        auto hit = find_violation(f, r, r_prime, vanish, blocked);
        if (!hit) {
            t.outcome = TranscriptCertified{n, Witness{r_prime, vanish, blocked, true}};
            return t;
        }
        const auto [j, i] = *hit;
        PVector x = scaled_unit(f.domain(), i, r_prime);
        PVector fx = apply(f, x);
        const NormValue hit_norm = fx.coord_norm(j);
        const NormValue r_prime_next = nv_min(r_prime, norm.inverse() * hit_norm);

        t.steps.push_back(TranscriptStep{n, j, std::move(x), r_prime_next, blocked});

        images.push_back(std::move(fx));
        for (const auto& [row, value] : images.back().entries()) {
            if (images.back().coord_norm(row) > r) blocked.insert(row);
        }
        r_prime = r_prime_next;
    }
}

TranscriptReport verify_transcript(const OperatorDesc& f, const NormValue& r,
                                   const Transcript& t) {
    if (!(t.r == r)) {
        throw std::invalid_argument("verify_transcript: transcript was recorded for a different r");
    }
    for (const auto& step : t.steps) {
        if (!(step.x.space() == f.domain())) {
            throw std::invalid_argument("verify_transcript: transcript vectors do not live over "
                                        "the operator's domain");
        }
    }

    TranscriptReport report;
    auto add = [&](std::string name, bool pass, std::string detail = "") {
        report.checks.push_back(CheckResult{std::move(name), pass, std::move(detail)});
    };
    auto step_name = [](const char* base, Index n) {
        return std::string(base) + "[" + std::to_string(n) + "]";
    };

    const NormValue norm = operator_norm(f);
    const Index count = static_cast<Index>(t.steps.size());
    auto r_prime_at = [&](Index n) {
        return n == 0 ? t.r_prime0 : t.steps[n - 1].r_prime_next;
    };

    std::vector<PVector> images;
    images.reserve(count);
    for (const auto& step : t.steps) images.push_back(apply(f, step.x));

    for (Index n = 0; n < count; ++n) {
        const auto& step = t.steps[n];
        add(step_name("structure", n), step.step == n,
            "recorded step index " + std::to_string(step.step));

        // (1) r'(n) > r / ||f||
        const NormValue rp = r_prime_at(n);
        add(step_name("cond1", n), rp > norm.inverse() * r,
            nv_str(rp) + " vs " + nv_str(norm.inverse() * r));
        // (2) r'(n) >= r'(n+1)
        add(step_name("cond2", n), rp >= step.r_prime_next,
            nv_str(rp) + " vs " + nv_str(step.r_prime_next));
        // (3) x(n) vanishes on omega_{<n} and has norm <= r'(n)
        add(step_name("cond3", n), in_region(step.x, ProdRegion{prefix_set(n), rp}));
        // (4) ||f(x(n))(j(n))|| >= ||f|| * r'(n+1)
        const NormValue at_j = images[n].coord_norm(step.j);
        add(step_name("cond4", n), at_j >= norm * step.r_prime_next,
            nv_str(at_j) + " vs " + nv_str(norm * step.r_prime_next));
        // (5) earlier images stay small at j(n)
        bool cond5 = true;
        for (Index h = 0; h < n && cond5; ++h) cond5 = images[h].coord_norm(step.j) <= r;
        add(step_name("cond5", n), cond5);
        // J'_n agrees with the recomputed blocked set
        IndexSetOf expected;
        for (Index h = 0; h < n; ++h) {
            for (const auto& [row, value] : images[h].entries()) {
                if (images[h].coord_norm(row) > r) expected.insert(row);
            }
        }
        add(step_name("blocked", n), step.j_blocked == expected);
        add(step_name("unblocked-j", n), !step.j_blocked.count(step.j),
            "j(n) must lie outside J'_n");
    }

    {
        bool injective = true;
        IndexSetOf seen;
        for (const auto& step : t.steps) injective = injective && seen.insert(step.j).second;
        add("j-injective", injective);
    }

    // Assemble s(i) = sum_{h <= i} x(h)(i) over everything the transcript
    // recorded, and check the witness-sum bounds of the proof.
    PVector s = PVector::zero(f.domain());
    for (Index h = 0; h < count; ++h) {
        std::map<Index, Scalar> clipped;
        for (const auto& [i, v] : t.steps[h].x.entries()) {
            if (i >= h) clipped.emplace(i, v);
        }
        s = s + PVector(f.domain(), std::move(clipped));
    }
    add("s-bound", s.norm() <= t.r_prime0,
        nv_str(s.norm()) + " vs r'(0) = " + nv_str(t.r_prime0));

    const PVector fs = apply(f, s);
    for (Index n = 0; n < count; ++n) {
        const auto& step = t.steps[n];
        PVector s_below = PVector::zero(f.domain());
        for (Index h = 0; h < n; ++h) s_below = s_below + t.steps[h].x;
        const PVector s_above = s - (s_below + step.x);

        add(step_name("s-low", n), apply(f, s_below).coord_norm(step.j) <= r);
        add(step_name("s-high", n), s_above.norm() <= step.r_prime_next,
            nv_str(s_above.norm()) + " vs " + nv_str(step.r_prime_next));

        const NormValue lhs = fs.coord_norm(step.j);
        const NormValue rhs = images[n].coord_norm(step.j);
        add(step_name("dominance", n), lhs == rhs && lhs > r,
            nv_str(lhs) + " vs " + nv_str(rhs) + ", r = " + nv_str(r));
    }

    if (const auto* c = std::get_if<TranscriptCertified>(&t.outcome)) {
        IndexSetOf final_blocked;
        for (Index h = 0; h < count; ++h) {
            for (const auto& [row, value] : images[h].entries()) {
                if (images[h].coord_norm(row) > r) final_blocked.insert(row);
            }
        }
        const bool matches_recursion = c->at_step == count &&
                                       c->witness.r_prime == r_prime_at(count) &&
                                       c->witness.i0 == prefix_set(count) &&
                                       c->witness.j0 == final_blocked;
        add("outcome-certified",
            matches_recursion && c->witness.certified &&
                check_inclusion(f, c->witness.r_prime, c->witness.i0, c->witness.j0, r) &&
                c->witness.r_prime * norm > r,
            "claimed certification at step " + std::to_string(c->at_step));
    }
    return report;
}

} // namespace ultrachase
