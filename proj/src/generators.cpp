#include "ultrachase/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace ultrachase {

std::uint64_t Rng::next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    // Rejection sampling keeps the stream unbiased.
    const std::uint64_t limit = ~0ull - (~0ull % n + 1) % n;
    std::uint64_t v = next();
    while (v > limit) v = next();
    return v % n;
}

long Rng::range(long lo, long hi) {
    if (hi < lo) throw std::invalid_argument("Rng::range: hi < lo");
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

bool Rng::chance(int percent) { return range(0, 99) < percent; }

Rational Rng::rational(long lo, long hi, long max_den) {
    return rational_of(range(lo, hi), range(1, max_den));
}

Scalar random_scalar(Rng& rng, int max_terms) {
    std::vector<Scalar::Term> terms;
    const int count = static_cast<int>(rng.range(0, max_terms));
    for (int k = 0; k < count; ++k) {
        long num = rng.range(-5, 5);
        if (num == 0) num = 1;
        terms.push_back(Scalar::Term{rng.rational(-3, 3), rational_of(num, rng.range(1, 3))});
    }
    return Scalar::from_terms(std::move(terms));
}

Scalar random_nonzero_scalar(Rng& rng, int max_terms) {
    for (;;) {
        Scalar s = random_scalar(rng, max_terms);
        if (!s.is_zero()) return s;
    }
}

NormValue random_pos_norm(Rng& rng) { return NormValue::pos(rng.rational(-3, 3)); }

WeightFamily random_weight_family(Rng& rng, bool allow_finite) {
    if (allow_finite && rng.chance(20)) {
        std::vector<NormValue> weights;
        const long n = rng.range(1, 6);
        for (long i = 0; i < n; ++i) weights.push_back(NormValue::pos(rng.rational(-2, 2)));
        return WeightFamily::finite(std::move(weights));
    }
    std::vector<NormValue> prefix;
    const long n = rng.range(0, 2);
    for (long i = 0; i < n; ++i) prefix.push_back(NormValue::pos(rng.rational(-2, 2)));
    return WeightFamily::omega(std::move(prefix), NormValue::pos(rng.rational(-2, 2)));
}

namespace {

Index random_index_in(Rng& rng, const IndexSet& set, Index cap) {
    const Index hi = set.is_finite() ? set.size - 1 : cap;
    return static_cast<Index>(rng.range(0, static_cast<long>(hi)));
}

/// Solves for the monomial exponent making the effective entry at (j, i)
/// equal to target: m = u_j |a| / w_i.
Scalar entry_with_effective_norm(Rng& rng, const OperatorDesc& f, Index j, Index i,
                                 const NormValue& target) {
    Rational e = -(target.exponent() + f.domain().weight(i).exponent() -
                   f.codomain().weight(j).exponent());
    long num = rng.range(-5, 5);
    if (num == 0) num = 1;
    return Scalar::monomial(std::move(e), rational_of(num, rng.range(1, 3)));
}

} // namespace

OperatorDesc random_operator(Rng& rng) {
    for (;;) {
        WeightFamily dom = random_weight_family(rng, true);
        WeightFamily cod = random_weight_family(rng, true);
        OperatorDesc f(dom, cod);

        const bool dom_omega = !dom.index_set().is_finite();
        const bool cod_omega = !cod.index_set().is_finite();

        if (dom_omega) {
            const long tails = rng.range(0, 2);
            for (long k = 0; k < tails; ++k) {
                const Index j = random_index_in(rng, cod.index_set(), 8);
                const Index i_start = dom.stabilized_from() + static_cast<Index>(rng.range(0, 3));
                f.set_row_tail(j, RowTail{i_start,
                                          Scalar::monomial(rng.rational(-3, 3),
                                                           rational_of(rng.range(1, 4))),
                                          rational_of(rng.range(1, 4), rng.range(1, 2))});
            }
            if (cod_omega && rng.chance(40)) {
                const Index j_start = std::max(dom.stabilized_from(), cod.stabilized_from()) +
                                      static_cast<Index>(rng.range(0, 3));
                f.set_diag_tail(DiagTail{j_start,
                                         Scalar::monomial(rng.rational(-3, 3),
                                                          rational_of(rng.range(1, 4))),
                                         rational_of(rng.range(1, 4), rng.range(1, 2))});
            }
        }

        const long entries = rng.range(1, 5);
        for (long k = 0; k < entries; ++k) {
            const Index j = random_index_in(rng, cod.index_set(), 8);
            const Index i = random_index_in(rng, dom.index_set(), 8);
            if (f.has_entry(j, i)) continue; // keep tail coverage exclusive
            f.add_sparse(j, i, random_nonzero_scalar(rng, 2));
        }

        if (f.sparse().empty() && f.row_tails().empty() && !f.diag_tail()) continue;
        if (!is_valid(f)) continue;
        return f;
    }
}

OperatorDesc random_operator_isolated_maxima(Rng& rng, int min_maxima) {
    const int count = min_maxima + static_cast<int>(rng.range(0, 3));
    const Index box = 8;

    WeightFamily dom = random_weight_family(rng, false);
    WeightFamily cod = random_weight_family(rng, false);
    OperatorDesc f(dom, cod);

    auto pick_distinct = [&](Index lo, Index hi, int n) {
        std::vector<Index> pool;
        for (Index v = lo; v < hi; ++v) pool.push_back(v);
        for (std::size_t k = pool.size(); k > 1; --k) {
            std::swap(pool[k - 1], pool[rng.below(k)]);
        }
        pool.resize(static_cast<std::size_t>(n));
        return pool;
    };
    std::vector<Index> rows = pick_distinct(0, box, count);
    // Columns start at `count` so the growing vanishing prefix of the
    // recursion never swallows a maximum before its row is reached.
    std::vector<Index> cols = pick_distinct(static_cast<Index>(count),
                                            static_cast<Index>(count) + box, count);

    const NormValue top = NormValue::pos(rng.rational(-2, 2));
    for (int k = 0; k < count; ++k) {
        f.add_sparse(rows[static_cast<std::size_t>(k)], cols[static_cast<std::size_t>(k)],
                     entry_with_effective_norm(rng, f, rows[static_cast<std::size_t>(k)],
                                               cols[static_cast<std::size_t>(k)], top));
    }

    const auto is_max_row = [&](Index j) {
        return std::find(rows.begin(), rows.end(), j) != rows.end();
    };
    auto sub_top = [&]() { return NormValue::pos(top.exponent() - rng.rational(1, 3)); };

    const Index bg_lo = box + static_cast<Index>(count);
    if (rng.chance(60)) {
        const long tails = rng.range(0, 1);
        for (long k = 0; k <= tails; ++k) {
            Index j = bg_lo + static_cast<Index>(rng.range(0, 3));
            if (is_max_row(j) || f.row_tails().count(j)) continue;
            const Index i_start = dom.stabilized_from() + static_cast<Index>(rng.range(0, 3));
            const NormValue level = sub_top();
            Rational lead_exp = -(level.exponent() + dom.weight(i_start).exponent() -
                                  cod.weight(j).exponent());
            f.set_row_tail(j, RowTail{i_start, Scalar::monomial(std::move(lead_exp),
                                                                rational_of(rng.range(1, 3))),
                                      rational_of(rng.range(1, 2))});
        }
    }
    if (rng.chance(30)) {
        const Index j_start = std::max({dom.stabilized_from(), cod.stabilized_from(),
                                        bg_lo + static_cast<Index>(rng.range(4, 6))});
        const NormValue level = sub_top();
        Rational lead_exp = -(level.exponent() + dom.weight(j_start).exponent() -
                              cod.weight(j_start).exponent());
        f.set_diag_tail(DiagTail{j_start,
                                 Scalar::monomial(std::move(lead_exp), rational_of(rng.range(1, 3))),
                                 rational_of(rng.range(1, 2))});
    }
    const long extra = rng.range(0, 3);
    for (long k = 0; k < extra; ++k) {
        const Index j = bg_lo + static_cast<Index>(rng.range(0, 3));
        const Index i = static_cast<Index>(rng.range(0, static_cast<long>(box) + count - 1));
        if (is_max_row(j) || f.has_entry(j, i)) continue;
        f.add_sparse(j, i, entry_with_effective_norm(rng, f, j, i, sub_top()));
    }

    if (!is_valid(f)) throw std::logic_error("random_operator_isolated_maxima: invalid output");
    return f;
}

PVector random_vector(Rng& rng, const WeightFamily& space, Index max_index) {
    const Index hi = space.index_set().is_finite()
                         ? space.index_set().size - 1
                         : max_index;
    std::map<Index, Scalar> entries;
    const long count = rng.range(0, 4);
    for (long k = 0; k < count; ++k) {
        entries[static_cast<Index>(rng.range(0, static_cast<long>(hi)))] = random_scalar(rng, 2);
    }
    return PVector(space, std::move(entries));
}

PVector random_vector_in_prod_region(Rng& rng, const WeightFamily& space, const IndexSetOf& i0,
                                     const NormValue& radius, Index max_index) {
    std::map<Index, Scalar> entries;
    const long count = rng.range(0, 4);
    for (long k = 0; k < count; ++k) {
        Index i = static_cast<Index>(rng.range(0, static_cast<long>(max_index)));
        if (space.index_set().is_finite()) {
            i = static_cast<Index>(rng.below(space.index_set().size));
        }
        if (i0.count(i)) continue;
        // ||x(i)|| <= radius needs exponent >= exp(w_i) - exp(radius);
        // the slack is sometimes zero, putting the coordinate on the rim.
        Rational q = space.weight(i).exponent() - radius.exponent() + rng.rational(0, 2);
        long num = rng.range(-4, 4);
        if (num == 0) num = 2;
        Scalar value = Scalar::monomial(q, rational_of(num, rng.range(1, 2)));
        if (rng.chance(30)) {
            value = value + Scalar::monomial(q + rng.rational(1, 2), rational_of(rng.range(1, 3)));
        }
        entries[i] = std::move(value);
    }
    PVector x(space, std::move(entries));
    if (!in_region(x, ProdRegion{i0, radius})) {
        throw std::logic_error("random_vector_in_prod_region: generated vector left the region");
    }
    return x;
}

ProperIdeal random_proper_ideal(Rng& rng, int ground) {
    const Mask full = full_mask(ground);
    const Mask m = static_cast<Mask>(rng.below(full)); // uniform over proper subsets
    return ProperIdeal::closure(ground, {m});
}

} // namespace ultrachase
