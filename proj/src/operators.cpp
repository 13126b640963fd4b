#include "ultrachase/operators.hpp"

#include <algorithm>
#include <sstream>

namespace ultrachase {

namespace {

std::string pos_str(Index j, Index i) {
    std::ostringstream os;
    os << "(" << j << "," << i << ")";
    return os.str();
}

Scalar tail_value(const Scalar& lead, const Rational& ratio_exp, Index start, Index at) {
    const auto& t = lead.terms().front();
    Rational q = t.q + ratio_exp * rational_of(static_cast<long>(at - start));
    return Scalar::monomial(std::move(q), t.c);
}

} // namespace

OperatorDesc OperatorDesc::zero(WeightFamily domain, WeightFamily codomain) {
    OperatorDesc f(std::move(domain), std::move(codomain));
    f.zero_flag_ = true;
    return f;
}

void OperatorDesc::add_sparse(Index j, Index i, Scalar value) {
    sparse_[{j, i}] = std::move(value);
}

void OperatorDesc::set_row_tail(Index j, RowTail tail) {
    row_tails_[j] = std::move(tail);
}

void OperatorDesc::set_diag_tail(DiagTail tail) {
    diag_tail_ = std::move(tail);
}

Scalar OperatorDesc::entry(Index j, Index i) const {
    if (auto it = sparse_.find({j, i}); it != sparse_.end()) return it->second;
    if (auto it = row_tails_.find(j); it != row_tails_.end() && i >= it->second.i_start) {
        return tail_value(it->second.lead, it->second.ratio_exp, it->second.i_start, i);
    }
    if (diag_tail_ && i == j && j >= diag_tail_->j_start) {
        return tail_value(diag_tail_->lead, diag_tail_->ratio_exp, diag_tail_->j_start, j);
    }
    return Scalar();
}

bool OperatorDesc::has_entry(Index j, Index i) const {
    return !entry(j, i).is_zero();
}

bool OperatorDesc::operator==(const OperatorDesc& other) const {
    return domain_ == other.domain_ && codomain_ == other.codomain_ &&
           sparse_ == other.sparse_ && row_tails_ == other.row_tails_ &&
           diag_tail_ == other.diag_tail_ && zero_flag_ == other.zero_flag_;
}

std::vector<std::string> validate(const OperatorDesc& f) {
    std::vector<std::string> v;
    const auto& dom = f.domain();
    const auto& cod = f.codomain();

    if (f.zero_flagged()) {
        if (!f.sparse().empty() || !f.row_tails().empty() || f.diag_tail()) {
            v.push_back("zeroFlag: flagged zero operator carries entries");
        }
        return v;
    }
    if (f.sparse().empty() && f.row_tails().empty() && !f.diag_tail()) {
        v.push_back("operator: f must be non-zero");
    }

    for (const auto& [ji, a] : f.sparse()) {
        const auto [j, i] = ji;
        if (a.is_zero()) v.push_back("sparse: zero value at " + pos_str(j, i));
        if (!cod.index_set().contains(j)) v.push_back("sparse: row out of range at " + pos_str(j, i));
        if (!dom.index_set().contains(i)) {
            v.push_back("sparse: column out of range at " + pos_str(j, i));
        }
    }

    for (const auto& [j, tail] : f.row_tails()) {
        const std::string at = "rowTail[j=" + std::to_string(j) + "]";
        if (!cod.index_set().contains(j)) v.push_back(at + ": row out of range");
        if (dom.index_set().is_finite()) {
            v.push_back(at + ": requires an omega domain");
        } else if (tail.i_start < dom.stabilized_from()) {
            v.push_back(at + ": starts before the domain weights stabilize");
        }
        if (!(tail.ratio_exp > 0)) v.push_back(at + ": non-decaying tail (ratioExp must be > 0)");
        if (!tail.lead.is_monomial()) v.push_back(at + ": lead must be a nonzero monomial");
    }

    if (f.diag_tail()) {
        const auto& d = *f.diag_tail();
        if (dom.index_set().is_finite() || cod.index_set().is_finite()) {
            v.push_back("diagTail: requires omega domain and codomain");
        } else if (d.j_start < std::max(dom.stabilized_from(), cod.stabilized_from())) {
            v.push_back("diagTail: starts before the weights stabilize");
        }
        if (!(d.ratio_exp > 0)) v.push_back("diagTail: non-decaying tail (ratioExp must be > 0)");
        if (!d.lead.is_monomial()) v.push_back("diagTail: lead must be a nonzero monomial");
    }

    for (const auto& [ji, a] : f.sparse()) {
        const auto [j, i] = ji;
        if (auto it = f.row_tails().find(j); it != f.row_tails().end() && i >= it->second.i_start) {
            v.push_back("overlap: sparse " + pos_str(j, i) + " covered by rowTail");
        }
        if (f.diag_tail() && i == j && j >= f.diag_tail()->j_start) {
            v.push_back("overlap: sparse " + pos_str(j, i) + " covered by diagTail");
        }
    }
    if (f.diag_tail()) {
        for (const auto& [j, tail] : f.row_tails()) {
            if (j >= f.diag_tail()->j_start && j >= tail.i_start) {
                v.push_back("overlap: rowTail[j=" + std::to_string(j) +
                            "] covers the diagonal position");
            }
        }
    }
    return v;
}

NormValue effective_entry(const OperatorDesc& f, Index j, Index i) {
    Scalar a = f.entry(j, i);
    if (a.is_zero()) return NormValue::zero();
    return f.codomain().weight(j) * a.norm() * f.domain().weight(i).inverse();
}

PVector apply(const OperatorDesc& f, const PVector& x) {
    if (!(x.space() == f.domain())) {
        throw std::invalid_argument("apply: vector does not live over the operator's domain");
    }
    std::map<Index, Scalar> out;
    auto accumulate = [&](Index j, const Scalar& a, const Scalar& xi) {
        Scalar prod = a * xi;
        if (prod.is_zero()) return;
        auto [it, inserted] = out.emplace(j, prod);
        if (!inserted) it->second = it->second + prod;
    };
    for (const auto& [ji, a] : f.sparse()) {
        const auto [j, i] = ji;
        auto it = x.entries().find(i);
        if (it != x.entries().end()) accumulate(j, a, it->second);
    }
    for (const auto& [j, tail] : f.row_tails()) {
        for (auto it = x.entries().lower_bound(tail.i_start); it != x.entries().end(); ++it) {
            accumulate(j, tail_value(tail.lead, tail.ratio_exp, tail.i_start, it->first),
                       it->second);
        }
    }
    if (f.diag_tail()) {
        const auto& d = *f.diag_tail();
        for (auto it = x.entries().lower_bound(d.j_start); it != x.entries().end(); ++it) {
            accumulate(it->first, tail_value(d.lead, d.ratio_exp, d.j_start, it->first),
                       it->second);
        }
    }
    return PVector(f.codomain(), std::move(out));
}

NormValue operator_norm(const OperatorDesc& f) {
    NormValue best = NormValue::zero();
    for (const auto& [ji, a] : f.sparse()) best = nv_max(best, effective_entry(f, ji.first, ji.second));
    for (const auto& [j, tail] : f.row_tails()) {
        best = nv_max(best, effective_entry(f, j, tail.i_start));
    }
    if (f.diag_tail()) {
        best = nv_max(best, effective_entry(f, f.diag_tail()->j_start, f.diag_tail()->j_start));
    }
    return best;
}

std::vector<Index> active_columns(const OperatorDesc& f) {
    std::set<Index> cols;
    for (const auto& [ji, a] : f.sparse()) cols.insert(ji.second);
    for (const auto& [j, tail] : f.row_tails()) cols.insert(tail.i_start);
    if (f.diag_tail()) cols.insert(f.diag_tail()->j_start);
    return {cols.begin(), cols.end()};
}

PVector probe(const OperatorDesc& f, Index i) {
    bool nonempty = false;
    for (const auto& [ji, a] : f.sparse()) {
        if (ji.second == i) {
            nonempty = true;
            break;
        }
    }
    for (const auto& [j, tail] : f.row_tails()) {
        if (i >= tail.i_start) nonempty = true;
    }
    if (f.diag_tail() && i >= f.diag_tail()->j_start) nonempty = true;
    if (!nonempty) {
        throw std::invalid_argument("probe: column " + std::to_string(i) + " has no entry");
    }
    // w_i * |t^e| = 1 at e = exp(w_i).
    return PVector::unit(f.domain(), i, Scalar::power(f.domain().weight(i).exponent()));
}

OperatorDesc restrict(const OperatorDesc& f, const RestrictionSpec& spec) {
    const auto& I0 = spec.domain_removed;
    const auto& J0 = spec.codomain_removed;
    if (f.zero_flagged()) return OperatorDesc::zero(f.domain(), f.codomain());

    OperatorDesc g(f.domain(), f.codomain());
    for (const auto& [ji, a] : f.sparse()) {
        const auto [j, i] = ji;
        if (!J0.count(j) && !I0.count(i)) g.add_sparse(j, i, a);
    }
    for (const auto& [j, tail] : f.row_tails()) {
        if (J0.count(j)) continue;
        Index cut = tail.i_start;
        for (Index removed : I0) {
            if (removed >= tail.i_start) cut = std::max(cut, removed + 1);
        }
        if (cut == tail.i_start) {
            g.set_row_tail(j, tail);
            continue;
        }
        // Survivors before the new start become sparse entries; the rest of
        // the tail restarts at `cut` with the lead advanced accordingly.
        for (Index i = tail.i_start; i < cut; ++i) {
            if (!I0.count(i)) g.add_sparse(j, i, tail_value(tail.lead, tail.ratio_exp, tail.i_start, i));
        }
        g.set_row_tail(j, RowTail{cut, tail_value(tail.lead, tail.ratio_exp, tail.i_start, cut),
                                  tail.ratio_exp});
    }
    if (f.diag_tail()) {
        const auto& d = *f.diag_tail();
        Index cut = d.j_start;
        for (Index removed : I0) {
            if (removed >= d.j_start) cut = std::max(cut, removed + 1);
        }
        for (Index removed : J0) {
            if (removed >= d.j_start) cut = std::max(cut, removed + 1);
        }
        if (cut == d.j_start) {
            g.set_diag_tail(d);
        } else {
            for (Index j = d.j_start; j < cut; ++j) {
                if (!I0.count(j) && !J0.count(j)) {
                    g.add_sparse(j, j, tail_value(d.lead, d.ratio_exp, d.j_start, j));
                }
            }
            g.set_diag_tail(DiagTail{cut, tail_value(d.lead, d.ratio_exp, d.j_start, cut),
                                     d.ratio_exp});
        }
    }
    if (g.sparse().empty() && g.row_tails().empty() && !g.diag_tail()) {
        return OperatorDesc::zero(f.domain(), f.codomain());
    }
    return g;
}

NormValue row_sup(const OperatorDesc& f, Index j, const IndexSetOf& excluded_columns) {
    NormValue best = NormValue::zero();
    auto lo = f.sparse().lower_bound({j, 0});
    auto hi = f.sparse().lower_bound({j + 1, 0});
    for (auto it = lo; it != hi; ++it) {
        if (!excluded_columns.count(it->first.second)) {
            best = nv_max(best, effective_entry(f, j, it->first.second));
        }
    }
    if (auto it = f.row_tails().find(j); it != f.row_tails().end()) {
        Index i = it->second.i_start;
        while (excluded_columns.count(i)) ++i; // first surviving tail column
        best = nv_max(best, effective_entry(f, j, i));
    }
    if (f.diag_tail() && j >= f.diag_tail()->j_start && !excluded_columns.count(j)) {
        best = nv_max(best, effective_entry(f, j, j));
    }
    return best;
}

std::vector<Index> rows_with_sup_above(const OperatorDesc& f, const NormValue& threshold) {
    if (threshold.is_zero() && f.diag_tail()) {
        throw std::invalid_argument("rows_with_sup_above: every diagonal row exceeds a zero "
                                    "threshold");
    }
    std::set<Index> rows;
    auto consider = [&](Index j) {
        if (row_sup(f, j) > threshold) rows.insert(j);
    };
    for (const auto& [ji, a] : f.sparse()) consider(ji.first);
    for (const auto& [j, tail] : f.row_tails()) consider(j);
    if (f.diag_tail()) {
        // Diagonal row sups decay strictly, so the scan stops at the first
        // diagonal entry at or below the threshold.
        for (Index j = f.diag_tail()->j_start;; ++j) {
            if (!(effective_entry(f, j, j) > threshold)) break;
            rows.insert(j);
        }
    }
    return {rows.begin(), rows.end()};
}

std::vector<Index> candidate_rows(const OperatorDesc& f, const IndexSetOf& excluded_rows,
                                  const IndexSetOf& excluded_columns) {
    std::set<Index> rows;
    std::set<Index> special;
    for (const auto& [ji, a] : f.sparse()) special.insert(ji.first);
    for (const auto& [j, tail] : f.row_tails()) special.insert(j);
    rows = special;
    if (f.diag_tail()) {
        // Walk the diagonal until the first row untouched by special rows
        // and exclusions; it dominates every later pure diagonal row.
        for (Index j = f.diag_tail()->j_start;; ++j) {
            rows.insert(j);
            if (!special.count(j) && !excluded_rows.count(j) && !excluded_columns.count(j)) break;
        }
    }
    return {rows.begin(), rows.end()};
}

} // namespace ultrachase
