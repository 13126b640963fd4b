#include "ultrachase/spaces.hpp"

#include <algorithm>

namespace ultrachase {

WeightFamily WeightFamily::finite(std::vector<NormValue> weights) {
    for (const auto& w : weights) {
        if (!w.is_pos()) throw std::invalid_argument("WeightFamily: weights must be positive");
    }
    WeightFamily f;
    f.index_ = IndexSet::finite(static_cast<Index>(weights.size()));
    f.prefix_ = std::move(weights);
    return f;
}

WeightFamily WeightFamily::omega(std::vector<NormValue> prefix, NormValue tail_weight) {
    for (const auto& w : prefix) {
        if (!w.is_pos()) throw std::invalid_argument("WeightFamily: weights must be positive");
    }
    if (!tail_weight.is_pos()) {
        throw std::invalid_argument("WeightFamily: tail weight must be positive");
    }
    WeightFamily f;
    f.index_ = IndexSet::omega();
    f.prefix_ = std::move(prefix);
    f.tail_ = std::move(tail_weight);
    return f;
}

WeightFamily WeightFamily::unit_finite(Index n) {
    return finite(std::vector<NormValue>(n, NormValue::one()));
}

NormValue WeightFamily::weight(Index i) const {
    if (index_.is_finite()) {
        if (i >= index_.size) throw std::out_of_range("WeightFamily: index out of range");
        return prefix_[i];
    }
    if (i < prefix_.size()) return prefix_[i];
    return *tail_;
}

bool WeightFamily::operator==(const WeightFamily& other) const {
    return index_ == other.index_ && prefix_ == other.prefix_ && tail_ == other.tail_;
}

PVector::PVector(WeightFamily space, std::map<Index, Scalar> entries)
    : space_(std::move(space)) {
    for (auto& [i, v] : entries) {
        if (!space_.index_set().contains(i)) {
            throw std::invalid_argument("PVector: support index outside the index set");
        }
        if (!v.is_zero()) entries_.emplace(i, std::move(v));
    }
}

PVector PVector::unit(WeightFamily space, Index i, Scalar value) {
    std::map<Index, Scalar> e;
    e.emplace(i, std::move(value));
    return PVector(std::move(space), std::move(e));
}

Scalar PVector::coord(Index i) const {
    auto it = entries_.find(i);
    return it == entries_.end() ? Scalar() : it->second;
}

NormValue PVector::coord_norm(Index i) const {
    auto it = entries_.find(i);
    if (it == entries_.end()) return NormValue::zero();
    return space_.weight(i) * it->second.norm();
}

NormValue PVector::norm() const {
    NormValue best = NormValue::zero();
    for (const auto& [i, v] : entries_) best = nv_max(best, space_.weight(i) * v.norm());
    return best;
}

PVector PVector::operator+(const PVector& other) const {
    if (!(space_ == other.space_)) throw std::invalid_argument("PVector: space mismatch");
    std::map<Index, Scalar> out = entries_;
    for (const auto& [i, v] : other.entries_) {
        auto it = out.find(i);
        if (it == out.end()) {
            out.emplace(i, v);
        } else {
            Scalar s = it->second + v;
            if (s.is_zero()) {
                out.erase(it);
            } else {
                it->second = std::move(s);
            }
        }
    }
    PVector r(space_);
    r.entries_ = std::move(out);
    return r;
}

PVector PVector::operator-(const PVector& other) const {
    return *this + other.scaled(Scalar::constant(rational_of(-1)));
}

PVector PVector::scaled(const Scalar& c) const {
    PVector r(space_);
    if (c.is_zero()) return r;
    for (const auto& [i, v] : entries_) {
        Scalar s = c * v;
        if (!s.is_zero()) r.entries_.emplace(i, std::move(s));
    }
    return r;
}

UltraSet::UltraSet(std::vector<Index> points) {
    for (Index p : points) {
        if (!points_.insert(p).second) {
            throw std::invalid_argument("UltraSet: duplicate principal designator");
        }
    }
}

bool in_region(const PVector& x, const ProdRegion& region) {
    for (Index i : region.vanish) {
        if (!x.coord(i).is_zero()) return false;
    }
    return x.norm() <= region.radius;
}

bool in_region(const PVector& x, const SumRegion& region) {
    for (const auto& [i, v] : x.entries()) {
        if (region.exempt.count(i)) continue;
        if (x.space().weight(i) * v.norm() > region.radius) return false;
    }
    return true;
}

bool in_region(const PVector& x, const UltraProdRegion& region) {
    for (Index i : region.filters.points()) {
        if (!x.coord(i).is_zero()) return false;
    }
    return x.norm() <= region.radius;
}

ProdRegion principal_normal_form(const UltraProdRegion& region) {
    return ProdRegion{region.filters.points(), region.radius};
}

bool region_equiv_principal(const UltraSet& u0, const IndexSetOf& i0, const NormValue& radius,
                            const std::vector<PVector>& samples) {
    if (u0.points() != i0) {
        throw std::invalid_argument("region_equiv_principal: U0 designators do not match I0");
    }
    const ProdRegion normal = principal_normal_form(UltraProdRegion{u0, radius});
    if (normal.vanish != i0 || normal.radius != radius) return false;
    const ProdRegion prod{i0, radius};
    const UltraProdRegion ultra{u0, radius};
    return std::all_of(samples.begin(), samples.end(), [&](const PVector& x) {
        return in_region(x, prod) == in_region(x, ultra);
    });
}

} // namespace ultrachase
