#pragma once

#include "ultrachase/valuation.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

namespace ultrachase {

using Index = std::uint32_t;
using IndexSetOf = std::set<Index>;

/// The index set of a coordinate family: {0,...,n-1} or all of omega.
struct IndexSet {
    enum class Kind { Finite, Omega };

    Kind kind = Kind::Omega;
    Index size = 0; ///< meaningful iff Finite

    static IndexSet finite(Index n) { return IndexSet{Kind::Finite, n}; }
    static IndexSet omega() { return IndexSet{Kind::Omega, 0}; }

    bool is_finite() const { return kind == Kind::Finite; }
    bool contains(Index i) const { return kind == Kind::Omega || i < size; }

    bool operator==(const IndexSet& other) const = default;
};

/// A family of weighted coordinate lines: coordinate i carries the norm
/// ||x||_i = w_i * |x| for a strictly positive weight w_i. Over omega the
/// weights are an explicit prefix followed by a constant tail weight, so
/// every supremum taken later is attained at a computable index.
class WeightFamily {
public:
    static WeightFamily finite(std::vector<NormValue> weights);
    static WeightFamily omega(std::vector<NormValue> prefix, NormValue tail_weight);
    /// All-ones family, the workhorse for small examples.
    static WeightFamily unit_omega() { return omega({}, NormValue::one()); }
    static WeightFamily unit_finite(Index n);

    const IndexSet& index_set() const { return index_; }
    NormValue weight(Index i) const;
    /// First index from which the weight is the constant tail weight
    /// (0 for finite families, which have no tail).
    Index stabilized_from() const {
        return index_.is_finite() ? 0 : static_cast<Index>(prefix_.size());
    }

    bool operator==(const WeightFamily& other) const;

private:
    WeightFamily() = default;

    IndexSet index_;
    std::vector<NormValue> prefix_;
    std::optional<NormValue> tail_;
};

/// A finitely supported element of the bounded product over a weight
/// family; entries map index -> nonzero scalar. Finite support makes the
/// completed-direct-sum membership condition structural and every norm a
/// finite max.
class PVector {
public:
    explicit PVector(WeightFamily space) : space_(std::move(space)) {}
    PVector(WeightFamily space, std::map<Index, Scalar> entries);

    static PVector zero(WeightFamily space) { return PVector(std::move(space)); }
    static PVector unit(WeightFamily space, Index i, Scalar value);

    const WeightFamily& space() const { return space_; }
    const std::map<Index, Scalar>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    /// The coordinate scalar x(i); zero when unsupported.
    Scalar coord(Index i) const;
    /// ||x(i)|| = w_i * |x(i)|.
    NormValue coord_norm(Index i) const;
    /// sup_i ||x(i)||, a max over the support; 0 for the empty vector.
    NormValue norm() const;

    PVector operator+(const PVector& other) const;
    PVector operator-(const PVector& other) const;
    PVector scaled(const Scalar& c) const;

    bool operator==(const PVector& other) const {
        return space_ == other.space_ && entries_ == other.entries_;
    }

private:
    WeightFamily space_;
    std::map<Index, Scalar> entries_;
};

/// A finite set of principal ultrafilter designators iota(i). This is the
/// whole of the representable fragment of the space of countably complete
/// ultrafilters: at desk scale every ultrafilter is principal.
class UltraSet {
public:
    UltraSet() = default;
    /// Throws on duplicate designators.
    explicit UltraSet(std::vector<Index> points);

    static UltraSet principal_image(const IndexSetOf& i0) {
        return UltraSet(std::vector<Index>(i0.begin(), i0.end()));
    }

    const std::set<Index>& points() const { return points_; }
    bool operator==(const UltraSet& other) const { return points_ == other.points_; }

private:
    std::set<Index> points_;
};

/// Region {x : x vanishes on I0 and ||x(i)|| <= r everywhere}.
struct ProdRegion {
    IndexSetOf vanish;
    NormValue radius;
};

/// Region {x : ||x(i)|| <= r for all i outside the exempt set J0}.
struct SumRegion {
    IndexSetOf exempt;
    NormValue radius;
};

/// Region {x : {i : x(i)=0} belongs to every filter of U0, ||x|| <= r};
/// with principal designators the filter condition is x(i) = 0.
struct UltraProdRegion {
    UltraSet filters;
    NormValue radius;
};

bool in_region(const PVector& x, const ProdRegion& region);
bool in_region(const PVector& x, const SumRegion& region);
bool in_region(const PVector& x, const UltraProdRegion& region);

/// Reduces an all-principal ultrafilter region to its plain product form.
ProdRegion principal_normal_form(const UltraProdRegion& region);

/// Certifies that the regions over U0 = iota[I0] and over I0 coincide:
/// symbolically (both reduce to the same normal form) and on every sample.
/// Throws std::invalid_argument when U0's designators differ from I0.
bool region_equiv_principal(const UltraSet& u0, const IndexSetOf& i0, const NormValue& radius,
                            const std::vector<PVector>& samples);

} // namespace ultrachase
