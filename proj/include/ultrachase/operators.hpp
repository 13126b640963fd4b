#pragma once

#include "ultrachase/spaces.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ultrachase {

/// Geometric continuation of a row: a_{j,i} = lead * t^{ratio_exp*(i - i_start)}
/// for every i >= i_start. ratio_exp > 0, so entry norms decay strictly and
/// the row supremum over the tail sits at its first surviving column.
struct RowTail {
    Index i_start = 0;
    Scalar lead;        ///< monomial
    Rational ratio_exp; ///< positive

    bool operator==(const RowTail&) const = default;
};

/// Geometric diagonal: a_{j,j} = lead * t^{ratio_exp*(j - j_start)} for
/// j >= j_start. The one descriptor piece that makes both the row set and
/// the column set infinite.
struct DiagTail {
    Index j_start = 0;
    Scalar lead;
    Rational ratio_exp;

    bool operator==(const DiagTail&) const = default;
};

struct RestrictionSpec {
    IndexSetOf domain_removed;   ///< I0: columns to zero out
    IndexSetOf codomain_removed; ///< J0: rows to project away
};

/// A structured representation of a bounded map from the weighted product
/// over the domain family into the completed sum over the codomain family:
/// a sparse finite block, finitely many geometric row tails, and at most
/// one geometric diagonal tail. Column tails are excluded so that applying
/// the operator to a finitely supported vector is exact and finitely
/// supported.
///
/// The norm data of an entry is its effective size
///   m_{j,i} = u_j * |a_{j,i}| / w_i,
/// and the operator norm is the (attained) supremum of the m_{j,i}.
class OperatorDesc {
public:
    OperatorDesc(WeightFamily domain, WeightFamily codomain)
        : domain_(std::move(domain)), codomain_(std::move(codomain)) {}

    /// The flagged zero operator (norm 0); only restriction produces it.
    static OperatorDesc zero(WeightFamily domain, WeightFamily codomain);

    const WeightFamily& domain() const { return domain_; }
    const WeightFamily& codomain() const { return codomain_; }
    bool zero_flagged() const { return zero_flag_; }

    const std::map<std::pair<Index, Index>, Scalar>& sparse() const { return sparse_; }
    const std::map<Index, RowTail>& row_tails() const { return row_tails_; }
    const std::optional<DiagTail>& diag_tail() const { return diag_tail_; }

    /// Plain setters; `validate` is the authority on well-formedness, so
    /// ill-formed descriptors (overlaps, zero values) stay constructible
    /// and are reported instead of aborting.
    void add_sparse(Index j, Index i, Scalar value);
    void set_row_tail(Index j, RowTail tail);
    void set_diag_tail(DiagTail tail);

    /// The matrix entry a_{j,i} (resolving sparse block and tails); zero
    /// scalar when absent.
    Scalar entry(Index j, Index i) const;
    bool has_entry(Index j, Index i) const;

    bool operator==(const OperatorDesc& other) const;

private:
    WeightFamily domain_;
    WeightFamily codomain_;
    std::map<std::pair<Index, Index>, Scalar> sparse_; ///< keyed (j, i)
    std::map<Index, RowTail> row_tails_;               ///< keyed by row j
    std::optional<DiagTail> diag_tail_;
    bool zero_flag_ = false;
};

/// Structural check; returns the list of violations (empty = valid) and
/// never throws. Each message names the offending field.
std::vector<std::string> validate(const OperatorDesc& f);
inline bool is_valid(const OperatorDesc& f) { return validate(f).empty(); }

/// m_{j,i} = u_j * |a_{j,i}| / w_i; zero when there is no entry.
NormValue effective_entry(const OperatorDesc& f, Index j, Index i);

/// Exact matrix action on a finitely supported vector.
PVector apply(const OperatorDesc& f, const PVector& x);

/// Exact operator norm: max effective entry over the sparse block and the
/// tail start positions.
NormValue operator_norm(const OperatorDesc& f);

/// The finite set of columns that can carry the norm: sparse columns, row
/// tail starts, and the diagonal tail start.
std::vector<Index> active_columns(const OperatorDesc& f);

/// Unit-norm single-coordinate vector at column i realizing the column
/// supremum sup_j m_{j,i} under apply. Throws std::invalid_argument when
/// the column has no entry.
PVector probe(const OperatorDesc& f, Index i);

/// Zero-extend on removed domain coordinates, apply, project away removed
/// codomain coordinates. Tails are clipped by converting the finitely many
/// surviving positions before the new start into sparse entries. Returns
/// the flagged zero operator when nothing remains.
OperatorDesc restrict(const OperatorDesc& f, const RestrictionSpec& spec);

/// Row supremum sup_{i not in excluded} m_{j,i} for one row.
NormValue row_sup(const OperatorDesc& f, Index j, const IndexSetOf& excluded_columns = {});

/// Rows whose row supremum exceeds the threshold; finite because row sups
/// decay to zero along the diagonal tail.
std::vector<Index> rows_with_sup_above(const OperatorDesc& f, const NormValue& threshold);

/// The finite list of rows that can carry a clipped supremum or violation:
/// sparse rows, row-tail rows, and diagonal rows up to and including the
/// first one free of the given exclusions (later pure diagonal rows are
/// dominated by it). Sorted ascending.
std::vector<Index> candidate_rows(const OperatorDesc& f, const IndexSetOf& excluded_rows,
                                  const IndexSetOf& excluded_columns);

} // namespace ultrachase
