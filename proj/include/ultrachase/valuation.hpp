#pragma once

#include "ultrachase/rational.hpp"

#include <vector>

namespace ultrachase {

/// An element of the value group p^Q together with 0, stored as the exact
/// rational exponent of a fixed base p > 1. The base itself never enters
/// any computation: ordering, multiplication and inversion act on the
/// exponents alone, so every comparison in the library is exact.
///
/// There is deliberately no addition on NormValue. Ultrametric analysis
/// only ever takes max/min, compares, multiplies and inverts norms.
class NormValue {
public:
    NormValue() : positive_(false) {}

    static NormValue zero() { return NormValue(); }
    static NormValue pos(Rational exponent) {
        NormValue v;
        v.positive_ = true;
        v.exp_ = std::move(exponent);
        return v;
    }
    static NormValue pos(long num, long den = 1) { return pos(rational_of(num, den)); }
    /// p^0 = 1.
    static NormValue one() { return pos(rational_of(0)); }

    bool is_zero() const { return !positive_; }
    bool is_pos() const { return positive_; }

    /// Exponent of a positive value; throws on 0.
    const Rational& exponent() const {
        if (!positive_) throw std::domain_error("NormValue: zero has no exponent");
        return exp_;
    }

    friend NormValue operator*(const NormValue& a, const NormValue& b) {
        if (!a.positive_ || !b.positive_) return zero();
        return pos(a.exp_ + b.exp_);
    }

    /// Exact inverse p^{-e}; throws on 0.
    NormValue inverse() const {
        if (!positive_) throw std::domain_error("NormValue: zero is not invertible");
        return pos(-exp_);
    }

    /// Multiplication by p^k; radius bumps are always multiplicative here
    /// so they stay inside the value group.
    NormValue shifted(long k) const {
        if (!positive_) return zero();
        return pos(exp_ + k);
    }

    friend bool operator==(const NormValue& a, const NormValue& b) {
        if (a.positive_ != b.positive_) return false;
        return !a.positive_ || a.exp_ == b.exp_;
    }
    friend bool operator!=(const NormValue& a, const NormValue& b) { return !(a == b); }
    friend bool operator<(const NormValue& a, const NormValue& b) {
        if (!a.positive_) return b.positive_;
        if (!b.positive_) return false;
        return a.exp_ < b.exp_;
    }
    friend bool operator>(const NormValue& a, const NormValue& b) { return b < a; }
    friend bool operator<=(const NormValue& a, const NormValue& b) { return !(b < a); }
    friend bool operator>=(const NormValue& a, const NormValue& b) { return !(a < b); }

    /// "0" or "p^<exp>"; diagnostic only, reports serialize the exponent.
    std::string to_string() const;

private:
    bool positive_;
    Rational exp_;
};

inline NormValue nv_max(const NormValue& a, const NormValue& b) { return a < b ? b : a; }
inline NormValue nv_min(const NormValue& a, const NormValue& b) { return b < a ? b : a; }

/// A value strictly between lo and hi, witnessing density of the value
/// group. Deterministic: midpoint of exponents, or p^{e-1} above zero.
/// Throws std::invalid_argument unless lo < hi.
NormValue nv_between(const NormValue& lo, const NormValue& hi);

/// A finite Hahn sum over the indeterminate t: sum of c * t^q with rational
/// coefficients c and rational exponents q, kept sorted by strictly
/// increasing exponent. Models a scalar of a densely valued field with
/// |t^q| = p^{-q}; the norm of a sum is carried by its leading term.
class Scalar {
public:
    struct Term {
        Rational q; ///< exponent
        Rational c; ///< nonzero coefficient

        bool operator==(const Term& other) const { return q == other.q && c == other.c; }
    };

    /// Zero.
    Scalar() = default;

    static Scalar monomial(Rational q, Rational c);
    /// t^q.
    static Scalar power(Rational q) { return monomial(std::move(q), rational_of(1)); }
    static Scalar constant(Rational c) { return monomial(rational_of(0), std::move(c)); }
    /// Merges duplicates and drops zero coefficients.
    static Scalar from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_monomial() const { return terms_.size() == 1; }
    const std::vector<Term>& terms() const { return terms_; }

    /// |a| = p^{-q_min}, 0 for the empty sum.
    NormValue norm() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    Scalar operator-() const;

    bool operator==(const Scalar& other) const { return terms_ == other.terms_; }
    bool operator!=(const Scalar& other) const { return !(*this == other); }

    std::string to_string() const;

private:
    std::vector<Term> terms_;
};

} // namespace ultrachase
