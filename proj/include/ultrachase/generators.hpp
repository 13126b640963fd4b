#pragma once

#include "ultrachase/ideals.hpp"
#include "ultrachase/operators.hpp"

#include <cstdint>

namespace ultrachase {

/// Deterministic splitmix64 stream. Self-contained on purpose: the
/// byte-identical report guarantee must not depend on the standard
/// library's distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next();
    /// Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi], inclusive.
    long range(long lo, long hi);
    bool chance(int percent);
    /// Random rational with numerator in [lo, hi] and denominator in
    /// {1, ..., max_den}.
    Rational rational(long lo, long hi, long max_den = 2);

private:
    std::uint64_t state_;
};

Scalar random_scalar(Rng& rng, int max_terms = 3);
Scalar random_nonzero_scalar(Rng& rng, int max_terms = 3);
NormValue random_pos_norm(Rng& rng);

WeightFamily random_weight_family(Rng& rng, bool allow_finite);

/// A validated non-zero operator from the general descriptor family:
/// random weight families, a sparse block, row tails, sometimes a diagonal
/// tail. Finite domains get sparse entries only.
OperatorDesc random_operator(Rng& rng);

/// An omega/omega operator whose norm-attaining entries (at least
/// min_maxima of them) sit in pairwise distinct rows and columns with no
/// other entries in those rows at those columns, and whose remaining
/// entries stay at or below ||f||/p. On such operators the adversarial
/// recursion picks exactly the maxima, one per step, and the replayed
/// witness sum reproduces each picked coordinate image on the nose.
OperatorDesc random_operator_isolated_maxima(Rng& rng, int min_maxima);

PVector random_vector(Rng& rng, const WeightFamily& space, Index max_index = 10);

/// A random element of the region {x : x vanishes on i0, ||x|| <= radius},
/// with coordinate norms sometimes exactly at the radius.
PVector random_vector_in_prod_region(Rng& rng, const WeightFamily& space, const IndexSetOf& i0,
                                     const NormValue& radius, Index max_index = 12);

/// Uniformly random proper ideal: the power set of a uniformly random
/// proper subset of the ground set (which is what downward plus union
/// closure leaves room for on a finite ground set).
ProperIdeal random_proper_ideal(Rng& rng, int ground);

} // namespace ultrachase
