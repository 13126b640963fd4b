#pragma once

#include "ultrachase/operators.hpp"

#include <variant>

namespace ultrachase {

/// A witness triple (r', I0, J0): dropping the coordinates I0 from the
/// domain and shrinking to radius r' pushes the image into the radius-r
/// ball outside the finitely many rows J0. Certified means check_inclusion
/// verified it and r' * ||f|| > r holds exactly.
struct Witness {
    NormValue r_prime;
    IndexSetOf i0;
    IndexSetOf j0;
    bool certified = false;
};

/// The same witness with the vanishing set expressed through principal
/// ultrafilter designators.
struct UltraWitness {
    NormValue r_prime;
    UltraSet u0;
    IndexSetOf j0;
    bool certified = false;
};

struct NormReduction {
    IndexSetOf i0;
    IndexSetOf j0;
    NormValue norm_before;
    NormValue norm_after;
};

/// One round of the adversarial recursion: the candidate triple
/// (r'(n), omega_{<n}, J_n) failed with counterexample x_n, the violated
/// row is j_n, and the radius shrinks to r'(n+1).
struct TranscriptStep {
    Index step = 0;           ///< n; the vanishing prefix is omega_{<n}
    Index j = 0;              ///< j(n)
    PVector x;                ///< x(n)
    NormValue r_prime_next;   ///< r'(n+1)
    IndexSetOf j_blocked;     ///< J'_n, the rows already known to exceed r
};

struct TranscriptCertified {
    Index at_step = 0;
    Witness witness;
};

struct TranscriptExhausted {
    Index max_steps = 0;
};

/// Full record of the adversarial recursion; checkable independently of
/// how it was produced.
struct Transcript {
    NormValue r;
    NormValue r_prime0;
    std::vector<TranscriptStep> steps;
    std::variant<TranscriptCertified, TranscriptExhausted> outcome;

    bool certified() const { return std::holds_alternative<TranscriptCertified>(outcome); }
};

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct TranscriptReport {
    std::vector<CheckResult> checks;

    bool all_pass() const;
    std::vector<const CheckResult*> failures() const;
};

/// Decides f[prod^{I0,rPrime}] subset sum^{J0,r} exactly: every row outside
/// J0 must satisfy rPrime * sup_{i not in I0} m_{j,i} <= r. Sound by the
/// ultrametric bound; complete because probes scaled to norm exactly rPrime
/// attain the sup.
bool check_inclusion(const OperatorDesc& f, const NormValue& r_prime, const IndexSetOf& i0,
                     const IndexSetOf& j0, const NormValue& r);

/// A certified witness for radius r: finite domains vanish entirely; over
/// omega the rows whose sup exceeds ||f||/p form J0 and r' = p * r / ||f||.
/// Throws std::invalid_argument on a zero operator, std::logic_error if
/// certification unexpectedly fails.
Witness chase_witness(const OperatorDesc& f, const NormValue& r);

/// chase_witness with I0 pushed through the canonical principal embedding;
/// the two region descriptions are certified equivalent.
UltraWitness chase_witness_ultra(const OperatorDesc& f, const NormValue& r);

/// Finite (I0, J0) with ||restrict(f)|| < ||f|| exactly: collects every row
/// achieving the norm into J0 (so I0 stays empty) and re-verifies on the
/// restricted operator.
NormReduction norm_reduction(const OperatorDesc& f);

/// A monomial c with |c| * ||x|| = rPrime exactly. Throws on x = 0.
Scalar scaling_scalar(const PVector& x, const NormValue& r_prime);

/// The oracle dual to check_inclusion: nullopt iff the inclusion holds,
/// otherwise the single-coordinate vector of norm exactly rPrimeCand at the
/// lexicographically least violating position (j, i) with j outside J0 and
/// i outside I0.
std::optional<PVector> counterexample(const OperatorDesc& f, const NormValue& r,
                                      const NormValue& r_prime_cand, const IndexSetOf& i0,
                                      const IndexSetOf& j0);

/// Runs the proof recursion: start from r'(0) = p * r / ||f|| and the empty
/// row set, request a counterexample against (r'(n), omega_{<n}, J'_n) each
/// round, shrink r' by the min rule, and stop at certification or when the
/// step budget runs out. Requires a validated non-zero operator over an
/// omega domain.
Transcript adversary_run(const OperatorDesc& f, const NormValue& r, Index max_steps);

/// Replays a transcript against f with exact arithmetic: the five recursion
/// conditions, injectivity of j, the blocked-row sets, the assembled
/// witness sum s with its bounds, and the dominance equality at every
/// recorded step. Throws std::invalid_argument on transcript/operator
/// mismatch.
TranscriptReport verify_transcript(const OperatorDesc& f, const NormValue& r,
                                   const Transcript& t);

} // namespace ultrachase
