#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ultrachase {

/// Subset of a ground set {0,...,n-1}, n <= 16, as a bitmask.
using Mask = std::uint32_t;

constexpr int kMaxGround = 16;

Mask full_mask(int ground);
int mask_popcount(Mask m);
/// "{0,2,3}" with elements ascending; "{}" for the empty set.
std::string mask_to_string(Mask m);

/// An arbitrary family of subsets of a small ground set; the raw input to
/// the membership-condition checkers.
struct SetSystem {
    int ground = 0;
    std::vector<Mask> family; ///< deduplicated, sorted ascending

    SetSystem(int ground_size, std::vector<Mask> members);

    bool contains(Mask m) const;
};

/// A proper ideal on a finite ground set: downward closed, union closed,
/// containing the empty set and excluding the full set. Membership is kept
/// as a table over all masks, so every oracle below is a plain scan.
class ProperIdeal {
public:
    /// Validates all closure invariants; throws std::invalid_argument.
    ProperIdeal(int ground_size, const std::vector<Mask>& members);

    /// Downward/union closure of the generators, then validation (which can
    /// still fail on properness when the generators cover the ground set).
    static ProperIdeal closure(int ground_size, const std::vector<Mask>& generators);

    int ground() const { return ground_; }
    bool contains(Mask m) const { return member_[m]; }
    std::vector<Mask> members() const;

    bool operator==(const ProperIdeal& other) const {
        return ground_ == other.ground_ && member_ == other.member_;
    }

private:
    int ground_ = 0;
    std::vector<bool> member_; ///< indexed by mask
};

struct ConditionReport {
    int condition = 0; ///< 1..5
    bool holds = false;
    std::string witness; ///< a failure witness when it does not hold
};

struct DConditionsReport {
    std::array<ConditionReport, 5> conditions;

    bool all_hold() const;
};

/// Evaluates the five membership conditions by exhaustive enumeration.
/// Condition 5 quantifies over all pairwise disjoint families, so the
/// ground set is capped at 5; larger inputs are rejected.
DConditionsReport check_D_conditions(const SetSystem& sys);

struct DEmptyCertificate {
    int ground = 0;
    bool by_enumeration = false; ///< full scan over all families (n <= 3)
    std::uint64_t families_checked = 0;
    std::string explanation;
};

/// Certifies that no family over a ground set of size n passes all five
/// conditions: by full enumeration for n <= 3, and by the clash between
/// conditions (1) and (2) (every subset of a finite set is finite) beyond.
DEmptyCertificate finite_D_empty(int n);

/// The dichotomy test: M is prime for the ideal when M is a non-member and
/// every subset of M lies in the ideal or has its complement in M there.
bool is_prime(const ProperIdeal& ideal, Mask m);

/// A "bad split" witness I' of non-primality: I' subset of M with neither
/// I' nor M \ I' in the ideal. nullopt when M is prime or a member.
std::optional<Mask> find_bad_split(const ProperIdeal& ideal, Mask m);

/// All primes by direct dichotomy scan over every subset pair. The dumb
/// oracle the other routes are tested against.
std::vector<Mask> prime_set_bruteforce(const ProperIdeal& ideal);

/// All primes by bad-split search with early exit.
std::vector<Mask> prime_set_by_splitting(const ProperIdeal& ideal);

/// Least prime in canonical mask order.
Mask find_prime(const ProperIdeal& ideal);

/// Descends from the full set, peeling off the least bad split each round,
/// until no bad split remains; the end of the descent is prime.
Mask find_prime_descent(const ProperIdeal& ideal);

/// Greedy maximal pairwise disjoint system of primes: repeatedly adjoin the
/// least prime disjoint from everything chosen. On exit every subset of the
/// complement of the union lies in the ideal (verified by the caller's
/// oracle or check_disjoint_system).
std::vector<Mask> max_disjoint_system(const ProperIdeal& ideal);

/// Enumerative verification of both maximal-disjoint-system properties.
bool check_disjoint_system(const ProperIdeal& ideal, const std::vector<Mask>& u0,
                           std::string* why = nullptr);

struct UltrafilterResult {
    std::vector<Mask> family; ///< F(M) = {I' : M \ I' in the ideal}
    int generator = -1;       ///< the principal point
};

/// The family {I' : M \ I' in the ideal} keyed to a prime M, with filter
/// axioms and the ultra dichotomy verified by enumeration and the principal
/// generator extracted. Throws std::invalid_argument (quoting the bad
/// split) when M is not prime.
UltrafilterResult ultrafilter_from_prime(const ProperIdeal& ideal, Mask m);

/// The same family without the primality gate; lets tests confirm that the
/// dichotomy fails exactly when M is not prime.
std::vector<Mask> filter_family(const ProperIdeal& ideal, Mask m);

/// Whether the family is an ultrafilter on the ground set: proper filter,
/// upward/intersection closed, and containing exactly one of each
/// complementary pair.
bool is_ultrafilter(int ground, const std::vector<Mask>& family);

} // namespace ultrachase
