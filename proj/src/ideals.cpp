#include "ultrachase/ideals.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <stdexcept>

namespace ultrachase {

namespace {

void require_ground(int ground, int cap = kMaxGround) {
    if (ground < 1 || ground > cap) {
        throw std::invalid_argument("ground size must lie in [1," + std::to_string(cap) +
                                    "], got " + std::to_string(ground));
    }
}

bool is_submask(Mask s, Mask m) { return (s & m) == s; }

} // namespace

Mask full_mask(int ground) {
    require_ground(ground);
    return static_cast<Mask>((1u << ground) - 1);
}

int mask_popcount(Mask m) { return std::popcount(m); }

std::string mask_to_string(Mask m) {
    std::string out = "{";
    bool first = true;
    for (int b = 0; b < kMaxGround; ++b) {
        if (m & (1u << b)) {
            if (!first) out += ",";
            out += std::to_string(b);
            first = false;
        }
    }
    return out + "}";
}

SetSystem::SetSystem(int ground_size, std::vector<Mask> members) : ground(ground_size) {
    require_ground(ground_size);
    const Mask full = full_mask(ground_size);
    for (Mask m : members) {
        if (!is_submask(m, full)) {
            throw std::invalid_argument("SetSystem: member " + mask_to_string(m) +
                                        " leaves the ground set");
        }
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    family = std::move(members);
}

bool SetSystem::contains(Mask m) const {
    return std::binary_search(family.begin(), family.end(), m);
}

ProperIdeal::ProperIdeal(int ground_size, const std::vector<Mask>& members)
    : ground_(ground_size) {
    require_ground(ground_size);
    const Mask full = full_mask(ground_size);
    member_.assign(static_cast<std::size_t>(full) + 1, false);
    for (Mask m : members) {
        if (!is_submask(m, full)) {
            throw std::invalid_argument("ProperIdeal: member " + mask_to_string(m) +
                                        " leaves the ground set");
        }
        member_[m] = true;
    }
    if (!member_[0]) throw std::invalid_argument("ProperIdeal: the empty set must belong");
    if (member_[full]) throw std::invalid_argument("ProperIdeal: the full set must not belong");
    for (Mask m = 0; m <= full; ++m) {
        if (!member_[m]) continue;
        for (int b = 0; b < ground_; ++b) {
            if ((m & (1u << b)) && !member_[m & ~(1u << b)]) {
                throw std::invalid_argument("ProperIdeal: not downward closed at " +
                                            mask_to_string(m));
            }
        }
    }
    // With downward closure verified, union closure is equivalent to the
    // union of all members being a member.
    Mask everything = 0;
    for (Mask m = 0; m <= full; ++m) {
        if (member_[m]) everything |= m;
    }
    if (!member_[everything]) {
        throw std::invalid_argument("ProperIdeal: not union closed (union of members " +
                                    mask_to_string(everything) + " missing)");
    }
}

ProperIdeal ProperIdeal::closure(int ground_size, const std::vector<Mask>& generators) {
    require_ground(ground_size);
    // The downward/union closure of any generator family is the power set
    // of the union of the generators.
    Mask u = 0;
    const Mask full = full_mask(ground_size);
    for (Mask g : generators) {
        if (!is_submask(g, full)) {
            throw std::invalid_argument("ProperIdeal::closure: generator " + mask_to_string(g) +
                                        " leaves the ground set");
        }
        u |= g;
    }
    std::vector<Mask> members;
    for (Mask s = u;; s = (s - 1) & u) {
        members.push_back(s);
        if (s == 0) break;
    }
    return ProperIdeal(ground_size, members);
}

std::vector<Mask> ProperIdeal::members() const {
    std::vector<Mask> out;
    for (Mask m = 0; m < member_.size(); ++m) {
        if (member_[m]) out.push_back(m);
    }
    return out;
}

bool DConditionsReport::all_hold() const {
    return std::all_of(conditions.begin(), conditions.end(),
                       [](const ConditionReport& c) { return c.holds; });
}

namespace {

/// All pairwise disjoint families of distinct subsets of the ground set,
/// members listed ascending. The empty set intersects nothing, so it may
/// appear as a member like any other.
void for_each_disjoint_family(int ground, const std::function<void(const std::vector<Mask>&)>& fn) {
    const Mask full = full_mask(ground);
    std::vector<Mask> current;
    std::function<void(Mask)> rec = [&](Mask least) {
        fn(current);
        for (Mask m = least; m <= full; ++m) {
            bool disjoint = true;
            for (Mask c : current) disjoint = disjoint && ((c & m) == 0);
            if (!disjoint) continue;
            current.push_back(m);
            rec(m + 1);
            current.pop_back();
        }
    };
    rec(0);
}

} // namespace

DConditionsReport check_D_conditions(const SetSystem& sys) {
    require_ground(sys.ground, 5);
    const Mask full = full_mask(sys.ground);
    DConditionsReport report;
    for (int k = 0; k < 5; ++k) report.conditions[k] = ConditionReport{k + 1, true, ""};

    if (sys.contains(full)) {
        report.conditions[0] = {1, false, "the ground set " + mask_to_string(full) + " belongs"};
    }
    for (Mask m = 0; m <= full; ++m) {
        // On a finite ground set every subset is finite, so (2) demands all
        // of them.
        if (!sys.contains(m)) {
            report.conditions[1] = {2, false,
                                    "finite subset " + mask_to_string(m) + " is excluded"};
            break;
        }
    }
    for (Mask a : sys.family) {
        for (Mask b : sys.family) {
            if (!sys.contains(a | b)) {
                report.conditions[2] = {3, false, "union of " + mask_to_string(a) + " and " +
                                                      mask_to_string(b) + " is excluded"};
                goto done3;
            }
        }
    }
done3:
    for (Mask a : sys.family) {
        for (Mask s = a;; s = (s - 1) & a) {
            if (!sys.contains(s)) {
                report.conditions[3] = {4, false, "subset " + mask_to_string(s) + " of member " +
                                                      mask_to_string(a) + " is excluded"};
                goto done4;
            }
            if (s == 0) break;
        }
    }
done4:
    for_each_disjoint_family(sys.ground, [&](const std::vector<Mask>& u) {
        if (!report.conditions[4].holds) return;
        // Need some cofinite-in-U subfamily whose union lies in the family;
        // equivalently some subfamily T = U \ U0 with union(T) a member.
        const std::size_t parts = u.size();
        for (std::uint32_t pick = 0; pick < (1u << parts); ++pick) {
            Mask un = 0;
            for (std::size_t k = 0; k < parts; ++k) {
                if (pick & (1u << k)) un |= u[k];
            }
            if (sys.contains(un)) return;
        }
        std::string w = "pairwise disjoint family {";
        for (std::size_t k = 0; k < parts; ++k) w += (k ? "," : "") + mask_to_string(u[k]);
        report.conditions[4] = {5, false, w + "} has no removable prefix"};
    });
    return report;
}

DEmptyCertificate finite_D_empty(int n) {
    require_ground(n);
    DEmptyCertificate cert;
    cert.ground = n;
    cert.explanation = "on a finite ground set condition (2) forces every subset, including the "
                       "full set, into the family, contradicting condition (1)";
    if (n > 3) return cert;

    cert.by_enumeration = true;
    const Mask full = full_mask(n);
    const std::uint64_t family_count = 1ull << (static_cast<std::uint64_t>(full) + 1);
    for (std::uint64_t bits = 0; bits < family_count; ++bits) {
        std::vector<Mask> members;
        for (Mask m = 0; m <= full; ++m) {
            if (bits & (1ull << m)) members.push_back(m);
        }
        if (check_D_conditions(SetSystem(n, members)).all_hold()) {
            throw std::logic_error("finite_D_empty: a family passed all five conditions");
        }
    }
    cert.families_checked = family_count;
    return cert;
}

std::optional<Mask> find_bad_split(const ProperIdeal& ideal, Mask m) {
    if (ideal.contains(m)) return std::nullopt;
    for (Mask s = 0; s <= m; ++s) {
        if (!is_submask(s, m)) continue;
        if (!ideal.contains(s) && !ideal.contains(m & ~s)) return s;
    }
    return std::nullopt;
}

bool is_prime(const ProperIdeal& ideal, Mask m) {
    return !ideal.contains(m) && !find_bad_split(ideal, m).has_value();
}

std::vector<Mask> prime_set_bruteforce(const ProperIdeal& ideal) {
    const Mask full = full_mask(ideal.ground());
    std::vector<Mask> out;
    for (Mask m = 0; m <= full; ++m) {
        bool prime = !ideal.contains(m);
        for (Mask s = m;; s = (s - 1) & m) {
            prime = prime && (ideal.contains(s) || ideal.contains(m & ~s));
            if (s == 0) break;
        }
        if (prime) out.push_back(m);
    }
    return out;
}

std::vector<Mask> prime_set_by_splitting(const ProperIdeal& ideal) {
    const Mask full = full_mask(ideal.ground());
    std::vector<Mask> out;
    for (Mask m = 0; m <= full; ++m) {
        if (is_prime(ideal, m)) out.push_back(m);
    }
    return out;
}

Mask find_prime(const ProperIdeal& ideal) {
    const Mask full = full_mask(ideal.ground());
    for (Mask m = 0; m <= full; ++m) {
        if (is_prime(ideal, m)) return m;
    }
    throw std::logic_error("find_prime: a proper ideal always has a prime non-member");
}

Mask find_prime_descent(const ProperIdeal& ideal) {
    Mask s = full_mask(ideal.ground());
    while (auto split = find_bad_split(ideal, s)) {
        // Both halves of a bad split are non-members; keep descending on
        // the complement half, which stays strictly smaller.
        s &= ~*split;
    }
    if (ideal.contains(s)) {
        throw std::logic_error("find_prime_descent: descent landed inside the ideal");
    }
    return s;
}

std::vector<Mask> max_disjoint_system(const ProperIdeal& ideal) {
    const Mask full = full_mask(ideal.ground());
    std::vector<Mask> chosen;
    Mask used = 0;
    for (;;) {
        std::optional<Mask> next;
        for (Mask m = 0; m <= full; ++m) {
            if ((m & used) == 0 && is_prime(ideal, m)) {
                next = m;
                break;
            }
        }
        if (!next) break;
        chosen.push_back(*next);
        used |= *next;
    }
    return chosen;
}

bool check_disjoint_system(const ProperIdeal& ideal, const std::vector<Mask>& u0,
                           std::string* why) {
    auto fail = [&](std::string reason) {
        if (why) *why = std::move(reason);
        return false;
    };
    Mask used = 0;
    for (Mask m : u0) {
        if (m & used) return fail("members are not pairwise disjoint at " + mask_to_string(m));
        used |= m;
        if (!is_prime(ideal, m)) return fail("member " + mask_to_string(m) + " is not prime");
    }
    if (static_cast<int>(u0.size()) > ideal.ground()) {
        return fail("disjoint family larger than the ground set");
    }
    const Mask comp = full_mask(ideal.ground()) & ~used;
    for (Mask s = comp;; s = (s - 1) & comp) {
        if (!ideal.contains(s)) {
            return fail("subset " + mask_to_string(s) + " of the complement is not in the ideal");
        }
        if (s == 0) break;
    }
    return true;
}

std::vector<Mask> filter_family(const ProperIdeal& ideal, Mask m) {
    const Mask full = full_mask(ideal.ground());
    std::vector<Mask> out;
    for (Mask s = 0; s <= full; ++s) {
        if (ideal.contains(m & ~s)) out.push_back(s);
    }
    return out;
}

bool is_ultrafilter(int ground, const std::vector<Mask>& family) {
    const Mask full = full_mask(ground);
    std::vector<bool> in(static_cast<std::size_t>(full) + 1, false);
    for (Mask m : family) {
        if (!is_submask(m, full)) return false;
        in[m] = true;
    }
    if (in[0]) return false;
    for (Mask a = 0; a <= full; ++a) {
        if (!in[a]) continue;
        for (Mask b = a; b <= full; ++b) {
            if (!in[b]) continue;
            if (!in[a & b]) return false; // intersection closure
        }
        for (Mask b = 0; b <= full; ++b) {
            if (is_submask(a, b) && !in[b]) return false; // upward closure
        }
    }
    for (Mask a = 0; a <= full; ++a) {
        if (in[a] == in[full & ~a]) return false; // exactly one of each pair
    }
    return true;
}

UltrafilterResult ultrafilter_from_prime(const ProperIdeal& ideal, Mask m) {
    if (ideal.contains(m)) {
        throw std::invalid_argument("ultrafilter_from_prime: " + mask_to_string(m) +
                                    " is a member of the ideal, hence not prime");
    }
    if (auto split = find_bad_split(ideal, m)) {
        throw std::invalid_argument(
            "ultrafilter_from_prime: " + mask_to_string(m) + " is not prime; bad split I' = " +
            mask_to_string(*split) + " with M\\I' = " + mask_to_string(m & ~*split) +
            " both outside the ideal");
    }
    UltrafilterResult result;
    result.family = filter_family(ideal, m);
    if (!is_ultrafilter(ideal.ground(), result.family)) {
        throw std::logic_error("ultrafilter_from_prime: family from a prime must be ultra");
    }
    for (int g = 0; g < ideal.ground(); ++g) {
        if (ideal.contains(m & ~(1u << g))) {
            // Unique: two such generators would put M itself in the ideal
            // by union closure.
            result.generator = g;
            break;
        }
    }
    if (result.generator < 0) {
        throw std::logic_error("ultrafilter_from_prime: no principal generator found");
    }
    return result;
}

} // namespace ultrachase
