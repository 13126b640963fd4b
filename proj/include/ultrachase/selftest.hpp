#pragma once

#include "ultrachase/serialize.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace ultrachase {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::uint64_t cases = 0; ///< individual checks evaluated
    std::string detail;      ///< first failure, empty on pass
};

struct SelftestOptions {
    std::uint64_t seed = 7;
    std::string filter; ///< substring of the criterion name; empty = all
};

/// Runs the full property suite: exact valuation laws, operator-norm
/// attainment, witness soundness, strict norm reduction, adversary
/// transcript fidelity, the inclusion/counterexample dichotomy, the finite
/// ideal analogs, principal-region equivalence, and rerun determinism.
std::vector<CriterionResult> run_selftest(const SelftestOptions& options);

Json to_json(const std::vector<CriterionResult>& results);

} // namespace ultrachase
