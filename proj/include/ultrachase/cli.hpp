#pragma once

#include "ultrachase/serialize.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ultrachase::cli {

/// One operator problem: base prime (presentation only), the operator with
/// its weight families, and optional command parameters.
struct SpecFile {
    int base = 2;
    OperatorDesc op;
    std::optional<Rational> r_exp;
    std::optional<Index> max_steps;
};

SpecFile parse_spec(const Json& j);
Json spec_to_json(const SpecFile& spec);

struct IdealSpec {
    int ground = 0;
    std::vector<Mask> generators;
};

IdealSpec parse_ideal_spec(const Json& j);

/// FNV-1a 64-bit hex digest; reports carry it so a result can be matched
/// to its exact input.
std::string digest(const std::string& payload);

/// Full command-line entry point (argv without the program name). Writes
/// the JSON report to `out` and diagnostics plus timing to `err`. Exit
/// status: 0 all checks passed, 1 some check failed, 2 usage/parse/
/// validation error.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace ultrachase::cli
