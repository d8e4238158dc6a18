#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigmapi/rewriter.hpp"

namespace sigmapi {

// A term on which two rewrites overlap, with the step scripts that take
// each side to a common term.
//
// A script is a space-separated list of tokens:
//   N      reduction N at every outermost cut where it applies
//   N@p    reduction or conversion N at path p, dot separated, "" for root
//   N@L    conversion N at the left premise of every outermost cut
//   N@R    conversion N at the right premise of every outermost cut
struct CriticalPair {
    std::string name;
    std::string theory;
    std::string sequent;
    std::string peak;
    std::string left;
    std::string right;
};

// Instances of every overlap between a reduction and a reduction or a
// conversion, each with one-branch and two-branch families.
const std::vector<CriticalPair>& critical_pairs();

// Run a step script.  Throws Error when a token does not apply anywhere.
TypedTerm run_script(const TypedTerm& t, std::string_view script);

struct JoinResult {
    bool joined = false;
    std::optional<TypedTerm> left;
    std::optional<TypedTerm> right;
    std::string error;
};

// Parse the peak, run both scripts and compare the results structurally.
JoinResult join(const CriticalPair& cp);

}  // namespace sigmapi
