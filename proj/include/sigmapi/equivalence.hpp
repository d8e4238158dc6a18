#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sigmapi/term.hpp"
#include "sigmapi/typing.hpp"

namespace sigmapi {

// The branch ev of the input on ch, with every constructor above it pushed
// through.  t must be cut-free and ch an input channel of t's sequent.
TypedTerm input_residual(const TypedTerm& t, const std::string& ch, const std::string& ev);

// t' such that t converts to the output ev on ch followed by t', or nullopt.
std::optional<TypedTerm> pull_output(const TypedTerm& t, const std::string& ch, const std::string& ev);

struct EqualityWitness {
    std::vector<int> path;  // node of t1 where the comparison failed
    std::string channel;
    std::string event;
    std::string reason;
};

struct EqualityResult {
    bool equal = true;
    std::optional<EqualityWitness> witness;
    explicit operator bool() const { return equal; }
};

// Equality of cut-free terms up to the permuting conversions.
EqualityResult decide_equal_explained(const TypedTerm& t1, const TypedTerm& t2);
bool decide_equal(const TypedTerm& t1, const TypedTerm& t2);

// A representative of t's conversion class; equal terms map to the same one.
TypedTerm canonicalize(const TypedTerm& t);

}  // namespace sigmapi
