#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sigmapi/term.hpp"
#include "sigmapi/typing.hpp"

namespace sigmapi {

// Multiset of cut heights, kept sorted in descending order.
using CutBag = std::vector<std::size_t>;

// Rule identifiers.  Reductions are 1..12 plus kEssential for the cut of two
// atomic leaves; conversions are 13..22.
inline constexpr int kEssential = 0;

enum class Strategy { LeftmostInnermost, RightmostOutermost };

struct Step {
    TypedTerm term;
    int rule = 0;
    std::vector<int> path;
};

// Simultaneous renaming of free channels in a typed term.  Throws Error when
// a value collides with a channel that is not itself renamed.
TypedTerm rename_channels(const TypedTerm& t, const std::map<std::string, std::string>& subst);

// Cut f on its codomain channel out_ch against g on its domain channel in_ch.
// g's other channels are freshened away from f's, and the cut channel takes
// the name out_ch.
TypedTerm cut(const TypedTerm& f, const std::string& out_ch, const TypedTerm& g, const std::string& in_ch);

// The rule that applies to the cut at the root of t, or nullopt.
std::optional<int> redex_rule(const Term& t);

// True when reduction rule (kEssential or 1..12) matches the cut at the
// root of t, whatever its priority.
bool rule_applies(const Term& t, int rule);

// Rewrite the cut at path by rule.  Throws Error when the rule does not apply.
TypedTerm apply_rule(const TypedTerm& t, const std::vector<int>& path, int rule);

// One reduction under the given strategy, or nullopt for a cut-free term.
std::optional<Step> step(const TypedTerm& t, Strategy strategy = Strategy::LeftmostInnermost);

struct NormalizeOptions {
    Strategy strategy = Strategy::LeftmostInnermost;
    // Check typing and the cut-bag decrease after every step.  Requires
    // theory when the term contains generators.
    bool verify = false;
    const AtomTheory* theory = nullptr;
    std::function<void(const Step&)> on_step;
};

TypedTerm normalize(const TypedTerm& t, const NormalizeOptions& opts = {});

struct Measures {
    std::size_t height = 0;
    CutBag cut_bag;
};

std::size_t height(const Term& t);
Measures measures(const Term& t);

// Dershowitz-Manna order on finite multisets of naturals.
bool multiset_less(CutBag a, CutBag b);

// Selection data for conversions that introduce structure around a stub:
// the channel to wrap with and, for output wrappers, the event.
struct ConversionAux {
    std::string channel;
    std::string event;
};

// Apply conversion rule (13..22) at path.  Without aux the rule is applied
// in whichever direction the node matches; with aux the node must be a stub
// and is wrapped.  Throws Error on a pattern mismatch.
TypedTerm convert(const TypedTerm& t, int rule, const std::vector<int>& path,
                  const std::optional<ConversionAux>& aux = std::nullopt);

struct Conversion {
    TypedTerm term;
    int rule = 0;
    std::vector<int> path;
    std::optional<ConversionAux> aux;
};

// Every single conversion step from t.
std::vector<Conversion> conversion_neighbours(const TypedTerm& t);

// Terms reachable from t by conversions, exploring only terms of at most
// max_size nodes.  Throws SizeError once more than max_terms are found.
std::vector<TypedTerm> conversion_closure(const TypedTerm& t, std::size_t max_size, std::size_t max_terms = 200000);

}  // namespace sigmapi
