#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "sigmapi/error.hpp"
#include "sigmapi/sequent.hpp"
#include "sigmapi/term.hpp"
#include "sigmapi/wiring.hpp"

namespace sigmapi {

// A term together with the sequent it proves.  Every subterm's sequent is
// determined by the root sequent (see child_sequent), so per-node
// annotations are computed on demand rather than stored.
struct TypedTerm {
    Term term;
    Sequent sequent;

    bool operator==(const TypedTerm& o) const { return sequent == o.sequent && term == o.term; }
};

// The sequent proved by child i of t when t proves s.
Sequent child_sequent(const Term& t, const Sequent& s, std::size_t i);

// The sequent proved by the subterm at path.
Sequent sequent_at(const TypedTerm& t, const std::vector<int>& path);

// Visit every node in pre-order with its path and sequent.
void for_each_node(const TypedTerm& t,
                   const std::function<void(const Term&, const Sequent&, const std::vector<int>&)>& fn);

// Type-check t against s.  Unbound atomic leaves receive their default
// binding and cuts without an explicit split have one inferred.  The
// returned term has every leaf bound and every split filled in.
TypedTerm check(const Term& t, const Sequent& s, const AtomTheory& th);

// Check an already-resolved term; returns the first error or nullopt.
std::optional<TypeError> typing_error(const TypedTerm& t, const AtomTheory& th);

// in_ch:p |- out_ch:p by the inductive identity construction.
TypedTerm identity_term(const Protocol& p, const std::string& in_ch, const std::string& out_ch);

struct Classification {
    bool has_source_unit = false;
    bool output_sequent = false;
    std::set<std::pair<std::string, std::string>> output_index;
};

Classification classify(const Sequent& s);

// The leaf proving an atomic sequent: the identity or a bound atomic map.
// Returns nullopt when the graph's boundary does not fit the sequent.
std::optional<Term> bind_leaf(const WiringGraph& g, const Sequent& s);

// Every cut-free term of s with at most max_nodes nodes, in a fixed order.
std::vector<TypedTerm> enumerate_cut_free(const Sequent& s, const AtomTheory& th, std::size_t max_nodes);

// Whether s has a cut-free proof whose leaves are identities or single
// generators.
bool provable(const Sequent& s, const AtomTheory& th);

}  // namespace sigmapi
