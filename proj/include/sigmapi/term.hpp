#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sigmapi/protocol.hpp"
#include "sigmapi/wiring.hpp"

namespace sigmapi {

class Term;

struct TermBranch {
    std::string event;
    std::shared_ptr<const Term> body;
};

// Channels of a cut's context that belong to the left premise.
struct CutSplit {
    std::vector<std::string> dom;  // sorted
    std::vector<std::string> cod;  // sorted
    auto operator<=>(const CutSplit&) const = default;
};

// Proof terms.  Values are immutable and share subterms.
//
//   Atomic      #f, a wiring graph bound to the channels of an atomic sequent
//   Identity    id on A |- A
//   Cotuple     ch{e => T, ...}, input on a domain Sum
//   Tuple       ch(e => T, ...), input on a codomain Product
//   Injection   ch![e](T), output into a codomain Sum
//   Projection  ch![e](T), output from a domain Product
//   Cut         cut ch:P [split] (T)(T)
class Term {
public:
    enum class Kind { Atomic, Identity, Cotuple, Tuple, Injection, Projection, Cut };

    static Term identity();
    // An unbound atomic leaf: channels are assigned during type checking.
    static Term atomic(WiringGraph g);
    // A bound leaf: dom_ch[i] names the channel on graph domain port i.
    static Term atomic(WiringGraph g, std::vector<std::string> dom_ch, std::vector<std::string> cod_ch);
    static Term cotuple(std::string ch, std::vector<std::pair<std::string, Term>> branches);
    static Term tuple(std::string ch, std::vector<std::pair<std::string, Term>> branches);
    static Term input(Side side, std::string ch, std::vector<std::pair<std::string, Term>> branches);
    static Term injection(std::string ch, std::string ev, Term body);
    static Term projection(std::string ch, std::string ev, Term body);
    static Term output(Side side, std::string ch, std::string ev, Term body);
    static Term cut(std::string ch, Protocol z, std::optional<CutSplit> split, Term left, Term right);

    Kind kind() const { return n_->kind; }
    bool is_leaf() const { return kind() == Kind::Atomic || kind() == Kind::Identity; }
    bool is_input() const { return kind() == Kind::Cotuple || kind() == Kind::Tuple; }
    bool is_output() const { return kind() == Kind::Injection || kind() == Kind::Projection; }
    bool is_cut() const { return kind() == Kind::Cut; }
    // A zero-branch cotuple or tuple.
    bool is_stub() const { return is_input() && n_->branches.empty(); }
    // Side of the channel this node acts on (inputs and outputs only).
    Side side() const;

    const std::string& channel() const { return n_->channel; }
    const std::string& event() const { return n_->event; }

    std::size_t branch_count() const { return n_->branches.size(); }
    const std::string& branch_event(std::size_t i) const { return n_->branches[i].event; }
    const Term& branch(std::size_t i) const { return *n_->branches[i].body; }
    const Term* find_branch(const std::string& ev) const;

    const Term& body() const { return *n_->children[0]; }
    const Term& left() const { return *n_->children[0]; }
    const Term& right() const { return *n_->children[1]; }
    const Protocol& cut_protocol() const { return n_->proto; }
    const std::optional<CutSplit>& split() const { return n_->split; }

    const WiringGraph& graph() const { return n_->graph; }
    bool bound() const { return n_->bound; }
    const std::vector<std::string>& dom_channels() const { return n_->dom_ch; }
    const std::vector<std::string>& cod_channels() const { return n_->cod_ch; }

    // Children in path order: branches by event, the body of an output,
    // left then right for a cut.
    std::size_t child_count() const;
    const Term& child(std::size_t i) const;
    Term with_children(std::vector<Term> children) const;
    Term with_split(CutSplit s) const;

    const Term& at(const std::vector<int>& path) const;
    Term replace_at(const std::vector<int>& path, const Term& sub) const;

    // Node count; an atomic leaf counts its generators (at least one).
    std::size_t size() const;
    std::size_t depth() const;
    std::size_t cut_count() const;
    bool has_cut() const { return cut_count() > 0; }

    // Channels occurring in the term, excluding the cut channels bound
    // inside it.
    std::set<std::string> mentioned_channels() const;
    // Every channel name occurring anywhere, bound or free.
    std::set<std::string> all_channels() const;

    std::strong_ordering operator<=>(const Term& other) const;
    bool operator==(const Term& other) const;

private:
    struct Node {
        Kind kind = Kind::Identity;
        std::string channel;
        std::string event;
        std::vector<TermBranch> branches;
        std::vector<std::shared_ptr<const Term>> children;
        Protocol proto;
        std::optional<CutSplit> split;
        WiringGraph graph;
        bool bound = false;
        std::vector<std::string> dom_ch, cod_ch;
    };
    explicit Term(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;
};

// Equality up to the names of cut channels.
bool alpha_equal(const Term& a, const Term& b);

// Simultaneous renaming of free channels.  Cut channels that would capture
// a new name are freshened.
Term rename(const Term& t, const std::map<std::string, std::string>& subst);

// Put a bound atomic leaf in normal form: channels sorted on each side and
// the graph's ports permuted to match.
Term normalize_leaf(const WiringGraph& g, const std::vector<std::string>& dom_ch,
                    const std::vector<std::string>& cod_ch);

}  // namespace sigmapi
