#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sigmapi/protocol.hpp"
#include "sigmapi/sequent.hpp"
#include "sigmapi/typing.hpp"
#include "sigmapi/wiring.hpp"

namespace sigmapi {

enum class Role { Source, Sink, Flow };

std::string role_name(Role r);

Role role(const Protocol& p, Side side);

struct Event {
    bool output = false;
    std::string name;
    auto operator<=>(const Event&) const = default;
};

// Per-channel event histories.  Channels with an empty history are not
// stored, so two behaviours are equal exactly when their maps are.
class Behaviour {
public:
    Behaviour() = default;

    const std::vector<Event>& at(const std::string& ch) const;
    const std::map<std::string, std::vector<Event>>& channels() const { return ch_; }
    bool empty() const { return ch_.empty(); }
    std::size_t length() const;

    Behaviour append(const std::string& ch, Event e) const;
    Behaviour prepend(const std::string& ch, Event e) const;
    // The behaviour with the last event on ch dropped.
    Behaviour drop_last(const std::string& ch) const;

    bool prefix_of(const Behaviour& q) const;
    // Prefix of q where every extra event of q is an input (resp. output).
    bool input_prefix_of(const Behaviour& q) const;
    bool output_prefix_of(const Behaviour& q) const;
    bool compatible(const Behaviour& q) const;
    Behaviour join(const Behaviour& q) const;

    Behaviour dual() const;
    Behaviour without(const std::string& ch) const;
    // Union of two behaviours over disjoint channels.
    Behaviour parallel(const Behaviour& q) const;
    Behaviour renamed(const std::map<std::string, std::string>& subst) const;

    auto operator<=>(const Behaviour&) const = default;

private:
    bool extra_only(const Behaviour& q, bool output) const;
    std::map<std::string, std::vector<Event>> ch_;
};

// Whether every step of b is a legal transition with the direction fixed by
// the channel's side and state.
bool is_legal(const Behaviour& b, const Sequent& s);
Sequent frontier(const Behaviour& b, const Sequent& s);
bool is_antecedent(const Behaviour& b, const Sequent& s);
bool is_saturated(const Behaviour& b, const Sequent& s);

// Legal events available on ch after b, each tagged with its direction.
std::vector<Event> legal_events(const Behaviour& b, const Sequent& s, const std::string& ch);

// An atomic morphism on named channels.  Channels are sorted per side with
// the graph's ports permuted to match.
struct AtomicConclusion {
    WiringGraph graph;
    std::vector<std::string> dom, cod;
    auto operator<=>(const AtomicConclusion&) const = default;
};

AtomicConclusion make_atomic(const WiringGraph& g, const std::vector<std::string>& dom,
                             const std::vector<std::string>& cod);

struct Conclusion {
    bool atomic = false;
    std::string channel;  // output conclusions
    std::string event;
    AtomicConclusion map;  // atomic conclusions

    static Conclusion output(std::string ch, std::string ev);
    static Conclusion atomic_map(AtomicConclusion m);
    auto operator<=>(const Conclusion&) const = default;
};

struct Entailment {
    Behaviour antecedent;
    Conclusion conclusion;
    auto operator<=>(const Entailment&) const = default;
};

struct EntailmentSet {
    Sequent sequent;
    std::set<Entailment> entailments;
    // Bit i set when EP-(i+1) has been checked and holds.
    unsigned verified = 0;

    std::size_t size() const { return entailments.size(); }
    bool contains(const Entailment& e) const { return entailments.count(e) > 0; }
};

// An output entailment whose conclusion enters a source-role state.
bool is_hanging(const Entailment& e, const Sequent& s);

// Translation of a cut-free term into a set of entailments.
EntailmentSet translate(const TypedTerm& t);

// Every legal behaviour of s.  Throws SizeError above max_count.
std::vector<Behaviour> legal_behaviours(const Sequent& s, std::size_t max_count = 200000);

bool is_justified(const Behaviour& b, const EntailmentSet& q);
std::vector<Behaviour> enumerate_preantecedents(const EntailmentSet& q);

struct EPReport {
    // Index i describes EP-(i+1); nullopt when unchecked.
    std::array<std::optional<bool>, 7> passed{};
    std::array<std::string, 7> counterexample{};
    std::size_t hanging = 0;

    bool ok() const;
    std::optional<int> first_failure() const;
};

EPReport check_proto(const EntailmentSet& q);
EPReport check_extensional(const EntailmentSet& q);
// Run check_extensional and record the passing rules in q.verified.
void certify(EntailmentSet& q);

// Least superset closed under EP-4 to EP-7.
EntailmentSet close(const EntailmentSet& p);

EntailmentSet rename_ep(const EntailmentSet& q, const std::map<std::string, std::string>& subst);

// Composite on f's codomain channel f_ch and g's domain channel g_ch.  g's
// other channels are freshened away from f's and g_ch is renamed to f_ch.
EntailmentSet compose_ep(const EntailmentSet& f, const std::string& f_ch, const EntailmentSet& g,
                         const std::string& g_ch);

// The identity process on in_ch:p |- out_ch:p.
EntailmentSet identity_ep(const Protocol& p, const std::string& in_ch = "in", const std::string& out_ch = "out");

// Sum on a domain channel (product: codomain channel) of parts over
// context extended by ch:X_i.
EntailmentSet sum_ep(const Sequent& context, const std::string& ch,
                     const std::vector<std::pair<std::string, EntailmentSet>>& parts);
EntailmentSet product_ep(const Sequent& context, const std::string& ch,
                         const std::vector<std::pair<std::string, EntailmentSet>>& parts);

// in_ch:X_k |- out_ch:{...} and in_ch:(...) |- out_ch:X_k respectively.
EntailmentSet injection_ep(const Protocol& sum, const std::string& k, const std::string& in_ch = "in",
                           const std::string& out_ch = "out");
EntailmentSet projection_ep(const Protocol& product, const std::string& k, const std::string& in_ch = "in",
                            const std::string& out_ch = "out");

// Equal sequents and equal entailments, after applying subst to b.
bool ep_equal(const EntailmentSet& a, const EntailmentSet& b, const std::map<std::string, std::string>& subst = {});

// Parse "alpha:c,!k beta:!c,d", '!' marking outputs.  Angle brackets
// around a history are accepted.
Behaviour parse_behaviour(std::string_view text);

std::string format_event(const Event& e);
std::string format_conclusion(const Conclusion& c);
// One record per entailment; the antecedent as a column table read bottom-up.
std::string format_entailment(const Entailment& e, const Sequent& s);
std::string format_ep(const EntailmentSet& q);
// Single line form: "alpha:<c,!k> beta:<!c,d> |- !alpha[l]".
std::string format_entailment_line(const Entailment& e);

}  // namespace sigmapi
