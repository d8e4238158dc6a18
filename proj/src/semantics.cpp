#include "sigmapi/semantics.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "sigmapi/error.hpp"

namespace sigmapi {

std::string role_name(Role r) {
    switch (r) {
        case Role::Source:
            return "Source";
        case Role::Sink:
            return "Sink";
        case Role::Flow:
            return "Flow";
    }
    return "?";
}

namespace {

Role domain_role(const Protocol& p) {
    if (p.is_atom()) return Role::Flow;
    std::size_t sources = 0, sinks = 0, n = p.branches().size();
    for (const auto& b : p.branches()) {
        Role r = domain_role(b.proto);
        if (r == Role::Source) ++sources;
        if (r == Role::Sink) ++sinks;
    }
    if (p.is_sum()) {
        if (sources == n) return Role::Source;
        if (sinks == 1 && sources + 1 == n) return Role::Sink;
        return Role::Flow;
    }
    if (sources == 1 && sinks + 1 == n) return Role::Source;
    if (sinks == n) return Role::Sink;
    return Role::Flow;
}

}  // namespace

Role role(const Protocol& p, Side side) {
    Role r = domain_role(p);
    if (side == Side::Domain || r == Role::Flow) return r;
    return r == Role::Source ? Role::Sink : Role::Source;
}

// ---------------------------------------------------------------------------
// Behaviours

const std::vector<Event>& Behaviour::at(const std::string& ch) const {
    static const std::vector<Event> kEmpty;
    auto it = ch_.find(ch);
    return it == ch_.end() ? kEmpty : it->second;
}

std::size_t Behaviour::length() const {
    std::size_t n = 0;
    for (const auto& [c, es] : ch_) n += es.size();
    return n;
}

Behaviour Behaviour::append(const std::string& ch, Event e) const {
    Behaviour b = *this;
    b.ch_[ch].push_back(std::move(e));
    return b;
}

Behaviour Behaviour::prepend(const std::string& ch, Event e) const {
    Behaviour b = *this;
    auto& v = b.ch_[ch];
    v.insert(v.begin(), std::move(e));
    return b;
}

Behaviour Behaviour::drop_last(const std::string& ch) const {
    Behaviour b = *this;
    auto it = b.ch_.find(ch);
    if (it == b.ch_.end()) throw Error("drop_last: no events on " + ch);
    it->second.pop_back();
    if (it->second.empty()) b.ch_.erase(it);
    return b;
}

namespace {

bool is_prefix(const std::vector<Event>& a, const std::vector<Event>& b) {
    return a.size() <= b.size() && std::equal(a.begin(), a.end(), b.begin());
}

}  // namespace

bool Behaviour::prefix_of(const Behaviour& q) const {
    for (const auto& [c, es] : ch_)
        if (!is_prefix(es, q.at(c))) return false;
    return true;
}

bool Behaviour::extra_only(const Behaviour& q, bool output) const {
    if (!prefix_of(q)) return false;
    for (const auto& [c, es] : q.ch_) {
        const auto& mine = at(c);
        for (std::size_t i = mine.size(); i < es.size(); ++i)
            if (es[i].output != output) return false;
    }
    return true;
}

bool Behaviour::input_prefix_of(const Behaviour& q) const { return extra_only(q, false); }
bool Behaviour::output_prefix_of(const Behaviour& q) const { return extra_only(q, true); }

bool Behaviour::compatible(const Behaviour& q) const {
    for (const auto& [c, es] : ch_) {
        const auto& other = q.at(c);
        if (!is_prefix(es, other) && !is_prefix(other, es)) return false;
    }
    return true;
}

Behaviour Behaviour::join(const Behaviour& q) const {
    if (!compatible(q)) throw Error("join: behaviours are not compatible");
    Behaviour b = q;
    for (const auto& [c, es] : ch_)
        if (es.size() > b.at(c).size()) b.ch_[c] = es;
    return b;
}

Behaviour Behaviour::dual() const {
    Behaviour b = *this;
    for (auto& [c, es] : b.ch_)
        for (auto& e : es) e.output = !e.output;
    return b;
}

Behaviour Behaviour::without(const std::string& ch) const {
    Behaviour b = *this;
    b.ch_.erase(ch);
    return b;
}

Behaviour Behaviour::parallel(const Behaviour& q) const {
    Behaviour b = *this;
    for (const auto& [c, es] : q.ch_) {
        if (b.ch_.count(c)) throw Error("parallel: channel '" + c + "' occurs in both behaviours");
        b.ch_[c] = es;
    }
    return b;
}

Behaviour Behaviour::renamed(const std::map<std::string, std::string>& subst) const {
    Behaviour b;
    for (const auto& [c, es] : ch_) {
        auto it = subst.find(c);
        b.ch_[it == subst.end() ? c : it->second] = es;
    }
    return b;
}

namespace {

// The state reached by a legal step, or nullopt.
std::optional<Protocol> legal_step(const Protocol& x, Side side, const Event& e) {
    if (x.is_atom() || role(x, side) != Role::Flow) return std::nullopt;
    const Protocol* c = x.find(e.name);
    if (!c) return std::nullopt;
    bool out = is_output_state(x, side);
    if (e.output != out) return std::nullopt;
    Role rc = role(*c, side);
    if (out ? rc == Role::Sink : rc == Role::Source) return std::nullopt;
    return *c;
}

std::optional<Protocol> follow(const Protocol& p, Side side, const std::vector<Event>& es) {
    Protocol x = p;
    for (const auto& e : es) {
        auto n = legal_step(x, side, e);
        if (!n) return std::nullopt;
        x = *n;
    }
    return x;
}

std::optional<Sequent> try_frontier(const Behaviour& b, const Sequent& s) {
    Sequent f = s;
    for (const auto& [c, es] : b.channels()) {
        auto side = s.side_of(c);
        if (!side) return std::nullopt;
        auto x = follow(s.at(c), *side, es);
        if (!x) return std::nullopt;
        f = f.with(c, *x);
    }
    return f;
}

bool frontier_antecedent(const Sequent& f) {
    for (const auto& [c, p] : f.dom)
        if (role(p, Side::Domain) == Role::Source) return false;
    for (const auto& [c, p] : f.cod)
        if (role(p, Side::Codomain) == Role::Source) return false;
    return true;
}

bool frontier_saturated(const Sequent& f) {
    auto ok = [](const Protocol& p, Side side) {
        Role r = role(p, side);
        if (r == Role::Source) return false;
        return p.is_atom() || r == Role::Sink || (r == Role::Flow && is_output_state(p, side));
    };
    for (const auto& [c, p] : f.dom)
        if (!ok(p, Side::Domain)) return false;
    for (const auto& [c, p] : f.cod)
        if (!ok(p, Side::Codomain)) return false;
    return true;
}

bool has_source(const Sequent& s) { return !frontier_antecedent(s); }

}  // namespace

bool is_legal(const Behaviour& b, const Sequent& s) { return try_frontier(b, s).has_value(); }

Sequent frontier(const Behaviour& b, const Sequent& s) {
    auto f = try_frontier(b, s);
    if (!f) throw Error("frontier: behaviour is not legal for " + s.str());
    return *f;
}

bool is_antecedent(const Behaviour& b, const Sequent& s) {
    auto f = try_frontier(b, s);
    return f && frontier_antecedent(*f);
}

bool is_saturated(const Behaviour& b, const Sequent& s) {
    auto f = try_frontier(b, s);
    return f && frontier_saturated(*f);
}

std::vector<Event> legal_events(const Behaviour& b, const Sequent& s, const std::string& ch) {
    std::vector<Event> out;
    auto side = s.side_of(ch);
    if (!side) return out;
    auto x = follow(s.at(ch), *side, b.at(ch));
    if (!x || x->is_atom()) return out;
    bool o = is_output_state(*x, *side);
    for (const auto& br : x->branches()) {
        Event e{o, br.event};
        if (legal_step(*x, *side, e)) out.push_back(e);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Entailments

AtomicConclusion make_atomic(const WiringGraph& g, const std::vector<std::string>& dom,
                             const std::vector<std::string>& cod) {
    auto order = [](const std::vector<std::string>& chs) {
        std::vector<int> idx(chs.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = static_cast<int>(i);
        std::sort(idx.begin(), idx.end(), [&](int x, int y) { return chs[x] < chs[y]; });
        return idx;
    };
    std::vector<int> d = order(dom), c = order(cod);
    AtomicConclusion a;
    a.graph = g.permuted(d, c);
    for (int i : d) a.dom.push_back(dom[static_cast<std::size_t>(i)]);
    for (int i : c) a.cod.push_back(cod[static_cast<std::size_t>(i)]);
    return a;
}

Conclusion Conclusion::output(std::string ch, std::string ev) {
    Conclusion c;
    c.channel = std::move(ch);
    c.event = std::move(ev);
    return c;
}

Conclusion Conclusion::atomic_map(AtomicConclusion m) {
    Conclusion c;
    c.atomic = true;
    c.map = std::move(m);
    return c;
}

bool is_hanging(const Entailment& e, const Sequent& s) {
    if (e.conclusion.atomic) return false;
    auto side = s.side_of(e.conclusion.channel);
    if (!side) return false;
    auto x = follow(s.at(e.conclusion.channel), *side, e.antecedent.at(e.conclusion.channel));
    if (!x) return false;
    auto n = legal_step(*x, *side, Event{true, e.conclusion.event});
    return n && role(*n, *side) == Role::Source;
}

namespace {

void translate_rec(const Term& t, const Sequent& s, const Behaviour& pre, std::set<Entailment>& out) {
    if (has_source(s)) return;
    switch (t.kind()) {
        case Term::Kind::Identity: {
            const auto& [in, p] = *s.dom.begin();
            const auto& [o, q] = *s.cod.begin();
            out.insert(Entailment{pre, Conclusion::atomic_map(make_atomic(WiringGraph::identity(p.atom_name()),
                                                                          {in}, {o}))});
            return;
        }
        case Term::Kind::Atomic:
            out.insert(Entailment{
                pre, Conclusion::atomic_map(make_atomic(t.graph(), t.dom_channels(), t.cod_channels()))});
            return;
        case Term::Kind::Cotuple:
        case Term::Kind::Tuple:
            for (std::size_t i = 0; i < t.branch_count(); ++i)
                translate_rec(t.branch(i), child_sequent(t, s, i), pre.append(t.channel(), {false, t.branch_event(i)}),
                              out);
            return;
        case Term::Kind::Injection:
        case Term::Kind::Projection:
            out.insert(Entailment{pre, Conclusion::output(t.channel(), t.event())});
            translate_rec(t.body(), child_sequent(t, s, 0), pre.append(t.channel(), {true, t.event()}), out);
            return;
        case Term::Kind::Cut:
            throw Error("translate: term contains a cut; normalize it first");
    }
}

void legal_paths(const Protocol& x, Side side, std::vector<Event>& cur, std::vector<std::vector<Event>>& out) {
    out.push_back(cur);
    if (x.is_atom() || role(x, side) != Role::Flow) return;
    bool o = is_output_state(x, side);
    for (const auto& br : x.branches()) {
        Event e{o, br.event};
        auto n = legal_step(x, side, e);
        if (!n) continue;
        cur.push_back(e);
        legal_paths(*n, side, cur, out);
        cur.pop_back();
    }
}

// Output entailments indexed by (channel, event, antecedent history on that
// channel), for justification queries.
class Justifier {
public:
    explicit Justifier(const std::set<Entailment>& q) {
        for (const auto& e : q)
            if (!e.conclusion.atomic)
                index_[Key{e.conclusion.channel, e.conclusion.event, e.antecedent.at(e.conclusion.channel)}]
                    .push_back(&e.antecedent);
    }

    bool justified(const Behaviour& b) const {
        for (const auto& [c, es] : b.channels()) {
            for (std::size_t k = 0; k < es.size(); ++k) {
                if (!es[k].output) continue;
                Key key{c, es[k].name, std::vector<Event>(es.begin(), es.begin() + static_cast<long>(k))};
                auto it = index_.find(key);
                if (it == index_.end()) return false;
                bool found = false;
                for (const Behaviour* u : it->second)
                    if (u->prefix_of(b)) {
                        found = true;
                        break;
                    }
                if (!found) return false;
            }
        }
        return true;
    }

private:
    using Key = std::tuple<std::string, std::string, std::vector<Event>>;
    std::map<Key, std::vector<const Behaviour*>> index_;
};

std::vector<Behaviour> preantecedents_of(const Sequent& s, const std::set<Entailment>& q) {
    Justifier j(q);
    std::vector<Behaviour> out;
    for (auto& b : legal_behaviours(s))
        if (is_antecedent(b, s) && j.justified(b)) out.push_back(std::move(b));
    return out;
}

std::string show(const Entailment& e) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [c, es] : e.antecedent.channels()) {
        os << (first ? "" : " ") << c << ":<";
        for (std::size_t i = 0; i < es.size(); ++i) os << (i ? "," : "") << format_event(es[i]);
        os << ">";
        first = false;
    }
    os << (first ? "|- " : " |- ") << format_conclusion(e.conclusion);
    return os.str();
}

std::string show(const Behaviour& b) {
    if (b.empty()) return "the empty behaviour";
    std::string line = show(Entailment{b, Conclusion::output("", "")});
    return line.substr(0, line.rfind(" |- "));
}

// One application of a closure rule to every applicable premise; returns
// the conclusions not already present.
using RuleFn = std::function<void(const Sequent&, const std::set<Entailment>&, std::vector<Entailment>&)>;

void rule_ep4(const Sequent& s, const std::set<Entailment>& q, std::vector<Entailment>& add) {
    std::map<std::pair<std::string, std::vector<Event>>, std::vector<const Entailment*>> by_history;
    std::vector<const Entailment*> outs;
    for (const auto& e : q) {
        if (e.conclusion.atomic) continue;
        outs.push_back(&e);
        for (const auto& c : s.channels()) by_history[{c, e.antecedent.at(c)}].push_back(&e);
    }
    for (const Entailment* e1 : outs) {
        const std::string& a = e1->conclusion.channel;
        auto it = by_history.find({a, e1->antecedent.at(a)});
        if (it == by_history.end()) continue;
        for (const Entailment* e2 : it->second) {
            if (e2->conclusion.channel == a || !e1->antecedent.prefix_of(e2->antecedent)) continue;
            Behaviour nb = e2->antecedent.append(a, {true, e1->conclusion.event});
            if (!is_antecedent(nb, s)) continue;
            Entailment ne{nb, e2->conclusion};
            if (!q.count(ne)) add.push_back(ne);
        }
    }
}

void rule_ep5(const Sequent& s, const std::set<Entailment>& q, std::vector<Entailment>& add) {
    for (const auto& e : q) {
        if (e.conclusion.atomic) continue;
        for (const auto& c : s.channels()) {
            if (c == e.conclusion.channel) continue;
            for (const auto& ev : legal_events(e.antecedent, s, c)) {
                if (ev.output) continue;
                Entailment ne{e.antecedent.append(c, ev), e.conclusion};
                if (!q.count(ne)) add.push_back(ne);
            }
        }
    }
}

void rule_ep6(const Sequent&, const std::set<Entailment>& q, std::vector<Entailment>& add) {
    for (const auto& e : q) {
        if (e.conclusion.atomic) continue;
        for (const auto& [c, es] : e.antecedent.channels()) {
            if (c == e.conclusion.channel || !es.back().output) continue;
            Entailment ne{e.antecedent.drop_last(c), e.conclusion};
            if (!q.count(ne)) add.push_back(ne);
        }
    }
}

void rule_ep7(const Sequent& s, const std::set<Entailment>& q, std::vector<Entailment>& add) {
    Justifier j(q);
    std::set<Entailment> seen;
    for (const auto& e : q) {
        if (e.conclusion.atomic) continue;
        for (const auto& [c, es] : e.antecedent.channels()) {
            if (c == e.conclusion.channel || es.back().output) continue;
            Entailment ne{e.antecedent.drop_last(c), e.conclusion};
            if (q.count(ne) || seen.count(ne)) continue;
            bool all = true;
            for (const auto& ev : legal_events(ne.antecedent, s, c)) {
                if (ev.output || !q.count(Entailment{ne.antecedent.append(c, ev), e.conclusion})) {
                    all = false;
                    break;
                }
            }
            if (!all || !is_antecedent(ne.antecedent, s) || !j.justified(ne.antecedent)) continue;
            seen.insert(ne);
            add.push_back(ne);
        }
    }
}

const RuleFn kClosureRules[] = {rule_ep4, rule_ep5, rule_ep6, rule_ep7};

}  // namespace

EntailmentSet translate(const TypedTerm& t) {
    EntailmentSet q;
    q.sequent = t.sequent;
    translate_rec(t.term, t.sequent, Behaviour{}, q.entailments);
    return q;
}

std::vector<Behaviour> legal_behaviours(const Sequent& s, std::size_t max_count) {
    std::vector<std::pair<std::string, std::vector<std::vector<Event>>>> per;
    std::size_t total = 1;
    auto add_side = [&](const std::map<std::string, Protocol>& m, Side side) {
        for (const auto& [c, p] : m) {
            std::vector<Event> cur;
            std::vector<std::vector<Event>> paths;
            legal_paths(p, side, cur, paths);
            total *= paths.size();
            if (total > max_count)
                throw SizeError("more than " + std::to_string(max_count) + " legal behaviours over " + s.str());
            per.emplace_back(c, std::move(paths));
        }
    };
    add_side(s.dom, Side::Domain);
    add_side(s.cod, Side::Codomain);
    std::vector<Behaviour> out{Behaviour{}};
    for (const auto& [c, paths] : per) {
        std::vector<Behaviour> next;
        next.reserve(out.size() * paths.size());
        for (const auto& b : out)
            for (const auto& path : paths) {
                Behaviour nb = b;
                for (const auto& e : path) nb = nb.append(c, e);
                next.push_back(std::move(nb));
            }
        out = std::move(next);
    }
    return out;
}

bool is_justified(const Behaviour& b, const EntailmentSet& q) { return Justifier(q.entailments).justified(b); }

std::vector<Behaviour> enumerate_preantecedents(const EntailmentSet& q) {
    return preantecedents_of(q.sequent, q.entailments);
}

bool EPReport::ok() const {
    for (const auto& p : passed)
        if (p && !*p) return false;
    return true;
}

std::optional<int> EPReport::first_failure() const {
    for (int i = 0; i < 7; ++i)
        if (passed[static_cast<std::size_t>(i)] && !*passed[static_cast<std::size_t>(i)]) return i + 1;
    return std::nullopt;
}

namespace {

// Whether some member of set is an input prefix of b.
bool has_input_prefix_in(const Behaviour& b, const std::set<Behaviour>& set) {
    std::vector<std::pair<std::string, std::size_t>> runs;
    for (const auto& [c, es] : b.channels()) {
        std::size_t k = 0;
        while (k < es.size() && !es[es.size() - 1 - k].output) ++k;
        runs.emplace_back(c, k);
    }
    std::function<bool(std::size_t, const Behaviour&)> go = [&](std::size_t i, const Behaviour& cur) {
        if (i == runs.size()) return set.count(cur) > 0;
        Behaviour x = cur;
        for (std::size_t k = 0;; ++k) {
            if (go(i + 1, x)) return true;
            if (k == runs[i].second) return false;
            x = x.drop_last(runs[i].first);
        }
    };
    return go(0, b);
}

void check_first_three(const EntailmentSet& q, EPReport& r) {
    const Sequent& s = q.sequent;
    Justifier j(q.entailments);
    std::set<Behaviour> antecedents;
    r.passed[0] = true;
    for (const auto& e : q.entailments) {
        antecedents.insert(e.antecedent);
        if (is_hanging(e, s)) ++r.hanging;
        if (!j.justified(e.antecedent) && *r.passed[0]) {
            r.passed[0] = false;
            r.counterexample[0] = "unjustified antecedent: " + show(e);
        }
    }
    r.passed[1] = true;
    std::vector<const Entailment*> outs;
    for (const auto& e : q.entailments)
        if (!e.conclusion.atomic) outs.push_back(&e);
    for (std::size_t x = 0; x < outs.size() && *r.passed[1]; ++x)
        for (std::size_t y = x + 1; y < outs.size(); ++y) {
            const Entailment& a = *outs[x];
            const Entailment& b = *outs[y];
            const std::string& ch = a.conclusion.channel;
            if (b.conclusion.channel != ch || a.conclusion.event == b.conclusion.event) continue;
            if (a.antecedent.at(ch) != b.antecedent.at(ch) || !a.antecedent.compatible(b.antecedent)) continue;
            r.passed[1] = false;
            r.counterexample[1] = "conflicting outputs: " + show(a) + " and " + show(b);
            break;
        }
    r.passed[2] = true;
    for (const auto& b : preantecedents_of(s, q.entailments)) {
        if (!is_saturated(b, s) || has_input_prefix_in(b, antecedents)) continue;
        r.passed[2] = false;
        r.counterexample[2] = "saturated preantecedent without a response: " + show(b);
        break;
    }
}

}  // namespace

EPReport check_proto(const EntailmentSet& q) {
    EPReport r;
    check_first_three(q, r);
    return r;
}

EPReport check_extensional(const EntailmentSet& q) {
    EPReport r;
    check_first_three(q, r);
    for (int i = 0; i < 4; ++i) {
        std::vector<Entailment> add;
        kClosureRules[i](q.sequent, q.entailments, add);
        std::size_t k = static_cast<std::size_t>(3 + i);
        r.passed[k] = add.empty();
        if (!add.empty()) r.counterexample[k] = "missing " + show(add.front());
    }
    return r;
}

void certify(EntailmentSet& q) {
    EPReport r = check_extensional(q);
    q.verified = 0;
    for (std::size_t i = 0; i < 7; ++i)
        if (r.passed[i] && *r.passed[i]) q.verified |= 1u << i;
}

EntailmentSet close(const EntailmentSet& p) {
    EntailmentSet q;
    q.sequent = p.sequent;
    q.entailments = p.entailments;
    for (;;) {
        std::size_t before = q.entailments.size();
        for (const auto& rule : kClosureRules) {
            std::vector<Entailment> add;
            rule(q.sequent, q.entailments, add);
            q.entailments.insert(add.begin(), add.end());
        }
        if (q.entailments.size() == before) break;
    }
    return q;
}

EntailmentSet rename_ep(const EntailmentSet& q, const std::map<std::string, std::string>& subst) {
    auto map_ch = [&](const std::string& c) {
        auto it = subst.find(c);
        return it == subst.end() ? c : it->second;
    };
    EntailmentSet r;
    for (const auto& [c, p] : q.sequent.dom) r.sequent.dom.emplace(map_ch(c), p);
    for (const auto& [c, p] : q.sequent.cod) r.sequent.cod.emplace(map_ch(c), p);
    if (r.sequent.channel_count() != q.sequent.channel_count()) throw Error("rename_ep: renaming merges channels");
    for (const auto& e : q.entailments) {
        Entailment ne{e.antecedent.renamed(subst), e.conclusion};
        if (ne.conclusion.atomic) {
            std::vector<std::string> d, c;
            for (const auto& x : e.conclusion.map.dom) d.push_back(map_ch(x));
            for (const auto& x : e.conclusion.map.cod) c.push_back(map_ch(x));
            ne.conclusion.map = make_atomic(e.conclusion.map.graph, d, c);
        } else {
            ne.conclusion.channel = map_ch(e.conclusion.channel);
        }
        r.entailments.insert(std::move(ne));
    }
    return r;
}

EntailmentSet compose_ep(const EntailmentSet& f, const std::string& f_ch, const EntailmentSet& g,
                         const std::string& g_ch) {
    auto fo = f.sequent.cod.find(f_ch);
    if (fo == f.sequent.cod.end()) throw Error("compose_ep: '" + f_ch + "' is not a codomain channel of the left process");
    auto gi = g.sequent.dom.find(g_ch);
    if (gi == g.sequent.dom.end()) throw Error("compose_ep: '" + g_ch + "' is not a domain channel of the right process");
    if (fo->second != gi->second)
        throw Error("compose_ep: protocol mismatch " + fo->second.str() + " vs " + gi->second.str());

    std::set<std::string> used = f.sequent.channels();
    for (const auto& c : g.sequent.channels()) used.insert(c);
    std::map<std::string, std::string> subst;
    for (const auto& c : g.sequent.channels()) {
        if (c == g_ch || !f.sequent.has(c)) continue;
        std::string fresh = fresh_name(c, used);
        used.insert(fresh);
        subst.emplace(c, fresh);
    }
    subst[g_ch] = f_ch;
    EntailmentSet g2 = rename_ep(g, subst);
    const std::string& gamma = f_ch;

    EntailmentSet r;
    for (const auto& [c, p] : f.sequent.dom) r.sequent.dom.emplace(c, p);
    for (const auto& [c, p] : f.sequent.cod)
        if (c != gamma) r.sequent.cod.emplace(c, p);
    for (const auto& [c, p] : g2.sequent.dom)
        if (c != gamma) r.sequent.dom.emplace(c, p);
    for (const auto& [c, p] : g2.sequent.cod) r.sequent.cod.emplace(c, p);

    auto dual_history = [](const std::vector<Event>& es) {
        std::vector<Event> d = es;
        for (auto& e : d) e.output = !e.output;
        return d;
    };
    auto glue = [&](const Behaviour& p, const Behaviour& q) { return p.without(gamma).parallel(q.without(gamma)); };

    std::map<std::vector<Event>, std::vector<Behaviour>> fpre, gpre;
    for (auto& b : enumerate_preantecedents(f)) fpre[b.at(gamma)].push_back(std::move(b));
    for (auto& b : enumerate_preantecedents(g2)) gpre[b.at(gamma)].push_back(std::move(b));
    std::map<std::vector<Event>, std::vector<const Entailment*>> g_by_gamma;
    for (const auto& e : g2.entailments) g_by_gamma[e.antecedent.at(gamma)].push_back(&e);

    for (const auto& e : f.entailments) {
        std::vector<Event> want = dual_history(e.antecedent.at(gamma));
        if (e.conclusion.atomic) {
            auto it = g_by_gamma.find(want);
            if (it == g_by_gamma.end()) continue;
            for (const Entailment* ge : it->second) {
                if (!ge->conclusion.atomic) continue;
                const AtomicConclusion& a = e.conclusion.map;
                const AtomicConclusion& b = ge->conclusion.map;
                auto out = std::find(a.cod.begin(), a.cod.end(), gamma);
                auto in = std::find(b.dom.begin(), b.dom.end(), gamma);
                if (out == a.cod.end() || in == b.dom.end()) throw Error("compose_ep: atomic map does not reach " + gamma);
                std::size_t op = static_cast<std::size_t>(out - a.cod.begin());
                std::size_t ip = static_cast<std::size_t>(in - b.dom.begin());
                WiringGraph w = atom_compose(a.graph, op, b.graph, ip);
                std::vector<std::string> dom = a.dom, cod;
                for (std::size_t i = 0; i < b.dom.size(); ++i)
                    if (i != ip) dom.push_back(b.dom[i]);
                for (std::size_t i = 0; i < a.cod.size(); ++i)
                    if (i != op) cod.push_back(a.cod[i]);
                cod.insert(cod.end(), b.cod.begin(), b.cod.end());
                r.entailments.insert(
                    Entailment{glue(e.antecedent, ge->antecedent), Conclusion::atomic_map(make_atomic(w, dom, cod))});
            }
        } else if (e.conclusion.channel != gamma) {
            auto it = gpre.find(want);
            if (it == gpre.end()) continue;
            for (const auto& q : it->second) r.entailments.insert(Entailment{glue(e.antecedent, q), e.conclusion});
        }
    }
    for (const auto& e : g2.entailments) {
        if (e.conclusion.atomic || e.conclusion.channel == gamma) continue;
        auto it = fpre.find(dual_history(e.antecedent.at(gamma)));
        if (it == fpre.end()) continue;
        for (const auto& p : it->second) r.entailments.insert(Entailment{glue(p, e.antecedent), e.conclusion});
    }
    return r;
}

EntailmentSet identity_ep(const Protocol& p, const std::string& in_ch, const std::string& out_ch) {
    return close(translate(identity_term(p, in_ch, out_ch)));
}

namespace {

EntailmentSet combine(const Sequent& context, const std::string& ch, Side side,
                      const std::vector<std::pair<std::string, EntailmentSet>>& parts) {
    if (context.has(ch)) throw Error("sum/product: channel '" + ch + "' already in the context");
    std::vector<ProtocolBranch> branches;
    EntailmentSet r;
    for (const auto& [ev, part] : parts) {
        auto& m = side == Side::Domain ? part.sequent.dom : part.sequent.cod;
        auto it = m.find(ch);
        if (it == m.end() || !(part.sequent.without(ch) == context))
            throw Error("sum/product: branch '" + ev + "' is over " + part.sequent.str() + ", not the context " +
                        context.str() + " extended by " + ch);
        branches.push_back(ProtocolBranch{ev, it->second});
        for (const auto& e : part.entailments)
            r.entailments.insert(Entailment{e.antecedent.prepend(ch, {false, ev}), e.conclusion});
    }
    r.sequent = context;
    Protocol p = side == Side::Domain ? Protocol::sum(branches) : Protocol::product(branches);
    (side == Side::Domain ? r.sequent.dom : r.sequent.cod).emplace(ch, p);
    return r;
}

EntailmentSet output_then_identity(const Protocol& whole, const std::string& k, const std::string& in_ch,
                                   const std::string& out_ch, bool injection) {
    const Protocol* part = whole.find(k);
    if (!part) throw Error("no branch '" + k + "' in " + whole.str());
    EntailmentSet id = identity_ep(*part, in_ch, out_ch);
    const std::string& ch = injection ? out_ch : in_ch;
    EntailmentSet r;
    r.sequent = id.sequent.with(ch, whole);
    r.entailments.insert(Entailment{Behaviour{}, Conclusion::output(ch, k)});
    for (const auto& e : id.entailments)
        r.entailments.insert(Entailment{e.antecedent.prepend(ch, {true, k}), e.conclusion});
    return close(r);
}

}  // namespace

EntailmentSet sum_ep(const Sequent& context, const std::string& ch,
                     const std::vector<std::pair<std::string, EntailmentSet>>& parts) {
    return combine(context, ch, Side::Domain, parts);
}

EntailmentSet product_ep(const Sequent& context, const std::string& ch,
                         const std::vector<std::pair<std::string, EntailmentSet>>& parts) {
    return combine(context, ch, Side::Codomain, parts);
}

EntailmentSet injection_ep(const Protocol& sum, const std::string& k, const std::string& in_ch,
                           const std::string& out_ch) {
    if (!sum.is_sum()) throw Error("injection_ep: " + sum.str() + " is not a sum");
    return output_then_identity(sum, k, in_ch, out_ch, true);
}

EntailmentSet projection_ep(const Protocol& product, const std::string& k, const std::string& in_ch,
                            const std::string& out_ch) {
    if (!product.is_product()) throw Error("projection_ep: " + product.str() + " is not a product");
    return output_then_identity(product, k, in_ch, out_ch, false);
}

bool ep_equal(const EntailmentSet& a, const EntailmentSet& b, const std::map<std::string, std::string>& subst) {
    if (subst.empty()) return a.sequent == b.sequent && a.entailments == b.entailments;
    EntailmentSet rb = rename_ep(b, subst);
    return a.sequent == rb.sequent && a.entailments == rb.entailments;
}

// ---------------------------------------------------------------------------
// Text export

std::string format_event(const Event& e) { return (e.output ? "!" : "") + e.name; }

std::string format_conclusion(const Conclusion& c) {
    if (!c.atomic) return "!" + c.channel + "[" + c.event + "]";
    const AtomicConclusion& m = c.map;
    std::string head;
    if (m.graph.is_identity()) {
        head = "1_" + m.graph.dom()[0];
    } else {
        std::vector<int> dp, cp;
        head = m.graph.expression(dp, cp);
    }
    std::string out = head + "[";
    for (std::size_t i = 0; i < m.dom.size(); ++i) out += (i ? "," : "") + m.dom[i];
    out += "|";
    for (std::size_t i = 0; i < m.cod.size(); ++i) out += (i ? "," : "") + m.cod[i];
    return out + "]";
}

std::string format_entailment(const Entailment& e, const Sequent& s) {
    std::vector<std::string> cols;
    std::size_t ndom = s.dom.size();
    for (const auto& [c, p] : s.dom) cols.push_back(c);
    for (const auto& [c, p] : s.cod) cols.push_back(c);
    std::size_t height = 0;
    std::vector<std::size_t> width;
    for (const auto& c : cols) {
        std::size_t w = c.size();
        for (const auto& ev : e.antecedent.at(c)) w = std::max(w, format_event(ev).size());
        width.push_back(w);
        height = std::max(height, e.antecedent.at(c).size());
    }
    auto pad = [](const std::string& x, std::size_t w) { return x + std::string(w - x.size(), ' '); };
    auto line = [&](const std::function<std::string(std::size_t)>& cell, const char* sep, const char* mid) {
        std::string out;
        for (std::size_t i = 0; i < cols.size(); ++i) {
            if (i) out += (i == ndom) ? mid : sep;
            out += pad(cell(i), width[i]);
        }
        if (ndom == cols.size()) out += mid;
        if (ndom == 0) out = mid + out;
        while (!out.empty() && out.back() == ' ') out.pop_back();
        return out + "\n";
    };
    std::string out;
    for (std::size_t row = height; row-- > 0;) {
        out += line(
            [&](std::size_t i) {
                const auto& es = e.antecedent.at(cols[i]);
                return row < es.size() ? format_event(es[row]) : std::string();
            },
            " | ", " || ");
    }
    out += line([&](std::size_t i) { return std::string(width[i], '-'); }, "-+-", "-++-");
    out += line([&](std::size_t i) { return cols[i]; }, " | ", " || ");
    out += "|- " + format_conclusion(e.conclusion) + "\n";
    return out;
}

std::string format_entailment_line(const Entailment& e) { return show(e); }

Behaviour parse_behaviour(std::string_view text) {
    Behaviour b;
    std::istringstream in{std::string(text)};
    std::string item;
    while (in >> item) {
        auto colon = item.find(':');
        if (colon == std::string::npos || colon == 0) throw ParseError("expected channel:events in '" + item + "'", 0);
        std::string ch = item.substr(0, colon);
        std::string evs = item.substr(colon + 1);
        if (evs.size() >= 2 && evs.front() == '<' && evs.back() == '>') evs = evs.substr(1, evs.size() - 2);
        std::istringstream parts(evs);
        std::string ev;
        while (std::getline(parts, ev, ',')) {
            bool out = !ev.empty() && ev[0] == '!';
            if (out) ev = ev.substr(1);
            if (ev.empty()) throw ParseError("empty event on channel '" + ch + "'", 0);
            b = b.append(ch, Event{out, ev});
        }
    }
    return b;
}

std::string format_ep(const EntailmentSet& q) {
    std::string out = q.sequent.str() + "\n" + std::to_string(q.size()) + " entailments\n";
    for (const auto& e : q.entailments) out += "\n" + format_entailment(e, q.sequent);
    return out;
}

}  // namespace sigmapi
