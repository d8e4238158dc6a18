#include "sigmapi/equivalence.hpp"

#include "sigmapi/error.hpp"

namespace sigmapi {

namespace {

void require_cut_free(const Term& t, const char* what) {
    if (t.has_cut()) throw Error(std::string(what) + ": term contains a cut; normalize it first");
}

Term residual(const Term& t, const Sequent& s, const std::string& ch, const std::string& ev) {
    if (t.is_input() && t.channel() == ch) {
        const Term* b = t.find_branch(ev);
        if (!b) throw Error("input_residual: branch '" + ev + "' missing on " + ch);
        return *b;
    }
    if (t.is_input()) {
        std::vector<std::pair<std::string, Term>> bs;
        for (std::size_t i = 0; i < t.branch_count(); ++i)
            bs.emplace_back(t.branch_event(i), residual(t.branch(i), child_sequent(t, s, i), ch, ev));
        return Term::input(t.side(), t.channel(), std::move(bs));
    }
    if (t.is_output())
        return Term::output(t.side(), t.channel(), t.event(), residual(t.body(), child_sequent(t, s, 0), ch, ev));
    throw Error("input_residual: no input on " + ch + " below a leaf or cut");
}

std::optional<Term> pull(const Term& t, const Sequent& s, const std::string& ch, const std::string& ev) {
    if (auto u = s.root_unit()) return Term::input(*s.side_of(*u), *u, {});
    if (t.is_output()) {
        if (t.channel() == ch) {
            if (t.event() == ev) return t.body();
            return std::nullopt;
        }
        auto r = pull(t.body(), child_sequent(t, s, 0), ch, ev);
        if (!r) return std::nullopt;
        return Term::output(t.side(), t.channel(), t.event(), *r);
    }
    if (t.is_input()) {
        std::vector<std::pair<std::string, Term>> bs;
        for (std::size_t i = 0; i < t.branch_count(); ++i) {
            auto r = pull(t.branch(i), child_sequent(t, s, i), ch, ev);
            if (!r) return std::nullopt;
            bs.emplace_back(t.branch_event(i), *r);
        }
        return Term::input(t.side(), t.channel(), std::move(bs));
    }
    return std::nullopt;
}

Sequent after_output(const Sequent& s, const std::string& ch, const std::string& ev) {
    const Protocol& p = s.at(ch);
    auto side = s.side_of(ch);
    if (!is_output_state(p, *side) || !p.find(ev))
        throw Error("pull_output: " + ch + " cannot output '" + ev + "' in " + s.str());
    return s.with(ch, p.at(ev));
}

bool enters_unit(const Sequent& s, const std::string& ch, const std::string& ev) {
    return s.with(ch, s.at(ch).at(ev)).root_unit().has_value();
}

// Rewrite every subterm that is convertible to an output into a unit
// followed by the stub, innermost first.
Term collapse_units(const Term& t, const Sequent& s) {
    if (auto u = s.root_unit()) return Term::input(*s.side_of(*u), *u, {});
    Term r = t;
    if (t.is_input()) {
        std::vector<std::pair<std::string, Term>> bs;
        for (std::size_t i = 0; i < t.branch_count(); ++i)
            bs.emplace_back(t.branch_event(i), collapse_units(t.branch(i), child_sequent(t, s, i)));
        r = Term::input(t.side(), t.channel(), std::move(bs));
    } else if (t.is_output()) {
        r = Term::output(t.side(), t.channel(), t.event(), collapse_units(t.body(), child_sequent(t, s, 0)));
    }
    for (const auto& [c, e] : classify(s).output_index) {
        if (!enters_unit(s, c, e) || !pull(r, s, c, e)) continue;
        Sequent after = s.with(c, s.at(c).at(e));
        auto u = after.root_unit();
        return Term::output(*s.side_of(c), c, e, Term::input(*after.side_of(*u), *u, {}));
    }
    return r;
}

bool compare(const Term& a0, const Term& b0, const Sequent& s, std::vector<int>& path, EqualityResult& res) {
    if (s.root_unit()) return true;
    Term a = collapse_units(a0, s);
    Term b = collapse_units(b0, s);
    if (a.is_input()) {
        const std::string& ch = a.channel();
        for (std::size_t i = 0; i < a.branch_count(); ++i) {
            const std::string& ev = a.branch_event(i);
            Sequent si = s.with(ch, s.at(ch).at(ev));
            path.push_back(static_cast<int>(i));
            if (!compare(a.branch(i), residual(b, s, ch, ev), si, path, res)) return false;
            path.pop_back();
        }
        return true;
    }
    if (a.is_output()) {
        auto pb = pull(b, s, a.channel(), a.event());
        if (!pb) {
            res.witness = EqualityWitness{path, a.channel(), a.event(), "output cannot be pulled from the second term"};
            return false;
        }
        path.push_back(0);
        if (!compare(a.body(), *pb, s.with(a.channel(), s.at(a.channel()).at(a.event())), path, res)) return false;
        path.pop_back();
        return true;
    }
    if (a == b) return true;
    res.witness = EqualityWitness{path, "", "", "atomic leaves differ"};
    return false;
}

std::optional<std::string> least_input_channel(const Sequent& s) {
    std::optional<std::string> best;
    for (const auto& [c, p] : s.dom)
        if (is_input_state(p, Side::Domain) && (!best || c < *best)) best = c;
    for (const auto& [c, p] : s.cod)
        if (is_input_state(p, Side::Codomain) && (!best || c < *best)) best = c;
    return best;
}

Term canon(const Term& t0, const Sequent& s) {
    if (auto u = s.root_unit()) return Term::input(*s.side_of(*u), *u, {});
    Term t = collapse_units(t0, s);
    if (auto c = least_input_channel(s)) {
        const Protocol& p = s.at(*c);
        std::vector<std::pair<std::string, Term>> bs;
        for (const auto& b : p.branches()) {
            Sequent si = s.with(*c, b.proto);
            bs.emplace_back(b.event, canon(residual(t, s, *c, b.event), si));
        }
        return Term::input(*s.side_of(*c), *c, std::move(bs));
    }
    for (const auto& [c, e] : classify(s).output_index) {
        if (auto r = pull(t, s, c, e))
            return Term::output(*s.side_of(c), c, e, canon(*r, s.with(c, s.at(c).at(e))));
    }
    return t;
}

}  // namespace

TypedTerm input_residual(const TypedTerm& t, const std::string& ch, const std::string& ev) {
    require_cut_free(t.term, "input_residual");
    auto side = t.sequent.side_of(ch);
    if (!side) throw Error("input_residual: channel '" + ch + "' not in " + t.sequent.str());
    const Protocol& p = t.sequent.at(ch);
    if (!is_input_state(p, *side)) throw Error("input_residual: " + ch + " is not an input channel");
    if (!p.find(ev)) throw Error("input_residual: '" + ev + "' is not a branch of " + ch);
    return TypedTerm{residual(t.term, t.sequent, ch, ev), t.sequent.with(ch, p.at(ev))};
}

std::optional<TypedTerm> pull_output(const TypedTerm& t, const std::string& ch, const std::string& ev) {
    require_cut_free(t.term, "pull_output");
    if (!t.sequent.has(ch)) throw Error("pull_output: channel '" + ch + "' not in " + t.sequent.str());
    Sequent s = after_output(t.sequent, ch, ev);
    auto r = pull(collapse_units(t.term, t.sequent), t.sequent, ch, ev);
    if (!r) return std::nullopt;
    return TypedTerm{*r, s};
}

EqualityResult decide_equal_explained(const TypedTerm& t1, const TypedTerm& t2) {
    if (!(t1.sequent == t2.sequent))
        throw Error("decide_equal: sequents differ: " + t1.sequent.str() + " vs " + t2.sequent.str());
    require_cut_free(t1.term, "decide_equal");
    require_cut_free(t2.term, "decide_equal");
    EqualityResult res;
    std::vector<int> path;
    res.equal = compare(t1.term, t2.term, t1.sequent, path, res);
    return res;
}

bool decide_equal(const TypedTerm& t1, const TypedTerm& t2) { return decide_equal_explained(t1, t2).equal; }

TypedTerm canonicalize(const TypedTerm& t) {
    require_cut_free(t.term, "canonicalize");
    return TypedTerm{canon(t.term, t.sequent), t.sequent};
}

}  // namespace sigmapi
