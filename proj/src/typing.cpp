#include "sigmapi/typing.hpp"

#include <algorithm>
#include <map>

#include "sigmapi/error.hpp"

namespace sigmapi {

Sequent child_sequent(const Term& t, const Sequent& s, std::size_t i) {
    switch (t.kind()) {
        case Term::Kind::Cotuple:
        case Term::Kind::Tuple:
            return s.with(t.channel(), s.at(t.channel()).at(t.branch_event(i)));
        case Term::Kind::Injection:
        case Term::Kind::Projection:
            return s.with(t.channel(), s.at(t.channel()).at(t.event()));
        case Term::Kind::Cut: {
            if (!t.split()) throw Error("child_sequent: cut without a resolved split");
            const CutSplit& sp = *t.split();
            Sequent l, r = s;
            for (const auto& c : sp.dom) {
                l.dom.emplace(c, s.at(c));
                r.dom.erase(c);
            }
            for (const auto& c : sp.cod) {
                l.cod.emplace(c, s.at(c));
                r.cod.erase(c);
            }
            l.cod.emplace(t.channel(), t.cut_protocol());
            r.dom.emplace(t.channel(), t.cut_protocol());
            return i == 0 ? l : r;
        }
        default:
            throw Error("child_sequent: leaf has no children");
    }
}

Sequent sequent_at(const TypedTerm& t, const std::vector<int>& path) {
    const Term* cur = &t.term;
    Sequent s = t.sequent;
    for (int i : path) {
        s = child_sequent(*cur, s, static_cast<std::size_t>(i));
        cur = &cur->child(static_cast<std::size_t>(i));
    }
    return s;
}

namespace {

void visit(const Term& t, const Sequent& s, std::vector<int>& path,
           const std::function<void(const Term&, const Sequent&, const std::vector<int>&)>& fn) {
    fn(t, s, path);
    for (std::size_t i = 0; i < t.child_count(); ++i) {
        path.push_back(static_cast<int>(i));
        visit(t.child(i), child_sequent(t, s, i), path, fn);
        path.pop_back();
    }
}

std::string join(const std::vector<std::string>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + xs[i];
    return out;
}

// Default binding: each port takes the least-named free channel on its side
// carrying the port's atom.
std::optional<std::vector<std::string>> default_side(const std::vector<std::string>& atoms,
                                                     const std::map<std::string, Protocol>& side) {
    std::vector<std::string> out;
    std::set<std::string> used;
    for (const auto& a : atoms) {
        bool found = false;
        for (const auto& [ch, p] : side) {
            if (used.count(ch) || !p.is_atom() || p.atom_name() != a) continue;
            out.push_back(ch);
            used.insert(ch);
            found = true;
            break;
        }
        if (!found) return std::nullopt;
    }
    if (out.size() != side.size()) return std::nullopt;
    return out;
}

bool binding_fits(const std::vector<std::string>& atoms, const std::vector<std::string>& chs,
                  const std::map<std::string, Protocol>& side) {
    if (atoms.size() != chs.size() || chs.size() != side.size()) return false;
    std::set<std::string> seen;
    for (std::size_t i = 0; i < chs.size(); ++i) {
        auto it = side.find(chs[i]);
        if (it == side.end() || !it->second.is_atom() || it->second.atom_name() != atoms[i]) return false;
        if (!seen.insert(chs[i]).second) return false;
    }
    return true;
}

class Checker {
public:
    explicit Checker(const AtomTheory& th) : th_(th) {}

    Term check(const Term& t, const Sequent& s, std::vector<int>& path) {
        switch (t.kind()) {
            case Term::Kind::Identity:
                check_identity(s, path);
                return t;
            case Term::Kind::Atomic:
                return check_atomic(t, s, path);
            case Term::Kind::Cotuple:
            case Term::Kind::Tuple:
                return check_input(t, s, path);
            case Term::Kind::Injection:
            case Term::Kind::Projection:
                return check_output(t, s, path);
            case Term::Kind::Cut:
                return check_cut(t, s, path);
        }
        return t;
    }

private:
    void check_identity(const Sequent& s, const std::vector<int>& path) {
        if (s.dom.size() != 1 || s.cod.size() != 1)
            throw TypeError(path, "identity", "identity needs exactly one channel on each side, sequent is " + s.str());
        const Protocol& a = s.dom.begin()->second;
        const Protocol& b = s.cod.begin()->second;
        if (!a.is_atom() || !b.is_atom() || a != b)
            throw TypeError(path, "identity", "identity needs the same atom on both sides, sequent is " + s.str());
    }

    Term check_atomic(const Term& t, const Sequent& s, const std::vector<int>& path) {
        if (!s.all_atomic())
            throw TypeError(path, "atomic", "atomic map on a non-atomic sequent " + s.str());
        for (const auto& n : t.graph().nodes())
            if (!th_.find(n.name)) throw TypeError(path, "atomic", "unknown atomic map '" + n.name + "'");
        const WiringGraph& g = t.graph();
        if (t.bound()) {
            if (!binding_fits(g.dom(), t.dom_channels(), s.dom) || !binding_fits(g.cod(), t.cod_channels(), s.cod))
                throw TypeError(path, "atomic", "binding of atomic map does not match sequent " + s.str());
            return normalize_leaf(g, t.dom_channels(), t.cod_channels());
        }
        auto leaf = bind_leaf(g, s);
        if (!leaf) throw TypeError(path, "atomic", "signature of atomic map does not match sequent " + s.str());
        return *leaf;
    }

    Term check_input(const Term& t, const Sequent& s, std::vector<int>& path) {
        const bool cot = t.kind() == Term::Kind::Cotuple;
        const char* rule = cot ? "cotuple" : "tuple";
        auto side = s.side_of(t.channel());
        if (!side) throw TypeError(path, rule, "unknown channel '" + t.channel() + "'");
        const Protocol& p = s.at(t.channel());
        if (cot && !(*side == Side::Domain && p.is_sum()))
            throw TypeError(path, rule, "cotuple needs a Sum in the domain on '" + t.channel() + "'");
        if (!cot && !(*side == Side::Codomain && p.is_product()))
            throw TypeError(path, rule, "tuple needs a Product in the codomain on '" + t.channel() + "'");
        std::vector<std::string> have, want = p.events(), missing, extra;
        for (std::size_t i = 0; i < t.branch_count(); ++i) have.push_back(t.branch_event(i));
        std::set_difference(want.begin(), want.end(), have.begin(), have.end(), std::back_inserter(missing));
        std::set_difference(have.begin(), have.end(), want.begin(), want.end(), std::back_inserter(extra));
        if (!missing.empty() || !extra.empty()) {
            std::string msg = "branches on '" + t.channel() + "' do not match " + p.str();
            if (!missing.empty()) msg += "; missing " + join(missing);
            if (!extra.empty()) msg += "; extra " + join(extra);
            throw TypeError(path, rule, msg);
        }
        std::vector<Term> kids;
        for (std::size_t i = 0; i < t.branch_count(); ++i) {
            path.push_back(static_cast<int>(i));
            kids.push_back(check(t.branch(i), s.with(t.channel(), p.at(t.branch_event(i))), path));
            path.pop_back();
        }
        return t.with_children(std::move(kids));
    }

    Term check_output(const Term& t, const Sequent& s, std::vector<int>& path) {
        const bool inj = t.kind() == Term::Kind::Injection;
        const char* rule = inj ? "injection" : "projection";
        auto side = s.side_of(t.channel());
        if (!side) throw TypeError(path, rule, "unknown channel '" + t.channel() + "'");
        const Protocol& p = s.at(t.channel());
        if (inj && !(*side == Side::Codomain && p.is_sum()))
            throw TypeError(path, rule, "injection needs a Sum in the codomain on '" + t.channel() + "'");
        if (!inj && !(*side == Side::Domain && p.is_product()))
            throw TypeError(path, rule, "projection needs a Product in the domain on '" + t.channel() + "'");
        if (p.empty()) throw TypeError(path, rule, "output on '" + t.channel() + "' into an empty index set");
        const Protocol* sub = p.find(t.event());
        if (!sub) throw TypeError(path, rule, "event '" + t.event() + "' is not a branch of " + p.str());
        path.push_back(0);
        Term body = check(t.body(), s.with(t.channel(), *sub), path);
        path.pop_back();
        return t.with_children({body});
    }

    Term check_with_split(const Term& t, const Sequent& s, const CutSplit& sp, std::vector<int>& path) {
        Term withsp = t.with_split(sp);
        std::vector<Term> kids;
        for (std::size_t i = 0; i < 2; ++i) {
            path.push_back(static_cast<int>(i));
            kids.push_back(check(t.child(i), child_sequent(withsp, s, i), path));
            path.pop_back();
        }
        return withsp.with_children(std::move(kids));
    }

    Term check_cut(const Term& t, const Sequent& s, std::vector<int>& path) {
        const std::string& g = t.channel();
        if (s.has(g)) throw TypeError(path, "cut", "cut channel '" + g + "' clashes with the context");
        if (t.split()) {
            for (const auto& c : t.split()->dom)
                if (!s.dom.count(c)) throw TypeError(path, "cut", "split names '" + c + "', not a domain channel");
            for (const auto& c : t.split()->cod)
                if (!s.cod.count(c)) throw TypeError(path, "cut", "split names '" + c + "', not a codomain channel");
            return check_with_split(t, s, *t.split(), path);
        }
        auto ml = t.left().mentioned_channels();
        auto mr = t.right().mentioned_channels();
        ml.erase(g);
        mr.erase(g);
        for (const auto* m : {&ml, &mr})
            for (const auto& c : *m)
                if (!s.has(c)) throw TypeError(path, "cut", "unknown channel '" + c + "'");
        for (const auto& c : ml)
            if (mr.count(c)) throw TypeError(path, "cut", "channel '" + c + "' is used by both premises");
        std::vector<std::string> free;
        for (const auto& c : s.channels())
            if (!ml.count(c) && !mr.count(c)) free.push_back(c);
        if (free.size() > 16) throw TypeError(path, "cut", "too many unplaced channels; give the split explicitly");
        std::vector<Term> found;
        std::optional<TypeError> first_error;
        for (unsigned mask = 0; mask < (1u << free.size()); ++mask) {
            CutSplit sp;
            auto place = [&](const std::string& c) {
                (s.dom.count(c) ? sp.dom : sp.cod).push_back(c);
            };
            for (const auto& c : ml) place(c);
            for (std::size_t i = 0; i < free.size(); ++i)
                if (mask & (1u << i)) place(free[i]);
            try {
                std::vector<int> p = path;
                found.push_back(check_with_split(t, s, sp, p));
            } catch (const TypeError& e) {
                if (!first_error) first_error = e;
            }
            if (found.size() > 1)
                throw TypeError(path, "cut", "ambiguous channel split between premises (" + join(free) +
                                                 "); give the split explicitly");
        }
        if (found.empty()) {
            if (free.empty() && first_error) throw *first_error;
            throw TypeError(path, "cut",
                            "no split of the context between the premises typechecks" +
                                (first_error ? std::string("; first failure: ") + first_error->what() : ""));
        }
        return found.front();
    }

    const AtomTheory& th_;
};

}  // namespace

void for_each_node(const TypedTerm& t,
                   const std::function<void(const Term&, const Sequent&, const std::vector<int>&)>& fn) {
    std::vector<int> path;
    visit(t.term, t.sequent, path, fn);
}

TypedTerm check(const Term& t, const Sequent& s, const AtomTheory& th) {
    Checker c(th);
    std::vector<int> path;
    return TypedTerm{c.check(t, s, path), s};
}

std::optional<TypeError> typing_error(const TypedTerm& t, const AtomTheory& th) {
    try {
        TypedTerm r = check(t.term, t.sequent, th);
        if (!(r.term == t.term)) return TypeError({}, "resolve", "term is not in resolved form");
    } catch (const TypeError& e) {
        return e;
    }
    return std::nullopt;
}

std::optional<Term> bind_leaf(const WiringGraph& g, const Sequent& s) {
    if (!s.all_atomic()) return std::nullopt;
    if (g.is_identity()) {
        if (s.dom.size() == 1 && s.cod.size() == 1 && s.dom.begin()->second == s.cod.begin()->second &&
            s.dom.begin()->second.atom_name() == g.dom()[0])
            return Term::identity();
        return std::nullopt;
    }
    auto d = default_side(g.dom(), s.dom);
    auto c = default_side(g.cod(), s.cod);
    if (!d || !c) return std::nullopt;
    return normalize_leaf(g, *d, *c);
}

TypedTerm identity_term(const Protocol& p, const std::string& in_ch, const std::string& out_ch) {
    std::function<Term(const Protocol&)> build = [&](const Protocol& x) -> Term {
        if (x.is_atom()) return Term::identity();
        std::vector<std::pair<std::string, Term>> bs;
        for (const auto& b : x.branches()) {
            Term inner = build(b.proto);
            if (x.is_sum())
                bs.emplace_back(b.event, Term::injection(out_ch, b.event, inner));
            else
                bs.emplace_back(b.event, Term::projection(in_ch, b.event, inner));
        }
        return x.is_sum() ? Term::cotuple(in_ch, std::move(bs)) : Term::tuple(out_ch, std::move(bs));
    };
    Sequent s;
    s.dom.emplace(in_ch, p);
    s.cod.emplace(out_ch, p);
    return TypedTerm{build(p), s};
}

Classification classify(const Sequent& s) {
    Classification c;
    bool all_output = true, compound = false;
    for (const auto& [ch, p] : s.dom) {
        if (p.is_sum() && p.empty()) c.has_source_unit = true;
        if (p.is_sum()) all_output = false;
        if (p.is_compound()) compound = true;
        if (p.is_product())
            for (const auto& b : p.branches()) c.output_index.emplace(ch, b.event);
    }
    for (const auto& [ch, p] : s.cod) {
        if (p.is_product() && p.empty()) c.has_source_unit = true;
        if (p.is_product()) all_output = false;
        if (p.is_compound()) compound = true;
        if (p.is_sum())
            for (const auto& b : p.branches()) c.output_index.emplace(ch, b.event);
    }
    c.output_sequent = all_output && compound;
    return c;
}

namespace {

class Enumerator {
public:
    Enumerator(const AtomTheory& th, std::size_t max_nodes) : th_(th) { build_graphs(max_nodes); }

    // Terms of s with size <= budget, paired with their size.
    const std::vector<std::pair<Term, std::size_t>>& terms(const Sequent& s, std::size_t budget) {
        std::string key = s.str() + "#" + std::to_string(budget);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        std::vector<std::pair<Term, std::size_t>> out;
        if (budget >= 1) {
            if (s.all_atomic()) leaves(s, budget, out);
            for (const auto& [ch, p] : s.dom)
                if (p.is_sum()) inputs(Side::Domain, ch, p, s, budget, out);
            for (const auto& [ch, p] : s.cod)
                if (p.is_product()) inputs(Side::Codomain, ch, p, s, budget, out);
            for (const auto& [ch, p] : s.cod)
                if (p.is_sum()) outputs(Side::Codomain, ch, p, s, budget, out);
            for (const auto& [ch, p] : s.dom)
                if (p.is_product()) outputs(Side::Domain, ch, p, s, budget, out);
        }
        return memo_.emplace(key, std::move(out)).first->second;
    }

private:
    void build_graphs(std::size_t max_nodes) {
        std::map<std::string, WiringGraph> seen;
        std::vector<WiringGraph> layer;
        for (const auto& [name, g] : th_.generators()) {
            WiringGraph w = WiringGraph::generator(g);
            if (seen.emplace(w.key(), w).second) layer.push_back(w);
        }
        graphs_ = layer;
        for (std::size_t k = 2; k <= max_nodes && !layer.empty(); ++k) {
            std::vector<WiringGraph> next;
            for (const auto& w : layer) {
                for (const auto& [name, g] : th_.generators()) {
                    WiringGraph h = WiringGraph::generator(g);
                    auto add = [&](const WiringGraph& r) {
                        if (seen.emplace(r.key(), r).second) next.push_back(r);
                    };
                    for (std::size_t j = 0; j < w.cod().size(); ++j)
                        for (std::size_t i = 0; i < h.dom().size(); ++i)
                            if (w.cod()[j] == h.dom()[i]) add(atom_compose(w, j, h, i));
                    for (std::size_t j = 0; j < h.cod().size(); ++j)
                        for (std::size_t i = 0; i < w.dom().size(); ++i)
                            if (h.cod()[j] == w.dom()[i]) add(atom_compose(h, j, w, i));
                }
            }
            graphs_.insert(graphs_.end(), next.begin(), next.end());
            layer = std::move(next);
        }
    }

    static void bindings(const std::vector<std::string>& atoms, const std::map<std::string, Protocol>& side,
                         std::vector<std::vector<std::string>>& out) {
        std::vector<std::string> chs;
        for (const auto& [c, p] : side) chs.push_back(c);
        if (chs.size() != atoms.size()) return;
        std::sort(chs.begin(), chs.end());
        do {
            bool ok = true;
            for (std::size_t i = 0; i < chs.size() && ok; ++i) ok = side.at(chs[i]).atom_name() == atoms[i];
            if (ok) out.push_back(chs);
        } while (std::next_permutation(chs.begin(), chs.end()));
    }

    void leaves(const Sequent& s, std::size_t budget, std::vector<std::pair<Term, std::size_t>>& out) {
        if (s.dom.size() == 1 && s.cod.size() == 1 && s.dom.begin()->second == s.cod.begin()->second)
            out.emplace_back(Term::identity(), 1);
        std::set<Term> seen;
        for (const auto& g : graphs_) {
            if (g.nodes().size() > budget) continue;
            std::vector<std::vector<std::string>> ds, cs;
            bindings(g.dom(), s.dom, ds);
            if (ds.empty()) continue;
            bindings(g.cod(), s.cod, cs);
            for (const auto& d : ds)
                for (const auto& c : cs) {
                    Term leaf = normalize_leaf(g, d, c);
                    if (seen.insert(leaf).second) out.emplace_back(leaf, g.nodes().size());
                }
        }
    }

    void inputs(Side side, const std::string& ch, const Protocol& p, const Sequent& s, std::size_t budget,
                std::vector<std::pair<Term, std::size_t>>& out) {
        const std::size_t n = p.branches().size();
        if (n == 0) {
            out.emplace_back(Term::input(side, ch, {}), 1);
            return;
        }
        if (budget < 1 + n) return;
        std::vector<const std::vector<std::pair<Term, std::size_t>>*> lists;
        for (const auto& b : p.branches()) {
            lists.push_back(&terms(s.with(ch, b.proto), budget - n));
            if (lists.back()->empty()) return;
        }
        std::vector<std::pair<std::string, Term>> cur;
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t used) {
            if (i == n) {
                out.emplace_back(Term::input(side, ch, cur), used);
                return;
            }
            const std::size_t reserve = n - i - 1;
            for (const auto& [t, sz] : *lists[i]) {
                if (used + sz + reserve > budget) continue;
                cur.emplace_back(p.branches()[i].event, t);
                rec(i + 1, used + sz);
                cur.pop_back();
            }
        };
        rec(0, 1);
    }

    void outputs(Side side, const std::string& ch, const Protocol& p, const Sequent& s, std::size_t budget,
                 std::vector<std::pair<Term, std::size_t>>& out) {
        if (budget < 2) return;
        for (const auto& b : p.branches())
            for (const auto& [t, sz] : terms(s.with(ch, b.proto), budget - 1))
                out.emplace_back(Term::output(side, ch, b.event, t), sz + 1);
    }

    const AtomTheory& th_;
    std::vector<WiringGraph> graphs_;
    std::map<std::string, std::vector<std::pair<Term, std::size_t>>> memo_;
};

bool provable_rec(const Sequent& s, const AtomTheory& th, std::map<std::string, bool>& memo) {
    std::string key = s.str();
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool ok = false;
    if (s.all_atomic()) {
        if (s.dom.size() == 1 && s.cod.size() == 1 && s.dom.begin()->second == s.cod.begin()->second) ok = true;
        for (const auto& [name, g] : th.generators())
            if (!ok && bind_leaf(WiringGraph::generator(g), s)) ok = true;
    }
    for (const auto* side : {&s.dom, &s.cod}) {
        const bool dom = side == &s.dom;
        for (const auto& [ch, p] : *side) {
            if (ok) break;
            if (p.is_atom()) continue;
            const bool input = dom ? p.is_sum() : p.is_product();
            if (input) {
                bool all = true;
                for (const auto& b : p.branches()) all = all && provable_rec(s.with(ch, b.proto), th, memo);
                ok = all;
            } else {
                for (const auto& b : p.branches())
                    if (!ok && provable_rec(s.with(ch, b.proto), th, memo)) ok = true;
            }
        }
    }
    memo[key] = ok;
    return ok;
}

}  // namespace

std::vector<TypedTerm> enumerate_cut_free(const Sequent& s, const AtomTheory& th, std::size_t max_nodes) {
    Enumerator e(th, max_nodes);
    std::vector<TypedTerm> out;
    for (const auto& [t, sz] : e.terms(s, max_nodes)) out.push_back(TypedTerm{t, s});
    return out;
}

bool provable(const Sequent& s, const AtomTheory& th) {
    std::map<std::string, bool> memo;
    return provable_rec(s, th, memo);
}

}  // namespace sigmapi
