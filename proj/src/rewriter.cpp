#include "sigmapi/rewriter.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "sigmapi/error.hpp"

namespace sigmapi {

TypedTerm rename_channels(const TypedTerm& t, const std::map<std::string, std::string>& subst) {
    std::set<std::string> values;
    for (const auto& [k, v] : subst) {
        if (!t.sequent.has(k)) throw Error("rename: channel '" + k + "' not in sequent " + t.sequent.str());
        if (!values.insert(v).second) throw Error("rename: two channels renamed to '" + v + "'");
    }
    for (const auto& v : values)
        if (t.sequent.has(v) && !subst.count(v))
            throw Error("rename: '" + v + "' would capture an existing channel");
    auto map_ch = [&](const std::string& c) {
        auto it = subst.find(c);
        return it == subst.end() ? c : it->second;
    };
    Sequent s;
    for (const auto& [c, p] : t.sequent.dom) s.dom.emplace(map_ch(c), p);
    for (const auto& [c, p] : t.sequent.cod) s.cod.emplace(map_ch(c), p);
    return TypedTerm{rename(t.term, subst), s};
}

TypedTerm cut(const TypedTerm& f, const std::string& out_ch, const TypedTerm& g, const std::string& in_ch) {
    auto fo = f.sequent.cod.find(out_ch);
    if (fo == f.sequent.cod.end()) throw Error("cut: '" + out_ch + "' is not a codomain channel of the left term");
    auto gi = g.sequent.dom.find(in_ch);
    if (gi == g.sequent.dom.end()) throw Error("cut: '" + in_ch + "' is not a domain channel of the right term");
    if (fo->second != gi->second)
        throw Error("cut: protocol mismatch " + fo->second.str() + " vs " + gi->second.str());

    std::set<std::string> used = f.sequent.channels();
    for (const auto& c : g.sequent.channels()) used.insert(c);
    std::map<std::string, std::string> subst;
    for (const auto& c : g.sequent.channels()) {
        if (c == in_ch || !f.sequent.has(c)) continue;
        std::string fresh = fresh_name(c, used);
        used.insert(fresh);
        subst.emplace(c, fresh);
    }
    subst[in_ch] = out_ch;
    TypedTerm g2 = rename_channels(g, subst);

    Sequent s;
    CutSplit split;
    for (const auto& [c, p] : f.sequent.dom) {
        s.dom.emplace(c, p);
        split.dom.push_back(c);
    }
    for (const auto& [c, p] : f.sequent.cod) {
        if (c == out_ch) continue;
        s.cod.emplace(c, p);
        split.cod.push_back(c);
    }
    for (const auto& [c, p] : g2.sequent.dom)
        if (c != out_ch) s.dom.emplace(c, p);
    for (const auto& [c, p] : g2.sequent.cod) s.cod.emplace(c, p);
    return TypedTerm{Term::cut(out_ch, fo->second, split, f.term, g2.term), s};
}

namespace {

constexpr int kPriority[] = {1, 2, kEssential, 11, 12, 5, 6, 7, 8, 3, 4, 9, 10};

bool matches(const Term& t, int rule) {
    if (!t.is_cut()) return false;
    const Term& l = t.left();
    const Term& r = t.right();
    const std::string& g = t.channel();
    using K = Term::Kind;
    switch (rule) {
        case kEssential:
            return l.kind() == K::Atomic && r.kind() == K::Atomic;
        case 1:
            return r.kind() == K::Identity;
        case 2:
            return l.kind() == K::Identity;
        case 3:
            return l.kind() == K::Cotuple;
        case 4:
            return r.kind() == K::Tuple;
        case 5:
            return l.kind() == K::Injection && l.channel() != g;
        case 6:
            return r.kind() == K::Projection && r.channel() != g;
        case 7:
            return l.kind() == K::Projection;
        case 8:
            return r.kind() == K::Injection;
        case 9:
            return l.kind() == K::Tuple && l.channel() != g;
        case 10:
            return r.kind() == K::Cotuple && r.channel() != g;
        case 11:
            return l.kind() == K::Injection && l.channel() == g && r.kind() == K::Cotuple && r.channel() == g;
        case 12:
            return l.kind() == K::Tuple && l.channel() == g && r.kind() == K::Projection && r.channel() == g;
        default:
            return false;
    }
}

Term recut(const Term& c, const Term& l, const Term& r) {
    return Term::cut(c.channel(), c.cut_protocol(), c.split(), l, r);
}

Term distribute(const Term& c, const Term& input, bool left) {
    std::vector<std::pair<std::string, Term>> bs;
    for (std::size_t i = 0; i < input.branch_count(); ++i)
        bs.emplace_back(input.branch_event(i),
                        left ? recut(c, input.branch(i), c.right()) : recut(c, c.left(), input.branch(i)));
    return Term::input(input.side(), input.channel(), std::move(bs));
}

Term lift(const Term& c, const Term& output, bool left) {
    Term inner = left ? recut(c, output.body(), c.right()) : recut(c, c.left(), output.body());
    return Term::output(output.side(), output.channel(), output.event(), inner);
}

Term essential(const Term& c) {
    const Term& l = c.left();
    const Term& r = c.right();
    const auto& lc = l.cod_channels();
    const auto& rd = r.dom_channels();
    std::size_t out = static_cast<std::size_t>(std::find(lc.begin(), lc.end(), c.channel()) - lc.begin());
    std::size_t in = static_cast<std::size_t>(std::find(rd.begin(), rd.end(), c.channel()) - rd.begin());
    WiringGraph g = atom_compose(l.graph(), out, r.graph(), in);
    std::vector<std::string> dom = l.dom_channels(), cod;
    for (std::size_t i = 0; i < rd.size(); ++i)
        if (i != in) dom.push_back(rd[i]);
    for (std::size_t i = 0; i < lc.size(); ++i)
        if (i != out) cod.push_back(lc[i]);
    for (const auto& x : r.cod_channels()) cod.push_back(x);
    return normalize_leaf(g, dom, cod);
}

Term rewrite_cut(const Term& c, const Sequent& s, int rule) {
    const Term& l = c.left();
    const Term& r = c.right();
    switch (rule) {
        case kEssential:
            return essential(c);
        case 1: {
            Sequent rs = child_sequent(c, s, 1);
            return rename(l, {{c.channel(), rs.cod.begin()->first}});
        }
        case 2: {
            Sequent ls = child_sequent(c, s, 0);
            return rename(r, {{c.channel(), ls.dom.begin()->first}});
        }
        case 3:
        case 9:
            return distribute(c, l, true);
        case 4:
        case 10:
            return distribute(c, r, false);
        case 5:
        case 7:
            return lift(c, l, true);
        case 6:
        case 8:
            return lift(c, r, false);
        case 11: {
            const Term* g = r.find_branch(l.event());
            return Term::cut(c.channel(), c.cut_protocol().at(l.event()), c.split(), l.body(), *g);
        }
        case 12: {
            const Term* f = l.find_branch(r.event());
            return Term::cut(c.channel(), c.cut_protocol().at(r.event()), c.split(), *f, r.body());
        }
    }
    throw Error("unknown reduction rule " + std::to_string(rule));
}

bool find_li(const Term& t, std::vector<int>& path, int& rule) {
    for (std::size_t i = 0; i < t.child_count(); ++i) {
        path.push_back(static_cast<int>(i));
        if (find_li(t.child(i), path, rule)) return true;
        path.pop_back();
    }
    if (auto r = redex_rule(t)) {
        rule = *r;
        return true;
    }
    return false;
}

bool find_ro(const Term& t, std::vector<int>& path, int& rule) {
    if (auto r = redex_rule(t)) {
        rule = *r;
        return true;
    }
    for (std::size_t i = t.child_count(); i-- > 0;) {
        path.push_back(static_cast<int>(i));
        if (find_ro(t.child(i), path, rule)) return true;
        path.pop_back();
    }
    return false;
}

void collect_bag(const Term& t, CutBag& bag) {
    if (t.is_cut()) bag.push_back(height(t));
    for (std::size_t i = 0; i < t.child_count(); ++i) collect_bag(t.child(i), bag);
}

}  // namespace

std::optional<int> redex_rule(const Term& t) {
    if (!t.is_cut()) return std::nullopt;
    for (int r : kPriority)
        if (matches(t, r)) return r;
    return std::nullopt;
}

bool rule_applies(const Term& t, int rule) { return matches(t, rule); }

TypedTerm apply_rule(const TypedTerm& t, const std::vector<int>& path, int rule) {
    const Term& node = t.term.at(path);
    if (!matches(node, rule))
        throw Error("rule " + std::to_string(rule) + " does not apply at " + path_to_string(path));
    Sequent s = sequent_at(t, path);
    return TypedTerm{t.term.replace_at(path, rewrite_cut(node, s, rule)), t.sequent};
}

std::optional<Step> step(const TypedTerm& t, Strategy strategy) {
    std::vector<int> path;
    int rule = 0;
    bool found = strategy == Strategy::LeftmostInnermost ? find_li(t.term, path, rule) : find_ro(t.term, path, rule);
    if (!found) return std::nullopt;
    return Step{apply_rule(t, path, rule), rule, path};
}

TypedTerm normalize(const TypedTerm& t, const NormalizeOptions& opts) {
    static const AtomTheory kDiscrete;
    const AtomTheory& th = opts.theory ? *opts.theory : kDiscrete;
    TypedTerm cur = t;
    CutBag bag = measures(cur.term).cut_bag;
    while (auto st = step(cur, opts.strategy)) {
        if (opts.verify) {
            CutBag next = measures(st->term.term).cut_bag;
            if (!multiset_less(next, bag))
                throw Error("rule " + std::to_string(st->rule) + " at " + path_to_string(st->path) +
                            " did not decrease the cut bag");
            if (auto err = typing_error(st->term, th))
                throw Error("rule " + std::to_string(st->rule) + " at " + path_to_string(st->path) +
                            " broke typing: " + err->what());
            bag = std::move(next);
        }
        if (opts.on_step) opts.on_step(*st);
        cur = std::move(st->term);
    }
    return cur;
}

std::size_t height(const Term& t) {
    switch (t.kind()) {
        case Term::Kind::Atomic:
        case Term::Kind::Identity:
            return 1;
        case Term::Kind::Cotuple:
        case Term::Kind::Tuple: {
            std::size_t m = 0;
            for (std::size_t i = 0; i < t.branch_count(); ++i) m = std::max(m, height(t.branch(i)));
            return 1 + m;
        }
        case Term::Kind::Injection:
        case Term::Kind::Projection:
            return 1 + height(t.body());
        case Term::Kind::Cut:
            return height(t.left()) + height(t.right());
    }
    return 0;
}

Measures measures(const Term& t) {
    Measures m;
    m.height = height(t);
    collect_bag(t, m.cut_bag);
    std::sort(m.cut_bag.begin(), m.cut_bag.end(), std::greater<>());
    return m;
}

bool multiset_less(CutBag a, CutBag b) {
    std::map<std::size_t, long> diff;
    for (auto x : a) ++diff[x];
    for (auto x : b) --diff[x];
    bool differs = false;
    for (const auto& [x, d] : diff) {
        if (d == 0) continue;
        differs = true;
        if (d > 0) {
            bool dominated = false;
            for (auto it = diff.upper_bound(x); it != diff.end(); ++it)
                if (it->second < 0) dominated = true;
            if (!dominated) return false;
        }
    }
    return differs;
}

namespace {

using K = Term::Kind;

int swap_rule(K outer, K inner) {
    bool oc = outer == K::Cotuple, ic = inner == K::Cotuple;
    if (oc && ic) return 13;
    if (!oc && !ic) return 14;
    return 19;
}

int mixed_rule(K input, K output) {
    if (input == K::Cotuple) return output == K::Injection ? 15 : 17;
    return output == K::Projection ? 16 : 18;
}

int output_swap_rule(K a, K b) {
    if (a == K::Injection && b == K::Injection) return 20;
    if (a == K::Projection && b == K::Projection) return 21;
    return 22;
}

// n is the node, s its sequent.  Returns nullopt when the rule's pattern
// does not match.
std::optional<Term> convert_node(const Term& n, const Sequent& s, int rule, const std::optional<ConversionAux>& aux) {
    if (aux) {
        if (!n.is_stub()) return std::nullopt;
        auto side = s.side_of(aux->channel);
        if (!side || aux->channel == n.channel()) return std::nullopt;
        const Protocol& p = s.at(aux->channel);
        if (rule == 13 || rule == 14 || rule == 19) {
            if (!is_input_state(p, *side)) return std::nullopt;
            K outer = *side == Side::Domain ? K::Cotuple : K::Tuple;
            if (swap_rule(outer, n.kind()) != rule) return std::nullopt;
            std::vector<std::pair<std::string, Term>> bs;
            for (const auto& e : p.events()) bs.emplace_back(e, n);
            return Term::input(*side, aux->channel, std::move(bs));
        }
        if (rule >= 15 && rule <= 18) {
            if (!is_output_state(p, *side) || !p.find(aux->event)) return std::nullopt;
            K out = *side == Side::Codomain ? K::Injection : K::Projection;
            if (mixed_rule(n.kind(), out) != rule) return std::nullopt;
            return Term::output(*side, aux->channel, aux->event, n);
        }
        return std::nullopt;
    }
    if (rule == 13 || rule == 14 || rule == 19) {
        if (!n.is_input() || n.branch_count() == 0) return std::nullopt;
        const Term& first = n.branch(0);
        if (!first.is_input() || first.channel() == n.channel()) return std::nullopt;
        if (swap_rule(n.kind(), first.kind()) != rule) return std::nullopt;
        for (std::size_t i = 1; i < n.branch_count(); ++i) {
            const Term& b = n.branch(i);
            if (b.kind() != first.kind() || b.channel() != first.channel()) return std::nullopt;
        }
        std::vector<std::pair<std::string, Term>> outer;
        for (std::size_t j = 0; j < first.branch_count(); ++j) {
            std::vector<std::pair<std::string, Term>> inner;
            for (std::size_t i = 0; i < n.branch_count(); ++i)
                inner.emplace_back(n.branch_event(i), n.branch(i).branch(j));
            outer.emplace_back(first.branch_event(j), Term::input(n.side(), n.channel(), std::move(inner)));
        }
        return Term::input(first.side(), first.channel(), std::move(outer));
    }
    if (rule >= 15 && rule <= 18) {
        if (n.is_input()) {
            if (n.branch_count() == 0 || !n.branch(0).is_output()) return std::nullopt;
            const Term& first = n.branch(0);
            if (first.channel() == n.channel()) return std::nullopt;
            if (mixed_rule(n.kind(), first.kind()) != rule) return std::nullopt;
            std::vector<std::pair<std::string, Term>> bs;
            for (std::size_t i = 0; i < n.branch_count(); ++i) {
                const Term& b = n.branch(i);
                if (b.kind() != first.kind() || b.channel() != first.channel() || b.event() != first.event())
                    return std::nullopt;
                bs.emplace_back(n.branch_event(i), b.body());
            }
            return Term::output(first.side(), first.channel(), first.event(),
                                Term::input(n.side(), n.channel(), std::move(bs)));
        }
        if (n.is_output()) {
            const Term& body = n.body();
            if (!body.is_input() || body.channel() == n.channel() || mixed_rule(body.kind(), n.kind()) != rule)
                return std::nullopt;
            std::vector<std::pair<std::string, Term>> bs;
            for (std::size_t i = 0; i < body.branch_count(); ++i)
                bs.emplace_back(body.branch_event(i), Term::output(n.side(), n.channel(), n.event(), body.branch(i)));
            return Term::input(body.side(), body.channel(), std::move(bs));
        }
        return std::nullopt;
    }
    if (rule >= 20 && rule <= 22) {
        if (!n.is_output() || !n.body().is_output()) return std::nullopt;
        const Term& inner = n.body();
        if (inner.channel() == n.channel() || output_swap_rule(n.kind(), inner.kind()) != rule) return std::nullopt;
        return Term::output(inner.side(), inner.channel(), inner.event(),
                            Term::output(n.side(), n.channel(), n.event(), inner.body()));
    }
    return std::nullopt;
}

void conversions_at(const Term& n, const Sequent& s, const std::vector<int>& path, const TypedTerm& root,
                    std::vector<Conversion>& out) {
    auto emit = [&](int rule, const Term& rep, const std::optional<ConversionAux>& aux) {
        out.push_back(Conversion{TypedTerm{root.term.replace_at(path, rep), root.sequent}, rule, path, aux});
    };
    for (int rule = 13; rule <= 22; ++rule)
        if (auto r = convert_node(n, s, rule, std::nullopt)) emit(rule, *r, std::nullopt);
    if (!n.is_stub()) return;
    auto side_channels = [&](const std::map<std::string, Protocol>& m, Side side) {
        for (const auto& [c, p] : m) {
            if (c == n.channel()) continue;
            if (is_input_state(p, side)) {
                K outer = side == Side::Domain ? K::Cotuple : K::Tuple;
                int rule = swap_rule(outer, n.kind());
                ConversionAux aux{c, ""};
                if (auto r = convert_node(n, s, rule, aux)) emit(rule, *r, aux);
            } else if (is_output_state(p, side)) {
                K o = side == Side::Codomain ? K::Injection : K::Projection;
                int rule = mixed_rule(n.kind(), o);
                for (const auto& e : p.events()) {
                    ConversionAux aux{c, e};
                    if (auto r = convert_node(n, s, rule, aux)) emit(rule, *r, aux);
                }
            }
        }
    };
    side_channels(s.dom, Side::Domain);
    side_channels(s.cod, Side::Codomain);
}

}  // namespace

TypedTerm convert(const TypedTerm& t, int rule, const std::vector<int>& path, const std::optional<ConversionAux>& aux) {
    if (rule < 13 || rule > 22) throw Error("conversion rules are numbered 13 to 22, got " + std::to_string(rule));
    const Term& node = t.term.at(path);
    auto r = convert_node(node, sequent_at(t, path), rule, aux);
    if (!r) throw Error("conversion " + std::to_string(rule) + " does not match at " + path_to_string(path));
    return TypedTerm{t.term.replace_at(path, *r), t.sequent};
}

std::vector<Conversion> conversion_neighbours(const TypedTerm& t) {
    std::vector<Conversion> out;
    for_each_node(t, [&](const Term& n, const Sequent& s, const std::vector<int>& path) {
        conversions_at(n, s, path, t, out);
    });
    return out;
}

std::vector<TypedTerm> conversion_closure(const TypedTerm& t, std::size_t max_size, std::size_t max_terms) {
    std::set<Term> seen{t.term};
    std::vector<TypedTerm> out{t};
    std::deque<TypedTerm> work{t};
    while (!work.empty()) {
        TypedTerm cur = std::move(work.front());
        work.pop_front();
        for (auto& c : conversion_neighbours(cur)) {
            if (c.term.term.size() > max_size || !seen.insert(c.term.term).second) continue;
            if (seen.size() > max_terms) throw SizeError("conversion closure exceeds " + std::to_string(max_terms) + " terms");
            out.push_back(c.term);
            work.push_back(std::move(c.term));
        }
    }
    return out;
}

}  // namespace sigmapi
