#include "sigmapi/syntax.hpp"

#include <map>
#include <set>
#include <sstream>

#include "lexer.hpp"
#include "sigmapi/error.hpp"

namespace sigmapi {

namespace detail {
Protocol parse_protocol(Lexer& lx);
WiringGraph parse_wiring(Lexer& lx, const AtomTheory& th);
}  // namespace detail

namespace {

const std::set<std::string>& keywords() {
    static const std::set<std::string> k = {"input", "output", "plug", "cut", "id", "end",
                                            "on",    "of",     "then", "in",  "to"};
    return k;
}

}  // namespace

bool is_keyword(std::string_view word) { return keywords().count(std::string(word)) > 0; }

Syntax parse_syntax_name(std::string_view name) {
    if (name == "compact") return Syntax::Compact;
    if (name == "verbose") return Syntax::Verbose;
    if (name == "math") return Syntax::Math;
    throw Error("unknown syntax '" + std::string(name) + "' (expected compact, verbose or math)");
}

namespace {

using Scope = std::map<std::string, Side>;

class TermParser {
public:
    TermParser(std::string_view text, const AtomTheory& th) : lx_(text), th_(th) {}

    Term parse_root(const Scope& scope) {
        Term t = term(scope);
        if (!lx_.at_end()) lx_.fail("trailing input after term");
        return t;
    }

private:
    Side side_of(const Scope& scope, const std::string& ch, std::size_t pos) {
        auto it = scope.find(ch);
        if (it == scope.end()) throw ParseError("unknown channel '" + ch + "'", pos);
        return it->second;
    }

    std::string channel_name(const char* what) {
        std::size_t pos = lx_.offset();
        std::string ch = lx_.ident(what);
        if (!is_name_identifier(ch) || is_keyword(ch)) throw ParseError("'" + ch + "' is not a channel name", pos);
        return ch;
    }

    std::string event_name() {
        std::size_t pos = lx_.offset();
        std::string ev = lx_.ident("event name");
        if (!is_name_identifier(ev)) throw ParseError("event names start with a lowercase letter or digit", pos);
        return ev;
    }

    std::vector<std::string> channel_list() {
        std::vector<std::string> out;
        if (lx_.is_ident()) {
            do out.push_back(channel_name("channel name"));
            while (lx_.accept(","));
        }
        return out;
    }

    // '[' chs '|' chs ']'
    std::pair<std::vector<std::string>, std::vector<std::string>> bracket_lists() {
        lx_.expect("[");
        auto d = channel_list();
        lx_.expect("|");
        auto c = channel_list();
        lx_.expect("]");
        return {d, c};
    }

    Term atomic_ref() {
        std::size_t pos = lx_.offset();
        WiringGraph g;
        if (lx_.is_sym("(")) {
            g = detail::parse_wiring(lx_, th_);
        } else {
            std::string name = lx_.ident("atomic map name");
            const Generator* gen = th_.find(name);
            if (!gen) throw ParseError("unknown atomic map '" + name + "'", pos);
            g = WiringGraph::generator(*gen);
        }
        if (lx_.is_sym("[")) {
            std::size_t bpos = lx_.offset();
            auto [d, c] = bracket_lists();
            if (d.size() != g.dom().size() || c.size() != g.cod().size())
                throw ParseError("binding lists do not match the ports of the atomic map", bpos);
            return Term::atomic(g, d, c);
        }
        return Term::atomic(g);
    }

    std::vector<std::pair<std::string, Term>> compact_branches(const Scope& scope, const char* close) {
        std::vector<std::pair<std::string, Term>> bs;
        std::set<std::string> seen;
        if (!lx_.is_sym(close)) {
            do {
                std::size_t pos = lx_.offset();
                std::string ev = event_name();
                if (!seen.insert(ev).second) throw ParseError("duplicate branch '" + ev + "'", pos);
                lx_.expect("=>");
                bs.emplace_back(ev, term(scope));
            } while (lx_.accept(","));
        }
        lx_.expect(close);
        return bs;
    }

    Term cut_common(const Scope& scope, bool verbose) {
        std::string g = channel_name("cut channel");
        if (scope.count(g)) throw ParseError("cut channel '" + g + "' is already in scope", lx_.offset());
        lx_.expect(":");
        Protocol z = detail::parse_protocol(lx_);
        std::optional<CutSplit> split;
        if (lx_.is_sym("[")) {
            auto [d, c] = bracket_lists();
            split = CutSplit{d, c};
        }
        Scope ls = scope, rs = scope;
        ls[g] = Side::Codomain;
        if (!verbose) {
            rs[g] = Side::Domain;
            lx_.expect("(");
            Term l = term(ls);
            lx_.expect(")");
            lx_.expect("(");
            Term r = term(rs);
            lx_.expect(")");
            return Term::cut(g, z, split, l, r);
        }
        lx_.expect("in");
        Term l = term(ls);
        lx_.expect("to");
        std::size_t pos = lx_.offset();
        std::string h = channel_name("channel name");
        if (h != g && scope.count(h)) throw ParseError("plug channel '" + h + "' is already in scope", pos);
        rs[h] = Side::Domain;
        lx_.expect("in");
        Term r = term(rs);
        if (h != g) r = rename(r, {{h, g}});
        return Term::cut(g, z, split, l, r);
    }

    Term term(const Scope& scope) {
        if (lx_.accept("(")) {
            Term t = term(scope);
            lx_.expect(")");
            return t;
        }
        if (lx_.accept("#")) return atomic_ref();
        if (!lx_.is_ident()) lx_.fail("expected term");
        std::size_t pos = lx_.offset();
        std::string word = lx_.peek().text;
        if (word == "id" || word == "1") {
            lx_.next();
            return Term::identity();
        }
        if (word == "cut") {
            lx_.next();
            return cut_common(scope, false);
        }
        if (word == "plug") {
            lx_.next();
            return cut_common(scope, true);
        }
        if (word == "input") {
            lx_.next();
            lx_.expect("on");
            std::size_t cpos = lx_.offset();
            std::string ch = channel_name("channel name");
            Side side = side_of(scope, ch, cpos);
            lx_.expect("of");
            std::vector<std::pair<std::string, Term>> bs;
            std::set<std::string> seen;
            while (lx_.accept("|")) {
                std::size_t epos = lx_.offset();
                std::string ev = event_name();
                if (!seen.insert(ev).second) throw ParseError("duplicate branch '" + ev + "'", epos);
                lx_.expect("=>");
                bs.emplace_back(ev, term(scope));
            }
            lx_.accept("end");
            return Term::input(side, ch, std::move(bs));
        }
        if (word == "output") {
            lx_.next();
            std::string ev = event_name();
            lx_.expect("on");
            std::size_t cpos = lx_.offset();
            std::string ch = channel_name("channel name");
            Side side = side_of(scope, ch, cpos);
            lx_.expect("then");
            return Term::output(side, ch, ev, term(scope));
        }
        if (is_keyword(word)) lx_.fail("unexpected keyword");
        lx_.next();
        if (lx_.accept("{")) {
            side_of(scope, word, pos);
            return Term::cotuple(word, compact_branches(scope, "}"));
        }
        if (lx_.is_sym("(") && scope.count(word)) {
            lx_.next();
            return Term::tuple(word, compact_branches(scope, ")"));
        }
        if (lx_.accept("!")) {
            Side side = side_of(scope, word, pos);
            lx_.expect("[");
            std::string ev = event_name();
            lx_.expect("]");
            lx_.expect("(");
            Term body = term(scope);
            lx_.expect(")");
            return Term::output(side, word, ev, body);
        }
        // A bare name in the verbose form is an atomic map.
        const Generator* gen = th_.find(word);
        if (!gen) {
            if (scope.count(word)) lx_.fail("expected '{', '(' or '!' after channel '" + word + "'");
            throw ParseError("unknown channel or atomic map '" + word + "'", pos);
        }
        WiringGraph g = WiringGraph::generator(*gen);
        if (lx_.is_sym("[")) {
            auto [d, c] = bracket_lists();
            if (d.size() != g.dom().size() || c.size() != g.cod().size())
                throw ParseError("binding lists do not match the ports of the atomic map", pos);
            return Term::atomic(g, d, c);
        }
        return Term::atomic(g);
    }

    detail::Lexer lx_;
    const AtomTheory& th_;
};

}  // namespace

Term parse_term(std::string_view text, const Sequent& s, const AtomTheory& th) {
    Scope scope;
    for (const auto& [c, p] : s.dom) scope[c] = Side::Domain;
    for (const auto& [c, p] : s.cod) scope[c] = Side::Codomain;
    TermParser tp(text, th);
    return tp.parse_root(scope);
}

TypedTerm parse_typed(std::string_view text, const Sequent& s, const AtomTheory& th) {
    return check(parse_term(text, s, th), s, th);
}

namespace {

const std::map<std::string, std::string>& greek() {
    static const std::map<std::string, std::string> g = {
        {"alpha", "α"}, {"beta", "β"},  {"gamma", "γ"},   {"delta", "δ"}, {"epsilon", "ε"}, {"zeta", "ζ"},
        {"eta", "η"},   {"theta", "θ"}, {"iota", "ι"},    {"kappa", "κ"}, {"lambda", "λ"},  {"mu", "μ"},
        {"nu", "ν"},    {"xi", "ξ"},    {"pi", "π"},      {"rho", "ρ"},   {"sigma", "σ"},   {"tau", "τ"},
        {"phi", "φ"},   {"chi", "χ"},   {"psi", "ψ"},     {"omega", "ω"}};
    return g;
}

struct Printed {
    std::string text;
    std::set<std::string> mentioned;
};

class Printer {
public:
    explicit Printer(Syntax syn) : syn_(syn) {}

    Printed print(const Term& t, const Sequent& s, bool tail, int indent) {
        switch (t.kind()) {
            case Term::Kind::Identity:
                return {identity_text(s), {}};
            case Term::Kind::Atomic:
                return atomic(t, s);
            case Term::Kind::Cotuple:
            case Term::Kind::Tuple:
                return input(t, s, tail, indent);
            case Term::Kind::Injection:
            case Term::Kind::Projection:
                return output(t, s, tail, indent);
            case Term::Kind::Cut:
                return cut(t, s, tail, indent);
        }
        return {};
    }

private:
    std::string ch(const std::string& c) const {
        if (syn_ != Syntax::Math) return c;
        auto it = greek().find(c);
        return it == greek().end() ? c : it->second;
    }

    std::string identity_text(const Sequent& s) const {
        if (syn_ != Syntax::Math) return "id";
        return "1_" + (s.dom.empty() ? std::string("?") : s.dom.begin()->second.str());
    }

    static std::string pad(int n) { return std::string(static_cast<std::size_t>(n), ' '); }

    Printed atomic(const Term& t, const Sequent& s) {
        std::vector<int> dp, cp;
        std::string e = t.graph().expression(dp, cp);
        std::vector<std::string> ed, ec, ad, ac;
        for (int p : dp) {
            ed.push_back(t.dom_channels()[static_cast<std::size_t>(p)]);
            ad.push_back(t.graph().dom()[static_cast<std::size_t>(p)]);
        }
        for (int p : cp) {
            ec.push_back(t.cod_channels()[static_cast<std::size_t>(p)]);
            ac.push_back(t.graph().cod()[static_cast<std::size_t>(p)]);
        }
        bool simple = t.graph().nodes().size() == 1;
        Printed out;
        if (syn_ == Syntax::Math) {
            out.text = simple ? e : e;
            return out;
        }
        bool bare = syn_ == Syntax::Verbose && simple && !is_keyword(e);
        out.text = (bare ? "" : "#") + e;
        bool defaults = true;
        auto check_side = [&](const std::vector<std::string>& atoms, const std::vector<std::string>& chs,
                              const std::map<std::string, Protocol>& side) {
            std::set<std::string> used;
            for (std::size_t i = 0; i < atoms.size(); ++i) {
                std::string pick;
                for (const auto& [c, p] : side)
                    if (!used.count(c) && p.is_atom() && p.atom_name() == atoms[i]) {
                        pick = c;
                        break;
                    }
                used.insert(pick);
                if (pick != chs[i]) defaults = false;
            }
        };
        check_side(ad, ed, s.dom);
        check_side(ac, ec, s.cod);
        if (!defaults) {
            out.text += "[";
            for (std::size_t i = 0; i < ed.size(); ++i) out.text += (i ? "," : "") + ed[i];
            out.text += "|";
            for (std::size_t i = 0; i < ec.size(); ++i) out.text += (i ? "," : "") + ec[i];
            out.text += "]";
            out.mentioned.insert(ed.begin(), ed.end());
            out.mentioned.insert(ec.begin(), ec.end());
        }
        return out;
    }

    Printed input(const Term& t, const Sequent& s, bool tail, int indent) {
        Printed out;
        out.mentioned.insert(t.channel());
        const bool cot = t.kind() == Term::Kind::Cotuple;
        const std::size_t n = t.branch_count();
        if (syn_ == Syntax::Verbose) {
            out.text = "input on " + t.channel() + " of";
            for (std::size_t i = 0; i < n; ++i) {
                bool last = i + 1 == n;
                Printed b = print(t.branch(i), child_sequent(t, s, i), last ? tail : false, indent + 4);
                out.text += "\n" + pad(indent + 2) + "| " + t.branch_event(i) + " => " + b.text;
                out.mentioned.insert(b.mentioned.begin(), b.mentioned.end());
            }
            if (!tail) out.text += "\n" + pad(indent) + "end";
            return out;
        }
        const char* arrow = syn_ == Syntax::Math ? " ↦ " : " => ";
        out.text = ch(t.channel()) + (cot ? "{" : "(");
        for (std::size_t i = 0; i < n; ++i) {
            Printed b = print(t.branch(i), child_sequent(t, s, i), true, indent);
            out.text += (i ? ", " : "") + t.branch_event(i) + arrow + b.text;
            out.mentioned.insert(b.mentioned.begin(), b.mentioned.end());
        }
        out.text += cot ? "}" : ")";
        return out;
    }

    Printed output(const Term& t, const Sequent& s, bool tail, int indent) {
        Printed b = print(t.body(), child_sequent(t, s, 0), tail, indent);
        Printed out;
        out.mentioned = b.mentioned;
        out.mentioned.insert(t.channel());
        if (syn_ == Syntax::Verbose) {
            out.text = "output " + t.event() + " on " + t.channel() + " then " + b.text;
        } else if (syn_ == Syntax::Math) {
            out.text = std::string(t.kind() == Term::Kind::Injection ? "→" : "←") + ch(t.channel()) + "[" +
                       t.event() + "](" + b.text + ")";
        } else {
            out.text = t.channel() + "![" + t.event() + "](" + b.text + ")";
        }
        return out;
    }

    Printed cut(const Term& t, const Sequent& s, bool tail, int indent) {
        Printed l = print(t.left(), child_sequent(t, s, 0), true, indent + 4);
        Printed r = print(t.right(), child_sequent(t, s, 1), tail, indent + 4);
        Printed out;
        out.mentioned = l.mentioned;
        out.mentioned.insert(r.mentioned.begin(), r.mentioned.end());
        out.mentioned.erase(t.channel());
        if (syn_ == Syntax::Math) {
            out.text = "(" + l.text + " ;" + ch(t.channel()) + " " + r.text + ")";
            return out;
        }
        bool need_split = false;
        for (const auto& c : s.channels())
            if (!out.mentioned.count(c)) need_split = true;
        std::string head = t.channel() + ":" + t.cut_protocol().str();
        if (need_split && t.split()) {
            head += " [";
            for (std::size_t i = 0; i < t.split()->dom.size(); ++i) head += (i ? "," : "") + t.split()->dom[i];
            head += "|";
            for (std::size_t i = 0; i < t.split()->cod.size(); ++i) head += (i ? "," : "") + t.split()->cod[i];
            head += "]";
            for (const auto& c : s.channels()) out.mentioned.insert(c);
        }
        if (syn_ == Syntax::Verbose) {
            out.text = "plug " + head + " in\n" + pad(indent + 4) + l.text + "\n" + pad(indent) + "to " +
                       t.channel() + " in\n" + pad(indent + 4) + r.text;
        } else {
            out.text = "cut " + head + " (" + l.text + ")(" + r.text + ")";
        }
        return out;
    }

    Syntax syn_;
};

}  // namespace

std::string print_term(const TypedTerm& t, Syntax syn) {
    Printer p(syn);
    return p.print(t.term, t.sequent, true, 0).text;
}

}  // namespace sigmapi
