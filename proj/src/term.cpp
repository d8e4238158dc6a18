#include "sigmapi/term.hpp"

#include <algorithm>
#include <numeric>

#include "sigmapi/error.hpp"
#include "sigmapi/sequent.hpp"

namespace sigmapi {

namespace {

std::vector<TermBranch> make_branches(std::vector<std::pair<std::string, Term>> bs) {
    std::sort(bs.begin(), bs.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<TermBranch> out;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        if (i > 0 && bs[i].first == bs[i - 1].first) throw Error("duplicate branch '" + bs[i].first + "'");
        out.push_back({bs[i].first, std::make_shared<const Term>(std::move(bs[i].second))});
    }
    return out;
}

}  // namespace

Term Term::identity() {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Identity;
    return Term(n);
}

Term Term::atomic(WiringGraph g) {
    if (g.is_identity()) return identity();
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atomic;
    n->graph = std::move(g);
    return Term(n);
}

Term Term::atomic(WiringGraph g, std::vector<std::string> dom_ch, std::vector<std::string> cod_ch) {
    if (g.is_identity()) return identity();
    if (dom_ch.size() != g.dom().size() || cod_ch.size() != g.cod().size())
        throw Error("atomic binding does not match the number of ports");
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atomic;
    n->graph = std::move(g);
    n->bound = true;
    n->dom_ch = std::move(dom_ch);
    n->cod_ch = std::move(cod_ch);
    return Term(n);
}

Term Term::cotuple(std::string ch, std::vector<std::pair<std::string, Term>> branches) {
    return input(Side::Domain, std::move(ch), std::move(branches));
}

Term Term::tuple(std::string ch, std::vector<std::pair<std::string, Term>> branches) {
    return input(Side::Codomain, std::move(ch), std::move(branches));
}

Term Term::input(Side side, std::string ch, std::vector<std::pair<std::string, Term>> branches) {
    auto n = std::make_shared<Node>();
    n->kind = side == Side::Domain ? Kind::Cotuple : Kind::Tuple;
    n->channel = std::move(ch);
    n->branches = make_branches(std::move(branches));
    return Term(n);
}

Term Term::injection(std::string ch, std::string ev, Term body) {
    return output(Side::Codomain, std::move(ch), std::move(ev), std::move(body));
}

Term Term::projection(std::string ch, std::string ev, Term body) {
    return output(Side::Domain, std::move(ch), std::move(ev), std::move(body));
}

Term Term::output(Side side, std::string ch, std::string ev, Term body) {
    auto n = std::make_shared<Node>();
    n->kind = side == Side::Codomain ? Kind::Injection : Kind::Projection;
    n->channel = std::move(ch);
    n->event = std::move(ev);
    n->children.push_back(std::make_shared<const Term>(std::move(body)));
    return Term(n);
}

Term Term::cut(std::string ch, Protocol z, std::optional<CutSplit> split, Term left, Term right) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Cut;
    n->channel = std::move(ch);
    n->proto = std::move(z);
    if (split) {
        std::sort(split->dom.begin(), split->dom.end());
        std::sort(split->cod.begin(), split->cod.end());
    }
    n->split = std::move(split);
    n->children.push_back(std::make_shared<const Term>(std::move(left)));
    n->children.push_back(std::make_shared<const Term>(std::move(right)));
    return Term(n);
}

Side Term::side() const {
    switch (kind()) {
        case Kind::Cotuple:
        case Kind::Projection:
            return Side::Domain;
        case Kind::Tuple:
        case Kind::Injection:
            return Side::Codomain;
        default:
            throw Error("Term::side called on a node without a channel side");
    }
}

const Term* Term::find_branch(const std::string& ev) const {
    for (const auto& b : n_->branches)
        if (b.event == ev) return b.body.get();
    return nullptr;
}

std::size_t Term::child_count() const {
    return is_input() ? n_->branches.size() : n_->children.size();
}

const Term& Term::child(std::size_t i) const {
    if (i >= child_count()) throw Error("child index out of range");
    return is_input() ? *n_->branches[i].body : *n_->children[i];
}

Term Term::with_children(std::vector<Term> children) const {
    if (children.size() != child_count()) throw Error("with_children: wrong number of children");
    auto n = std::make_shared<Node>(*n_);
    if (is_input()) {
        for (std::size_t i = 0; i < children.size(); ++i)
            n->branches[i].body = std::make_shared<const Term>(std::move(children[i]));
    } else {
        for (std::size_t i = 0; i < children.size(); ++i)
            n->children[i] = std::make_shared<const Term>(std::move(children[i]));
    }
    return Term(n);
}

Term Term::with_split(CutSplit s) const {
    if (!is_cut()) throw Error("with_split on a non-cut node");
    std::sort(s.dom.begin(), s.dom.end());
    std::sort(s.cod.begin(), s.cod.end());
    auto n = std::make_shared<Node>(*n_);
    n->split = std::move(s);
    return Term(n);
}

const Term& Term::at(const std::vector<int>& path) const {
    const Term* t = this;
    for (int i : path) t = &t->child(static_cast<std::size_t>(i));
    return *t;
}

Term Term::replace_at(const std::vector<int>& path, const Term& sub) const {
    if (path.empty()) return sub;
    std::vector<Term> cs;
    for (std::size_t i = 0; i < child_count(); ++i) cs.push_back(child(i));
    std::vector<int> rest(path.begin() + 1, path.end());
    cs.at(static_cast<std::size_t>(path[0])) = child(static_cast<std::size_t>(path[0])).replace_at(rest, sub);
    return with_children(std::move(cs));
}

std::size_t Term::size() const {
    if (kind() == Kind::Atomic) return std::max<std::size_t>(1, graph().nodes().size());
    if (kind() == Kind::Identity) return 1;
    std::size_t s = 1;
    for (std::size_t i = 0; i < child_count(); ++i) s += child(i).size();
    return s;
}

std::size_t Term::depth() const {
    std::size_t d = 0;
    for (std::size_t i = 0; i < child_count(); ++i) d = std::max(d, child(i).depth());
    return d + 1;
}

std::size_t Term::cut_count() const {
    std::size_t c = is_cut() ? 1 : 0;
    for (std::size_t i = 0; i < child_count(); ++i) c += child(i).cut_count();
    return c;
}

std::set<std::string> Term::mentioned_channels() const {
    std::set<std::string> out;
    switch (kind()) {
        case Kind::Identity:
            break;
        case Kind::Atomic:
            out.insert(dom_channels().begin(), dom_channels().end());
            out.insert(cod_channels().begin(), cod_channels().end());
            break;
        case Kind::Cut: {
            for (std::size_t i = 0; i < 2; ++i) {
                auto s = child(i).mentioned_channels();
                out.insert(s.begin(), s.end());
            }
            out.erase(channel());
            if (split()) {
                out.insert(split()->dom.begin(), split()->dom.end());
                out.insert(split()->cod.begin(), split()->cod.end());
            }
            break;
        }
        default:
            out.insert(channel());
            for (std::size_t i = 0; i < child_count(); ++i) {
                auto s = child(i).mentioned_channels();
                out.insert(s.begin(), s.end());
            }
    }
    return out;
}

std::set<std::string> Term::all_channels() const {
    std::set<std::string> out = mentioned_channels();
    if (is_cut()) out.insert(channel());
    for (std::size_t i = 0; i < child_count(); ++i) {
        auto s = child(i).all_channels();
        out.insert(s.begin(), s.end());
    }
    return out;
}

std::strong_ordering Term::operator<=>(const Term& o) const {
    if (n_ == o.n_) return std::strong_ordering::equal;
    const Node& a = *n_;
    const Node& b = *o.n_;
    if (auto c = a.kind <=> b.kind; c != 0) return c;
    if (auto c = a.channel <=> b.channel; c != 0) return c;
    if (auto c = a.event <=> b.event; c != 0) return c;
    if (a.kind == Kind::Atomic) {
        if (auto c = a.bound <=> b.bound; c != 0) return c;
        if (auto c = a.dom_ch <=> b.dom_ch; c != 0) return c;
        if (auto c = a.cod_ch <=> b.cod_ch; c != 0) return c;
        return a.graph <=> b.graph;
    }
    if (a.kind == Kind::Cut) {
        if (auto c = a.proto <=> b.proto; c != 0) return c;
        if (auto c = a.split <=> b.split; c != 0) return c;
    }
    if (auto c = child_count() <=> o.child_count(); c != 0) return c;
    for (std::size_t i = 0; i < child_count(); ++i) {
        if (is_input())
            if (auto c = branch_event(i) <=> o.branch_event(i); c != 0) return c;
        if (auto c = child(i) <=> o.child(i); c != 0) return c;
    }
    return std::strong_ordering::equal;
}

bool Term::operator==(const Term& o) const { return (*this <=> o) == 0; }

bool alpha_equal(const Term& a, const Term& b) {
    if (a.kind() != b.kind()) return false;
    if (a.is_cut()) {
        if (a.cut_protocol() != b.cut_protocol() || a.split() != b.split()) return false;
        Term la = a.left(), ra = a.right(), lb = b.left(), rb = b.right();
        if (a.channel() != b.channel()) {
            std::set<std::string> used = a.all_channels();
            auto ub = b.all_channels();
            used.insert(ub.begin(), ub.end());
            std::string fresh = fresh_name("k", used);
            la = rename(la, {{a.channel(), fresh}});
            ra = rename(ra, {{a.channel(), fresh}});
            lb = rename(lb, {{b.channel(), fresh}});
            rb = rename(rb, {{b.channel(), fresh}});
        }
        return alpha_equal(la, lb) && alpha_equal(ra, rb);
    }
    if (a.is_leaf()) return a == b;
    if (a.channel() != b.channel() || a.event() != b.event() || a.child_count() != b.child_count()) return false;
    for (std::size_t i = 0; i < a.child_count(); ++i) {
        if (a.is_input() && a.branch_event(i) != b.branch_event(i)) return false;
        if (!alpha_equal(a.child(i), b.child(i))) return false;
    }
    return true;
}

Term normalize_leaf(const WiringGraph& g, const std::vector<std::string>& dom_ch,
                    const std::vector<std::string>& cod_ch) {
    if (g.is_identity()) return Term::identity();
    auto order = [](const std::vector<std::string>& chs) {
        std::vector<int> idx(chs.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](int x, int y) { return chs[x] < chs[y]; });
        return idx;
    };
    std::vector<int> d = order(dom_ch), c = order(cod_ch);
    std::vector<std::string> nd, nc;
    for (int i : d) nd.push_back(dom_ch[i]);
    for (int i : c) nc.push_back(cod_ch[i]);
    return Term::atomic(g.permuted(d, c), nd, nc);
}

Term rename(const Term& t, const std::map<std::string, std::string>& subst_in) {
    std::map<std::string, std::string> subst;
    for (const auto& [k, v] : subst_in)
        if (k != v) subst.emplace(k, v);
    if (subst.empty()) return t;
    auto map_ch = [&](const std::string& c) {
        auto it = subst.find(c);
        return it == subst.end() ? c : it->second;
    };
    switch (t.kind()) {
        case Term::Kind::Identity:
            return t;
        case Term::Kind::Atomic: {
            if (!t.bound()) return t;
            std::vector<std::string> d, c;
            for (const auto& x : t.dom_channels()) d.push_back(map_ch(x));
            for (const auto& x : t.cod_channels()) c.push_back(map_ch(x));
            return normalize_leaf(t.graph(), d, c);
        }
        case Term::Kind::Cut: {
            auto inner = subst;
            inner.erase(t.channel());
            std::string g = t.channel();
            Term l = t.left(), r = t.right();
            bool captures = false;
            for (const auto& [k, v] : inner)
                if (v == g) captures = true;
            if (captures) {
                std::set<std::string> used = t.all_channels();
                for (const auto& [k, v] : inner) {
                    used.insert(k);
                    used.insert(v);
                }
                std::string fresh = fresh_name(g, used);
                l = rename(l, {{g, fresh}});
                r = rename(r, {{g, fresh}});
                g = fresh;
            }
            std::optional<CutSplit> sp = t.split();
            if (sp) {
                for (auto& x : sp->dom) x = map_ch(x);
                for (auto& x : sp->cod) x = map_ch(x);
            }
            return Term::cut(g, t.cut_protocol(), sp, rename(l, inner), rename(r, inner));
        }
        case Term::Kind::Cotuple:
        case Term::Kind::Tuple: {
            std::vector<std::pair<std::string, Term>> bs;
            for (std::size_t i = 0; i < t.branch_count(); ++i)
                bs.emplace_back(t.branch_event(i), rename(t.branch(i), subst));
            return Term::input(t.side(), map_ch(t.channel()), std::move(bs));
        }
        case Term::Kind::Injection:
        case Term::Kind::Projection:
            return Term::output(t.side(), map_ch(t.channel()), t.event(), rename(t.body(), subst));
    }
    return t;
}

}  // namespace sigmapi
