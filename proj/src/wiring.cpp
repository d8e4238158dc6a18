#include "sigmapi/wiring.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "lexer.hpp"
#include "sigmapi/error.hpp"
#include "sigmapi/protocol.hpp"

namespace sigmapi {

void AtomTheory::add_generator(Generator g) {
    if (gens_.count(g.name)) throw Error("generator '" + g.name + "' defined twice");
    for (const auto& a : g.dom) atoms_.insert(a);
    for (const auto& a : g.cod) atoms_.insert(a);
    std::string name = g.name;
    gens_.emplace(name, std::move(g));
}

const Generator* AtomTheory::find(std::string_view name) const {
    auto it = gens_.find(std::string(name));
    return it == gens_.end() ? nullptr : &it->second;
}

AtomTheory AtomTheory::parse(std::string_view text) {
    AtomTheory th;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t nl = text.find('\n', line_start);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(line_start, nl - line_start);
        std::size_t base = line_start;
        line_start = nl + 1;
        detail::Lexer lx(line);
        if (lx.at_end()) continue;
        try {
            Generator g;
            g.name = lx.ident("generator name");
            if (!is_name_identifier(g.name)) lx.fail("generator names start with a lowercase letter");
            lx.expect(":");
            while (lx.is_ident()) {
                std::string a = lx.next().text;
                if (!is_atom_identifier(a)) lx.fail("atom names start with an uppercase letter");
                g.dom.push_back(a);
            }
            lx.expect("->");
            while (lx.is_ident()) {
                std::string a = lx.next().text;
                if (!is_atom_identifier(a)) lx.fail("atom names start with an uppercase letter");
                g.cod.push_back(a);
            }
            if (!lx.at_end()) lx.fail("trailing input in generator line");
            th.add_generator(std::move(g));
        } catch (const ParseError& e) {
            throw ParseError(std::string("atom theory: ") + e.what(), base + e.position);
        }
        if (nl == text.size()) break;
    }
    return th;
}

std::string AtomTheory::str() const {
    std::ostringstream os;
    for (const auto& [name, g] : gens_) {
        os << name << " :";
        for (const auto& a : g.dom) os << ' ' << a;
        os << " ->";
        for (const auto& a : g.cod) os << ' ' << a;
        os << '\n';
    }
    return os.str();
}

WiringGraph WiringGraph::identity(const std::string& atom) {
    WiringGraph w;
    w.dom_ = {atom};
    w.cod_ = {atom};
    w.cod_src_ = {Port{-1, 0}};
    return w;
}

WiringGraph WiringGraph::generator(const Generator& g) {
    WiringGraph w;
    w.dom_ = g.dom;
    w.cod_ = g.cod;
    w.nodes_.push_back(Node{g.name, g.dom, g.cod});
    std::vector<Port> in;
    for (std::size_t k = 0; k < g.dom.size(); ++k) in.push_back(Port{-1, static_cast<int>(k)});
    w.in_src_.push_back(in);
    for (std::size_t k = 0; k < g.cod.size(); ++k) w.cod_src_.push_back(Port{0, static_cast<int>(k)});
    return w;
}

WiringGraph atom_compose(const WiringGraph& f, std::size_t out_port, const WiringGraph& g, std::size_t in_port) {
    if (out_port >= f.cod_.size() || in_port >= g.dom_.size()) throw Error("atom_compose: port out of range");
    if (f.cod_[out_port] != g.dom_[in_port])
        throw Error("atom_compose: atom mismatch " + f.cod_[out_port] + " vs " + g.dom_[in_port]);
    const int fdom = static_cast<int>(f.dom_.size());
    const int fcod = static_cast<int>(f.cod_.size());
    const int off = static_cast<int>(f.nodes_.size());
    const int ip = static_cast<int>(in_port);
    const int op = static_cast<int>(out_port);

    WiringGraph r;
    r.dom_ = f.dom_;
    for (int i = 0; i < static_cast<int>(g.dom_.size()); ++i)
        if (i != ip) r.dom_.push_back(g.dom_[i]);
    for (int j = 0; j < fcod; ++j)
        if (j != op) r.cod_.push_back(f.cod_[j]);
    for (const auto& a : g.cod_) r.cod_.push_back(a);
    r.nodes_ = f.nodes_;
    r.nodes_.insert(r.nodes_.end(), g.nodes_.begin(), g.nodes_.end());

    const Port glued = f.cod_src_[op];
    auto from_g = [&](Port s) -> Port {
        if (s.node >= 0) return Port{s.node + off, s.index};
        if (s.index == ip) return glued;
        return Port{-1, fdom + (s.index < ip ? s.index : s.index - 1)};
    };

    for (int j = 0; j < fcod; ++j)
        if (j != op) r.cod_src_.push_back(f.cod_src_[j]);
    for (const auto& s : g.cod_src_) r.cod_src_.push_back(from_g(s));
    r.in_src_ = f.in_src_;
    for (const auto& ins : g.in_src_) {
        std::vector<Port> v;
        for (const auto& s : ins) v.push_back(from_g(s));
        r.in_src_.push_back(v);
    }
    return r.canonical();
}

namespace {

struct Targets {
    std::vector<Port> dom_tgt;                 // boundary domain port -> target
    std::vector<std::vector<Port>> out_tgt;    // node output port -> target
};

Targets targets_of(const std::vector<std::string>& dom, const std::vector<WiringGraph::Node>& nodes,
                   const std::vector<Port>& cod_src, const std::vector<std::vector<Port>>& in_src) {
    Targets t;
    t.dom_tgt.assign(dom.size(), Port{-2, 0});
    t.out_tgt.resize(nodes.size());
    for (std::size_t n = 0; n < nodes.size(); ++n) t.out_tgt[n].assign(nodes[n].cod.size(), Port{-2, 0});
    auto record = [&](Port src, Port tgt) {
        if (src.node < 0)
            t.dom_tgt[src.index] = tgt;
        else
            t.out_tgt[src.node][src.index] = tgt;
    };
    for (std::size_t j = 0; j < cod_src.size(); ++j) record(cod_src[j], Port{-1, static_cast<int>(j)});
    for (std::size_t n = 0; n < in_src.size(); ++n)
        for (std::size_t k = 0; k < in_src[n].size(); ++k)
            record(in_src[n][k], Port{static_cast<int>(n), static_cast<int>(k)});
    return t;
}

}  // namespace

WiringGraph WiringGraph::canonical() const {
    const int n = static_cast<int>(nodes_.size());
    Targets tg = targets_of(dom_, nodes_, cod_src_, in_src_);
    std::vector<int> order;
    std::vector<int> pos(n, -1);

    std::function<void(int, std::vector<int>&, std::vector<int>&)> visit = [&](int v, std::vector<int>& ord,
                                                                               std::vector<int>& at) {
        at[v] = static_cast<int>(ord.size());
        ord.push_back(v);
        for (const auto& s : in_src_[v])
            if (s.node >= 0 && at[s.node] < 0) visit(s.node, ord, at);
        for (const auto& t : tg.out_tgt[v])
            if (t.node >= 0 && at[t.node] < 0) visit(t.node, ord, at);
    };

    for (const auto& t : tg.dom_tgt)
        if (t.node >= 0 && pos[t.node] < 0) visit(t.node, order, pos);
    for (const auto& s : cod_src_)
        if (s.node >= 0 && pos[s.node] < 0) visit(s.node, order, pos);

    // Components not reachable from the boundary: pick the start node that
    // gives the least local encoding.
    while (static_cast<int>(order.size()) < n) {
        std::string best_key;
        std::vector<int> best_ord;
        for (int c = 0; c < n; ++c) {
            if (pos[c] >= 0) continue;
            std::vector<int> ord;
            std::vector<int> at = pos;
            visit(c, ord, at);
            std::ostringstream os;
            for (int v : ord) {
                os << nodes_[v].name << '<';
                for (const auto& s : in_src_[v]) os << (s.node >= 0 ? at[s.node] - static_cast<int>(order.size()) : -1) << '.' << s.index << ' ';
                os << '>';
            }
            std::string k = os.str();
            if (best_ord.empty() || k < best_key) {
                best_key = k;
                best_ord = ord;
            }
        }
        for (int v : best_ord) {
            pos[v] = static_cast<int>(order.size());
            order.push_back(v);
        }
    }

    WiringGraph r;
    r.dom_ = dom_;
    r.cod_ = cod_;
    auto tr = [&](Port s) { return s.node < 0 ? s : Port{pos[s.node], s.index}; };
    for (int v : order) {
        r.nodes_.push_back(nodes_[v]);
        std::vector<Port> ins;
        for (const auto& s : in_src_[v]) ins.push_back(tr(s));
        r.in_src_.push_back(ins);
    }
    for (const auto& s : cod_src_) r.cod_src_.push_back(tr(s));
    return r;
}

WiringGraph WiringGraph::permuted(const std::vector<int>& dom_order, const std::vector<int>& cod_order) const {
    if (dom_order.size() != dom_.size() || cod_order.size() != cod_.size())
        throw Error("WiringGraph::permuted: size mismatch");
    std::vector<int> inv(dom_.size());
    for (std::size_t i = 0; i < dom_order.size(); ++i) inv[dom_order[i]] = static_cast<int>(i);
    auto tr = [&](Port s) { return s.node < 0 ? Port{-1, inv[s.index]} : s; };
    WiringGraph r;
    for (int o : dom_order) r.dom_.push_back(dom_[o]);
    for (int o : cod_order) r.cod_.push_back(cod_[o]);
    r.nodes_ = nodes_;
    for (const auto& ins : in_src_) {
        std::vector<Port> v;
        for (const auto& s : ins) v.push_back(tr(s));
        r.in_src_.push_back(v);
    }
    for (int o : cod_order) r.cod_src_.push_back(tr(cod_src_[o]));
    return r.canonical();
}

std::string WiringGraph::key() const {
    WiringGraph c = canonical();
    std::ostringstream os;
    for (const auto& a : c.dom_) os << a << ' ';
    os << "->";
    for (const auto& a : c.cod_) os << ' ' << a;
    os << " |";
    for (std::size_t v = 0; v < c.nodes_.size(); ++v) {
        os << ' ' << c.nodes_[v].name << '[';
        for (const auto& s : c.in_src_[v]) os << s.node << '.' << s.index << ' ';
        os << ']';
    }
    os << " out[";
    for (const auto& s : c.cod_src_) os << s.node << '.' << s.index << ' ';
    os << ']';
    return os.str();
}

std::string WiringGraph::expression(std::vector<int>& dom_ports, std::vector<int>& cod_ports) const {
    dom_ports.clear();
    cod_ports.clear();
    if (nodes_.empty()) throw Error("WiringGraph::expression: graph has no generators");
    Targets tg = targets_of(dom_, nodes_, cod_src_, in_src_);
    const int n = static_cast<int>(nodes_.size());
    std::vector<bool> in(n, false);
    in[0] = true;
    std::string e = nodes_[0].name;
    std::vector<Port> edom, ecod;
    for (int k = 0; k < static_cast<int>(nodes_[0].dom.size()); ++k) edom.push_back(Port{0, k});
    for (int k = 0; k < static_cast<int>(nodes_[0].cod.size()); ++k) ecod.push_back(Port{0, k});
    for (int added = 1; added < n; ++added) {
        bool done = false;
        for (int m = 0; m < n && !done; ++m) {
            if (in[m]) continue;
            for (std::size_t p = 0; p < ecod.size() && !done; ++p) {
                Port t = tg.out_tgt[ecod[p].node][ecod[p].index];
                if (t.node != m) continue;
                e = "(" + e + " " + std::to_string(p) + ";" + std::to_string(t.index) + " " + nodes_[m].name + ")";
                for (int x = 0; x < static_cast<int>(nodes_[m].dom.size()); ++x)
                    if (x != t.index) edom.push_back(Port{m, x});
                ecod.erase(ecod.begin() + static_cast<long>(p));
                for (int x = 0; x < static_cast<int>(nodes_[m].cod.size()); ++x) ecod.push_back(Port{m, x});
                in[m] = done = true;
            }
            for (std::size_t q = 0; q < edom.size() && !done; ++q) {
                Port s = in_src_[edom[q].node][edom[q].index];
                if (s.node != m) continue;
                e = "(" + nodes_[m].name + " " + std::to_string(s.index) + ";" + std::to_string(q) + " " + e + ")";
                std::vector<Port> nd, nc;
                for (int x = 0; x < static_cast<int>(nodes_[m].dom.size()); ++x) nd.push_back(Port{m, x});
                for (std::size_t y = 0; y < edom.size(); ++y)
                    if (y != q) nd.push_back(edom[y]);
                for (int x = 0; x < static_cast<int>(nodes_[m].cod.size()); ++x)
                    if (x != s.index) nc.push_back(Port{m, x});
                nc.insert(nc.end(), ecod.begin(), ecod.end());
                edom = nd;
                ecod = nc;
                in[m] = done = true;
            }
        }
        if (!done) throw Error("WiringGraph::expression: graph is not connected");
    }
    for (const auto& p : edom) {
        Port s = in_src_[p.node][p.index];
        if (s.node >= 0) throw Error("WiringGraph::expression: dangling internal wire");
        dom_ports.push_back(s.index);
    }
    for (const auto& p : ecod) {
        Port t = tg.out_tgt[p.node][p.index];
        if (t.node != -1) throw Error("WiringGraph::expression: dangling internal wire");
        cod_ports.push_back(t.index);
    }
    return e;
}

namespace detail {

WiringGraph parse_wiring(Lexer& lx, const AtomTheory& th) {
    if (lx.is_ident()) {
        std::size_t pos = lx.offset();
        std::string name = lx.next().text;
        const Generator* g = th.find(name);
        if (!g) throw ParseError("unknown atomic map '" + name + "'", pos);
        return WiringGraph::generator(*g);
    }
    lx.expect("(");
    WiringGraph a = parse_wiring(lx, th);
    auto number = [&]() {
        std::size_t pos = lx.offset();
        std::string t = lx.ident("port index");
        if (!std::all_of(t.begin(), t.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            throw ParseError("port index must be a number", pos);
        return static_cast<std::size_t>(std::stoul(t));
    };
    std::size_t pos = lx.offset();
    std::size_t j = number();
    lx.expect(";");
    std::size_t i = number();
    WiringGraph b = parse_wiring(lx, th);
    lx.expect(")");
    try {
        return atom_compose(a, j, b, i);
    } catch (const Error& e) {
        throw ParseError(e.what(), pos);
    }
}

}  // namespace detail

WiringGraph parse_wiring_expression(std::string_view text, const AtomTheory& th) {
    detail::Lexer lx(text);
    WiringGraph w = detail::parse_wiring(lx, th);
    if (!lx.at_end()) lx.fail("trailing input after wiring expression");
    return w;
}

}  // namespace sigmapi
