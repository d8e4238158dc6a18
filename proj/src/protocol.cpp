#include "sigmapi/protocol.hpp"

#include <algorithm>
#include <sstream>

#include "lexer.hpp"
#include "sigmapi/error.hpp"

namespace sigmapi {

struct Protocol::Node {
    Kind kind;
    std::string atom;
    std::vector<ProtocolBranch> branches;
};

Protocol::Protocol() : Protocol(atom("A")) {}

Protocol Protocol::atom(std::string name) {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Atom;
    n->atom = std::move(name);
    return Protocol(std::move(n));
}

Protocol Protocol::make(Kind k, std::vector<ProtocolBranch> branches) {
    if (k == Kind::Atom) throw Error("Protocol::make called with Atom kind");
    std::sort(branches.begin(), branches.end(),
              [](const ProtocolBranch& a, const ProtocolBranch& b) { return a.event < b.event; });
    for (std::size_t i = 1; i < branches.size(); ++i)
        if (branches[i].event == branches[i - 1].event)
            throw Error("duplicate event '" + branches[i].event + "'");
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->branches = std::move(branches);
    return Protocol(std::move(n));
}

Protocol Protocol::sum(std::vector<ProtocolBranch> branches) { return make(Kind::Sum, std::move(branches)); }

Protocol Protocol::product(std::vector<ProtocolBranch> branches) {
    return make(Kind::Product, std::move(branches));
}

Protocol::Kind Protocol::kind() const { return node_->kind; }

bool Protocol::empty() const { return node_->kind != Kind::Atom && node_->branches.empty(); }

const std::string& Protocol::atom_name() const { return node_->atom; }

const std::vector<ProtocolBranch>& Protocol::branches() const { return node_->branches; }

const Protocol* Protocol::find(std::string_view event) const {
    const auto& bs = node_->branches;
    auto it = std::lower_bound(bs.begin(), bs.end(), event,
                               [](const ProtocolBranch& b, std::string_view e) { return b.event < e; });
    if (it == bs.end() || it->event != event) return nullptr;
    return &it->proto;
}

const Protocol& Protocol::at(std::string_view event) const {
    const Protocol* p = find(event);
    if (!p) throw Error("protocol " + str() + " has no event '" + std::string(event) + "'");
    return *p;
}

std::vector<std::string> Protocol::events() const {
    std::vector<std::string> out;
    for (const auto& b : node_->branches) out.push_back(b.event);
    return out;
}

std::size_t Protocol::depth() const {
    std::size_t d = 0;
    for (const auto& b : node_->branches) d = std::max(d, b.proto.depth());
    return is_atom() ? 0 : d + 1;
}

std::size_t Protocol::size() const {
    std::size_t s = 1;
    for (const auto& b : node_->branches) s += b.proto.size();
    return s;
}

std::strong_ordering Protocol::operator<=>(const Protocol& other) const {
    if (node_ == other.node_) return std::strong_ordering::equal;
    if (auto c = node_->kind <=> other.node_->kind; c != 0) return c;
    if (node_->kind == Kind::Atom) return node_->atom <=> other.node_->atom;
    const auto& a = node_->branches;
    const auto& b = other.node_->branches;
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (auto c = a[i].event <=> b[i].event; c != 0) return c;
        if (auto c = a[i].proto <=> b[i].proto; c != 0) return c;
    }
    return a.size() <=> b.size();
}

bool Protocol::operator==(const Protocol& other) const { return (*this <=> other) == 0; }

std::string Protocol::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Protocol& p) {
    if (p.is_atom()) return os << p.atom_name();
    os << (p.is_sum() ? '{' : '(');
    bool first = true;
    for (const auto& b : p.branches()) {
        if (!first) os << ',';
        first = false;
        os << b.event << ':' << b.proto;
    }
    return os << (p.is_sum() ? '}' : ')');
}

Protocol dual(const Protocol& p) {
    if (p.is_atom()) return p;
    std::vector<ProtocolBranch> bs;
    for (const auto& b : p.branches()) bs.push_back({b.event, dual(b.proto)});
    return Protocol::make(p.is_sum() ? Protocol::Kind::Product : Protocol::Kind::Sum, std::move(bs));
}

bool is_input_state(const Protocol& p, Side side) {
    return side == Side::Domain ? p.is_sum() : p.is_product();
}

bool is_output_state(const Protocol& p, Side side) {
    return side == Side::Domain ? p.is_product() : p.is_sum();
}

bool is_atom_identifier(std::string_view s) {
    return !s.empty() && std::isupper(static_cast<unsigned char>(s[0]));
}

bool is_name_identifier(std::string_view s) {
    return !s.empty() && (std::islower(static_cast<unsigned char>(s[0])) ||
                          std::isdigit(static_cast<unsigned char>(s[0])));
}

namespace detail {

Protocol parse_protocol(Lexer& lx) {
    if (lx.is_ident()) {
        std::size_t pos = lx.offset();
        std::string name = lx.next().text;
        if (!is_atom_identifier(name)) throw ParseError("atom names start with an uppercase letter", pos);
        return Protocol::atom(name);
    }
    bool sum = lx.is_sym("{");
    if (!sum && !lx.is_sym("(")) lx.fail("expected protocol");
    lx.next();
    const char* close = sum ? "}" : ")";
    std::vector<ProtocolBranch> bs;
    std::vector<std::string> seen;
    if (!lx.is_sym(close)) {
        do {
            std::size_t pos = lx.offset();
            std::string ev = lx.ident("event name");
            if (!is_name_identifier(ev)) throw ParseError("event names start with a lowercase letter or digit", pos);
            if (std::find(seen.begin(), seen.end(), ev) != seen.end())
                throw ParseError("duplicate event '" + ev + "'", pos);
            seen.push_back(ev);
            lx.expect(":");
            bs.push_back({ev, parse_protocol(lx)});
        } while (lx.accept(","));
    }
    lx.expect(close);
    return Protocol::make(sum ? Protocol::Kind::Sum : Protocol::Kind::Product, std::move(bs));
}

}  // namespace detail

Protocol parse_protocol(std::string_view text) {
    detail::Lexer lx(text);
    Protocol p = detail::parse_protocol(lx);
    if (!lx.at_end()) lx.fail("trailing input after protocol");
    return p;
}

}  // namespace sigmapi
