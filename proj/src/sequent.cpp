#include "sigmapi/sequent.hpp"

#include <sstream>

#include "lexer.hpp"
#include "sigmapi/error.hpp"

namespace sigmapi {

namespace detail {
Protocol parse_protocol(Lexer& lx);
Sequent parse_sequent(Lexer& lx);
}  // namespace detail

std::optional<Side> Sequent::side_of(std::string_view ch) const {
    std::string key(ch);
    if (dom.count(key)) return Side::Domain;
    if (cod.count(key)) return Side::Codomain;
    return std::nullopt;
}

const Protocol& Sequent::at(std::string_view ch) const {
    std::string key(ch);
    if (auto it = dom.find(key); it != dom.end()) return it->second;
    if (auto it = cod.find(key); it != cod.end()) return it->second;
    throw Error("channel '" + key + "' not in sequent " + str());
}

Sequent Sequent::with(const std::string& ch, const Protocol& p) const {
    Sequent s = *this;
    if (auto it = s.dom.find(ch); it != s.dom.end()) {
        it->second = p;
    } else if (auto jt = s.cod.find(ch); jt != s.cod.end()) {
        jt->second = p;
    } else {
        throw Error("channel '" + ch + "' not in sequent " + str());
    }
    return s;
}

Sequent Sequent::without(const std::string& ch) const {
    Sequent s = *this;
    s.dom.erase(ch);
    s.cod.erase(ch);
    return s;
}

std::set<std::string> Sequent::channels() const {
    std::set<std::string> out;
    for (const auto& [k, v] : dom) out.insert(k);
    for (const auto& [k, v] : cod) out.insert(k);
    return out;
}

bool Sequent::all_atomic() const {
    for (const auto& [k, v] : dom)
        if (!v.is_atom()) return false;
    for (const auto& [k, v] : cod)
        if (!v.is_atom()) return false;
    return true;
}

std::optional<std::string> Sequent::root_unit() const {
    std::optional<std::string> best;
    for (const auto& [k, v] : dom)
        if (v.is_sum() && v.empty() && (!best || k < *best)) best = k;
    for (const auto& [k, v] : cod)
        if (v.is_product() && v.empty() && (!best || k < *best)) best = k;
    return best;
}

std::string Sequent::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Sequent& s) {
    bool first = true;
    for (const auto& [k, v] : s.dom) {
        os << (first ? "" : ", ") << k << ':' << v;
        first = false;
    }
    os << (s.dom.empty() ? "|-" : " |-");
    first = true;
    for (const auto& [k, v] : s.cod) {
        os << (first ? " " : ", ") << k << ':' << v;
        first = false;
    }
    return os;
}

namespace detail {

Sequent parse_sequent(Lexer& lx) {
    Sequent s;
    auto side = [&](std::map<std::string, Protocol>& m) {
        if (!lx.is_ident()) return;
        do {
            std::size_t pos = lx.offset();
            std::string ch = lx.ident("channel name");
            if (!is_name_identifier(ch)) throw ParseError("channel names start with a lowercase letter", pos);
            if (s.has(ch)) throw ParseError("channel '" + ch + "' declared twice", pos);
            lx.expect(":");
            m.emplace(ch, parse_protocol(lx));
        } while (lx.accept(","));
    };
    side(s.dom);
    lx.expect("|-");
    side(s.cod);
    return s;
}

}  // namespace detail

Sequent parse_sequent(std::string_view text) {
    detail::Lexer lx(text);
    Sequent s = detail::parse_sequent(lx);
    if (!lx.at_end()) lx.fail("trailing input after sequent");
    return s;
}

std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
    if (!used.count(base)) return base;
    std::string stem = base;
    while (!stem.empty() && std::isdigit(static_cast<unsigned char>(stem.back()))) stem.pop_back();
    if (stem.empty()) stem = base;
    for (int k = 1;; ++k) {
        std::string cand = stem + std::to_string(k);
        if (!used.count(cand)) return cand;
    }
}

}  // namespace sigmapi
