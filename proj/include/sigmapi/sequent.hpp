#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sigmapi/protocol.hpp"

namespace sigmapi {

// Gamma |- Delta with both sides keyed by channel.
struct Sequent {
    std::map<std::string, Protocol> dom;
    std::map<std::string, Protocol> cod;

    std::optional<Side> side_of(std::string_view ch) const;
    const Protocol& at(std::string_view ch) const;
    bool has(std::string_view ch) const { return side_of(ch).has_value(); }

    // Copy with the protocol on an existing channel replaced.
    Sequent with(const std::string& ch, const Protocol& p) const;
    Sequent without(const std::string& ch) const;

    std::set<std::string> channels() const;
    std::size_t channel_count() const { return dom.size() + cod.size(); }
    bool all_atomic() const;

    // Root-level unit: an empty Sum in the domain or an empty Product in
    // the codomain.  Returns the least such channel name.
    std::optional<std::string> root_unit() const;

    auto operator<=>(const Sequent&) const = default;
    bool operator==(const Sequent&) const = default;

    std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const Sequent& s);

Sequent parse_sequent(std::string_view text);

// Least name of the form base, base1, base2, ... not in used.
std::string fresh_name(const std::string& base, const std::set<std::string>& used);

}  // namespace sigmapi
