#pragma once

#include <compare>
#include <memory>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sigmapi {

enum class Side { Domain, Codomain };

inline Side opposite(Side s) { return s == Side::Domain ? Side::Codomain : Side::Domain; }

class Protocol;

struct ProtocolBranch;

// Immutable formula tree.  Branches are kept sorted by event so that two
// protocols with the same event-keyed children compare equal.
class Protocol {
public:
    enum class Kind { Atom, Sum, Product };

    Protocol();  // the atom "A"
    static Protocol atom(std::string name);
    static Protocol sum(std::vector<ProtocolBranch> branches);
    static Protocol product(std::vector<ProtocolBranch> branches);
    static Protocol make(Kind k, std::vector<ProtocolBranch> branches);

    Kind kind() const;
    bool is_atom() const { return kind() == Kind::Atom; }
    bool is_sum() const { return kind() == Kind::Sum; }
    bool is_product() const { return kind() == Kind::Product; }
    bool is_compound() const { return !is_atom(); }
    bool empty() const;  // Sum or Product without branches

    const std::string& atom_name() const;
    const std::vector<ProtocolBranch>& branches() const;
    const Protocol* find(std::string_view event) const;
    const Protocol& at(std::string_view event) const;
    std::vector<std::string> events() const;

    std::size_t depth() const;
    std::size_t size() const;

    std::strong_ordering operator<=>(const Protocol& other) const;
    bool operator==(const Protocol& other) const;

    std::string str() const;

private:
    struct Node;
    explicit Protocol(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

struct ProtocolBranch {
    std::string event;
    Protocol proto;
    bool operator==(const ProtocolBranch&) const = default;
};

std::ostream& operator<<(std::ostream& os, const Protocol& p);

Protocol dual(const Protocol& p);

// Whether the next transition from a compound state is an input when the
// protocol sits on the given side of a sequent.
bool is_input_state(const Protocol& p, Side side);
bool is_output_state(const Protocol& p, Side side);

Protocol parse_protocol(std::string_view text);

bool is_atom_identifier(std::string_view s);
bool is_name_identifier(std::string_view s);

}  // namespace sigmapi
