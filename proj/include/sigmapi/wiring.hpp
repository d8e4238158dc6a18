#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace sigmapi {

struct Generator {
    std::string name;
    std::vector<std::string> dom;  // atoms, port order
    std::vector<std::string> cod;
};

// The free polycategory presented by a set of atoms and generators.
class AtomTheory {
public:
    AtomTheory() = default;

    void add_atom(const std::string& a) { atoms_.insert(a); }
    void add_generator(Generator g);

    const Generator* find(std::string_view name) const;
    const std::map<std::string, Generator>& generators() const { return gens_; }
    const std::set<std::string>& atoms() const { return atoms_; }
    bool discrete() const { return gens_.empty(); }

    // One generator per line: "name : A B -> C".  Blank lines and lines
    // starting with '%' are ignored.
    static AtomTheory parse(std::string_view text);
    std::string str() const;

private:
    std::set<std::string> atoms_;
    std::map<std::string, Generator> gens_;
};

// A port is either on the boundary (node == -1) or on a generator instance.
struct Port {
    int node = -1;
    int index = 0;
    auto operator<=>(const Port&) const = default;
};

// A composite of generators glued along single atoms.  Wires are stored
// target-to-source: every boundary codomain port and every generator
// domain port records the port that feeds it.
class WiringGraph {
public:
    struct Node {
        std::string name;
        std::vector<std::string> dom;
        std::vector<std::string> cod;
        auto operator<=>(const Node&) const = default;
    };

    static WiringGraph identity(const std::string& atom);
    static WiringGraph generator(const Generator& g);

    const std::vector<std::string>& dom() const { return dom_; }
    const std::vector<std::string>& cod() const { return cod_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    Port source_of_cod(int j) const { return cod_src_[j]; }
    Port source_of_node_input(int n, int k) const { return in_src_[n][k]; }

    bool is_identity() const { return nodes_.empty() && dom_.size() == 1 && cod_.size() == 1; }

    WiringGraph canonical() const;

    // Reorder the boundary: new domain port i is old port dom_order[i].
    WiringGraph permuted(const std::vector<int>& dom_order, const std::vector<int>& cod_order) const;

    auto operator<=>(const WiringGraph&) const = default;
    bool operator==(const WiringGraph&) const = default;

    // Structural dump of the canonical form, used as a key.
    std::string key() const;

    // An expression that rebuilds the graph from generators with
    // atom_compose; boundary ports of the expression are listed in
    // dom_ports/cod_ports as indices of this graph's boundary.
    std::string expression(std::vector<int>& dom_ports, std::vector<int>& cod_ports) const;

    friend WiringGraph atom_compose(const WiringGraph& f, std::size_t out_port, const WiringGraph& g,
                                    std::size_t in_port);

private:
    std::vector<std::string> dom_, cod_;
    std::vector<Node> nodes_;
    std::vector<Port> cod_src_;
    std::vector<std::vector<Port>> in_src_;
};

// Glue f's codomain port out_port to g's domain port in_port.  The
// boundary of the result is f.dom ++ (g.dom minus in_port) on the left and
// (f.cod minus out_port) ++ g.cod on the right.
WiringGraph atom_compose(const WiringGraph& f, std::size_t out_port, const WiringGraph& g, std::size_t in_port);

// Parse an expression produced by WiringGraph::expression.
WiringGraph parse_wiring_expression(std::string_view text, const AtomTheory& th);

}  // namespace sigmapi
