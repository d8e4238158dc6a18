#include "sigmapi/corpus.hpp"

#include <algorithm>
#include <set>

#include "sigmapi/error.hpp"

namespace sigmapi {

namespace {

const char* const kEvents[] = {"a", "b", "c", "d", "e"};

std::vector<Term> leaves_for(const Sequent& s, const AtomTheory& th) {
    std::vector<Term> out;
    if (!s.all_atomic()) return out;
    if (s.dom.size() == 1 && s.cod.size() == 1) {
        if (auto t = bind_leaf(WiringGraph::identity(s.dom.begin()->second.atom_name()), s)) out.push_back(*t);
    }
    for (const auto& [name, g] : th.generators())
        if (auto t = bind_leaf(WiringGraph::generator(g), s)) out.push_back(*t);
    return out;
}

}  // namespace

Corpus::Corpus(const AtomTheory& th, CorpusOptions opts, std::uint64_t seed)
    : th_(th), opts_(std::move(opts)), rng_(seed) {}

std::size_t Corpus::pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

bool Corpus::provable_cached(const Sequent& s) {
    auto it = provable_.find(s);
    if (it != provable_.end()) return it->second;
    bool ok = provable(s, th_);
    provable_.emplace(s, ok);
    return ok;
}

Protocol Corpus::random_protocol(std::size_t depth) {
    for (;;) {
        std::function<Protocol(std::size_t)> gen = [&](std::size_t d) {
            if (d == 0 || pick(3) == 0) return Protocol::atom(opts_.atoms[pick(opts_.atoms.size())]);
            std::size_t n = pick(10) == 0 ? 0 : 1 + pick(opts_.max_branches);
            std::vector<ProtocolBranch> bs;
            for (std::size_t i = 0; i < n; ++i) bs.push_back(ProtocolBranch{kEvents[i], gen(d - 1)});
            return pick(2) == 0 ? Protocol::sum(std::move(bs)) : Protocol::product(std::move(bs));
        };
        Protocol p = gen(depth);
        if (p.size() <= opts_.max_protocol_size) return p;
    }
}

Sequent Corpus::random_sequent() {
    static const char* const kDom[] = {"x", "y", "z"};
    static const char* const kCod[] = {"u", "v", "w"};
    for (;;) {
        Sequent s;
        std::size_t nd = 1 + pick(opts_.max_channels_per_side);
        std::size_t nc = 1 + pick(opts_.max_channels_per_side);
        for (std::size_t i = 0; i < nd; ++i) s.dom.emplace(kDom[i], random_protocol(pick(opts_.max_depth + 1)));
        for (std::size_t i = 0; i < nc; ++i) s.cod.emplace(kCod[i], random_protocol(pick(opts_.max_depth + 1)));
        if (provable_cached(s)) return s;
    }
}

std::optional<Term> Corpus::try_cut(const Sequent& s, std::size_t& cuts_left, std::size_t depth) {
    std::set<std::string> used = s.channels();
    std::string g = fresh_name("g" + std::to_string(++fresh_), used);
    auto make = [&](const Sequent& left, const Sequent& right, const Protocol& z) {
        CutSplit split;
        for (const auto& [c, p] : left.dom) split.dom.push_back(c);
        for (const auto& [c, p] : left.cod)
            if (c != g) split.cod.push_back(c);
        --cuts_left;
        Term l = build(left, cuts_left, depth + 1);
        Term r = build(right, cuts_left, depth + 1);
        return Term::cut(g, z, split, std::move(l), std::move(r));
    };
    if (pick(2) == 0) {
        Protocol z = random_protocol(std::min<std::size_t>(2, opts_.max_depth));
        Sequent left, right;
        for (const auto& [c, p] : s.dom) (pick(2) ? left.dom : right.dom).emplace(c, p);
        for (const auto& [c, p] : s.cod) (pick(2) ? left.cod : right.cod).emplace(c, p);
        left.cod.emplace(g, z);
        right.dom.emplace(g, z);
        if (provable_cached(left) && provable_cached(right)) return make(left, right, z);
    }
    std::vector<std::string> chs(used.begin(), used.end());
    const std::string c = chs[pick(chs.size())];
    Protocol z = s.at(c);
    Sequent left, right;
    if (s.side_of(c) == Side::Domain) {
        left.dom.emplace(c, z);
        left.cod.emplace(g, z);
        right = s.without(c);
        right.dom.emplace(g, z);
    } else {
        left = s.without(c);
        left.cod.emplace(g, z);
        right.dom.emplace(g, z);
        right.cod.emplace(c, z);
    }
    return make(left, right, z);
}

Term Corpus::build(const Sequent& s, std::size_t& cuts_left, std::size_t depth) {
    if (cuts_left > 0 && std::uniform_real_distribution<double>(0, 1)(rng_) < opts_.cut_probability) {
        if (auto t = try_cut(s, cuts_left, depth)) return *t;
    }
    struct Move {
        std::string channel;
        Side side;
        bool input;
        std::string event;
    };
    std::vector<Move> moves;
    auto scan = [&](const std::map<std::string, Protocol>& m, Side side) {
        for (const auto& [c, p] : m) {
            if (p.is_atom()) continue;
            if (is_input_state(p, side)) {
                bool all = true;
                for (const auto& b : p.branches()) all = all && provable_cached(s.with(c, b.proto));
                if (all) moves.push_back(Move{c, side, true, ""});
            } else {
                for (const auto& b : p.branches())
                    if (provable_cached(s.with(c, b.proto))) moves.push_back(Move{c, side, false, b.event});
            }
        }
    };
    scan(s.dom, Side::Domain);
    scan(s.cod, Side::Codomain);
    std::vector<Term> leaves = leaves_for(s, th_);
    std::size_t n = moves.size() + leaves.size();
    if (n == 0) throw Error("random_term: no rule applies to " + s.str());
    std::size_t k = pick(n);
    if (k >= moves.size()) return leaves[k - moves.size()];
    const Move& m = moves[k];
    if (m.input) {
        std::vector<std::pair<std::string, Term>> bs;
        for (const auto& b : s.at(m.channel).branches())
            bs.emplace_back(b.event, build(s.with(m.channel, b.proto), cuts_left, depth + 1));
        return Term::input(m.side, m.channel, std::move(bs));
    }
    return Term::output(m.side, m.channel, m.event,
                        build(s.with(m.channel, s.at(m.channel).at(m.event)), cuts_left, depth + 1));
}

std::optional<TypedTerm> Corpus::random_term(const Sequent& s) {
    if (!provable_cached(s)) return std::nullopt;
    std::size_t cuts = opts_.max_cuts;
    TypedTerm t{build(s, cuts, 0), s};
    if (auto e = typing_error(t, th_)) throw Error(std::string("random_term produced an ill-typed term: ") + e->what());
    return t;
}

TypedTerm Corpus::next(std::size_t min_cuts) {
    for (;;) {
        auto t = random_term(random_sequent());
        if (t && t->term.cut_count() >= min_cuts) return *t;
    }
}

std::vector<SmallSequent> small_sequent_corpus(const SmallCorpusOptions& opts) {
    AtomTheory none;
    CorpusOptions co;
    co.max_depth = opts.max_depth;
    co.max_branches = 2;
    co.max_channels_per_side = opts.max_channels;
    co.max_protocol_size = 7;
    Corpus gen(none, co, opts.seed);
    std::set<Sequent> seen;
    std::vector<SmallSequent> out;
    for (std::size_t i = 0; i < opts.attempts && out.size() < opts.limit; ++i) {
        Sequent s = gen.random_sequent();
        if (!seen.insert(s).second) continue;
        auto terms = enumerate_cut_free(s, none, opts.max_nodes);
        if (terms.size() < opts.min_terms || terms.size() > opts.max_terms) continue;
        out.push_back(SmallSequent{s, std::move(terms)});
    }
    return out;
}

}  // namespace sigmapi
