#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sigmapi/sequent.hpp"
#include "sigmapi/typing.hpp"
#include "sigmapi/wiring.hpp"

namespace sigmapi {

// Bounds for randomly generated terms.  Depth limits the protocols on the
// channels; branches limits the arity of every Sum and Product.
struct CorpusOptions {
    std::size_t max_depth = 4;
    std::size_t max_branches = 3;
    std::size_t max_cuts = 3;
    std::size_t max_channels_per_side = 2;
    // Protocol size cap per channel, in nodes.
    std::size_t max_protocol_size = 9;
    std::vector<std::string> atoms{"A", "B"};
    double cut_probability = 0.35;
};

class Corpus {
public:
    Corpus(const AtomTheory& th, CorpusOptions opts, std::uint64_t seed);

    Protocol random_protocol(std::size_t depth);
    // A random provable sequent.
    Sequent random_sequent();
    // A random proof of s with at most opts.max_cuts cuts, or nullopt when
    // s is not provable.
    std::optional<TypedTerm> random_term(const Sequent& s);
    // A random term over a random sequent with at least min_cuts cuts.
    TypedTerm next(std::size_t min_cuts = 1);

    std::mt19937_64& rng() { return rng_; }

private:
    Term build(const Sequent& s, std::size_t& cuts_left, std::size_t depth);
    std::optional<Term> try_cut(const Sequent& s, std::size_t& cuts_left, std::size_t depth);
    bool provable_cached(const Sequent& s);
    std::size_t pick(std::size_t n);

    const AtomTheory& th_;
    CorpusOptions opts_;
    std::mt19937_64 rng_;
    std::map<Sequent, bool> provable_;
    std::size_t fresh_ = 0;
};

struct SmallSequent {
    Sequent sequent;
    std::vector<TypedTerm> terms;
};

struct SmallCorpusOptions {
    std::size_t max_depth = 2;
    std::size_t max_channels = 2;
    std::size_t max_nodes = 7;
    std::size_t min_terms = 2;
    std::size_t max_terms = 40;
    std::size_t limit = 40;
    std::size_t attempts = 4000;
    std::uint64_t seed = 1;
};

// Provable sequents over the discrete atoms A and B with protocols of
// bounded depth and at most two branches, each listed with every cut-free
// term of at most max_nodes nodes.  Sequents are sampled from a fixed seed
// and kept when their term count lies in [min_terms, max_terms].
std::vector<SmallSequent> small_sequent_corpus(const SmallCorpusOptions& opts = {});

}  // namespace sigmapi
