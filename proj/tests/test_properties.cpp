#include <doctest.h>

#include <algorithm>
#include <map>

#include "sigmapi/corpus.hpp"
#include "sigmapi/equivalence.hpp"
#include "sigmapi/rewriter.hpp"
#include "sigmapi/semantics.hpp"
#include "sigmapi/syntax.hpp"

using namespace sigmapi;

namespace {

const AtomTheory kNone;

const std::vector<SmallSequent>& corpus() {
    static const std::vector<SmallSequent> c = small_sequent_corpus();
    return c;
}

EntailmentSet ep_of(const TypedTerm& t) { return close(translate(t)); }

bool has_hanging(const EntailmentSet& q) {
    return std::any_of(q.entailments.begin(), q.entailments.end(),
                       [&](const Entailment& e) { return is_hanging(e, q.sequent); });
}

bool subset(const EntailmentSet& a, const EntailmentSet& b) {
    return std::includes(b.entailments.begin(), b.entailments.end(), a.entailments.begin(), a.entailments.end());
}

}  // namespace

TEST_CASE("the small corpus is not trivial") {
    CHECK(corpus().size() >= 20);
    std::size_t terms = 0;
    for (const auto& ss : corpus()) terms += ss.terms.size();
    CHECK(terms >= 150);
}

TEST_CASE("conversion neighbours are well typed and equal") {
    for (const auto& ss : corpus()) {
        for (const auto& t : ss.terms) {
            for (const auto& n : conversion_neighbours(t)) {
                CHECK_FALSE(typing_error(n.term, kNone));
                CHECK(n.term.sequent == t.sequent);
                CHECK(decide_equal(t, n.term));
            }
        }
    }
}

TEST_CASE("decide_equal is an equivalence relation") {
    for (const auto& ss : corpus()) {
        const auto& ts = ss.terms;
        const std::size_t n = ts.size();
        std::vector<std::vector<bool>> eq(n, std::vector<bool>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) eq[i][j] = decide_equal(ts[i], ts[j]);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(eq[i][i]);
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(eq[i][j] == eq[j][i]);
                for (std::size_t k = 0; k < n; ++k)
                    if (eq[i][j] && eq[j][k]) CHECK(eq[i][k]);
            }
        }
    }
}

TEST_CASE("equal terms have the same canonical form") {
    for (const auto& ss : corpus())
        for (const auto& t : ss.terms)
            for (const auto& u : ss.terms) CHECK(decide_equal(t, u) == (canonicalize(t) == canonicalize(u)));
}

TEST_CASE("input residuals commute with conversions") {
    for (const auto& ss : corpus()) {
        for (const auto& [c, p] : ss.sequent.dom) {
            if (!is_input_state(p, Side::Domain)) continue;
            for (const auto& t : ss.terms)
                for (const auto& u : ss.terms) {
                    if (!decide_equal(t, u)) continue;
                    for (const auto& ev : p.events()) CHECK(decide_equal(input_residual(t, c, ev), input_residual(u, c, ev)));
                }
        }
    }
}

TEST_CASE("distinct-channel outputs commute") {
    for (const auto& ss : corpus()) {
        Classification cl = classify(ss.sequent);
        for (const auto& [c1, e1] : cl.output_index)
            for (const auto& [c2, e2] : cl.output_index) {
                if (c1 == c2) continue;
                Sequent mid = ss.sequent.with(c1, ss.sequent.at(c1).at(e1));
                Sequent end = mid.with(c2, ss.sequent.at(c2).at(e2));
                auto terms = enumerate_cut_free(end, kNone, 5);
                if (terms.empty()) continue;
                const Term& f = terms.front().term;
                Side s1 = *ss.sequent.side_of(c1), s2 = *ss.sequent.side_of(c2);
                TypedTerm a{Term::output(s1, c1, e1, Term::output(s2, c2, e2, f)), ss.sequent};
                TypedTerm b{Term::output(s2, c2, e2, Term::output(s1, c1, e1, f)), ss.sequent};
                REQUIRE_FALSE(typing_error(a, kNone));
                REQUIRE_FALSE(typing_error(b, kNone));
                CHECK(decide_equal(a, b));
            }
    }
}

TEST_CASE("translations are proto-processes and closures are extensional") {
    for (const auto& ss : corpus()) {
        for (const auto& t : ss.terms) {
            EntailmentSet p = translate(t);
            CHECK(check_proto(p).ok());
            EntailmentSet q = close(p);
            CHECK(subset(p, q));
            CHECK(check_extensional(q).ok());
            CHECK(ep_equal(close(q), q));
        }
    }
}

TEST_CASE("closure is monotone") {
    for (const auto& ss : corpus()) {
        for (const auto& t : ss.terms) {
            EntailmentSet p = translate(t);
            if (p.size() < 2) continue;
            EntailmentSet part = p;
            part.entailments.erase(std::prev(part.entailments.end()));
            CHECK(subset(close(part), close(p)));
        }
    }
}

TEST_CASE("closed translations are maximal") {
    std::size_t tried = 0;
    for (const auto& ss : corpus()) {
        std::vector<Behaviour> antecedents;
        for (const auto& b : legal_behaviours(ss.sequent))
            if (is_antecedent(b, ss.sequent)) antecedents.push_back(b);
        for (std::size_t i = 0; i < ss.terms.size() && i < 3; ++i) {
            EntailmentSet p = ep_of(ss.terms[i]);
            if (has_hanging(p)) continue;
            for (const auto& b : antecedents) {
                for (const auto& c : ss.sequent.channels()) {
                    for (const auto& ev : legal_events(b, ss.sequent, c)) {
                        if (!ev.output) continue;
                        Entailment e{b, Conclusion::output(c, ev.name)};
                        if (p.contains(e)) continue;
                        EntailmentSet bigger = p;
                        bigger.entailments.insert(e);
                        ++tried;
                        CHECK_FALSE(check_extensional(close(bigger)).ok());
                    }
                }
            }
        }
    }
    CHECK(tried > 50);
}

TEST_CASE("a hanging entailment leaves room for further outputs") {
    Sequent s = parse_sequent("x:B, y:(a:{a:B,b:B},b:B) |- u:{a:(),b:(a:A,b:B)}, v:A");
    EntailmentSet p = ep_of(parse_typed("u![a](u())", s, kNone));
    REQUIRE(p.size() == 1);
    CHECK(has_hanging(p));
    EntailmentSet bigger = p;
    bigger.entailments.insert(Entailment{Behaviour{}, Conclusion::output("y", "b")});
    CHECK(check_extensional(close(bigger)).ok());
    CHECK_FALSE(ep_equal(close(bigger), p));
}

TEST_CASE("extensional processes of output sequents start with an output") {
    std::size_t seen = 0;
    for (const auto& ss : corpus()) {
        Classification cl = classify(ss.sequent);
        if (!cl.output_sequent) continue;
        for (const auto& t : ss.terms) {
            EntailmentSet q = ep_of(t);
            if (q.size() == 0) continue;
            ++seen;
            bool found = std::any_of(q.entailments.begin(), q.entailments.end(), [&](const Entailment& e) {
                return e.antecedent.empty() && !e.conclusion.atomic &&
                       cl.output_index.count({e.conclusion.channel, e.conclusion.event});
            });
            CHECK(found);
        }
    }
    CHECK(seen > 0);
}

TEST_CASE("reduction steps shrink the cut bag and keep typing") {
    AtomTheory th = AtomTheory::parse("f : A -> B\ng : B -> A");
    Corpus gen(th, CorpusOptions{}, 7);
    for (int i = 0; i < 60; ++i) {
        TypedTerm t = gen.next(1);
        for (Strategy st : {Strategy::LeftmostInnermost, Strategy::RightmostOutermost}) {
            TypedTerm cur = t;
            while (auto s = step(cur, st)) {
                CHECK(multiset_less(measures(s->term.term).cut_bag, measures(cur.term).cut_bag));
                CHECK_FALSE(typing_error(s->term, th));
                cur = s->term;
            }
            CHECK_FALSE(cur.term.has_cut());
        }
    }
}

TEST_CASE("semantic composition is associative on corpus chains") {
    std::size_t checked = 0;
    for (const auto& s1 : corpus()) {
        if (s1.sequent.cod.size() != 1) continue;
        const auto& [c1, z1] = *s1.sequent.cod.begin();
        for (const auto& s2 : corpus()) {
            if (s2.sequent.dom.size() != 1 || s2.sequent.cod.size() != 1) continue;
            const auto& [d2, y2] = *s2.sequent.dom.begin();
            if (!(y2 == z1)) continue;
            const auto& [c2, z2] = *s2.sequent.cod.begin();
            for (const auto& s3 : corpus()) {
                if (s3.sequent.dom.size() != 1) continue;
                const auto& [d3, y3] = *s3.sequent.dom.begin();
                if (!(y3 == z2)) continue;
                std::map<std::string, std::string> fs{{c1, "k1"}}, gs{{d2, "k1"}, {c2, "k2"}}, hs{{d3, "k2"}};
                for (const auto& [c, p] : s1.sequent.dom) fs[c] = "in_" + c;
                for (const auto& [c, p] : s3.sequent.cod) hs[c] = "out_" + c;
                EntailmentSet F = rename_ep(ep_of(s1.terms.front()), fs);
                EntailmentSet G = rename_ep(ep_of(s2.terms.back()), gs);
                EntailmentSet H = rename_ep(ep_of(s3.terms.front()), hs);
                EntailmentSet a = compose_ep(compose_ep(F, "k1", G, "k1"), "k2", H, "k2");
                EntailmentSet b = compose_ep(F, "k1", compose_ep(G, "k2", H, "k2"), "k1");
                CHECK(ep_equal(a, b));
                ++checked;
            }
        }
    }
    MESSAGE("associativity instances: " << checked);
}
