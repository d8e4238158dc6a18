// Prints one PASS/FAIL line per acceptance criterion.  Exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "sigmapi/corpus.hpp"
#include "sigmapi/critical_pairs.hpp"
#include "sigmapi/equivalence.hpp"
#include "sigmapi/error.hpp"
#include "sigmapi/rewriter.hpp"
#include "sigmapi/semantics.hpp"
#include "sigmapi/syntax.hpp"

using namespace sigmapi;

namespace {

constexpr double kComposeSeconds = 1.0;
constexpr double kConfluenceSeconds = 60.0;
constexpr std::size_t kCorpusTerms = 500;
constexpr std::uint64_t kCorpusSeed = 20240601;
constexpr std::size_t kFunctorPairs = 100;
constexpr std::size_t kLawTriples = 40;
constexpr std::size_t kUnitTerms = 200;

const char* const kCorpusTheory = "f : A -> B\ng : B -> A\nm : A B -> A\nd : A -> A B";

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

const AtomTheory& corpus_theory() {
    static const AtomTheory th = AtomTheory::parse(kCorpusTheory);
    return th;
}

const std::vector<TypedTerm>& random_corpus() {
    static const std::vector<TypedTerm> terms = [] {
        Corpus gen(corpus_theory(), CorpusOptions{}, kCorpusSeed);
        std::vector<TypedTerm> out;
        while (out.size() < kCorpusTerms) out.push_back(gen.next(1));
        return out;
    }();
    return terms;
}

const std::vector<SmallSequent>& small_corpus() {
    static const std::vector<SmallSequent> c = small_sequent_corpus();
    return c;
}

std::string count_line(std::size_t bad, std::size_t total, const char* what) {
    return std::to_string(bad) + "/" + std::to_string(total) + " " + what;
}

Outcome worked_composition() {
    AtomTheory none;
    auto t0 = Clock::now();
    TypedTerm f = parse_typed("alpha{a => gamma(a => alpha![c](id), b => gamma![c](alpha![d](id))),"
                              "      b => gamma(a => alpha![e](id), b => gamma![d](alpha![f](id)))}",
                              parse_sequent("alpha:{a:(c:A,d:B),b:(e:A,f:C)} |- gamma:(a:A,b:{c:B,d:C})"), none);
    TypedTerm g = parse_typed("gamma![b](gamma{c => beta![a](id), d => beta![b](id)})",
                              parse_sequent("gamma:(a:A,b:{c:B,d:C}) |- beta:{a:B,b:C}"), none);
    TypedTerm n = normalize(cut(f, "gamma", g, "gamma"));
    double secs = seconds_since(t0);
    TypedTerm expected = parse_typed("alpha{a => alpha![d](beta![a](id)), b => alpha![f](beta![b](id))}",
                                     parse_sequent("alpha:{a:(c:A,d:B),b:(e:A,f:C)} |- beta:{a:B,b:C}"), none);
    bool same = canonicalize(n) == canonicalize(expected);
    return {same && secs < kComposeSeconds, print_term(n) + " in " + std::to_string(secs) + " s"};
}

std::set<std::string> lines_of(const EntailmentSet& q) {
    std::set<std::string> out;
    for (const auto& e : q.entailments) out.insert(format_entailment_line(e));
    return out;
}

std::string set_diff(const std::set<std::string>& want, const std::set<std::string>& got) {
    std::string out;
    for (const auto& x : want)
        if (!got.count(x)) out += " missing {" + x + "}";
    for (const auto& x : got)
        if (!want.count(x)) out += " extra {" + x + "}";
    return out;
}

Outcome translation_fixtures() {
    AtomTheory th = AtomTheory::parse("f : A -> B\ng : A -> B\nh : A -> B\ni : A -> C\nj : A -> C\n");
    TypedTerm t1 = parse_typed("alpha{a => beta![a](#f),"
                               "      b => alpha{d => beta![b](#g), e => beta![b](#h)},"
                               "      c => beta![c](beta(d => alpha![k](#i), e => alpha![l](#j)))}",
                               parse_sequent("alpha:{a:A,b:{d:A,e:A},c:(k:A,l:A)} |- beta:{a:B,b:B,c:(d:C,e:C)}"),
                               th);
    std::set<std::string> want1{
        "alpha:<a> |- !beta[a]",
        "alpha:<a> beta:<!a> |- f[alpha|beta]",
        "alpha:<b,d> |- !beta[b]",
        "alpha:<b,d> beta:<!b> |- g[alpha|beta]",
        "alpha:<b,e> |- !beta[b]",
        "alpha:<b,e> beta:<!b> |- h[alpha|beta]",
        "alpha:<c> |- !beta[c]",
        "alpha:<c> beta:<!c,d> |- !alpha[k]",
        "alpha:<c,!k> beta:<!c,d> |- i[alpha|beta]",
        "alpha:<c> beta:<!c,e> |- !alpha[l]",
        "alpha:<c,!l> beta:<!c,e> |- j[alpha|beta]",
    };
    AtomTheory th2 = AtomTheory::parse("f : A -> B");
    TypedTerm t2 = parse_typed("alpha{a => beta![b](alpha{}), b => beta![a](#f)}",
                               parse_sequent("alpha:{a:{},b:A} |- beta:{a:B,b:A}"), th2);
    std::set<std::string> want2{
        "alpha:<b> |- !beta[a]",
        "alpha:<b> beta:<!a> |- f[alpha|beta]",
    };
    TypedTerm id = identity_term(parse_protocol("{a:A,b:{d:B,e:()},c:(f:C,g:{})}"), "alpha", "beta");
    std::set<std::string> want3{
        "alpha:<a> |- !beta[a]",
        "alpha:<a> beta:<!a> |- 1_A[alpha|beta]",
        "alpha:<b> |- !beta[b]",
        "alpha:<b,d> beta:<!b> |- !beta[d]",
        "alpha:<b,d> beta:<!b,!d> |- 1_B[alpha|beta]",
        "alpha:<b,e> beta:<!b> |- !beta[e]",
        "alpha:<b,e> beta:<!b,!e> |- 1_()[alpha|beta]",
        "alpha:<c> |- !beta[c]",
        "alpha:<c> beta:<!c,f> |- !alpha[f]",
        "alpha:<c,!f> beta:<!c,f> |- 1_C[alpha|beta]",
        "alpha:<c> beta:<!c,g> |- !alpha[g]",
        "alpha:<c,!g> beta:<!c,g> |- 1_{}[alpha|beta]",
    };
    std::string d1 = set_diff(want1, lines_of(translate(t1)));
    std::string d2 = set_diff(want2, lines_of(translate(t2)));
    std::string d3 = set_diff(want3, lines_of(translate(id)));
    std::string detail = std::string("item 1") + (d1.empty() ? " exact" : d1) + "; item 2" +
                         (d2.empty() ? " exact" : d2) + "; identity" + (d3.empty() ? " exact" : d3);
    return {d1.empty() && d2.empty() && d3.empty(), detail};
}

Outcome termination_measure() {
    const AtomTheory& th = corpus_theory();
    std::size_t violations = 0, steps = 0;
    std::string first;
    for (const auto& t : random_corpus()) {
        for (Strategy st : {Strategy::LeftmostInnermost, Strategy::RightmostOutermost}) {
            TypedTerm cur = t;
            while (auto s = step(cur, st)) {
                ++steps;
                bool smaller = multiset_less(measures(s->term.term).cut_bag, measures(cur.term).cut_bag);
                auto err = typing_error(s->term, th);
                if (!smaller || err) {
                    ++violations;
                    if (first.empty())
                        first = " first: rule " + std::to_string(s->rule) + " at " + path_to_string(s->path) +
                                (err ? std::string(" ") + err->what() : " bag not smaller");
                }
                cur = s->term;
            }
        }
    }
    return {violations == 0, count_line(violations, steps, "violating steps over ") +
                                 std::to_string(random_corpus().size()) + " terms" + first};
}

Outcome confluence() {
    auto t0 = Clock::now();
    std::size_t bad = 0;
    for (const auto& t : random_corpus()) {
        NormalizeOptions li, ro;
        ro.strategy = Strategy::RightmostOutermost;
        if (!decide_equal(normalize(t, li), normalize(t, ro))) ++bad;
    }
    double secs = seconds_since(t0);
    return {bad == 0 && secs < kConfluenceSeconds,
            count_line(bad, random_corpus().size(), "disagreements") + " in " + std::to_string(secs) + " s"};
}

Outcome identity_laws() {
    std::size_t checks = 0, bad = 0;
    for (const auto& ss : small_corpus()) {
        for (const auto& t : ss.terms) {
            for (const auto& [ch, p] : t.sequent.cod) {
                TypedTerm n = normalize(cut(t, ch, identity_term(p, "id_in", "id_out"), "id_in"));
                ++checks;
                if (!decide_equal(rename_channels(n, {{"id_out", ch}}), t)) ++bad;
            }
            for (const auto& [ch, p] : t.sequent.dom) {
                TypedTerm n = normalize(cut(identity_term(p, "id_in", "id_out"), "id_out", t, ch));
                ++checks;
                if (!decide_equal(rename_channels(n, {{"id_in", ch}}), t)) ++bad;
            }
        }
    }
    return {bad == 0 && checks > 0, count_line(bad, checks, "identity cuts not equal to the term")};
}

Outcome oracle_equivalence() {
    std::size_t pairs = 0, bad = 0;
    for (const auto& ss : small_corpus()) {
        std::size_t max_size = 0;
        for (const auto& t : ss.terms) max_size = std::max(max_size, t.term.size());
        for (const auto& t : ss.terms) {
            auto cls = conversion_closure(t, max_size + 2);
            std::set<Term> members;
            for (const auto& c : cls) members.insert(c.term);
            for (const auto& u : ss.terms) {
                ++pairs;
                if (decide_equal(t, u) != (members.count(u.term) > 0)) ++bad;
            }
        }
    }
    return {bad == 0 && pairs > 0, count_line(bad, pairs, "pairs disagree over ") +
                                       std::to_string(small_corpus().size()) + " sequents"};
}

bool has_hanging(const EntailmentSet& q) {
    return std::any_of(q.entailments.begin(), q.entailments.end(),
                       [&](const Entailment& e) { return is_hanging(e, q.sequent); });
}

std::string plain_line(std::size_t plain) {
    return ", " + std::to_string(plain) + " of them without hanging entailments";
}

Outcome faithfulness() {
    std::size_t pairs = 0, bad = 0, plain = 0;
    for (const auto& ss : small_corpus()) {
        std::vector<EntailmentSet> eps;
        for (const auto& t : ss.terms) eps.push_back(close(translate(t)));
        for (std::size_t i = 0; i < ss.terms.size(); ++i)
            for (std::size_t j = 0; j < ss.terms.size(); ++j) {
                ++pairs;
                if (decide_equal(ss.terms[i], ss.terms[j]) != ep_equal(eps[i], eps[j])) {
                    ++bad;
                    if (!has_hanging(eps[i]) && !has_hanging(eps[j])) ++plain;
                }
            }
    }
    return {bad == 0 && pairs > 0, count_line(bad, pairs, "pairs disagree") + plain_line(plain)};
}

// Random cut-free processes with fresh channel names for building
// composable pairs and triples.
class Processes {
public:
    explicit Processes(std::uint64_t seed) : gen_(corpus_theory(), options(), seed) {}

    static CorpusOptions options() {
        CorpusOptions o;
        o.max_depth = 2;
        return o;
    }

    TypedTerm any() { return normalize(gen_.next(0)); }

    // A cut-free term over in_ch:z plus random other channels, all named
    // with the given prefix.
    TypedTerm from(const std::string& in_ch, const Protocol& z, const std::string& prefix, std::size_t cod_channels) {
        for (;;) {
            Sequent s;
            s.dom.emplace(in_ch, z);
            for (std::size_t i = 0; i < cod_channels; ++i)
                s.cod.emplace(prefix + std::to_string(i), gen_.random_protocol(pick(3)));
            if (auto t = gen_.random_term(s)) return normalize(*t);
        }
    }

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(gen_.rng()); }

private:
    Corpus gen_;
};

EntailmentSet ep_of(const TypedTerm& t) { return close(translate(t)); }

Outcome functoriality() {
    Processes ps(kCorpusSeed + 1);
    std::size_t bad = 0, plain = 0;
    std::string first;
    for (std::size_t i = 0; i < kFunctorPairs; ++i) {
        TypedTerm f = ps.any();
        auto it = std::next(f.sequent.cod.begin(), static_cast<long>(ps.pick(f.sequent.cod.size())));
        const std::string ch = it->first;
        TypedTerm g = ps.from("p", it->second, "q", 1 + ps.pick(2));
        EntailmentSet syntactic = ep_of(normalize(cut(f, ch, g, "p")));
        EntailmentSet F = ep_of(f), G = ep_of(g);
        EntailmentSet semantic = compose_ep(F, ch, G, "p");
        if (!ep_equal(syntactic, semantic)) {
            ++bad;
            if (!has_hanging(F) && !has_hanging(G) && !has_hanging(syntactic)) ++plain;
            if (first.empty()) first = " first: " + print_term(f) + " ; " + ch + " ; " + print_term(g);
        }
    }
    return {bad == 0, count_line(bad, kFunctorPairs, "pairs differ") + plain_line(plain) + (first.empty() ? "" : ";" + first)};
}

Outcome ep_laws() {
    Processes ps(kCorpusSeed + 2);
    std::size_t checks = 0, bad = 0, plain = 0;
    std::vector<std::string> failed;
    auto expect = [&](bool ok, const std::string& what, std::initializer_list<const EntailmentSet*> inputs = {}) {
        ++checks;
        if (!ok) {
            ++bad;
            if (std::none_of(inputs.begin(), inputs.end(), [](const EntailmentSet* q) { return has_hanging(*q); }))
                ++plain;
            if (failed.size() < 3) failed.push_back(what);
        }
    };
    for (std::size_t i = 0; i < kLawTriples; ++i) {
        TypedTerm f = ps.any();
        EntailmentSet F = ep_of(f);
        for (const auto& [c, p] : f.sequent.cod) {
            EntailmentSet right = compose_ep(F, c, identity_ep(p, "id_in", "id_out"), "id_in");
            expect(ep_equal(right, F, {{c, "id_out"}}), "right identity " + print_term(f) + " over " + f.sequent.str(), {&F});
        }
        for (const auto& [c, p] : f.sequent.dom) {
            EntailmentSet left = compose_ep(identity_ep(p, "id_in", "id_out"), "id_out", F, c);
            expect(ep_equal(left, F, {{c, "id_in"}}), "left identity " + print_term(f) + " over " + f.sequent.str(), {&F});
        }
        const auto& [c, z] = *f.sequent.cod.begin();
        TypedTerm g = ps.from("p", z, "q", 1);
        const auto& [q, z2] = *g.sequent.cod.begin();
        TypedTerm h = ps.from("s", z2, "t", 1);
        EntailmentSet G = ep_of(g), H = ep_of(h);
        EntailmentSet a1 = compose_ep(compose_ep(F, c, G, "p"), q, H, "s");
        EntailmentSet a2 = compose_ep(F, c, compose_ep(G, q, H, "s"), "p");
        expect(ep_equal(a1, a2), "associativity " + print_term(f), {&F, &G, &H});
        if (f.sequent.cod.size() >= 2) {
            const auto& [c2, w] = *std::next(f.sequent.cod.begin());
            TypedTerm k = ps.from("r", w, "o", 1);
            EntailmentSet K = ep_of(k);
            EntailmentSet i1 = compose_ep(compose_ep(F, c, G, "p"), c2, K, "r");
            EntailmentSet i2 = compose_ep(compose_ep(F, c2, K, "r"), c, G, "p");
            expect(ep_equal(i1, i2), "interchange " + print_term(f), {&F, &G, &K});
        }
    }
    for (const char* text : {"{a:A,b:B}", "{a:A,b:B,c:(d:A)}", "{a:{c:A,d:B},b:B}", "{a:A,b:(c:B,d:A),e:B}"}) {
        Protocol x = parse_protocol(text);
        std::string ptext(text);
        ptext.front() = '(';
        ptext.back() = ')';
        Protocol y = parse_protocol(ptext);
        std::vector<std::pair<std::string, EntailmentSet>> inj, proj;
        for (const auto& b : x.branches()) inj.emplace_back(b.event, injection_ep(x, b.event, "g", "out"));
        for (const auto& b : y.branches()) proj.emplace_back(b.event, projection_ep(y, b.event, "in", "g"));
        expect(ep_equal(sum_ep(Sequent{{}, {{"out", x}}}, "g", inj), identity_ep(x, "g", "out")),
               std::string("sum of injections ") + text);
        expect(ep_equal(product_ep(Sequent{{{"in", y}}, {}}, "g", proj), identity_ep(y, "in", "g")),
               "product of projections " + ptext);
        for (int round = 0; round < 3; ++round) {
            std::vector<std::pair<std::string, EntailmentSet>> sparts, pparts;
            std::map<std::string, EntailmentSet> sby, pby;
            Protocol out = parse_protocol("{p:A,q:B}");
            Protocol in = parse_protocol("{p:A,q:B}");
            for (const auto& b : x.branches()) {
                TypedTerm t = normalize(*Corpus(corpus_theory(), Processes::options(), ps.pick(1u << 30))
                                             .random_term(Sequent{{{"g", b.proto}}, {{"z", out}}}));
                sparts.emplace_back(b.event, ep_of(t));
                sby[b.event] = ep_of(t);
                TypedTerm u = normalize(*Corpus(corpus_theory(), Processes::options(), ps.pick(1u << 30))
                                             .random_term(Sequent{{{"w", in}}, {{"g", b.proto}}}));
                pparts.emplace_back(b.event, ep_of(u));
                pby[b.event] = ep_of(u);
            }
            EntailmentSet s = sum_ep(Sequent{{}, {{"z", out}}}, "g", sparts);
            EntailmentSet p = product_ep(Sequent{{{"w", in}}, {}}, "g", pparts);
            for (const auto& b : x.branches()) {
                EntailmentSet lhs = compose_ep(injection_ep(x, b.event, "k_in", "k_out"), "k_out", s, "g");
                expect(ep_equal(lhs, sby[b.event], {{"g", "k_in"}}), std::string("injection then sum ") + text, {&sby[b.event]});
                EntailmentSet rhs = compose_ep(p, "g", projection_ep(y, b.event, "k_in", "k_out"), "k_in");
                expect(ep_equal(rhs, pby[b.event], {{"g", "k_out"}}), "product then projection " + ptext, {&pby[b.event]});
            }
        }
    }
    std::string detail = count_line(bad, checks, "law instances fail") + plain_line(plain);
    for (const auto& f : failed) detail += "; " + f;
    return {bad == 0, detail};
}

Outcome units() {
    Corpus gen(corpus_theory(), Processes::options(), kCorpusSeed + 3);
    std::size_t bad = 0, total = 0;
    Protocol zero = Protocol::sum({});
    while (total < kUnitTerms) {
        Sequent s = gen.random_sequent();
        s.dom.emplace("o", zero);
        auto t = gen.random_term(s);
        if (!t) continue;
        ++total;
        EntailmentSet q = translate(normalize(*t));
        if (q.size() != 0 || !check_extensional(q).ok()) ++bad;
    }
    EntailmentSet empty;
    empty.sequent = parse_sequent("x:() |- z:{}");
    EPReport r = check_extensional(empty);
    bool ep3 = !r.ok() && r.first_failure() == 3 && *r.passed[0] && *r.passed[1];
    for (std::size_t i = 3; i < 7; ++i) ep3 = ep3 && (!r.passed[i] || *r.passed[i]);
    std::string where = r.first_failure() ? "EP-" + std::to_string(*r.first_failure()) : "none";
    return {bad == 0 && ep3, count_line(bad, total, "terms over a 0 channel not empty and extensional") +
                                 "; empty set over 1 |- 0 first fails at " + where};
}

Outcome critical_pair_joins() {
    std::size_t bad = 0;
    std::string first;
    for (const auto& cp : critical_pairs()) {
        JoinResult r = join(cp);
        if (!r.joined) {
            ++bad;
            if (first.empty()) first = " first: " + cp.name + (r.error.empty() ? "" : " " + r.error);
        }
    }
    return {bad == 0, count_line(bad, critical_pairs().size(), "instances do not join") + first};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "worked composition", worked_composition},
        {2, "translation fixtures", translation_fixtures},
        {3, "termination measure", termination_measure},
        {4, "confluence modulo conversions", confluence},
        {5, "identity laws", identity_laws},
        {6, "decision procedure against conversion closure", oracle_equivalence},
        {7, "decision procedure against process semantics", faithfulness},
        {8, "semantic functoriality", functoriality},
        {9, "extensional process laws", ep_laws},
        {10, "units", units},
        {11, "critical pairs", critical_pair_joins},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        Outcome o;
        auto t0 = Clock::now();
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("%s %2d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, seconds_since(t0),
                    o.detail.c_str());
        std::fflush(stdout);
    }
    return failures;
}
