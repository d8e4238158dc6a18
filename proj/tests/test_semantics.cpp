#include <doctest.h>

#include <sstream>

#include "sigmapi/rewriter.hpp"
#include "sigmapi/semantics.hpp"
#include "sigmapi/syntax.hpp"

using namespace sigmapi;

namespace {

const AtomTheory kNone;

TypedTerm typed(const char* seq, const char* text, const AtomTheory& th = kNone) {
    return parse_typed(text, parse_sequent(seq), th);
}

// "alpha:c,!k beta:!c,d" with '!' marking outputs.
Behaviour behaviour(const std::string& text) {
    Behaviour b;
    std::istringstream in(text);
    std::string item;
    while (in >> item) {
        auto colon = item.find(':');
        std::string ch = item.substr(0, colon);
        std::istringstream evs(item.substr(colon + 1));
        std::string ev;
        while (std::getline(evs, ev, ','))
            b = b.append(ch, ev[0] == '!' ? Event{true, ev.substr(1)} : Event{false, ev});
    }
    return b;
}

Entailment says(const std::string& pre, const std::string& ch, const std::string& ev) {
    return Entailment{behaviour(pre), Conclusion::output(ch, ev)};
}

Entailment maps(const std::string& pre, const WiringGraph& g, const std::string& in, const std::string& out) {
    return Entailment{behaviour(pre), Conclusion::atomic_map(make_atomic(g, {in}, {out}))};
}

WiringGraph gen(const AtomTheory& th, const char* name) { return WiringGraph::generator(*th.find(name)); }

}  // namespace

TEST_CASE("roles of small protocols") {
    Protocol zero = parse_protocol("{}");
    Protocol one = parse_protocol("()");
    CHECK(role(zero, Side::Domain) == Role::Source);
    CHECK(role(zero, Side::Codomain) == Role::Sink);
    CHECK(role(one, Side::Domain) == Role::Sink);
    CHECK(role(one, Side::Codomain) == Role::Source);
    CHECK(role(parse_protocol("A"), Side::Domain) == Role::Flow);
    CHECK(role(parse_protocol("{a:{},b:()}"), Side::Domain) == Role::Sink);
    CHECK(role(parse_protocol("{a:{},b:{}}"), Side::Domain) == Role::Source);
    CHECK(role(parse_protocol("(a:{},b:())"), Side::Domain) == Role::Source);
    CHECK(role(parse_protocol("(a:(),b:())"), Side::Codomain) == Role::Source);
    CHECK(role(parse_protocol("{a:A,b:()}"), Side::Domain) == Role::Flow);
    CHECK(role_name(Role::Sink) == "Sink");
}

TEST_CASE("behaviour algebra") {
    Behaviour p = behaviour("x:a y:!b");
    Behaviour q = behaviour("x:a,!c y:!b");
    CHECK(p.prefix_of(q));
    CHECK(p.output_prefix_of(q));
    CHECK_FALSE(p.input_prefix_of(q));
    CHECK(p.compatible(q));
    CHECK(p.join(q) == q);
    CHECK_FALSE(behaviour("x:b").compatible(q));
    CHECK_THROWS_AS(behaviour("x:b").join(q), Error);
    CHECK(q.dual() == behaviour("x:!a,c y:b"));
    CHECK(q.without("x") == behaviour("y:!b"));
    CHECK(q.drop_last("x") == p);
    CHECK(q.length() == 3);
    CHECK(behaviour("x:a").parallel(behaviour("y:b")) == behaviour("x:a y:b"));
    CHECK_THROWS_AS(p.parallel(q), Error);
}

TEST_CASE("legality, frontier and saturation") {
    Sequent s = parse_sequent("x:{a:A,b:(c:B,d:{})} |- y:{e:A,f:()}");
    CHECK(is_legal(behaviour("x:a y:!e"), s));
    CHECK_FALSE(is_legal(behaviour("x:!a"), s));
    CHECK_FALSE(is_legal(behaviour("y:e"), s));
    CHECK(is_legal(behaviour("x:b,!c"), s));
    CHECK(is_legal(behaviour("x:b,!d"), s));
    CHECK(is_legal(behaviour("y:!f"), s));
    CHECK_FALSE(is_legal(behaviour("x:b,!d,a"), s));
    CHECK(is_hanging(says("", "y", "f"), s));
    CHECK_FALSE(is_hanging(says("", "y", "e"), s));
    CHECK_FALSE(is_antecedent(behaviour("y:!f"), s));
    CHECK(frontier(behaviour("x:a"), s).at("x") == parse_protocol("A"));
    CHECK(is_antecedent(behaviour("x:a"), s));
    CHECK_FALSE(is_saturated(Behaviour{}, s));
    CHECK(is_saturated(behaviour("x:a"), s));
    CHECK(is_saturated(behaviour("x:a y:!e"), s));
    CHECK(is_saturated(behaviour("x:b"), s));
    auto evs = legal_events(Behaviour{}, s, "y");
    REQUIRE(evs.size() == 2);
    CHECK(evs[0] == Event{true, "e"});
    CHECK(evs[1] == Event{true, "f"});
    CHECK(legal_behaviours(s).size() == 5 * 3);
}

TEST_CASE("translation of a process with nested inputs and outputs") {
    AtomTheory th = AtomTheory::parse("f : A -> B\ng : A -> B\nh : A -> B\ni : A -> C\nj : A -> C\n");
    TypedTerm t = typed("alpha:{a:A,b:{d:A,e:A},c:(k:A,l:A)} |- beta:{a:B,b:B,c:(d:C,e:C)}",
                        "alpha{a => beta![a](#f),"
                        "      b => alpha{d => beta![b](#g), e => beta![b](#h)},"
                        "      c => beta![c](beta(d => alpha![k](#i), e => alpha![l](#j)))}",
                        th);
    EntailmentSet q = translate(t);
    std::set<Entailment> expected{
        says("alpha:a", "beta", "a"),
        maps("alpha:a beta:!a", gen(th, "f"), "alpha", "beta"),
        says("alpha:b,d", "beta", "b"),
        maps("alpha:b,d beta:!b", gen(th, "g"), "alpha", "beta"),
        says("alpha:b,e", "beta", "b"),
        maps("alpha:b,e beta:!b", gen(th, "h"), "alpha", "beta"),
        says("alpha:c", "beta", "c"),
        says("alpha:c beta:!c,d", "alpha", "k"),
        maps("alpha:c,!k beta:!c,d", gen(th, "i"), "alpha", "beta"),
        says("alpha:c beta:!c,e", "alpha", "l"),
        maps("alpha:c,!l beta:!c,e", gen(th, "j"), "alpha", "beta"),
    };
    CHECK(q.entailments == expected);
    CHECK(q.size() == 11);
    EPReport r = check_proto(q);
    CHECK(r.ok());
    CHECK(r.hanging == 0);
    EntailmentSet c = close(q);
    CHECK(check_extensional(c).ok());
}

TEST_CASE("translation stops under a source role") {
    AtomTheory th = AtomTheory::parse("f : A -> B");
    TypedTerm t = typed("alpha:{a:{},b:A} |- beta:{a:B,b:A}",
                        "alpha{a => beta![b](alpha{}), b => beta![a](#f)}", th);
    EntailmentSet q = translate(t);
    std::set<Entailment> expected{
        says("alpha:b", "beta", "a"),
        maps("alpha:b beta:!a", gen(th, "f"), "alpha", "beta"),
    };
    CHECK(q.entailments == expected);
    CHECK(check_proto(q).ok());
}

TEST_CASE("identity translation on a protocol with units") {
    Protocol x = parse_protocol("{a:A,b:{d:B,e:()},c:(f:C,g:{})}");
    TypedTerm id = identity_term(x, "alpha", "beta");
    EntailmentSet q = translate(id);
    auto one = [](const char* atom) { return WiringGraph::identity(atom); };
    std::set<Entailment> expected{
        says("alpha:a", "beta", "a"),
        maps("alpha:a beta:!a", one("A"), "alpha", "beta"),
        says("alpha:b", "beta", "b"),
        says("alpha:b,d beta:!b", "beta", "d"),
        maps("alpha:b,d beta:!b,!d", one("B"), "alpha", "beta"),
        says("alpha:b,e beta:!b", "beta", "e"),
        says("alpha:c", "beta", "c"),
        says("alpha:c beta:!c,f", "alpha", "f"),
        maps("alpha:c,!f beta:!c,f", one("C"), "alpha", "beta"),
        says("alpha:c beta:!c,g", "alpha", "g"),
    };
    CHECK(q.entailments == expected);
    EPReport r = check_proto(q);
    INFO(r.counterexample[0], r.counterexample[1], r.counterexample[2]);
    CHECK(r.ok());
    CHECK(check_extensional(close(q)).ok());
}

TEST_CASE("units: the empty process") {
    EntailmentSet src;
    src.sequent = parse_sequent("x:{}, y:A |- z:B");
    CHECK(check_extensional(src).ok());
    TypedTerm t = typed("x:{}, y:A |- z:B", "x{}");
    CHECK(translate(t).size() == 0);

    EntailmentSet bad;
    bad.sequent = parse_sequent("x:() |- z:{}");
    EPReport r = check_extensional(bad);
    CHECK_FALSE(r.ok());
    CHECK(r.first_failure() == 3);
    CHECK(*r.passed[0]);
    CHECK(*r.passed[1]);
    certify(bad);
    CHECK((bad.verified & 0b100u) == 0);
    CHECK((bad.verified & 0b011u) == 0b011u);
}

TEST_CASE("closure is idempotent and extensional") {
    AtomTheory th = AtomTheory::parse("m : A B -> C");
    TypedTerm t = typed("x:{a:A,b:A}, y:(c:B,d:B) |- z:{e:C,f:C}",
                        "x{a => y![c](z![e](#m)), b => z![f](y![d](#m))}", th);
    EntailmentSet q = translate(t);
    REQUIRE(check_proto(q).ok());
    EntailmentSet c = close(q);
    CHECK(c.size() > q.size());
    CHECK(ep_equal(close(c), c));
    EPReport r = check_extensional(c);
    CHECK(r.ok());
    for (const auto& e : q.entailments) CHECK(c.contains(e));
    CHECK(c.contains(says("x:a z:!e", "y", "c")));
}

TEST_CASE("equal terms translate to equal extensional processes") {
    AtomTheory th = AtomTheory::parse("m : A A -> A");
    TypedTerm a = typed("x:{a:A,b:A}, y:{c:A,d:A} |- z:A",
                        "x{a => y{c => #m, d => #m}, b => y{c => #m, d => #m}}", th);
    TypedTerm b = typed("x:{a:A,b:A}, y:{c:A,d:A} |- z:A",
                        "y{c => x{a => #m, b => #m}, d => x{a => #m, b => #m}}", th);
    CHECK(ep_equal(close(translate(a)), close(translate(b))));
    TypedTerm o1 = typed("x:(a:A,b:A) |- z:{c:A,d:A}", "x![a](z![c](id))");
    TypedTerm o2 = typed("x:(a:A,b:A) |- z:{c:A,d:A}", "z![c](x![a](id))");
    CHECK(ep_equal(close(translate(o1)), close(translate(o2))));
    TypedTerm o3 = typed("x:(a:A,b:A) |- z:{c:A,d:A}", "z![d](x![a](id))");
    CHECK_FALSE(ep_equal(close(translate(o1)), close(translate(o3))));
}

TEST_CASE("identity is a unit for semantic composition") {
    AtomTheory th = AtomTheory::parse("f : A -> B");
    TypedTerm t = typed("alpha:{a:A,b:(c:A,d:A)} |- beta:{a:B,b:(c:A,d:A)}",
                        "alpha{a => beta![a](#f), b => beta![b](beta(c => alpha![c](id), d => alpha![d](id)))}",
                        th);
    EntailmentSet f = close(translate(t));
    Protocol out = t.sequent.at("beta");
    Protocol in = t.sequent.at("alpha");
    EntailmentSet right = compose_ep(f, "beta", identity_ep(out, "in", "out"), "in");
    CHECK(ep_equal(right, f, {{"beta", "out"}}));
    EntailmentSet left = compose_ep(identity_ep(in, "in", "out"), "out", f, "alpha");
    CHECK(ep_equal(left, f, {{"alpha", "in"}}));
    CHECK(check_extensional(right).ok());
}

TEST_CASE("injection and projection processes") {
    Protocol s = parse_protocol("{a:A,b:B}");
    EntailmentSet inj = injection_ep(s, "a", "x", "y");
    TypedTerm t = typed("x:A |- y:{a:A,b:B}", "y![a](id)");
    CHECK(ep_equal(inj, close(translate(t))));
    Protocol p = parse_protocol("(a:A,b:B)");
    EntailmentSet proj = projection_ep(p, "b", "x", "y");
    TypedTerm u = typed("x:(a:A,b:B) |- y:B", "x![b](id)");
    CHECK(ep_equal(proj, close(translate(u))));
    CHECK_THROWS_AS(injection_ep(p, "a"), Error);
}

TEST_CASE("sum of processes matches the cotuple") {
    Sequent ctx = parse_sequent("|- out:{a:A,b:B}");
    EntailmentSet pa = injection_ep(parse_protocol("{a:A,b:B}"), "a", "x", "out");
    EntailmentSet pb = injection_ep(parse_protocol("{a:A,b:B}"), "b", "x", "out");
    EntailmentSet sum = sum_ep(ctx, "x", {{"a", pa}, {"b", pb}});
    EntailmentSet id = identity_ep(parse_protocol("{a:A,b:B}"), "x", "out");
    CHECK(ep_equal(close(sum), id));
}

TEST_CASE("entailment formatting") {
    Sequent s = parse_sequent("alpha:{c:(k:A)} |- beta:{c:(d:C)}");
    std::string txt = format_entailment(says("alpha:c beta:!c,d", "alpha", "k"), s);
    CHECK(txt ==
          "      || d\n"
          "c     || !c\n"
          "------++-----\n"
          "alpha || beta\n"
          "|- !alpha[k]\n");
}

TEST_CASE("roles of the nested example protocol") {
    CHECK(role(parse_protocol("(a:{p:(),q:(),r:{}},b:{})"), Side::Domain) == Role::Flow);
    CHECK(role(parse_protocol("{p:(),q:(),r:{}}"), Side::Domain) == Role::Flow);
}

TEST_CASE("frontier of a four-channel behaviour") {
    Sequent s = parse_sequent(
        "alpha:{a:(c:A,d:B),b:(e:C,f:D)}, beta:(g:E,h:F) |- gamma:{i:G,j:H}, delta:(k:I,m:{n:J,o:K})");
    Behaviour b = behaviour("alpha:a,!c gamma:!j delta:k");
    CHECK(frontier(b, s) == parse_sequent("alpha:A, beta:(g:E,h:F) |- gamma:H, delta:I"));
    CHECK(frontier(Behaviour{}, s) == s);
}

TEST_CASE("join of compatible four-channel behaviours") {
    Behaviour p = behaviour("alpha:a,!b beta:!c gamma:d,!a");
    Behaviour q = behaviour("alpha:a,!b beta:!c,d,e gamma:d delta:a,!c");
    REQUIRE(p.compatible(q));
    CHECK(p.join(q) == behaviour("alpha:a,!b beta:!c,d,e gamma:d,!a delta:a,!c"));
    CHECK(p.join(p) == p);
    CHECK(p.join(Behaviour{}) == p);
}

TEST_CASE("legality is invariant under duality of sides") {
    Sequent dom = parse_sequent("x:{a:(b:A,c:{}),d:()} |-");
    Sequent cod = parse_sequent("|- x:{a:(b:A,c:{}),d:()}");
    std::size_t n = 0;
    for (const auto& b : legal_behaviours(dom)) {
        CHECK(is_legal(b.dual(), cod) == is_legal(b, dom));
        ++n;
    }
    for (const auto& b : legal_behaviours(cod)) CHECK(is_legal(b.dual(), dom));
    CHECK(n == legal_behaviours(cod).size());
}

TEST_CASE("conflicting outputs violate determinism") {
    EntailmentSet q;
    q.sequent = parse_sequent("x:A |- y:{a:A,b:A}");
    q.entailments = {says("", "y", "a"), says("", "y", "b")};
    EPReport r = check_proto(q);
    CHECK(*r.passed[0]);
    CHECK_FALSE(*r.passed[1]);
    CHECK(r.first_failure() == 2);
    CHECK(r.counterexample[1].find("!y[a]") != std::string::npos);
}

TEST_CASE("atomic entailments compose along the shared channel") {
    AtomTheory th = AtomTheory::parse("f : A A -> A A\ng : A A -> A\n");
    Sequent fs = parse_sequent("alpha:{a:A}, beta:{b:(e:A)} |- delta:{c:A}, gamma:(d:{h:A})");
    Sequent gs = parse_sequent("gamma:(d:{h:A}), epsilon:{i:A} |- eta:(k:{j:A})");
    EntailmentSet f{fs, {Entailment{behaviour("alpha:a beta:b,!e delta:!c gamma:d,!h"),
                                    Conclusion::atomic_map(make_atomic(gen(th, "f"), {"alpha", "beta"},
                                                                       {"delta", "gamma"}))}}};
    EntailmentSet g{gs, {Entailment{behaviour("gamma:!d,h epsilon:i eta:k,!j"),
                                    Conclusion::atomic_map(make_atomic(gen(th, "g"), {"gamma", "epsilon"},
                                                                       {"eta"}))}}};
    EntailmentSet c = compose_ep(f, "gamma", g, "gamma");
    REQUIRE(c.size() == 1);
    const Entailment& e = *c.entailments.begin();
    CHECK(e.antecedent == behaviour("alpha:a beta:b,!e epsilon:i delta:!c eta:k,!j"));
    REQUIRE(e.conclusion.atomic);
    WiringGraph fg = atom_compose(gen(th, "f"), 1, gen(th, "g"), 0);
    CHECK(e.conclusion.map == make_atomic(fg, {"alpha", "beta", "epsilon"}, {"delta", "eta"}));
    CHECK(c.sequent == parse_sequent("alpha:{a:A}, beta:{b:(e:A)}, epsilon:{i:A} |- delta:{c:A}, eta:(k:{j:A})"));
}

TEST_CASE("identity process contains the copycat entailments") {
    Protocol x = parse_protocol("{a:(b:A,c:B),d:C}");
    EntailmentSet id = identity_ep(x, "u", "v");
    CHECK(check_extensional(id).ok());
    // Domain-side paths of x: a, a!b, a!c, d.  Each input on u is copied to
    // an output on v and each output on v's product to one on u.
    CHECK(id.contains(says("u:a", "v", "a")));
    CHECK(id.contains(says("u:d", "v", "d")));
    CHECK(id.contains(says("u:a v:!a,b", "u", "b")));
    CHECK(id.contains(says("u:a v:!a,c", "u", "c")));
    CHECK(id.contains(maps("u:a,!b v:!a,b", WiringGraph::identity("A"), "u", "v")));
    CHECK(id.contains(maps("u:a,!c v:!a,c", WiringGraph::identity("B"), "u", "v")));
    CHECK(id.contains(maps("u:d v:!d", WiringGraph::identity("C"), "u", "v")));
    CHECK(identity_ep(parse_protocol("A")).entailments ==
          std::set<Entailment>{maps("", WiringGraph::identity("A"), "in", "out")});
}

TEST_CASE("identity on the empty sum and the empty sum of processes") {
    EntailmentSet id0 = identity_ep(parse_protocol("{}"));
    CHECK(id0.size() == 0);
    CHECK(check_extensional(id0).ok());
    EntailmentSet s = sum_ep(parse_sequent("|- y:A"), "x", {});
    CHECK(s.sequent == parse_sequent("x:{} |- y:A"));
    CHECK(s.size() == 0);
    CHECK(check_extensional(s).ok());
}

TEST_CASE("semantic composition agrees with cut elimination on the worked example") {
    TypedTerm f = typed("alpha:{a:(c:A,d:B),b:(e:A,f:C)} |- gamma:(a:A,b:{c:B,d:C})",
                        "alpha{a => gamma(a => alpha![c](id), b => gamma![c](alpha![d](id))),"
                        "      b => gamma(a => alpha![e](id), b => gamma![d](alpha![f](id)))}");
    TypedTerm g = typed("gamma:(a:A,b:{c:B,d:C}) |- beta:{a:B,b:C}",
                        "gamma![b](gamma{c => beta![a](id), d => beta![b](id)})");
    EntailmentSet semantic = compose_ep(close(translate(f)), "gamma", close(translate(g)), "gamma");
    EntailmentSet syntactic = close(translate(normalize(cut(f, "gamma", g, "gamma"))));
    CHECK(ep_equal(semantic, syntactic));
    CHECK(check_extensional(semantic).ok());
}
