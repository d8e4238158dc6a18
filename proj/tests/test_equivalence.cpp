#include <doctest.h>

#include <algorithm>

#include "sigmapi/equivalence.hpp"
#include "sigmapi/rewriter.hpp"
#include "sigmapi/syntax.hpp"

using namespace sigmapi;

namespace {

const AtomTheory kNone;

TypedTerm typed(const char* seq, const char* text, const AtomTheory& th = kNone) {
    return parse_typed(text, parse_sequent(seq), th);
}

const char* kFourChannel =
    "alpha:{a:(c:A,d:B),b:(e:C,f:D)}, beta:(g:E,h:F) |- gamma:{ap:G,bp:H}, delta:(cp:I,dp:{ep:J,fp:K})";

AtomTheory four_channel_theory() {
    return AtomTheory::parse("i : A E -> G I\nj : B E -> G J\nk : C F -> H I\nl : D F -> H K\n");
}

}  // namespace

TEST_CASE("two derivations of a four-channel sequent are equal") {
    AtomTheory th = four_channel_theory();
    TypedTerm t1 = typed(kFourChannel,
                         "alpha{a => beta![g](gamma![ap](delta(cp => alpha![c](#i[alpha,beta|gamma,delta]),"
                         "                                       dp => alpha![d](delta![ep](#j[alpha,beta|gamma,delta]))))),"
                         "      b => beta![h](gamma![bp](delta(cp => alpha![e](#k[alpha,beta|gamma,delta]),"
                         "                                       dp => alpha![f](delta![fp](#l[alpha,beta|gamma,delta])))))}",
                         th);
    TypedTerm t2 = typed(kFourChannel,
                         "delta(cp => alpha{a => alpha![c](beta![g](gamma![ap](#i[alpha,beta|gamma,delta]))),"
                         "                  b => alpha![e](beta![h](gamma![bp](#k[alpha,beta|gamma,delta])))},"
                         "      dp => alpha{a => alpha![d](beta![g](gamma![ap](delta![ep](#j[alpha,beta|gamma,delta])))),"
                         "                  b => alpha![f](beta![h](gamma![bp](delta![fp](#l[alpha,beta|gamma,delta]))))})",
                         th);
    CHECK(decide_equal(t1, t2));
    CHECK(decide_equal(t2, t1));
    CHECK(canonicalize(t1) == canonicalize(t2));

    TypedTerm t3 = typed(kFourChannel,
                         "delta(cp => alpha{a => alpha![c](beta![g](gamma![ap](#i[alpha,beta|gamma,delta]))),"
                         "                  b => alpha![e](beta![h](gamma![bp](#k[alpha,beta|gamma,delta])))},"
                         "      dp => alpha{a => alpha![d](beta![g](gamma![ap](delta![ep](#j[alpha,beta|gamma,delta])))),"
                         "                  b => beta![h](alpha![f](gamma![bp](delta![fp](#l[alpha,beta|gamma,delta]))))})",
                         th);
    CHECK(decide_equal(t1, t3));
}

TEST_CASE("different outputs are distinguished with a witness") {
    TypedTerm a = typed("x:A |- y:{p:A,q:A}", "y![p](id)");
    TypedTerm b = typed("x:A |- y:{p:A,q:A}", "y![q](id)");
    EqualityResult r = decide_equal_explained(a, b);
    CHECK_FALSE(r.equal);
    REQUIRE(r.witness);
    CHECK(r.witness->path.empty());
    CHECK(r.witness->channel == "y");
    CHECK(r.witness->event == "p");
    CHECK(canonicalize(a) != canonicalize(b));
}

TEST_CASE("witness points inside the template") {
    TypedTerm a = typed("x:{u:A,v:A} |- y:{p:A,q:A}", "x{u => y![p](id), v => y![p](id)}");
    TypedTerm b = typed("x:{u:A,v:A} |- y:{p:A,q:A}", "x{u => y![p](id), v => y![q](id)}");
    EqualityResult r = decide_equal_explained(a, b);
    CHECK_FALSE(r.equal);
    REQUIRE(r.witness);
    CHECK(r.witness->path == std::vector<int>{1});
}

TEST_CASE("root units make every pair equal") {
    AtomTheory th = AtomTheory::parse("f : A -> B");
    TypedTerm a = typed("x:{}, y:{a:A,b:A} |- z:B", "x{}");
    TypedTerm b = typed("x:{}, y:{a:A,b:A} |- z:B", "y{a => x{}, b => x{}}", th);
    CHECK(decide_equal(a, b));
    CHECK(canonicalize(b) == a);
}

TEST_CASE("an output into a unit absorbs the other outputs") {
    const char* seq = "x:B, y:(a:{a:B,b:B},b:B) |- u:{a:(),b:(a:A,b:B)}, v:A";
    TypedTerm a = typed(seq, "y![a](u![a](u()))");
    TypedTerm b = typed(seq, "y![b](u![a](u()))");
    TypedTerm c = typed(seq, "y![a](y{a => u![a](u()), b => u![a](u())})");
    CHECK(decide_equal(a, b));
    CHECK(decide_equal(b, c));
    CHECK(canonicalize(a) == canonicalize(c));
    CHECK(canonicalize(a) == typed(seq, "u![a](u())"));
    auto pulled = pull_output(b, "y", "a");
    REQUIRE(pulled);
    CHECK(*pulled == typed("x:B, y:{a:B,b:B} |- u:{a:(),b:(a:A,b:B)}, v:A", "u![a](u())"));
}

TEST_CASE("input residual and pulling outputs") {
    TypedTerm t = typed("x:{a:A,b:A}, y:{c:A,d:A} |- z:{e:A,f:A}",
                        "z![e](x{a => y{c => #m, d => #m}, b => y{c => #m, d => #m}})",
                        AtomTheory::parse("m : A A -> A"));
    TypedTerm r = input_residual(t, "y", "d");
    CHECK(r.sequent == parse_sequent("x:{a:A,b:A}, y:A |- z:{e:A,f:A}"));
    CHECK(r.term.kind() == Term::Kind::Injection);
    CHECK(pull_output(t, "z", "e"));
    CHECK_FALSE(pull_output(t, "z", "f"));
    TypedTerm inside = typed("x:{a:A,b:A} |- z:{e:A,f:A}", "x{a => z![e](id), b => z![e](id)}");
    auto pulled = pull_output(inside, "z", "e");
    REQUIRE(pulled);
    CHECK(pulled->sequent == parse_sequent("x:{a:A,b:A} |- z:A"));
    CHECK_FALSE(pull_output(typed("x:{a:A,b:A} |- z:{e:A,f:A}", "x{a => z![e](id), b => z![f](id)}"), "z", "e"));
}

TEST_CASE("decide_equal agrees with the conversion closure on small sequents") {
    for (const char* seq : {"x:(a:A,b:A) |- z:{e:A,f:A}", "x:{a:A,b:A} |- z:{e:A,f:A}",
                            "x:{a:A,b:{}} |- z:(c:{e:A,f:A})"}) {
        Sequent s = parse_sequent(seq);
        auto terms = enumerate_cut_free(s, kNone, 7);
        REQUIRE(terms.size() > 2);
        std::size_t max_size = 0;
        for (const auto& t : terms) max_size = std::max(max_size, t.term.size());
        for (const auto& t : terms) {
            auto cls = conversion_closure(t, max_size + 2);
            for (const auto& u : terms) {
                bool member = std::find(cls.begin(), cls.end(), u) != cls.end();
                CHECK(decide_equal(t, u) == member);
            }
        }
    }
}

TEST_CASE("canonical forms are idempotent and invariant under conversions") {
    for (const char* seq : {"x:(a:A,b:A) |- z:{e:A,f:A}", "x:{a:A,b:A} |- z:{e:A,f:A}"}) {
        for (const auto& t : enumerate_cut_free(parse_sequent(seq), kNone, 7)) {
            TypedTerm c = canonicalize(t);
            CHECK(canonicalize(c) == c);
            CHECK(decide_equal(c, t));
            for (const auto& n : conversion_neighbours(t)) CHECK(canonicalize(n.term) == c);
        }
    }
}

TEST_CASE("terms with cuts are rejected") {
    TypedTerm t = typed("x:A |- y:A", "cut g:A (id)(id)");
    CHECK_THROWS_AS(decide_equal(t, t), Error);
    CHECK_THROWS_AS(canonicalize(t), Error);
    TypedTerm a = typed("x:A |- y:A", "id");
    TypedTerm b = typed("u:A |- v:A", "id");
    CHECK_THROWS_AS(decide_equal(a, b), Error);
}
