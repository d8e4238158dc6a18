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

// Lexicographic comparison of descending-sorted bags, an independent
// characterisation of the multiset order on a total order.
bool lex_less(CutBag a, CutBag b) {
    std::sort(a.begin(), a.end(), std::greater<>());
    std::sort(b.begin(), b.end(), std::greater<>());
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace

TEST_CASE("worked composition normalizes to the expected process") {
    TypedTerm f = typed("alpha:{a:(c:A,d:B),b:(e:A,f:C)} |- gamma:(a:A,b:{c:B,d:C})",
                        "alpha{a => gamma(a => alpha![c](id), b => gamma![c](alpha![d](id))),"
                        "      b => gamma(a => alpha![e](id), b => gamma![d](alpha![f](id)))}");
    TypedTerm g = typed("gamma:(a:A,b:{c:B,d:C}) |- beta:{a:B,b:C}",
                        "gamma![b](gamma{c => beta![a](id), d => beta![b](id)})");
    TypedTerm c = cut(f, "gamma", g, "gamma");
    std::vector<int> rules;
    NormalizeOptions opts;
    opts.verify = true;
    opts.on_step = [&](const Step& s) { rules.push_back(s.rule); };
    TypedTerm n = normalize(c, opts);
    TypedTerm expected = typed("alpha:{a:(c:A,d:B),b:(e:A,f:C)} |- beta:{a:B,b:C}",
                               "alpha{a => alpha![d](beta![a](id)), b => alpha![f](beta![b](id))}");
    CHECK(canonicalize(n) == canonicalize(expected));
    CHECK(n == expected);
    CHECK(rules.front() == 3);
    CHECK_FALSE(n.term.has_cut());
}

TEST_CASE("principal injection against a cotuple selects the branch") {
    TypedTerm t = typed("x:A |- y:A",
                        "cut g:{a:A,b:A} (g![a](id))(g{a => id, b => id})");
    auto st = step(t);
    REQUIRE(st);
    CHECK(st->rule == 11);
    CHECK(st->term.term.is_cut());
    CHECK(normalize(t).term == Term::identity());
}

TEST_CASE("nullary cotuple absorbs the cut") {
    TypedTerm t = typed("x:{} |- z:A", "cut g:A [x|] (x{})(id)");
    auto st = step(t);
    REQUIRE(st);
    CHECK(st->rule == 1);
    TypedTerm u = typed("x:{} |- z:B", "cut g:A [x|] (x{})(#f)", AtomTheory::parse("f : A -> B"));
    auto su = step(u);
    REQUIRE(su);
    CHECK(su->rule == 3);
    CHECK(su->term.term == Term::cotuple("x", {}));
}

TEST_CASE("essential cuts compose atomic maps") {
    AtomTheory th = AtomTheory::parse("f : A -> B\ng : B -> C\n");
    TypedTerm t = typed("x:A |- z:C", "cut y:B (#f)(#g)", th);
    auto st = step(t);
    REQUIRE(st);
    CHECK(st->rule == kEssential);
    TypedTerm e = typed("x:A |- z:C", "#(f 0;0 g)", th);
    CHECK(st->term == e);
}

TEST_CASE("cut with the identity normalizes back") {
    TypedTerm f = typed("alpha:{a:A,b:(c:A,d:A)} |- beta:{x:A,y:A}",
                        "alpha{a => beta![x](id), b => alpha![d](beta![y](id))}");
    TypedTerm id = identity_term(f.sequent.at("beta"), "beta", "out");
    CHECK(normalize(cut(f, "beta", id, "beta")) == rename_channels(f, {{"beta", "out"}}));
    TypedTerm id2 = identity_term(f.sequent.at("alpha"), "in", "alpha");
    TypedTerm back = normalize(cut(id2, "alpha", f, "alpha"));
    CHECK(back == rename_channels(f, {{"alpha", "in"}}));
}

TEST_CASE("renaming and cut formation") {
    TypedTerm f = typed("a:A |- b:A", "id");
    CHECK(rename_channels(f, {}) == f);
    CHECK(rename_channels(f, {{"a", "c"}}).sequent == parse_sequent("c:A |- b:A"));
    CHECK_THROWS_AS(rename_channels(f, {{"a", "b"}}), Error);
    TypedTerm h = typed("a:B |- b:B", "id");
    CHECK_THROWS_AS(cut(f, "b", h, "a"), Error);
    CHECK_THROWS_AS(cut(f, "a", f, "a"), Error);
    TypedTerm c = cut(f, "b", f, "a");
    CHECK(c.sequent == parse_sequent("a:A |- b1:A"));
    CHECK(c.term.channel() == "b");
}

TEST_CASE("heights and bags") {
    CHECK(height(Term::identity()) == 1);
    CHECK(height(Term::cotuple("x", {})) == 1);
    TypedTerm t = typed("x:A |- y:A", "cut g:{a:A,b:A} (g![a](id))(g{a => id, b => id})");
    Measures m = measures(t.term);
    CHECK(m.height == 4);
    CHECK(m.cut_bag == CutBag{4});
    CHECK(measures(Term::identity()).cut_bag.empty());
}

TEST_CASE("multiset order matches the sorted lexicographic order") {
    CHECK(multiset_less({2, 2, 1, 1}, {3}));
    CHECK(multiset_less({4}, {4, 3}));
    CHECK_FALSE(multiset_less({3, 1}, {3, 1}));
    CHECK_FALSE(multiset_less({}, {}));
    std::vector<CutBag> bags;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                CutBag x;
                for (int v : {a, b, c})
                    if (v) x.push_back(static_cast<std::size_t>(v));
                bags.push_back(x);
            }
    for (const auto& x : bags)
        for (const auto& y : bags) {
            CutBag sx = x, sy = y;
            std::sort(sx.begin(), sx.end());
            std::sort(sy.begin(), sy.end());
            CHECK(multiset_less(x, y) == (sx != sy && lex_less(x, y)));
        }
}

TEST_CASE("conversions in both directions") {
    AtomTheory th = AtomTheory::parse("m : A A -> A");
    TypedTerm t = typed("a:{x:A,y:A}, b:{u:A,v:A} |- c:{p:A,q:A}",
                        "a{x => b{u => c![p](#m), v => c![q](#m)}, y => b{u => c![q](#m), v => c![p](#m)}}", th);
    TypedTerm s = convert(t, 13, {});
    CHECK(s.term.channel() == "b");
    CHECK(convert(s, 13, {}) == t);
    CHECK(measures(s.term).height == measures(t.term).height);
    CHECK_THROWS_AS(convert(t, 14, {}), Error);

    TypedTerm o = typed("a:{x:A,y:A} |- c:{p:{r:A},q:A}", "a{x => c![p](c![r](id)), y => c![p](c![r](id))}");
    TypedTerm pulled = convert(o, 15, {});
    CHECK(pulled.term.kind() == Term::Kind::Injection);
    CHECK(convert(pulled, 15, {}) == o);

    TypedTerm d = typed("a:(x:A) |- c:{p:A}", "a![x](c![p](id))");
    TypedTerm sw = convert(d, 22, {});
    CHECK(sw.term.channel() == "c");
    CHECK(convert(sw, 22, {}) == d);

    TypedTerm unit = typed("a:{} |- b:()", "a{}");
    TypedTerm wrapped = convert(unit, 19, {}, ConversionAux{"b", ""});
    CHECK(wrapped.term == Term::tuple("b", {}));
    TypedTerm back = convert(wrapped, 19, {}, ConversionAux{"a", ""});
    CHECK(back.term == Term::cotuple("a", {}));
}

TEST_CASE("both strategies reach equal normal forms") {
    TypedTerm f = typed("alpha:{a:(c:A,d:B),b:(e:A,f:C)} |- gamma:(a:A,b:{c:B,d:C})",
                        "alpha{a => gamma(a => alpha![c](id), b => gamma![c](alpha![d](id))),"
                        "      b => gamma(a => alpha![e](id), b => gamma![d](alpha![f](id)))}");
    TypedTerm g = typed("gamma:(a:A,b:{c:B,d:C}) |- beta:{a:B,b:C}",
                        "gamma![b](gamma{c => beta![a](id), d => beta![b](id)})");
    TypedTerm c = cut(f, "gamma", g, "gamma");
    NormalizeOptions ro;
    ro.strategy = Strategy::RightmostOutermost;
    ro.verify = true;
    CHECK(decide_equal(normalize(c), normalize(c, ro)));
}
