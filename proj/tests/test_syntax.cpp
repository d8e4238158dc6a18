#include <doctest.h>

#include "sigmapi/syntax.hpp"

using namespace sigmapi;

namespace {

const char* kLeft =
    "alpha{a => gamma(a => alpha![c](id), b => gamma![c](alpha![d](id))),"
    "      b => gamma(a => alpha![e](id), b => gamma![d](alpha![f](id)))}";
const char* kRight = "gamma![b](gamma{c => beta![a](id), d => beta![b](id)})";

}  // namespace

TEST_CASE("compact terms round-trip through the printer") {
    AtomTheory th;
    Sequent s = parse_sequent("alpha:{a:(c:A,d:B),b:(e:A,f:C)} |- gamma:(a:A,b:{c:B,d:C})");
    TypedTerm t = parse_typed(kLeft, s, th);
    std::string printed = print_term(t);
    CHECK(parse_typed(printed, s, th) == t);
    CHECK(printed.find("alpha{") == 0);
}

TEST_CASE("verbose and compact parse to the same term") {
    AtomTheory th;
    Sequent s = parse_sequent("gamma:(a:A,b:{c:B,d:C}) |- beta:{a:B,b:C}");
    TypedTerm c = parse_typed(kRight, s, th);
    TypedTerm v = parse_typed(
        "output b on gamma then input on gamma of | c => output a on beta then id | d => output b on beta then 1",
        s, th);
    CHECK(c == v);
    std::string verbose = print_term(c, Syntax::Verbose);
    CHECK(parse_typed(verbose, s, th) == c);
    CHECK(print_term(c, Syntax::Math) == "←γ[b](γ{c ↦ →β[a](1_B), d ↦ →β[b](1_C)})");
}

TEST_CASE("cuts print their split only when needed") {
    AtomTheory th;
    Sequent s = parse_sequent("alpha:{a:(c:A,d:B),b:(e:A,f:C)} |- beta:{a:B,b:C}");
    std::string text = std::string("cut gamma:(a:A,b:{c:B,d:C}) (") + kLeft + ")(" + kRight + ")";
    TypedTerm t = parse_typed(text, s, th);
    CHECK(print_term(t).find('[' + std::string("alpha")) == std::string::npos);
    CHECK(parse_typed(print_term(t), s, th) == t);
    CHECK(parse_typed(print_term(t, Syntax::Verbose), s, th) == t);
}

TEST_CASE("atomic maps with explicit bindings") {
    AtomTheory th = AtomTheory::parse("f : A A -> B\n");
    Sequent s = parse_sequent("x:A, y:A |- z:B");
    TypedTerm d = parse_typed("#f", s, th);
    CHECK(print_term(d) == "#f");
    TypedTerm e = parse_typed("#f[y,x|z]", s, th);
    CHECK(print_term(e) == "#f[y,x|z]");
    CHECK(parse_typed("f[y,x|z]", s, th) == e);
    CHECK_FALSE(d == e);
}

TEST_CASE("parse errors carry a position") {
    AtomTheory th;
    Sequent s = parse_sequent("a:A |- b:A");
    CHECK_THROWS_AS(parse_term("a{x => }", s, th), ParseError);
    try {
        parse_term("id id", s, th);
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position == 3);
    }
    CHECK_THROWS_AS(parse_typed("b![x](id)", s, th), TypeError);
}
