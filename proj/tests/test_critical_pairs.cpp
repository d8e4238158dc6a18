#include <doctest.h>

#include "sigmapi/critical_pairs.hpp"
#include "sigmapi/error.hpp"
#include "sigmapi/syntax.hpp"

using namespace sigmapi;

TEST_CASE("every critical pair joins") {
    for (const auto& cp : critical_pairs()) {
        CAPTURE(cp.name);
        JoinResult r = join(cp);
        CHECK(r.error == "");
        if (r.error.empty() && !r.joined) {
            MESSAGE("left:  " << print_term(*r.left));
            MESSAGE("right: " << print_term(*r.right));
        }
        CHECK(r.joined);
    }
}

TEST_CASE("a missing bottom conversion leaves the pair apart") {
    CriticalPair cp = critical_pairs().front();
    for (const auto& c : critical_pairs())
        if (c.name == "3-4/2") cp = c;
    REQUIRE(cp.name == "3-4/2");
    cp.left = "3 4";
    JoinResult r = join(cp);
    CHECK(r.error == "");
    CHECK_FALSE(r.joined);
    cp.left = "3 4 19@ 19@";
    CHECK_FALSE(join(cp).joined);
}

TEST_CASE("script tokens that match nothing are errors") {
    AtomTheory th = AtomTheory::parse("f : A -> B");
    TypedTerm t = parse_typed("cut k:B (#f[x|k])(id)", parse_sequent("x:A |- v:B"), th);
    CHECK_THROWS_AS(run_script(t, "3"), Error);
    CHECK_THROWS_AS(run_script(t, "13@L"), Error);
    CHECK_THROWS_AS(run_script(t, "13"), Error);
    CHECK(run_script(t, "1").term == parse_typed("#f[x|v]", parse_sequent("x:A |- v:B"), th).term);
}

TEST_CASE("instances cover one- and two-branch families") {
    std::size_t ones = 0, twos = 0;
    for (const auto& cp : critical_pairs()) {
        auto slash = cp.name.find('/');
        REQUIRE(slash != std::string::npos);
        (cp.name[slash + 1] == '1' ? ones : twos) += 1;
    }
    CHECK(ones >= 50);
    CHECK(twos >= 50);
}
