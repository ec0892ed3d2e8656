#include <catch2/catch_amalgamated.hpp>

#include "dioa/core.hpp"
#include "support/fixtures.hpp"

using namespace dioa;

TEST_CASE("signature disjointness and accessors") {
    Signature g{{"a"}, {"b"}, {"t"}};
    CHECK(g.disjoint_triple());
    CHECK(g.acts() == ActionSet{"a", "b", "t"});
    CHECK(g.ext() == ExtSignature{{"a"}, {"b"}});
    Signature bad{{"a"}, {"a"}, {}};
    CHECK_FALSE(bad.disjoint_triple());
}

TEST_CASE("validate accepts the one-state output loop") {
    auto rep = validate_sioa(fixtures::one());
    CHECK(rep.ok);
}

TEST_CASE("validate flags missing input step as C2") {
    Sioa m;
    m.id = "NOIN";
    m.states = {"u"};
    m.starts = {"u"};
    m.sig["u"] = {{"b"}, {}, {}};
    auto rep = validate_sioa(m);
    REQUIRE_FALSE(rep.ok);
    REQUIRE(rep.violations.size() == 1);
    CHECK(rep.violations[0].tag == "C2");
    CHECK(rep.violations[0].where == "(u,b)");
}

TEST_CASE("validate flags structural problems") {
    Sioa m;
    m.id = "BAD";
    m.states = {"u"};
    m.sig["u"] = {};
    SECTION("empty start set") {
        auto rep = validate_sioa(m);
        REQUIRE_FALSE(rep.ok);
        CHECK(rep.violations[0].tag == "STRUCT");
    }
    SECTION("undeclared step endpoint") {
        m.starts = {"u"};
        m.steps = {{"u", "a", "w"}};
        auto rep = validate_sioa(m);
        REQUIRE_FALSE(rep.ok);
        CHECK(rep.violations[0].tag == "STRUCT");
    }
}

TEST_CASE("validate flags steps outside the signature as C1") {
    Sioa m = fixtures::one();
    m.steps.insert({"u", "zz", "u"});
    auto rep = validate_sioa(m);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.violations[0].tag == "C1");
}

TEST_CASE("validate is pure") {
    auto a = fixtures::one();
    auto r1 = validate_sioa(a);
    auto r2 = validate_sioa(a);
    CHECK(r1.ok == r2.ok);
    CHECK(r1.violations.size() == r2.violations.size());
}

TEST_CASE("enabled_steps lists canonical pairs") {
    auto one = fixtures::one();
    CHECK(enabled_steps(one, "u") == std::set<std::pair<Action, State>>{{"a", "u"}});
    Sioa empty;
    empty.id = "E";
    empty.states = {"s"};
    empty.starts = {"s"};
    empty.sig["s"] = {};
    CHECK(enabled_steps(empty, "s").empty());
    CHECK_THROWS_AS(enabled_steps(one, "nope"), Error);
}

TEST_CASE("tuple ids split at top level only") {
    CHECK(split_tuple("(a,b)") == std::vector<std::string>{"a", "b"});
    CHECK(split_tuple("(a,(b,c),d)") == std::vector<std::string>{"a", "(b,c)", "d"});
    CHECK(split_tuple("([X@s, Y@t],q)") == std::vector<std::string>{"[X@s, Y@t]", "q"});
    CHECK(split_tuple("plain") == std::vector<std::string>{"plain"});
    CHECK(make_tuple_id({"a", "b"}) == "(a,b)");
}
