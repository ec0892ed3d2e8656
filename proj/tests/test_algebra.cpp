#include <catch2/catch_amalgamated.hpp>

#include "dioa/algebra.hpp"
#include "dioa/explorer.hpp"
#include "support/fixtures.hpp"

using namespace dioa;
using fixtures::one;
using fixtures::one_prime;
using fixtures::sink;

TEST_CASE("signature compatibility") {
    Signature in_a{{"a"}, {}, {}};
    Signature out_a{{}, {"a"}, {}};
    Signature int_t{{}, {}, {"t"}};
    Signature in_t{{"t"}, {}, {}};
    CHECK(compatible_signatures({in_a, out_a}));
    CHECK_FALSE(compatible_signatures({out_a, out_a}));
    CHECK_FALSE(compatible_signatures({int_t, in_t}));
}

TEST_CASE("signature composition follows the set formulas") {
    Signature in_a{{"a"}, {}, {}};
    Signature out_a{{}, {"a"}, {}};
    CHECK(compose_signatures({in_a, out_a}) == Signature{{}, {"a"}, {}});
    Signature any{{"x"}, {"y"}, {"z"}};
    CHECK(compose_signatures({any, Signature{}}) == any);
    // initial signatures of the car and its first transmitter
    Signature car{{"switch1"}, {"talk1"}, {}};
    Signature trans{{"lose1", "gain1", "talk1"}, {"switch1"}, {}};
    CHECK(compose_signatures({car, trans}) ==
          Signature{{"gain1", "lose1"}, {"switch1", "talk1"}, {}});
    CHECK_THROWS_AS(compose_signatures({out_a, out_a}), Error);
}

TEST_CASE("signature composition is commutative and associative") {
    std::mt19937 rng(7);
    auto rand_sig = [&](const ActionSet& own) {
        Signature g;
        for (const auto& a : ActionSet{"a", "b", "c"})
            if (own.count(a) && rng() % 2) g.output.insert(a);
        for (const auto& a : ActionSet{"a", "b", "c"})
            if (!g.output.count(a) && rng() % 2) g.input.insert(a);
        return g;
    };
    for (int i = 0; i < 50; ++i) {
        Signature s1 = rand_sig({"a"});
        Signature s2 = rand_sig({"b"});
        Signature s3 = rand_sig({"c"});
        CHECK(compose_signatures({s1, s2}) == compose_signatures({s2, s1}));
        CHECK(compose_signatures({compose_signatures({s1, s2}), s3}) ==
              compose_signatures({s1, s2, s3}));
    }
}

TEST_CASE("compatible_sioa checks the full state product") {
    CHECK(compatible_sioa({one(), sink()}).ok);
    auto rep = compatible_sioa({one(), one_prime()});
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.witness == std::vector<State>{"u", "u"});
}

TEST_CASE("composition of ONE and SINK synchronizes on a") {
    Sioa c = compose_sioa({one(), sink()});
    REQUIRE(c.states == StateSet{"(u,v)"});
    CHECK(c.starts == StateSet{"(u,v)"});
    CHECK(c.signature("(u,v)") == Signature{{}, {"a"}, {}});
    CHECK(c.steps == StepSet{{"(u,v)", "a", "(u,v)"}});
    CHECK(validate_sioa(c).ok);
}

TEST_CASE("unary composition is isomorphic to its component") {
    Sioa c = compose_sioa({one()});
    CHECK(c.states == StateSet{"(u)"});
    CHECK(c.signature("(u)") == one().signature("u"));
    CHECK(c.steps == StepSet{{"(u)", "a", "(u)"}});
}

TEST_CASE("composition rejects incompatible components") {
    CHECK_THROWS_AS(compose_sioa({one(), one_prime()}), Error);
}

TEST_CASE("hiding moves outputs to internal, per state") {
    Sioa h = hide_sioa(one(), {"a"});
    CHECK(h.signature("u") == Signature{{}, {}, {"a"}});
    CHECK(h.steps == one().steps);
    CHECK(validate_sioa(h).ok);
    SECTION("empty hide set is the identity on fields") {
        Sioa same = hide_sioa(one(), {}, "ONE");
        CHECK(same == one());
    }
    SECTION("unknown actions in the hide set are ignored") {
        Sioa same = hide_sioa(one(), {"zz"}, "ONE");
        CHECK(same == one());
    }
    SECTION("action union is preserved at every state") {
        Sioa h2 = hide_sioa(one(), {"a"});
        CHECK(h2.signature("u").acts() == one().signature("u").acts());
    }
}

TEST_CASE("renaming maps signatures and steps elementwise") {
    Renaming rho;
    rho.map["a"] = "b";
    Sioa r = rename_sioa(one(), rho);
    CHECK(r.signature("u") == Signature{{}, {"b"}, {}});
    CHECK(r.steps == StepSet{{"u", "b", "u"}});
    CHECK(validate_sioa(r).ok);

    SECTION("identity renaming preserves the automaton") {
        auto id = Renaming::identity_for(one().acts());
        Sioa same = rename_sioa(one(), id, "ONE");
        CHECK(same == one());
    }
    SECTION("steps are mapped exactly, not just inclusively") {
        CHECK(r.steps.size() == one().steps.size());
    }
    SECTION("missing coverage is an error") {
        Renaming empty;
        CHECK_THROWS_AS(rename_sioa(one(), empty), Error);
    }
    SECTION("non-injective maps are an error") {
        Sioa two = one();
        two.sig["u"].output.insert("b");
        two.states.insert("u2");
        two.sig["u2"] = {};
        Renaming bad;
        bad.map["a"] = "x";
        bad.map["b"] = "x";
        CHECK_THROWS_AS(rename_sioa(two, bad), Error);
    }
}

TEST_CASE("operator results validate on random compatible families") {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto fam = dioa::random_family(seed);
        for (const auto& c : fam.components) REQUIRE(validate_sioa(c).ok);
        Sioa comp = compose_sioa(fam.components);
        CHECK(validate_sioa(comp).ok);
        HideSet sigma{"a", "c"};
        CHECK(validate_sioa(hide_sioa(comp, sigma)).ok);
        Renaming rho;
        for (const auto& a : comp.acts()) rho.map[a] = "p_" + a;
        CHECK(validate_sioa(rename_sioa(comp, rho)).ok);
    }
}
