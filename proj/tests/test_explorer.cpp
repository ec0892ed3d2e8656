#include <catch2/catch_amalgamated.hpp>

#include "dioa/explorer.hpp"
#include "support/fixtures.hpp"

using namespace dioa;
using fixtures::act_elem;
using fixtures::sig_elem;

TEST_CASE("trace enumeration at small depths") {
    auto one = fixtures::one();
    auto d0 = enumerate_traces(one, 0);
    REQUIRE(d0.size() == 1);
    CHECK(trace_text(*d0.begin()) == "{|a}");
    auto d2 = enumerate_traces(one, 2);
    CHECK(d2.size() == 3);  // 0, 1 and 2 occurrences of the output
    std::set<std::string> texts;
    for (const auto& t : d2) texts.insert(trace_text(t));
    CHECK(texts == std::set<std::string>{"{|a}", "{|a} a {|a}", "{|a} a {|a} a {|a}"});
}

TEST_CASE("trace sets are monotone in depth") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        auto fam = random_family(seed);
        const Sioa& m = fam.components.front();
        auto d3 = enumerate_traces(m, 3);
        auto d4 = enumerate_traces(m, 4);
        for (const auto& t : d3) CHECK(d4.count(t));
    }
}

TEST_CASE("action projection of traces") {
    CHECK(action_projection({sig_elem({}, {"a"})}).empty());
    auto g = sig_elem({}, {"a", "b"});
    std::vector<Action> want{"a", "b"};
    CHECK(action_projection({g, act_elem("a"), g, act_elem("b"), g}) == want);
}

TEST_CASE("membership searches agree with enumeration") {
    for (std::uint64_t seed = 1; seed <= 15; ++seed) {
        auto fam = random_family(seed);
        const Sioa& m = fam.components.front();
        auto traces = enumerate_traces(m, 3);
        for (const auto& t : traces) CHECK(trace_membership(m, t, 3));
        auto actions = enumerate_action_traces(m, 3);
        for (const auto& w : actions) CHECK(action_trace_membership(m, w, 3));
        // something outside the alphabet is never a member
        Trace bogus{TraceElem::make_sig({{}, {"nope"}})};
        CHECK_FALSE(trace_membership(m, bogus, 5));
    }
}

TEST_CASE("trace inclusion is reflexive and witnesses are least") {
    auto one = fixtures::one();
    CHECK(trace_inclusion(one, one, 4, false).holds);
    CHECK(trace_inclusion(one, one, 4, true).holds);

    Sioa ab = one;
    ab.id = "AB";
    ab.sig["u"] = {{}, {"a", "b"}, {}};
    ab.steps.insert({"u", "b", "u"});
    // every trace of AB has signature {|a,b}, so full inclusion fails at the
    // initial signature, and action-only inclusion fails at the b action
    auto full = trace_inclusion(ab, one, 3, false);
    REQUIRE_FALSE(full.holds);
    CHECK(full.witness == "{|a,b}");
    auto act = trace_inclusion(ab, one, 3, true);
    REQUIRE_FALSE(act.holds);
    CHECK(act.witness == "a a b");  // least missing sequence in canonical order
}

TEST_CASE("theorem names round-trip") {
    for (TheoremId t : {TheoremId::Projection, TheoremId::Pasting, TheoremId::FiniteTracePasting,
                        TheoremId::Substitutivity, TheoremId::HidingMono, TheoremId::RenamingMono,
                        TheoremId::Congruence, TheoremId::CreationMono}) {
        auto parsed = parse_theorem(theorem_name(t));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == t);
    }
    CHECK_FALSE(parse_theorem("nonsense").has_value());
}

TEST_CASE("random families are valid and compatible") {
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto fam = random_family(seed);
        for (const auto& c : fam.components) CHECK(validate_sioa(c).ok);
        CHECK(compatible_sioa(fam.components).ok);
        for (std::size_t i = 0; i < fam.components.size(); ++i) {
            Sioa sup = superset_variant(fam.components[i], fam.owned[i], fam.pool, seed + 31);
            CHECK(validate_sioa(sup).ok);
            CHECK(trace_inclusion(fam.components[i], sup, 3, false).holds);
        }
    }
}

TEST_CASE("theorem oracles pass on a spot-check of seeds") {
    for (TheoremId t : {TheoremId::Projection, TheoremId::Pasting, TheoremId::FiniteTracePasting,
                        TheoremId::Substitutivity, TheoremId::HidingMono, TheoremId::RenamingMono,
                        TheoremId::Congruence}) {
        for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
            auto out = check_theorem_random(t, seed, 4);
            INFO(std::string(theorem_name(t)) + " seed " + std::to_string(seed) + ": " +
                 out.detail);
            CHECK(out.result != "fail");
        }
    }
}

TEST_CASE("substitutivity with an equal replacement passes trivially") {
    auto fam = random_family(11);
    auto out = oracle::substitutivity(fam.components, 0, fam.components[0], 4);
    CHECK(out.result == "pass");
}

TEST_CASE("substitutivity oracle detects an actual violation") {
    // a deliberately broken pair: the replacement misses a trace
    Sioa big = fixtures::one();
    Sioa small;
    small.id = "SMALL";
    small.states = {"u"};
    small.starts = {"u"};
    small.sig["u"] = {{}, {"a"}, {}};
    // no steps: outputs never fire
    auto out = oracle::substitutivity({big}, 0, small, 3);
    CHECK(out.result == "vacuous");  // inclusion hypothesis already fails
    auto out2 = oracle::substitutivity({small}, 0, big, 3);
    CHECK(out2.result == "pass");
}
