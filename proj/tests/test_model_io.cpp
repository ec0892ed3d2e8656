#include <catch2/catch_amalgamated.hpp>

#include <cstdio>

#include "dioa/examples.hpp"
#include "dioa/model_io.hpp"

using namespace dioa;

namespace {

json minimal_model() {
    json j;
    j["dioa_schema"] = 1;
    j["automata"] = json::array();
    json a;
    a["id"] = "ONE";
    a["states"] = {"u"};
    a["starts"] = {"u"};
    a["signatures"]["u"] = {{"input", json::array()},
                            {"output", {"a"}},
                            {"internal", json::array()}};
    a["steps"] = json::array();
    a["steps"].push_back({"u", "a", "u"});
    j["automata"].push_back(a);
    return j;
}

}  // namespace

TEST_CASE("a minimal model loads and registers its automaton") {
    auto m = model_from_json(minimal_model());
    CHECK(m.registry.has("ONE"));
    CHECK(m.registry.at("ONE").signature("u").output == ActionSet{"a"});
}

TEST_CASE("schema marker is required") {
    auto j = minimal_model();
    j.erase("dioa_schema");
    CHECK_THROWS_AS(model_from_json(j), Error);
}

TEST_CASE("duplicate automaton ids are rejected") {
    auto j = minimal_model();
    j["automata"].push_back(j["automata"][0]);
    CHECK_THROWS_AS(model_from_json(j), Error);
}

TEST_CASE("a constraint-violating automaton fails the whole load") {
    auto j = minimal_model();
    j["automata"][0]["signatures"]["u"]["input"] = {"b"};  // b has no step: C2
    try {
        model_from_json(j);
        FAIL("expected a load error");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("C2") != std::string::npos);
    }
}

TEST_CASE("reserved characters in tokens are rejected") {
    auto j = minimal_model();
    j["automata"][0]["id"] = "bad id";
    CHECK_THROWS_AS(model_from_json(j), Error);
}

TEST_CASE("bundled examples round-trip byte-stably") {
    for (const auto& [name, build] : examples::all()) {
        INFO(name);
        Model m = build();
        std::string text = model_text(m);
        Model reloaded = model_from_json(json::parse(text));
        CHECK(model_text(reloaded) == text);
        CHECK(reloaded.automata.size() == m.automata.size());
        CHECK(reloaded.cas.size() == m.cas.size());
        for (const auto& [id, a] : m.automata) CHECK(reloaded.registry.at(id) == a);
    }
}

TEST_CASE("save and load through a file") {
    Model m = examples::creation_example();
    std::string path = "test_model_roundtrip.dioa.json";
    save_model(m, path);
    Model loaded = load_model(path);
    CHECK(model_text(loaded) == model_text(m));
    std::remove(path.c_str());
}

TEST_CASE("derived definitions resolve to operators") {
    Model m = examples::travel_agent();
    CHECK(m.has_target("HiddenImpl"));
    CHECK(m.has_target("HiddenSpec"));
    // hiding leaves only request/response as external outputs of the spec
    const Sioa& hidden = m.target("HiddenSpec");
    for (const auto& s : hidden.states) {
        CHECK(set_intersect(hidden.signature(s).output,
                            ActionSet{"response_f_ok", "response_f_no"}) ==
              hidden.signature(s).output);
    }
    const Sioa& raw = m.target("TravelSpec");
    for (const auto& s : raw.states)
        CHECK(hidden.signature(s).acts() == raw.signature(s).acts());
}

TEST_CASE("unresolvable references fail the load") {
    auto j = minimal_model();
    j["derived"] = json::array();
    j["derived"].push_back({{"id", "H"}, {"op", "hide"}, {"target", "ONE"}, {"hide_set", "nope"}});
    CHECK_THROWS_AS(model_from_json(j), Error);
}
