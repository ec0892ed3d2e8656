#ifndef DIOA_TESTS_FIXTURES_HPP
#define DIOA_TESTS_FIXTURES_HPP

#include "dioa/behavior.hpp"

namespace fixtures {

using namespace dioa;

/// Single state u, outputs a forever.
inline Sioa one() {
    Sioa m;
    m.id = "ONE";
    m.states = {"u"};
    m.starts = {"u"};
    m.sig["u"] = {{}, {"a"}, {}};
    m.steps = {{"u", "a", "u"}};
    return m;
}

/// Single state v, consumes a forever.
inline Sioa sink() {
    Sioa m;
    m.id = "SINK";
    m.states = {"v"};
    m.starts = {"v"};
    m.sig["v"] = {{"a"}, {}, {}};
    m.steps = {{"v", "a", "v"}};
    return m;
}

/// Like one(), but a second automaton that also outputs a.
inline Sioa one_prime() {
    Sioa m = one();
    m.id = "ONE2";
    return m;
}

/// Internal loop with constant signature.
inline Sioa tau_loop() {
    Sioa m;
    m.id = "TAU";
    m.states = {"w"};
    m.starts = {"w"};
    m.sig["w"] = {{}, {}, {"t"}};
    m.steps = {{"w", "t", "w"}};
    return m;
}

inline ExtSignature esig(ActionSet in, ActionSet out) { return {std::move(in), std::move(out)}; }

inline TraceElem sig_elem(ActionSet in, ActionSet out) {
    return TraceElem::make_sig(esig(std::move(in), std::move(out)));
}

inline TraceElem act_elem(Action a) { return TraceElem::make_action(std::move(a)); }

inline Execution exec(std::string owner, std::vector<State> states, std::vector<Action> actions) {
    return Execution{std::move(owner), std::move(states), std::move(actions)};
}

}  // namespace fixtures

#endif
