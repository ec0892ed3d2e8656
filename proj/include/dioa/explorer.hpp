#ifndef DIOA_EXPLORER_HPP
#define DIOA_EXPLORER_HPP

#include <random>

#include "dioa/creation_analysis.hpp"
#include "dioa/enumerate.hpp"

namespace dioa {

using Depth = std::size_t;

struct InclusionResult {
    bool holds = true;
    std::string witness;  // lexicographically least missing trace, canonical text
};

/// Bounded trace inclusion: every depth-d trace of M must be realizable by N
/// within d transitions.  `actions_only` compares action projections.
inline InclusionResult trace_inclusion(const Sioa& m, const Sioa& n, Depth d, bool actions_only) {
    InclusionResult r;
    TraceMatcher matcher(n);
    if (actions_only) {
        for (const auto& w : enumerate_action_traces(m, d)) {
            if (!matcher.actions(w, d)) {
                r.holds = false;
                r.witness = action_text(w);
                return r;
            }
        }
    } else {
        for (const auto& t : enumerate_traces(m, d)) {
            if (!matcher.trace(t, d)) {
                r.holds = false;
                r.witness = trace_text(t);
                return r;
            }
        }
    }
    return r;
}

enum class TheoremId {
    Projection,
    Pasting,
    FiniteTracePasting,
    Substitutivity,
    HidingMono,
    RenamingMono,
    Congruence,
    CreationMono,
};

inline const char* theorem_name(TheoremId t) {
    switch (t) {
        case TheoremId::Projection: return "projection";
        case TheoremId::Pasting: return "pasting";
        case TheoremId::FiniteTracePasting: return "finite-trace-pasting";
        case TheoremId::Substitutivity: return "substitutivity";
        case TheoremId::HidingMono: return "hiding-mono";
        case TheoremId::RenamingMono: return "renaming-mono";
        case TheoremId::Congruence: return "congruence";
        case TheoremId::CreationMono: return "creation-mono";
    }
    return "?";
}

inline std::optional<TheoremId> parse_theorem(const std::string& s) {
    for (TheoremId t : {TheoremId::Projection, TheoremId::Pasting, TheoremId::FiniteTracePasting,
                        TheoremId::Substitutivity, TheoremId::HidingMono, TheoremId::RenamingMono,
                        TheoremId::Congruence, TheoremId::CreationMono})
        if (s == theorem_name(t)) return t;
    return std::nullopt;
}

struct TheoremOutcome {
    std::string result;  // pass | fail | vacuous | inconclusive
    std::string detail;
};

// ---------------------------------------------------------------------------
// Seeded random families of compatible SIOA
// ---------------------------------------------------------------------------

struct RandomLimits {
    std::size_t max_components = 3;
    std::size_t max_states = 4;
    std::size_t max_actions = 4;
    std::size_t max_transitions = 6;
};

struct RandomFamily {
    std::vector<Sioa> components;
    std::vector<ActionSet> owned;  // output ownership per component
    ActionSet pool;
};

/// Compatible-by-construction family: every external action has one owner
/// allowed to output it, internal actions are private tokens.
inline RandomFamily random_family(std::uint64_t seed, const RandomLimits& lim = {}) {
    std::mt19937_64 rng(seed * 2654435761u + 17);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };

    RandomFamily fam;
    std::size_t n = 1 + pick(lim.max_components);
    std::size_t na = 1 + pick(lim.max_actions);
    static const char* names[] = {"a", "b", "c", "d", "e", "f"};
    for (std::size_t i = 0; i < na; ++i) fam.pool.insert(names[i]);
    std::map<Action, std::size_t> owner;
    for (const auto& a : fam.pool) owner[a] = pick(n);

    fam.owned.resize(n);
    for (const auto& [a, o] : owner) fam.owned[o].insert(a);

    for (std::size_t i = 0; i < n; ++i) {
        Sioa m;
        m.id = "R" + std::to_string(i + 1);
        std::size_t ns = 1 + pick(lim.max_states);
        std::vector<State> states;
        for (std::size_t s = 0; s < ns; ++s) {
            State q = "q" + std::to_string(s);
            states.push_back(q);
            m.states.insert(q);
        }
        Action tau = "tau_" + m.id;
        for (const auto& q : states) {
            Signature g;
            for (const auto& a : fam.owned[i])
                if (rng() % 2) g.output.insert(a);
            for (const auto& a : fam.pool)
                if (!g.output.count(a) && rng() % 2) g.input.insert(a);
            if (rng() % 3 == 0) g.internal.insert(tau);
            m.sig[q] = g;
        }
        for (const auto& q : states)  // input enabling first
            for (const auto& a : m.sig[q].input) {
                std::size_t targets = 1 + pick(2);
                for (std::size_t t = 0; t < targets; ++t)
                    m.steps.insert({q, a, states[pick(ns)]});
            }
        std::size_t extra = pick(lim.max_transitions + 1);
        for (std::size_t t = 0; t < extra; ++t) {
            const State& q = states[pick(ns)];
            ActionSet avail = m.sig[q].acts();
            if (avail.empty()) continue;
            std::vector<Action> av(avail.begin(), avail.end());
            m.steps.insert({q, av[pick(av.size())], states[pick(ns)]});
        }
        for (const auto& q : states)
            if (rng() % 2) m.starts.insert(q);
        if (m.starts.empty()) m.starts.insert(states[0]);
        fam.components.push_back(std::move(m));
    }
    return fam;
}

/// A trace-superset variant: same signatures on existing states, extra
/// transitions, possibly extra states and start states.  Every execution of
/// the original is verbatim an execution of the variant.
inline Sioa superset_variant(const Sioa& base, const ActionSet& owned, const ActionSet& pool,
                             std::uint64_t seed) {
    std::mt19937_64 rng(seed * 40503u + 7);
    auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
    Sioa m = base;
    m.id = base.id + "p";
    Action tau = "tau_" + base.id;  // keep the same private token

    std::vector<State> states(m.states.begin(), m.states.end());
    std::size_t fresh = pick(3);
    for (std::size_t s = 0; s < fresh; ++s) {
        State q = "x" + std::to_string(s);
        m.states.insert(q);
        Signature g;
        for (const auto& a : owned)
            if (rng() % 2) g.output.insert(a);
        for (const auto& a : pool)
            if (!g.output.count(a) && rng() % 2) g.input.insert(a);
        if (rng() % 3 == 0) g.internal.insert(tau);
        m.sig[q] = g;
        states.push_back(q);
    }
    std::vector<State> all(m.states.begin(), m.states.end());
    for (const auto& q : all)  // re-establish input enabling over new states
        for (const auto& a : m.sig[q].input) {
            bool enabled = false;
            for (const auto& st : m.steps)
                if (st.src == q && st.action == a) { enabled = true; break; }
            if (!enabled) m.steps.insert({q, a, all[pick(all.size())]});
        }
    std::size_t extra = 1 + pick(4);
    for (std::size_t t = 0; t < extra; ++t) {
        const State& q = all[pick(all.size())];
        ActionSet avail = m.sig[q].acts();
        if (avail.empty()) continue;
        std::vector<Action> av(avail.begin(), avail.end());
        m.steps.insert({q, av[pick(av.size())], all[pick(all.size())]});
    }
    if (rng() % 2) m.starts.insert(all[pick(all.size())]);
    return m;
}

/// An isomorphic copy (renamed states): trace-equivalent by construction.
inline Sioa iso_variant(const Sioa& base) {
    Sioa m;
    m.id = base.id + "i";
    auto ren = [](const State& s) { return "z_" + s; };
    for (const auto& s : base.states) m.states.insert(ren(s));
    for (const auto& s : base.starts) m.starts.insert(ren(s));
    for (const auto& [s, g] : base.sig) m.sig[ren(s)] = g;
    for (const auto& st : base.steps) m.steps.insert({ren(st.src), st.action, ren(st.dst)});
    return m;
}

// ---------------------------------------------------------------------------
// Theorem oracles
// ---------------------------------------------------------------------------

namespace oracle {

inline TheoremOutcome projection(const std::vector<Sioa>& comps, Depth d) {
    Sioa comp = compose_sioa(comps);
    for (const auto& e : enumerate_executions_capped(comp, d, 4000)) {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            auto p = project_execution(comps, e, i);
            std::string why;
            if (!is_execution(comps[i], p, &why))
                return {"fail", "projection of " + e.text() + " onto " + comps[i].id +
                                    " is not an execution: " + why};
        }
    }
    return {"pass", ""};
}

inline TheoremOutcome pasting(const std::vector<Sioa>& comps, Depth d) {
    Sioa comp = compose_sioa(comps);
    for (const auto& e : enumerate_executions_capped(comp, d, 4000)) {
        auto rep = paste_check(comps, e);
        if (!rep.ok)
            return {"fail", "paste_check rejected an actual execution (clause " +
                                std::to_string(rep.clause) + "): " + rep.detail};
    }
    return {"pass", ""};
}

/// Zip round-trip plus the constructive finite-trace pasting direction:
/// candidate traces come from a strictly larger variant composition, so a
/// successful zip against original component traces is a real prediction.
inline TheoremOutcome finite_trace_pasting(const std::vector<Sioa>& comps,
                                           const std::vector<Sioa>& variants, Depth d) {
    Sioa comp = compose_sioa(comps);
    // round trip: composite traces zip with their projections (bounded batch)
    std::size_t roundtrip_budget = 500;
    for (const auto& [t, e] : trace_witnesses(comp, d)) {
        if (roundtrip_budget-- == 0) break;
        auto [g, gs] = zips_witness_from_execution(comps, e);
        auto zr = zips_check(g, gs);
        if (!zr.ok)
            return {"fail", "zips witness rejected at clause " + std::to_string(zr.clause) +
                                ": " + zr.detail};
        std::vector<Trace> parts;
        for (std::size_t i = 0; i < comps.size(); ++i)
            parts.push_back(trace_of(comps[i], project_execution(comps, e, i)));
        if (!zip_check(t, parts))
            return {"fail", "zip_check rejected projection parts of " + trace_text(t)};
    }
    // pasting: zippable tuples of component traces yield composite traces
    const Depth dp = 2;
    std::vector<std::vector<Trace>> part_sets;
    for (const auto& c : comps) {
        auto ts = enumerate_traces(c, dp);
        part_sets.emplace_back(ts.begin(), ts.end());
    }
    Sioa vcomp = compose_sioa(variants);
    auto candidates = enumerate_traces(vcomp, d);
    TraceMatcher matcher(comp);
    std::size_t budget = 1000;
    std::vector<std::size_t> idx(comps.size(), 0);
    bool done = false;
    while (!done && budget > 0) {
        std::vector<Trace> parts;
        for (std::size_t i = 0; i < comps.size(); ++i) parts.push_back(part_sets[i][idx[i]]);
        for (const auto& beta : candidates) {
            if (--budget == 0) break;
            if (!zip_check(beta, parts)) continue;
            // witness executions have at most dp transitions each, so the
            // pasted execution fits in |comps| * dp <= d transitions
            if (!matcher.trace(beta, comps.size() * dp))
                return {"fail", "zippable trace " + trace_text(beta) + " is not a composite trace"};
        }
        std::size_t k = comps.size();
        done = true;
        while (k > 0) {
            --k;
            if (++idx[k] < part_sets[k].size()) { done = false; break; }
            idx[k] = 0;
        }
    }
    return {"pass", ""};
}

inline TheoremOutcome substitutivity(const std::vector<Sioa>& comps, std::size_t k,
                                     const Sioa& replacement, Depth d) {
    auto hyp = trace_inclusion(comps[k], replacement, d, false);
    if (!hyp.holds) return {"vacuous", "component inclusion fails: " + hyp.witness};
    std::vector<Sioa> primed = comps;
    primed[k] = replacement;
    if (!compatible_sioa(primed).ok) return {"vacuous", "replacement family incompatible"};
    Sioa comp = compose_sioa(comps);
    Sioa comp2 = compose_sioa(primed);
    // pasted witness in the primed composition takes at most n*d transitions
    Depth slack = d * comps.size();
    TraceMatcher matcher(comp2);
    for (const auto& t : enumerate_traces(comp, d))
        if (!matcher.trace(t, slack))
            return {"fail", "composite trace " + trace_text(t) + " lost after substitution"};
    return {"pass", ""};
}

inline TheoremOutcome hiding_mono(const Sioa& m, const Sioa& variant, const HideSet& sigma,
                                  Depth d) {
    auto hyp = trace_inclusion(m, variant, d, false);
    if (!hyp.holds) return {"vacuous", "inclusion hypothesis fails: " + hyp.witness};
    auto got = trace_inclusion(hide_sioa(m, sigma), hide_sioa(variant, sigma), d, false);
    if (!got.holds) return {"fail", "hiding broke inclusion at " + got.witness};
    return {"pass", ""};
}

inline TheoremOutcome renaming_mono(const Sioa& m, const Sioa& variant, const Renaming& rho,
                                    Depth d) {
    auto hyp = trace_inclusion(m, variant, d, false);
    if (!hyp.holds) return {"vacuous", "inclusion hypothesis fails: " + hyp.witness};
    auto got = trace_inclusion(rename_sioa(m, rho), rename_sioa(variant, rho), d, false);
    if (!got.holds) return {"fail", "renaming broke inclusion at " + got.witness};
    return {"pass", ""};
}

inline TheoremOutcome congruence(const std::vector<Sioa>& comps, std::size_t k,
                                 const Sioa& equivalent, Depth d) {
    auto fwd = trace_inclusion(comps[k], equivalent, d, false);
    auto bwd = trace_inclusion(equivalent, comps[k], d, false);
    if (!fwd.holds || !bwd.holds) return {"vacuous", "components are not trace equivalent"};
    std::vector<Sioa> primed = comps;
    primed[k] = equivalent;
    if (!compatible_sioa(primed).ok) return {"vacuous", "replacement family incompatible"};
    Sioa comp = compose_sioa(comps);
    Sioa comp2 = compose_sioa(primed);
    // the replacement is trace-equivalent with lockstep witnesses, so the
    // composite sets must agree at the same depth
    auto left = enumerate_traces(comp, d);
    auto right = enumerate_traces(comp2, d);
    if (left != right) {
        for (const auto& t : left)
            if (!right.count(t))
                return {"fail", "trace " + trace_text(t) + " missing in substituted composition"};
        for (const auto& t : right)
            if (!left.count(t))
                return {"fail", "trace " + trace_text(t) + " missing in original composition"};
    }
    return {"pass", ""};
}

}  // namespace oracle

/// Bounded creation monotonicity over configuration automata: assumptions are
/// checked first; Y gets `slack` times the depth to absorb extra internal
/// moves of B, and exhaustion of the slack is inconclusive rather than a
/// refutation.
inline TheoremOutcome check_creation_mono(const Registry& reg, const ConfigAutomaton& x,
                                          const ConfigAutomaton& y, const std::string& a,
                                          const std::string& b, Depth d, std::size_t slack = 3) {
    auto checks = check_lemma_assumptions(reg, x, y, a, b, d * slack);
    for (const auto& c : checks)
        if (!c.ok)
            return {"vacuous",
                    "assumption " + std::to_string(c.number) + " violated: " + c.detail};
    TraceMatcher matcher(y.underlying);
    for (const auto& t : enumerate_traces(x.underlying, d)) {
        if (matcher.trace(t, d)) continue;
        if (matcher.trace(t, d * slack)) continue;
        return {"inconclusive",
                "trace " + trace_text(t) + " not matched within slack depth " +
                    std::to_string(d * slack)};
    }
    return {"pass", ""};
}

/// Random instance of a theorem check; the instance is derived from the seed.
inline TheoremOutcome check_theorem_random(TheoremId id, std::uint64_t seed, Depth d) {
    RandomFamily fam = random_family(seed);
    for (const auto& c : fam.components) {
        auto rep = validate_sioa(c);
        if (!rep.ok) return {"fail", "generator produced invalid SIOA: " + rep.text()};
    }
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
    std::size_t k = rng() % fam.components.size();

    switch (id) {
        case TheoremId::Projection:
            return oracle::projection(fam.components, d);
        case TheoremId::Pasting:
            return oracle::pasting(fam.components, d);
        case TheoremId::FiniteTracePasting: {
            std::vector<Sioa> variants;
            for (std::size_t i = 0; i < fam.components.size(); ++i)
                variants.push_back(
                    superset_variant(fam.components[i], fam.owned[i], fam.pool, seed + i));
            if (!compatible_sioa(variants).ok) variants = fam.components;
            return oracle::finite_trace_pasting(fam.components, variants, d);
        }
        case TheoremId::Substitutivity: {
            Sioa repl = superset_variant(fam.components[k], fam.owned[k], fam.pool, seed + 101);
            return oracle::substitutivity(fam.components, k, repl, d);
        }
        case TheoremId::HidingMono: {
            Sioa variant = superset_variant(fam.components[k], fam.owned[k], fam.pool, seed + 7);
            HideSet sigma;
            for (const auto& a : fam.pool)
                if (rng() % 2) sigma.insert(a);
            return oracle::hiding_mono(fam.components[k], variant, sigma, d);
        }
        case TheoremId::RenamingMono: {
            Sioa variant = superset_variant(fam.components[k], fam.owned[k], fam.pool, seed + 13);
            Renaming rho;
            ActionSet all = set_union(fam.components[k].acts(), variant.acts());
            for (const auto& a : all) rho.map[a] = "r_" + a;
            return oracle::renaming_mono(fam.components[k], variant, rho, d);
        }
        case TheoremId::Congruence:
            return oracle::congruence(fam.components, k, iso_variant(fam.components[k]), d);
        case TheoremId::CreationMono:
            return {"vacuous", "creation-mono runs on configuration-automaton bundles"};
    }
    return {"fail", "unknown theorem"};
}

}  // namespace dioa

#endif
