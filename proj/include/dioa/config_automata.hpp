#ifndef DIOA_CONFIG_AUTOMATA_HPP
#define DIOA_CONFIG_AUTOMATA_HPP

#include <deque>

#include "dioa/config.hpp"

namespace dioa {

/// One creation rule: fires when the configuration's member-id set equals
/// `members`, every constrained member is in its required state, and the
/// action matches.
struct CreationRule {
    std::set<std::string> members;
    std::map<std::string, State> state_constraints;
    Action action;
    CreateSet create;

    bool matches(const Configuration& c, const Action& a) const {
        if (a != action) return false;
        std::set<std::string> ids;
        for (const auto& [id, s] : c.members) {
            (void)s;
            ids.insert(id);
        }
        if (ids != members) return false;
        for (const auto& [id, s] : state_constraints)
            if (!c.alive(id) || c.state_of(id) != s) return false;
        return true;
    }
};

/// created(x)(a) as a function of the configuration: first matching rule
/// wins, default is the empty create set.
struct CreationPolicy {
    std::vector<CreationRule> rules;

    CreateSet lookup(const Configuration& c, const Action& a) const {
        for (const auto& r : rules)
            if (r.matches(c, a)) return r.create;
        return {};
    }
};

/// Configuration automaton: an SIOA together with a configuration mapping and
/// per-state created mapping.  States first discovered at the exploration
/// depth limit are tagged as frontier; completeness is only meaningful away
/// from them.
struct ConfigAutomaton {
    std::string name;
    Sioa underlying;
    std::map<State, Configuration> config_map;
    std::map<State, std::map<Action, CreateSet>> created_map;
    std::set<State> frontier;

    const Configuration& config(const State& x) const {
        auto it = config_map.find(x);
        if (it == config_map.end()) throw Error(name + ": no configuration for state " + x);
        return it->second;
    }

    CreateSet created(const State& x, const Action& a) const {
        auto it = created_map.find(x);
        if (it == created_map.end()) return {};
        auto jt = it->second.find(a);
        return jt == it->second.end() ? CreateSet{} : jt->second;
    }
};

/// Canonical generation: breadth-first closure of the intrinsic transition
/// relation from the initial configurations, one CA state per distinct
/// reduced configuration, state signature equal to the intrinsic signature.
inline ConfigAutomaton generate_ca(const Registry& reg,
                                   const std::vector<Configuration>& initial,
                                   const CreationPolicy& policy, std::size_t depth,
                                   std::string name = "ca") {
    for (const auto& r : policy.rules)
        for (const auto& id : r.create) reg.at(id);

    ConfigAutomaton x;
    x.name = std::move(name);
    x.underlying.id = x.name;

    auto state_id = [](const Configuration& c) { return c.text(); };

    std::deque<std::pair<Configuration, std::size_t>> queue;
    for (const auto& c : initial) {
        std::string why;
        if (!config_compatible(reg, c, &why))
            throw Error("generate_ca: initial configuration incompatible: " + why);
        if (!is_reduced_config(reg, c))
            throw Error("generate_ca: initial configuration not reduced: " + c.text());
        for (const auto& [id, s] : c.members)
            if (!reg.at(id).starts.count(s))
                throw Error("generate_ca: initial member " + id + " not in a start state");
        State sid = state_id(c);
        x.underlying.starts.insert(sid);
        if (x.config_map.emplace(sid, c).second) {
            x.underlying.states.insert(sid);
            queue.push_back({c, 0});
        }
    }

    while (!queue.empty()) {
        auto [c, layer] = queue.front();
        queue.pop_front();
        State sid = state_id(c);
        Signature isig = c.members.empty() ? Signature{} : intrinsic_signature(reg, c);
        x.underlying.sig[sid] = isig;
        auto& created_here = x.created_map[sid];
        if (layer >= depth && !isig.acts().empty()) {
            // unexpanded: record as frontier unless it has no transitions anyway
            x.frontier.insert(sid);
            for (const auto& a : isig.acts()) created_here[a] = policy.lookup(c, a);
            continue;
        }
        for (const auto& a : isig.acts()) {
            CreateSet phi = policy.lookup(c, a);
            created_here[a] = phi;
            for (const auto& d : intrinsic_successors(reg, c, a, phi)) {
                State did = state_id(d);
                if (x.config_map.emplace(did, d).second) {
                    x.underlying.states.insert(did);
                    queue.push_back({d, layer + 1});
                }
                x.underlying.steps.insert({sid, a, did});
            }
        }
    }
    return x;
}

/// Checks Definition CA constraints 1-4 plus well-formedness of the
/// underlying SIOA.  Input enabling and completeness are not required of
/// frontier states.
inline ValidationReport validate_ca(const Registry& reg, const ConfigAutomaton& x) {
    ValidationReport r;
    const Sioa& u = x.underlying;

    // underlying SIOA constraints, with input enabling relaxed on the frontier
    ValidationReport base = validate_sioa(u);
    for (const auto& v : base.violations)
        if (v.tag != "C2") r.add(v.tag, v.where, v.message);
    for (const auto& s : u.states) {
        if (x.frontier.count(s) || !u.sig.count(s)) continue;
        for (const auto& in : u.signature(s).input) {
            bool enabled = false;
            for (const auto& st : u.steps)
                if (st.src == s && st.action == in) { enabled = true; break; }
            if (!enabled) r.add("C2", "(" + s + "," + in + ")", "input action has no step");
        }
    }

    for (const auto& s : u.states) {
        if (!x.config_map.count(s)) {
            r.add("STRUCT", s, "state has no configuration");
            continue;
        }
        const auto& c = x.config(s);
        std::string why;
        if (!config_compatible(reg, c, &why)) r.add("STRUCT", s, "incompatible configuration: " + why);
        if (!is_reduced_config(reg, c)) r.add("STRUCT", s, "configuration not reduced");
    }
    if (!r.ok) return r;

    // constraint 1: start configurations sit at member start states
    for (const auto& s : u.starts)
        for (const auto& [id, ms] : x.config(s).members)
            if (!reg.at(id).starts.count(ms))
                r.add("CA1", s, "member " + id + " not in a start state");

    // constraint 2: soundness of every step
    for (const auto& st : u.steps) {
        auto succs = intrinsic_successors(reg, x.config(st.src), st.action,
                                          x.created(st.src, st.action));
        if (!succs.count(x.config(st.dst)))
            r.add("CA2", step_text(st), "step is not an intrinsic transition");
    }

    // constraint 3: completeness away from the frontier
    for (const auto& s : u.states) {
        if (x.frontier.count(s)) continue;
        const auto& c = x.config(s);
        if (c.members.empty()) continue;
        for (const auto& a : intrinsic_signature(reg, c).acts()) {
            for (const auto& d : intrinsic_successors(reg, c, a, x.created(s, a))) {
                bool found = false;
                for (const auto& st : u.steps)
                    if (st.src == s && st.action == a && x.config(st.dst) == d) {
                        found = true;
                        break;
                    }
                if (!found)
                    r.add("CA3", s, "missing intrinsic transition on " + a + " to " + d.text());
            }
        }
    }

    // constraint 4: state signature vs intrinsic signature
    for (const auto& s : u.states) {
        const auto& c = x.config(s);
        Signature isig = c.members.empty() ? Signature{} : intrinsic_signature(reg, c);
        const auto& g = u.signature(s);
        auto sub = [](const ActionSet& a, const ActionSet& b) {
            return std::includes(b.begin(), b.end(), a.begin(), a.end());
        };
        if (!sub(g.output, isig.output)) r.add("CA4a", s, "state outputs exceed configuration outputs");
        if (g.input != isig.input) r.add("CA4b", s, "state inputs differ from configuration inputs");
        if (!sub(isig.internal, g.internal))
            r.add("CA4c", s, "state internals miss configuration internals");
        if (set_union(g.output, g.internal) != set_union(isig.output, isig.internal))
            r.add("CA4d", s, "output+internal differ between state and configuration");
    }
    return r;
}

struct CaCompatReport {
    bool ok = true;
    int clause = 0;
    std::vector<State> witness;
    std::string why;
};

/// Compatibility of configuration automata over all state tuples: disjoint
/// member ids, reduced compatible union, compatible state signatures, and
/// disjoint create sets on shared actions.
inline CaCompatReport compatible_ca(const Registry& reg, const std::vector<ConfigAutomaton>& cas) {
    CaCompatReport rep;
    std::vector<std::vector<State>> lists;
    for (const auto& x : cas)
        lists.emplace_back(x.underlying.states.begin(), x.underlying.states.end());
    std::vector<std::size_t> idx(cas.size(), 0);
    if (cas.empty()) return rep;
    while (true) {
        std::vector<State> tuple;
        for (std::size_t i = 0; i < cas.size(); ++i) tuple.push_back(lists[i][idx[i]]);

        auto fail = [&](int clause, const std::string& why) {
            rep.ok = false;
            rep.clause = clause;
            rep.witness = tuple;
            rep.why = why;
        };

        Configuration uni;
        for (std::size_t i = 0; i < cas.size() && rep.ok; ++i) {
            for (const auto& [id, s] : cas[i].config(tuple[i]).members) {
                if (uni.members.count(id)) {
                    fail(1, "member " + id + " appears in two components");
                    break;
                }
                uni.members[id] = s;
            }
        }
        if (rep.ok) {
            std::string why;
            if (!config_compatible(reg, uni, &why)) fail(2, why);
            else if (!is_reduced_config(reg, uni)) fail(2, "union configuration not reduced");
        }
        if (rep.ok) {
            std::vector<Signature> sigs;
            for (std::size_t i = 0; i < cas.size(); ++i)
                sigs.push_back(cas[i].underlying.signature(tuple[i]));
            std::string why;
            if (!compatible_signatures(sigs, &why)) fail(3, why);
        }
        if (rep.ok) {
            for (std::size_t i = 0; i < cas.size() && rep.ok; ++i) {
                for (std::size_t j = i + 1; j < cas.size() && rep.ok; ++j) {
                    ActionSet shared =
                        set_intersect(cas[i].underlying.signature(tuple[i]).acts(),
                                      cas[j].underlying.signature(tuple[j]).acts());
                    for (const auto& a : shared) {
                        CreateSet ci = cas[i].created(tuple[i], a);
                        CreateSet cj = cas[j].created(tuple[j], a);
                        for (const auto& id : ci)
                            if (cj.count(id)) {
                                fail(4, "create sets for " + a + " share " + id);
                                break;
                            }
                        if (!rep.ok) break;
                    }
                }
            }
        }
        if (!rep.ok) return rep;

        std::size_t k = cas.size();
        bool done = true;
        while (k > 0) {
            --k;
            if (++idx[k] < lists[k].size()) { done = false; break; }
            idx[k] = 0;
        }
        if (done) break;
    }
    return rep;
}

/// Composition of configuration automata: composed underlying SIOA,
/// member-disjoint union of configurations, and unioned create sets.
inline ConfigAutomaton compose_ca(const Registry& reg, const std::vector<ConfigAutomaton>& cas) {
    if (cas.empty()) throw Error("compose_ca: empty component list");
    auto compat = compatible_ca(reg, cas);
    if (!compat.ok)
        throw Error("incompatible configuration automata (clause " + std::to_string(compat.clause) +
                    ") at " + make_tuple_id(compat.witness) + ": " + compat.why);

    std::vector<Sioa> unders;
    for (const auto& x : cas) unders.push_back(x.underlying);
    ConfigAutomaton out;
    {
        std::vector<std::string> names;
        for (const auto& x : cas) names.push_back(x.name);
        out.name = "(" + join(names, "||") + ")";
    }
    out.underlying = compose_sioa(unders);
    out.underlying.id = out.name;

    for (const auto& s : out.underlying.states) {
        auto tuple = split_tuple(s);
        Configuration uni;
        bool frontier = false;
        for (std::size_t i = 0; i < cas.size(); ++i) {
            for (const auto& [id, ms] : cas[i].config(tuple[i]).members) uni.members[id] = ms;
            if (cas[i].frontier.count(tuple[i])) frontier = true;
        }
        out.config_map[s] = uni;
        if (frontier) out.frontier.insert(s);
        auto& created_here = out.created_map[s];
        for (const auto& a : out.underlying.signature(s).acts()) {
            CreateSet phi;
            for (std::size_t i = 0; i < cas.size(); ++i)
                if (cas[i].underlying.signature(tuple[i]).acts().count(a)) {
                    auto ci = cas[i].created(tuple[i], a);
                    phi.insert(ci.begin(), ci.end());
                }
            created_here[a] = phi;
        }
    }
    return out;
}

/// Hiding applies to the underlying SIOA only; the configuration and created
/// mappings are untouched.
inline ConfigAutomaton hide_ca(const ConfigAutomaton& x, const HideSet& sigma,
                               std::string name = "") {
    ConfigAutomaton out = x;
    out.name = name.empty() ? x.name + "#hide" : std::move(name);
    out.underlying = hide_sioa(x.underlying, sigma, out.name);
    return out;
}

/// Renaming a configuration automaton renames the underlying SIOA, replaces
/// every member (and created id) by its renamed automaton per `idmap`, and
/// maps created actions through rho.  Renamed member automata must exist in
/// the registry under their new ids; missing ones are registered.
inline ConfigAutomaton rename_ca(Registry& reg, const ConfigAutomaton& x, const Renaming& rho,
                                 const std::map<std::string, std::string>& idmap,
                                 std::string name = "") {
    if (!rho.injective()) throw Error("rename_ca: mapping is not injective");
    {
        std::set<std::string> images;
        for (const auto& [k, v] : idmap) {
            (void)k;
            if (!images.insert(v).second) throw Error("rename_ca: id map is not injective");
        }
    }
    auto mapped_id = [&](const std::string& id) {
        auto it = idmap.find(id);
        if (it == idmap.end()) throw Error("rename_ca: id map does not cover '" + id + "'");
        return it->second;
    };

    // collect every id that needs a renamed automaton
    std::set<std::string> member_ids;
    for (const auto& [s, c] : x.config_map) {
        (void)s;
        for (const auto& [id, ms] : c.members) {
            (void)ms;
            member_ids.insert(id);
        }
    }
    for (const auto& [s, m] : x.created_map) {
        (void)s;
        for (const auto& [a, phi] : m) {
            (void)a;
            member_ids.insert(phi.begin(), phi.end());
        }
    }
    for (const auto& id : member_ids) {
        const Sioa& orig = reg.at(id);
        if (!rho.covers(orig.acts()))
            throw Error("rename_ca: renaming does not cover acts(" + id + ")");
        std::string nid = mapped_id(id);
        Sioa renamed = rename_sioa(orig, rho, nid);
        if (reg.has(nid)) {
            if (!(reg.at(nid) == renamed))
                throw Error("rename_ca: registry already holds a different automaton '" + nid +
                            "'");
        } else {
            reg.add(renamed);
        }
    }

    ConfigAutomaton out;
    out.name = name.empty() ? x.name + "#ren" : std::move(name);
    out.underlying = rename_sioa(x.underlying, rho, out.name);
    out.frontier = x.frontier;
    for (const auto& [s, c] : x.config_map) {
        Configuration rc;
        for (const auto& [id, ms] : c.members) rc.members[mapped_id(id)] = ms;
        out.config_map[s] = rc;
    }
    for (const auto& [s, m] : x.created_map) {
        auto& dst = out.created_map[s];
        for (const auto& [a, phi] : m) {
            CreateSet rphi;
            for (const auto& id : phi) rphi.insert(mapped_id(id));
            dst[rho(a)] = rphi;
        }
    }
    return out;
}

}  // namespace dioa

#endif
