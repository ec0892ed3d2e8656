#ifndef DIOA_CONFIG_HPP
#define DIOA_CONFIG_HPP

#include "dioa/algebra.hpp"
#include "dioa/core.hpp"

namespace dioa {

/// Registry of SIOA definitions keyed by automaton id.  Created instances are
/// the registered automata themselves; the model assumes unique identifiers.
struct Registry {
    std::map<std::string, Sioa> autos;
    std::map<std::string, std::map<State, std::vector<Step>>> step_index;

    const Sioa& at(const std::string& id) const {
        auto it = autos.find(id);
        if (it == autos.end()) throw Error("registry: unknown automaton id '" + id + "'");
        return it->second;
    }
    bool has(const std::string& id) const { return autos.count(id) != 0; }

    void add(Sioa a) {
        if (autos.count(a.id)) throw Error("registry: duplicate automaton id '" + a.id + "'");
        auto& idx = step_index[a.id];
        for (const auto& st : a.steps) idx[st.src].push_back(st);
        autos.emplace(a.id, std::move(a));
    }

    const std::vector<Step>& steps_from(const std::string& id, const State& s) const {
        static const std::vector<Step> none;
        auto it = step_index.find(id);
        if (it == step_index.end()) return none;
        auto jt = it->second.find(s);
        return jt == it->second.end() ? none : jt->second;
    }
};

/// Finite set of alive SIOA with their current local states.
struct Configuration {
    std::map<std::string, State> members;  // automaton id -> local state

    bool alive(const std::string& id) const { return members.count(id) != 0; }
    const State& state_of(const std::string& id) const {
        auto it = members.find(id);
        if (it == members.end()) throw Error("configuration: '" + id + "' is not a member");
        return it->second;
    }

    bool operator==(const Configuration& o) const { return members == o.members; }
    bool operator!=(const Configuration& o) const { return members != o.members; }
    bool operator<(const Configuration& o) const { return members < o.members; }

    /// Canonical form `[id@state, id@state]`, sorted by id.
    std::string text() const {
        std::string out = "[";
        bool first = true;
        for (const auto& [id, s] : members) {
            if (!first) out += ", ";
            out += id + "@" + s;
            first = false;
        }
        return out + "]";
    }
};

using CreateSet = std::set<std::string>;

inline void check_members(const Registry& reg, const Configuration& c) {
    for (const auto& [id, s] : c.members) {
        const auto& a = reg.at(id);
        if (!a.has_state(s)) throw Error("configuration: " + id + " has no state '" + s + "'");
    }
}

/// Pairwise I/O automaton compatibility over the members.
inline bool config_compatible(const Registry& reg, const Configuration& c,
                              std::string* why = nullptr) {
    check_members(reg, c);
    for (const auto& [ida, sa] : c.members) {
        for (const auto& [idb, sb] : c.members) {
            if (ida == idb) continue;
            const auto& ga = reg.at(ida).signature(sa);
            const auto& gb = reg.at(idb).signature(sb);
            if (!disjoint(ga.acts(), gb.internal)) {
                if (why) *why = "internal actions of " + idb + " intersect actions of " + ida;
                return false;
            }
            if (ida < idb && !disjoint(ga.output, gb.output)) {
                if (why) *why = ida + " and " + idb + " share outputs";
                return false;
            }
        }
    }
    return true;
}

/// Intrinsic signature of a compatible configuration:
/// out = U out_A, in = (U in_A) - out, int = U int_A.
inline Signature intrinsic_signature(const Registry& reg, const Configuration& c) {
    std::string why;
    if (!config_compatible(reg, c, &why))
        throw Error("intrinsic_signature: incompatible configuration " + c.text() + ": " + why);
    Signature r;
    for (const auto& [id, s] : c.members) {
        const auto& g = reg.at(id).signature(s);
        r.input = set_union(r.input, g.input);
        r.output = set_union(r.output, g.output);
        r.internal = set_union(r.internal, g.internal);
    }
    r.input = set_minus(r.input, r.output);
    return r;
}

inline ExtSignature intrinsic_ext(const Registry& reg, const Configuration& c) {
    return intrinsic_signature(reg, c).ext();
}

/// Drops members whose full signature is empty; self-destruction happens by
/// moving to such a state.
inline Configuration reduce_config(const Registry& reg, const Configuration& c) {
    check_members(reg, c);
    Configuration r;
    for (const auto& [id, s] : c.members)
        if (!reg.at(id).signature(s).empty()) r.members[id] = s;
    return r;
}

inline bool is_reduced_config(const Registry& reg, const Configuration& c) {
    return reduce_config(reg, c) == c;
}

/// All reduced compatible configurations D with C --a,phi--> D.  Each newly
/// created id starts in some start state and each existing member with the
/// action in its signature takes some step; every combination is enumerated
/// and candidates whose intermediate configuration is incompatible are
/// dropped (the definition quantifies existentially over compatible
/// intermediate configurations).
inline std::set<Configuration> intrinsic_successors(const Registry& reg, const Configuration& c,
                                                    const Action& a, const CreateSet& phi) {
    std::set<Configuration> out;
    std::string why;
    if (!config_compatible(reg, c, &why))
        throw Error("intrinsic_successors: incompatible source configuration: " + why);
    if (!is_reduced_config(reg, c))
        throw Error("intrinsic_successors: source configuration is not reduced");
    for (const auto& id : phi) reg.at(id);  // resolvable

    if (c.members.empty()) return out;  // an empty configuration has no transitions
    ActionSet sig_acts = intrinsic_signature(reg, c).acts();
    if (!sig_acts.count(a)) return out;

    // choice lists: per member either its a-steps or its unchanged state, and
    // per created id the start states
    std::vector<std::string> ids;
    std::vector<std::vector<State>> choices;
    for (const auto& [id, s] : c.members) {
        ids.push_back(id);
        const auto& aut = reg.at(id);
        std::vector<State> targets;
        if (aut.signature(s).acts().count(a)) {
            for (const auto& st : reg.steps_from(id, s))
                if (st.action == a) targets.push_back(st.dst);
            if (targets.empty()) return out;  // participant cannot move
        } else {
            targets.push_back(s);
        }
        choices.push_back(std::move(targets));
    }
    for (const auto& id : phi) {
        if (c.alive(id)) continue;  // already-alive ids in phi have no effect
        ids.push_back(id);
        const auto& aut = reg.at(id);
        choices.emplace_back(aut.starts.begin(), aut.starts.end());
    }

    std::vector<std::size_t> pick(ids.size(), 0);
    while (true) {
        Configuration inter;
        for (std::size_t i = 0; i < ids.size(); ++i) inter.members[ids[i]] = choices[i][pick[i]];
        if (config_compatible(reg, inter)) out.insert(reduce_config(reg, inter));
        std::size_t k = ids.size();
        bool done = true;
        while (k > 0) {
            --k;
            if (++pick[k] < choices[k].size()) { done = false; break; }
            pick[k] = 0;
        }
        if (done) break;
    }
    return out;
}

/// Destruction determinism: from one state on one action, either every target
/// has an empty signature or none does.  The creation analysis requires this
/// form; the loader warns otherwise.
inline bool destruction_deterministic(const Sioa& a, std::string* why = nullptr) {
    std::map<std::pair<State, Action>, std::pair<bool, bool>> seen;  // (empty?, nonempty?)
    for (const auto& st : a.steps) {
        bool empty = a.signature(st.dst).empty();
        auto& flags = seen[{st.src, st.action}];
        (empty ? flags.first : flags.second) = true;
    }
    for (const auto& [key, flags] : seen) {
        if (flags.first && flags.second) {
            if (why)
                *why = a.id + ": action " + key.second + " from " + key.first +
                       " has both destroying and non-destroying targets";
            return false;
        }
    }
    return true;
}

}  // namespace dioa

#endif
