#ifndef DIOA_ALGEBRA_HPP
#define DIOA_ALGEBRA_HPP

#include <functional>
#include <optional>

#include "dioa/core.hpp"

namespace dioa {

/// Injective action renaming.
struct Renaming {
    std::map<Action, Action> map;

    bool injective() const {
        ActionSet images;
        for (const auto& [k, v] : map) {
            (void)k;
            if (!images.insert(v).second) return false;
        }
        return true;
    }

    bool covers(const ActionSet& acts) const {
        for (const auto& a : acts)
            if (!map.count(a)) return false;
        return true;
    }

    Action operator()(const Action& a) const {
        auto it = map.find(a);
        if (it == map.end()) throw Error("renaming does not cover action '" + a + "'");
        return it->second;
    }

    ActionSet operator()(const ActionSet& s) const {
        ActionSet r;
        for (const auto& a : s) r.insert((*this)(a));
        return r;
    }

    static Renaming identity_for(const ActionSet& acts) {
        Renaming r;
        for (const auto& a : acts) r.map[a] = a;
        return r;
    }
};

using HideSet = ActionSet;

/// Compatibility of a list of signatures: no shared outputs, and nothing
/// intersects another signature's internal actions.  Duplicates in the list
/// are checked pairwise by position, matching composition of distinct SIOA.
inline bool compatible_signatures(const std::vector<Signature>& sigs, std::string* why = nullptr) {
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        for (std::size_t j = 0; j < sigs.size(); ++j) {
            if (i == j) continue;
            if (!disjoint(sigs[i].acts(), sigs[j].internal)) {
                if (why)
                    *why = "internal actions of signature " + std::to_string(j) +
                           " intersect signature " + std::to_string(i);
                return false;
            }
            if (j > i && !disjoint(sigs[i].output, sigs[j].output)) {
                if (why)
                    *why = "signatures " + std::to_string(i) + " and " + std::to_string(j) +
                           " share outputs";
                return false;
            }
        }
    }
    return true;
}

/// in = (U in_i) - (U out_i), out = U out_i, int = U int_i.
inline Signature compose_signatures(const std::vector<Signature>& sigs) {
    std::string why;
    if (!compatible_signatures(sigs, &why)) throw Error("incompatible signatures: " + why);
    Signature r;
    for (const auto& g : sigs) {
        r.input = set_union(r.input, g.input);
        r.output = set_union(r.output, g.output);
        r.internal = set_union(r.internal, g.internal);
    }
    r.input = set_minus(r.input, r.output);
    return r;
}

inline ExtSignature compose_ext(const std::vector<ExtSignature>& sigs) {
    ExtSignature r;
    for (const auto& g : sigs) {
        r.input = set_union(r.input, g.input);
        r.output = set_union(r.output, g.output);
    }
    r.input = set_minus(r.input, r.output);
    return r;
}

struct CompatReport {
    bool ok = true;
    std::vector<State> witness;  // one state per component when !ok
    std::string why;
};

/// Conservative SIOA compatibility: signature compatibility must hold for
/// every tuple in the full Cartesian product of state sets.
inline CompatReport compatible_sioa(const std::vector<Sioa>& autos) {
    CompatReport rep;
    if (autos.empty()) return rep;
    std::vector<std::vector<State>> state_lists;
    for (const auto& a : autos)
        state_lists.emplace_back(a.states.begin(), a.states.end());
    std::vector<std::size_t> idx(autos.size(), 0);
    while (true) {
        std::vector<Signature> sigs;
        for (std::size_t i = 0; i < autos.size(); ++i)
            sigs.push_back(autos[i].signature(state_lists[i][idx[i]]));
        std::string why;
        if (!compatible_signatures(sigs, &why)) {
            rep.ok = false;
            rep.why = why;
            for (std::size_t i = 0; i < autos.size(); ++i)
                rep.witness.push_back(state_lists[i][idx[i]]);
            return rep;
        }
        std::size_t k = autos.size();
        while (k > 0) {
            --k;
            if (++idx[k] < state_lists[k].size()) break;
            idx[k] = 0;
            if (k == 0) return rep;
        }
    }
}

/// Parallel composition: product states, product starts, composed per-state
/// signatures, and synchronization of every component that has the action in
/// its current signature.
inline Sioa compose_sioa(const std::vector<Sioa>& autos) {
    if (autos.empty()) throw Error("compose_sioa: empty component list");
    auto compat = compatible_sioa(autos);
    if (!compat.ok)
        throw Error("incompatible SIOA at state tuple " + make_tuple_id(compat.witness) + ": " +
                    compat.why);

    const std::size_t n = autos.size();
    Sioa out;
    {
        std::vector<std::string> ids;
        for (const auto& a : autos) ids.push_back(a.id);
        out.id = "(" + join(ids, "||") + ")";
    }

    std::vector<std::vector<State>> state_lists;
    for (const auto& a : autos)
        state_lists.emplace_back(a.states.begin(), a.states.end());

    // Full product of states with composed signatures.
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        std::vector<State> tuple;
        std::vector<Signature> sigs;
        for (std::size_t i = 0; i < n; ++i) {
            tuple.push_back(state_lists[i][idx[i]]);
            sigs.push_back(autos[i].signature(tuple.back()));
        }
        State comp = make_tuple_id(tuple);
        out.states.insert(comp);
        out.sig[comp] = compose_signatures(sigs);

        // transitions out of this tuple: synchronize on each action in the
        // union signature
        ActionSet acts;
        for (const auto& g : sigs) acts = set_union(acts, g.acts());
        for (const auto& a : acts) {
            std::vector<std::vector<State>> choices(n);
            bool possible = true;
            for (std::size_t i = 0; i < n; ++i) {
                if (sigs[i].acts().count(a)) {
                    for (const auto& st : autos[i].steps)
                        if (st.src == tuple[i] && st.action == a) choices[i].push_back(st.dst);
                    if (choices[i].empty()) { possible = false; break; }
                } else {
                    choices[i].push_back(tuple[i]);
                }
            }
            if (!possible) continue;
            std::vector<std::size_t> pick(n, 0);
            while (true) {
                std::vector<State> target;
                for (std::size_t i = 0; i < n; ++i) target.push_back(choices[i][pick[i]]);
                out.steps.insert({comp, a, make_tuple_id(target)});
                std::size_t k = n;
                bool done = true;
                while (k > 0) {
                    --k;
                    if (++pick[k] < choices[k].size()) { done = false; break; }
                    pick[k] = 0;
                }
                if (done) break;
            }
        }

        std::size_t k = n;
        bool done = true;
        while (k > 0) {
            --k;
            if (++idx[k] < state_lists[k].size()) { done = false; break; }
            idx[k] = 0;
        }
        if (done) break;
    }

    std::vector<std::vector<State>> start_lists;
    for (const auto& a : autos)
        start_lists.emplace_back(a.starts.begin(), a.starts.end());
    std::vector<std::size_t> sidx(n, 0);
    while (true) {
        std::vector<State> tuple;
        for (std::size_t i = 0; i < n; ++i) tuple.push_back(start_lists[i][sidx[i]]);
        out.starts.insert(make_tuple_id(tuple));
        std::size_t k = n;
        bool done = true;
        while (k > 0) {
            --k;
            if (++sidx[k] < start_lists[k].size()) { done = false; break; }
            sidx[k] = 0;
        }
        if (done) break;
    }
    return out;
}

/// Action hiding: moves hidden outputs into the internal set, per state.
/// Actions in `sigma` that are not outputs anywhere are ignored.
inline Sioa hide_sioa(const Sioa& a, const HideSet& sigma, std::string new_id = "") {
    Sioa r = a;
    r.id = new_id.empty() ? a.id + "#hide" : std::move(new_id);
    for (auto& [s, g] : r.sig) {
        (void)s;
        ActionSet hidden = set_intersect(g.output, sigma);
        g.output = set_minus(g.output, sigma);
        g.internal = set_union(g.internal, hidden);
    }
    return r;
}

/// Injective renaming applied to signatures and step labels.
inline Sioa rename_sioa(const Sioa& a, const Renaming& rho, std::string new_id = "") {
    if (!rho.injective()) throw Error("rename_sioa: mapping is not injective");
    if (!rho.covers(a.acts()))
        throw Error("rename_sioa: mapping does not cover acts(" + a.id + ")");
    Sioa r;
    r.id = new_id.empty() ? a.id + "#ren" : std::move(new_id);
    r.states = a.states;
    r.starts = a.starts;
    for (const auto& [s, g] : a.sig)
        r.sig[s] = Signature{rho(g.input), rho(g.output), rho(g.internal)};
    for (const auto& st : a.steps) r.steps.insert({st.src, rho(st.action), st.dst});
    return r;
}

}  // namespace dioa

#endif
