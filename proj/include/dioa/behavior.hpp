#ifndef DIOA_BEHAVIOR_HPP
#define DIOA_BEHAVIOR_HPP

#include <cassert>
#include <optional>
#include <variant>

#include "dioa/algebra.hpp"
#include "dioa/core.hpp"

namespace dioa {

/// Alternating state/action sequence.  A normal fragment ends in a state
/// (states.size() == actions.size() + 1); a terminating execution ends in
/// its final action (states.size() == actions.size()).
struct Execution {
    std::string owner;
    std::vector<State> states;
    std::vector<Action> actions;

    bool ends_in_action() const { return states.size() == actions.size(); }
    std::size_t length() const { return actions.size(); }

    Execution prefix(std::size_t i) const {
        Execution p{owner, {}, {}};
        p.states.assign(states.begin(), states.begin() + i + 1);
        p.actions.assign(actions.begin(), actions.begin() + i);
        return p;
    }

    /// The segment s^j a^{j+1} ... a^i s^i.
    Execution segment(std::size_t j, std::size_t i) const {
        Execution p{owner, {}, {}};
        p.states.assign(states.begin() + j, states.begin() + i + 1);
        p.actions.assign(actions.begin() + j, actions.begin() + i);
        return p;
    }

    bool operator==(const Execution& o) const {
        return states == o.states && actions == o.actions;
    }
    bool operator<(const Execution& o) const {
        return std::tie(states, actions) < std::tie(o.states, o.actions);
    }

    std::string text() const {
        std::string out;
        for (std::size_t i = 0; i < states.size(); ++i) {
            if (i) out += " ";
            out += states[i];
            if (i < actions.size()) out += " " + actions[i];
        }
        return out;
    }
};

inline bool is_execution_fragment(const Sioa& a, const Execution& e, std::string* why = nullptr) {
    if (e.states.empty()) {
        if (why) *why = "empty state sequence";
        return false;
    }
    if (e.states.size() != e.actions.size() && e.states.size() != e.actions.size() + 1) {
        if (why) *why = "sequence does not alternate states and actions";
        return false;
    }
    std::size_t full_steps = e.ends_in_action() ? e.actions.size() - 1 : e.actions.size();
    for (const auto& s : e.states)
        if (!a.has_state(s)) {
            if (why) *why = "unknown state " + s;
            return false;
        }
    for (std::size_t i = 0; i < full_steps; ++i) {
        if (!a.steps.count({e.states[i], e.actions[i], e.states[i + 1]})) {
            if (why)
                *why = "missing step (" + e.states[i] + "," + e.actions[i] + "," +
                       e.states[i + 1] + ")";
            return false;
        }
    }
    if (e.ends_in_action()) {
        // final action must be executable from the last state
        const auto& src = e.states.back();
        const auto& act = e.actions.back();
        bool found = false;
        for (const auto& st : a.steps)
            if (st.src == src && st.action == act) { found = true; break; }
        if (!found) {
            if (why) *why = "final action " + act + " not executable from " + src;
            return false;
        }
    }
    return true;
}

inline bool is_execution(const Sioa& a, const Execution& e, std::string* why = nullptr) {
    if (!is_execution_fragment(a, e, why)) return false;
    if (!a.starts.count(e.states.front())) {
        if (why) *why = "first state " + e.states.front() + " is not a start state";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Pretraces and traces
// ---------------------------------------------------------------------------

/// One element of a (pre)trace: an external signature or an action.
struct TraceElem {
    std::variant<ExtSignature, Action> v;

    bool is_action() const { return v.index() == 1; }
    bool is_sig() const { return v.index() == 0; }
    const Action& action() const { return std::get<Action>(v); }
    const ExtSignature& sig() const { return std::get<ExtSignature>(v); }

    static TraceElem make_sig(ExtSignature s) { return {std::move(s)}; }
    static TraceElem make_action(Action a) { return {std::move(a)}; }

    bool operator==(const TraceElem& o) const { return v == o.v; }
    bool operator!=(const TraceElem& o) const { return !(*this == o); }
    bool operator<(const TraceElem& o) const { return v < o.v; }

    std::string text() const { return is_action() ? action() : sig().text(); }
};

/// Sequence of external signatures and actions.  Valid pretraces start and
/// end with a signature and never put two actions side by side; terminating
/// traces (ending in an action) reuse the same representation.
using Pretrace = std::vector<TraceElem>;
using Trace = Pretrace;  // a trace is a pretrace with no repeated adjacent signatures

inline std::string trace_text(const Pretrace& t) {
    std::string out;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += " ";
        out += t[i].text();
    }
    return out;
}

inline bool is_valid_pretrace(const Pretrace& g, std::string* why = nullptr) {
    if (g.empty()) {
        if (why) *why = "empty sequence";
        return false;
    }
    if (!g.front().is_sig()) {
        if (why) *why = "first element is not an external signature";
        return false;
    }
    if (!g.back().is_sig()) {
        if (why) *why = "last element is not an external signature";
        return false;
    }
    for (std::size_t i = 1; i < g.size(); ++i) {
        if (g[i].is_action() && g[i - 1].is_action()) {
            if (why) *why = "two successive actions at position " + std::to_string(i);
            return false;
        }
        if (g[i].is_action() && !g[i - 1].sig().acts().count(g[i].action())) {
            if (why)
                *why = "action " + g[i].action() + " not in preceding signature at position " +
                       std::to_string(i);
            return false;
        }
    }
    return true;
}

/// r(gamma): collapse maximal blocks of identical adjacent signatures.
inline Trace reduce_pretrace(const Pretrace& g) {
    Trace r;
    for (const auto& e : g) {
        if (e.is_sig() && !r.empty() && r.back().is_sig() && r.back().sig() == e.sig()) continue;
        r.push_back(e);
    }
    return r;
}

inline bool is_reduced(const Pretrace& g) { return reduce_pretrace(g) == g; }

inline bool stutter_equiv(const Pretrace& a, const Pretrace& b) {
    return reduce_pretrace(a) == reduce_pretrace(b);
}

/// Action subsequence of a trace.
inline std::vector<Action> action_projection(const Pretrace& t) {
    std::vector<Action> r;
    for (const auto& e : t)
        if (e.is_action()) r.push_back(e.action());
    return r;
}

inline std::string action_text(const std::vector<Action>& as) {
    return as.empty() ? std::string() : join(as, " ");
}

/// trace(alpha) in A: drop internal actions, map states to external
/// signatures, collapse identical adjacent signatures.  Accepts terminating
/// executions (ending in an action); an external final action is kept.
inline Trace trace_of(const Sioa& a, const Execution& e) {
    std::string why;
    if (!is_execution_fragment(a, e, &why))
        throw Error("trace_of: not an execution fragment of " + a.id + ": " + why);
    Trace t;
    t.push_back(TraceElem::make_sig(a.signature(e.states[0]).ext()));
    std::size_t full_steps = e.ends_in_action() ? e.actions.size() - 1 : e.actions.size();
    for (std::size_t i = 0; i < full_steps; ++i) {
        const auto& src_sig = a.signature(e.states[i]);
        ExtSignature dst = a.signature(e.states[i + 1]).ext();
        if (src_sig.ext_acts().count(e.actions[i])) {
            t.push_back(TraceElem::make_action(e.actions[i]));
            t.push_back(TraceElem::make_sig(dst));
        } else if (!(t.back().sig() == dst)) {
            t.push_back(TraceElem::make_sig(dst));
        }
    }
    if (e.ends_in_action()) {
        const auto& src_sig = a.signature(e.states.back());
        if (src_sig.ext_acts().count(e.actions.back()))
            t.push_back(TraceElem::make_action(e.actions.back()));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Execution projection and pasting over compositions
// ---------------------------------------------------------------------------

struct CompositeSeq {
    std::vector<std::vector<State>> states;  // one tuple per position
    std::vector<Action> actions;
};

/// Parses an alternating sequence over composite state ids into tuples and
/// checks the projection/pasting hypotheses: states belong to the product,
/// actions to the composite signature of their source.
inline CompositeSeq parse_composite_seq(const std::vector<Sioa>& comps, const Execution& e) {
    CompositeSeq seq;
    if (e.ends_in_action()) throw Error("composite sequence must end in a state");
    for (const auto& s : e.states) {
        auto tuple = split_tuple(s);
        if (tuple.size() != comps.size())
            throw Error("state " + s + " has arity " + std::to_string(tuple.size()) +
                        ", expected " + std::to_string(comps.size()));
        for (std::size_t i = 0; i < comps.size(); ++i)
            if (!comps[i].has_state(tuple[i]))
                throw Error("state " + tuple[i] + " unknown in " + comps[i].id);
        seq.states.push_back(std::move(tuple));
    }
    seq.actions = e.actions;
    for (std::size_t j = 0; j < seq.actions.size(); ++j) {
        ActionSet acts;
        for (std::size_t i = 0; i < comps.size(); ++i)
            acts = set_union(acts, comps[i].signature(seq.states[j][i]).acts());
        if (!acts.count(seq.actions[j]))
            throw Error("action " + seq.actions[j] + " not in composite signature at position " +
                        std::to_string(j));
    }
    return seq;
}

/// alpha|A_i: keep the i-th state component and the actions A_i participates in.
inline Execution project_execution(const std::vector<Sioa>& comps, const Execution& e,
                                   std::size_t i) {
    if (i >= comps.size()) throw Error("project_execution: component index out of range");
    auto seq = parse_composite_seq(comps, e);
    Execution out{comps[i].id, {}, {}};
    out.states.push_back(seq.states[0][i]);
    for (std::size_t j = 0; j < seq.actions.size(); ++j) {
        if (comps[i].signature(seq.states[j][i]).acts().count(seq.actions[j])) {
            out.actions.push_back(seq.actions[j]);
            out.states.push_back(seq.states[j + 1][i]);
        }
    }
    return out;
}

struct PasteReport {
    bool ok = true;
    int clause = 0;           // 1 = projection, 2 = spurious change, 3 = replay
    std::size_t component = 0;
    std::size_t position = 0;
    std::string detail;
};

/// Execution pasting check: every projection is an execution of its component
/// and no component changes state on an action outside its signature.  When
/// both hold the sequence is replayed against the composition rule as a
/// self-check of the pasting theorem.
inline PasteReport paste_check(const std::vector<Sioa>& comps, const Execution& e) {
    PasteReport rep;
    auto seq = parse_composite_seq(comps, e);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        auto proj = project_execution(comps, e, i);
        std::string why;
        if (!is_execution(comps[i], proj, &why)) {
            rep.ok = false;
            rep.clause = 1;
            rep.component = i;
            rep.detail = "projection onto " + comps[i].id + " is not an execution: " + why;
            return rep;
        }
    }
    for (std::size_t j = 0; j < seq.actions.size(); ++j) {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (!comps[i].signature(seq.states[j][i]).acts().count(seq.actions[j]) &&
                seq.states[j][i] != seq.states[j + 1][i]) {
                rep.ok = false;
                rep.clause = 2;
                rep.component = i;
                rep.position = j;
                rep.detail = comps[i].id + " changes state on " + seq.actions[j] +
                             " outside its signature at position " + std::to_string(j);
                return rep;
            }
        }
    }
    // replay: the pasting theorem promises this never fails once the two
    // hypotheses hold
    for (std::size_t j = 0; j < seq.actions.size(); ++j) {
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (comps[i].signature(seq.states[j][i]).acts().count(seq.actions[j])) {
                if (!comps[i].steps.count(
                        {seq.states[j][i], seq.actions[j], seq.states[j + 1][i]})) {
                    rep.ok = false;
                    rep.clause = 3;
                    rep.component = i;
                    rep.position = j;
                    rep.detail = "replay failed: no step in " + comps[i].id;
                    return rep;
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// zips / zip
// ---------------------------------------------------------------------------

struct ZipsReport {
    bool ok = true;
    int clause = 0;
    std::size_t position = 0;
    std::string detail;
};

/// Literal evaluation of the four zips clauses on explicit pretraces.
/// References past the final index are treated as vacuously satisfied.
inline ZipsReport zips_check(const Pretrace& g, const std::vector<Pretrace>& parts) {
    ZipsReport rep;
    auto fail = [&](int clause, std::size_t pos, std::string detail) {
        rep.ok = false;
        rep.clause = clause;
        rep.position = pos;
        rep.detail = std::move(detail);
        return rep;
    };
    if (parts.empty()) return fail(1, 0, "no component pretraces");
    for (const auto& p : parts)
        if (p.size() != g.size()) return fail(1, 0, "length mismatch");

    const std::size_t n = parts.size();
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (g[i].is_action()) {
            const Action& a = g[i].action();
            std::vector<std::size_t> phi;
            for (std::size_t k = 0; k < n; ++k)
                if (parts[k][i].is_action() && parts[k][i].action() == a) phi.push_back(k);
            if (phi.empty()) return fail(2, i, "no participant for action " + a);
            for (std::size_t l = 0; l < n; ++l) {
                if (std::find(phi.begin(), phi.end(), l) != phi.end()) continue;
                if (!parts[l][i].is_sig())
                    return fail(2, i, "non-participant holds a different action");
                const auto& sig = parts[l][i].sig();
                if (i == 0 || parts[l][i - 1] != parts[l][i])
                    return fail(2, i, "non-participant signature changes before action");
                if (i + 1 < parts[l].size() && parts[l][i + 1] != parts[l][i])
                    return fail(2, i, "non-participant signature changes after action");
                if (sig.acts().count(a))
                    return fail(2, i, "action " + a + " in non-participant signature");
            }
        } else {
            std::vector<ExtSignature> sigs;
            for (std::size_t j = 0; j < n; ++j) {
                if (!parts[j][i].is_sig())
                    return fail(3, i, "component holds an action at a signature position");
                sigs.push_back(parts[j][i].sig());
            }
            if (!(compose_ext(sigs) == g[i].sig()))
                return fail(3, i, "signature is not the product of component signatures");
        }
        if (i > 0 && g[i].is_sig() && g[i - 1].is_sig()) {
            std::size_t movers = 0;
            for (std::size_t l = 0; l < n; ++l)
                if (parts[l][i - 1] != parts[l][i]) ++movers;
            if (movers > 1)
                return fail(4, i, "more than one component moves between adjacent signatures");
        }
    }
    return rep;
}

namespace detail {

/// Block view of a reduced trace: the signatures in order, and between each
/// adjacent pair either the connecting action or nothing (a signature change
/// caused by an internal move).
struct TraceBlocks {
    std::vector<ExtSignature> sigs;
    std::vector<std::optional<Action>> links;

    static TraceBlocks of(const Trace& t) {
        TraceBlocks b;
        std::optional<Action> pending;
        for (const auto& e : t) {
            if (e.is_action()) {
                pending = e.action();
            } else {
                if (!b.sigs.empty()) b.links.push_back(pending);
                pending.reset();
                b.sigs.push_back(e.sig());
            }
        }
        return b;
    }
};

}  // namespace detail

/// zip(beta, beta_1..beta_n): do the component traces interleave into beta,
/// allowing stuttering insertions?  Decided by a memoized cursor search: each
/// sequence carries a cursor over its signature blocks; an action advances the
/// composite cursor together with exactly the components whose next element is
/// that action, and an internal signature change advances one component,
/// advancing the composite only when the signature product changes.  Any zips
/// witness can be normalized into such an alignment, so the search is
/// complete for finite traces.
inline bool zip_check(const Trace& beta, const std::vector<Trace>& parts) {
    if (parts.empty()) return false;
    std::string why;
    if (!is_valid_pretrace(beta, &why)) throw Error("zip_check: composite: " + why);
    for (const auto& p : parts)
        if (!is_valid_pretrace(p, &why)) throw Error("zip_check: component: " + why);

    auto comp = detail::TraceBlocks::of(reduce_pretrace(beta));
    std::vector<detail::TraceBlocks> pb;
    for (const auto& p : parts) pb.push_back(detail::TraceBlocks::of(reduce_pretrace(p)));
    const std::size_t n = pb.size();

    std::set<std::vector<std::size_t>> seen;
    std::vector<std::vector<std::size_t>> stack;
    stack.push_back(std::vector<std::size_t>(n + 1, 0));

    while (!stack.empty()) {
        auto cur = stack.back();
        stack.pop_back();
        if (!seen.insert(cur).second) continue;

        std::size_t c = cur[0];
        std::vector<ExtSignature> sigs;
        for (std::size_t j = 0; j < n; ++j) sigs.push_back(pb[j].sigs[cur[j + 1]]);
        if (!(compose_ext(sigs) == comp.sigs[c])) continue;  // clause 3 fails here

        bool done = (c + 1 == comp.sigs.size());
        for (std::size_t j = 0; j < n && done; ++j)
            if (cur[j + 1] + 1 != pb[j].sigs.size()) done = false;
        if (done) return true;

        // composite advances through its next action; participants are forced
        if (c + 1 < comp.sigs.size() && comp.links[c].has_value()) {
            const Action& a = *comp.links[c];
            bool valid = true;
            std::vector<std::size_t> next = cur;
            ++next[0];
            std::size_t participants = 0;
            for (std::size_t j = 0; j < n; ++j) {
                std::size_t k = cur[j + 1];
                bool ready = k + 1 < pb[j].sigs.size() && pb[j].links[k].has_value() &&
                             *pb[j].links[k] == a;
                if (ready) {
                    ++next[j + 1];
                    ++participants;
                } else if (pb[j].sigs[k].acts().count(a)) {
                    valid = false;  // would violate clause 2(b)
                    break;
                }
            }
            if (valid && participants > 0) stack.push_back(next);
        }

        // one component advances through an internal signature change
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t k = cur[j + 1];
            if (k + 1 >= pb[j].sigs.size() || pb[j].links[k].has_value()) continue;
            std::vector<ExtSignature> moved = sigs;
            moved[j] = pb[j].sigs[k + 1];
            ExtSignature prod = compose_ext(moved);
            if (prod == comp.sigs[c]) {
                auto next = cur;
                ++next[j + 1];
                stack.push_back(next);
            } else if (c + 1 < comp.sigs.size() && !comp.links[c].has_value() &&
                       comp.sigs[c + 1] == prod) {
                auto next = cur;
                ++next[0];
                ++next[j + 1];
                stack.push_back(next);
            }
        }
    }
    return false;
}

/// Builds aligned pretraces for an execution of a composition and the
/// projections onto its components: the constructive step of the zip
/// round-trip.  zips_check holds on the result by construction.
inline std::pair<Pretrace, std::vector<Pretrace>> zips_witness_from_execution(
    const std::vector<Sioa>& comps, const Execution& e) {
    auto seq = parse_composite_seq(comps, e);
    const std::size_t n = comps.size();
    std::vector<Pretrace> gs(n);
    Pretrace g;

    auto comp_ext = [&](const std::vector<State>& tuple) {
        std::vector<ExtSignature> sigs;
        for (std::size_t i = 0; i < n; ++i) sigs.push_back(comps[i].signature(tuple[i]).ext());
        return compose_ext(sigs);
    };

    g.push_back(TraceElem::make_sig(comp_ext(seq.states[0])));
    for (std::size_t i = 0; i < n; ++i)
        gs[i].push_back(TraceElem::make_sig(comps[i].signature(seq.states[0][i]).ext()));

    for (std::size_t j = 0; j < seq.actions.size(); ++j) {
        const Action& a = seq.actions[j];
        const auto& src = seq.states[j];
        const auto& dst = seq.states[j + 1];
        bool external = false;
        for (std::size_t i = 0; i < n; ++i)
            if (comps[i].signature(src[i]).ext_acts().count(a)) external = true;
        if (external) {
            g.push_back(TraceElem::make_action(a));
            g.push_back(TraceElem::make_sig(comp_ext(dst)));
            for (std::size_t i = 0; i < n; ++i) {
                if (comps[i].signature(src[i]).acts().count(a)) {
                    gs[i].push_back(TraceElem::make_action(a));
                    gs[i].push_back(TraceElem::make_sig(comps[i].signature(dst[i]).ext()));
                } else {
                    auto cur = comps[i].signature(src[i]).ext();
                    gs[i].push_back(TraceElem::make_sig(cur));
                    gs[i].push_back(TraceElem::make_sig(cur));
                }
            }
        } else {
            g.push_back(TraceElem::make_sig(comp_ext(dst)));
            for (std::size_t i = 0; i < n; ++i)
                gs[i].push_back(TraceElem::make_sig(comps[i].signature(dst[i]).ext()));
        }
    }
    return {g, gs};
}

}  // namespace dioa

#endif
