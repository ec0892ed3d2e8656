#ifndef DIOA_CREATION_ANALYSIS_HPP
#define DIOA_CREATION_ANALYSIS_HPP

#include "dioa/config_automata.hpp"
#include "dioa/enumerate.hpp"

namespace dioa {

/// phi[B/A]: replace A by B when A is present.  The standing assumption
/// B not-in phi is enforced.
inline CreateSet subst_create_set(const CreateSet& phi, const std::string& a,
                                  const std::string& b) {
    if (a == b) return phi;
    if (phi.count(b)) throw Error("subst_create_set: '" + b + "' already in create set");
    if (!phi.count(a)) return phi;
    CreateSet r = phi;
    r.erase(a);
    r.insert(b);
    return r;
}

/// C <|_AB D: members of D are members of C with A replaced by B, all other
/// members agree in state, and A, B have equal external signatures.
inline bool config_corresponds(const Registry& reg, const Configuration& c,
                               const Configuration& d, const std::string& a,
                               const std::string& b) {
    std::set<std::string> expect;
    for (const auto& [id, s] : c.members) {
        (void)s;
        expect.insert(id == a ? b : id);
    }
    std::set<std::string> have;
    for (const auto& [id, s] : d.members) {
        (void)s;
        have.insert(id);
    }
    if (expect != have) return false;
    for (const auto& [id, s] : c.members) {
        if (id == a) continue;
        if (d.state_of(id) != s) return false;
    }
    if (c.alive(a)) {
        const auto& sa = reg.at(a).signature(c.state_of(a));
        const auto& sb = reg.at(b).signature(d.state_of(b));
        if (!(sa.ext() == sb.ext())) return false;
    }
    return true;
}

/// Terminating executions: executions whose final action drives the automaton
/// to an empty signature, with the final state removed.  Requires the
/// destruction-deterministic form.
inline std::vector<Execution> terminating_executions(const Sioa& a, std::size_t depth,
                                                     std::size_t cap = 200000) {
    std::string why;
    if (!destruction_deterministic(a, &why)) throw Error("terminating_executions: " + why);
    std::vector<Execution> out;
    for (const auto& e : enumerate_executions(a, depth, cap)) {
        if (e.actions.empty()) continue;
        if (!a.signature(e.states.back()).empty()) continue;
        Execution t = e;
        t.states.pop_back();
        out.push_back(t);
    }
    return out;
}

inline std::set<Trace> terminating_traces(const Sioa& a, std::size_t depth) {
    std::set<Trace> out;
    for (const auto& e : terminating_executions(a, depth)) out.insert(trace_of(a, e));
    return out;
}

/// Delimited sequence of one member's lifetimes inside a configuration
/// automaton execution; all segments but the last are terminating.
struct DelimitedExecutionSeq {
    std::vector<Execution> segments;

    bool operator==(const DelimitedExecutionSeq& o) const { return segments == o.segments; }

    std::string text() const {
        std::vector<std::string> parts;
        for (const auto& e : segments) parts.push_back(e.text());
        return join(parts, " | ");
    }
};

inline bool execution_prefix(const Execution& a, const Execution& b) {
    if (a.states.size() > b.states.size() || a.actions.size() > b.actions.size()) return false;
    return std::equal(a.states.begin(), a.states.end(), b.states.begin()) &&
           std::equal(a.actions.begin(), a.actions.end(), b.actions.begin());
}

/// Prefix over delimited sequences: all but the last segment equal, and the
/// last a prefix of its counterpart.
inline bool seq_prefix(const DelimitedExecutionSeq& x, const DelimitedExecutionSeq& y) {
    if (x.segments.size() > y.segments.size()) return false;
    if (x.segments.empty()) return true;
    for (std::size_t i = 0; i + 1 < x.segments.size(); ++i)
        if (!(x.segments[i] == y.segments[i])) return false;
    return execution_prefix(x.segments.back(), y.segments[x.segments.size() - 1]);
}

/// Trace of a delimited sequence: the segment traces, delimiters kept.
inline std::vector<Trace> seq_trace(const Registry& reg, const DelimitedExecutionSeq& x,
                                    const std::string& member) {
    std::vector<Trace> out;
    for (const auto& e : x.segments) out.push_back(trace_of(reg.at(member), e));
    return out;
}

/// alpha || A — the five projection steps: delimit on signature-emptying
/// actions, drop positions where the member is absent or not participating,
/// drop a trailing state without the member, and map to local states.
inline DelimitedExecutionSeq project_member(const Registry& reg, const ConfigAutomaton& x,
                                            const Execution& alpha, const std::string& member) {
    reg.at(member);
    DelimitedExecutionSeq out;
    Execution cur{member, {}, {}};
    bool open = false;

    auto close_segment = [&](bool terminating) {
        if (!open) return;
        if (!terminating && cur.states.empty()) throw Error("project_member: empty segment");
        out.segments.push_back(cur);
        cur = Execution{member, {}, {}};
        open = false;
    };

    for (std::size_t j = 0; j < alpha.states.size(); ++j) {
        const Configuration& c = x.config(alpha.states[j]);
        bool alive = c.alive(member);
        if (alive && !open) {
            open = true;
            cur.states.push_back(c.state_of(member));
        }
        if (j >= alpha.actions.size()) break;  // final state handled above
        const Action& act = alpha.actions[j];
        if (!alive) continue;  // position removed: member absent
        const State& local = c.state_of(member);
        const auto& sig = reg.at(member).signature(local);
        if (!sig.acts().count(act)) continue;  // position removed: not participating
        const Configuration& next = x.config(alpha.states[j + 1]);
        if (next.alive(member)) {
            cur.actions.push_back(act);
            cur.states.push_back(next.state_of(member));
        } else {
            // the action emptied the member's signature: delimiter
            cur.actions.push_back(act);
            close_segment(true);
        }
    }
    close_segment(false);
    return out;
}

struct CorrespondenceIssue {
    Trace trace;
    State x_state;
    State y_state;
    Action action;
    CreateSet created_x;
    CreateSet created_y;

    std::string text() const {
        return "trace " + trace_text(trace) + ", states (" + x_state + ", " + y_state +
               "), action " + action + ": created_Y = {" + join_set(created_y, ",") +
               "} but created_X[B/A] = {" + join_set(created_x, ",") + "}";
    }
};

struct CorrespondenceReport {
    bool ok = true;
    int clause = 0;
    std::string detail;
    std::optional<CorrespondenceIssue> counterexample;
};

/// Creation correspondence of X and Y w.r.t. A and B: X never creates B, Y
/// never creates A, and from equal-trace execution pairs the created sets
/// agree modulo [B/A] on shared signature actions.
inline CorrespondenceReport check_creation_corresponding(const Registry& reg,
                                                         const ConfigAutomaton& x,
                                                         const ConfigAutomaton& y,
                                                         const std::string& a,
                                                         const std::string& b,
                                                         std::size_t depth) {
    CorrespondenceReport rep;
    for (const auto& [s, m] : x.created_map)
        for (const auto& [act, phi] : m)
            if (a != b && phi.count(b)) {
                rep.ok = false;
                rep.clause = 1;
                rep.detail = x.name + " creates " + b + " at " + s + " on " + act;
                return rep;
            }
    for (const auto& [s, m] : y.created_map)
        for (const auto& [act, phi] : m)
            if (a != b && phi.count(a)) {
                rep.ok = false;
                rep.clause = 1;
                rep.detail = y.name + " creates " + a + " at " + s + " on " + act;
                return rep;
            }

    auto xs = trace_end_states(x.underlying, depth);
    auto ys = trace_end_states(y.underlying, depth);
    for (const auto& [t, xstates] : xs) {
        auto it = ys.find(t);
        if (it == ys.end()) continue;
        for (const auto& sx : xstates) {
            for (const auto& sy : it->second) {
                ActionSet shared = set_intersect(x.underlying.signature(sx).acts(),
                                                 y.underlying.signature(sy).acts());
                for (const auto& act : shared) {
                    CreateSet want = subst_create_set(x.created(sx, act), a, b);
                    CreateSet got = y.created(sy, act);
                    if (want != got) {
                        rep.ok = false;
                        rep.clause = 2;
                        rep.counterexample = CorrespondenceIssue{t, sx, sy, act, want, got};
                        rep.detail = rep.counterexample->text();
                        return rep;
                    }
                }
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Execution correspondence R_AB
// ---------------------------------------------------------------------------

using IndexMap = std::vector<std::size_t>;  // m(0..|alpha|)

struct RabReport {
    bool ok = true;
    int clause = 0;
    std::size_t position = 0;
    std::string detail;
};

/// Literal check of the five R_AB clauses for a given index mapping.
inline RabReport verify_rab(const Registry& reg, const ConfigAutomaton& x,
                            const ConfigAutomaton& y, const Execution& alpha,
                            const Execution& pi, const IndexMap& m, const std::string& a,
                            const std::string& b) {
    RabReport rep;
    auto fail = [&](int clause, std::size_t pos, std::string detail) {
        rep.ok = false;
        rep.clause = clause;
        rep.position = pos;
        rep.detail = std::move(detail);
        return rep;
    };
    if (m.size() != alpha.length() + 1) return fail(0, 0, "index map has wrong domain");
    if (m[0] != 0) return fail(1, 0, "m(0) != 0");
    for (std::size_t i = 1; i < m.size(); ++i)
        if (m[i] < m[i - 1]) return fail(0, i, "index map not nondecreasing");
    for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > pi.length()) return fail(0, i, "index map exceeds |pi|");
    if (m.back() != pi.length()) return fail(2, m.size() - 1, "index map is not cofinal");

    for (std::size_t i = 1; i <= alpha.length(); ++i) {
        auto xa = alpha.segment(i - 1, i);
        auto yp = pi.segment(m[i - 1], m[i]);
        if (!(trace_of(x.underlying, xa) == trace_of(y.underlying, yp)))
            return fail(3, i, "segment traces differ");
        auto pa = project_member(reg, x, xa, a);
        auto pb = project_member(reg, y, yp, b);
        if (!(seq_trace(reg, pa, a) == seq_trace(reg, pb, b)))
            return fail(4, i, "member projection traces differ");
    }
    for (std::size_t i = 0; i <= alpha.length(); ++i) {
        if (!config_corresponds(reg, x.config(alpha.states[i]), y.config(pi.states[m[i]]), a, b))
            return fail(5, i, "configurations not in correspondence");
    }
    return rep;
}

struct AssumptionCheck {
    int number;
    bool ok;
    std::string detail;
};

/// The six hypotheses of the creation-monotonicity lemma, each reported
/// separately.  Trace inclusions are checked at the given bounded depth.
inline std::vector<AssumptionCheck> check_lemma_assumptions(const Registry& reg,
                                                            const ConfigAutomaton& x,
                                                            const ConfigAutomaton& y,
                                                            const std::string& a,
                                                            const std::string& b,
                                                            std::size_t depth) {
    std::vector<AssumptionCheck> out;
    const Sioa& aa = reg.at(a);
    const Sioa& bb = reg.at(b);

    {
        bool ok = bb.starts.size() == 1;
        std::string detail = ok ? "" : b + " has " + std::to_string(bb.starts.size()) + " start states";
        auto internal_destroyer = [](const Sioa& m) -> std::string {
            for (const auto& st : m.steps)
                if (m.signature(st.src).internal.count(st.action) && m.signature(st.dst).empty())
                    return m.id + " destroys itself via internal " + st.action;
            return "";
        };
        for (const auto& msg : {internal_destroyer(aa), internal_destroyer(bb)})
            if (!msg.empty()) {
                ok = false;
                detail += (detail.empty() ? "" : "; ") + msg;
            }
        out.push_back({1, ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        auto scan = [&](const ConfigAutomaton& ca, const std::string& member) {
            for (const auto& [s, mm] : ca.created_map) {
                const auto& c = ca.config(s);
                if (!c.alive(member)) continue;
                const auto& sig = reg.at(member).signature(c.state_of(member));
                for (const auto& [act, phi] : mm)
                    if (sig.internal.count(act) && !phi.empty()) {
                        ok = false;
                        detail = ca.name + " creates on internal action " + act + " of " + member;
                        return;
                    }
            }
        };
        scan(x, a);
        if (ok) scan(y, b);
        out.push_back({2, ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        for (const auto& sx : x.underlying.starts) {
            bool found = false;
            for (const auto& sy : y.underlying.starts)
                if (config_corresponds(reg, x.config(sx), y.config(sy), a, b)) { found = true; break; }
            if (!found) {
                ok = false;
                detail = "no corresponding start for " + sx;
                break;
            }
        }
        out.push_back({3, ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        TraceMatcher matcher(bb);
        for (const auto& t : enumerate_traces(aa, depth))
            if (!matcher.trace(t, depth)) {
                ok = false;
                detail = "trace " + trace_text(t) + " of " + a + " not a trace of " + b;
                break;
            }
        out.push_back({4, ok, detail});
    }
    {
        bool ok = true;
        std::string detail;
        auto tb = terminating_traces(bb, depth);
        for (const auto& t : terminating_traces(aa, depth))
            if (!tb.count(t)) {
                ok = false;
                detail = "terminating trace " + trace_text(t) + " of " + a + " missing in " + b;
                break;
            }
        out.push_back({5, ok, detail});
    }
    {
        auto rep = check_creation_corresponding(reg, x, y, a, b, depth);
        out.push_back({6, rep.ok, rep.detail});
    }
    return out;
}

struct FindRabResult {
    bool found = false;
    Execution pi;
    IndexMap m;
    std::string failure;                      // which proof case failed, when !found
    std::vector<AssumptionCheck> assumptions;
};

namespace detail {

inline std::optional<State> find_ca_step(const ConfigAutomaton& y, const State& from,
                                         const Action& act, const Configuration& target) {
    for (const auto& st : y.underlying.steps)
        if (st.src == from && st.action == act && y.config(st.dst) == target) return st.dst;
    return std::nullopt;
}

/// B-witness executions for the member projection segments: terminating
/// segments need terminating witnesses with equal traces, the final segment
/// an ordinary one.
inline std::optional<Execution> find_b_witness(const Sioa& b, const Trace& want,
                                               bool terminating, std::size_t depth) {
    if (terminating) {
        for (const auto& e : terminating_executions(b, depth))
            if (trace_of(b, e) == want) return e;
        return std::nullopt;
    }
    for (const auto& e : enumerate_executions(b, depth))
        if (trace_of(b, e) == want) return e;
    return std::nullopt;
}

}  // namespace detail

/// Replays the execution-correspondence construction: walks alpha case by
/// case and extends pi with matching Y-steps, consuming pre-selected
/// B-witness executions for the lifetimes of A.  Returns the constructed
/// (pi, m) or the first proof case that has no matching Y-transition.
inline FindRabResult find_rab(const Registry& reg, const ConfigAutomaton& x,
                              const ConfigAutomaton& y, const Execution& alpha,
                              const std::string& a, const std::string& b, std::size_t depth) {
    FindRabResult res;
    res.assumptions = check_lemma_assumptions(reg, x, y, a, b, depth);
    for (const auto& ac : res.assumptions)
        if (!ac.ok) {
            res.failure = "assumption " + std::to_string(ac.number) + " violated: " + ac.detail;
            return res;
        }

    const Sioa& aa = reg.at(a);
    const Sioa& bb = reg.at(b);

    auto xi = project_member(reg, x, alpha, a);
    std::vector<Execution> witnesses;
    for (std::size_t j = 0; j < xi.segments.size(); ++j) {
        bool term = xi.segments[j].ends_in_action();
        auto w = detail::find_b_witness(bb, trace_of(aa, xi.segments[j]), term, depth);
        if (!w) {
            res.failure = "no B-witness for lifetime segment " + std::to_string(j);
            return res;
        }
        witnesses.push_back(*w);
    }

    // base case
    std::optional<State> y0;
    for (const auto& sy : y.underlying.starts)
        if (config_corresponds(reg, x.config(alpha.states[0]), y.config(sy), a, b)) {
            y0 = sy;
            break;
        }
    if (!y0) {
        res.failure = "base case: no corresponding start state";
        return res;
    }

    Execution pi{y.underlying.id, {*y0}, {}};
    IndexMap m{0};
    std::size_t seg = 0;       // current lifetime segment of A along alpha
    std::size_t consumed = 0;  // transitions of witnesses[seg] consumed so far
    if (x.config(alpha.states[0]).alive(a)) seg = 0;

    // Consumes witness transitions (internal B moves as individual Y steps)
    // until the next consumed transition would be labelled `until`, or, when
    // `until` is empty, until the consumed prefix trace equals `target`.
    auto consume_internal = [&](const std::string& until, const Trace* target) -> bool {
        const Execution& w = witnesses[seg];
        while (true) {
            if (target) {
                Execution pre = w.prefix(consumed);
                if (trace_of(bb, pre) == *target) return true;
            }
            if (consumed >= w.length()) return target == nullptr;
            const Action& next = w.actions[consumed];
            if (!until.empty() && next == until) return true;
            const State& from = w.states[consumed];
            if (!bb.signature(from).internal.count(next)) return false;
            Configuration tgt = y.config(pi.states.back());
            tgt.members[b] = w.states[consumed + 1];
            auto ny = detail::find_ca_step(y, pi.states.back(), next, tgt);
            if (!ny) return false;
            pi.actions.push_back(next);
            pi.states.push_back(*ny);
            ++consumed;
        }
    };

    for (std::size_t i = 0; i < alpha.length(); ++i) {
        const Configuration& ci = x.config(alpha.states[i]);
        const Configuration& cn = x.config(alpha.states[i + 1]);
        const Action& act = alpha.actions[i];
        bool alive_before = ci.alive(a);
        bool alive_after = cn.alive(a);

        auto fail_case = [&](int n, const std::string& msg) {
            res.failure = "case " + std::to_string(n) + " at position " + std::to_string(i) +
                          ": " + msg;
        };

        if (!alive_before && !alive_after) {  // case 1
            Configuration target = cn;
            auto ny = detail::find_ca_step(y, pi.states.back(), act, target);
            if (!ny) { fail_case(1, "no Y step to " + target.text()); return res; }
            pi.actions.push_back(act);
            pi.states.push_back(*ny);
        } else if (!alive_before && alive_after) {  // case 2: creation
            if (seg >= witnesses.size()) { fail_case(2, "no witness segment left"); return res; }
            if (y.config(pi.states.back()).alive(b)) {
                fail_case(2, "B alive before creation point");
                return res;
            }
            Configuration target = cn;
            target.members.erase(a);
            target.members[b] = witnesses[seg].states[0];
            auto ny = detail::find_ca_step(y, pi.states.back(), act, target);
            if (!ny) { fail_case(2, "no Y step to " + target.text()); return res; }
            pi.actions.push_back(act);
            pi.states.push_back(*ny);
            consumed = 0;
        } else {
            const State& s = ci.state_of(a);
            const auto& siga = aa.signature(s);
            if (alive_after && !siga.acts().count(act)) {  // case 3
                if (!y.config(pi.states.back()).alive(b)) {
                    fail_case(3, "B not alive in Y");
                    return res;
                }
                Configuration target = cn;
                target.members.erase(a);
                target.members[b] = y.config(pi.states.back()).state_of(b);
                auto ny = detail::find_ca_step(y, pi.states.back(), act, target);
                if (!ny) { fail_case(3, "no Y step to " + target.text()); return res; }
                pi.actions.push_back(act);
                pi.states.push_back(*ny);
            } else if (alive_after && siga.ext_acts().count(act)) {  // case 4
                if (!consume_internal(act, nullptr)) { fail_case(4, "cannot align B witness"); return res; }
                const Execution& w = witnesses[seg];
                if (consumed >= w.length() || w.actions[consumed] != act) {
                    fail_case(4, "B witness lacks action " + act);
                    return res;
                }
                Configuration target = cn;
                target.members.erase(a);
                target.members[b] = w.states[consumed + 1];
                auto ny = detail::find_ca_step(y, pi.states.back(), act, target);
                if (!ny) { fail_case(4, "no Y step to " + target.text()); return res; }
                pi.actions.push_back(act);
                pi.states.push_back(*ny);
                ++consumed;
            } else if (alive_after) {  // case 5: internal action of A
                // the alignment target is the trace of A's current lifetime up
                // to and including this step
                std::size_t upto = 0;
                for (std::size_t k = 0; k <= i; ++k) {
                    const Configuration& ck = x.config(alpha.states[k]);
                    if (!ck.alive(a)) continue;
                    const auto& sk = reg.at(a).signature(ck.state_of(a));
                    if (sk.acts().count(alpha.actions[k])) ++upto;
                }
                for (std::size_t j = 0; j < seg; ++j) upto -= xi.segments[j].length();
                Trace target_trace = trace_of(aa, xi.segments[seg].prefix(upto));
                if (!consume_internal("", &target_trace)) {
                    fail_case(5, "cannot align B witness");
                    return res;
                }
            } else if (siga.ext_acts().count(act)) {  // case 7: destruction
                if (!consume_internal(act, nullptr)) { fail_case(7, "cannot align B witness"); return res; }
                const Execution& w = witnesses[seg];
                if (!(w.length() == consumed + 1 && w.ends_in_action() &&
                      w.actions[consumed] == act)) {
                    fail_case(7, "B witness does not terminate on " + act);
                    return res;
                }
                Configuration target = cn;  // A and B both gone
                auto ny = detail::find_ca_step(y, pi.states.back(), act, target);
                if (!ny) { fail_case(7, "no Y step to " + target.text()); return res; }
                pi.actions.push_back(act);
                pi.states.push_back(*ny);
                ++seg;
                consumed = 0;
            } else {
                // case 6 (non-participating destruction) and case 8 (internal
                // self-destruction) cannot occur under the assumptions
                fail_case(siga.acts().count(act) ? 8 : 6, "impossible case reached");
                return res;
            }
        }
        m.push_back(pi.length());
    }

    auto rep = verify_rab(reg, x, y, alpha, pi, m, a, b);
    if (!rep.ok) {
        res.failure = "constructed correspondence fails clause " + std::to_string(rep.clause) +
                      ": " + rep.detail;
        return res;
    }
    res.found = true;
    res.pi = pi;
    res.m = m;
    return res;
}

}  // namespace dioa

#endif
