#ifndef DIOA_ENUMERATE_HPP
#define DIOA_ENUMERATE_HPP

#include <deque>
#include <unordered_set>

#include "dioa/behavior.hpp"

namespace dioa {

/// Steps grouped by source state, for linear-time expansion during search.
inline std::map<State, std::vector<Step>> steps_by_source(const Sioa& m) {
    std::map<State, std::vector<Step>> idx;
    for (const auto& st : m.steps) idx[st.src].push_back(st);
    return idx;
}

namespace detail {

/// Integer-indexed view of an automaton for the search loops: state indices,
/// cached external signatures and their texts, and adjacency lists that
/// record whether a step is external at its source.
struct Graph {
    std::vector<State> names;
    std::vector<ExtSignature> ext;
    std::vector<std::string> ext_text;
    struct Edge {
        Action action;
        int dst;
        bool external;
    };
    std::vector<std::vector<Edge>> edges;
    std::vector<int> starts;

    static Graph of(const Sioa& m) {
        Graph g;
        std::map<State, int> index;
        for (const auto& s : m.states) {
            index[s] = static_cast<int>(g.names.size());
            g.names.push_back(s);
        }
        g.ext.reserve(g.names.size());
        for (const auto& s : g.names) {
            g.ext.push_back(m.signature(s).ext());
            g.ext_text.push_back(g.ext.back().text());
        }
        g.edges.resize(g.names.size());
        for (const auto& st : m.steps) {
            int src = index.at(st.src);
            bool external = g.ext[src].acts().count(st.action) != 0;
            g.edges[src].push_back({st.action, index.at(st.dst), external});
        }
        for (const auto& s : m.starts) g.starts.push_back(index.at(s));
        return g;
    }
};

inline std::string node_key(int s, const std::string& tail) {
    return std::to_string(s) + "\x01" + tail;
}

}  // namespace detail

/// Extends a trace by one transition, mirroring trace_of: external actions
/// append the action and the new signature, internal ones append the new
/// signature only when it changed.
inline void extend_trace(Trace& t, const Sioa& m, const State& src, const Action& a,
                         const State& dst) {
    ExtSignature next = m.signature(dst).ext();
    if (m.signature(src).ext_acts().count(a)) {
        t.push_back(TraceElem::make_action(a));
        t.push_back(TraceElem::make_sig(next));
    } else if (!(t.back().sig() == next)) {
        t.push_back(TraceElem::make_sig(next));
    }
}

namespace detail {

/// Shared BFS over (state, trace) pairs, deduplicated on canonical trace
/// text.  Calls visit(state-index, trace) for every discovered pair.
template <typename Visit>
void traverse_traces(const Sioa& m, std::size_t depth, Visit&& visit) {
    Graph g = Graph::of(m);
    struct Node {
        int s;
        Trace trace;
        std::string canon;
        std::size_t used;
    };
    std::deque<Node> queue;
    std::unordered_set<std::string> seen;
    for (int s : g.starts) {
        Trace t{TraceElem::make_sig(g.ext[s])};
        std::string canon = g.ext_text[s];
        if (seen.insert(node_key(s, canon)).second) queue.push_back({s, t, canon, 0});
    }
    while (!queue.empty()) {
        Node n = std::move(queue.front());
        queue.pop_front();
        visit(n.s, n.trace);
        if (n.used >= depth) continue;
        for (const auto& e : g.edges[n.s]) {
            Trace nt = n.trace;
            std::string canon = n.canon;
            if (e.external) {
                nt.push_back(TraceElem::make_action(e.action));
                nt.push_back(TraceElem::make_sig(g.ext[e.dst]));
                canon += " " + e.action + " " + g.ext_text[e.dst];
            } else if (g.ext_text[e.dst] != g.ext_text[n.s]) {
                nt.push_back(TraceElem::make_sig(g.ext[e.dst]));
                canon += " " + g.ext_text[e.dst];
            }
            if (seen.insert(node_key(e.dst, canon)).second)
                queue.push_back({e.dst, std::move(nt), std::move(canon), n.used + 1});
        }
    }
}

}  // namespace detail

/// All traces of executions with at most `depth` transitions.  Deduplicates
/// on (state, trace) pairs per BFS layer, which is sound because a pair found
/// earlier dominates later rediscoveries.
inline std::set<Trace> enumerate_traces(const Sioa& m, std::size_t depth) {
    std::set<Trace> out;
    detail::traverse_traces(m, depth, [&](int, const Trace& t) { out.insert(t); });
    return out;
}

/// Traces together with one witness execution each (first in BFS order).
inline std::map<Trace, Execution> trace_witnesses(const Sioa& m, std::size_t depth) {
    detail::Graph g = detail::Graph::of(m);
    struct Node {
        int s;
        Trace trace;
        std::string canon;
        Execution exec;
        std::size_t used;
    };
    std::map<Trace, Execution> out;
    std::deque<Node> queue;
    std::unordered_set<std::string> seen;
    for (int s : g.starts) {
        Trace t{TraceElem::make_sig(g.ext[s])};
        if (seen.insert(detail::node_key(s, g.ext_text[s])).second)
            queue.push_back({s, t, g.ext_text[s], Execution{m.id, {g.names[s]}, {}}, 0});
    }
    while (!queue.empty()) {
        Node n = std::move(queue.front());
        queue.pop_front();
        out.emplace(n.trace, n.exec);
        if (n.used >= depth) continue;
        for (const auto& e : g.edges[n.s]) {
            Trace nt = n.trace;
            std::string canon = n.canon;
            if (e.external) {
                nt.push_back(TraceElem::make_action(e.action));
                nt.push_back(TraceElem::make_sig(g.ext[e.dst]));
                canon += " " + e.action + " " + g.ext_text[e.dst];
            } else if (g.ext_text[e.dst] != g.ext_text[n.s]) {
                nt.push_back(TraceElem::make_sig(g.ext[e.dst]));
                canon += " " + g.ext_text[e.dst];
            }
            if (!seen.insert(detail::node_key(e.dst, canon)).second) continue;
            Execution ne = n.exec;
            ne.actions.push_back(e.action);
            ne.states.push_back(g.names[e.dst]);
            queue.push_back({e.dst, std::move(nt), std::move(canon), std::move(ne), n.used + 1});
        }
    }
    return out;
}

/// Final states reachable per trace, for execution-pair joins.
inline std::map<Trace, std::set<State>> trace_end_states(const Sioa& m, std::size_t depth) {
    std::map<Trace, std::set<State>> out;
    detail::Graph g = detail::Graph::of(m);
    detail::traverse_traces(m, depth,
                            [&](int s, const Trace& t) { out[t].insert(g.names[s]); });
    return out;
}

/// Action projections of traces at the given depth.
inline std::set<std::vector<Action>> enumerate_action_traces(const Sioa& m, std::size_t depth) {
    detail::Graph g = detail::Graph::of(m);
    struct Node {
        int s;
        std::vector<Action> as;
        std::string canon;
        std::size_t used;
    };
    std::set<std::vector<Action>> out;
    std::deque<Node> queue;
    std::unordered_set<std::string> seen;
    for (int s : g.starts)
        if (seen.insert(detail::node_key(s, "")).second) queue.push_back({s, {}, "", 0});
    while (!queue.empty()) {
        Node n = std::move(queue.front());
        queue.pop_front();
        out.insert(n.as);
        if (n.used >= depth) continue;
        for (const auto& e : g.edges[n.s]) {
            auto nas = n.as;
            std::string canon = n.canon;
            if (e.external) {
                nas.push_back(e.action);
                canon += " " + e.action;
            }
            if (seen.insert(detail::node_key(e.dst, canon)).second)
                queue.push_back({e.dst, std::move(nas), std::move(canon), n.used + 1});
        }
    }
    return out;
}

/// First `cap` executions with at most `depth` transitions, in BFS order;
/// silently truncates.  Deterministic because steps are kept sorted.
inline std::vector<Execution> enumerate_executions_capped(const Sioa& m, std::size_t depth,
                                                          std::size_t cap) {
    std::vector<Execution> out;
    std::deque<std::pair<Execution, std::size_t>> queue;
    auto index = steps_by_source(m);
    for (const auto& s : m.starts) queue.push_back({Execution{m.id, {s}, {}}, 0});
    while (!queue.empty() && out.size() < cap) {
        auto [e, used] = queue.front();
        queue.pop_front();
        out.push_back(e);
        if (used >= depth) continue;
        auto it = index.find(e.states.back());
        if (it == index.end()) continue;
        for (const auto& st : it->second) {
            Execution ne = e;
            ne.actions.push_back(st.action);
            ne.states.push_back(st.dst);
            queue.push_back({ne, used + 1});
        }
    }
    return out;
}

/// All executions with at most `depth` transitions, in canonical order.
/// Throws when more than `cap` executions exist.
inline std::vector<Execution> enumerate_executions(const Sioa& m, std::size_t depth,
                                                   std::size_t cap = 200000) {
    auto out = enumerate_executions_capped(m, depth, cap + 1);
    if (out.size() > cap) throw Error("enumerate_executions: cap exceeded");
    return out;
}

/// Reusable membership searcher: builds the indexed view of an automaton once
/// and answers trace / action-trace membership queries against it.
class TraceMatcher {
public:
    explicit TraceMatcher(const Sioa& m) : g_(detail::Graph::of(m)) {}

    /// Does the automaton have an execution with this trace and at most
    /// `max_transitions` transitions?  Searches (state, position) pairs.
    bool trace(const Trace& beta, std::size_t max_transitions) const {
        auto blocks = detail::TraceBlocks::of(reduce_pretrace(beta));
        if (blocks.sigs.empty()) return false;
        const std::size_t last = blocks.sigs.size() - 1;

        std::vector<std::vector<char>> match(g_.names.size(),
                                             std::vector<char>(blocks.sigs.size(), 0));
        for (std::size_t s = 0; s < g_.names.size(); ++s)
            for (std::size_t k = 0; k < blocks.sigs.size(); ++k)
                match[s][k] = g_.ext[s] == blocks.sigs[k];

        std::vector<std::vector<char>> seen(g_.names.size(),
                                            std::vector<char>(blocks.sigs.size(), 0));
        std::deque<std::tuple<int, std::size_t, std::size_t>> queue;
        for (int s : g_.starts) {
            if (!match[s][0]) continue;
            if (!seen[s][0]) {
                seen[s][0] = 1;
                queue.push_back({s, 0, 0});
            }
        }
        while (!queue.empty()) {
            auto [s, k, used] = queue.front();
            queue.pop_front();
            if (k == last) return true;
            if (used >= max_transitions) continue;
            for (const auto& e : g_.edges[s]) {
                std::size_t nk;
                if (e.external) {
                    if (!blocks.links[k].has_value() || *blocks.links[k] != e.action) continue;
                    if (!match[e.dst][k + 1]) continue;
                    nk = k + 1;
                } else if (match[e.dst][k]) {
                    nk = k;
                } else if (!blocks.links[k].has_value() && match[e.dst][k + 1]) {
                    nk = k + 1;
                } else {
                    continue;
                }
                if (!seen[e.dst][nk]) {
                    seen[e.dst][nk] = 1;
                    queue.push_back({e.dst, nk, used + 1});
                }
            }
        }
        return false;
    }

    /// Membership of the action projection only.
    bool actions(const std::vector<Action>& actions, std::size_t max_transitions) const {
        std::vector<std::vector<char>> seen(g_.names.size(),
                                            std::vector<char>(actions.size() + 1, 0));
        std::deque<std::tuple<int, std::size_t, std::size_t>> queue;
        for (int s : g_.starts)
            if (!seen[s][0]) {
                seen[s][0] = 1;
                queue.push_back({s, 0, 0});
            }
        while (!queue.empty()) {
            auto [s, k, used] = queue.front();
            queue.pop_front();
            if (k == actions.size()) return true;
            if (used >= max_transitions) continue;
            for (const auto& e : g_.edges[s]) {
                std::size_t nk = k;
                if (e.external) {
                    if (k >= actions.size() || actions[k] != e.action) continue;
                    nk = k + 1;
                }
                if (!seen[e.dst][nk]) {
                    seen[e.dst][nk] = 1;
                    queue.push_back({e.dst, nk, used + 1});
                }
            }
        }
        return false;
    }

private:
    detail::Graph g_;
};

inline bool trace_membership(const Sioa& m, const Trace& beta, std::size_t max_transitions) {
    return TraceMatcher(m).trace(beta, max_transitions);
}

inline bool action_trace_membership(const Sioa& m, const std::vector<Action>& actions,
                                    std::size_t max_transitions) {
    return TraceMatcher(m).actions(actions, max_transitions);
}

}  // namespace dioa

#endif
