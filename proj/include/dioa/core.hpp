#ifndef DIOA_CORE_HPP
#define DIOA_CORE_HPP

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace dioa {

using Action = std::string;
using State = std::string;
using ActionSet = std::set<Action>;
using StateSet = std::set<State>;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

template <typename S>
std::string join_set(const S& items, const std::string& sep) {
    std::string out;
    bool first = true;
    for (const auto& x : items) {
        if (!first) out += sep;
        out += x;
        first = false;
    }
    return out;
}

inline ActionSet set_union(const ActionSet& a, const ActionSet& b) {
    ActionSet r = a;
    r.insert(b.begin(), b.end());
    return r;
}

inline ActionSet set_minus(const ActionSet& a, const ActionSet& b) {
    ActionSet r;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}

inline ActionSet set_intersect(const ActionSet& a, const ActionSet& b) {
    ActionSet r;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
    return r;
}

inline bool disjoint(const ActionSet& a, const ActionSet& b) {
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) ++i;
        else if (*j < *i) ++j;
        else return false;
    }
    return true;
}

/// External signature: the (input, output) pair of a state signature.
struct ExtSignature {
    ActionSet input;
    ActionSet output;

    ActionSet acts() const { return set_union(input, output); }

    bool operator==(const ExtSignature& o) const { return input == o.input && output == o.output; }
    bool operator!=(const ExtSignature& o) const { return !(*this == o); }
    bool operator<(const ExtSignature& o) const {
        return std::tie(input, output) < std::tie(o.input, o.output);
    }

    /// Canonical form `{in1,in2|out1,out2}` with both sides sorted.
    std::string text() const {
        return "{" + join_set(input, ",") + "|" + join_set(output, ",") + "}";
    }
};

/// Per-state action signature: pairwise disjoint input/output/internal sets.
struct Signature {
    ActionSet input;
    ActionSet output;
    ActionSet internal;

    ActionSet acts() const { return set_union(set_union(input, output), internal); }
    ExtSignature ext() const { return ExtSignature{input, output}; }
    ActionSet ext_acts() const { return set_union(input, output); }
    bool empty() const { return input.empty() && output.empty() && internal.empty(); }

    bool disjoint_triple() const {
        return disjoint(input, output) && disjoint(input, internal) && disjoint(output, internal);
    }

    bool operator==(const Signature& o) const {
        return input == o.input && output == o.output && internal == o.internal;
    }
    bool operator!=(const Signature& o) const { return !(*this == o); }
    bool operator<(const Signature& o) const {
        return std::tie(input, output, internal) < std::tie(o.input, o.output, o.internal);
    }

    std::string text() const {
        return "<" + join_set(input, ",") + "|" + join_set(output, ",") + "|" +
               join_set(internal, ",") + ">";
    }
};

struct Step {
    State src;
    Action action;
    State dst;

    bool operator<(const Step& o) const {
        return std::tie(src, action, dst) < std::tie(o.src, o.action, o.dst);
    }
    bool operator==(const Step& o) const {
        return src == o.src && action == o.action && dst == o.dst;
    }
};

using StepSet = std::set<Step>;

/// Signature I/O automaton: explicit finite states, state-indexed signatures,
/// and a transition relation.  All fields are plain values; instances are
/// immutable by convention after construction.
struct Sioa {
    std::string id;
    StateSet states;
    StateSet starts;
    std::map<State, Signature> sig;
    StepSet steps;

    const Signature& signature(const State& s) const {
        auto it = sig.find(s);
        if (it == sig.end()) throw Error(id + ": no signature for state '" + s + "'");
        return it->second;
    }

    bool has_state(const State& s) const { return states.count(s) != 0; }

    /// Universal action set: union of all state signatures.
    ActionSet acts() const {
        ActionSet r;
        for (const auto& [s, g] : sig) {
            (void)s;
            auto a = g.acts();
            r.insert(a.begin(), a.end());
        }
        return r;
    }

    bool operator==(const Sioa& o) const {
        return id == o.id && states == o.states && starts == o.starts && sig == o.sig &&
               steps == o.steps;
    }
};

struct Violation {
    std::string tag;      // C1, C2, C3 or STRUCT
    std::string where;    // offending state or step
    std::string message;
};

struct ValidationReport {
    bool ok = true;
    std::vector<Violation> violations;

    void add(std::string tag, std::string where, std::string message) {
        ok = false;
        violations.push_back({std::move(tag), std::move(where), std::move(message)});
    }

    std::string text() const {
        if (ok) return "ok";
        std::string out;
        for (const auto& v : violations)
            out += v.tag + " at " + v.where + ": " + v.message + "\n";
        return out;
    }
};

inline std::string step_text(const Step& st) {
    return "(" + st.src + "," + st.action + "," + st.dst + ")";
}

/// Checks the structural requirements and the three SIOA constraints:
/// every step is labeled within its source signature (C1), inputs are
/// enabled (C2), and signatures are disjoint triples (C3).
inline ValidationReport validate_sioa(const Sioa& a) {
    ValidationReport r;
    if (a.starts.empty()) r.add("STRUCT", a.id, "empty start set");
    for (const auto& s : a.starts)
        if (!a.has_state(s)) r.add("STRUCT", s, "start state not declared");
    for (const auto& s : a.states)
        if (a.sig.find(s) == a.sig.end()) r.add("STRUCT", s, "state has no signature");
    for (const auto& [s, g] : a.sig) {
        (void)g;
        if (!a.has_state(s)) r.add("STRUCT", s, "signature for undeclared state");
    }
    for (const auto& st : a.steps) {
        if (!a.has_state(st.src)) r.add("STRUCT", step_text(st), "source state not declared");
        if (!a.has_state(st.dst)) r.add("STRUCT", step_text(st), "target state not declared");
    }
    if (!r.ok) return r;  // constraint checks assume a well-formed structure

    for (const auto& st : a.steps) {
        const auto& g = a.signature(st.src);
        if (!g.acts().count(st.action))
            r.add("C1", step_text(st), "action not in source state signature");
    }
    for (const auto& s : a.states) {
        const auto& g = a.signature(s);
        for (const auto& in : g.input) {
            bool enabled = false;
            for (const auto& st : a.steps)
                if (st.src == s && st.action == in) { enabled = true; break; }
            if (!enabled) r.add("C2", "(" + s + "," + in + ")", "input action has no step");
        }
        if (!g.disjoint_triple())
            r.add("C3", s, "input/output/internal sets are not pairwise disjoint");
    }
    return r;
}

/// All (action, target) pairs leaving `s`, in canonical order.
inline std::set<std::pair<Action, State>> enabled_steps(const Sioa& a, const State& s) {
    if (!a.has_state(s)) throw Error(a.id + ": unknown state '" + s + "'");
    std::set<std::pair<Action, State>> r;
    for (const auto& st : a.steps)
        if (st.src == s) r.insert({st.action, st.dst});
    return r;
}

/// Splits a composite id like `(a,(b,c),d)` at its top-level commas,
/// respecting nested (), [] pairs.  Non-composite ids yield themselves.
inline std::vector<std::string> split_tuple(const std::string& id) {
    if (id.size() < 2 || id.front() != '(' || id.back() != ')') return {id};
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (std::size_t i = 1; i + 1 < id.size(); ++i) {
        char c = id[i];
        if (c == '(' || c == '[') ++depth;
        if (c == ')' || c == ']') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

inline std::string make_tuple_id(const std::vector<std::string>& parts) {
    return "(" + join(parts, ",") + ")";
}

}  // namespace dioa

#endif
