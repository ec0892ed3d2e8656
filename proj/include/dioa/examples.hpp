#ifndef DIOA_EXAMPLES_HPP
#define DIOA_EXAMPLES_HPP

#include <functional>

#include "dioa/model_io.hpp"

namespace dioa {
namespace examples {

/// Small helper for building explicit automata from typed state machines:
/// reachable closure from the start states, signatures and steps given as
/// functions of the state value.
template <typename S>
struct MachineBuilder {
    std::string id;
    std::vector<S> starts;
    std::function<std::string(const S&)> name_of;
    std::function<Signature(const S&)> sig_of;
    std::function<std::vector<std::pair<Action, S>>(const S&)> steps_of;

    Sioa build() const {
        Sioa m;
        m.id = id;
        std::map<S, std::string> names;
        std::deque<S> queue;
        auto visit = [&](const S& s) {
            if (names.count(s)) return;
            names[s] = name_of(s);
            queue.push_back(s);
        };
        for (const auto& s : starts) {
            visit(s);
            m.starts.insert(name_of(s));
        }
        while (!queue.empty()) {
            S s = queue.front();
            queue.pop_front();
            m.states.insert(names[s]);
            m.sig[names[s]] = sig_of(s);
            for (const auto& [a, t] : steps_of(s)) {
                visit(t);
                m.steps.insert({names[s], a, names[t]});
            }
        }
        return m;
    }
};

// ---------------------------------------------------------------------------
// Mobile phones (two transmitters handing a car between them)
// ---------------------------------------------------------------------------

inline Sioa build_car() {
    Sioa m;
    m.id = "Car";
    m.states = {"on1", "on2"};
    m.starts = {"on1"};
    m.sig["on1"] = {{"switch1"}, {"talk1"}, {}};
    m.sig["on2"] = {{"switch2"}, {"talk2"}, {}};
    m.steps = {{"on1", "talk1", "on1"},
               {"on1", "switch1", "on2"},
               {"on2", "talk2", "on2"},
               {"on2", "switch2", "on1"}};
    return m;
}

/// Transmitter states encode (signature window, transferring, active):
/// p/m for whether talk/switch are currently in the signature.
inline Sioa build_transmitter(const std::string& id, int idx, const State& start) {
    auto tok = [&](const std::string& base) { return base + std::to_string(idx); };
    Sioa m;
    m.id = id;
    m.states = {"p01", "p10", "p11", "m00", "m01", "m10"};
    m.starts = {start};
    Signature live{{tok("lose"), tok("gain"), tok("talk")}, {tok("switch")}, {}};
    Signature cut{{tok("lose"), tok("gain")}, {}, {}};
    for (const auto& s : m.states) m.sig[s] = (s[0] == 'p') ? live : cut;
    m.steps = {
        {"p01", tok("lose"), "p10"},   {"p01", tok("gain"), "p01"},
        {"p01", tok("talk"), "p01"},   {"p10", tok("lose"), "p10"},
        {"p10", tok("gain"), "p11"},   {"p10", tok("talk"), "p10"},
        {"p10", tok("switch"), "m00"}, {"p11", tok("lose"), "p10"},
        {"p11", tok("gain"), "p11"},   {"p11", tok("talk"), "p11"},
        {"p11", tok("switch"), "m01"}, {"m00", tok("lose"), "m00"},
        {"m00", tok("gain"), "p01"},   {"m01", tok("lose"), "m10"},
        {"m01", tok("gain"), "p01"},   {"m10", tok("lose"), "m10"},
        {"m10", tok("gain"), "p11"},
    };
    return m;
}

/// The control station drives the handover cycle and listens for the switch
/// acknowledgements while a transfer is in flight, so a transmitter is told
/// to gain the car only after the car actually switched.
inline Sioa build_control() {
    Sioa m;
    m.id = "Control";
    m.states = {"a1", "t1w", "t1r", "a2", "t2w", "t2r"};
    m.starts = {"a1"};
    Signature quiet{{}, {"lose1", "gain1", "lose2", "gain2"}, {}};
    for (const auto& s : m.states) m.sig[s] = quiet;
    m.sig["t1w"].input = {"switch1"};
    m.sig["t2w"].input = {"switch2"};
    m.steps = {{"a1", "lose1", "t1w"},  {"t1w", "switch1", "t1r"}, {"t1r", "gain2", "a2"},
               {"a2", "lose2", "t2w"},  {"t2w", "switch2", "t2r"}, {"t2r", "gain1", "a1"}};
    return m;
}

inline Model mobile_phone() {
    Model m;
    for (auto& a : {build_car(), build_transmitter("Trans1", 1, "p01"),
                    build_transmitter("Trans2", 2, "m00"), build_control()})
        m.automata.emplace(a.id, a);
    Renaming swap;
    for (const auto& base : {"talk", "switch", "lose", "gain"}) {
        swap.map[std::string(base) + "1"] = std::string(base) + "2";
        swap.map[std::string(base) + "2"] = std::string(base) + "1";
    }
    m.renamings["swap12"] = swap;
    m.derived_defs.push_back(
        {"PhoneSystem", "compose", {"Car", "Trans1", "Trans2", "Control"}, "", "", "", {}});
    finalize_model(m);
    return m;
}

// ---------------------------------------------------------------------------
// Creation example: X creates A in more situations than Y reaches B
// ---------------------------------------------------------------------------

inline Model creation_example() {
    Model m;
    {
        Sioa a;
        a.id = "A";
        a.states = {"s0", "s1"};
        a.starts = {"s0"};
        a.sig["s0"] = {{}, {"a", "b"}, {}};  // b in the signature, never enabled
        a.sig["s1"] = {};
        a.steps = {{"s0", "a", "s1"}};
        m.automata.emplace(a.id, a);
    }
    {
        Sioa b;
        b.id = "B";
        b.states = {"t0", "t1", "t2"};
        b.starts = {"t0"};
        b.sig["t0"] = {{}, {"a", "b"}, {}};
        b.sig["t1"] = {};
        b.sig["t2"] = {};
        b.steps = {{"t0", "a", "t1"}, {"t0", "b", "t2"}};
        m.automata.emplace(b.id, b);
    }
    {
        Sioa c;
        c.id = "C";
        c.states = {"u0", "u1", "u2", "u3", "ua", "ub"};
        c.starts = {"u0"};
        c.sig["u0"] = {{}, {"c"}, {}};
        c.sig["u1"] = {{}, {"a", "b"}, {}};
        c.sig["u2"] = {{}, {"d"}, {}};
        c.sig["u3"] = {};
        c.sig["ua"] = {};
        c.sig["ub"] = {};
        c.steps = {{"u0", "c", "u1"},
                   {"u0", "c", "u2"},
                   {"u1", "a", "ua"},
                   {"u1", "b", "ub"},
                   {"u2", "d", "u3"}};
        m.automata.emplace(c.id, c);
    }
    Configuration init;
    init.members["C"] = "u0";
    {
        CaDef def;
        def.name = "X";
        def.initial = {init};
        def.policy.rules.push_back({{"C"}, {{"C", "u0"}}, "c", {"A"}});
        def.depth = 6;
        m.ca_defs.push_back(def);
    }
    {
        CaDef def;
        def.name = "Y";
        def.initial = {init};
        def.depth = 6;
        m.ca_defs.push_back(def);
    }
    m.bundles.push_back({"xy", "creation-mono", "X", "Y", "A", "B", 4, 3});
    finalize_model(m);
    return m;
}

// ---------------------------------------------------------------------------
// Creation-monotonicity fixture satisfying all lemma assumptions
// ---------------------------------------------------------------------------

inline Model creation_mono() {
    Model m;
    {
        Sioa mk;
        mk.id = "Maker";
        mk.states = {"m0", "m1"};
        mk.starts = {"m0"};
        mk.sig["m0"] = {{}, {"mk"}, {}};
        mk.sig["m1"] = {};
        mk.steps = {{"m0", "mk", "m1"}};
        m.automata.emplace(mk.id, mk);
    }
    {
        Sioa a;
        a.id = "MonoA";
        a.states = {"v0", "v1"};
        a.starts = {"v0"};
        a.sig["v0"] = {{}, {"p", "q"}, {}};
        a.sig["v1"] = {};
        a.steps = {{"v0", "p", "v1"}};
        m.automata.emplace(a.id, a);
    }
    {
        Sioa b;
        b.id = "MonoB";
        b.states = {"w0", "w1", "w2"};
        b.starts = {"w0"};
        b.sig["w0"] = {{}, {"p", "q"}, {}};
        b.sig["w1"] = {};
        b.sig["w2"] = {};
        b.steps = {{"w0", "p", "w1"}, {"w0", "q", "w2"}};
        m.automata.emplace(b.id, b);
    }
    Configuration init;
    init.members["Maker"] = "m0";
    {
        CaDef def;
        def.name = "MX";
        def.initial = {init};
        def.policy.rules.push_back({{"Maker"}, {{"Maker", "m0"}}, "mk", {"MonoA"}});
        def.depth = 8;
        m.ca_defs.push_back(def);
    }
    {
        CaDef def;
        def.name = "MY";
        def.initial = {init};
        def.policy.rules.push_back({{"Maker"}, {{"Maker", "m0"}}, "mk", {"MonoB"}});
        def.depth = 8;
        m.ca_defs.push_back(def);
    }
    m.bundles.push_back({"maker", "creation-mono", "MX", "MY", "MonoA", "MonoB", 8, 3});
    finalize_model(m);
    return m;
}

// ---------------------------------------------------------------------------
// Travel agent at the tiny instantiation: one request, two databases,
// each database queried at most once
// ---------------------------------------------------------------------------

namespace travel {

inline std::string bit(bool b) { return b ? "1" : "0"; }

struct ClientState {
    bool reqs = false, created = false, done = false, rt = false, rf = false;
    auto key() const { return std::tie(reqs, created, done, rt, rf); }
    bool operator<(const ClientState& o) const { return key() < o.key(); }
};

inline Sioa build_client() {
    MachineBuilder<ClientState> b;
    b.id = "ClientAgt";
    b.starts = {ClientState{}};
    b.name_of = [](const ClientState& s) {
        return "cl_" + bit(s.reqs) + bit(s.created) + bit(s.done) + bit(s.rt) + bit(s.rf);
    };
    b.sig_of = [](const ClientState& s) {
        Signature g;
        g.input = {"request_f"};
        if (s.created && !s.done) {
            g.input.insert("reqagent_resp_f_ok");
            g.input.insert("reqagent_resp_f_no");
        }
        g.output = {"create_req_f", "response_f_ok", "response_f_no"};
        return g;
    };
    b.steps_of = [](const ClientState& s) {
        std::vector<std::pair<Action, ClientState>> out;
        {
            ClientState t = s;
            t.reqs = true;
            out.push_back({"request_f", t});
        }
        if (s.reqs && !s.created) {
            ClientState t = s;
            t.created = true;
            out.push_back({"create_req_f", t});
        }
        if (s.created && !s.done) {
            ClientState t = s;
            t.done = true;
            t.rt = true;
            out.push_back({"reqagent_resp_f_ok", t});
            ClientState u = s;
            u.done = true;
            u.rf = true;
            out.push_back({"reqagent_resp_f_no", u});
        }
        if (s.rt) {
            ClientState t = s;
            t.rt = false;
            out.push_back({"response_f_ok", t});
        }
        if (s.rf) {
            ClientState t = s;
            t.rf = false;
            out.push_back({"response_f_no", t});
        }
        return out;
    };
    return b.build();
}

struct ReqState {
    int loc = 0;     // 0 = at client, 1 = at d1, 2 = at d2
    int status = 0;  // 0 unknown, 1 purchased, 2 failed
    bool tr1 = false, tr2 = false;
    bool vis1 = false, vis2 = false;
    bool tkt = false;
    bool ok1 = false, ok2 = false;
    bool q1 = false, q2 = false;
    bool o1 = false, o2 = false;
    bool gone = false;

    auto key() const {
        return std::tie(gone, loc, status, tr1, tr2, vis1, vis2, tkt, ok1, ok2, q1, q2, o1, o2);
    }
    bool operator<(const ReqState& o) const { return key() < o.key(); }
};

inline std::string db_tok(int d, const std::string& base, const std::string& suffix = "") {
    return base + "_d" + std::to_string(d) + "_f" + suffix;
}

/// The request agent: moves between database locations (internal), keeps the
/// database dialogue of its current location in its signature, and
/// self-destructs by answering the client.
inline Sioa build_reqagent(const std::string& id, bool heuristic) {
    MachineBuilder<ReqState> b;
    b.id = id;
    b.starts = {ReqState{}};
    b.name_of = [](const ReqState& s) {
        if (s.gone) return std::string("ra_gone");
        return "ra_" + std::to_string(s.loc) + std::to_string(s.status) + bit(s.tr1) + bit(s.tr2) +
               bit(s.vis1) + bit(s.vis2) + bit(s.tkt) + bit(s.ok1) + bit(s.ok2) + bit(s.q1) +
               bit(s.q2) + bit(s.o1) + bit(s.o2);
    };
    b.sig_of = [heuristic](const ReqState& s) {
        Signature g;
        if (s.gone) return g;
        if (s.loc != 0) {
            g.input = {db_tok(s.loc, "inform"), db_tok(s.loc, "conf", "_ok"),
                       db_tok(s.loc, "conf", "_no")};
            g.output = {db_tok(s.loc, "query"), db_tok(s.loc, "buy")};
        }
        g.output.insert("reqagent_resp_f_ok");
        g.output.insert("reqagent_resp_f_no");
        if (heuristic)
            g.internal = {"move_f_c_d1", "move_f_d1_d2"};
        else
            g.internal = {"move_f_c_d1", "move_f_c_d2", "move_f_d1_d2", "move_f_d2_d1"};
        return g;
    };
    b.steps_of = [heuristic](const ReqState& s) {
        std::vector<std::pair<Action, ReqState>> out;
        if (s.gone) return out;
        auto move_to = [&](int d, const Action& act) {
            ReqState t = s;
            t.loc = d;
            (d == 1 ? t.tr1 : t.tr2) = true;
            (d == 1 ? t.vis1 : t.vis2) = true;
            out.push_back({act, t});
        };
        if (s.loc == 0) {
            move_to(1, "move_f_c_d1");
            if (!heuristic) move_to(2, "move_f_c_d2");
        }
        if (s.loc == 1 && !s.vis2 && s.status == 0) move_to(2, "move_f_d1_d2");
        if (s.loc == 2 && !s.vis1 && s.status == 0 && !heuristic) move_to(1, "move_f_d2_d1");
        if (s.loc != 0) {
            int d = s.loc;
            bool qd = d == 1 ? s.q1 : s.q2;
            bool okd = d == 1 ? s.ok1 : s.ok2;
            bool trd = d == 1 ? s.tr1 : s.tr2;
            bool od = d == 1 ? s.o1 : s.o2;
            if (!qd) {
                ReqState t = s;
                (d == 1 ? t.q1 : t.q2) = true;
                out.push_back({db_tok(d, "query"), t});
            }
            {
                ReqState t = s;
                (d == 1 ? t.ok1 : t.ok2) = true;
                out.push_back({db_tok(d, "inform"), t});
            }
            if (okd && !s.tkt && trd && !od) {
                ReqState t = s;
                (d == 1 ? t.o1 : t.o2) = true;
                out.push_back({db_tok(d, "buy"), t});
            }
            {
                ReqState t = s;
                (d == 1 ? t.tr1 : t.tr2) = false;
                if (t.status == 0) {
                    t.tkt = true;
                    t.status = 1;
                }
                out.push_back({db_tok(d, "conf", "_ok"), t});
            }
            {
                ReqState t = s;
                (d == 1 ? t.tr1 : t.tr2) = false;
                if (t.status == 0 && t.vis1 && t.vis2) t.status = 2;
                out.push_back({db_tok(d, "conf", "_no"), t});
            }
        }
        if (s.status == 1 && s.tkt) {
            ReqState t;
            t.gone = true;
            out.push_back({"reqagent_resp_f_ok", t});
        }
        if (s.status == 2) {
            ReqState t;
            t.gone = true;
            out.push_back({"reqagent_resp_f_no", t});
        }
        return out;
    };
    return b.build();
}

struct DbState {
    bool rec = false, avail = false, ord = false;
    auto key() const { return std::tie(rec, avail, ord); }
    bool operator<(const DbState& o) const { return key() < o.key(); }
};

inline Sioa build_db(int d) {
    MachineBuilder<DbState> b;
    b.id = "DBAgt_d" + std::to_string(d);
    b.starts = {DbState{false, true, false}, DbState{false, false, false}};
    b.name_of = [](const DbState& s) {
        return "db_" + bit(s.rec) + bit(s.avail) + bit(s.ord);
    };
    b.sig_of = [d](const DbState&) {
        Signature g;
        g.input = {db_tok(d, "query"), db_tok(d, "buy")};
        g.output = {db_tok(d, "inform"), db_tok(d, "conf", "_ok"), db_tok(d, "conf", "_no")};
        return g;
    };
    b.steps_of = [d](const DbState& s) {
        std::vector<std::pair<Action, DbState>> out;
        {
            DbState t = s;
            t.rec = true;
            out.push_back({db_tok(d, "query"), t});
        }
        {
            DbState t = s;
            t.ord = true;
            out.push_back({db_tok(d, "buy"), t});
        }
        if (s.rec) out.push_back({db_tok(d, "inform"), s});
        if (s.ord && s.avail) {
            DbState t = s;
            t.avail = false;
            t.ord = false;
            out.push_back({db_tok(d, "conf", "_ok"), t});
        }
        if (s.ord && !s.avail) {
            DbState t = s;
            t.ord = false;
            out.push_back({db_tok(d, "conf", "_no"), t});
        }
        return out;
    };
    return b.build();
}

struct SpecState {
    int status = 0;  // notsubmitted, submitted, computed, replied
    int sel = 0;     // 0 none, 1, 2
    bool tr1 = false, tr2 = false;
    bool ok1 = false, ok2 = false;
    bool rt = false, rf = false;
    bool x1 = true, x2 = true;  // remaining query budget per database

    auto key() const { return std::tie(status, sel, tr1, tr2, ok1, ok2, rt, rf, x1, x2); }
    bool operator<(const SpecState& o) const { return key() < o.key(); }
};

/// The specification automaton: one SIOA whose signature window over the
/// database dialogue follows internal select actions, and whose query budget
/// per database bounds the retries before a negative response.
inline Sioa build_spec() {
    MachineBuilder<SpecState> b;
    b.id = "TravelSpec";
    b.starts = {SpecState{}};
    b.name_of = [](const SpecState& s) {
        return "sp_" + std::to_string(s.status) + std::to_string(s.sel) + bit(s.tr1) + bit(s.tr2) +
               bit(s.ok1) + bit(s.ok2) + bit(s.rt) + bit(s.rf) + bit(s.x1) + bit(s.x2);
    };
    b.sig_of = [](const SpecState& s) {
        Signature g;
        g.input = {"request_f"};
        g.output = {"response_f_ok", "response_f_no"};
        if (s.sel != 0) {
            g.input.insert(db_tok(s.sel, "inform"));
            g.input.insert(db_tok(s.sel, "conf", "_ok"));
            g.input.insert(db_tok(s.sel, "conf", "_no"));
            g.output.insert(db_tok(s.sel, "query"));
            g.output.insert(db_tok(s.sel, "buy"));
        }
        g.internal = {"select_d1_f", "select_d2_f"};
        return g;
    };
    b.steps_of = [](const SpecState& s) {
        std::vector<std::pair<Action, SpecState>> out;
        {
            // duplicate requests of the one instantiated id are no-ops, so a
            // late request cannot retract an already computed response
            SpecState t = s;
            if (t.status == 0) t.status = 1;
            out.push_back({"request_f", t});
        }
        for (int d : {1, 2}) {
            SpecState t = s;
            t.sel = d;
            out.push_back({"select_d" + std::to_string(d) + "_f", t});
        }
        if (s.sel != 0) {
            int d = s.sel;
            bool xd = d == 1 ? s.x1 : s.x2;
            bool okd = d == 1 ? s.ok1 : s.ok2;
            bool trd = d == 1 ? s.tr1 : s.tr2;
            if (s.status == 1 && xd) {
                SpecState t = s;
                (d == 1 ? t.x1 : t.x2) = false;
                (d == 1 ? t.tr1 : t.tr2) = true;
                out.push_back({db_tok(d, "query"), t});
            }
            {
                SpecState t = s;
                (d == 1 ? t.ok1 : t.ok2) = true;
                out.push_back({db_tok(d, "inform"), t});
            }
            if (s.status == 1 && okd && trd) out.push_back({db_tok(d, "buy"), s});
            {
                SpecState t = s;
                (d == 1 ? t.tr1 : t.tr2) = false;
                t.rt = true;
                t.status = 2;
                out.push_back({db_tok(d, "conf", "_ok"), t});
            }
            {
                SpecState t = s;
                (d == 1 ? t.tr1 : t.tr2) = false;
                if (!t.x1 && !t.x2) {
                    t.rf = true;
                    t.status = 2;
                }
                out.push_back({db_tok(d, "conf", "_no"), t});
            }
        }
        if (s.rt && s.status == 2) {
            SpecState t = s;
            t.status = 3;
            out.push_back({"response_f_ok", t});
        }
        if (s.rf && s.status == 2) {
            SpecState t = s;
            t.status = 3;
            out.push_back({"response_f_no", t});
        }
        return out;
    };
    return b.build();
}

}  // namespace travel

inline Model travel_agent() {
    Model m;
    for (auto& a :
         {travel::build_client(), travel::build_reqagent("ReqAgt_f", false),
          travel::build_reqagent("ReqAgtH_f", true), travel::build_db(1), travel::build_db(2),
          travel::build_spec()})
        m.automata.emplace(a.id, a);

    Configuration client_init;
    client_init.members["ClientAgt"] = "cl_00000";
    {
        CaDef def;
        def.name = "TravelImpl";
        def.initial = {client_init};
        def.policy.rules.push_back(
            {{"ClientAgt"}, {}, "create_req_f", {"ReqAgt_f"}});
        def.depth = 12;
        m.ca_defs.push_back(def);
    }
    {
        CaDef def;
        def.name = "TravelImplH";
        def.initial = {client_init};
        def.policy.rules.push_back(
            {{"ClientAgt"}, {}, "create_req_f", {"ReqAgtH_f"}});
        def.depth = 12;
        m.ca_defs.push_back(def);
    }
    {
        CaDef def;
        def.name = "TravelImplShallow";
        def.initial = {client_init};
        def.policy.rules.push_back(
            {{"ClientAgt"}, {}, "create_req_f", {"ReqAgt_f"}});
        def.depth = 4;
        m.ca_defs.push_back(def);
    }
    for (int d : {1, 2}) {
        CaDef def;
        def.name = "TravelDB" + std::to_string(d);
        Configuration c1, c2;
        c1.members[travel::build_db(d).id] = "db_010";
        c2.members[travel::build_db(d).id] = "db_000";
        def.initial = {c1, c2};
        def.depth = 6;
        m.ca_defs.push_back(def);
    }

    HideSet iface;
    {
        ActionSet keep{"request_f", "response_f_ok", "response_f_no"};
        ActionSet all;
        for (const auto& [id, a] : m.automata) {
            (void)id;
            auto acts = a.acts();
            all.insert(acts.begin(), acts.end());
        }
        iface = set_minus(all, keep);
    }
    m.hide_sets["iface"] = iface;

    m.derived_defs.push_back({"HiddenImpl", "hide", {}, "TravelImpl", "iface", "", {}});
    m.derived_defs.push_back({"HiddenImplH", "hide", {}, "TravelImplH", "iface", "", {}});
    m.derived_defs.push_back({"HiddenSpec", "hide", {}, "TravelSpec", "iface", "", {}});

    m.bundles.push_back(
        {"heuristic", "creation-mono", "TravelImplH", "TravelImpl", "ReqAgtH_f", "ReqAgt_f", 5, 3});
    finalize_model(m);
    return m;
}

inline const std::map<std::string, std::function<Model()>>& all() {
    static const std::map<std::string, std::function<Model()>> table = {
        {"mobile_phone", mobile_phone},
        {"creation_example", creation_example},
        {"creation_mono", creation_mono},
        {"travel_agent", travel_agent},
    };
    return table;
}

}  // namespace examples
}  // namespace dioa

#endif
