#ifndef DIOA_MODEL_IO_HPP
#define DIOA_MODEL_IO_HPP

#include <fstream>

#include <json.hpp>

#include "dioa/config_automata.hpp"
#include "dioa/explorer.hpp"

namespace dioa {

using nlohmann::json;

struct CaDef {
    std::string name;
    std::vector<Configuration> initial;
    CreationPolicy policy;
    std::size_t depth = 8;
    std::size_t slack = 3;
};

struct DerivedDef {
    std::string id;
    std::string op;  // compose | hide | rename
    std::vector<std::string> components;
    std::string target;
    std::string hide_set;
    std::string renaming;
    std::map<std::string, std::string> id_map;
};

struct TheoremBundle {
    std::string name;
    std::string theorem;
    std::string left;
    std::string right;
    std::string member_a;
    std::string member_b;
    std::size_t depth = 6;
    std::size_t slack = 3;
};

/// A loaded model: base automata, generated configuration automata, derived
/// operator results, and named helpers.  Loading is total-or-error.
struct Model {
    std::map<std::string, Sioa> automata;  // base definitions, as in the file
    std::vector<CaDef> ca_defs;
    std::vector<DerivedDef> derived_defs;
    std::map<std::string, Renaming> renamings;
    std::map<std::string, HideSet> hide_sets;
    std::vector<TheoremBundle> bundles;

    Registry registry;                             // base + derived SIOA
    std::map<std::string, ConfigAutomaton> cas;    // generated + derived CAs
    std::vector<std::string> warnings;

    bool has_target(const std::string& name) const {
        return registry.has(name) || cas.count(name) != 0;
    }

    /// Resolves a name to the SIOA view used by the explorer: plain automata
    /// directly, configuration automata through their underlying SIOA.
    const Sioa& target(const std::string& name) const {
        auto it = cas.find(name);
        if (it != cas.end()) return it->second.underlying;
        return registry.at(name);
    }

    const ConfigAutomaton& ca(const std::string& name) const {
        auto it = cas.find(name);
        if (it == cas.end()) throw Error("unknown configuration automaton '" + name + "'");
        return it->second;
    }

    const TheoremBundle& bundle(const std::string& name) const {
        for (const auto& b : bundles)
            if (b.name == name) return b;
        throw Error("unknown theorem bundle '" + name + "'");
    }
};

namespace detail {

inline ActionSet to_action_set(const json& j) {
    ActionSet r;
    for (const auto& a : j) r.insert(a.get<std::string>());
    return r;
}

inline json from_action_set(const ActionSet& s) {
    json j = json::array();
    for (const auto& a : s) j.push_back(a);
    return j;
}

inline void check_token(const std::string& t, const std::string& what) {
    if (t.empty()) throw Error(what + ": empty token");
    for (char c : t)
        if (std::isspace(static_cast<unsigned char>(c)) || std::string("(),[]|@").find(c) != std::string::npos)
            throw Error(what + ": token '" + t + "' contains a reserved character");
}

}  // namespace detail

inline json sioa_to_json(const Sioa& a) {
    json j;
    j["id"] = a.id;
    j["states"] = json::array();
    for (const auto& s : a.states) j["states"].push_back(s);
    j["starts"] = json::array();
    for (const auto& s : a.starts) j["starts"].push_back(s);
    j["signatures"] = json::object();
    for (const auto& [s, g] : a.sig)
        j["signatures"][s] = {{"input", detail::from_action_set(g.input)},
                              {"output", detail::from_action_set(g.output)},
                              {"internal", detail::from_action_set(g.internal)}};
    j["steps"] = json::array();
    for (const auto& st : a.steps) j["steps"].push_back({st.src, st.action, st.dst});
    return j;
}

inline Sioa sioa_from_json(const json& j) {
    Sioa a;
    a.id = j.at("id").get<std::string>();
    detail::check_token(a.id, "automaton id");
    for (const auto& s : j.at("states")) {
        State st = s.get<std::string>();
        detail::check_token(st, "state of " + a.id);
        a.states.insert(st);
    }
    for (const auto& s : j.at("starts")) a.starts.insert(s.get<std::string>());
    for (const auto& [s, g] : j.at("signatures").items()) {
        Signature sig;
        sig.input = detail::to_action_set(g.at("input"));
        sig.output = detail::to_action_set(g.at("output"));
        sig.internal = detail::to_action_set(g.at("internal"));
        for (const auto& set : {sig.input, sig.output, sig.internal})
            for (const auto& act : set) detail::check_token(act, "action of " + a.id);
        a.sig[s] = sig;
    }
    for (const auto& st : j.at("steps")) {
        if (!st.is_array() || st.size() != 3)
            throw Error(a.id + ": step entries must be [src, action, dst] triples");
        a.steps.insert({st[0].get<std::string>(), st[1].get<std::string>(), st[2].get<std::string>()});
    }
    return a;
}

inline json model_to_json(const Model& m) {
    json j;
    j["dioa_schema"] = 1;
    j["automata"] = json::array();
    for (const auto& [id, a] : m.automata) {
        (void)id;
        j["automata"].push_back(sioa_to_json(a));
    }
    if (!m.renamings.empty()) {
        j["renamings"] = json::object();
        for (const auto& [name, rho] : m.renamings) {
            json r = json::object();
            for (const auto& [from, to] : rho.map) r[from] = to;
            j["renamings"][name] = r;
        }
    }
    if (!m.hide_sets.empty()) {
        j["hide_sets"] = json::object();
        for (const auto& [name, set] : m.hide_sets)
            j["hide_sets"][name] = detail::from_action_set(set);
    }
    if (!m.ca_defs.empty()) {
        j["configuration_automata"] = json::array();
        for (const auto& def : m.ca_defs) {
            json c;
            c["name"] = def.name;
            c["initial"] = json::array();
            for (const auto& cfg : def.initial) {
                json members = json::object();
                for (const auto& [id, s] : cfg.members) members[id] = s;
                c["initial"].push_back(members);
            }
            c["policy"] = json::array();
            for (const auto& rule : def.policy.rules) {
                json r;
                r["config_members"] = json::array();
                for (const auto& id : rule.members) r["config_members"].push_back(id);
                r["state_constraints"] = json::object();
                for (const auto& [id, s] : rule.state_constraints) r["state_constraints"][id] = s;
                r["action"] = rule.action;
                r["create"] = json::array();
                for (const auto& id : rule.create) r["create"].push_back(id);
                c["policy"].push_back(r);
            }
            c["depth"] = def.depth;
            c["slack"] = def.slack;
            j["configuration_automata"].push_back(c);
        }
    }
    if (!m.derived_defs.empty()) {
        j["derived"] = json::array();
        for (const auto& d : m.derived_defs) {
            json r;
            r["id"] = d.id;
            r["op"] = d.op;
            if (!d.components.empty()) {
                r["components"] = json::array();
                for (const auto& c : d.components) r["components"].push_back(c);
            }
            if (!d.target.empty()) r["target"] = d.target;
            if (!d.hide_set.empty()) r["hide_set"] = d.hide_set;
            if (!d.renaming.empty()) r["renaming"] = d.renaming;
            if (!d.id_map.empty()) {
                r["id_map"] = json::object();
                for (const auto& [from, to] : d.id_map) r["id_map"][from] = to;
            }
            j["derived"].push_back(r);
        }
    }
    if (!m.bundles.empty()) {
        j["theorem_bundles"] = json::array();
        for (const auto& b : m.bundles) {
            json r;
            r["name"] = b.name;
            r["theorem"] = b.theorem;
            if (!b.left.empty()) r["left"] = b.left;
            if (!b.right.empty()) r["right"] = b.right;
            if (!b.member_a.empty()) r["member_a"] = b.member_a;
            if (!b.member_b.empty()) r["member_b"] = b.member_b;
            r["depth"] = b.depth;
            r["slack"] = b.slack;
            j["theorem_bundles"].push_back(r);
        }
    }
    return j;
}

inline std::string model_text(const Model& m) { return model_to_json(m).dump(2) + "\n"; }

/// Resolves derived definitions and generates configuration automata, filling
/// the registry and CA table.  Every SIOA must validate; the whole load fails
/// otherwise.
inline void finalize_model(Model& m) {
    for (const auto& [id, a] : m.automata) {
        (void)id;
        auto rep = validate_sioa(a);
        if (!rep.ok) throw Error("automaton " + a.id + " is not a valid SIOA:\n" + rep.text());
        std::string why;
        if (!destruction_deterministic(a, &why))
            m.warnings.push_back("destruction nondeterminism: " + why);
        m.registry.add(a);
    }
    for (const auto& def : m.ca_defs) {
        for (const auto& rule : def.policy.rules)
            for (const auto& id : rule.create)
                if (!m.registry.has(id))
                    throw Error("configuration automaton " + def.name +
                                ": policy creates unknown automaton '" + id + "'");
        auto ca = generate_ca(m.registry, def.initial, def.policy, def.depth, def.name);
        if (m.cas.count(def.name) || m.registry.has(def.name))
            throw Error("duplicate target name '" + def.name + "'");
        m.cas.emplace(def.name, std::move(ca));
    }
    for (const auto& d : m.derived_defs) {
        if (m.cas.count(d.id) || m.registry.has(d.id))
            throw Error("duplicate target name '" + d.id + "'");
        auto is_ca = [&](const std::string& name) { return m.cas.count(name) != 0; };
        if (d.op == "compose") {
            if (d.components.empty()) throw Error("derived " + d.id + ": no components");
            bool all_ca = true, all_sioa = true;
            for (const auto& c : d.components) {
                if (!is_ca(c)) all_ca = false;
                if (!m.registry.has(c)) all_sioa = false;
            }
            if (all_ca) {
                std::vector<ConfigAutomaton> parts;
                for (const auto& c : d.components) parts.push_back(m.cas.at(c));
                auto ca = compose_ca(m.registry, parts);
                ca.name = d.id;
                ca.underlying.id = d.id;
                m.cas.emplace(d.id, std::move(ca));
            } else if (all_sioa) {
                std::vector<Sioa> parts;
                for (const auto& c : d.components) parts.push_back(m.registry.at(c));
                Sioa composed = compose_sioa(parts);
                composed.id = d.id;
                m.registry.add(composed);
            } else {
                throw Error("derived " + d.id + ": components must be all SIOA or all CAs");
            }
        } else if (d.op == "hide") {
            auto it = m.hide_sets.find(d.hide_set);
            if (it == m.hide_sets.end())
                throw Error("derived " + d.id + ": unknown hide set '" + d.hide_set + "'");
            if (is_ca(d.target)) {
                m.cas.emplace(d.id, hide_ca(m.cas.at(d.target), it->second, d.id));
            } else {
                m.registry.add(hide_sioa(m.registry.at(d.target), it->second, d.id));
            }
        } else if (d.op == "rename") {
            auto it = m.renamings.find(d.renaming);
            if (it == m.renamings.end())
                throw Error("derived " + d.id + ": unknown renaming '" + d.renaming + "'");
            if (is_ca(d.target)) {
                m.cas.emplace(d.id,
                              rename_ca(m.registry, m.cas.at(d.target), it->second, d.id_map, d.id));
            } else {
                m.registry.add(rename_sioa(m.registry.at(d.target), it->second, d.id));
            }
        } else {
            throw Error("derived " + d.id + ": unknown op '" + d.op + "'");
        }
    }
}

inline Model model_from_json(const json& j) {
    Model m;
    if (!j.contains("dioa_schema") || j.at("dioa_schema").get<int>() != 1)
        throw Error("model file must declare \"dioa_schema\": 1");
    for (const auto& a : j.at("automata")) {
        Sioa s = sioa_from_json(a);
        if (m.automata.count(s.id)) throw Error("duplicate automaton id '" + s.id + "'");
        m.automata.emplace(s.id, std::move(s));
    }
    if (j.contains("renamings"))
        for (const auto& [name, r] : j.at("renamings").items()) {
            Renaming rho;
            for (const auto& [from, to] : r.items()) rho.map[from] = to.get<std::string>();
            if (!rho.injective()) throw Error("renaming '" + name + "' is not injective");
            m.renamings[name] = rho;
        }
    if (j.contains("hide_sets"))
        for (const auto& [name, set] : j.at("hide_sets").items())
            m.hide_sets[name] = detail::to_action_set(set);
    if (j.contains("configuration_automata"))
        for (const auto& c : j.at("configuration_automata")) {
            CaDef def;
            def.name = c.at("name").get<std::string>();
            for (const auto& cfg : c.at("initial")) {
                Configuration conf;
                for (const auto& [id, s] : cfg.items()) conf.members[id] = s.get<std::string>();
                def.initial.push_back(conf);
            }
            for (const auto& r : c.at("policy")) {
                CreationRule rule;
                for (const auto& id : r.at("config_members")) rule.members.insert(id.get<std::string>());
                if (r.contains("state_constraints"))
                    for (const auto& [id, s] : r.at("state_constraints").items())
                        rule.state_constraints[id] = s.get<std::string>();
                rule.action = r.at("action").get<std::string>();
                for (const auto& id : r.at("create")) rule.create.insert(id.get<std::string>());
                def.policy.rules.push_back(rule);
            }
            def.depth = c.at("depth").get<std::size_t>();
            if (c.contains("slack")) def.slack = c.at("slack").get<std::size_t>();
            m.ca_defs.push_back(def);
        }
    if (j.contains("derived"))
        for (const auto& r : j.at("derived")) {
            DerivedDef d;
            d.id = r.at("id").get<std::string>();
            d.op = r.at("op").get<std::string>();
            if (r.contains("components"))
                for (const auto& c : r.at("components")) d.components.push_back(c.get<std::string>());
            if (r.contains("target")) d.target = r.at("target").get<std::string>();
            if (r.contains("hide_set")) d.hide_set = r.at("hide_set").get<std::string>();
            if (r.contains("renaming")) d.renaming = r.at("renaming").get<std::string>();
            if (r.contains("id_map"))
                for (const auto& [from, to] : r.at("id_map").items())
                    d.id_map[from] = to.get<std::string>();
            m.derived_defs.push_back(d);
        }
    if (j.contains("theorem_bundles"))
        for (const auto& r : j.at("theorem_bundles")) {
            TheoremBundle b;
            b.name = r.at("name").get<std::string>();
            b.theorem = r.at("theorem").get<std::string>();
            if (r.contains("left")) b.left = r.at("left").get<std::string>();
            if (r.contains("right")) b.right = r.at("right").get<std::string>();
            if (r.contains("member_a")) b.member_a = r.at("member_a").get<std::string>();
            if (r.contains("member_b")) b.member_b = r.at("member_b").get<std::string>();
            if (r.contains("depth")) b.depth = r.at("depth").get<std::size_t>();
            if (r.contains("slack")) b.slack = r.at("slack").get<std::size_t>();
            m.bundles.push_back(b);
        }
    finalize_model(m);
    return m;
}

inline Model load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open model file '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw Error("parse error in '" + path + "': " + e.what());
    }
    try {
        return model_from_json(j);
    } catch (const Error& e) {
        throw Error(path + ": " + e.what());
    }
}

inline void save_model(const Model& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write model file '" + path + "'");
    out << model_text(m);
}

}  // namespace dioa

#endif
