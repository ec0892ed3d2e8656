// Command-line front end: model validation, operator application, bounded
// trace exploration, inclusion checking, and the theorem oracle battery.
//
// Exit codes: 0 = pass/ok, 1 = a checked property fails (witness printed),
// 2 = usage or validation error.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "dioa/examples.hpp"
#include "dioa/model_io.hpp"

using namespace dioa;

namespace {

std::size_t default_depth() {
    if (const char* env = std::getenv("DIOA_DEPTH_DEFAULT")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end && *end == '\0') return static_cast<std::size_t>(v);
    }
    return 6;
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

Model load_or_exit(const std::string& path) {
    Model m = load_model(path);
    for (const auto& w : m.warnings) std::cerr << "warning: " << w << "\n";
    return m;
}

void emit_single_automaton(const Sioa& a, const std::string& path) {
    Model out;
    out.automata.emplace(a.id, a);
    json j;
    j["dioa_schema"] = 1;
    j["automata"] = json::array();
    j["automata"].push_back(sioa_to_json(a));
    std::ofstream f(path);
    if (!f) throw Error("cannot write '" + path + "'");
    f << j.dump(2) << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"dynamic I/O automata workbench"};
    app.require_subcommand(1);

    std::string model_path, target, left, right, out_path, out_id, set_name, actions_csv,
        renaming_name, autos_csv, bundle_name, theorem_id, ca_name, example_name, emit_dir = ".";
    std::size_t depth = default_depth();
    std::uint64_t seed = 1;
    std::size_t count = 1;
    bool actions_only = false, as_json = false;

    auto* validate = app.add_subcommand("validate", "validate a model file");
    validate->add_option("model", model_path)->required();

    auto* compose = app.add_subcommand("compose", "compose automata from a model");
    compose->add_option("model", model_path)->required();
    compose->add_option("--autos", autos_csv, "comma-separated automaton ids")->required();
    compose->add_option("--out", out_path);
    compose->add_option("--id", out_id);

    auto* hide = app.add_subcommand("hide", "hide output actions of an automaton");
    hide->add_option("model", model_path)->required();
    hide->add_option("--target", target)->required();
    hide->add_option("--set", set_name, "named hide set from the model");
    hide->add_option("--actions", actions_csv, "explicit comma-separated actions");
    hide->add_option("--out", out_path);
    hide->add_option("--id", out_id);

    auto* rename = app.add_subcommand("rename", "rename actions of an automaton");
    rename->add_option("model", model_path)->required();
    rename->add_option("--target", target)->required();
    rename->add_option("--renaming", renaming_name)->required();
    rename->add_option("--out", out_path);
    rename->add_option("--id", out_id);

    auto* traces = app.add_subcommand("traces", "enumerate bounded-depth traces");
    traces->add_option("model", model_path)->required();
    traces->add_option("--target", target)->required();
    traces->add_option("--depth", depth);
    traces->add_flag("--actions-only", actions_only);

    auto* incl = app.add_subcommand("check-inclusion", "bounded trace inclusion");
    incl->add_option("model", model_path)->required();
    incl->add_option("--left", left)->required();
    incl->add_option("--right", right)->required();
    incl->add_option("--depth", depth);
    incl->add_flag("--actions-only", actions_only);

    auto* ca = app.add_subcommand("ca", "configuration automaton commands");
    auto* ca_gen = ca->add_subcommand("generate", "generate and validate a configuration automaton");
    ca_gen->add_option("model", model_path)->required();
    ca_gen->add_option("--name", ca_name)->required();

    auto* check = app.add_subcommand("check", "checks");
    auto* check_thm = check->add_subcommand("theorem", "run a theorem oracle");
    check_thm->add_option("--id", theorem_id)->required();
    check_thm->add_option("--bundle", bundle_name, "'random' or a bundle name")->required();
    check_thm->add_option("--model", model_path, "model file for named bundles");
    check_thm->add_option("--depth", depth);
    check_thm->add_option("--seed", seed);
    check_thm->add_option("--count", count);
    check_thm->add_flag("--json", as_json);

    auto* ex = app.add_subcommand("examples", "bundled example models");
    auto* ex_list = ex->add_subcommand("list", "list bundled examples");
    auto* ex_emit = ex->add_subcommand("emit", "write bundled examples as model files");
    ex_emit->add_option("--dir", emit_dir);
    ex_emit->add_option("--name", example_name, "emit a single example");

    CLI11_PARSE(app, argc, argv);

    if (*validate) {
        Model m = load_or_exit(model_path);
        std::cout << "ok: " << m.automata.size() << " automata, " << m.cas.size()
                  << " configuration automata, " << m.bundles.size() << " bundles\n";
        return 0;
    }

    if (*compose) {
        Model m = load_or_exit(model_path);
        std::vector<Sioa> parts;
        for (const auto& id : split_csv(autos_csv)) parts.push_back(m.target(id));
        auto compat = compatible_sioa(parts);
        if (!compat.ok) {
            std::cout << "incompatible at " << make_tuple_id(compat.witness) << ": " << compat.why
                      << "\n";
            return 1;
        }
        Sioa composed = compose_sioa(parts);
        if (!out_id.empty()) composed.id = out_id;
        std::cout << composed.id << ": " << composed.states.size() << " states, "
                  << composed.steps.size() << " steps\n";
        if (!out_path.empty()) emit_single_automaton(composed, out_path);
        return 0;
    }

    if (*hide) {
        Model m = load_or_exit(model_path);
        HideSet sigma;
        if (!set_name.empty()) {
            auto it = m.hide_sets.find(set_name);
            if (it == m.hide_sets.end()) throw Error("unknown hide set '" + set_name + "'");
            sigma = it->second;
        }
        for (const auto& a : split_csv(actions_csv)) sigma.insert(a);
        Sioa hidden = hide_sioa(m.target(target), sigma, out_id);
        std::cout << hidden.id << ": " << hidden.states.size() << " states\n";
        if (!out_path.empty()) emit_single_automaton(hidden, out_path);
        return 0;
    }

    if (*rename) {
        Model m = load_or_exit(model_path);
        auto it = m.renamings.find(renaming_name);
        if (it == m.renamings.end()) throw Error("unknown renaming '" + renaming_name + "'");
        Sioa renamed = rename_sioa(m.target(target), it->second, out_id);
        std::cout << renamed.id << ": " << renamed.states.size() << " states\n";
        if (!out_path.empty()) emit_single_automaton(renamed, out_path);
        return 0;
    }

    if (*traces) {
        Model m = load_or_exit(model_path);
        const Sioa& t = m.target(target);
        if (actions_only) {
            for (const auto& w : enumerate_action_traces(t, depth))
                std::cout << (w.empty() ? "(empty)" : action_text(w)) << "\n";
        } else {
            for (const auto& tr : enumerate_traces(t, depth)) std::cout << trace_text(tr) << "\n";
        }
        return 0;
    }

    if (*incl) {
        Model m = load_or_exit(model_path);
        auto res = trace_inclusion(m.target(left), m.target(right), depth, actions_only);
        if (res.holds) {
            std::cout << "inclusion holds at depth " << depth << "\n";
            return 0;
        }
        std::cout << "inclusion fails; witness: " << res.witness << "\n";
        return 1;
    }

    if (*ca_gen) {
        Model m = load_or_exit(model_path);
        const auto& x = m.ca(ca_name);
        auto rep = validate_ca(m.registry, x);
        std::cout << x.name << ": " << x.underlying.states.size() << " states, "
                  << x.underlying.steps.size() << " steps, " << x.frontier.size()
                  << " frontier\n";
        if (!rep.ok) {
            std::cout << rep.text();
            return 1;
        }
        std::cout << "constraints 1-4 hold on explored states\n";
        return 0;
    }

    if (*check_thm) {
        auto tid = parse_theorem(theorem_id);
        if (!tid) throw Error("unknown theorem id '" + theorem_id + "'");
        std::vector<TheoremOutcome> outcomes;
        if (bundle_name == "random") {
            for (std::size_t i = 0; i < count; ++i)
                outcomes.push_back(check_theorem_random(*tid, seed + i, depth));
        } else {
            if (model_path.empty()) throw Error("named bundles need --model");
            Model m = load_or_exit(model_path);
            const auto& b = m.bundle(bundle_name);
            if (*tid != TheoremId::CreationMono)
                throw Error("bundle '" + bundle_name + "' drives creation-mono only");
            outcomes.push_back(check_creation_mono(m.registry, m.ca(b.left), m.ca(b.right),
                                                   b.member_a, b.member_b, b.depth, b.slack));
        }
        bool failed = false;
        for (std::size_t i = 0; i < outcomes.size(); ++i) {
            const auto& o = outcomes[i];
            if (as_json) {
                json j{{"theorem", theorem_name(*tid)},
                       {"result", o.result},
                       {"witness", o.detail}};
                std::cout << j.dump() << "\n";
            } else {
                std::cout << theorem_name(*tid) << " [" << (seed + i) << "]: " << o.result;
                if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
                std::cout << "\n";
            }
            if (o.result == "fail") failed = true;
        }
        return failed ? 1 : 0;
    }

    if (*ex_list) {
        for (const auto& [name, build] : examples::all()) {
            (void)build;
            std::cout << name << "\n";
        }
        return 0;
    }

    if (*ex_emit) {
        for (const auto& [name, build] : examples::all()) {
            if (!example_name.empty() && name != example_name) continue;
            Model m = build();
            std::string path = emit_dir + "/" + name + ".dioa.json";
            save_model(m, path);
            std::cout << path << "\n";
        }
        return 0;
    }

    std::cerr << app.help();
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
