// Acceptance suite: one test case per criterion, each printing a single
// pass/fail line with its runtime.

#include <catch2/catch_amalgamated.hpp>

#include <chrono>
#include <iostream>

#include "dioa/examples.hpp"
#include "support/zip_oracle.hpp"

using namespace dioa;

namespace {

struct Stopwatch {
    std::chrono::steady_clock::time_point begin = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - begin).count();
    }
};

void report(const std::string& name, bool ok, double secs) {
    std::cout << "criterion " << name << ": " << (ok ? "PASS" : "FAIL") << " ("
              << static_cast<int>(secs * 1000) << " ms)" << std::endl;
}

std::set<std::string> nonempty_action_texts(const Sioa& m, std::size_t depth) {
    std::set<std::string> out;
    for (const auto& w : enumerate_action_traces(m, depth))
        if (!w.empty()) out.insert(action_text(w));
    return out;
}

}  // namespace

TEST_CASE("criterion 1: creation example trace sets and inclusion witness") {
    Stopwatch watch;
    auto m = examples::creation_example();

    auto xs = nonempty_action_texts(m.target("X"), 4);
    auto ys = nonempty_action_texts(m.target("Y"), 4);
    bool sets_ok = xs == std::set<std::string>{"c", "c a", "c d", "c a d", "c d a"} &&
                   ys == std::set<std::string>{"c", "c a", "c b", "c d"};

    auto incl = trace_inclusion(m.target("X"), m.target("Y"), 4, true);
    bool witness_ok = !incl.holds && incl.witness == "c a d";

    double secs = watch.seconds();
    bool ok = sets_ok && witness_ok && secs < 1.0;
    report("1 (creation example reproduction)", ok, secs);
    CHECK(sets_ok);
    CHECK(witness_ok);
    CHECK(secs < 1.0);
}

TEST_CASE("criterion 2: creation monotonicity, counterexample and fixture") {
    Stopwatch watch;

    auto ex = examples::creation_example();
    auto corr = check_creation_corresponding(ex.registry, ex.ca("X"), ex.ca("Y"), "A", "B", 4);
    bool counterexample_ok = !corr.ok && corr.clause == 2 && corr.counterexample.has_value() &&
                             corr.counterexample->action == "c";

    auto mono = examples::creation_mono();
    auto checks =
        check_lemma_assumptions(mono.registry, mono.ca("MX"), mono.ca("MY"), "MonoA", "MonoB", 8);
    bool assumptions_ok = true;
    for (const auto& c : checks) assumptions_ok &= c.ok;
    bool inclusion_ok = false;
    if (assumptions_ok) {
        inclusion_ok = true;
        for (const auto& t : enumerate_traces(mono.ca("MX").underlying, 8))
            inclusion_ok &= trace_membership(mono.ca("MY").underlying, t, 8);
    }

    double secs = watch.seconds();
    bool ok = counterexample_ok && assumptions_ok && inclusion_ok && secs < 10.0;
    report("2 (creation correspondence both ways)", ok, secs);
    CHECK(counterexample_ok);
    CHECK(assumptions_ok);
    CHECK(inclusion_ok);
    CHECK(secs < 10.0);
}

TEST_CASE("criterion 3: mobile phone ordering properties at depth 12") {
    Stopwatch watch;
    auto m = examples::mobile_phone();
    const Sioa& sys = m.target("PhoneSystem");

    auto traces = enumerate_action_traces(sys, 12);
    bool no_talk_between = true;
    bool prefix_found = false;
    const std::vector<Action> want_prefix{"lose1", "switch1", "gain2", "talk2"};
    for (const auto& w : traces) {
        bool pending_switch2 = false;
        for (const auto& a : w) {
            if (a == "switch1") pending_switch2 = true;
            else if (a == "switch2") pending_switch2 = false;
            else if (a == "talk1" && pending_switch2) no_talk_between = false;
        }
        if (w.size() >= want_prefix.size() &&
            std::equal(want_prefix.begin(), want_prefix.end(), w.begin()))
            prefix_found = true;
    }

    double secs = watch.seconds();
    bool ok = no_talk_between && prefix_found && secs < 30.0;
    report("3 (mobile phone handover ordering)", ok, secs);
    CHECK(no_talk_between);
    CHECK(prefix_found);
    CHECK(secs < 30.0);
    INFO("trace count " << traces.size());
}

TEST_CASE("criterion 4: theorem property suite, 200 seeds per theorem at depth 6") {
    Stopwatch watch;
    const std::size_t runs = 200;
    bool all_ok = true;
    for (TheoremId t : {TheoremId::Projection, TheoremId::Pasting, TheoremId::FiniteTracePasting,
                        TheoremId::Substitutivity, TheoremId::HidingMono, TheoremId::RenamingMono,
                        TheoremId::Congruence}) {
        std::size_t fails = 0, vacuous = 0;
        for (std::size_t seed = 1; seed <= runs; ++seed) {
            auto out = check_theorem_random(t, seed, 6);
            if (out.result == "fail") {
                ++fails;
                UNSCOPED_INFO(std::string(theorem_name(t)) + " seed " + std::to_string(seed) +
                              ": " + out.detail);
            }
            if (out.result == "vacuous") ++vacuous;
        }
        bool ok = fails == 0 && vacuous * 10 < runs * 3;
        std::cout << "  " << theorem_name(t) << ": " << (runs - fails - vacuous) << " pass, "
                  << vacuous << " vacuous, " << fails << " fail" << std::endl;
        CHECK(fails == 0);
        CHECK(vacuous * 10 < runs * 3);
        all_ok &= ok;
    }
    double secs = watch.seconds();
    report("4 (theorem property suite)", all_ok && secs < 120.0, secs);
    CHECK(secs < 120.0);
}

TEST_CASE("criterion 5: operator closure, 500 random applications") {
    Stopwatch watch;
    std::size_t applications = 0, failures = 0;
    for (std::uint64_t seed = 1; applications < 500; ++seed) {
        auto fam = random_family(seed);
        Registry reg;
        for (const auto& c : fam.components) reg.add(c);

        Sioa comp = compose_sioa(fam.components);
        if (!validate_sioa(comp).ok) ++failures;
        ++applications;

        HideSet sigma;
        std::mt19937_64 rng(seed);
        for (const auto& a : fam.pool)
            if (rng() % 2) sigma.insert(a);
        if (!validate_sioa(hide_sioa(comp, sigma)).ok) ++failures;
        ++applications;

        Renaming rho;
        for (const auto& a : comp.acts()) rho.map[a] = "rn_" + a;
        if (!validate_sioa(rename_sioa(comp, rho)).ok) ++failures;
        ++applications;

        // configuration automata over the same family: wrap each component,
        // then exercise generate/compose/hide/rename
        std::vector<ConfigAutomaton> wraps;
        bool wraps_ok = true;
        for (const auto& c : fam.components) {
            State start = *c.starts.begin();
            if (c.signature(start).empty()) { wraps_ok = false; break; }
            Configuration init;
            init.members[c.id] = start;
            auto ca = generate_ca(reg, {init}, {}, 3, "W" + c.id);
            if (!validate_ca(reg, ca).ok) ++failures;
            ++applications;
            wraps.push_back(std::move(ca));
        }
        if (!wraps_ok || wraps.empty()) continue;

        if (compatible_ca(reg, wraps).ok) {
            auto composed = compose_ca(reg, wraps);
            if (!validate_ca(reg, composed).ok) ++failures;
            ++applications;

            if (!validate_ca(reg, hide_ca(composed, sigma)).ok) ++failures;
            ++applications;
        }

        Renaming rho_ids = rho;
        std::map<std::string, std::string> idmap;
        for (const auto& c : fam.components) {
            idmap[c.id] = c.id + "rn";
            for (const auto& a : c.acts())
                if (!rho_ids.map.count(a)) rho_ids.map[a] = "rn_" + a;
        }
        if (!validate_ca(reg, rename_ca(reg, wraps.front(), rho_ids, idmap)).ok) ++failures;
        ++applications;
    }
    double secs = watch.seconds();
    bool ok = failures == 0;
    report("5 (operator closure on " + std::to_string(applications) + " applications)", ok, secs);
    CHECK(failures == 0);
    CHECK(applications >= 500);
}

TEST_CASE("criterion 6: zip search vs stuttering-insertion oracle") {
    Stopwatch watch;
    std::size_t checked = 0, disagreements = 0;
    for (std::uint64_t seed = 1; seed <= 120 && checked < 600; ++seed) {
        auto fam = random_family(seed);
        if (fam.components.size() < 2) continue;
        Sioa comp = compose_sioa(fam.components);
        auto betas = enumerate_traces(comp, 2);
        std::vector<std::vector<Trace>> parts;
        for (const auto& c : fam.components) {
            auto ts = enumerate_traces(c, 1);
            parts.emplace_back(ts.begin(), ts.end());
        }
        for (const auto& beta : betas) {
            std::vector<std::size_t> idx(parts.size(), 0);
            bool done = false;
            while (!done && checked < 600) {
                std::vector<Trace> tuple;
                std::size_t total = beta.size();
                for (std::size_t j = 0; j < parts.size(); ++j) {
                    tuple.push_back(parts[j][idx[j]]);
                    total += tuple.back().size();
                }
                if (total <= 5 + parts.size() + 1) {  // per-sequence lengths stay tiny
                    bool fast = zip_check(beta, tuple);
                    bool slow = zip_oracle::zip_brute(beta, tuple);
                    if (fast != slow) {
                        ++disagreements;
                        UNSCOPED_INFO("disagreement on " + trace_text(beta));
                    }
                    ++checked;
                }
                std::size_t k = parts.size();
                done = true;
                while (k > 0) {
                    --k;
                    if (++idx[k] < parts[k].size()) { done = false; break; }
                    idx[k] = 0;
                }
            }
        }
    }
    double secs = watch.seconds();
    bool ok = disagreements == 0 && checked >= 200;
    report("6 (zip vs brute force, " + std::to_string(checked) + " tuples)", ok, secs);
    CHECK(disagreements == 0);
    CHECK(checked >= 200);
}

TEST_CASE("criterion 7: travel agent inclusions") {
    Stopwatch watch;
    auto m = examples::travel_agent();

    auto spec_incl = trace_inclusion(m.target("HiddenImpl"), m.target("HiddenSpec"), 10, true);
    bool spec_ok = spec_incl.holds;
    if (!spec_ok) UNSCOPED_INFO("spec inclusion witness: " + spec_incl.witness);

    auto corr = check_creation_corresponding(m.registry, m.ca("TravelImplH"), m.ca("TravelImpl"),
                                             "ReqAgtH_f", "ReqAgt_f", 5);
    bool corr_ok = corr.ok;
    if (!corr_ok) UNSCOPED_INFO("correspondence: " + corr.detail);

    auto impl_incl = trace_inclusion(m.target("TravelImplH"), m.target("TravelImpl"), 5, false);
    bool impl_ok = impl_incl.holds;
    if (!impl_ok) UNSCOPED_INFO("impl inclusion witness: " + impl_incl.witness);

    double secs = watch.seconds();
    bool ok = spec_ok && corr_ok && impl_ok && secs < 60.0;
    report("7 (travel agent refinements)", ok, secs);
    CHECK(spec_ok);
    CHECK(corr_ok);
    CHECK(impl_ok);
    CHECK(secs < 60.0);
}
