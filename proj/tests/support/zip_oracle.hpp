#ifndef DIOA_TESTS_ZIP_ORACLE_HPP
#define DIOA_TESTS_ZIP_ORACLE_HPP

#include <functional>

#include "dioa/behavior.hpp"

// Brute-force decision procedure for zip: enumerate every stuttering
// expansion of the composite and component traces up to the normalization
// bound |beta| + sum |beta_j| and evaluate the zips clauses literally.  Used
// as the independent oracle for the optimized alignment search.

namespace zip_oracle {

using namespace dioa;

inline void expansions(const Trace& t, std::size_t target_len, std::vector<Pretrace>& out) {
    // distribute extra copies over the signature elements of t
    std::size_t sig_count = 0;
    for (const auto& e : t)
        if (e.is_sig()) ++sig_count;
    if (target_len < t.size()) return;
    std::size_t extra = target_len - t.size();

    std::vector<std::size_t> add(sig_count, 0);
    std::function<void(std::size_t, std::size_t)> go = [&](std::size_t i, std::size_t left) {
        if (i + 1 == sig_count) {
            add[i] = left;
            Pretrace g;
            std::size_t k = 0;
            for (const auto& e : t) {
                g.push_back(e);
                if (e.is_sig())
                    for (std::size_t c = 0; c < add[k]; ++c) g.push_back(e);
                if (e.is_sig()) ++k;
            }
            out.push_back(g);
            return;
        }
        for (std::size_t take = 0; take <= left; ++take) {
            add[i] = take;
            go(i + 1, left - take);
        }
    };
    if (sig_count == 0) return;
    go(0, extra);
}

inline bool zip_brute(const Trace& beta, const std::vector<Trace>& parts) {
    std::size_t bound = beta.size();
    for (const auto& p : parts) bound += p.size();
    for (std::size_t len = 1; len <= bound; ++len) {
        std::vector<Pretrace> bs;
        expansions(reduce_pretrace(beta), len, bs);
        if (bs.empty()) continue;
        std::vector<std::vector<Pretrace>> ps(parts.size());
        bool any_empty = false;
        for (std::size_t j = 0; j < parts.size(); ++j) {
            expansions(reduce_pretrace(parts[j]), len, ps[j]);
            if (ps[j].empty()) any_empty = true;
        }
        if (any_empty) continue;
        std::vector<std::size_t> pick(parts.size(), 0);
        for (const auto& g : bs) {
            std::fill(pick.begin(), pick.end(), 0);
            while (true) {
                std::vector<Pretrace> chosen;
                for (std::size_t j = 0; j < parts.size(); ++j) chosen.push_back(ps[j][pick[j]]);
                if (zips_check(g, chosen).ok) return true;
                std::size_t k = parts.size();
                bool done = true;
                while (k > 0) {
                    --k;
                    if (++pick[k] < ps[k].size()) { done = false; break; }
                    pick[k] = 0;
                }
                if (done) break;
            }
        }
    }
    return false;
}

}  // namespace zip_oracle

#endif
