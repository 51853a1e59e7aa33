// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "iwasawa/checks.hpp"

using namespace iwk::checks;

namespace {

struct Criterion {
    int id;
    std::string title;
    double limit_seconds;
    std::function<std::vector<CampaignResult>()> run;
};

}  // namespace

int main(int argc, char** argv) {
    CampaignConfig cfg;
    cfg.data_dir = argc > 1 ? argv[1] : IWK_DATA_DIR;

    const std::vector<Criterion> criteria{
        {1, "integrality of theta_S^T(r) under Hyp(S,T)", 30, [&] { return std::vector{integrality_campaign(cfg)}; }},
        {2, "character components equal L_S(r, chi^-1)", 60, [&] { return std::vector{character_campaign(cfg)}; }},
        {3, "tower coherence under augmentation projections", 120, [&] { return std::vector{coherence_campaign(cfg)}; }},
        {4, "equivariant Kummer congruence mod p^min(N,n+1)", 120, [&] { return std::vector{kummer_campaign(cfg)}; }},
        {5, "Fitting lemma suite (direct sum, base change, E1-sharp, four-term)", 300,
         [&] { return fitting_lemma_campaigns(cfg); }},
        {6, "complex invariants (quasi-isomorphism, additivity, shift parity)", 120,
         [&] { return complex_campaigns(cfg); }},
        {7, "class-module verdicts match exhaustive oracles", 60, [&] { return std::vector{class_module_campaign(cfg)}; }},
    };

    bool all = true;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::vector<CampaignResult> parts;
        std::string crash;
        try {
            parts = c.run();
        } catch (const std::exception& e) {
            crash = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        bool ok = crash.empty() && secs <= c.limit_seconds;
        int64_t checks = 0;
        for (const auto& p : parts) {
            ok = ok && p.passed && p.checked > 0;
            checks += p.checked;
        }
        all = all && ok;
        char timing[64];
        std::snprintf(timing, sizeof timing, "%.2f s (limit %.0f s)", secs, c.limit_seconds);
        std::cout << "criterion " << c.id << ": " << (ok ? "PASS" : "FAIL") << "  " << c.title << "  [" << checks
                  << " checks, " << timing << "]\n";
        if (!crash.empty()) std::cout << "    error: " << crash << "\n";
        for (const auto& p : parts) {
            std::cout << "    " << (p.passed ? "ok  " : "FAIL") << " " << p.name << ": " << p.checked << " checks";
            if (!p.note.empty()) std::cout << "; " << p.note;
            std::cout << "\n";
            for (const auto& f : p.failures) std::cout << "        " << f << "\n";
        }
    }
    std::cout << "criterion 8: PASS  out of scope, nothing claimed: the Iwasawa main conjecture itself, mu-invariant "
                 "statements and vanishing of the ETNC element are not verified; criteria 1-7 cover their computable "
                 "finite-level consequences\n";
    std::cout << (all ? "acceptance: all criteria passed\n" : "acceptance: some criteria FAILED\n");
    return all ? 0 : 1;
}
