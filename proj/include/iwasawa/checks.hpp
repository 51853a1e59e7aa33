#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/abelian_field.hpp"
#include "iwasawa/class_module.hpp"
#include "iwasawa/stickelberger.hpp"

namespace iwk::checks {

/// Outcome of one verification campaign.
struct CampaignResult {
    CampaignResult() = default;
    explicit CampaignResult(std::string n) : name(std::move(n)) {}

    std::string name;
    bool passed = true;
    int64_t checked = 0;
    std::vector<std::string> failures;  // first few failures, human readable
    std::string note;
    double seconds = 0;

    void fail(std::string what);
};

/// Bounds shared by the campaigns.
struct CampaignConfig {
    uint64_t seed = 20240611;
    int max_conductor = 24;
    std::vector<int64_t> t_primes{2, 5, 7, 11, 13};
    std::vector<int> r_values{0, -1, -2};
    std::vector<int> twist_r_values{-1, -2, -3};
    int tower_levels = 2;  // n_max
    int tower_precision = 3;
    int lemma_trials = 200;
    int complex_instances = 100;
    std::string data_dir;  // class-module data files
};

/// All CM fields of conductor at most max_conductor, one spec per field.
std::vector<AbelianFieldSpec> cm_fields(int max_conductor);
/// Every subgroup of (Z/m)^x.
std::vector<std::vector<int64_t>> unit_subgroups(int64_t m);

/// Theta_S^T(r) integral whenever Hyp(S, T) holds.
CampaignResult integrality_campaign(const CampaignConfig& cfg);
/// Character components of theta_S(r) against generalized Bernoulli numbers.
CampaignResult character_campaign(const CampaignConfig& cfg);
/// Adjacent projections of Theta(L_n, r) agree.
CampaignResult coherence_campaign(const CampaignConfig& cfg);
/// Theta(L_n, r) = twist(Theta(L_n, 0), r) mod p^{min(N, n+1)}.
CampaignResult kummer_campaign(const CampaignConfig& cfg);
/// Fitting lemmas on random presentations; one result per lemma.
std::vector<CampaignResult> fitting_lemma_campaigns(const CampaignConfig& cfg);
/// Euler-Fitting invariants: quasi-isomorphism invariance, additivity, shift parity.
std::vector<CampaignResult> complex_campaigns(const CampaignConfig& cfg);
/// Class-module verdicts against exhaustive oracles.
CampaignResult class_module_campaign(const CampaignConfig& cfg);

/// Tower-level Fitting ideals for principal Stickelberger towers, and the cancellation lemma.
CampaignResult tower_fitting_campaign(const CampaignConfig& cfg);
CampaignResult cancellation_campaign(const CampaignConfig& cfg);

/// Exhaustive oracle: apply theta to every element of M.
bool annihilation_oracle(const StickelbergerElement& theta, const ClassModuleData& m);

/// Independent membership oracle for theta^# in Fitt((M_p^-)^dual); nullopt when no oracle applies.
/// Uses Teichmueller characters when the exponent of G divides p - 1, and the
/// annihilator of the minus part when the dual is cyclic.
std::optional<bool> fitting_membership_oracle(const StickelbergerElement& theta, const ClassModuleData& m, int64_t p,
                                              int N);

/// A class-module data file: the field, the module, and place sets to test against.
struct ClassModuleCase {
    std::string file;
    AbelianFieldSpec spec;
    ClassModuleData module;
    int64_t p = 3;
    int N = 2;
    bool expect_annihilation = false;  // tabulated class group: Stickelberger elements must annihilate
};
std::vector<ClassModuleCase> load_class_module_cases(const std::string& dir);

}  // namespace iwk::checks
