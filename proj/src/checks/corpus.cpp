#include <algorithm>
#include <chrono>

#include "iwasawa/checks.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/fitting.hpp"
#include "iwasawa/numtheory.hpp"
#include "iwasawa/tower.hpp"

namespace iwk::checks {

void CampaignResult::fail(std::string what) {
    passed = false;
    if (failures.size() < 12) failures.push_back(std::move(what));
}

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string describe(const AbelianFieldSpec& spec, const std::vector<Place>& S, const std::vector<Place>& T, int r) {
    return spec.label + " S={" + format_places(S) + "} T={" + format_places(T) + "} r=" + std::to_string(r);
}

std::vector<Place> base_places(const GaloisGroup& gal) {
    std::vector<Place> S{Place{0}};
    for (auto q : gal.ramified_primes()) S.push_back(Place{q});
    std::sort(S.begin(), S.end());
    return S;
}

// S_ram + infinity, and the same with the smallest unramified prime added
std::vector<std::vector<Place>> s_variants(const GaloisGroup& gal) {
    std::vector<std::vector<Place>> out{base_places(gal)};
    for (int64_t q : {2, 3, 5, 7, 11, 13}) {
        if (gal.conductor() % q == 0) continue;
        auto S = out.front();
        S.push_back(Place{q});
        std::sort(S.begin(), S.end());
        out.push_back(S);
        break;
    }
    return out;
}

bool contains(const std::vector<Place>& S, int64_t q) {
    return std::find(S.begin(), S.end(), Place{q}) != S.end();
}

}  // namespace

std::vector<std::vector<int64_t>> unit_subgroups(int64_t m) {
    const int64_t mod = std::max<int64_t>(m, 1);
    std::vector<int64_t> units;
    for (int64_t a = 0; a < mod; ++a)
        if (nt::gcd(a, mod) == 1 || mod == 1) units.push_back(a);
    auto closure = [&](std::vector<int64_t> h, int64_t u) {
        h.insert(std::upper_bound(h.begin(), h.end(), u), u);
        std::vector<int64_t> frontier = h;
        while (!frontier.empty()) {
            std::vector<int64_t> next;
            for (auto a : frontier)
                for (auto b : std::vector<int64_t>(h)) {
                    const int64_t c = nt::mulmod(a, b, mod);
                    if (!std::binary_search(h.begin(), h.end(), c)) {
                        h.insert(std::upper_bound(h.begin(), h.end(), c), c);
                        next.push_back(c);
                    }
                }
            frontier = std::move(next);
        }
        return h;
    };
    std::vector<std::vector<int64_t>> out{{1 % mod}};
    for (size_t k = 0; k < out.size(); ++k)
        for (auto u : units) {
            if (std::binary_search(out[k].begin(), out[k].end(), u)) continue;
            auto h = closure(out[k], u);
            if (std::find(out.begin(), out.end(), h) == out.end()) out.push_back(std::move(h));
        }
    return out;
}

std::vector<AbelianFieldSpec> cm_fields(int max_conductor) {
    std::vector<AbelianFieldSpec> out;
    for (int64_t m = 3; m <= max_conductor; ++m) {
        if (m % 4 == 2) continue;
        for (auto& h : unit_subgroups(m)) {
            if (std::binary_search(h.begin(), h.end(), m - 1)) continue;  // -1 fixed: totally real
            std::string label = "Q(zeta_" + std::to_string(m) + ")";
            if (h.size() > 1) {
                label += "^<";
                for (size_t i = 0; i < h.size(); ++i) label += (i ? "," : "") + std::to_string(h[i]);
                label += ">";
            }
            auto spec = AbelianFieldSpec::make(m, h, label);
            if (GaloisGroup(spec).conductor() != m) continue;
            out.push_back(std::move(spec));
        }
    }
    return out;
}

CampaignResult integrality_campaign(const CampaignConfig& cfg) {
    CampaignResult res{"integrality under Hyp(S,T)"};
    const auto t0 = Clock::now();
    int64_t skipped = 0;
    for (const auto& spec : cm_fields(cfg.max_conductor)) {
        const GaloisGroup gal(spec);
        for (const auto& S : s_variants(gal)) {
            std::vector<int64_t> pool;
            for (auto q : cfg.t_primes)
                if (gal.conductor() % q != 0 && !contains(S, q)) pool.push_back(q);
            for (uint64_t mask = 0; mask < (uint64_t{1} << pool.size()); ++mask) {
                std::vector<Place> T;
                for (size_t i = 0; i < pool.size(); ++i)
                    if (mask >> i & 1) T.push_back(Place{pool[i]});
                if (!check_hyp(spec, S, T).holds) {
                    ++skipped;
                    continue;
                }
                for (int r : cfg.r_values) {
                    ++res.checked;
                    if (!verify_integrality(theta(gal, S, T, r))) res.fail("not integral: " + describe(spec, S, T, r));
                }
            }
        }
    }
    res.note = std::to_string(skipped) + " (S,T) pairs without Hyp skipped";
    res.seconds = since(t0);
    return res;
}

CampaignResult character_campaign(const CampaignConfig& cfg) {
    CampaignResult res{"character components vs generalized Bernoulli numbers"};
    const auto t0 = Clock::now();
    for (const auto& spec : cm_fields(cfg.max_conductor)) {
        const GaloisGroup gal(spec);
        const CharacterTable table(gal.group());
        std::vector<DirichletCharacter> prim;
        for (int chi = 0; chi < table.size(); ++chi)
            prim.push_back(primitive_character(gal, table, table.contragredient(chi)));
        for (const auto& S : s_variants(gal)) {
            for (int r : cfg.r_values) {
                const auto comps = table.decompose(theta_S(gal, S, r));
                for (int chi = 0; chi < table.size(); ++chi) {
                    ++res.checked;
                    if (!(comps[static_cast<size_t>(chi)] == dirichlet_L_nonpos(prim[static_cast<size_t>(chi)], S, r)))
                        res.fail("component mismatch: " + describe(spec, S, {}, r) + " chi=" + std::to_string(chi));
                }
            }
        }
    }
    res.seconds = since(t0);
    return res;
}

namespace {

struct TowerCase {
    AbelianFieldSpec spec;
    int64_t p;
    std::vector<Place> S;
    std::vector<Place> T;
    // With T empty, Theta(r) is p-integral only while Q_p/Z_p(1-r) has no invariants,
    // i.e. while [L(zeta_p):L] does not divide 1-r.
    int64_t period = 0;
    bool admits(int r) const { return period == 0 || (1 - r) % period != 0; }
};

std::vector<TowerCase> tower_corpus(const CampaignConfig& cfg) {
    std::vector<TowerCase> out;
    for (int64_t m : {3, 5, 7, 12}) {
        const auto spec = AbelianFieldSpec::cyclotomic(m);
        for (int64_t p : {3, 5, 7}) {
            std::vector<Place> S{Place{0}, Place{p}};
            for (auto [q, e] : nt::factor(m))
                if (q != p) S.push_back(Place{q});
            std::sort(S.begin(), S.end());
            for (auto v : cfg.t_primes) {
                if ((m * p) % v == 0) continue;
                out.push_back({spec, p, S, {Place{v}}});
                break;
            }
            if (check_hyp_at_p(spec, S, {}, p).holds) out.push_back({spec, p, S, {}, m % p == 0 ? 1 : p - 1});
        }
    }
    return out;
}

}  // namespace

CampaignResult coherence_campaign(const CampaignConfig& cfg) {
    CampaignResult res{"tower coherence"};
    const auto t0 = Clock::now();
    for (const auto& c : tower_corpus(cfg)) {
        for (int N = 1; N <= cfg.tower_precision; ++N) {
            for (int r : cfg.r_values) {
                if (!c.admits(r)) continue;
                ++res.checked;
                const std::string what = describe(c.spec, c.S, c.T, r) + " p=" + std::to_string(c.p) + " N=" + std::to_string(N);
                try {
                    auto t = theta_tower(c.spec, c.S, c.T, c.p, N, cfg.tower_levels, r);
                    auto rep = coherence_check(t);
                    if (!rep.coherent) res.fail("incoherent at level " + std::to_string(*rep.failing_level) + ": " + what);
                } catch (const std::exception& e) {
                    res.fail(what + ": " + e.what());
                }
            }
        }
    }
    res.seconds = since(t0);
    return res;
}

CampaignResult kummer_campaign(const CampaignConfig& cfg) {
    CampaignResult res{"twist congruence"};
    const auto t0 = Clock::now();
    for (const auto& c : tower_corpus(cfg)) {
        if (!c.admits(0) || !FiniteLevelAlgebra(c.spec, c.p, 1, 0).has_cyclotomic_character()) continue;
        for (int N = 1; N <= cfg.tower_precision; ++N) {
            const std::string base = c.spec.label + " p=" + std::to_string(c.p) + " N=" + std::to_string(N);
            try {
                const auto t_0 = theta_tower(c.spec, c.S, c.T, c.p, N, cfg.tower_levels, 0);
                for (int r : cfg.twist_r_values) {
                    if (!c.admits(r)) continue;
                    ++res.checked;
                    const auto t_r = theta_tower(c.spec, c.S, c.T, c.p, N, cfg.tower_levels, r);
                    auto rep = twist_congruence_check(t_r, t_0);
                    if (!rep.congruent)
                        res.fail("congruence fails at level " + std::to_string(*rep.failing_level) + ": " + base +
                                 " r=" + std::to_string(r));
                }
            } catch (const std::exception& e) {
                res.fail(base + ": " + e.what());
            }
        }
    }
    res.seconds = since(t0);
    return res;
}

CampaignResult tower_fitting_campaign(const CampaignConfig& cfg) {
    CampaignResult res{"Fitting ideals along Stickelberger towers"};
    const auto t0 = Clock::now();
    for (const auto& c : tower_corpus(cfg)) {
        for (int N = 1; N <= std::min(cfg.tower_precision, 2); ++N) {
            ++res.checked;
            const std::string what = c.spec.label + " p=" + std::to_string(c.p) + " N=" + std::to_string(N);
            try {
                auto t = theta_tower(c.spec, c.S, c.T, c.p, N, cfg.tower_levels, 0);
                std::vector<AlgebraPtr> algs;
                for (const auto& lv : t.levels) algs.push_back(level_algebra(*lv));
                std::vector<TowerLevel> levels;
                for (size_t n = 0; n < t.levels.size(); ++n) {
                    TowerLevel L{FinPresModule{algs[n], 1, {{to_vec(t.entries[n])}}}, std::nullopt, std::nullopt};
                    if (n > 0) L.projection = level_projection(algs[n], *t.levels[n], algs[n - 1], *t.levels[n - 1]);
                    levels.push_back(std::move(L));
                }
                auto rep = tower_fitting_check(levels);
                if (!rep.all_contained() || !rep.all_equal()) res.fail("projection of Fitting ideals differs: " + what);
            } catch (const std::exception& e) {
                res.fail(what + ": " + e.what());
            }
        }
    }
    res.seconds = since(t0);
    return res;
}

}  // namespace iwk::checks
