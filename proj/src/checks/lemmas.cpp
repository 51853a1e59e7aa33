#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "iwasawa/checks.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/fitting.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk::checks {

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct TestAlgebra {
    std::string name;
    GroupPtr group;
    AlgebraPtr algebra;
    std::vector<AlgebraHom> homs;  // targets for base change
    bool small = false;            // at most 2^10 elements: brute-force oracle applies
};

GroupPtr make_group(std::vector<int64_t> orders) { return std::make_shared<const FiniteAbelianGroup>(std::move(orders)); }

std::vector<TestAlgebra> test_algebras() {
    std::vector<TestAlgebra> out;
    const GroupPtr trivial = make_group({});
    {
        auto G = make_group({2});
        auto A = group_algebra(G, 2, 3);
        TestAlgebra t{"(Z/8)[C2]", G, A, {}, true};
        t.homs.push_back(group_pushforward(A, group_algebra(trivial, 2, 3), {0, 0}));
        t.homs.push_back(reduction_hom(A, group_algebra(G, 2, 2)));
        t.homs.push_back(minus_projection(A, minus_quotient_algebra(G, 1, 2, 3), G, 1));
        out.push_back(std::move(t));
    }
    {
        auto G = make_group({3});
        auto A = group_algebra(G, 3, 2);
        TestAlgebra t{"(Z/9)[C3]", G, A, {}, true};
        t.homs.push_back(group_pushforward(A, group_algebra(trivial, 3, 2), {0, 0, 0}));
        t.homs.push_back(reduction_hom(A, group_algebra(G, 3, 1)));
        out.push_back(std::move(t));
    }
    {
        auto G = make_group({2, 2});
        auto A = group_algebra(G, 3, 2);
        TestAlgebra t{"(Z/9)[C2xC2]", G, A, {}, false};
        auto C2 = make_group({2});
        std::vector<int> first;
        for (int g = 0; g < G->size(); ++g) first.push_back(static_cast<int>(G->exponents(g)[0]));
        t.homs.push_back(group_pushforward(A, group_algebra(C2, 3, 2), first));
        t.homs.push_back(group_pushforward(A, group_algebra(trivial, 3, 2), {0, 0, 0, 0}));
        for (auto j : {G->from_exponents({1, 0}), G->from_exponents({1, 1})})
            t.homs.push_back(minus_projection(A, minus_quotient_algebra(G, j, 3, 2), G, j));
        out.push_back(std::move(t));
    }
    return out;
}

int64_t uniform(Rng& rng, int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(rng); }

Vec random_element(Rng& rng, const FiniteCommAlgebra& A) {
    const Zq& R = A.ring();
    Vec x = A.zero();
    for (auto& c : x)
        if (uniform(rng, 0, 2) != 0) c = uniform(rng, 0, R.q - 1);
    if (uniform(rng, 0, 2) == 0) x = A.scale(x, R.p);
    return x;
}

Vec random_unit(Rng& rng, const AlgebraPtr& A) {
    for (;;) {
        Vec u = random_element(rng, *A);
        if (Ideal(A, {u}).is_unit()) return u;
    }
}

// non-units likely to give interesting square presentations
Vec structured_entry(Rng& rng, const TestAlgebra& t) {
    const auto& A = *t.algebra;
    const Zq& R = A.ring();
    const int g = static_cast<int>(uniform(rng, 0, t.group->size() - 1));
    Vec x = A.basis(g);
    switch (uniform(rng, 0, 4)) {
        case 0:
            return A.scale(x, R.p);
        case 1:
            return A.mul(A.scale(random_unit(rng, t.algebra), R.p), x);
        case 2: {
            Vec y = A.sub(x, A.one());
            return A.add(y, A.scale(A.one(), R.p));
        }
        case 3:
            return A.scale(x, R.power_of_p(static_cast<int>(uniform(rng, 1, R.N - 1))));
        default:
            return A.mul(random_unit(rng, t.algebra), x);
    }
}

std::vector<std::vector<Vec>> random_matrix(Rng& rng, const FiniteCommAlgebra& A, size_t rows, size_t cols) {
    std::vector<std::vector<Vec>> m(rows, std::vector<Vec>(cols));
    for (auto& r : m)
        for (auto& x : r) x = random_element(rng, A);
    return m;
}

AlgebraMatrix mat_product(const FiniteCommAlgebra& A, const AlgebraMatrix& a, const AlgebraMatrix& b) {
    AlgebraMatrix out(a.size(), std::vector<Vec>(b.empty() ? 0 : b[0].size(), A.zero()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < out[i].size(); ++j)
            for (size_t k = 0; k < b.size(); ++k) out[i][j] = A.add(out[i][j], A.mul(a[i][k], b[k][j]));
    return out;
}

// U * D * L with U upper and L lower unitriangular, or a fully random matrix
AlgebraMatrix random_square(Rng& rng, const TestAlgebra& t, size_t n) {
    const auto& A = *t.algebra;
    if (uniform(rng, 0, 3) == 0) return random_matrix(rng, A, n, n);
    AlgebraMatrix U(n, std::vector<Vec>(n, A.zero())), L = U, D = U;
    for (size_t i = 0; i < n; ++i) {
        U[i][i] = L[i][i] = A.one();
        D[i][i] = uniform(rng, 0, 9) < 7 ? structured_entry(rng, t) : random_unit(rng, t.algebra);
        for (size_t k = i + 1; k < n; ++k) {
            U[i][k] = random_element(rng, A);
            L[k][i] = random_element(rng, A);
        }
    }
    return mat_product(A, mat_product(A, U, D), L);
}

FinPresModule random_module(Rng& rng, const TestAlgebra& t) {
    const size_t n = static_cast<size_t>(uniform(rng, 1, 2));
    const size_t rows = static_cast<size_t>(uniform(rng, static_cast<int64_t>(n) - 1, static_cast<int64_t>(n) + 1));
    FinPresModule m{t.algebra, static_cast<int>(n), {}};
    if (uniform(rng, 0, 1) == 0)
        m.relations = random_square(rng, t, n);
    else
        m.relations = random_matrix(rng, *t.algebra, rows, n);
    return m;
}

std::optional<FinPresModule> random_injective_square(Rng& rng, const TestAlgebra& t, size_t n) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        FinPresModule m{t.algebra, static_cast<int>(n), random_square(rng, t, n)};
        if (has_injective_lift(m)) return m;
    }
    return std::nullopt;
}

// Howell equality against enumeration when the ambient ring is small enough.
void oracle_compare(CampaignResult& res, const TestAlgebra& t, const Ideal& a, const Ideal& b, bool howell_equal,
                    const std::string& what, int64_t& oracle_checks) {
    const auto& A = *a.algebra();
    const double log2_size = static_cast<double>(A.dim()) * A.ring().N * std::log2(static_cast<double>(A.ring().p));
    if (!t.small || log2_size > 10.0 + 1e-9) return;
    ++oracle_checks;
    if (ideal_equal_bruteforce(a, b, 1u << 10) != howell_equal) res.fail(what + ": Howell and enumeration disagree");
}

std::string tag(const TestAlgebra& t, int trial) { return t.name + " trial " + std::to_string(trial); }

}  // namespace

std::vector<CampaignResult> fitting_lemma_campaigns(const CampaignConfig& cfg) {
    const auto algebras = test_algebras();
    std::vector<CampaignResult> out;

    {
        CampaignResult res{"Fitting ideal of a direct sum"};
        const auto t0 = Clock::now();
        Rng rng(cfg.seed ^ 0x61);
        int64_t oracle = 0;
        for (const auto& t : algebras)
            for (int trial = 0; trial < cfg.lemma_trials; ++trial) {
                const FinPresModule m1 = random_module(rng, t), m2 = random_module(rng, t);
                const Ideal lhs = fitting_ideal(direct_sum(m1, m2));
                const Ideal rhs = fitting_ideal(m1) * fitting_ideal(m2);
                const bool eq = lhs == rhs;
                ++res.checked;
                if (!eq) res.fail(tag(t, trial) + ": Fitt(M1+M2) != Fitt(M1)Fitt(M2)");
                oracle_compare(res, t, lhs, rhs, eq, tag(t, trial), oracle);
            }
        res.note = std::to_string(oracle) + " equalities confirmed by enumeration";
        res.seconds = since(t0);
        out.push_back(std::move(res));
    }

    {
        CampaignResult res{"Fitting ideals under base change"};
        const auto t0 = Clock::now();
        Rng rng(cfg.seed ^ 0x62);
        int64_t oracle = 0;
        for (const auto& t : algebras)
            for (int trial = 0; trial < cfg.lemma_trials; ++trial) {
                const FinPresModule m = random_module(rng, t);
                const AlgebraHom& phi = t.homs[static_cast<size_t>(trial) % t.homs.size()];
                ++res.checked;
                const CheckResult r = base_change_fitting(m, phi);
                if (!r.holds) res.fail(tag(t, trial) + " to " + phi.target()->name() + ": " + r.detail);
                const Ideal lhs = fitting_ideal(base_change(m, phi));
                const Ideal rhs = fitting_ideal(m).image(phi);
                const double bits = phi.target()->dim() * phi.target()->ring().N *
                                    std::log2(static_cast<double>(phi.target()->ring().p));
                if (bits <= 10.0 + 1e-9) {
                    ++oracle;
                    if (ideal_equal_bruteforce(lhs, rhs, 1u << 10) != r.holds)
                        res.fail(tag(t, trial) + ": enumeration disagrees with the base change verdict");
                }
            }
        res.note = std::to_string(oracle) + " equalities confirmed by enumeration";
        res.seconds = since(t0);
        out.push_back(std::move(res));
    }

    {
        CampaignResult res{"Fitting ideal of the transpose-sharp presentation"};
        const auto t0 = Clock::now();
        Rng rng(cfg.seed ^ 0x63);
        int64_t oracle = 0, nontrivial = 0;
        for (const auto& t : algebras)
            for (int trial = 0; trial < cfg.lemma_trials; ++trial) {
                const size_t n = static_cast<size_t>(uniform(rng, 1, 3));
                auto m = random_injective_square(rng, t, n);
                if (!m) {
                    res.fail(tag(t, trial) + ": no presentation with injective lift found");
                    continue;
                }
                ++res.checked;
                const CheckResult r = e1_sharp_check(*m);
                if (!r.holds) res.fail(tag(t, trial) + ": " + r.detail);
                const Ideal lhs = fitting_ideal(dual_presentation(*m));
                const Ideal rhs = fitting_ideal(*m).sharp();
                if (!lhs.is_unit()) ++nontrivial;
                oracle_compare(res, t, lhs, rhs, lhs == rhs, tag(t, trial), oracle);
            }
        res.note = std::to_string(nontrivial) + " non-trivial modules, " + std::to_string(oracle) +
                   " equalities confirmed by enumeration";
        res.seconds = since(t0);
        out.push_back(std::move(res));
    }

    {
        CampaignResult res{"four-term Fitting identity"};
        const auto t0 = Clock::now();
        Rng rng(cfg.seed ^ 0x64);
        int64_t oracle = 0, nontrivial = 0;
        for (const auto& t : algebras) {
            const auto& A = *t.algebra;
            for (int trial = 0; trial < cfg.lemma_trials; ++trial) {
                const size_t n = static_cast<size_t>(uniform(rng, 1, 2));
                FinPresModule c, cp;
                AlgebraMatrix F;
                bool found = false;
                for (int attempt = 0; attempt < 200 && !found; ++attempt) {
                    if (trial % 2 == 0) {
                        // C = C' = coker(h), f = multiplication by a scalar
                        auto h = random_injective_square(rng, t, n);
                        if (!h) break;
                        c = cp = *h;
                        F.assign(n, std::vector<Vec>(n, A.zero()));
                        const Vec a = random_element(rng, A);
                        for (size_t i = 0; i < n; ++i) F[i][i] = a;
                        found = true;
                    } else {
                        // C = coker(KL) -> C' = coker(LK), x -> xK
                        const AlgebraMatrix K = random_square(rng, t, n), L = random_square(rng, t, n);
                        c = FinPresModule{t.algebra, static_cast<int>(n), mat_product(A, K, L)};
                        cp = FinPresModule{t.algebra, static_cast<int>(n), mat_product(A, L, K)};
                        F = K;
                        found = has_injective_lift(c) && has_injective_lift(cp);
                    }
                }
                if (!found) {
                    res.fail(tag(t, trial) + ": no suitable pair of presentations found");
                    continue;
                }
                const AlgebraModule cm = to_module(c), cpm = to_module(cp);
                const Matrix f2 = linear_map_matrix(A, F, n);
                const AlgebraModule m = module_kernel(cm, cpm, f2);
                const AlgebraModule mp = module_cokernel(cm, cpm, f2);
                const Matrix id_c = identity_matrix(cm.dim), id_cp = identity_matrix(cpm.dim);
                ++res.checked;
                const CheckResult r = four_term_check(m, c, cp, mp, id_c, f2, id_cp);
                if (!r.holds) res.fail(tag(t, trial) + ": " + r.detail);
                const Ideal lhs = fitting_ideal(hom_dual(m)).sharp() * fitting_ideal(cp);
                const Ideal rhs = fitting_ideal(c) * fitting_ideal(mp);
                if (m.log_size() > 0) ++nontrivial;
                oracle_compare(res, t, lhs, rhs, lhs == rhs, tag(t, trial), oracle);
            }
        }
        res.note = std::to_string(nontrivial) + " sequences with non-zero kernel, " + std::to_string(oracle) +
                   " equalities confirmed by enumeration";
        res.seconds = since(t0);
        out.push_back(std::move(res));
    }
    return out;
}

CampaignResult cancellation_campaign(const CampaignConfig& cfg) {
    CampaignResult res{"principal ideals over an integral extension"};
    const auto t0 = Clock::now();
    Rng rng(cfg.seed ^ 0x65);
    struct Case {
        int64_t p;
        int N;
        std::vector<int64_t> orders;
    };
    int64_t premises = 0;
    for (const Case& c : {Case{3, 2, {2}}, Case{5, 2, {4}}, Case{7, 1, {2, 6}}, Case{3, 2, {2, 2}}}) {
        auto G = make_group(c.orders);
        auto R = group_algebra(G, c.p, c.N);
        // character components with Teichmueller values: R -> prod Z/p^N, injective since |G| divides p - 1
        const int n = G->size();
        auto S = split_algebra(n, c.p, c.N);
        const Zq& Rq = R->ring();
        const int64_t root = nt::primitive_root(c.p);
        Matrix images(static_cast<size_t>(n), Vec(static_cast<size_t>(n), 0));
        for (int g = 0; g < n; ++g)
            for (int chi = 0; chi < n; ++chi) {
                int64_t v = 1;
                const auto eg = G->exponents(g), ec = G->exponents(chi);
                for (size_t i = 0; i < eg.size(); ++i) {
                    const int64_t d = G->cyclic_orders()[i];
                    const int64_t zeta = teichmuller(nt::powmod(root, (c.p - 1) / d, c.p), c.p, c.N).residue();
                    v = Rq.mul(v, nt::powmod(zeta, (eg[i] * ec[i]) % d, Rq.q));
                }
                images[static_cast<size_t>(g)][static_cast<size_t>(chi)] = v;
            }
        AlgebraHom to_s(R, S, images);
        if (auto why = to_s.validate(); !why.empty()) {
            res.fail("component map invalid: " + why);
            continue;
        }
        for (int trial = 0; trial < cfg.lemma_trials / 2; ++trial) {
            const Vec b = random_element(rng, *R);
            Vec a = R->mul(b, trial % 3 == 0 ? random_unit(rng, R) : random_element(rng, *R));
            const auto rep = cancellation_check(to_s, a, b);
            ++res.checked;
            if (rep.premises) ++premises;
            if (rep.premises && !rep.conclusion)
                res.fail(R->name() + " trial " + std::to_string(trial) + ": premises hold but Ra != Rb");
        }
    }
    res.note = std::to_string(premises) + " trials satisfied the premises";
    res.seconds = since(t0);
    return res;
}

}  // namespace iwk::checks
