#include <chrono>
#include <random>

#include "iwasawa/checks.hpp"
#include "iwasawa/complex.hpp"
#include "iwasawa/errors.hpp"

namespace iwk::checks {

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int64_t uniform(Rng& rng, int64_t lo, int64_t hi) { return std::uniform_int_distribution<int64_t>(lo, hi)(rng); }

Vec random_element(Rng& rng, const FiniteCommAlgebra& A) {
    Vec x = A.zero();
    for (auto& c : x)
        if (uniform(rng, 0, 2) != 0) c = uniform(rng, 0, A.ring().q - 1);
    if (uniform(rng, 0, 2) == 0) x = A.scale(x, A.ring().p);
    return x;
}

using AMatrix = std::vector<std::vector<Vec>>;

AMatrix random_amatrix(Rng& rng, const FiniteCommAlgebra& A, size_t r, size_t c) {
    AMatrix m(r, std::vector<Vec>(c));
    for (auto& row : m)
        for (auto& x : row) x = random_element(rng, A);
    return m;
}

AMatrix amul(const FiniteCommAlgebra& A, const AMatrix& a, const AMatrix& b, size_t cols) {
    AMatrix out(a.size(), std::vector<Vec>(cols, A.zero()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < cols; ++j)
            for (size_t k = 0; k < b.size(); ++k) out[i][j] = A.add(out[i][j], A.mul(a[i][k], b[k][j]));
    return out;
}

Matrix flat(const FiniteCommAlgebra& A, const AMatrix& m, size_t rows, size_t cols) {
    if (rows == 0 || cols == 0) return Matrix(rows * static_cast<size_t>(A.dim()), Vec(cols * static_cast<size_t>(A.dim()), 0));
    return linear_map_matrix(A, m, cols);
}

// (A/c)^n
AlgebraModule quotient_power(const AlgebraPtr& A, const Vec& c, size_t n) {
    FinPresModule m{A, static_cast<int>(n), {}};
    if (!A->is_zero(c))
        for (size_t i = 0; i < n; ++i) {
            std::vector<Vec> row(n, A->zero());
            row[i] = c;
            m.relations.push_back(row);
        }
    return to_module(m);
}

// Two-term complex (A/c)^a -> (A/c)^b in degrees 0, 1, kept with its algebra matrix.
struct TwoTerm {
    BoundedComplex complex;
    size_t a = 0, b = 0;
    AMatrix d;
};

TwoTerm random_two_term(Rng& rng, const AlgebraPtr& A, const Vec& c) {
    TwoTerm t;
    t.a = static_cast<size_t>(uniform(rng, 1, 2));
    t.b = static_cast<size_t>(uniform(rng, 1, 2));
    t.d = random_amatrix(rng, *A, t.a, t.b);
    t.complex = make_complex(A, 0, {quotient_power(A, c, t.a), quotient_power(A, c, t.b)}, {flat(*A, t.d, t.a, t.b)});
    return t;
}

Vec random_modulus(Rng& rng, const FiniteCommAlgebra& A) {
    switch (uniform(rng, 0, 2)) {
        case 0:
            return A.scalar(A.ring().p);
        case 1:
            return A.zero();
        default:
            return random_element(rng, A);
    }
}

// f = s id + (d h + h d) from C to D (s only when D = C).
ChainMap homotopy_map(Rng& rng, const AlgebraPtr& A, const TwoTerm& C, const TwoTerm& D, const Vec& s) {
    const AMatrix h = random_amatrix(rng, *A, C.b, D.a);
    AMatrix f0 = amul(*A, C.d, h, D.a), f1 = amul(*A, h, D.d, D.b);
    if (&C == &D) {
        for (size_t i = 0; i < C.a; ++i) f0[i][i] = A->add(f0[i][i], s);
        for (size_t i = 0; i < C.b; ++i) f1[i][i] = A->add(f1[i][i], s);
    }
    return ChainMap{&C.complex, &D.complex, 0, {flat(*A, f0, C.a, D.a), flat(*A, f1, C.b, D.b)}};
}

size_t dim_at(const BoundedComplex& c, int i) { return c.in_range(i) ? c.at(i).dim : 0; }

// Inclusion of the first summand (or projection onto it) of a direct sum of complexes.
ChainMap summand_map(const BoundedComplex& part, const BoundedComplex& sum, bool inclusion) {
    ChainMap f{inclusion ? &part : &sum, inclusion ? &sum : &part, sum.lowest, {}};
    for (int i = sum.lowest; i <= sum.highest(); ++i) {
        const size_t p = dim_at(part, i), s = dim_at(sum, i);
        Matrix m = inclusion ? Matrix(p, Vec(s, 0)) : Matrix(s, Vec(p, 0));
        for (size_t k = 0; k < p; ++k) m[k][k] = 1;
        f.maps.push_back(std::move(m));
    }
    return f;
}

bool acyclic(const BoundedComplex& c) {
    for (int i = c.lowest; i <= c.highest(); ++i)
        if (cohomology(c, i).log_size() != 0) return false;
    return true;
}

}  // namespace

std::vector<CampaignResult> complex_campaigns(const CampaignConfig& cfg) {
    std::vector<CampaignResult> out;
    auto C2 = std::make_shared<const FiniteAbelianGroup>(std::vector<int64_t>{2});
    auto C3 = std::make_shared<const FiniteAbelianGroup>(std::vector<int64_t>{3});
    auto V4 = std::make_shared<const FiniteAbelianGroup>(std::vector<int64_t>{2, 2});
    const std::vector<AlgebraPtr> all{group_algebra(C2, 3, 2), group_algebra(C2, 2, 3), group_algebra(C3, 3, 2)};
    const std::vector<AlgebraPtr> split{group_algebra(C2, 3, 2), group_algebra(V4, 3, 2)};

    {
        CampaignResult res{"Euler-Fitting invariant under quasi-isomorphisms"};
        const auto t0 = Clock::now();
        Rng rng(cfg.seed ^ 0x71);
        int64_t negatives = 0;
        for (int k = 0; k < cfg.complex_instances; ++k) {
            const AlgebraPtr& A = all[static_cast<size_t>(k) % all.size()];
            const std::string what = A->name() + " instance " + std::to_string(k);
            const Vec c = random_modulus(rng, *A);
            const TwoTerm C = random_two_term(rng, A, c);
            const TwoTerm E = random_two_term(rng, A, c);
            const ChainMap id_e{&E.complex, &E.complex, 0,
                                {identity_matrix(E.complex.at(0).dim), identity_matrix(E.complex.at(1).dim)}};
            const BoundedComplex cone_e = cone(id_e);
            if (!acyclic(cone_e)) res.fail(what + ": cone of the identity is not acyclic");
            const BoundedComplex D = direct_sum(C.complex, cone_e);
            const auto inv_c = euler_fitting(C.complex);
            const auto check = [&](const ChainMap& f, const EulerFittingInvariant& src, const EulerFittingInvariant& tgt,
                                   const char* name) {
                ++res.checked;
                if (!quasi_iso_check(f)) res.fail(what + ": " + name + " not recognised as a quasi-isomorphism");
                if (!src.equivalent(tgt)) res.fail(what + ": " + name + " changes the invariant");
            };
            const auto inv_d = euler_fitting(D);
            check(summand_map(C.complex, D, true), inv_c, inv_d, "inclusion into C + Cone(id)");
            check(summand_map(C.complex, D, false), inv_d, inv_c, "projection from C + Cone(id)");
            // unit multiple of the identity plus a null-homotopic map
            Vec u = A->add(A->one(), A->scale(random_element(rng, *A), A->ring().p));
            check(homotopy_map(rng, A, C, C, u), inv_c, inv_c, "unit times identity plus homotopy");
            // p times identity is a quasi-isomorphism exactly when the cohomology vanishes
            const ChainMap pf = homotopy_map(rng, A, C, C, A->scalar(A->ring().p));
            ++res.checked;
            const bool expect = acyclic(C.complex);
            if (!expect) ++negatives;
            if (quasi_iso_check(pf) != expect) res.fail(what + ": verdict for p * id is wrong");
        }
        res.note = std::to_string(negatives) + " negative controls";
        res.seconds = since(t0);
        out.push_back(std::move(res));
    }

    {
        CampaignResult res{"Euler-Fitting additivity on short exact sequences"};
        const auto t0 = Clock::now();
        Rng rng(cfg.seed ^ 0x72);
        for (int k = 0; k < cfg.complex_instances; ++k) {
            const AlgebraPtr& A = split[static_cast<size_t>(k) % split.size()];
            const std::string what = A->name() + " instance " + std::to_string(k);
            const Vec c = random_modulus(rng, *A);
            const TwoTerm C = random_two_term(rng, A, c);
            const TwoTerm Dt = random_two_term(rng, A, c);
            const bool self = uniform(rng, 0, 1) == 0;
            const TwoTerm& D = self ? C : Dt;
            const ChainMap f = homotopy_map(rng, A, C, D, random_element(rng, *A));
            const BoundedComplex cf = cone(f);
            const BoundedComplex c1 = shift(C.complex, 1);
            // D -> Cone(f) -> C[1]
            ChainMap inc{&D.complex, &cf, cf.lowest, {}}, proj{&cf, &c1, cf.lowest, {}};
            for (int i = cf.lowest; i <= cf.highest(); ++i) {
                const size_t cd = dim_at(C.complex, i + 1), dd = dim_at(D.complex, i);
                Matrix in(dd, Vec(cd + dd, 0)), pr(cd + dd, Vec(cd, 0));
                for (size_t r = 0; r < dd; ++r) in[r][cd + r] = 1;
                for (size_t r = 0; r < cd; ++r) pr[r][r] = 1;
                inc.maps.push_back(std::move(in));
                proj.maps.push_back(std::move(pr));
            }
            ++res.checked;
            try {
                const CheckResult r = euler_fitting_additivity_check(inc, proj);
                if (!r.holds) res.fail(what + " (cone sequence): " + r.detail);
            } catch (const PreconditionError& e) {
                res.fail(what + " (cone sequence): " + e.what());
            }
            // 0 -> C -> C + D -> D -> 0
            const BoundedComplex sum = direct_sum(C.complex, Dt.complex);
            ChainMap i1 = summand_map(C.complex, sum, true);
            ChainMap p2{&sum, &Dt.complex, sum.lowest, {}};
            for (int i = sum.lowest; i <= sum.highest(); ++i) {
                const size_t a = dim_at(C.complex, i), b = dim_at(Dt.complex, i);
                Matrix m(a + b, Vec(b, 0));
                for (size_t r = 0; r < b; ++r) m[a + r][r] = 1;
                p2.maps.push_back(std::move(m));
            }
            ++res.checked;
            const CheckResult r2 = euler_fitting_additivity_check(i1, p2);
            if (!r2.holds) res.fail(what + " (direct sum): " + r2.detail);
        }
        res.seconds = since(t0);
        out.push_back(std::move(res));
    }

    {
        CampaignResult res{"shift parity of the Euler-Fitting invariant"};
        const auto t0 = Clock::now();
        Rng rng(cfg.seed ^ 0x73);
        for (int k = 0; k < cfg.complex_instances; ++k) {
            const AlgebraPtr& A = all[static_cast<size_t>(k) % all.size()];
            const std::string what = A->name() + " instance " + std::to_string(k);
            const Vec c = random_modulus(rng, *A);
            const TwoTerm C = random_two_term(rng, A, c);
            const ChainMap f = homotopy_map(rng, A, C, C, random_element(rng, *A));
            const BoundedComplex X = uniform(rng, 0, 1) == 0 ? C.complex : cone(f);
            const auto inv = euler_fitting(X);
            for (int n : {-2, -1, 1, 2, 3}) {
                ++res.checked;
                const auto shifted = euler_fitting(shift(X, n));
                const auto expected = (n % 2 == 0) ? inv : inv.inverse();
                if (!shifted.equivalent(expected)) res.fail(what + ": shift by " + std::to_string(n));
            }
        }
        res.seconds = since(t0);
        out.push_back(std::move(res));
    }
    return out;
}

}  // namespace iwk::checks
