#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <set>

#include "iwasawa/complex.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/serialize.hpp"

using namespace iwk;

namespace {

using Rng = std::mt19937_64;

GroupPtr group(std::vector<int64_t> orders) { return std::make_shared<const FiniteAbelianGroup>(std::move(orders)); }

AlgebraModule free_module(const AlgebraPtr& A, int n) { return to_module(FinPresModule{A, n, {}}); }

AlgebraModule cyclic(const AlgebraPtr& A, const Vec& a) { return to_module(FinPresModule{A, 1, {{a}}}); }

Matrix mult(const AlgebraPtr& A, const Vec& a) { return linear_map_matrix(*A, {{a}}, 1); }

Vec vecmat(const Vec& v, const Matrix& f, const Zq& R, size_t cols) {
    Vec out(cols, 0);
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < cols; ++j) out[j] = R.add(out[j], R.mul(v[i], f[i][j]));
    return out;
}

// log_p |H^i| from |ker d^i| / |im d^{i-1}|, by enumerating elements.
int64_t cohomology_log_size_oracle(const BoundedComplex& c, int i) {
    const Zq& R = c.algebra->ring();
    const auto& Ci = c.at(i);
    size_t kernel = 0;
    for (const auto& v : enumerate_elements(Ci)) {
        if (!c.in_range(i + 1)) {
            ++kernel;
            continue;
        }
        if (c.at(i + 1).is_zero_element(vecmat(v, c.d(i), R, c.at(i + 1).dim))) ++kernel;
    }
    std::set<Vec> image{Ci.normal_form(Vec(Ci.dim, 0))};
    if (c.in_range(i - 1))
        for (const auto& u : enumerate_elements(c.at(i - 1))) image.insert(Ci.normal_form(vecmat(u, c.d(i - 1), R, Ci.dim)));
    REQUIRE(kernel % image.size() == 0);
    size_t ratio = kernel / image.size();
    int64_t k = 0;
    while (ratio > 1) {
        REQUIRE(ratio % static_cast<size_t>(R.p) == 0);
        ratio /= static_cast<size_t>(R.p);
        ++k;
    }
    return k;
}

Vec rand_elem(Rng& rng, const FiniteCommAlgebra& A, int64_t scale = 1) {
    Vec x = A.zero();
    for (auto& c : x) c = A.ring().mul(scale, std::uniform_int_distribution<int64_t>(0, A.ring().q - 1)(rng));
    return x;
}

Matrix rand_map(Rng& rng, const AlgebraPtr& A, int rows, int cols, int64_t scale) {
    std::vector<std::vector<Vec>> f(static_cast<size_t>(rows));
    for (auto& row : f)
        for (int j = 0; j < cols; ++j) row.push_back(rand_elem(rng, *A, scale));
    return linear_map_matrix(*A, f, static_cast<size_t>(cols));
}

// Free complex A^a -> A^b -> A^c with both differentials divisible by p, so their composite vanishes mod p^2.
BoundedComplex random_complex(Rng& rng, const AlgebraPtr& A, int lowest) {
    std::uniform_int_distribution<int> rank(0, 2);
    const int a = rank(rng), b = rank(rng), c = rank(rng);
    const int64_t p = A->ring().p;
    return make_complex(A, lowest, {free_module(A, a), free_module(A, b), free_module(A, c)},
                        {rand_map(rng, A, a, b, p), rand_map(rng, A, b, c, p)});
}

Matrix identity(size_t n) { return identity_matrix(n); }

Matrix stack(size_t rows, size_t left, size_t right, bool identity_left) {
    Matrix m(rows, Vec(left + right, 0));
    for (size_t i = 0; i < rows; ++i) m[i][identity_left ? i : left + i] = 1;
    return m;
}

Matrix column_stack(size_t top, size_t bottom, bool identity_top, size_t cols) {
    Matrix m(top + bottom, Vec(cols, 0));
    for (size_t i = 0; i < cols; ++i) m[identity_top ? i : top + i][i] = 1;
    return m;
}

}  // namespace

TEST_CASE("cohomology of 0 -> R -> R -> 0 with multiplication by p") {
    const auto A = group_algebra(group({}), 3, 2);
    const auto c = make_complex(A, 0, {free_module(A, 1), free_module(A, 1)}, {mult(A, A->scalar(3))});
    CHECK(cohomology(c, 0).log_size() == 1);
    CHECK(cohomology(c, 1).log_size() == 1);
    CHECK(fitting_ideal(presentation(cohomology(c, 1))) == Ideal(A, {A->scalar(3)}));
    const auto e = euler_fitting(c);
    CHECK(e.numerator == Ideal(A, {A->scalar(3)}));
    CHECK(e.denominator == Ideal(A, {A->scalar(3)}));
    CHECK(e.equivalent(EulerFittingInvariant{Ideal::unit(A), Ideal::unit(A)}));
}

TEST_CASE("make_complex rejects d^2 != 0 and non-linear maps") {
    const auto A = group_algebra(group({}), 3, 2);
    const auto R = free_module(A, 1);
    CHECK_THROWS_AS(make_complex(A, 0, {R, R, R}, {identity(1), identity(1)}), PreconditionError);
    const auto A2 = group_algebra(group({2}), 3, 2);
    const auto R2 = free_module(A2, 1);
    CHECK_THROWS_AS(make_complex(A2, 0, {R2, R2}, {Matrix{{1, 0}, {0, 0}}}), PreconditionError);
}

TEST_CASE("euler fitting of short complexes") {
    const auto A = group_algebra(group({2}), 3, 2);
    const Vec a{1, 2};
    const auto acyclic = make_complex(A, 0, {free_module(A, 1), free_module(A, 1)}, {identity(2)});
    CHECK(cohomology(acyclic, 0).log_size() == 0);
    CHECK(cohomology(acyclic, 1).log_size() == 0);
    const auto e0 = euler_fitting(acyclic);
    CHECK(e0.numerator.is_unit());
    CHECK(e0.denominator.is_unit());

    const auto in0 = euler_fitting(concentrated(cyclic(A, a), 0));
    CHECK(in0.numerator == Ideal(A, {a}));
    CHECK(in0.denominator.is_unit());
    const auto in1 = euler_fitting(concentrated(cyclic(A, a), 1));
    CHECK(in1.numerator.is_unit());
    CHECK(in1.denominator == Ideal(A, {a}));
    CHECK(in1.equivalent(in0.inverse()));
}

TEST_CASE("cohomology sizes against enumeration") {
    Rng rng(5);
    for (auto A : {group_algebra(group({}), 3, 2), group_algebra(group({2}), 3, 2), group_algebra(group({2}), 2, 2)}) {
        for (int t = 0; t < 25; ++t) {
            const auto c = random_complex(rng, A, t % 3 - 1);
            int64_t alternating_h = 0, alternating_c = 0;
            for (int i = c.lowest; i <= c.highest(); ++i) {
                const auto H = cohomology(c, i);
                CHECK(H.log_size() == cohomology_log_size_oracle(c, i));
                const int sign = (i % 2 == 0) ? 1 : -1;
                alternating_h += sign * H.log_size();
                alternating_c += sign * c.at(i).log_size();
            }
            CHECK(alternating_h == alternating_c);
        }
    }
}

TEST_CASE("shifts move cohomology and invert the euler fitting invariant") {
    Rng rng(9);
    const auto A = group_algebra(group({2}), 3, 2);
    for (int t = 0; t < 15; ++t) {
        const auto c = random_complex(rng, A, 0);
        for (int n : {1, 2, 3, -1}) {
            const auto s = shift(c, n);
            CHECK(s.lowest == c.lowest - n);
            for (int i = s.lowest; i <= s.highest(); ++i)
                CHECK(cohomology(s, i).log_size() == cohomology(c, n + i).log_size());
            const auto es = euler_fitting(s), ec = euler_fitting(c);
            CHECK(es.equivalent(n % 2 == 0 ? ec : ec.inverse()));
        }
    }
}

TEST_CASE("quasi-isomorphism examples") {
    const auto A = group_algebra(group({}), 3, 2);
    const auto R = free_module(A, 1);
    const auto c = make_complex(A, 0, {R, R}, {mult(A, A->scalar(3))});
    const ChainMap id{&c, &c, 0, {identity(1), identity(1)}};
    CHECK(quasi_iso_check(id));

    const auto acyclic = make_complex(A, 0, {R, R}, {identity(1)});
    const auto zero = concentrated(zero_module(A), 0);
    const ChainMap to_zero{&acyclic, &zero, 0, {Matrix(1, Vec{})}};
    CHECK(quasi_iso_check(to_zero));

    const auto pR = module_image(R, R, mult(A, A->scalar(3)));
    const auto small = concentrated(pR, 0), big = concentrated(R, 0);
    const ChainMap inclusion{&small, &big, 0, {identity(1)}};
    CHECK_FALSE(quasi_iso_check(inclusion));

    const ChainMap broken{&c, &c, 0, {identity(1), Matrix{{2}}}};
    CHECK_THROWS_AS(quasi_iso_check(broken), PreconditionError);
}

TEST_CASE("cones") {
    Rng rng(13);
    const auto A = group_algebra(group({2}), 3, 2);
    for (int t = 0; t < 10; ++t) {
        const auto c = random_complex(rng, A, 0);
        std::vector<Matrix> ids;
        for (int i = c.lowest; i <= c.highest(); ++i) ids.push_back(identity(c.at(i).dim));
        const ChainMap id{&c, &c, c.lowest, ids};
        const auto k = cone(id);
        CHECK(validate_complex(k).empty());
        for (int i = k.lowest; i <= k.highest(); ++i) CHECK(cohomology(k, i).log_size() == 0);
        CHECK(euler_fitting(k).equivalent(EulerFittingInvariant{Ideal::unit(A), Ideal::unit(A)}));

        // multiplication by p is a chain map; its cone satisfies euler(Cone f) = euler(D) euler(C)^{-1}
        std::vector<Matrix> ps;
        for (int i = c.lowest; i <= c.highest(); ++i) {
            Matrix m = identity(c.at(i).dim);
            for (auto& row : m)
                for (auto& x : row) x = 3 * x;
            ps.push_back(m);
        }
        const ChainMap p{&c, &c, c.lowest, ps};
        const auto kp = cone(p);
        CHECK(euler_fitting(kp).equivalent(euler_fitting(c) * euler_fitting(c).inverse()));
        int64_t alternating = 0;
        for (int i = kp.lowest; i <= kp.highest(); ++i)
            alternating += ((i % 2 == 0) ? 1 : -1) * cohomology(kp, i).log_size();
        CHECK(alternating == 0);
    }
}

TEST_CASE("euler fitting is multiplicative on split sequences") {
    Rng rng(17);
    const auto A = group_algebra(group({2}), 3, 2);
    {
        const auto zero = concentrated(zero_module(A), 0);
        const auto c = random_complex(rng, A, 0);
        std::vector<Matrix> ids;
        for (int i = c.lowest; i <= c.highest(); ++i) ids.push_back(identity(c.at(i).dim));
        const ChainMap i{&zero, &c, 0, {Matrix(0, Vec(c.at(0).dim))}};
        const ChainMap q{&c, &c, c.lowest, ids};
        CHECK(euler_fitting_additivity_check(i, q).holds);
    }
    for (int t = 0; t < 10; ++t) {
        const auto c1 = random_complex(rng, A, 0), c3 = random_complex(rng, A, 0);
        const auto c2 = direct_sum(c1, c3);
        std::vector<Matrix> inc, proj;
        for (int k = c2.lowest; k <= c2.highest(); ++k) {
            const size_t d1 = c1.at(k).dim, d3 = c3.at(k).dim;
            inc.push_back(stack(d1, d1, d3, true));
            proj.push_back(column_stack(d1, d3, false, d3));
        }
        const ChainMap i{&c1, &c2, c2.lowest, inc};
        const ChainMap q{&c2, &c3, c2.lowest, proj};
        CHECK(euler_fitting_additivity_check(i, q).holds);
        CHECK(euler_fitting(c2).equivalent(euler_fitting(c1) * euler_fitting(c3)));
    }
}

TEST_CASE("concentrated complexes") {
    const auto A = group_algebra(group({3}), 3, 1);
    const auto M = cyclic(A, Vec{2, 1, 0});
    for (int k : {-2, 0, 3}) {
        const auto c = concentrated(M, k);
        CHECK(c.lowest == k);
        CHECK(c.highest() == k);
        CHECK(same_submodule(cohomology(c, k), M));
        CHECK(euler_fitting(c).equivalent(k % 2 == 0 ? EulerFittingInvariant{Ideal(A, {Vec{2, 1, 0}}), Ideal::unit(A)}
                                                     : EulerFittingInvariant{Ideal::unit(A), Ideal(A, {Vec{2, 1, 0}})}));
    }
}

TEST_CASE("complexes serialize") {
    const auto j = io::json::parse(R"({
        "algebra": {"type": "group", "p": 3, "N": 2, "orders": [2]},
        "degrees": [0, 1],
        "modules": [{"generators": 1, "relations": []}, {"generators": 1, "relations": []}],
        "differentials": [[[[3, 0]]]]
    })");
    const auto c = io::complex_from_json(j);
    CHECK(c.lowest == 0);
    CHECK(cohomology(c, 1).log_size() == 2);
    auto bad = j;
    bad["differentials"] = io::json::array();
    CHECK_THROWS_AS(io::complex_from_json(bad), SchemaError);
}
