#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "iwasawa/abelian_field.hpp"
#include "iwasawa/characters.hpp"
#include "iwasawa/checks.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"
#include "iwasawa/serialize.hpp"

using namespace iwk;
using QG = GroupRingElement<Rational>;

namespace {

QG basis(const GaloisGroup& gal, int64_t residue, Rational c = Rational(1)) {
    return QG::basis(gal.group(), Rational(0), gal.element_of(residue), c);
}

// Largest k with Q(zeta_k) inside L: zeta_k is fixed by h iff h = 1 mod k (mod k/2 when k/2 is odd and k does not divide m).
int64_t oracle_roots_of_unity(const AbelianFieldSpec& spec) {
    const int64_t m = spec.modulus;
    int64_t best = 1;
    for (int64_t k : nt::divisors(nt::lcm(2, m))) {
        const int64_t kk = (m % k == 0) ? k : k / 2;
        bool fixed = true;
        for (int64_t h : spec.fixing)
            if (nt::mod(h - 1, kk) != 0) fixed = false;
        if (fixed) best = std::max(best, k);
    }
    return best;
}

std::vector<AbelianFieldSpec> small_fields(int64_t max_m) {
    std::vector<AbelianFieldSpec> out;
    for (int64_t m = 1; m <= max_m; ++m)
        for (const auto& H : checks::unit_subgroups(m)) out.push_back(AbelianFieldSpec::make(m, H));
    return out;
}

}  // namespace

TEST_CASE("galois groups and frobenius") {
    const GaloisGroup g5(AbelianFieldSpec::cyclotomic(5));
    CHECK(g5.group()->cyclic_orders() == std::vector<int64_t>{4});
    CHECK(g5.group()->order_of(g5.frobenius(2)) == 4);

    const GaloisGroup g3(AbelianFieldSpec::cyclotomic(3));
    CHECK(g3.size() == 2);
    CHECK(g3.frobenius(7) == g3.group()->identity());
    CHECK_THROWS_AS(g3.frobenius(3), PreconditionError);

    const GaloisGroup g1(AbelianFieldSpec::cyclotomic(1));
    CHECK(g1.size() == 1);
}

TEST_CASE("frobenius is multiplicative") {
    for (const auto& spec : small_fields(24)) {
        const GaloisGroup gal(spec);
        const int64_t f = gal.conductor();
        std::vector<int64_t> primes;
        for (int64_t l = 2; l < 60; ++l)
            if (nt::is_prime(l) && f % l != 0) primes.push_back(l);
        for (auto a : primes)
            for (auto b : primes)
                CHECK(gal.group()->mul(gal.frobenius(a), gal.frobenius(b)) == gal.element_of_unramified(a * b));
    }
}

TEST_CASE("group order equals the index of the fixing subgroup") {
    for (const auto& spec : small_fields(30)) {
        CAPTURE(spec.label);
        const GaloisGroup gal(spec);
        CHECK(gal.size() * static_cast<int64_t>(spec.fixing.size()) == nt::euler_phi(spec.modulus));
        CHECK(gal.size() == spec.degree());
    }
}

TEST_CASE("conductor reduction") {
    // Q(zeta_12) fixed by 7 is Q(zeta_3).
    const GaloisGroup gal(AbelianFieldSpec::make(12, {1, 7}));
    CHECK(gal.conductor() == 3);
    CHECK(gal.ramified_primes() == std::vector<int64_t>{3});
    CHECK(GaloisGroup(AbelianFieldSpec::make(8, {1, 7})).conductor() == 8);
    CHECK(GaloisGroup(AbelianFieldSpec::make(10, {1})).conductor() == 5);
    CHECK_THROWS_AS(AbelianFieldSpec::make(5, {1, 2}), PreconditionError);
}

TEST_CASE("CM structure") {
    const auto z5 = AbelianFieldSpec::cyclotomic(5);
    const auto cm = cm_data(z5);
    REQUIRE(cm.has_value());
    CHECK(cm->j == GaloisGroup(z5).element_of(4));
    CHECK_FALSE(cm_data(AbelianFieldSpec::make(5, {1, 4})).has_value());
    CHECK_FALSE(cm_data(AbelianFieldSpec::cyclotomic(1)).has_value());
}

TEST_CASE("CM idempotents") {
    for (const auto& spec : small_fields(24)) {
        const auto cm = cm_data(spec);
        if (!cm) continue;
        const GaloisGroup gal(spec);
        const QG one = QG::scalar(gal.group(), Rational(0), Rational(1));
        const QG j = QG::basis(gal.group(), Rational(0), cm->j, Rational(1));
        CHECK(cm->e_plus + cm->e_minus == one);
        for (int r : {0, -1, -2, -3}) {
            const QG& e = cm->e_r(r);
            const Rational sign(r % 2 == 0 ? 1 : -1);
            CHECK(e * e == e);
            CHECK(e * (one - j * sign) == e * Rational(2));
            CHECK((e * (one + j * sign)).is_zero());
        }
    }
}

TEST_CASE("roots of unity") {
    CHECK(roots_of_unity_order(AbelianFieldSpec::cyclotomic(1)) == 2);
    CHECK(roots_of_unity_order(AbelianFieldSpec::cyclotomic(3)) == 6);
    CHECK(roots_of_unity_order(AbelianFieldSpec::cyclotomic(5)) == 10);
    for (const auto& spec : small_fields(30)) {
        CAPTURE(spec.label);
        CHECK(roots_of_unity_order(spec) == oracle_roots_of_unity(spec));
    }
}

TEST_CASE("cyclotomic Z_p-extension layers") {
    const auto z5 = AbelianFieldSpec::cyclotomic(5);
    const GaloisGroup l1(layer(z5, 5, 1));
    CHECK(l1.size() == 20);
    CHECK(l1.group()->cyclic_orders() == std::vector<int64_t>{20});

    const GaloisGroup l0(layer(AbelianFieldSpec::cyclotomic(3), 3, 0));
    CHECK(l0.size() == 2);
    CHECK(l0.conductor() == 3);

    const auto q1 = layer(AbelianFieldSpec::cyclotomic(1), 3, 1);
    CHECK(q1.modulus == 9);
    CHECK(GaloisGroup(q1).size() == 3);
    CHECK(q1.contains_residue(8));

    CHECK_THROWS_AS(layer(AbelianFieldSpec::cyclotomic(9), 3, 1), PreconditionError);
}

TEST_CASE("layer n+1 projects onto layer n") {
    for (int64_t m : {1, 3, 4, 5, 7, 12})
        for (int64_t p : {3, 5, 7}) {
            if (m % (p * p) == 0) continue;
            const auto spec = AbelianFieldSpec::cyclotomic(m);
            for (int n = 0; n < 2; ++n) {
                const auto lo = layer(spec, p, n), hi = layer(spec, p, n + 1);
                CHECK(GaloisGroup(hi).size() == GaloisGroup(lo).size() * p);
                for (int64_t h : hi.fixing) CHECK(lo.contains_residue(nt::mod(h, lo.modulus)));
            }
        }
}

TEST_CASE("Hyp(S,T)") {
    const auto z3 = AbelianFieldSpec::cyclotomic(3);
    const auto S = parse_places("3,inf");
    CHECK(check_hyp(z3, S, parse_places("7")).holds);
    CHECK_FALSE(check_hyp(z3, S, parse_places("2")).holds);
    CHECK_FALSE(check_hyp(z3, S, parse_places("3")).holds);
    CHECK_FALSE(check_hyp(z3, parse_places("inf"), parse_places("7")).holds);
    CHECK(check_hyp(z3, S, parse_places("2,5")).holds);
    CHECK_THROWS_AS(parse_places("3,x"), PreconditionError);
    CHECK_THROWS_AS(parse_places("4"), PreconditionError);
    CHECK(format_places(parse_places("inf, 7, 3")) == "inf,3,7");
}

TEST_CASE("character decomposition on C_2") {
    const GaloisGroup gal(AbelianFieldSpec::cyclotomic(3));
    const CharacterTable table(gal.group());
    const Rational a(5, 3), b(-2);
    const auto comp = table.decompose(basis(gal, 1, a) + basis(gal, 2, b));
    REQUIRE(comp.size() == 2);
    CHECK(comp[0].is_rational());
    CHECK(comp[0].rational_part() == a + b);
    CHECK(comp[1].rational_part() == a - b);

    const auto theta = basis(gal, 1, Rational(1, 6)) + basis(gal, 2, Rational(-1, 6));
    const auto c2 = table.decompose(theta);
    CHECK(c2[0].is_zero());
    CHECK(c2[1].rational_part() == Rational(1, 3));
}

TEST_CASE("idempotent of the trivial character") {
    const GaloisGroup gal(AbelianFieldSpec::cyclotomic(7));
    const CharacterTable table(gal.group());
    const auto comp = table.decompose(table.idempotent(0));
    CHECK(comp[0] == CyclotomicInt(table.field(), Rational(1)));
    for (size_t i = 1; i < comp.size(); ++i) CHECK(comp[i].is_zero());
}

TEST_CASE("orthogonality and completeness of character tables") {
    for (std::vector<int64_t> orders : {std::vector<int64_t>{4}, {2, 2}, {2, 6}, {12}, {2, 2, 2}, {3, 6}}) {
        auto G = std::make_shared<const FiniteAbelianGroup>(orders);
        const CharacterTable table(G);
        const auto zero = CyclotomicInt(table.field());
        for (int a = 0; a < G->size(); ++a)
            for (int b = 0; b < G->size(); ++b) {
                CyclotomicInt s = zero;
                for (int g = 0; g < G->size(); ++g) s += table.value(a, g) * table.value(b, G->inv(g));
                CHECK(s == CyclotomicInt(table.field(), Rational(a == b ? G->size() : 0)));
            }
        GroupRingElement<CyclotomicInt> sum(G, zero);
        for (int chi = 0; chi < G->size(); ++chi) sum += table.idempotent(chi);
        CHECK(sum == GroupRingElement<CyclotomicInt>::scalar(G, zero, CyclotomicInt(table.field(), Rational(1))));
        for (int chi = 0; chi < G->size(); ++chi)
            CHECK(table.value(table.contragredient(chi), 1 % G->size()) * table.value(chi, 1 % G->size()) ==
                  CyclotomicInt(table.field(), Rational(1)));
    }
}

TEST_CASE("decompose and reconstruct are inverse on random elements") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coeff(-20, 20), den(1, 6);
    for (std::vector<int64_t> orders : {std::vector<int64_t>{2}, {4}, {2, 2}, {2, 4}, {12}, {2, 6}, {2, 12}, {3, 6}}) {
        auto G = std::make_shared<const FiniteAbelianGroup>(orders);
        const CharacterTable table(G);
        for (int trial = 0; trial < 10; ++trial) {
            QG x(G, Rational(0));
            for (int g = 0; g < G->size(); ++g) x.at(g) = Rational(coeff(rng), den(rng));
            const auto comp = table.decompose(x);
            // Component chi is sum_g x_g chi(g).
            for (int chi = 0; chi < G->size(); ++chi) {
                CyclotomicInt s(table.field());
                for (int g = 0; g < G->size(); ++g) s += table.value(chi, g) * CyclotomicInt(table.field(), x[g]);
                CHECK(comp[static_cast<size_t>(chi)] == s);
            }
            CHECK(table.reconstruct(comp) == to_cyclotomic(x, table.field()));
            CHECK(table.decompose(table.reconstruct(comp)) == comp);
        }
    }
}

TEST_CASE("field specs and groups serialize") {
    const auto spec = AbelianFieldSpec::make(12, {1, 7}, "Q(sqrt(-3))");
    CHECK(io::spec_from_json(io::to_json(spec)).fixing == spec.fixing);
    CHECK(io::spec_from_argument("zeta:7").modulus == 7);
    CHECK_THROWS_AS(io::spec_from_json(io::json{{"modulus", 5}, {"fixing", {2}}}), SchemaError);
    const auto places = parse_places("inf,3");
    CHECK(io::places_to_json(places) == io::json::parse(R"(["inf", 3])"));
    CHECK(io::places_from_json(io::places_to_json(places)) == places);
    const auto g = io::group_to_json(GaloisGroup(AbelianFieldSpec::cyclotomic(5)));
    CHECK(g["orders"] == io::json::parse("[4]"));
    CHECK(g["elements"].size() == 4);
}
