#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "iwasawa/bernoulli.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/rational.hpp"
#include "iwasawa/serialize.hpp"

using namespace iwk;

namespace {

// Bernoulli numbers from sum_{j<=m} C(m+1, j) B_j = 0, then B_k(x) = sum_j C(k, j) B_j x^{k-j}.
std::vector<Rational> oracle_bernoulli_numbers(int kmax) {
    std::vector<Rational> B{Rational(1)};
    for (int m = 1; m <= kmax; ++m) {
        Rational s(0);
        for (int j = 0; j < m; ++j) s += Rational(nt::binomial(m + 1, j)) * B[static_cast<size_t>(j)];
        B.push_back(-s / Rational(m + 1));
    }
    return B;
}

std::vector<Rational> oracle_bernoulli_poly(int k) {
    const auto B = oracle_bernoulli_numbers(k);
    std::vector<Rational> c(static_cast<size_t>(k + 1), Rational(0));
    for (int j = 0; j <= k; ++j) c[static_cast<size_t>(k - j)] = Rational(nt::binomial(k, j)) * B[static_cast<size_t>(j)];
    return c;
}

Rational eval(const std::vector<Rational>& c, const Rational& x) {
    Rational acc(0);
    for (size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

// Teichmueller lift by iterating a -> a^p until it stabilises mod p^N.
int64_t oracle_teichmuller(int64_t a, int64_t p, int N) {
    const int64_t q = nt::ipow(p, N);
    int64_t x = nt::mod(a, q);
    for (int i = 0; i <= N + 1; ++i) x = nt::powmod(x, p, q);
    return x;
}

}  // namespace

TEST_CASE("rationals are kept in lowest terms") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).str() == "-3/2");
    CHECK(Rational::parse("4/2").str() == "2");
    CHECK(Rational(6, -4).denominator() == 2);
    CHECK_THROWS(Rational(1, 0));
    CHECK_THROWS_AS(Rational::parse("1/x"), SchemaError);
}

TEST_CASE("bernoulli polynomials: small cases") {
    CHECK(bernoulli_polynomial(0).coeffs == std::vector<Rational>{Rational(1)});
    CHECK(bernoulli_polynomial(1).coeffs == std::vector<Rational>{Rational(-1, 2), Rational(1)});
    CHECK(bernoulli_polynomial(2).coeffs == std::vector<Rational>{Rational(1, 6), Rational(-1), Rational(1)});
}

TEST_CASE("bernoulli polynomials agree with the recurrence oracle") {
    for (int k = 0; k <= 24; ++k) {
        CAPTURE(k);
        CHECK(bernoulli_polynomial(k).coeffs == oracle_bernoulli_poly(k));
        CHECK(bernoulli_number(k) == oracle_bernoulli_numbers(k).back());
    }
}

TEST_CASE("B_k(x+1) - B_k(x) = k x^(k-1)") {
    for (int k = 1; k <= 20; ++k)
        for (auto x : {Rational(0), Rational(1, 3), Rational(-5, 7), Rational(2)}) {
            const auto P = bernoulli_polynomial(k);
            CHECK(P(x + Rational(1)) - P(x) == Rational(k) * x.pow(k - 1));
        }
}

TEST_CASE("multiplication theorem sum_a B_k(a/f) = f^(1-k) B_k") {
    for (int k = 0; k <= 10; ++k)
        for (long f = 1; f <= 12; ++f) {
            Rational s(0);
            const auto P = bernoulli_polynomial(k);
            for (long a = 0; a < f; ++a) s += P(Rational(a, f));
            CHECK(s == Rational(f).pow(1 - k) * bernoulli_number(k));
        }
}

TEST_CASE("hurwitz zeta at non-positive integers") {
    CHECK(hurwitz_zeta_nonpos(0, 1, 3) == Rational(1, 6));
    CHECK(hurwitz_zeta_nonpos(0, 2, 3) == Rational(-1, 6));
    CHECK(hurwitz_zeta_nonpos(-1, 1, 3) == Rational(1, 36));
    CHECK_THROWS_AS(hurwitz_zeta_nonpos(1, 1, 3), PreconditionError);
    for (int r = 0; r >= -6; --r)
        for (long f = 1; f <= 9; ++f)
            for (long a = 1; a <= f; ++a) {
                const int k = 1 - r;
                CHECK(hurwitz_zeta_nonpos(r, a, f) == -eval(oracle_bernoulli_poly(k), Rational(a, f)) / Rational(k));
            }
}

TEST_CASE("teichmueller lifts") {
    CHECK(teichmuller(1, 5, 2).residue() == 1);
    CHECK(teichmuller(2, 5, 2).residue() == 7);
    CHECK(teichmuller(-1, 7, 3).residue() == 342);
    CHECK_THROWS_AS(teichmuller(10, 5, 2), PreconditionError);
    for (int64_t p : {3, 5, 7, 11})
        for (int N = 1; N <= 4; ++N) {
            const int64_t q = nt::ipow(p, N);
            for (int64_t a = 1; a < 3 * p; ++a) {
                if (a % p == 0) continue;
                const auto w = teichmuller(a, p, N);
                CHECK(w.residue() == oracle_teichmuller(a, p, N));
                CHECK(nt::mod(w.residue() - a, p) == 0);
                CHECK(w.pow(p - 1).residue() == 1 % q);
                for (int64_t b = 1; b < p; ++b) CHECK(w * teichmuller(b, p, N) == teichmuller(a * b, p, N));
            }
        }
}

TEST_CASE("p-adic unit inverse") {
    CHECK(padic_unit_inverse(PadicInt(3, 2, 1)).residue() == 1);
    CHECK(padic_unit_inverse(PadicInt(3, 2, 2)).residue() == 5);
    CHECK_THROWS_AS(padic_unit_inverse(PadicInt(3, 2, 3)), DivisionByNonUnit);
    for (int64_t x = 1; x < 125; ++x) {
        if (x % 5 == 0) continue;
        const PadicInt u(5, 3, x);
        CHECK((u * padic_unit_inverse(u)).residue() == 1);
    }
}

TEST_CASE("mixed precision truncates to the smaller precision") {
    const PadicInt a(3, 3, 20), b(3, 1, 2);
    CHECK((a + b).precision() == 1);
    CHECK((a + b).residue() == (20 + 2) % 3);
    CHECK((a * b).residue() == (20 * 2) % 3);
    CHECK(PadicInt::from_rational(Rational(1, 2), 3, 2).residue() == 5);
    CHECK_THROWS_AS(PadicInt::from_rational(Rational(1, 3), 3, 2), DivisionByNonUnit);
}

TEST_CASE("cyclotomic integers reduce modulo the cyclotomic polynomial") {
    for (long n : {1, 2, 3, 4, 5, 6, 8, 12}) {
        auto F = make_cyclotomic_field(n);
        CHECK(F->degree() == nt::euler_phi(n));
        const auto z = CyclotomicInt::root_of_unity(F, 1);
        CyclotomicInt power(F, Rational(1)), sum(F);
        for (long k = 0; k < n; ++k) {
            sum += power;
            power *= z;
        }
        CHECK(power == CyclotomicInt(F, Rational(1)));
        if (n > 1) CHECK(sum.is_zero());
        CHECK(CyclotomicInt::root_of_unity(F, n + 3) == CyclotomicInt::root_of_unity(F, 3));
    }
}

TEST_CASE("exact values serialize losslessly") {
    for (auto x : {Rational(0), Rational(-7), Rational(22, 7), Rational(-1, 36)}) {
        const auto j = io::to_json(x);
        CHECK(j.is_string());
        CHECK(io::rational_from_json(j) == x);
    }
    CHECK(io::to_json(Rational(3)).get<std::string>() == "3");
    const PadicInt y(7, 3, 300);
    const auto j = io::to_json(y);
    CHECK(j["p"] == 7);
    CHECK(j["N"] == 3);
    CHECK(j["residue"] == 300);
    CHECK(io::padic_from_json(j) == y);
    CHECK_THROWS_AS(io::padic_from_json(io::json{{"p", 7}, {"N", 3}, {"residue", 400}}), SchemaError);
}
