#include "iwasawa/bernoulli.hpp"

#include <string>

#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk {

namespace {

constexpr int kTableSize = 96;

mpz_class binom(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

std::vector<Rational> bernoulli_numbers_upto(int k) {
    // sum_{j=0}^{n} C(n+1, j) B_j = 0 for n >= 1
    std::vector<Rational> b(static_cast<size_t>(k) + 1);
    b[0] = Rational(1);
    for (int n = 1; n <= k; ++n) {
        Rational acc(0);
        for (int j = 0; j < n; ++j) acc += Rational(binom(n + 1, j), 1) * b[static_cast<size_t>(j)];
        b[static_cast<size_t>(n)] = -acc / Rational(n + 1);
    }
    return b;
}

const std::vector<Rational>& bernoulli_table() {
    static const std::vector<Rational> table = bernoulli_numbers_upto(kTableSize);
    return table;
}

}  // namespace

Rational RationalPolynomial::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Rational bernoulli_number(int k) {
    if (k < 0) throw PreconditionError("bernoulli_number: negative index");
    if (k <= kTableSize) return bernoulli_table()[static_cast<size_t>(k)];
    return bernoulli_numbers_upto(k).back();
}

RationalPolynomial bernoulli_polynomial(int k) {
    if (k < 0) throw PreconditionError("bernoulli_polynomial: negative index");
    RationalPolynomial poly;
    poly.coeffs.assign(static_cast<size_t>(k) + 1, Rational(0));
    for (int j = 0; j <= k; ++j)
        poly.coeffs[static_cast<size_t>(k - j)] = Rational(binom(k, j), 1) * bernoulli_number(j);
    return poly;
}

Rational hurwitz_zeta_nonpos(int r, long a, long f) {
    if (r > 0) throw PreconditionError("hurwitz_zeta_nonpos: r must be <= 0, got " + std::to_string(r));
    if (f < 1 || a < 1 || a > f) throw PreconditionError("hurwitz_zeta_nonpos: need 1 <= a <= f");
    const int k = 1 - r;
    return -bernoulli_polynomial(k)(Rational(a, f)) / Rational(k);
}

}  // namespace iwk
