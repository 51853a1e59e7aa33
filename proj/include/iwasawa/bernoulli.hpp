#pragma once

#include <vector>

#include "iwasawa/rational.hpp"

namespace iwk {

/// Dense polynomial with rational coefficients, lowest degree first.
struct RationalPolynomial {
    std::vector<Rational> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    Rational operator()(const Rational& x) const;
    friend bool operator==(const RationalPolynomial&, const RationalPolynomial&) = default;
};

/// k-th Bernoulli number with B_1 = -1/2.
Rational bernoulli_number(int k);

/// B_k(x) = sum_j C(k, j) B_j x^{k-j}.
RationalPolynomial bernoulli_polynomial(int k);

/// zeta(r, a/f) = -B_{1-r}(a/f) / (1-r) for r <= 0 and 1 <= a <= f.
Rational hurwitz_zeta_nonpos(int r, long a, long f);

}  // namespace iwk
