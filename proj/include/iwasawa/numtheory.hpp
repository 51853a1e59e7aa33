#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace iwk::nt {

/// Least non-negative residue of a modulo m (m > 0).
inline int64_t mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

inline int64_t mulmod(int64_t a, int64_t b, int64_t m) {
    return static_cast<int64_t>((static_cast<__int128>(a) * b) % m);
}

int64_t powmod(int64_t base, int64_t exp, int64_t m);
int64_t gcd(int64_t a, int64_t b);
int64_t lcm(int64_t a, int64_t b);

/// Inverse of a modulo m; throws DivisionByNonUnit when gcd(a, m) != 1.
int64_t inverse_mod(int64_t a, int64_t m);

/// b^e with an overflow check.
int64_t ipow(int64_t b, int e);

bool is_prime(int64_t n);
/// Prime factorisation as (prime, exponent) pairs, primes ascending.
std::vector<std::pair<int64_t, int>> factor(int64_t n);
std::vector<int64_t> divisors(int64_t n);
int64_t euler_phi(int64_t n);
/// Smallest generator of (Z/p)^x for a prime p.
int64_t primitive_root(int64_t p);
/// Exponent of p in n (n != 0).
int valuation(int64_t n, int64_t p);
/// Binomial coefficient C(n, k) as int64 (small arguments only).
int64_t binomial(int n, int k);

}  // namespace iwk::nt
