#include "iwasawa/numtheory.hpp"

#include <limits>
#include <cstdlib>
#include <numeric>
#include <string>
#include <tuple>

#include "iwasawa/errors.hpp"

namespace iwk::nt {

int64_t powmod(int64_t base, int64_t exp, int64_t m) {
    if (m == 1) return 0;
    int64_t result = 1;
    base = mod(base, m);
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

int64_t gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t lcm(int64_t a, int64_t b) { return std::lcm(a, b); }

int64_t inverse_mod(int64_t a, int64_t m) {
    int64_t r0 = m, r1 = mod(a, m);
    int64_t s0 = 0, s1 = 1;
    while (r1 != 0) {
        int64_t q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    if (r0 != 1) throw DivisionByNonUnit("element is not invertible modulo " + std::to_string(m));
    return mod(s0, m);
}

int64_t ipow(int64_t b, int e) {
    int64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && std::abs(r) > std::numeric_limits<int64_t>::max() / std::abs(b))
            throw PreconditionError("integer power overflows 64 bits");
        r *= b;
    }
    return r;
}

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<int64_t, int>> factor(int64_t n) {
    std::vector<std::pair<int64_t, int>> out;
    for (int64_t d = 2; d * d <= n; ++d) {
        int e = 0;
        while (n % d == 0) {
            n /= d;
            ++e;
        }
        if (e) out.emplace_back(d, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

std::vector<int64_t> divisors(int64_t n) {
    std::vector<int64_t> out;
    for (int64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

int64_t euler_phi(int64_t n) {
    int64_t r = n;
    for (auto [p, e] : factor(n)) r = r / p * (p - 1);
    return r;
}

int64_t primitive_root(int64_t p) {
    if (!is_prime(p)) throw PreconditionError("primitive_root needs a prime");
    if (p == 2) return 1;
    const auto fac = factor(p - 1);
    for (int64_t g = 2;; ++g) {
        bool ok = true;
        for (auto [q, e] : fac) ok = ok && powmod(g, (p - 1) / q, p) != 1;
        if (ok) return g;
    }
}

int valuation(int64_t n, int64_t p) {
    int v = 0;
    while (n != 0 && n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    int64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace iwk::nt
