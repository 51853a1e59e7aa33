#pragma once

#include <cstdint>
#include <string>

#include "iwasawa/rational.hpp"

namespace iwk {

/// An element of Z/p^N, the capped-precision model of Z_p.
///
/// Binary operations between values of different precision truncate to the
/// smaller precision. Values at different primes never mix.
class PadicInt {
public:
    PadicInt(int64_t p, int precision, int64_t value = 0);
    /// Reduction of a p-integral rational; throws DivisionByNonUnit if p divides the denominator.
    static PadicInt from_rational(const Rational& x, int64_t p, int precision);

    int64_t prime() const { return p_; }
    int precision() const { return n_; }
    int64_t modulus() const { return q_; }
    int64_t residue() const { return r_; }

    bool is_zero() const { return r_ == 0; }
    bool is_unit() const { return r_ % p_ != 0; }
    /// Largest k <= N with p^k | residue (N for zero).
    int valuation() const;

    PadicInt inverse() const;
    PadicInt pow(int64_t e) const;
    PadicInt truncate(int precision) const;

    PadicInt operator-() const;
    friend PadicInt operator+(const PadicInt& a, const PadicInt& b);
    friend PadicInt operator-(const PadicInt& a, const PadicInt& b);
    friend PadicInt operator*(const PadicInt& a, const PadicInt& b);
    PadicInt& operator+=(const PadicInt& o) { return *this = *this + o; }
    PadicInt& operator-=(const PadicInt& o) { return *this = *this - o; }
    PadicInt& operator*=(const PadicInt& o) { return *this = *this * o; }
    friend bool operator==(const PadicInt& a, const PadicInt& b) {
        return a.p_ == b.p_ && a.n_ == b.n_ && a.r_ == b.r_;
    }

private:
    int64_t p_;
    int n_;
    int64_t q_;
    int64_t r_;
};

/// Teichmueller representative: the (p-1)-st root of unity congruent to a mod p.
PadicInt teichmuller(int64_t a, int64_t p, int precision);

/// Inverse of a unit of Z/p^N.
PadicInt padic_unit_inverse(const PadicInt& x);

}  // namespace iwk
