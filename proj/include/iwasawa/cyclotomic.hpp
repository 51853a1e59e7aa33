#pragma once

#include <memory>
#include <vector>

#include "iwasawa/rational.hpp"

namespace iwk {

/// Shared description of Q(zeta_n): the order and its cyclotomic polynomial.
class CyclotomicField {
public:
    explicit CyclotomicField(long order);

    long order() const { return order_; }
    int degree() const { return static_cast<int>(phi_.size()) - 1; }
    /// Integer coefficients of Phi_n, lowest degree first; monic.
    const std::vector<long>& minimal_polynomial() const { return phi_; }

private:
    long order_;
    std::vector<long> phi_;
};

using CyclotomicFieldPtr = std::shared_ptr<const CyclotomicField>;

CyclotomicFieldPtr make_cyclotomic_field(long order);

/// Element of Q(zeta_n) in the power basis 1, zeta, ..., zeta^{phi(n)-1}.
class CyclotomicInt {
public:
    explicit CyclotomicInt(CyclotomicFieldPtr field);
    CyclotomicInt(CyclotomicFieldPtr field, const Rational& scalar);
    /// zeta_n^k.
    static CyclotomicInt root_of_unity(CyclotomicFieldPtr field, long k);

    long order() const { return field_->order(); }
    const CyclotomicFieldPtr& field() const { return field_; }
    const std::vector<Rational>& coefficients() const { return c_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Constant term (meaningful when is_rational()).
    const Rational& rational_part() const { return c_[0]; }

    CyclotomicInt operator-() const;
    CyclotomicInt& operator+=(const CyclotomicInt& o);
    CyclotomicInt& operator-=(const CyclotomicInt& o);
    CyclotomicInt& operator*=(const CyclotomicInt& o);
    friend CyclotomicInt operator+(CyclotomicInt a, const CyclotomicInt& b) { return a += b; }
    friend CyclotomicInt operator-(CyclotomicInt a, const CyclotomicInt& b) { return a -= b; }
    friend CyclotomicInt operator*(CyclotomicInt a, const CyclotomicInt& b) { return a *= b; }
    friend bool operator==(const CyclotomicInt& a, const CyclotomicInt& b);

private:
    void check_same_field(const CyclotomicInt& o) const;
    /// Reduces a coefficient list of arbitrary length modulo Phi_n.
    void reduce_from(std::vector<Rational> raw);

    CyclotomicFieldPtr field_;
    std::vector<Rational> c_;
};

}  // namespace iwk
