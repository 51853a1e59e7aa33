#include "iwasawa/cyclotomic.hpp"

#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk {

namespace {

// Exact division of integer polynomials by a monic divisor.
std::vector<long> divide_monic(std::vector<long> num, const std::vector<long>& den) {
    const size_t dn = den.size() - 1;
    std::vector<long> quot(num.size() - dn, 0);
    for (size_t i = num.size(); i-- > dn;) {
        long c = num[i];
        quot[i - dn] = c;
        for (size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
    }
    return quot;
}

std::vector<long> cyclotomic_polynomial(long n) {
    std::vector<long> poly(static_cast<size_t>(n) + 1, 0);
    poly[0] = -1;
    poly[static_cast<size_t>(n)] = 1;
    for (long d : nt::divisors(n))
        if (d < n) poly = divide_monic(poly, cyclotomic_polynomial(d));
    return poly;
}

}  // namespace

CyclotomicField::CyclotomicField(long order) : order_(order) {
    if (order < 1) throw PreconditionError("cyclotomic order must be positive");
    phi_ = cyclotomic_polynomial(order);
}

CyclotomicFieldPtr make_cyclotomic_field(long order) { return std::make_shared<const CyclotomicField>(order); }

CyclotomicInt::CyclotomicInt(CyclotomicFieldPtr field)
    : field_(std::move(field)), c_(static_cast<size_t>(field_->degree()), Rational(0)) {}

CyclotomicInt::CyclotomicInt(CyclotomicFieldPtr field, const Rational& scalar) : CyclotomicInt(std::move(field)) {
    c_[0] = scalar;
}

CyclotomicInt CyclotomicInt::root_of_unity(CyclotomicFieldPtr field, long k) {
    CyclotomicInt out(field);
    long e = nt::mod(k, field->order());
    std::vector<Rational> raw(static_cast<size_t>(e) + 1, Rational(0));
    raw[static_cast<size_t>(e)] = Rational(1);
    out.reduce_from(std::move(raw));
    return out;
}

bool CyclotomicInt::is_zero() const {
    for (const auto& c : c_)
        if (!c.is_zero()) return false;
    return true;
}

bool CyclotomicInt::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (!c_[i].is_zero()) return false;
    return true;
}

void CyclotomicInt::check_same_field(const CyclotomicInt& o) const {
    if (order() != o.order()) throw PreconditionError("cyclotomic values of different orders");
}

void CyclotomicInt::reduce_from(std::vector<Rational> raw) {
    const auto& phi = field_->minimal_polynomial();
    const size_t d = phi.size() - 1;
    for (size_t i = raw.size(); i-- > d;) {
        if (raw[i].is_zero()) continue;
        Rational c = raw[i];
        for (size_t j = 0; j <= d; ++j) raw[i - d + j] -= c * Rational(phi[j]);
    }
    raw.resize(d, Rational(0));
    c_ = std::move(raw);
}

CyclotomicInt CyclotomicInt::operator-() const {
    CyclotomicInt out(*this);
    for (auto& c : out.c_) c = -c;
    return out;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
    check_same_field(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator-=(const CyclotomicInt& o) {
    check_same_field(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

CyclotomicInt& CyclotomicInt::operator*=(const CyclotomicInt& o) {
    check_same_field(o);
    std::vector<Rational> raw(c_.size() * 2, Rational(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            if (!o.c_[j].is_zero()) raw[i + j] += c_[i] * o.c_[j];
    }
    reduce_from(std::move(raw));
    return *this;
}

bool operator==(const CyclotomicInt& a, const CyclotomicInt& b) {
    return a.order() == b.order() && a.c_ == b.c_;
}

}  // namespace iwk
