#include "iwasawa/padic.hpp"

#include <algorithm>

#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk {

PadicInt::PadicInt(int64_t p, int precision, int64_t value) : p_(p), n_(precision) {
    if (p < 2 || !nt::is_prime(p)) throw PreconditionError("p-adic prime must be prime");
    if (precision < 1) throw PreconditionError("p-adic precision must be positive");
    q_ = nt::ipow(p, precision);
    if (q_ > (int64_t{1} << 40)) throw PrecisionBudgetError("p^N exceeds supported range");
    r_ = nt::mod(value, q_);
}

PadicInt PadicInt::from_rational(const Rational& x, int64_t p, int precision) {
    PadicInt out(p, precision);
    mpz_class den = x.denominator();
    if (mpz_divisible_ui_p(den.get_mpz_t(), static_cast<unsigned long>(p)))
        throw DivisionByNonUnit("rational " + x.str() + " is not " + std::to_string(p) + "-integral");
    mpz_class q(static_cast<long>(out.q_));
    mpz_class num = x.numerator() % q;
    mpz_class dm = den % q;
    int64_t n = nt::mod(num.get_si(), out.q_);
    int64_t d = nt::mod(dm.get_si(), out.q_);
    out.r_ = nt::mulmod(n, nt::inverse_mod(d, out.q_), out.q_);
    return out;
}

int PadicInt::valuation() const {
    if (r_ == 0) return n_;
    return nt::valuation(r_, p_);
}

PadicInt PadicInt::inverse() const {
    if (!is_unit())
        throw DivisionByNonUnit(std::to_string(r_) + " is not a unit mod " + std::to_string(q_));
    return PadicInt(p_, n_, nt::inverse_mod(r_, q_));
}

PadicInt PadicInt::pow(int64_t e) const {
    if (e < 0) return inverse().pow(-e);
    return PadicInt(p_, n_, nt::powmod(r_, e, q_));
}

PadicInt PadicInt::truncate(int precision) const {
    if (precision > n_) throw PrecisionBudgetError("cannot raise p-adic precision");
    return PadicInt(p_, precision, r_);
}

PadicInt PadicInt::operator-() const { return PadicInt(p_, n_, q_ - r_); }

namespace {
int common_precision(const PadicInt& a, const PadicInt& b) {
    if (a.prime() != b.prime()) throw PreconditionError("p-adic values at different primes");
    return std::min(a.precision(), b.precision());
}
}  // namespace

PadicInt operator+(const PadicInt& a, const PadicInt& b) {
    int n = common_precision(a, b);
    PadicInt out(a.p_, n);
    out.r_ = (a.r_ % out.q_ + b.r_ % out.q_) % out.q_;
    return out;
}

PadicInt operator-(const PadicInt& a, const PadicInt& b) {
    int n = common_precision(a, b);
    PadicInt out(a.p_, n);
    out.r_ = nt::mod(a.r_ % out.q_ - b.r_ % out.q_, out.q_);
    return out;
}

PadicInt operator*(const PadicInt& a, const PadicInt& b) {
    int n = common_precision(a, b);
    PadicInt out(a.p_, n);
    out.r_ = nt::mulmod(a.r_ % out.q_, b.r_ % out.q_, out.q_);
    return out;
}

PadicInt teichmuller(int64_t a, int64_t p, int precision) {
    if (p == 2) throw PreconditionError("teichmuller: p must be odd");
    if (nt::mod(a, p) == 0) throw PreconditionError("teichmuller: p divides a");
    PadicInt x(p, precision, a);
    // a -> a^p contracts towards the root of unity; N steps reach the fixed point mod p^N.
    for (int i = 0; i < precision; ++i) x = x.pow(p);
    return x;
}

PadicInt padic_unit_inverse(const PadicInt& x) { return x.inverse(); }

}  // namespace iwk
