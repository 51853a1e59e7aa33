#include "iwasawa/rational.hpp"

#include "iwasawa/errors.hpp"

namespace iwk {

Rational::Rational(long num, long den) {
    if (den == 0) throw DivisionByNonUnit("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational::Rational(const mpz_class& num, const mpz_class& den) {
    if (den == 0) throw DivisionByNonUnit("rational with zero denominator");
    v_ = mpq_class(num, den);
    v_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    std::string s(text);
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(mpz_class(s), mpz_class(1));
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den <= 0) throw SchemaError("rational denominator must be positive: " + s);
        return Rational(num, den);
    } catch (const std::invalid_argument&) {
        throw SchemaError("not a rational: " + s);
    }
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational Rational::pow(long e) const {
    if (e < 0) {
        if (is_zero()) throw DivisionByNonUnit("zero to a negative power");
        return Rational(1) / pow(-e);
    }
    mpz_class num, den;
    mpz_pow_ui(num.get_mpz_t(), v_.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(den.get_mpz_t(), v_.get_den_mpz_t(), static_cast<unsigned long>(e));
    return Rational(num, den);
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw DivisionByNonUnit("division by zero rational");
    v_ /= o.v_;
    return *this;
}

int valuation(const mpz_class& x, long p) {
    if (x == 0) return INT32_MAX;
    mpz_class y = abs(x);
    int v = 0;
    while (mpz_divisible_ui_p(y.get_mpz_t(), static_cast<unsigned long>(p))) {
        y /= p;
        ++v;
    }
    return v;
}

}  // namespace iwk
