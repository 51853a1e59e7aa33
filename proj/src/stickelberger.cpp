#include "iwasawa/stickelberger.hpp"

#include <algorithm>

#include "iwasawa/bernoulli.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk {

namespace {

bool contains_prime(const std::vector<Place>& places, int64_t q) {
    return std::any_of(places.begin(), places.end(), [&](const Place& v) { return v.prime == q; });
}

void require_admissible_S(const GaloisGroup& gal, const std::vector<Place>& S) {
    if (!contains_prime(S, 0)) throw PreconditionError("S must contain the infinite place");
    for (int64_t q : gal.ramified_primes())
        if (!contains_prime(S, q))
            throw PreconditionError("S is missing the ramified prime " + std::to_string(q));
}

Rational int_power(int64_t base, int e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(e));
    return Rational(out, mpz_class(1));
}

// v^k for any integer k
Rational signed_power(int64_t v, int k) {
    return k >= 0 ? int_power(v, k) : Rational(1) / int_power(v, -k);
}

QGroupRing one_minus(const GaloisGroup& gal, const Rational& c, FiniteAbelianGroup::Element g) {
    const auto& G = gal.group();
    auto out = QGroupRing::scalar(G, Rational(0), Rational(1));
    out.at(g) -= c;
    return out;
}

}  // namespace

std::vector<Rational> partial_zeta_vector(const GaloisGroup& gal, const std::vector<Place>& S, int r) {
    auto th = theta_S(gal, S, r);
    const auto& G = *gal.group();
    std::vector<Rational> out(static_cast<size_t>(G.size()));
    for (int g = 0; g < G.size(); ++g) out[static_cast<size_t>(G.inv(g))] = th[g];
    return out;
}

QGroupRing theta_S(const GaloisGroup& gal, const std::vector<Place>& S, int r) {
    if (r > 0) throw PreconditionError("only non-positive r are supported");
    require_admissible_S(gal, S);
    const auto& G = gal.group();
    const int64_t f = gal.conductor();
    const Rational scale = int_power(f, -r);
    QGroupRing th(G, Rational(0));
    for (int64_t b = 1; b <= f; ++b) {
        if (nt::gcd(b, f) != 1) continue;
        auto sigma = gal.element_of_unramified(b);
        th.at(G->inv(sigma)) += scale * hurwitz_zeta_nonpos(r, b, f);
    }
    std::vector<Place> current{Place{0}};
    for (int64_t q : gal.ramified_primes()) current.push_back(Place{q});
    for (const auto& v : S) {
        if (v.is_infinite() || contains_prime(current, v.prime)) continue;
        th = euler_enlarge(gal, th, v.prime, r, current);
        current.push_back(v);
    }
    return th;
}

QGroupRing euler_enlarge(const GaloisGroup& gal, const QGroupRing& x, int64_t v, int r,
                         const std::vector<Place>& S) {
    if (contains_prime(S, v)) throw PreconditionError("prime " + std::to_string(v) + " is already in S");
    auto sigma = gal.frobenius(v);
    return x * one_minus(gal, signed_power(v, -r), gal.group()->inv(sigma));
}

QGroupRing delta_T(const GaloisGroup& gal, const std::vector<Place>& T, int r) {
    const auto& G = gal.group();
    auto out = QGroupRing::scalar(G, Rational(0), Rational(1));
    for (const auto& v : T) {
        if (v.is_infinite()) throw PreconditionError("T must consist of finite primes");
        if (gal.conductor() % v.prime == 0)
            throw PreconditionError("T contains the ramified prime " + std::to_string(v.prime));
        auto sigma = gal.frobenius(v.prime);
        out = out * one_minus(gal, signed_power(v.prime, 1 - r), G->inv(sigma));
    }
    return out;
}

StickelbergerElement theta(const GaloisGroup& gal, const std::vector<Place>& S, const std::vector<Place>& T, int r) {
    for (const auto& v : T)
        if (std::find(S.begin(), S.end(), v) != S.end())
            throw PreconditionError("S and T must be disjoint (shared prime " + std::to_string(v.prime) + ")");
    auto value = delta_T(gal, T, r) * theta_S(gal, S, r);
    return StickelbergerElement{std::move(value), gal.spec(), S, T, r};
}

StickelbergerElement theta(const AbelianFieldSpec& spec, const std::vector<Place>& S, const std::vector<Place>& T,
                           int r) {
    return theta(GaloisGroup(spec), S, T, r);
}

bool verify_integrality(const StickelbergerElement& th) {
    const auto& c = th.value.coefficients();
    return std::all_of(c.begin(), c.end(), [](const Rational& x) { return x.is_integer(); });
}

bool is_p_integral(const QGroupRing& x, int64_t p) {
    const auto& c = x.coefficients();
    return std::all_of(c.begin(), c.end(), [&](const Rational& v) { return v.denominator() % p != 0; });
}

ZpGroupRing reduce_mod(const QGroupRing& x, int64_t p, int N) {
    return x.map_coefficients<PadicInt>([&](const Rational& c) { return PadicInt::from_rational(c, p, N); },
                                        PadicInt(p, N));
}

Vec to_vec(const ZpGroupRing& x) {
    Vec v;
    for (const auto& c : x.coefficients()) v.push_back(c.residue());
    return v;
}

CyclotomicInt DirichletCharacter::operator()(int64_t a) const {
    int64_t e = exps[static_cast<size_t>(nt::mod(a, modulus))];
    if (e < 0) return CyclotomicInt(field);
    return CyclotomicInt::root_of_unity(field, e);
}

bool DirichletCharacter::is_primitive() const {
    for (int64_t d : nt::divisors(modulus)) {
        if (d == modulus) break;
        bool factors = true;
        for (int64_t a = 0; a < modulus && factors; ++a)
            if (exps[static_cast<size_t>(a)] > 0 && nt::mod(a - 1, d) == 0) factors = false;
        if (factors) return false;
    }
    return true;
}

DirichletCharacter primitive_character(const GaloisGroup& gal, const CharacterTable& table, int chi) {
    const int64_t m = gal.spec().modulus;
    auto value_at = [&](int64_t a) { return table.value_exponent(chi, gal.element_of(a)); };
    int64_t f = m;
    for (int64_t d : nt::divisors(m)) {
        bool ok = true;
        for (int64_t a = 1; a < m && ok; ++a)
            if (nt::gcd(a, m) == 1 && nt::mod(a - 1, d) == 0 && value_at(a) != 0) ok = false;
        if (ok) {
            f = d;
            break;
        }
    }
    DirichletCharacter out{f, table.field(), std::vector<int64_t>(static_cast<size_t>(f), -1)};
    for (int64_t b = 0; b < f; ++b) {
        if (nt::gcd(b, f) != 1) continue;
        for (int64_t c = b; c < b + m * f + 1; c += f)
            if (nt::gcd(c, m) == 1) {
                out.exps[static_cast<size_t>(b)] = value_at(c);
                break;
            }
    }
    return out;
}

CyclotomicInt dirichlet_L_nonpos(const DirichletCharacter& chi, const std::vector<Place>& S, int r) {
    if (r > 0) throw PreconditionError("only non-positive r are supported");
    if (!chi.is_primitive()) throw PreconditionError("dirichlet_L_nonpos needs a primitive character");
    const int n = 1 - r;
    const int64_t f = chi.modulus;
    const auto Bn = bernoulli_polynomial(n);
    CyclotomicInt sum(chi.field);
    for (int64_t a = 1; a <= f; ++a) {
        if (nt::gcd(a, f) != 1) continue;
        sum += chi(a) * CyclotomicInt(chi.field, Bn(Rational(a, f)));
    }
    CyclotomicInt L = sum * CyclotomicInt(chi.field, -int_power(f, n - 1) / Rational(n));
    for (const auto& v : S) {
        if (v.is_infinite() || f % v.prime == 0) continue;
        L *= CyclotomicInt(chi.field, Rational(1)) - chi(v.prime) * CyclotomicInt(chi.field, signed_power(v.prime, -r));
    }
    return L;
}

}  // namespace iwk
