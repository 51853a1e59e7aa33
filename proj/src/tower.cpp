#include "iwasawa/tower.hpp"

#include <algorithm>

#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk {

namespace {

bool zeta_p_in(const AbelianFieldSpec& spec, int64_t p) {
    if (spec.modulus % p != 0) return false;
    return std::all_of(spec.fixing.begin(), spec.fixing.end(), [&](int64_t a) { return nt::mod(a, p) == 1; });
}

bool contains_prime(const std::vector<Place>& places, int64_t q) {
    return std::any_of(places.begin(), places.end(), [&](const Place& v) { return v.prime == q; });
}

}  // namespace

FiniteLevelAlgebra::FiniteLevelAlgebra(const AbelianFieldSpec& base, int64_t p, int N, int n)
    : base_(conductor_reduce(base)),
      p_(p),
      N_(N),
      n_(n),
      gal_(layer(base_, p, n)),
      has_chi_(zeta_p_in(base_, p)) {
    if (N < 1) throw PreconditionError("precision must be positive");
}

PadicInt FiniteLevelAlgebra::chi_cyc(FiniteAbelianGroup::Element g) const {
    if (!has_chi_)
        throw PreconditionError("the cyclotomic character needs zeta_" + std::to_string(p_) + " in " + base_.label);
    const int prec = std::min(N_, n_ + 1);
    return PadicInt(p_, prec, representative(g));
}

PadicInt FiniteLevelAlgebra::omega(FiniteAbelianGroup::Element g) const {
    const PadicInt c = chi_cyc(g);
    return teichmuller(c.residue(), p_, c.precision());
}

PadicInt FiniteLevelAlgebra::kappa(FiniteAbelianGroup::Element g) const {
    return chi_cyc(g) * padic_unit_inverse(omega(g));
}

FiniteAbelianGroup::Element FiniteLevelAlgebra::gamma() const {
    const int64_t M = spec().modulus;
    const int64_t pn1 = nt::ipow(p_, n_ + 1);
    const int64_t prime_to_p = M / pn1;
    // CRT: x = 1 + p mod p^{n+1}, x = 1 mod prime_to_p
    for (int64_t x = 1 + p_; x < M + 1 + p_; x += pn1)
        if (nt::mod(x - 1, prime_to_p) == 0) return gal_.element_of(x);
    throw std::logic_error("gamma: CRT failed");
}

PadicInt FiniteLevelAlgebra::u() const { return PadicInt(p_, std::min(N_, n_ + 1), 1 + p_); }

ZpGroupRing FiniteLevelAlgebra::basis(FiniteAbelianGroup::Element g) const {
    return ZpGroupRing::basis(group(), PadicInt(p_, N_), g, PadicInt(p_, N_, 1));
}

ZpGroupRing aug_project(const ZpGroupRing& x, const FiniteLevelAlgebra& from, const FiniteLevelAlgebra& to) {
    if (!(from.base().modulus == to.base().modulus && from.base().fixing == to.base().fixing) || from.p() != to.p())
        throw PreconditionError("aug_project between towers over different fields or primes");
    if (to.level() > from.level()) throw PreconditionError("aug_project can only lower the level");
    if (!(*x.group() == *from.group())) throw PreconditionError("element does not live at the source level");
    const int64_t target_mod = to.spec().modulus;
    return x.pushforward(to.group(), [&](FiniteAbelianGroup::Element g) {
        return to.galois().element_of(nt::mod(from.representative(g), target_mod));
    });
}

ZpGroupRing twist(const ZpGroupRing& x, int r, const FiniteLevelAlgebra& level) {
    const int N = x.zero().precision();
    if (N > level.level() + 1)
        throw PrecisionBudgetError("twist at level " + std::to_string(level.level()) + " needs N <= " +
                                   std::to_string(level.level() + 1) + ", got N = " + std::to_string(N));
    ZpGroupRing out(x.group(), x.zero());
    for (int g = 0; g < x.group()->size(); ++g) {
        if (x[g].is_zero()) continue;
        PadicInt c = level.chi_cyc(g).truncate(N).pow(r);
        out.at(g) = x[g] * c;
    }
    return out;
}

ZpGroupRing truncate(const ZpGroupRing& x, int precision) {
    return x.map_coefficients<PadicInt>([&](const PadicInt& c) { return c.truncate(precision); },
                                        x.zero().truncate(precision));
}

TowerElement theta_tower(const AbelianFieldSpec& spec, const std::vector<Place>& S, const std::vector<Place>& T,
                         int64_t p, int N, int n_max, int r) {
    if (p < 3 || !nt::is_prime(p)) throw PreconditionError("p must be an odd prime");
    if (n_max < 0) throw PreconditionError("n_max must be non-negative");
    const AbelianFieldSpec base = conductor_reduce(spec);
    if (nt::valuation(base.modulus, p) >= 2)
        throw PreconditionError("p^2 divides the conductor of " + base.label);
    if (!contains_prime(S, 0)) throw PreconditionError("S must contain the infinite place");
    if (!contains_prime(S, p)) throw PreconditionError("S must contain p = " + std::to_string(p));
    for (auto [q, e] : nt::factor(base.modulus))
        if (!contains_prime(S, q)) throw PreconditionError("S is missing the ramified prime " + std::to_string(q));

    TowerElement t;
    t.p = p;
    t.N = N;
    t.S = S;
    t.T = T;
    t.r = r;
    for (int n = 0; n <= n_max; ++n) {
        auto level = std::make_shared<const FiniteLevelAlgebra>(base, p, N, n);
        auto hyp = check_hyp_at_p(level->spec(), S, T, p);
        if (!hyp.holds)
            throw PreconditionError("layer " + std::to_string(n) + ": " + hyp.reason);
        auto th = theta(level->galois(), S, T, r);
        if (!is_p_integral(th.value, p))
            throw IntegralityError("Theta is not " + std::to_string(p) + "-integral at layer " + std::to_string(n), n);
        t.entries.push_back(reduce_mod(th.value, p, N));
        t.levels.push_back(std::move(level));
    }
    return t;
}

CoherenceReport coherence_check(const TowerElement& t) {
    for (int n = 0; n < t.n_max(); ++n) {
        const auto& upper = *t.levels[static_cast<size_t>(n + 1)];
        const auto& lower = *t.levels[static_cast<size_t>(n)];
        if (!(aug_project(t.entries[static_cast<size_t>(n + 1)], upper, lower) == t.entries[static_cast<size_t>(n)]))
            return {false, n};
    }
    return {true, std::nullopt};
}

CongruenceReport twist_congruence_check(const TowerElement& t_r, const TowerElement& t_0) {
    if (t_r.p != t_0.p || t_r.S != t_0.S || t_r.T != t_0.T || t_r.entries.size() != t_0.entries.size())
        throw PreconditionError("twist congruence needs towers over the same data");
    if (t_0.r != 0) throw PreconditionError("the reference tower must be at r = 0");
    for (size_t n = 0; n < t_r.entries.size(); ++n) {
        const auto& level = *t_r.levels[n];
        const int prec = std::min(std::min(t_r.N, t_0.N), static_cast<int>(n) + 1);
        const ZpGroupRing lhs = truncate(t_r.entries[n], prec);
        const ZpGroupRing rhs = twist(truncate(t_0.entries[n], prec), t_r.r, level);
        if (!(lhs == rhs)) return {false, static_cast<int>(n)};
    }
    return {true, std::nullopt};
}

AlgebraPtr level_algebra(const FiniteLevelAlgebra& level) {
    return group_algebra(level.group(), level.p(), level.precision());
}

AlgebraHom level_projection(const AlgebraPtr& upper_alg, const FiniteLevelAlgebra& upper, const AlgebraPtr& lower_alg,
                            const FiniteLevelAlgebra& lower) {
    std::vector<int> map;
    const int64_t target_mod = lower.spec().modulus;
    for (int g = 0; g < upper.group()->size(); ++g)
        map.push_back(lower.galois().element_of(nt::mod(upper.representative(g), target_mod)));
    return group_pushforward(upper_alg, lower_alg, map);
}

}  // namespace iwk
