#pragma once

#include <vector>

#include "iwasawa/abelian_field.hpp"
#include "iwasawa/characters.hpp"
#include "iwasawa/group_ring.hpp"
#include "iwasawa/howell.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/rational.hpp"

namespace iwk {

using QGroupRing = GroupRingElement<Rational>;
using ZpGroupRing = GroupRingElement<PadicInt>;

/// Theta_{S,T}(r) together with the data it was computed from.
struct StickelbergerElement {
    QGroupRing value;
    AbelianFieldSpec spec;
    std::vector<Place> S;
    std::vector<Place> T;
    int r = 0;
};

/// zeta_S(r, sigma) indexed by group element. S must contain S_ram and the infinite place.
std::vector<Rational> partial_zeta_vector(const GaloisGroup& gal, const std::vector<Place>& S, int r);

/// x * (1 - v^{-r} sigma_v^{-1}) for an unramified prime v outside S.
QGroupRing euler_enlarge(const GaloisGroup& gal, const QGroupRing& x, int64_t v, int r,
                         const std::vector<Place>& S);

/// prod_{v in T} (1 - v^{1-r} sigma_v^{-1}).
QGroupRing delta_T(const GaloisGroup& gal, const std::vector<Place>& T, int r);

/// sum_sigma zeta_S(r, sigma) sigma^{-1}.
QGroupRing theta_S(const GaloisGroup& gal, const std::vector<Place>& S, int r);

/// delta_T(r) * theta_S(r).
StickelbergerElement theta(const AbelianFieldSpec& spec, const std::vector<Place>& S, const std::vector<Place>& T,
                           int r);
StickelbergerElement theta(const GaloisGroup& gal, const std::vector<Place>& S, const std::vector<Place>& T, int r);

bool verify_integrality(const StickelbergerElement& theta);
bool is_p_integral(const QGroupRing& x, int64_t p);
/// Coefficientwise reduction mod p^N; throws DivisionByNonUnit when a denominator is divisible by p.
ZpGroupRing reduce_mod(const QGroupRing& x, int64_t p, int N);
/// Residues of the coefficients, as a vector in the group algebra basis.
Vec to_vec(const ZpGroupRing& x);

/// Dirichlet character a -> zeta_e^{exps[a mod modulus]}; exps[a] = -1 when gcd(a, modulus) > 1.
struct DirichletCharacter {
    int64_t modulus = 1;
    CyclotomicFieldPtr field;
    std::vector<int64_t> exps;

    CyclotomicInt operator()(int64_t a) const;
    bool is_primitive() const;
};

/// The primitive Dirichlet character attached to character chi of Gal(L/Q).
DirichletCharacter primitive_character(const GaloisGroup& gal, const CharacterTable& table, int chi);

/// L_S(r, chi) = -B_{n,chi}/n * prod_{v in S, v not dividing f} (1 - chi(v) v^{-r}), n = 1 - r.
CyclotomicInt dirichlet_L_nonpos(const DirichletCharacter& chi, const std::vector<Place>& S, int r);

}  // namespace iwk
