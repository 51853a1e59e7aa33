#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "iwasawa/abelian_field.hpp"
#include "iwasawa/algebra.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/stickelberger.hpp"

namespace iwk {

/// (Z/p^N)[G_n] for the n-th layer of the cyclotomic Z_p-extension of L.
class FiniteLevelAlgebra {
public:
    FiniteLevelAlgebra(const AbelianFieldSpec& base, int64_t p, int N, int n);

    const AbelianFieldSpec& base() const { return base_; }
    int64_t p() const { return p_; }
    int precision() const { return N_; }
    int level() const { return n_; }
    const AbelianFieldSpec& spec() const { return gal_.spec(); }
    const GaloisGroup& galois() const { return gal_; }
    const GroupPtr& group() const { return gal_.group(); }

    /// True when zeta_p lies in L, so that chi_cyc is defined on G_n.
    bool has_cyclotomic_character() const { return has_chi_; }
    /// chi_cyc(g) mod p^{min(N, n+1)}; throws PreconditionError without zeta_p in L.
    PadicInt chi_cyc(FiniteAbelianGroup::Element g) const;
    /// The split chi_cyc(g) = omega(g) * kappa(g) into a Teichmueller part and a one-unit.
    PadicInt omega(FiniteAbelianGroup::Element g) const;
    PadicInt kappa(FiniteAbelianGroup::Element g) const;
    /// The chosen generator of Gal(L_n/L): residue 1+p mod p^{n+1}, 1 mod the prime-to-p modulus.
    FiniteAbelianGroup::Element gamma() const;
    /// u = chi_cyc(gamma) = 1 + p.
    PadicInt u() const;

    ZpGroupRing zero() const { return ZpGroupRing(group(), PadicInt(p_, N_)); }
    /// Element g with coefficient 1.
    ZpGroupRing basis(FiniteAbelianGroup::Element g) const;
    /// Residue of g's least representative modulo the layer modulus.
    int64_t representative(FiniteAbelianGroup::Element g) const { return gal_.representative(g); }

private:
    AbelianFieldSpec base_;
    int64_t p_;
    int N_;
    int n_;
    GaloisGroup gal_;
    bool has_chi_;
};

using LevelPtr = std::shared_ptr<const FiniteLevelAlgebra>;

/// Coherent family of elements of (Z/p^N)[G_n], n = 0..n_max.
struct TowerElement {
    int64_t p = 3;
    int N = 1;
    std::vector<LevelPtr> levels;
    std::vector<ZpGroupRing> entries;
    std::vector<Place> S;
    std::vector<Place> T;
    int r = 0;

    int n_max() const { return static_cast<int>(entries.size()) - 1; }
};

/// Pushforward along G_m -> G_n.
ZpGroupRing aug_project(const ZpGroupRing& x, const FiniteLevelAlgebra& from, const FiniteLevelAlgebra& to);
/// g -> chi_cyc(g)^r g. Throws PrecisionBudgetError unless N <= n + 1.
ZpGroupRing twist(const ZpGroupRing& x, int r, const FiniteLevelAlgebra& level);
/// Coefficientwise truncation to a lower precision.
ZpGroupRing truncate(const ZpGroupRing& x, int precision);

/// Level n entry = Theta_{S,T}(L_n, r) mod p^N. S must contain p, the infinite place and the primes ramified in L.
TowerElement theta_tower(const AbelianFieldSpec& spec, const std::vector<Place>& S, const std::vector<Place>& T,
                         int64_t p, int N, int n_max, int r);

struct CoherenceReport {
    bool coherent = true;
    std::optional<int> failing_level;  // smallest n whose entry disagrees with the projection of n+1
};
CoherenceReport coherence_check(const TowerElement& t);

struct CongruenceReport {
    bool congruent = true;
    std::optional<int> failing_level;
};
/// Theta(L_n, r) == twist(Theta(L_n, 0), r) mod p^{min(N, n+1)} at every level.
CongruenceReport twist_congruence_check(const TowerElement& t_r, const TowerElement& t_0);

/// Group-ring algebra for a level, for use with the Fitting machinery, and the projection between levels.
AlgebraPtr level_algebra(const FiniteLevelAlgebra& level);
AlgebraHom level_projection(const AlgebraPtr& upper_alg, const FiniteLevelAlgebra& upper, const AlgebraPtr& lower_alg,
                            const FiniteLevelAlgebra& lower);

}  // namespace iwk
