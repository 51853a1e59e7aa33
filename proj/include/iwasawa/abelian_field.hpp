#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/abelian_group.hpp"
#include "iwasawa/group_ring.hpp"
#include "iwasawa/rational.hpp"

namespace iwk {

/// Abelian field L/Q given as the fixed field of a subgroup of (Z/m)^x inside Q(zeta_m).
struct AbelianFieldSpec {
    int64_t modulus = 1;
    std::vector<int64_t> fixing;  // residues mod modulus, sorted, closed under multiplication
    std::string label;

    /// Validates and canonicalises (sorts, reduces residues); throws PreconditionError.
    static AbelianFieldSpec make(int64_t modulus, std::vector<int64_t> fixing, std::string label = "");
    /// Full cyclotomic field Q(zeta_m).
    static AbelianFieldSpec cyclotomic(int64_t m);

    bool contains_residue(int64_t a) const;
    int64_t degree() const;
};

/// Same field presented by its conductor.
AbelianFieldSpec conductor_reduce(const AbelianFieldSpec& spec);

/// A rational place: a finite prime or the infinite place.
struct Place {
    int64_t prime = 0;  // 0 encodes infinity
    bool is_infinite() const { return prime == 0; }
    friend auto operator<=>(const Place&, const Place&) = default;
};

/// Parses "3,inf" / "2, 7" style place lists; throws PreconditionError on malformed input.
std::vector<Place> parse_places(const std::string& text);
std::string format_places(const std::vector<Place>& places);

/// Gal(L/Q) realised as (Z/m)^x / fixing, in invariant-factor form.
class GaloisGroup {
public:
    explicit GaloisGroup(const AbelianFieldSpec& spec);

    const AbelianFieldSpec& spec() const { return spec_; }
    const GroupPtr& group() const { return group_; }
    int size() const { return group_->size(); }
    int64_t conductor() const { return conductor_; }
    /// Primes dividing the conductor.
    const std::vector<int64_t>& ramified_primes() const { return ramified_; }

    /// Class of a residue coprime to the modulus.
    FiniteAbelianGroup::Element element_of(int64_t residue) const;
    /// Class of an integer coprime to the conductor (lifted through the conductor).
    FiniteAbelianGroup::Element element_of_unramified(int64_t a) const;
    /// Arithmetic Frobenius at an unramified prime.
    FiniteAbelianGroup::Element frobenius(int64_t ell) const;
    /// Least positive residue in the coset of an element.
    int64_t representative(FiniteAbelianGroup::Element g) const { return reps_[static_cast<size_t>(g)]; }
    /// Residues of the invariant-factor generators.
    std::vector<int64_t> generator_residues() const;

private:
    AbelianFieldSpec spec_;
    int64_t conductor_;
    std::vector<int64_t> ramified_;
    GroupPtr group_;
    std::vector<int64_t> reps_;
    std::vector<int> residue_to_element_;  // indexed by residue mod modulus, -1 if not a unit
};

/// Complex conjugation and the idempotent data of a CM field.
struct CMStructure {
    FiniteAbelianGroup::Element j;
    GroupRingElement<Rational> e_plus;   // (1 + j) / 2
    GroupRingElement<Rational> e_minus;  // (1 - j) / 2

    /// e_r = (1 - (-1)^r j) / 2.
    const GroupRingElement<Rational>& e_r(int r) const { return (r % 2 == 0) ? e_minus : e_plus; }
};

/// CM data, or nullopt when L is totally real.
std::optional<CMStructure> cm_data(const AbelianFieldSpec& spec);
std::optional<CMStructure> cm_data(const GaloisGroup& gal);

/// Number of roots of unity in L.
int64_t roots_of_unity_order(const AbelianFieldSpec& spec);

/// n-th layer L_n = L Q_n of the cyclotomic Z_p-extension, inside Q(zeta_{m' p^{n+1}}).
AbelianFieldSpec layer(const AbelianFieldSpec& spec, int64_t p, int n);

struct HypVerdict {
    bool holds = false;
    std::string reason;
};

/// Hyp(S, T): S contains the ramified and infinite places, S and T are disjoint,
/// and E_L^T is torsion-free.
HypVerdict check_hyp(const AbelianFieldSpec& spec, const std::vector<Place>& S, const std::vector<Place>& T);

/// Hyp(S, T) with the torsion-freeness condition imposed only on p-power roots of unity.
HypVerdict check_hyp_at_p(const AbelianFieldSpec& spec, const std::vector<Place>& S, const std::vector<Place>& T,
                          int64_t p);

}  // namespace iwk
