#pragma once

#include <vector>

#include "iwasawa/abelian_group.hpp"
#include "iwasawa/cyclotomic.hpp"
#include "iwasawa/group_ring.hpp"
#include "iwasawa/rational.hpp"

namespace iwk {

/// All characters G -> <zeta_e>, e = exponent of G, with values in Q(zeta_e).
///
/// Characters are indexed like group elements: character k sends the i-th
/// generator to zeta_e^{k_i e / d_i}, where k_i is the i-th exponent of k.
class CharacterTable {
public:
    using Element = FiniteAbelianGroup::Element;

    explicit CharacterTable(GroupPtr group);

    const GroupPtr& group() const { return group_; }
    const CyclotomicFieldPtr& field() const { return field_; }
    int size() const { return group_->size(); }
    int64_t exponent() const { return e_; }

    /// chi(g) = zeta_e^{value_exponent(chi, g)}.
    int64_t value_exponent(int chi, Element g) const;
    CyclotomicInt value(int chi, Element g) const;
    /// Index of the contragredient character.
    int contragredient(int chi) const { return group_->inv(chi); }
    bool is_trivial(int chi) const { return chi == 0; }
    /// Order of chi as an element of the dual group.
    int64_t order(int chi) const { return group_->order_of(chi); }

    /// e(chi) = |G|^{-1} sum_g chi(g^{-1}) g.
    GroupRingElement<CyclotomicInt> idempotent(int chi) const;

    /// component_chi(x) = sum_g x_g chi(g), for every chi.
    std::vector<CyclotomicInt> decompose(const GroupRingElement<Rational>& x) const;
    std::vector<CyclotomicInt> decompose(const GroupRingElement<CyclotomicInt>& x) const;
    /// Inverse of decompose: sum_chi c_chi e(chi).
    GroupRingElement<CyclotomicInt> reconstruct(const std::vector<CyclotomicInt>& components) const;

    CyclotomicInt zeta_power(int64_t k) const;

private:
    GroupPtr group_;
    int64_t e_;
    CyclotomicFieldPtr field_;
    std::vector<CyclotomicInt> zpow_;
};

/// Rational group ring element viewed over Q(zeta_e).
GroupRingElement<CyclotomicInt> to_cyclotomic(const GroupRingElement<Rational>& x, const CyclotomicFieldPtr& field);

}  // namespace iwk
