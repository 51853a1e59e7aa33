#include "iwasawa/characters.hpp"

#include "iwasawa/numtheory.hpp"

namespace iwk {

CharacterTable::CharacterTable(GroupPtr group)
    : group_(std::move(group)), e_(group_->exponent()), field_(make_cyclotomic_field(e_)) {
    zpow_.reserve(static_cast<size_t>(e_));
    for (int64_t k = 0; k < e_; ++k) zpow_.push_back(CyclotomicInt::root_of_unity(field_, k));
}

int64_t CharacterTable::value_exponent(int chi, Element g) const {
    const auto a = group_->exponents(chi);
    const auto b = group_->exponents(g);
    const auto& d = group_->cyclic_orders();
    int64_t s = 0;
    for (size_t i = 0; i < d.size(); ++i) s = nt::mod(s + (a[i] * b[i] % d[i]) * (e_ / d[i]), e_);
    return s;
}

CyclotomicInt CharacterTable::value(int chi, Element g) const { return zpow_[static_cast<size_t>(value_exponent(chi, g))]; }

CyclotomicInt CharacterTable::zeta_power(int64_t k) const { return zpow_[static_cast<size_t>(nt::mod(k, e_))]; }

GroupRingElement<CyclotomicInt> CharacterTable::idempotent(int chi) const {
    GroupRingElement<CyclotomicInt> out(group_, CyclotomicInt(field_));
    const CyclotomicInt inv_order(field_, Rational(1, group_->size()));
    for (Element g = 0; g < group_->size(); ++g) out.at(g) = value(chi, group_->inv(g)) * inv_order;
    return out;
}

std::vector<CyclotomicInt> CharacterTable::decompose(const GroupRingElement<Rational>& x) const {
    if (!(*x.group() == *group_)) throw PreconditionError("decompose: group mismatch");
    std::vector<CyclotomicInt> out;
    for (int chi = 0; chi < size(); ++chi) {
        std::vector<Rational> bucket(static_cast<size_t>(e_), Rational(0));
        for (Element g = 0; g < group_->size(); ++g)
            if (!x[g].is_zero()) bucket[static_cast<size_t>(value_exponent(chi, g))] += x[g];
        CyclotomicInt c(field_);
        for (int64_t k = 0; k < e_; ++k)
            if (!bucket[static_cast<size_t>(k)].is_zero())
                c += zpow_[static_cast<size_t>(k)] * CyclotomicInt(field_, bucket[static_cast<size_t>(k)]);
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<CyclotomicInt> CharacterTable::decompose(const GroupRingElement<CyclotomicInt>& x) const {
    if (!(*x.group() == *group_)) throw PreconditionError("decompose: group mismatch");
    std::vector<CyclotomicInt> out;
    for (int chi = 0; chi < size(); ++chi) {
        CyclotomicInt c(field_);
        for (Element g = 0; g < group_->size(); ++g)
            if (!x[g].is_zero()) c += x[g] * value(chi, g);
        out.push_back(std::move(c));
    }
    return out;
}

GroupRingElement<CyclotomicInt> CharacterTable::reconstruct(const std::vector<CyclotomicInt>& components) const {
    if (static_cast<int>(components.size()) != size())
        throw PreconditionError("reconstruct: expected one component per character");
    GroupRingElement<CyclotomicInt> out(group_, CyclotomicInt(field_));
    for (int chi = 0; chi < size(); ++chi) {
        if (components[static_cast<size_t>(chi)].is_zero()) continue;
        auto e = idempotent(chi);
        e *= components[static_cast<size_t>(chi)];
        out += e;
    }
    return out;
}

GroupRingElement<CyclotomicInt> to_cyclotomic(const GroupRingElement<Rational>& x, const CyclotomicFieldPtr& field) {
    return x.map_coefficients<CyclotomicInt>([&](const Rational& c) { return CyclotomicInt(field, c); },
                                             CyclotomicInt(field));
}

}  // namespace iwk
