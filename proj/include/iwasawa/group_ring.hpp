#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "iwasawa/abelian_group.hpp"
#include "iwasawa/errors.hpp"

namespace iwk {

/// Element of C[G] for a finite abelian group G, stored densely by group index.
///
/// C is any commutative coefficient ring with value semantics (Rational,
/// CyclotomicInt, PadicInt). Coefficient rings whose zero depends on context
/// (precision, cyclotomic order) are handled by carrying a zero prototype.
template <class C>
class GroupRingElement {
public:
    using Element = FiniteAbelianGroup::Element;

    GroupRingElement(GroupPtr group, C zero)
        : group_(std::move(group)), zero_(std::move(zero)), c_(static_cast<size_t>(group_->size()), zero_) {}

    static GroupRingElement scalar(GroupPtr group, C zero, C value) {
        GroupRingElement out(std::move(group), std::move(zero));
        out.c_[0] = std::move(value);
        return out;
    }
    /// The group element g with coefficient `one`.
    static GroupRingElement basis(GroupPtr group, C zero, Element g, C one) {
        GroupRingElement out(std::move(group), std::move(zero));
        out.at(g) = std::move(one);
        return out;
    }

    const GroupPtr& group() const { return group_; }
    const C& zero() const { return zero_; }
    const std::vector<C>& coefficients() const { return c_; }
    const C& operator[](Element g) const { return c_[static_cast<size_t>(g)]; }
    C& at(Element g) { return c_[static_cast<size_t>(g)]; }

    bool is_zero() const {
        for (const auto& c : c_)
            if (!(c == zero_)) return false;
        return true;
    }

    /// Involution induced by g -> g^{-1}.
    GroupRingElement sharp() const {
        GroupRingElement out(group_, zero_);
        for (Element g = 0; g < group_->size(); ++g) out.at(group_->inv(g)) = c_[static_cast<size_t>(g)];
        return out;
    }

    GroupRingElement operator-() const {
        GroupRingElement out(*this);
        for (auto& c : out.c_) c = zero_ - c;
        return out;
    }
    GroupRingElement& operator+=(const GroupRingElement& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] + o.c_[i];
        return *this;
    }
    GroupRingElement& operator-=(const GroupRingElement& o) {
        check(o);
        for (size_t i = 0; i < c_.size(); ++i) c_[i] = c_[i] - o.c_[i];
        return *this;
    }
    GroupRingElement& operator*=(const C& s) {
        for (auto& c : c_) c = c * s;
        return *this;
    }
    friend GroupRingElement operator+(GroupRingElement a, const GroupRingElement& b) { return a += b; }
    friend GroupRingElement operator-(GroupRingElement a, const GroupRingElement& b) { return a -= b; }
    friend GroupRingElement operator*(GroupRingElement a, const C& s) { return a *= s; }
    friend GroupRingElement operator*(const GroupRingElement& a, const GroupRingElement& b) {
        a.check(b);
        GroupRingElement out(a.group_, a.zero_);
        const auto& G = *a.group_;
        for (Element g = 0; g < G.size(); ++g) {
            const C& x = a.c_[static_cast<size_t>(g)];
            if (x == a.zero_) continue;
            for (Element h = 0; h < G.size(); ++h) {
                const C& y = b.c_[static_cast<size_t>(h)];
                if (y == a.zero_) continue;
                C& z = out.at(G.mul(g, h));
                z = z + x * y;
            }
        }
        return out;
    }
    friend bool operator==(const GroupRingElement& a, const GroupRingElement& b) {
        return *a.group_ == *b.group_ && a.c_ == b.c_;
    }

    /// Coefficientwise change of rings.
    template <class D>
    GroupRingElement<D> map_coefficients(const std::function<D(const C&)>& f, D new_zero) const {
        GroupRingElement<D> out(group_, std::move(new_zero));
        for (Element g = 0; g < group_->size(); ++g) out.at(g) = f(c_[static_cast<size_t>(g)]);
        return out;
    }

    /// Pushforward along a group homomorphism given elementwise.
    GroupRingElement pushforward(GroupPtr target, const std::function<Element(Element)>& map) const {
        GroupRingElement out(std::move(target), zero_);
        for (Element g = 0; g < group_->size(); ++g) {
            C& z = out.at(map(g));
            z = z + c_[static_cast<size_t>(g)];
        }
        return out;
    }

private:
    void check(const GroupRingElement& o) const {
        if (!(*group_ == *o.group_)) throw PreconditionError("group ring elements over different groups");
    }

    GroupPtr group_;
    C zero_;
    std::vector<C> c_;
};

}  // namespace iwk
