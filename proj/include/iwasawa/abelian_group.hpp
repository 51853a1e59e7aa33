#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace iwk {

/// Finite abelian group Z/d_1 x ... x Z/d_k in invariant-factor form (d_1 | d_2 | ... , all d_i > 1).
///
/// Elements are indices 0..size()-1 enumerating exponent vectors in
/// lexicographic order (first coordinate most significant); index 0 is the identity.
class FiniteAbelianGroup {
public:
    using Element = int;

    explicit FiniteAbelianGroup(std::vector<int64_t> cyclic_orders);

    const std::vector<int64_t>& cyclic_orders() const { return orders_; }
    int size() const { return size_; }
    int rank() const { return static_cast<int>(orders_.size()); }
    int64_t exponent() const { return orders_.empty() ? 1 : orders_.back(); }

    Element identity() const { return 0; }
    Element mul(Element a, Element b) const;
    Element inv(Element a) const;
    Element pow(Element a, int64_t e) const;
    int64_t order_of(Element a) const;
    /// i-th cyclic generator (exponent vector e_i).
    Element generator(int i) const;

    std::vector<int64_t> exponents(Element a) const;
    Element from_exponents(const std::vector<int64_t>& e) const;

    friend bool operator==(const FiniteAbelianGroup& a, const FiniteAbelianGroup& b) {
        return a.orders_ == b.orders_;
    }

private:
    std::vector<int64_t> orders_;
    std::vector<int64_t> stride_;
    int size_;
};

using GroupPtr = std::shared_ptr<const FiniteAbelianGroup>;

/// Smith normal form of a small integer matrix: D = U * A * V with U, V unimodular.
struct SmithForm {
    std::vector<std::vector<int64_t>> d;      // diagonal matrix, same shape as A
    std::vector<std::vector<int64_t>> v;      // column transform
    std::vector<std::vector<int64_t>> v_inv;  // inverse of v
};

SmithForm smith_normal_form(const std::vector<std::vector<int64_t>>& a);

}  // namespace iwk
