#pragma once

#include <vector>

#include "iwasawa/algebra.hpp"

namespace iwk {

/// Ideal of a finite commutative algebra, kept as the Howell form of its
/// underlying Z/p^N-module inside the regular representation.
class Ideal {
public:
    Ideal(AlgebraPtr algebra, std::vector<Vec> generators);

    static Ideal unit(const AlgebraPtr& algebra) { return Ideal(algebra, {algebra->one()}); }
    static Ideal zero(const AlgebraPtr& algebra) { return Ideal(algebra, {}); }

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<Vec>& generators() const { return gens_; }
    const Matrix& howell() const { return howell_; }
    /// log_p of the number of elements.
    int64_t log_size() const;

    bool contains(const Vec& x) const;
    bool is_subset_of(const Ideal& other) const;
    bool is_unit() const { return contains(algebra_->one()); }
    bool is_zero() const { return howell_.empty(); }

    Ideal operator*(const Ideal& other) const;
    Ideal operator+(const Ideal& other) const;
    Ideal sharp() const;
    /// Ideal generated by the images of the generators.
    Ideal image(const class AlgebraHom& hom) const;

    friend bool operator==(const Ideal& a, const Ideal& b);

private:
    void check_same(const Ideal& other) const;

    AlgebraPtr algebra_;
    std::vector<Vec> gens_;
    Matrix howell_;
};

/// Ideal equality decided by enumerating both ideals elementwise (small rings only).
bool ideal_equal_bruteforce(const Ideal& a, const Ideal& b, size_t limit = 1u << 12);

}  // namespace iwk
