#pragma once

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "iwasawa/abelian_group.hpp"
#include "iwasawa/howell.hpp"

namespace iwk {

/// Finite commutative Z/p^N-algebra, free of rank d on a labelled basis.
class FiniteCommAlgebra {
public:
    using Term = std::pair<int, int64_t>;  // (basis index, coefficient)

    FiniteCommAlgebra(Zq ring, std::vector<std::string> labels, std::vector<std::vector<std::vector<Term>>> mult,
                      Vec unit, std::optional<std::vector<Term>> sharp, std::string name);

    const Zq& ring() const { return ring_; }
    int dim() const { return static_cast<int>(labels_.size()); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& name() const { return name_; }
    bool has_sharp() const { return sharp_.has_value(); }

    Vec zero() const { return Vec(static_cast<size_t>(dim()), 0); }
    const Vec& one() const { return unit_; }
    Vec basis(int i) const;
    Vec scalar(int64_t c) const;

    Vec add(const Vec& a, const Vec& b) const;
    Vec sub(const Vec& a, const Vec& b) const;
    Vec neg(const Vec& a) const;
    Vec scale(const Vec& a, int64_t c) const;
    Vec mul(const Vec& a, const Vec& b) const;
    Vec sharp(const Vec& a) const;
    bool is_zero(const Vec& a) const;

    /// Row i holds the coordinates of e_i * a, so x * a = vec_mat(x, mult_matrix(a)).
    Matrix mult_matrix(const Vec& a) const;
    /// Products of basis elements.
    const std::vector<Term>& product(int i, int j) const { return mult_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

    /// Checks commutativity, associativity, the unit law and (if present) that # is an involutive algebra map.
    /// Returns an empty string on success, otherwise a description of the first failure.
    std::string validate() const;

    std::string format(const Vec& a) const;

private:
    Zq ring_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::vector<Term>>> mult_;
    Vec unit_;
    std::optional<std::vector<Term>> sharp_;
    std::string name_;
};

using AlgebraPtr = std::shared_ptr<const FiniteCommAlgebra>;

/// (Z/p^N)[G] on the basis of group elements, with # : g -> g^{-1}.
AlgebraPtr group_algebra(const GroupPtr& group, int64_t p, int N);
/// (Z/p^N)[A][T]/(T^M); basis a T^k ordered by (k, a). # acts on A only.
AlgebraPtr truncated_poly_algebra(const GroupPtr& group, int64_t p, int N, int M);
/// (Z/p^N)[G]/(1 + j) for an element j of order 2; basis = coset representatives {g, gj} -> min.
AlgebraPtr minus_quotient_algebra(const GroupPtr& group, FiniteAbelianGroup::Element j, int64_t p, int N);
/// prod_{i < k} Z/p^N with componentwise multiplication; optional involution permuting factors.
AlgebraPtr split_algebra(int k, int64_t p, int N, std::optional<std::vector<int>> involution = std::nullopt);

/// Z/p^N-linear map between algebras given on a basis. The target modulus must divide the source modulus.
class AlgebraHom {
public:
    AlgebraHom(AlgebraPtr source, AlgebraPtr target, Matrix images);

    const AlgebraPtr& source() const { return source_; }
    const AlgebraPtr& target() const { return target_; }
    const Matrix& images() const { return images_; }
    Vec operator()(const Vec& x) const;
    /// Empty on success; otherwise why this is not a unital ring homomorphism.
    std::string validate() const;

private:
    AlgebraPtr source_;
    AlgebraPtr target_;
    Matrix images_;
};

AlgebraHom identity_hom(const AlgebraPtr& a);
/// (Z/p^N)[G] -> (Z/p^N)[H] induced by a group homomorphism given elementwise.
AlgebraHom group_pushforward(const AlgebraPtr& source, const AlgebraPtr& target, const std::vector<int>& element_map);
/// (Z/p^N)[G] -> (Z/p^N)[G]/(1 + j).
AlgebraHom minus_projection(const AlgebraPtr& group_alg, const AlgebraPtr& minus_alg, const GroupPtr& group,
                            FiniteAbelianGroup::Element j);
/// Reduction (Z/p^N)[...] -> (Z/p^M)[...] on an identically shaped algebra.
AlgebraHom reduction_hom(const AlgebraPtr& source, const AlgebraPtr& target);

/// Index of the basis vector that represents g in minus_quotient_algebra, and the sign.
std::pair<int, int64_t> minus_basis_of(const GroupPtr& group, FiniteAbelianGroup::Element j,
                                       FiniteAbelianGroup::Element g);

}  // namespace iwk
