#pragma once

#include <vector>

#include "iwasawa/algebra.hpp"
#include "iwasawa/ideal.hpp"

namespace iwk {

/// Module over a finite algebra given by n generators and relation rows (entries in the algebra).
struct FinPresModule {
    AlgebraPtr algebra;
    int generators = 0;
    std::vector<std::vector<Vec>> relations;  // each row has `generators` algebra elements

    bool is_square() const { return static_cast<int>(relations.size()) == generators; }
};

/// Explicit model: the Z/p^N-subquotient sub/rel of (Z/p^N)^D, with the algebra
/// acting through one matrix per basis element (row convention, v -> v * A_b).
struct AlgebraModule {
    AlgebraPtr algebra;
    size_t dim = 0;
    Matrix sub;  // Howell form of U
    Matrix rel;  // Howell form of W, W inside U
    std::vector<Matrix> action;

    int64_t log_size() const;
    /// Matrix of multiplication by an arbitrary algebra element.
    Matrix action_of(const Vec& a) const;
    Vec act(const Vec& a, const Vec& v) const;
    bool in_sub(const Vec& v) const;
    bool is_zero_element(const Vec& v) const;
    /// Canonical representative of v + W.
    Vec normal_form(const Vec& v) const;
};

/// Checks that the data define a module (action preserves sub and rel, is multiplicative and unital).
/// Returns an empty string on success.
std::string validate_module(const AlgebraModule& m);

AlgebraModule to_module(const FinPresModule& m);
/// Matrix of x -> x f between free modules A^n -> A^m on flattened coordinates (index k * dim + b).
Matrix linear_map_matrix(const FiniteCommAlgebra& A, const std::vector<std::vector<Vec>>& f, size_t target_generators);
/// A presentation found greedily: generators from the Howell rows of sub, relations = kernel.
FinPresModule presentation(const AlgebraModule& m);

/// Module maps are Z/p^N matrices F with v -> v * F on ambient coordinates.
/// Returns an empty string when F is a well-defined algebra-linear map.
std::string validate_map(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f);
AlgebraModule module_kernel(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f);
AlgebraModule module_image(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f);
AlgebraModule module_cokernel(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f);
bool map_is_injective(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f);
bool map_is_surjective(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f);
/// Both modules must live in the same ambient space; true iff they have the same elements.
bool same_submodule(const AlgebraModule& a, const AlgebraModule& b);

/// Hom_{Z/p^N}(M, Z/p^N) with (b f)(m) = f(b^# m); needs an algebra with an involution.
AlgebraModule hom_dual(const AlgebraModule& m);
/// { a : a M = 0 }.
Ideal annihilator(const AlgebraModule& m);
/// All elements (canonical representatives), for small modules.
std::vector<Vec> enumerate_elements(const AlgebraModule& m, size_t limit = 1u << 16);

FinPresModule direct_sum(const FinPresModule& a, const FinPresModule& b);
AlgebraModule direct_sum(const AlgebraModule& a, const AlgebraModule& b);
/// Module with relations pushed along an algebra homomorphism (S tensor_R M).
FinPresModule base_change(const FinPresModule& m, const AlgebraHom& hom);
/// Same relations read through a homomorphism and re-presented from scratch.
AlgebraModule restrict_scalars(const AlgebraModule& m, const AlgebraHom& hom);

}  // namespace iwk
