#pragma once

#include <optional>
#include <string>
#include <vector>

#include "iwasawa/ideal.hpp"
#include "iwasawa/module.hpp"

namespace iwk {

using AlgebraMatrix = std::vector<std::vector<Vec>>;

/// Determinant of a square matrix with entries in a commutative algebra.
Vec determinant(const FiniteCommAlgebra& A, const AlgebraMatrix& m);

/// Ideal generated by the n x n minors of the relation matrix (n = number of generators).
Ideal fitting_ideal(const FinPresModule& m);
/// Fitting ideal of an explicit module, through a presentation.
Ideal fitting_ideal(const AlgebraModule& m);

/// (h^T)^#.
AlgebraMatrix transpose_sharp(const FiniteCommAlgebra& A, const AlgebraMatrix& h);

/// Square presentation whose matrix lifts to an injective endomorphism of the free module over the
/// p-adic algebra; tested as p^{N-1} A^n being inside the row span.
bool has_injective_lift(const FinPresModule& m);

/// The module presented by (h^T)^#; models both the Pontryagin dual and E^1.
FinPresModule dual_presentation(const FinPresModule& m);

struct CheckResult {
    bool holds = false;
    std::string detail;
};

/// Fitt_S(S (x) M) against the ideal generated by the images of the generators of Fitt_R(M).
/// The left side is computed from a fresh presentation of the base-changed module.
CheckResult base_change_fitting(const FinPresModule& m, const AlgebraHom& hom);

/// Fitt(dual_presentation(M)) = Fitt(M)^#, cross-checked against the dual computed as a Hom module.
CheckResult e1_sharp_check(const FinPresModule& m);

/// Given exact 0 -> M -> C -> C' -> M' -> 0 with C, C' square-presented with injective lifts,
/// checks Fitt(M^dual)^# Fitt(C') = Fitt(C) Fitt(M').
CheckResult four_term_check(const AlgebraModule& m, const FinPresModule& c, const FinPresModule& c_prime,
                            const AlgebraModule& m_prime, const Matrix& f1, const Matrix& f2, const Matrix& f3);

/// Level data for a tower of modules A_n over algebras Lambda_n.
struct TowerLevel {
    FinPresModule module;
    /// Lambda_{n+1} -> Lambda_n; absent on the last level.
    std::optional<AlgebraHom> projection;
    /// Images in A_n of the generators of A_{n+1}, as rows over Lambda_n; identity when absent.
    std::optional<AlgebraMatrix> transition;
};

struct TowerFittingReport {
    std::vector<bool> contained;  // pi(Fitt(A_{n+1})) inside Fitt(A_n)
    std::vector<bool> equal;
    bool all_contained() const;
    bool all_equal() const;
};

/// Finite-level form of the inverse-limit description of Fitting ideals. Throws PreconditionError
/// when a transition is not a well-defined surjection.
TowerFittingReport tower_fitting_check(const std::vector<TowerLevel>& levels);

/// Integral-extension cancellation: if Ra is inside Rb, b has an injective lift and the images of
/// a and b generate the same ideal of S, then Ra = Rb. `premises` reports whether the hypotheses hold.
struct CancellationReport {
    bool premises = false;
    bool conclusion = false;
};
CancellationReport cancellation_check(const AlgebraHom& to_s, const Vec& a, const Vec& b);

}  // namespace iwk
