#pragma once

#include <string>
#include <vector>

#include "iwasawa/abelian_field.hpp"
#include "iwasawa/module.hpp"
#include "iwasawa/stickelberger.hpp"

namespace iwk {

using IntMatrix = std::vector<std::vector<int64_t>>;

/// Finite abelian group with a Galois action, ingested from external tables.
///
/// The group is Z/orders[0] + ... ; action[i] is the integer matrix of the i-th
/// invariant-factor generator of G acting on column vectors (x -> A x).
struct ClassModuleData {
    std::vector<int64_t> orders;
    std::vector<IntMatrix> action;
    std::string provenance;

    size_t rank() const { return orders.size(); }
    int64_t cardinality() const;
};

/// Throws PreconditionError unless the matrices commute, respect the orders and satisfy the relations of G.
void validate_class_module(const ClassModuleData& m, const GaloisGroup& gal);

/// Matrix of a group element, entries of row i reduced mod orders[i].
IntMatrix element_action(const ClassModuleData& m, const GaloisGroup& gal, FiniteAbelianGroup::Element g);
/// Images of a vector under the action (column convention), reduced mod the orders.
std::vector<int64_t> apply_action(const ClassModuleData& m, const IntMatrix& a, const std::vector<int64_t>& x);

struct AnnihilationResult {
    bool annihilates = false;
    IntMatrix acting;  // sum_g theta_g A_g, reduced
};

/// True iff theta kills every generator. Needs integral theta.
AnnihilationResult annihilation_check(const StickelbergerElement& theta, const ClassModuleData& m);

/// p-primary part as a module over (Z/p^N)[G]; needs every p-power order to be at most p^N.
AlgebraModule p_part_module(const ClassModuleData& m, const GaloisGroup& gal, const AlgebraPtr& group_alg);
/// (1 - j) M for a module over (Z/p^N)[G], read over the minus quotient (Z/p^N)[G]/(1 + j).
AlgebraModule minus_part(const AlgebraModule& m, const GroupPtr& group, FiniteAbelianGroup::Element j,
                         const AlgebraPtr& minus_alg);

struct FittingMembershipResult {
    bool member = false;
    Vec theta_sharp;  // image of theta^# in the minus quotient
    Vec residual;     // reduction of theta_sharp modulo the Fitting ideal
    int64_t fitting_log_size = 0;
    int64_t minus_log_size = 0;  // log_p of the order of the minus part of M_p
    std::vector<Vec> fitting_generators;
};

/// Membership of theta^# in the Fitting ideal of the Pontryagin dual of (M_p)^- over (Z/p^N)[G]/(1 + j).
FittingMembershipResult fitting_membership_check(const StickelbergerElement& theta, const ClassModuleData& m,
                                                 int64_t p, int N);

}  // namespace iwk
