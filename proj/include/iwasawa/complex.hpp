#pragma once

#include <string>
#include <vector>

#include "iwasawa/fitting.hpp"
#include "iwasawa/module.hpp"

namespace iwk {

/// Cochain complex C^a -> C^{a+1} -> ... -> C^b of modules over one algebra.
/// differentials[k] maps modules[k] to modules[k+1].
struct BoundedComplex {
    AlgebraPtr algebra;
    int lowest = 0;
    std::vector<AlgebraModule> modules;
    std::vector<Matrix> differentials;

    int highest() const { return lowest + static_cast<int>(modules.size()) - 1; }
    bool in_range(int i) const { return i >= lowest && i <= highest(); }
    const AlgebraModule& at(int i) const { return modules[static_cast<size_t>(i - lowest)]; }
    /// d^i : C^i -> C^{i+1}.
    const Matrix& d(int i) const { return differentials[static_cast<size_t>(i - lowest)]; }
};

/// Checks module data, that each d^i is a module map, and that d^{i+1} d^i = 0. Empty on success.
std::string validate_complex(const BoundedComplex& c);
/// Builds and validates; throws PreconditionError.
BoundedComplex make_complex(AlgebraPtr algebra, int lowest, std::vector<AlgebraModule> modules,
                            std::vector<Matrix> differentials);
/// Module M placed in degree k.
BoundedComplex concentrated(const AlgebraModule& m, int k);
/// The zero module over an algebra.
AlgebraModule zero_module(const AlgebraPtr& algebra);

AlgebraModule cohomology(const BoundedComplex& c, int i);
/// C[n]^i = C^{n+i}, with differential (-1)^n d^{n+i}.
BoundedComplex shift(const BoundedComplex& c, int n);
BoundedComplex direct_sum(const BoundedComplex& a, const BoundedComplex& b);

/// Degreewise maps f^i : C^i -> D^i (one matrix per degree of the union of ranges; missing degrees are zero).
struct ChainMap {
    const BoundedComplex* source = nullptr;
    const BoundedComplex* target = nullptr;
    int lowest = 0;
    std::vector<Matrix> maps;
};
/// Matrix of f in degree i (zero outside the stored range).
Matrix chain_component(const ChainMap& f, int i);
std::string validate_chain_map(const ChainMap& f);
/// Cone(f)^i = C^{i+1} + D^i with d(c, x) = (-d_C c, f(c) + d_D x).
BoundedComplex cone(const ChainMap& f);
/// True iff f induces isomorphisms on all cohomology modules.
bool quasi_iso_check(const ChainMap& f);

/// (product of Fitt(H^i) over even i, product over odd i).
struct EulerFittingInvariant {
    Ideal numerator;
    Ideal denominator;

    EulerFittingInvariant inverse() const { return {denominator, numerator}; }
    friend EulerFittingInvariant operator*(const EulerFittingInvariant& a, const EulerFittingInvariant& b) {
        return {a.numerator * b.numerator, a.denominator * b.denominator};
    }
    /// Cross-multiplied equality.
    bool equivalent(const EulerFittingInvariant& o) const {
        return numerator * o.denominator == o.numerator * denominator;
    }
};

EulerFittingInvariant euler_fitting(const BoundedComplex& c);

/// 0 -> C1 -> C2 -> C3 -> 0 given by chain maps; checks degreewise exactness (throws
/// PreconditionError otherwise) and then euler_fitting(C2) = euler_fitting(C1) euler_fitting(C3).
CheckResult euler_fitting_additivity_check(const ChainMap& i, const ChainMap& q);

}  // namespace iwk
