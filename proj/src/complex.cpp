#include "iwasawa/complex.hpp"

#include <algorithm>

#include "iwasawa/errors.hpp"

namespace iwk {

namespace {

Matrix zero_matrix(size_t rows, size_t cols) { return Matrix(rows, Vec(cols, 0)); }

Matrix negated(const Matrix& m, const Zq& R) {
    Matrix out = m;
    for (auto& row : out)
        for (auto& x : row) x = R.sub(0, x);
    return out;
}

// [[a, b], [c, d]] as one matrix
Matrix blocks(const Matrix& a, const Matrix& b, const Matrix& c, const Matrix& d, size_t r1, size_t r2, size_t c1,
              size_t c2) {
    Matrix out = zero_matrix(r1 + r2, c1 + c2);
    auto put = [&](const Matrix& m, size_t ro, size_t co, size_t rows, size_t cols) {
        for (size_t i = 0; i < rows && i < m.size(); ++i)
            for (size_t j = 0; j < cols; ++j) out[ro + i][co + j] = m[i][j];
    };
    put(a, 0, 0, r1, c1);
    put(b, 0, c1, r1, c2);
    put(c, r1, 0, r2, c1);
    put(d, r1, c1, r2, c2);
    return out;
}

}  // namespace

AlgebraModule zero_module(const AlgebraPtr& algebra) {
    AlgebraModule m;
    m.algebra = algebra;
    m.dim = 0;
    m.action.assign(static_cast<size_t>(algebra->dim()), Matrix{});
    return m;
}

std::string validate_complex(const BoundedComplex& c) {
    if (c.modules.empty()) return "complex has no modules";
    if (c.differentials.size() + 1 != c.modules.size()) return "need one differential between consecutive modules";
    const Zq& R = c.algebra->ring();
    for (const auto& m : c.modules) {
        if (m.algebra != c.algebra) return "module over a different algebra";
        if (auto why = validate_module(m); !why.empty()) return why;
    }
    for (int i = c.lowest; i < c.highest(); ++i)
        if (auto why = validate_map(c.at(i), c.at(i + 1), c.d(i)); !why.empty())
            return "d^" + std::to_string(i) + ": " + why;
    for (int i = c.lowest; i + 1 < c.highest(); ++i) {
        Matrix dd = mat_mul(c.d(i), c.d(i + 1), R, c.at(i + 1).dim, c.at(i + 2).dim);
        for (const auto& u : c.at(i).sub)
            if (!c.at(i + 2).is_zero_element(vec_mat(u, dd, R, c.at(i + 2).dim)))
                return "d^" + std::to_string(i + 1) + " d^" + std::to_string(i) + " is not zero";
    }
    return "";
}

BoundedComplex make_complex(AlgebraPtr algebra, int lowest, std::vector<AlgebraModule> modules,
                            std::vector<Matrix> differentials) {
    BoundedComplex c{std::move(algebra), lowest, std::move(modules), std::move(differentials)};
    if (auto why = validate_complex(c); !why.empty()) throw PreconditionError("invalid complex: " + why);
    return c;
}

BoundedComplex concentrated(const AlgebraModule& m, int k) { return BoundedComplex{m.algebra, k, {m}, {}}; }

AlgebraModule cohomology(const BoundedComplex& c, int i) {
    if (!c.in_range(i)) return zero_module(c.algebra);
    const Zq& R = c.algebra->ring();
    AlgebraModule h = c.at(i);
    if (i < c.highest()) h = module_kernel(c.at(i), c.at(i + 1), c.d(i));
    if (i > c.lowest) {
        Matrix rows = module_image(c.at(i - 1), c.at(i), c.d(i - 1)).sub;
        rows.insert(rows.end(), c.at(i).rel.begin(), c.at(i).rel.end());
        h.rel = howell_form(rows, R, h.dim);
    }
    return h;
}

BoundedComplex shift(const BoundedComplex& c, int n) {
    BoundedComplex out = c;
    out.lowest = c.lowest - n;
    if (n % 2 != 0)
        for (auto& d : out.differentials) d = negated(d, c.algebra->ring());
    return out;
}

BoundedComplex direct_sum(const BoundedComplex& a, const BoundedComplex& b) {
    if (a.algebra != b.algebra) throw PreconditionError("direct sum of complexes over different algebras");
    const int lo = std::min(a.lowest, b.lowest), hi = std::max(a.highest(), b.highest());
    auto mod = [&](const BoundedComplex& c, int i) { return c.in_range(i) ? c.at(i) : zero_module(c.algebra); };
    auto diff = [&](const BoundedComplex& c, int i) {
        if (c.in_range(i) && c.in_range(i + 1)) return c.d(i);
        return zero_matrix(mod(c, i).dim, mod(c, i + 1).dim);
    };
    BoundedComplex out{a.algebra, lo, {}, {}};
    for (int i = lo; i <= hi; ++i) out.modules.push_back(direct_sum(mod(a, i), mod(b, i)));
    for (int i = lo; i < hi; ++i) {
        const size_t ra = mod(a, i).dim, rb = mod(b, i).dim, ca = mod(a, i + 1).dim, cb = mod(b, i + 1).dim;
        out.differentials.push_back(blocks(diff(a, i), zero_matrix(ra, cb), zero_matrix(rb, ca), diff(b, i), ra, rb, ca, cb));
    }
    return out;
}

Matrix chain_component(const ChainMap& f, int i) {
    auto dim_of = [](const BoundedComplex& c, int k) { return c.in_range(k) ? c.at(k).dim : size_t{0}; };
    const int k = i - f.lowest;
    if (k >= 0 && k < static_cast<int>(f.maps.size())) return f.maps[static_cast<size_t>(k)];
    return zero_matrix(dim_of(*f.source, i), dim_of(*f.target, i));
}

std::string validate_chain_map(const ChainMap& f) {
    const auto& C = *f.source;
    const auto& D = *f.target;
    if (C.algebra != D.algebra) return "chain map between complexes over different algebras";
    const Zq& R = C.algebra->ring();
    const int lo = std::min(C.lowest, D.lowest), hi = std::max(C.highest(), D.highest());
    auto mod = [&](const BoundedComplex& c, int i) { return c.in_range(i) ? c.at(i) : zero_module(c.algebra); };
    for (int i = lo; i <= hi; ++i) {
        const Matrix fi = chain_component(f, i);
        if (auto why = validate_map(mod(C, i), mod(D, i), fi); !why.empty())
            return "degree " + std::to_string(i) + ": " + why;
        // f^{i+1} d_C^i = d_D^i f^i
        if (i == hi) continue;
        const auto Ci = mod(C, i), Ci1 = mod(C, i + 1), Di = mod(D, i), Di1 = mod(D, i + 1);
        const Matrix dC = (C.in_range(i) && C.in_range(i + 1)) ? C.d(i) : zero_matrix(Ci.dim, Ci1.dim);
        const Matrix dD = (D.in_range(i) && D.in_range(i + 1)) ? D.d(i) : zero_matrix(Di.dim, Di1.dim);
        const Matrix fi1 = chain_component(f, i + 1);
        for (const auto& u : Ci.sub) {
            Vec lhs = vec_mat(vec_mat(u, dC, R, Ci1.dim), fi1, R, Di1.dim);
            Vec rhs = vec_mat(vec_mat(u, fi, R, Di.dim), dD, R, Di1.dim);
            for (size_t k = 0; k < lhs.size(); ++k) lhs[k] = R.sub(lhs[k], rhs[k]);
            if (!Di1.is_zero_element(lhs)) return "map does not commute with differentials in degree " + std::to_string(i);
        }
    }
    return "";
}

BoundedComplex cone(const ChainMap& f) {
    if (auto why = validate_chain_map(f); !why.empty()) throw PreconditionError("cone: " + why);
    const auto& C = *f.source;
    const auto& D = *f.target;
    const Zq& R = C.algebra->ring();
    const int lo = std::min(C.lowest - 1, D.lowest), hi = std::max(C.highest() - 1, D.highest());
    auto mod = [&](const BoundedComplex& c, int i) { return c.in_range(i) ? c.at(i) : zero_module(c.algebra); };
    auto diff = [&](const BoundedComplex& c, int i) {
        if (c.in_range(i) && c.in_range(i + 1)) return c.d(i);
        return zero_matrix(mod(c, i).dim, mod(c, i + 1).dim);
    };
    BoundedComplex out{C.algebra, lo, {}, {}};
    for (int i = lo; i <= hi; ++i) out.modules.push_back(direct_sum(mod(C, i + 1), mod(D, i)));
    for (int i = lo; i < hi; ++i) {
        const size_t r1 = mod(C, i + 1).dim, r2 = mod(D, i).dim, c1 = mod(C, i + 2).dim, c2 = mod(D, i + 1).dim;
        out.differentials.push_back(blocks(negated(diff(C, i + 1), R), chain_component(f, i + 1), zero_matrix(r2, c1),
                                           diff(D, i), r1, r2, c1, c2));
    }
    return out;
}

bool quasi_iso_check(const ChainMap& f) {
    if (auto why = validate_chain_map(f); !why.empty()) throw PreconditionError("quasi_iso_check: " + why);
    const auto& C = *f.source;
    const auto& D = *f.target;
    const int lo = std::min(C.lowest, D.lowest), hi = std::max(C.highest(), D.highest());
    for (int i = lo; i <= hi; ++i) {
        const AlgebraModule hc = cohomology(C, i), hd = cohomology(D, i);
        const Matrix fi = chain_component(f, i);
        if (!map_is_injective(hc, hd, fi) || !map_is_surjective(hc, hd, fi)) return false;
    }
    return true;
}

EulerFittingInvariant euler_fitting(const BoundedComplex& c) {
    EulerFittingInvariant inv{Ideal::unit(c.algebra), Ideal::unit(c.algebra)};
    for (int i = c.lowest; i <= c.highest(); ++i) {
        const AlgebraModule h = cohomology(c, i);
        if (h.log_size() == 0) continue;
        const Ideal f = fitting_ideal(h);
        if (i % 2 == 0)
            inv.numerator = inv.numerator * f;
        else
            inv.denominator = inv.denominator * f;
    }
    return inv;
}

CheckResult euler_fitting_additivity_check(const ChainMap& inc, const ChainMap& proj) {
    if (inc.target != proj.source) throw PreconditionError("additivity: maps do not compose");
    for (const auto* f : {&inc, &proj})
        if (auto why = validate_chain_map(*f); !why.empty()) throw PreconditionError("additivity: " + why);
    const auto& C1 = *inc.source;
    const auto& C2 = *inc.target;
    const auto& C3 = *proj.target;
    const Zq& R = C2.algebra->ring();
    const int lo = std::min({C1.lowest, C2.lowest, C3.lowest}), hi = std::max({C1.highest(), C2.highest(), C3.highest()});
    auto mod = [&](const BoundedComplex& c, int i) { return c.in_range(i) ? c.at(i) : zero_module(c.algebra); };
    for (int i = lo; i <= hi; ++i) {
        const auto a = mod(C1, i), b = mod(C2, i), c = mod(C3, i);
        const Matrix f = chain_component(inc, i), g = chain_component(proj, i);
        if (!map_is_injective(a, b, f)) throw PreconditionError("not injective in degree " + std::to_string(i));
        if (!map_is_surjective(b, c, g)) throw PreconditionError("not surjective in degree " + std::to_string(i));
        const AlgebraModule im = module_image(a, b, f), ker = module_kernel(b, c, g);
        bool inside = std::all_of(im.sub.begin(), im.sub.end(), [&](const Vec& u) { return ker.in_sub(u); });
        if (!inside || howell_log_size(im.sub, R) != howell_log_size(ker.sub, R))
            throw PreconditionError("not exact in degree " + std::to_string(i));
    }
    const auto middle = euler_fitting(C2);
    const auto outer = euler_fitting(C1) * euler_fitting(C3);
    const bool ok = middle.equivalent(outer);
    return {ok, ok ? "invariant of the middle term equals the product of the outer invariants"
                   : "invariant of the middle term differs from the product of the outer invariants"};
}

}  // namespace iwk
