#include "iwasawa/class_module.hpp"

#include "iwasawa/errors.hpp"
#include "iwasawa/fitting.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk {

int64_t ClassModuleData::cardinality() const {
    int64_t c = 1;
    for (auto o : orders) c *= o;
    return c;
}

namespace {

IntMatrix identity_int(size_t k) {
    IntMatrix out(k, std::vector<int64_t>(k, 0));
    for (size_t i = 0; i < k; ++i) out[i][i] = 1;
    return out;
}

IntMatrix mul_int(const ClassModuleData& m, const IntMatrix& a, const IntMatrix& b) {
    const size_t k = m.rank();
    IntMatrix out(k, std::vector<int64_t>(k, 0));
    for (size_t i = 0; i < k; ++i)
        for (size_t j = 0; j < k; ++j) {
            int64_t s = 0;
            for (size_t l = 0; l < k; ++l) s = nt::mod(s + nt::mulmod(nt::mod(a[i][l], m.orders[i]), nt::mod(b[l][j], m.orders[i]), m.orders[i]), m.orders[i]);
            out[i][j] = s;
        }
    return out;
}

bool same_action(const ClassModuleData& m, const IntMatrix& a, const IntMatrix& b) {
    for (size_t i = 0; i < m.rank(); ++i)
        for (size_t j = 0; j < m.rank(); ++j)
            if (nt::mod(a[i][j] - b[i][j], m.orders[i]) != 0) return false;
    return true;
}

}  // namespace

void validate_class_module(const ClassModuleData& m, const GaloisGroup& gal) {
    const size_t k = m.rank();
    for (auto o : m.orders)
        if (o < 1) throw PreconditionError("class module orders must be positive");
    if (static_cast<int>(m.action.size()) != gal.group()->rank())
        throw PreconditionError("class module gives " + std::to_string(m.action.size()) + " action matrices, the group has " +
                                std::to_string(gal.group()->rank()) + " generators");
    for (const auto& a : m.action) {
        if (a.size() != k) throw PreconditionError("action matrix has the wrong size");
        for (const auto& row : a)
            if (row.size() != k) throw PreconditionError("action matrix has the wrong size");
        // well defined on Z/o_j: o_j A e_j = 0
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j)
                if (nt::mod(nt::mulmod(nt::mod(a[i][j], m.orders[i]), m.orders[j] % m.orders[i], m.orders[i]), m.orders[i]) != 0)
                    throw PreconditionError("action matrix does not respect the orders");
    }
    for (size_t s = 0; s < m.action.size(); ++s)
        for (size_t t = 0; t < m.action.size(); ++t)
            if (!same_action(m, mul_int(m, m.action[s], m.action[t]), mul_int(m, m.action[t], m.action[s])))
                throw PreconditionError("action matrices do not commute");
    const auto& d = gal.group()->cyclic_orders();
    for (size_t s = 0; s < m.action.size(); ++s) {
        IntMatrix pw = identity_int(k);
        for (int64_t e = 0; e < d[s]; ++e) pw = mul_int(m, pw, m.action[s]);
        if (!same_action(m, pw, identity_int(k)))
            throw PreconditionError("generator " + std::to_string(s + 1) + " does not satisfy its order relation");
    }
}

IntMatrix element_action(const ClassModuleData& m, const GaloisGroup& gal, FiniteAbelianGroup::Element g) {
    IntMatrix out = identity_int(m.rank());
    const auto ex = gal.group()->exponents(g);
    for (size_t s = 0; s < ex.size(); ++s)
        for (int64_t e = 0; e < ex[s]; ++e) out = mul_int(m, out, m.action[s]);
    for (size_t i = 0; i < m.rank(); ++i)
        for (auto& x : out[i]) x = nt::mod(x, m.orders[i]);
    return out;
}

std::vector<int64_t> apply_action(const ClassModuleData& m, const IntMatrix& a, const std::vector<int64_t>& x) {
    std::vector<int64_t> y(m.rank(), 0);
    for (size_t i = 0; i < m.rank(); ++i) {
        int64_t s = 0;
        for (size_t j = 0; j < m.rank(); ++j)
            s = nt::mod(s + nt::mulmod(nt::mod(a[i][j], m.orders[i]), nt::mod(x[j], m.orders[i]), m.orders[i]), m.orders[i]);
        y[i] = s;
    }
    return y;
}

AnnihilationResult annihilation_check(const StickelbergerElement& theta, const ClassModuleData& m) {
    if (!verify_integrality(theta)) throw PreconditionError("annihilation check needs an integral Stickelberger element");
    const GaloisGroup gal(theta.spec);
    validate_class_module(m, gal);
    const size_t k = m.rank();
    AnnihilationResult out;
    out.acting.assign(k, std::vector<int64_t>(k, 0));
    for (int g = 0; g < gal.size(); ++g) {
        const Rational& c = theta.value[g];
        if (c.is_zero()) continue;
        const IntMatrix a = element_action(m, gal, g);
        for (size_t i = 0; i < k; ++i) {
            const mpz_class r = c.numerator() % mpz_class(static_cast<long>(m.orders[i]));
            const int64_t ci = nt::mod(r.get_si(), m.orders[i]);
            for (size_t j = 0; j < k; ++j)
                out.acting[i][j] = nt::mod(out.acting[i][j] + nt::mulmod(ci, a[i][j], m.orders[i]), m.orders[i]);
        }
    }
    out.annihilates = true;
    for (const auto& row : out.acting)
        for (auto x : row)
            if (x != 0) out.annihilates = false;
    return out;
}

AlgebraModule p_part_module(const ClassModuleData& m, const GaloisGroup& gal, const AlgebraPtr& group_alg) {
    const Zq& R = group_alg->ring();
    const int64_t p = R.p;
    std::vector<size_t> idx;
    std::vector<int> a;
    for (size_t i = 0; i < m.rank(); ++i) {
        const int v = nt::valuation(m.orders[i], p);
        if (v == 0) continue;
        if (v > R.N)
            throw PrecisionBudgetError("class module has a factor of order divisible by " + std::to_string(p) + "^" +
                                       std::to_string(v) + ", beyond the precision N = " + std::to_string(R.N));
        idx.push_back(i);
        a.push_back(v);
    }
    const size_t k = idx.size();
    AlgebraModule out;
    out.algebra = group_alg;
    out.dim = k;
    out.sub = howell_form(identity_matrix(k), R, k);
    Matrix rel;
    for (size_t s = 0; s < k; ++s) {
        Vec v(k, 0);
        v[s] = R.power_of_p(a[s]);
        rel.push_back(v);
    }
    out.rel = howell_form(rel, R, k);
    // basis f_s = (o_i / p^{a_s}) e_i of the p-primary part
    for (int g = 0; g < gal.size(); ++g) {
        const IntMatrix A = element_action(m, gal, g);
        Matrix act(k, Vec(k, 0));
        for (size_t t = 0; t < k; ++t) {      // image of f_t
            const size_t j = idx[t];
            const int64_t cj = m.orders[j] / nt::ipow(p, a[t]);
            for (size_t s = 0; s < k; ++s) {  // coordinate along f_s
                const size_t i = idx[s];
                const int64_t ci = m.orders[i] / nt::ipow(p, a[s]);
                const int64_t x = nt::mod(nt::mulmod(cj % m.orders[i], A[i][j], m.orders[i]), m.orders[i]);
                if (x % ci != 0) throw PreconditionError("action does not preserve the p-primary part");
                act[t][s] = R.reduce((x / ci) % nt::ipow(p, a[s]));
            }
        }
        out.action.push_back(std::move(act));
    }
    if (auto why = validate_module(out); !why.empty()) throw PreconditionError("p-part: " + why);
    return out;
}

AlgebraModule minus_part(const AlgebraModule& m, const GroupPtr& group, FiniteAbelianGroup::Element j,
                         const AlgebraPtr& minus_alg) {
    const Zq& R = m.algebra->ring();
    if (R.p == 2) throw PreconditionError("minus parts need p odd");
    const Matrix& J = m.action[static_cast<size_t>(j)];
    Matrix one_minus_j = identity_matrix(m.dim);
    for (size_t a = 0; a < m.dim; ++a)
        for (size_t b = 0; b < m.dim; ++b) one_minus_j[a][b] = R.sub(one_minus_j[a][b], J[a][b]);
    Matrix rows = mat_mul(m.sub, one_minus_j, R, m.dim, m.dim);
    rows.insert(rows.end(), m.rel.begin(), m.rel.end());
    AlgebraModule out;
    out.algebra = minus_alg;
    out.dim = m.dim;
    out.sub = howell_form(rows, R, m.dim);
    out.rel = m.rel;
    for (int g = 0; g < group->size(); ++g)
        if (g < group->mul(g, j)) out.action.push_back(m.action[static_cast<size_t>(g)]);
    if (auto why = validate_module(out); !why.empty()) throw PreconditionError("minus part: " + why);
    return out;
}

FittingMembershipResult fitting_membership_check(const StickelbergerElement& theta, const ClassModuleData& m,
                                                 int64_t p, int N) {
    if (p == 2 || !nt::is_prime(p)) throw PreconditionError("p must be an odd prime");
    const GaloisGroup gal(theta.spec);
    auto cm = cm_data(gal);
    if (!cm) throw PreconditionError(theta.spec.label + " is not a CM field");
    validate_class_module(m, gal);
    if (!is_p_integral(theta.value, p))
        throw PreconditionError("Stickelberger element is not " + std::to_string(p) + "-integral");
    const GroupPtr& G = gal.group();
    const AlgebraPtr RG = group_algebra(G, p, N);
    const AlgebraPtr Rminus = minus_quotient_algebra(G, cm->j, p, N);
    const AlgebraHom to_minus = minus_projection(RG, Rminus, G, cm->j);

    const AlgebraModule mp = p_part_module(m, gal, RG);
    const AlgebraModule minus = minus_part(mp, G, cm->j, Rminus);
    const AlgebraModule dual = hom_dual(minus);
    const Ideal fitt = fitting_ideal(dual);

    FittingMembershipResult out;
    out.theta_sharp = to_minus(to_vec(reduce_mod(theta.value.sharp(), p, N)));
    out.member = fitt.contains(out.theta_sharp);
    out.residual = howell_reduce(fitt.howell(), out.theta_sharp, Rminus->ring());
    out.fitting_log_size = fitt.log_size();
    out.minus_log_size = minus.log_size();
    out.fitting_generators = fitt.generators();
    return out;
}

}  // namespace iwk
