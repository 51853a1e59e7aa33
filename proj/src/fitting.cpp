#include "iwasawa/fitting.hpp"

#include <functional>
#include <map>

#include "iwasawa/errors.hpp"

namespace iwk {

namespace {

// Laplace expansion along rows, memoised on the set of remaining columns.
Vec det_rec(const FiniteCommAlgebra& A, const AlgebraMatrix& m, const std::vector<size_t>& rows, size_t depth,
            uint32_t cols_left, std::map<uint32_t, Vec>& memo) {
    if (depth == rows.size()) return A.one();
    auto it = memo.find(cols_left);
    if (it != memo.end()) return it->second;
    Vec acc = A.zero();
    int sign_pos = 0;
    for (size_t c = 0; c < m[0].size(); ++c) {
        if (!(cols_left >> c & 1u)) continue;
        const Vec& entry = m[rows[depth]][c];
        if (!A.is_zero(entry)) {
            Vec term = A.mul(entry, det_rec(A, m, rows, depth + 1, cols_left & ~(1u << c), memo));
            acc = (sign_pos % 2 == 0) ? A.add(acc, term) : A.sub(acc, term);
        }
        ++sign_pos;
    }
    memo.emplace(cols_left, acc);
    return acc;
}

Vec minor(const FiniteCommAlgebra& A, const AlgebraMatrix& m, const std::vector<size_t>& rows) {
    const size_t n = m.empty() ? 0 : m[0].size();
    if (n > 20) throw PreconditionError("determinant: too many generators");
    std::map<uint32_t, Vec> memo;
    return det_rec(A, m, rows, 0, (1u << n) - 1, memo);
}

void for_each_subset(size_t k, size_t n, const std::function<void(const std::vector<size_t>&)>& f) {
    std::vector<size_t> idx(n);
    for (size_t i = 0; i < n; ++i) idx[i] = i;
    if (n > k) return;
    while (true) {
        f(idx);
        int i = static_cast<int>(n) - 1;
        while (i >= 0 && idx[static_cast<size_t>(i)] == k - n + static_cast<size_t>(i)) --i;
        if (i < 0) return;
        ++idx[static_cast<size_t>(i)];
        for (size_t j = static_cast<size_t>(i) + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
}

Matrix flat_span(const FiniteCommAlgebra& A, const AlgebraMatrix& rows, size_t n) {
    const size_t d = static_cast<size_t>(A.dim());
    Matrix out;
    for (const auto& row : rows)
        for (int b = 0; b < A.dim(); ++b) {
            Vec flat;
            flat.reserve(n * d);
            for (const auto& x : row) {
                Vec y = A.mul(A.basis(b), x);
                flat.insert(flat.end(), y.begin(), y.end());
            }
            out.push_back(std::move(flat));
        }
    return howell_form(out, A.ring(), n * d);
}

std::string describe(const Ideal& I) {
    return "ideal of size p^" + std::to_string(I.log_size()) + " with " + std::to_string(I.generators().size()) +
           " generators";
}

}  // namespace

Vec determinant(const FiniteCommAlgebra& A, const AlgebraMatrix& m) {
    for (const auto& row : m)
        if (row.size() != m.size()) throw PreconditionError("determinant of a non-square matrix");
    std::vector<size_t> rows(m.size());
    for (size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    if (m.empty()) return A.one();
    return minor(A, m, rows);
}

Ideal fitting_ideal(const FinPresModule& m) {
    const auto& A = *m.algebra;
    const size_t n = static_cast<size_t>(m.generators);
    if (n == 0) return Ideal::unit(m.algebra);
    if (m.relations.size() < n) return Ideal::zero(m.algebra);
    std::vector<Vec> minors;
    for_each_subset(m.relations.size(), n, [&](const std::vector<size_t>& rows) {
        Vec x = minor(A, m.relations, rows);
        if (!A.is_zero(x)) minors.push_back(std::move(x));
    });
    return Ideal(m.algebra, std::move(minors));
}

Ideal fitting_ideal(const AlgebraModule& m) { return fitting_ideal(presentation(m)); }

AlgebraMatrix transpose_sharp(const FiniteCommAlgebra& A, const AlgebraMatrix& h) {
    const size_t rows = h.size();
    const size_t cols = rows == 0 ? 0 : h[0].size();
    AlgebraMatrix out(cols, std::vector<Vec>(rows));
    for (size_t i = 0; i < rows; ++i)
        for (size_t j = 0; j < cols; ++j) out[j][i] = A.sharp(h[i][j]);
    return out;
}

bool has_injective_lift(const FinPresModule& m) {
    if (!m.is_square()) return false;
    const auto& A = *m.algebra;
    const Zq& R = A.ring();
    const size_t n = static_cast<size_t>(m.generators);
    const size_t d = static_cast<size_t>(A.dim());
    Matrix span = flat_span(A, m.relations, n);
    const Vec pn1 = A.scale(A.one(), R.power_of_p(R.N - 1));
    for (size_t j = 0; j < n; ++j) {
        Vec v(n * d, 0);
        std::copy(pn1.begin(), pn1.end(), v.begin() + static_cast<long>(j * d));
        if (!howell_contains(span, v, R)) return false;
    }
    return true;
}

FinPresModule dual_presentation(const FinPresModule& m) {
    if (!m.algebra->has_sharp()) throw PreconditionError("dual presentation needs an algebra with an involution");
    if (!m.is_square()) throw PreconditionError("dual presentation needs a square relation matrix");
    if (!has_injective_lift(m)) throw PreconditionError("relation matrix does not lift to an injective map");
    return FinPresModule{m.algebra, m.generators, transpose_sharp(*m.algebra, m.relations)};
}

CheckResult base_change_fitting(const FinPresModule& m, const AlgebraHom& hom) {
    if (auto why = hom.validate(); !why.empty()) throw PreconditionError("base change: " + why);
    const Ideal via_generators = fitting_ideal(m).image(hom);
    const FinPresModule pushed = base_change(m, hom);
    const Ideal direct = fitting_ideal(pushed);
    const Ideal via_representation = fitting_ideal(presentation(to_module(pushed)));
    const bool ok = via_generators == direct && direct == via_representation;
    return {ok, ok ? "equal: " + describe(direct)
                   : "images of generators give " + describe(via_generators) + ", base-changed module gives " +
                         describe(via_representation)};
}

CheckResult e1_sharp_check(const FinPresModule& m) {
    const FinPresModule dual = dual_presentation(m);
    const Ideal lhs = fitting_ideal(dual);
    const Ideal rhs = fitting_ideal(m).sharp();
    const Ideal hom_route = fitting_ideal(hom_dual(to_module(m)));
    if (!(lhs == rhs)) return {false, "Fitt of the transpose-sharp presentation differs from Fitt(M)^#"};
    if (!(lhs == hom_route)) return {false, "transpose-sharp presentation disagrees with the Hom dual"};
    return {true, "equal: " + describe(lhs)};
}

CheckResult four_term_check(const AlgebraModule& m, const FinPresModule& c, const FinPresModule& c_prime,
                            const AlgebraModule& m_prime, const Matrix& f1, const Matrix& f2, const Matrix& f3) {
    if (!has_injective_lift(c) || !has_injective_lift(c_prime))
        throw PreconditionError("four-term check needs square presentations with injective lifts for C and C'");
    const AlgebraModule cm = to_module(c), cpm = to_module(c_prime);
    if (auto w = validate_map(m, cm, f1); !w.empty()) throw PreconditionError("M -> C: " + w);
    if (auto w = validate_map(cm, cpm, f2); !w.empty()) throw PreconditionError("C -> C': " + w);
    if (auto w = validate_map(cpm, m_prime, f3); !w.empty()) throw PreconditionError("C' -> M': " + w);
    const Zq& R = m.algebra->ring();
    if (!map_is_injective(m, cm, f1)) throw PreconditionError("M -> C is not injective");
    if (!map_is_surjective(cpm, m_prime, f3)) throw PreconditionError("C' -> M' is not surjective");
    auto exact_at = [&](const AlgebraModule& a, const AlgebraModule& b, const AlgebraModule& c3, const Matrix& g,
                        const Matrix& h) {
        AlgebraModule im = module_image(a, b, g);
        AlgebraModule ker = module_kernel(b, c3, h);
        // image inside kernel, and equal sizes
        for (const auto& u : im.sub)
            if (!ker.in_sub(u)) return false;
        return howell_log_size(im.sub, R) == howell_log_size(ker.sub, R);
    };
    if (!exact_at(m, cm, cpm, f1, f2)) throw PreconditionError("sequence is not exact at C");
    if (!exact_at(cm, cpm, m_prime, f2, f3)) throw PreconditionError("sequence is not exact at C'");

    const Ideal lhs = fitting_ideal(hom_dual(m)).sharp() * fitting_ideal(c_prime);
    const Ideal rhs = fitting_ideal(c) * fitting_ideal(m_prime);
    const bool ok = lhs == rhs;
    return {ok, ok ? "equal: " + describe(lhs) : "left " + describe(lhs) + ", right " + describe(rhs)};
}

bool TowerFittingReport::all_contained() const {
    for (bool b : contained)
        if (!b) return false;
    return true;
}

bool TowerFittingReport::all_equal() const {
    for (bool b : equal)
        if (!b) return false;
    return true;
}

TowerFittingReport tower_fitting_check(const std::vector<TowerLevel>& levels) {
    TowerFittingReport report;
    for (size_t n = 0; n + 1 < levels.size(); ++n) {
        const auto& lower = levels[n].module;
        const auto& upper = levels[n + 1].module;
        if (!levels[n + 1].projection) throw PreconditionError("missing projection at level " + std::to_string(n + 1));
        const AlgebraHom& pi = *levels[n + 1].projection;
        if (pi.source() != upper.algebra || pi.target() != lower.algebra)
            throw PreconditionError("projection at level " + std::to_string(n + 1) + " has the wrong algebras");
        if (auto why = pi.validate(); !why.empty())
            throw PreconditionError("projection at level " + std::to_string(n + 1) + ": " + why);
        const auto& A = *lower.algebra;
        AlgebraMatrix t;
        if (levels[n + 1].transition) {
            t = *levels[n + 1].transition;
        } else {
            if (upper.generators != lower.generators)
                throw PreconditionError("identity transition needs equal generator counts");
            t.assign(static_cast<size_t>(upper.generators), std::vector<Vec>(static_cast<size_t>(lower.generators), A.zero()));
            for (size_t i = 0; i < t.size(); ++i) t[i][i] = A.one();
        }
        const size_t nl = static_cast<size_t>(lower.generators);
        const size_t d = static_cast<size_t>(A.dim());
        Matrix span = flat_span(A, lower.relations, nl);
        // well defined: pi(relation) * T lies in the relations of A_n
        for (const auto& row : upper.relations) {
            Vec image(nl * d, 0);
            for (size_t i = 0; i < row.size(); ++i) {
                Vec coeff = pi(row[i]);
                for (size_t j = 0; j < nl; ++j) {
                    Vec y = A.mul(coeff, t[i][j]);
                    for (size_t k = 0; k < d; ++k) image[j * d + k] = A.ring().add(image[j * d + k], y[k]);
                }
            }
            if (!howell_contains(span, image, A.ring()))
                throw PreconditionError("transition into level " + std::to_string(n) + " is not well defined");
        }
        // surjective: transition rows together with the relations span Lambda_n^k
        Matrix gen_rows = flat_span(A, t, nl);
        Matrix all = span;
        all.insert(all.end(), gen_rows.begin(), gen_rows.end());
        if (howell_log_size(howell_form(all, A.ring(), nl * d), A.ring()) !=
            static_cast<int64_t>(nl * d) * A.ring().N)
            throw PreconditionError("transition into level " + std::to_string(n) + " is not surjective");

        const Ideal projected = fitting_ideal(upper).image(pi);
        const Ideal here = fitting_ideal(lower);
        report.contained.push_back(projected.is_subset_of(here));
        report.equal.push_back(projected == here);
    }
    return report;
}

CancellationReport cancellation_check(const AlgebraHom& to_s, const Vec& a, const Vec& b) {
    const AlgebraPtr& R = to_s.source();
    const Ideal ra(R, {a}), rb(R, {b});
    const Ideal sa(to_s.target(), {to_s(a)}), sb(to_s.target(), {to_s(b)});
    FinPresModule quotient{R, 1, {{b}}};
    CancellationReport out;
    out.premises = ra.is_subset_of(rb) && has_injective_lift(quotient) && sa == sb;
    out.conclusion = ra == rb;
    return out;
}

}  // namespace iwk
