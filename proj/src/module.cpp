#include "iwasawa/module.hpp"

#include <set>

#include "iwasawa/errors.hpp"

namespace iwk {

int64_t AlgebraModule::log_size() const {
    return howell_log_size(sub, algebra->ring()) - howell_log_size(rel, algebra->ring());
}

Matrix AlgebraModule::action_of(const Vec& a) const {
    const Zq& R = algebra->ring();
    Matrix out(dim, Vec(dim, 0));
    for (size_t b = 0; b < a.size(); ++b) {
        if (a[b] == 0) continue;
        for (size_t i = 0; i < dim; ++i)
            for (size_t j = 0; j < dim; ++j)
                if (action[b][i][j] != 0) out[i][j] = R.add(out[i][j], R.mul(a[b], action[b][i][j]));
    }
    return out;
}

Vec AlgebraModule::act(const Vec& a, const Vec& v) const { return vec_mat(v, action_of(a), algebra->ring(), dim); }

bool AlgebraModule::in_sub(const Vec& v) const { return howell_contains(sub, v, algebra->ring()); }

bool AlgebraModule::is_zero_element(const Vec& v) const { return howell_contains(rel, v, algebra->ring()); }

Vec AlgebraModule::normal_form(const Vec& v) const { return howell_reduce(rel, v, algebra->ring()); }

std::string validate_module(const AlgebraModule& m) {
    const auto& A = *m.algebra;
    const Zq& R = A.ring();
    if (static_cast<int>(m.action.size()) != A.dim()) return "one action matrix per basis element is required";
    for (const auto& row : m.rel)
        if (!m.in_sub(row)) return "relation submodule is not contained in the generating submodule";
    for (int b = 0; b < A.dim(); ++b) {
        const auto& Ab = m.action[static_cast<size_t>(b)];
        for (const auto& u : m.sub)
            if (!m.in_sub(vec_mat(u, Ab, R, m.dim))) return "action of " + A.labels()[static_cast<size_t>(b)] + " leaves the module";
        for (const auto& w : m.rel)
            if (!m.is_zero_element(vec_mat(w, Ab, R, m.dim)))
                return "action of " + A.labels()[static_cast<size_t>(b)] + " does not preserve relations";
    }
    for (const auto& u : m.sub) {
        Vec diff(m.dim);
        Vec one_u = m.act(A.one(), u);
        for (size_t i = 0; i < m.dim; ++i) diff[i] = R.sub(one_u[i], u[i]);
        if (!m.is_zero_element(diff)) return "unit does not act as the identity";
        for (int b = 0; b < A.dim(); ++b)
            for (int c = 0; c < A.dim(); ++c) {
                Vec lhs = m.act(A.mul(A.basis(b), A.basis(c)), u);
                Vec rhs = m.act(A.basis(b), m.act(A.basis(c), u));
                for (size_t i = 0; i < m.dim; ++i) lhs[i] = R.sub(lhs[i], rhs[i]);
                if (!m.is_zero_element(lhs)) return "action is not multiplicative";
            }
    }
    return "";
}

namespace {

Matrix block_diagonal(const Matrix& a, size_t copies, size_t d) {
    Matrix out(d * copies, Vec(d * copies, 0));
    for (size_t c = 0; c < copies; ++c)
        for (size_t i = 0; i < d; ++i)
            for (size_t j = 0; j < d; ++j) out[c * d + i][c * d + j] = a[i][j];
    return out;
}

// Z/p^N rows spanning the A-submodule of A^n generated by the given rows.
Matrix algebra_span_rows(const FiniteCommAlgebra& A, const std::vector<std::vector<Vec>>& rows) {
    const size_t d = static_cast<size_t>(A.dim());
    Matrix out;
    for (const auto& row : rows)
        for (int b = 0; b < A.dim(); ++b) {
            Vec flat;
            flat.reserve(row.size() * d);
            for (const auto& x : row) {
                Vec y = A.mul(A.basis(b), x);
                flat.insert(flat.end(), y.begin(), y.end());
            }
            out.push_back(std::move(flat));
        }
    return out;
}

std::vector<Vec> unflatten(const Vec& flat, size_t n, size_t d) {
    std::vector<Vec> out;
    for (size_t i = 0; i < n; ++i) out.emplace_back(flat.begin() + static_cast<long>(i * d), flat.begin() + static_cast<long>((i + 1) * d));
    return out;
}

}  // namespace

AlgebraModule to_module(const FinPresModule& m) {
    const auto& A = *m.algebra;
    const size_t d = static_cast<size_t>(A.dim());
    const size_t n = static_cast<size_t>(m.generators);
    for (const auto& row : m.relations) {
        if (row.size() != n) throw PreconditionError("relation row has the wrong number of entries");
        for (const auto& x : row)
            if (x.size() != d) throw PreconditionError("relation entry of wrong dimension");
    }
    AlgebraModule out;
    out.algebra = m.algebra;
    out.dim = n * d;
    out.sub = howell_form(identity_matrix(n * d), A.ring(), n * d);
    out.rel = howell_form(algebra_span_rows(A, m.relations), A.ring(), n * d);
    for (int b = 0; b < A.dim(); ++b) out.action.push_back(block_diagonal(A.mult_matrix(A.basis(b)), n, d));
    return out;
}

Matrix linear_map_matrix(const FiniteCommAlgebra& A, const std::vector<std::vector<Vec>>& f, size_t target_generators) {
    const size_t d = static_cast<size_t>(A.dim());
    Matrix out(f.size() * d, Vec(target_generators * d, 0));
    for (size_t k = 0; k < f.size(); ++k) {
        if (f[k].size() != target_generators) throw PreconditionError("map matrix row has the wrong number of entries");
        for (size_t l = 0; l < target_generators; ++l) {
            const Matrix block = A.mult_matrix(f[k][l]);
            for (size_t b = 0; b < d; ++b)
                for (size_t c = 0; c < d; ++c) out[k * d + b][l * d + c] = block[b][c];
        }
    }
    return out;
}

FinPresModule presentation(const AlgebraModule& m) {
    const auto& A = *m.algebra;
    const Zq& R = A.ring();
    const size_t d = static_cast<size_t>(A.dim());
    const int64_t target = howell_log_size(m.sub, R);

    std::vector<Vec> gens;
    Matrix image_rows = m.rel;
    Matrix image = m.rel;
    auto rows_of = [&](const Vec& u) {
        Matrix rows;
        for (size_t b = 0; b < d; ++b) rows.push_back(vec_mat(u, m.action[b], R, m.dim));
        return rows;
    };
    while (howell_log_size(image, R) < target) {
        int64_t best_gain = -1;
        const Vec* best = nullptr;
        Matrix best_image;
        for (const auto& u : m.sub) {
            if (howell_contains(image, u, R)) continue;
            Matrix trial = image_rows;
            for (auto& r : rows_of(u)) trial.push_back(std::move(r));
            Matrix h = howell_form(trial, R, m.dim);
            const int64_t gain = howell_log_size(h, R);
            if (gain > best_gain) {
                best_gain = gain;
                best = &u;
                best_image = std::move(h);
            }
        }
        if (!best) throw std::logic_error("presentation: generators do not reach the module");
        gens.push_back(*best);
        for (auto& r : rows_of(*best)) image_rows.push_back(std::move(r));
        image = std::move(best_image);
    }

    FinPresModule out{m.algebra, static_cast<int>(gens.size()), {}};
    if (gens.empty()) return out;
    // kernel of A^n -> M, (a_i) -> sum a_i m_i
    const size_t nd = gens.size() * d;
    Matrix phi;
    for (const auto& g : gens)
        for (auto& r : rows_of(g)) phi.push_back(std::move(r));
    Matrix stacked = phi;
    stacked.insert(stacked.end(), m.rel.begin(), m.rel.end());
    Matrix ker = left_kernel(stacked, R, m.dim);
    Matrix candidates;
    for (const auto& row : ker) candidates.emplace_back(row.begin(), row.begin() + static_cast<long>(nd));
    candidates = howell_form(candidates, R, nd);

    Matrix kept_span;
    for (const auto& cand : candidates) {
        if (howell_contains(kept_span, cand, R)) continue;
        auto row = unflatten(cand, gens.size(), d);
        out.relations.push_back(row);
        Matrix span = kept_span;
        for (auto& r : algebra_span_rows(A, {row})) span.push_back(std::move(r));
        kept_span = howell_form(span, R, nd);
    }
    return out;
}

std::string validate_map(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f) {
    if (src.algebra != tgt.algebra) return "modules over different algebras";
    const Zq& R = src.algebra->ring();
    if (f.size() != src.dim) return "map matrix has the wrong number of rows";
    for (const auto& row : f)
        if (row.size() != tgt.dim) return "map matrix has the wrong number of columns";
    for (const auto& u : src.sub)
        if (!tgt.in_sub(vec_mat(u, f, R, tgt.dim))) return "map does not land in the target";
    for (const auto& w : src.rel)
        if (!tgt.is_zero_element(vec_mat(w, f, R, tgt.dim))) return "map is not well defined on the quotient";
    for (size_t b = 0; b < src.action.size(); ++b)
        for (const auto& u : src.sub) {
            Vec lhs = vec_mat(vec_mat(u, src.action[b], R, src.dim), f, R, tgt.dim);
            Vec rhs = vec_mat(vec_mat(u, f, R, tgt.dim), tgt.action[b], R, tgt.dim);
            for (size_t i = 0; i < tgt.dim; ++i) lhs[i] = R.sub(lhs[i], rhs[i]);
            if (!tgt.is_zero_element(lhs)) return "map is not algebra-linear";
        }
    return "";
}

AlgebraModule module_image(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f) {
    const Zq& R = src.algebra->ring();
    Matrix rows = mat_mul(src.sub, f, R, src.dim, tgt.dim);
    rows.insert(rows.end(), tgt.rel.begin(), tgt.rel.end());
    AlgebraModule out = tgt;
    out.sub = howell_form(rows, R, tgt.dim);
    return out;
}

AlgebraModule module_cokernel(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f) {
    AlgebraModule out = tgt;
    out.rel = module_image(src, tgt, f).sub;
    return out;
}

AlgebraModule module_kernel(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f) {
    const Zq& R = src.algebra->ring();
    Matrix stacked = mat_mul(src.sub, f, R, src.dim, tgt.dim);
    const size_t s = stacked.size();
    stacked.insert(stacked.end(), tgt.rel.begin(), tgt.rel.end());
    Matrix ker = left_kernel(stacked, R, tgt.dim);
    Matrix rows = src.rel;
    for (const auto& k : ker) {
        Vec coeff(k.begin(), k.begin() + static_cast<long>(s));
        rows.push_back(vec_mat(coeff, src.sub, R, src.dim));
    }
    AlgebraModule out = src;
    out.sub = howell_form(rows, R, src.dim);
    return out;
}

bool map_is_injective(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f) {
    return module_kernel(src, tgt, f).log_size() == 0;
}

bool map_is_surjective(const AlgebraModule& src, const AlgebraModule& tgt, const Matrix& f) {
    return module_cokernel(src, tgt, f).log_size() == 0;
}

bool same_submodule(const AlgebraModule& a, const AlgebraModule& b) {
    return a.dim == b.dim && a.sub == b.sub && a.rel == b.rel;
}

AlgebraModule hom_dual(const AlgebraModule& m) {
    const auto& A = *m.algebra;
    const Zq& R = A.ring();
    AlgebraModule out;
    out.algebra = m.algebra;
    out.dim = m.dim;
    out.sub = left_kernel(transpose(m.rel, m.dim), R, m.rel.size());
    out.rel = left_kernel(transpose(m.sub, m.dim), R, m.sub.size());
    for (int b = 0; b < A.dim(); ++b) out.action.push_back(transpose(m.action_of(A.sharp(A.basis(b))), m.dim));
    return out;
}

Ideal annihilator(const AlgebraModule& m) {
    const auto& A = *m.algebra;
    const Zq& R = A.ring();
    const size_t d = static_cast<size_t>(A.dim());
    Matrix k = identity_matrix(d);
    for (const auto& u : m.sub) {
        // rows of k mapped to k_j . u
        Matrix stacked;
        for (const auto& kj : k) stacked.push_back(m.act(kj, u));
        const size_t r = stacked.size();
        stacked.insert(stacked.end(), m.rel.begin(), m.rel.end());
        Matrix ker = left_kernel(stacked, R, m.dim);
        Matrix next;
        for (const auto& c : ker) next.push_back(vec_mat(Vec(c.begin(), c.begin() + static_cast<long>(r)), k, R, d));
        k = howell_form(next, R, d);
    }
    return Ideal(m.algebra, std::vector<Vec>(k.begin(), k.end()));
}

std::vector<Vec> enumerate_elements(const AlgebraModule& m, size_t limit) {
    const Zq& R = m.algebra->ring();
    std::set<Vec> seen{Vec(m.dim, 0)};
    std::vector<Vec> frontier{Vec(m.dim, 0)};
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& v : frontier)
            for (const auto& u : m.sub) {
                Vec w(m.dim);
                for (size_t i = 0; i < m.dim; ++i) w[i] = R.add(v[i], u[i]);
                w = m.normal_form(w);
                if (seen.insert(w).second) {
                    if (seen.size() > limit) throw PreconditionError("module too large to enumerate");
                    next.push_back(std::move(w));
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

FinPresModule direct_sum(const FinPresModule& a, const FinPresModule& b) {
    if (a.algebra != b.algebra) throw PreconditionError("direct sum of modules over different algebras");
    const auto& A = *a.algebra;
    FinPresModule out{a.algebra, a.generators + b.generators, {}};
    for (const auto& row : a.relations) {
        auto r = row;
        for (int i = 0; i < b.generators; ++i) r.push_back(A.zero());
        out.relations.push_back(std::move(r));
    }
    for (const auto& row : b.relations) {
        std::vector<Vec> r;
        for (int i = 0; i < a.generators; ++i) r.push_back(A.zero());
        r.insert(r.end(), row.begin(), row.end());
        out.relations.push_back(std::move(r));
    }
    return out;
}

AlgebraModule direct_sum(const AlgebraModule& a, const AlgebraModule& b) {
    if (a.algebra != b.algebra) throw PreconditionError("direct sum of modules over different algebras");
    const size_t D = a.dim + b.dim;
    auto embed = [&](const Matrix& rows, size_t offset) {
        Matrix out;
        for (const auto& r : rows) {
            Vec v(D, 0);
            std::copy(r.begin(), r.end(), v.begin() + static_cast<long>(offset));
            out.push_back(std::move(v));
        }
        return out;
    };
    const Zq& R = a.algebra->ring();
    AlgebraModule out;
    out.algebra = a.algebra;
    out.dim = D;
    Matrix sub = embed(a.sub, 0), rel = embed(a.rel, 0);
    for (auto& r : embed(b.sub, a.dim)) sub.push_back(std::move(r));
    for (auto& r : embed(b.rel, a.dim)) rel.push_back(std::move(r));
    out.sub = howell_form(sub, R, D);
    out.rel = howell_form(rel, R, D);
    for (size_t k = 0; k < a.action.size(); ++k) {
        Matrix m(D, Vec(D, 0));
        for (size_t i = 0; i < a.dim; ++i)
            for (size_t j = 0; j < a.dim; ++j) m[i][j] = a.action[k][i][j];
        for (size_t i = 0; i < b.dim; ++i)
            for (size_t j = 0; j < b.dim; ++j) m[a.dim + i][a.dim + j] = b.action[k][i][j];
        out.action.push_back(std::move(m));
    }
    return out;
}

FinPresModule base_change(const FinPresModule& m, const AlgebraHom& hom) {
    if (hom.source() != m.algebra) throw PreconditionError("base change along a homomorphism from another algebra");
    FinPresModule out{hom.target(), m.generators, {}};
    for (const auto& row : m.relations) {
        std::vector<Vec> r;
        for (const auto& x : row) r.push_back(hom(x));
        out.relations.push_back(std::move(r));
    }
    return out;
}

AlgebraModule restrict_scalars(const AlgebraModule& m, const AlgebraHom& hom) {
    if (hom.target() != m.algebra) throw PreconditionError("restriction along a homomorphism into another algebra");
    AlgebraModule out;
    out.algebra = hom.source();
    out.dim = m.dim;
    out.sub = m.sub;
    out.rel = m.rel;
    const auto& S = *hom.source();
    if (!(S.ring() == m.algebra->ring())) throw PreconditionError("restriction of scalars needs equal base rings");
    for (int b = 0; b < S.dim(); ++b) out.action.push_back(m.action_of(hom(S.basis(b))));
    return out;
}

}  // namespace iwk
