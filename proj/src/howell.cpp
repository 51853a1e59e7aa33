#include "iwasawa/howell.hpp"

#include <algorithm>
#include <set>

#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk {

Zq::Zq(int64_t p_, int N_) : p(p_), N(N_), q(nt::ipow(p_, N_)) {
    if (N_ < 1) throw PreconditionError("precision must be positive");
    if (!nt::is_prime(p_)) throw PreconditionError("Z/p^N needs a prime p");
}

int64_t Zq::reduce(int64_t x) const { return nt::mod(x, q); }
int64_t Zq::add(int64_t a, int64_t b) const { return nt::mod(a + b, q); }
int64_t Zq::sub(int64_t a, int64_t b) const { return nt::mod(a - b, q); }
int64_t Zq::mul(int64_t a, int64_t b) const { return nt::mulmod(nt::mod(a, q), nt::mod(b, q), q); }

int Zq::valuation(int64_t x) const {
    x = reduce(x);
    if (x == 0) return N;
    int k = 0;
    while (x % p == 0) {
        x /= p;
        ++k;
    }
    return k;
}

int64_t Zq::power_of_p(int k) const { return nt::ipow(p, k); }

size_t leading_column(const Vec& row) {
    for (size_t c = 0; c < row.size(); ++c)
        if (row[c] != 0) return c;
    return row.size();
}

namespace {

void axpy(Vec& y, int64_t a, const Vec& x, const Zq& R) {
    if (a == 0) return;
    for (size_t c = 0; c < y.size(); ++c)
        if (x[c] != 0) y[c] = R.add(y[c], R.mul(a, x[c]));
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](int64_t x) { return x == 0; });
}

}  // namespace

Matrix howell_form(const Matrix& a, const Zq& R, size_t ncols) {
    std::vector<Vec> rows;
    for (const auto& r : a) {
        if (r.size() != ncols) throw PreconditionError("howell_form: ragged matrix");
        Vec v(ncols);
        for (size_t c = 0; c < ncols; ++c) v[c] = R.reduce(r[c]);
        if (!is_zero(v)) rows.push_back(std::move(v));
    }
    Matrix out;
    for (size_t c = 0; c < ncols && !rows.empty(); ++c) {
        int best = -1, best_val = R.N;
        for (size_t i = 0; i < rows.size(); ++i) {
            int v = R.valuation(rows[i][c]);
            if (v < best_val) {
                best_val = v;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) continue;
        Vec piv = std::move(rows[static_cast<size_t>(best)]);
        rows.erase(rows.begin() + best);
        const int64_t pk = R.power_of_p(best_val);
        const int64_t unit = piv[c] / pk;
        const int64_t inv = nt::inverse_mod(unit, R.q);
        for (auto& x : piv) x = R.mul(x, inv);
        for (auto& r : rows)
            if (r[c] != 0) axpy(r, R.q - r[c] / pk, piv, R);
        if (best_val > 0) {
            Vec sat = piv;
            for (auto& x : sat) x = R.mul(x, R.power_of_p(R.N - best_val));
            rows.push_back(std::move(sat));
        }
        std::erase_if(rows, is_zero);
        out.push_back(std::move(piv));
    }
    // reduce entries above each leading entry
    for (size_t i = 0; i < out.size(); ++i) {
        const size_t c = leading_column(out[i]);
        const int64_t pk = out[i][c];
        for (size_t j = 0; j < i; ++j) {
            const int64_t t = out[j][c] / pk;
            if (t != 0) axpy(out[j], R.q - t, out[i], R);
        }
    }
    return out;
}

Vec howell_reduce(const Matrix& h, Vec v, const Zq& R) {
    for (auto& x : v) x = R.reduce(x);
    for (const auto& row : h) {
        const size_t c = leading_column(row);
        if (v[c] == 0) continue;
        const int64_t t = v[c] / row[c];
        if (t != 0) axpy(v, R.q - t, row, R);
    }
    return v;
}

bool howell_contains(const Matrix& h, const Vec& v, const Zq& R) { return is_zero(howell_reduce(h, v, R)); }

int64_t howell_log_size(const Matrix& h, const Zq& R) {
    int64_t s = 0;
    for (const auto& row : h) s += R.N - R.valuation(row[leading_column(row)]);
    return s;
}

Matrix left_kernel(const Matrix& a, const Zq& R, size_t ncols) {
    const size_t m = a.size();
    Matrix aug;
    for (size_t i = 0; i < m; ++i) {
        Vec row(a[i]);
        row.resize(ncols + m, 0);
        row[ncols + i] = 1;
        aug.push_back(std::move(row));
    }
    Matrix h = howell_form(aug, R, ncols + m);
    Matrix ker;
    for (const auto& row : h)
        if (leading_column(row) >= ncols) ker.emplace_back(row.begin() + static_cast<long>(ncols), row.end());
    return howell_form(ker, R, m);
}

std::optional<Vec> solve_left(const Matrix& a, const Vec& b, const Zq& R, size_t ncols) {
    const size_t m = a.size();
    Matrix aug;
    for (size_t i = 0; i < m; ++i) {
        Vec row(a[i]);
        row.resize(ncols + m, 0);
        row[ncols + i] = 1;
        aug.push_back(std::move(row));
    }
    Matrix h = howell_form(aug, R, ncols + m);
    Vec v(b);
    v.resize(ncols + m, 0);
    for (auto& x : v) x = R.reduce(x);
    for (const auto& row : h) {
        const size_t c = leading_column(row);
        if (c >= ncols) break;
        if (v[c] == 0) continue;
        if (v[c] % row[c] != 0) return std::nullopt;
        axpy(v, R.q - v[c] / row[c], row, R);
    }
    for (size_t c = 0; c < ncols; ++c)
        if (v[c] != 0) return std::nullopt;
    Vec x(m);
    for (size_t i = 0; i < m; ++i) x[i] = R.sub(0, v[ncols + i]);
    return x;
}

Matrix mat_mul(const Matrix& a, const Matrix& b, const Zq& R, size_t inner, size_t ncols) {
    Matrix out(a.size(), Vec(ncols, 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t k = 0; k < inner; ++k)
            if (a[i][k] != 0) axpy(out[i], a[i][k], b[k], R);
    return out;
}

Vec vec_mat(const Vec& v, const Matrix& a, const Zq& R, size_t ncols) {
    Vec out(ncols, 0);
    for (size_t k = 0; k < v.size(); ++k)
        if (v[k] != 0) axpy(out, v[k], a[k], R);
    return out;
}

Matrix transpose(const Matrix& a, size_t ncols) {
    Matrix out(ncols, Vec(a.size(), 0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < ncols; ++j) out[j][i] = a[i][j];
    return out;
}

Matrix identity_matrix(size_t n) {
    Matrix out(n, Vec(n, 0));
    for (size_t i = 0; i < n; ++i) out[i][i] = 1;
    return out;
}

std::vector<Vec> enumerate_span(const Matrix& a, const Zq& R, size_t ncols, size_t limit) {
    std::set<Vec> seen{Vec(ncols, 0)};
    std::vector<Vec> frontier{Vec(ncols, 0)};
    while (!frontier.empty()) {
        std::vector<Vec> next;
        for (const auto& v : frontier)
            for (const auto& row : a) {
                Vec w(v);
                axpy(w, 1, row, R);
                if (seen.insert(w).second) {
                    if (seen.size() > limit) throw PreconditionError("enumerate_span: span too large");
                    next.push_back(std::move(w));
                }
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

}  // namespace iwk
