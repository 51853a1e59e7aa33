#include "iwasawa/abelian_group.hpp"

#include <cstdlib>
#include <numeric>
#include <utility>

#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<int64_t> cyclic_orders) : orders_(std::move(cyclic_orders)) {
    int64_t n = 1;
    for (size_t i = 0; i < orders_.size(); ++i) {
        if (orders_[i] < 2) throw PreconditionError("cyclic orders must be > 1");
        if (i > 0 && orders_[i] % orders_[i - 1] != 0)
            throw PreconditionError("cyclic orders must divide successively");
        n *= orders_[i];
        if (n > (1 << 24)) throw PreconditionError("group too large");
    }
    size_ = static_cast<int>(n);
    stride_.assign(orders_.size(), 1);
    for (size_t i = orders_.size(); i-- > 1;) stride_[i - 1] = stride_[i] * orders_[i];
}

std::vector<int64_t> FiniteAbelianGroup::exponents(Element a) const {
    std::vector<int64_t> e(orders_.size());
    for (size_t i = 0; i < orders_.size(); ++i) e[i] = (a / stride_[i]) % orders_[i];
    return e;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::from_exponents(const std::vector<int64_t>& e) const {
    if (e.size() != orders_.size()) throw PreconditionError("exponent vector has wrong length");
    int64_t idx = 0;
    for (size_t i = 0; i < orders_.size(); ++i) idx += nt::mod(e[i], orders_[i]) * stride_[i];
    return static_cast<Element>(idx);
}

FiniteAbelianGroup::Element FiniteAbelianGroup::mul(Element a, Element b) const {
    int64_t idx = 0;
    for (size_t i = 0; i < orders_.size(); ++i) {
        int64_t ea = (a / stride_[i]) % orders_[i];
        int64_t eb = (b / stride_[i]) % orders_[i];
        idx += ((ea + eb) % orders_[i]) * stride_[i];
    }
    return static_cast<Element>(idx);
}

FiniteAbelianGroup::Element FiniteAbelianGroup::inv(Element a) const {
    int64_t idx = 0;
    for (size_t i = 0; i < orders_.size(); ++i) {
        int64_t ea = (a / stride_[i]) % orders_[i];
        idx += ((orders_[i] - ea) % orders_[i]) * stride_[i];
    }
    return static_cast<Element>(idx);
}

FiniteAbelianGroup::Element FiniteAbelianGroup::pow(Element a, int64_t e) const {
    int64_t idx = 0;
    for (size_t i = 0; i < orders_.size(); ++i) {
        int64_t ea = (a / stride_[i]) % orders_[i];
        idx += nt::mod(static_cast<int64_t>(static_cast<__int128>(ea) * e % orders_[i]), orders_[i]) * stride_[i];
    }
    return static_cast<Element>(idx);
}

int64_t FiniteAbelianGroup::order_of(Element a) const {
    int64_t o = 1;
    for (size_t i = 0; i < orders_.size(); ++i) {
        int64_t ea = (a / stride_[i]) % orders_[i];
        o = std::lcm(o, orders_[i] / std::gcd(orders_[i], ea));
    }
    return o;
}

FiniteAbelianGroup::Element FiniteAbelianGroup::generator(int i) const {
    if (i < 0 || i >= rank()) throw PreconditionError("generator index out of range");
    return static_cast<Element>(stride_[static_cast<size_t>(i)]);
}

namespace {

using Mat = std::vector<std::vector<int64_t>>;

Mat identity_matrix(size_t n) {
    Mat m(n, std::vector<int64_t>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Column operation col_j += k * col_i applied to A and V, with the inverse row operation on V^{-1}.
void add_column(Mat& a, Mat& v, Mat& vinv, size_t i, size_t j, int64_t k) {
    for (auto& row : a) row[j] += k * row[i];
    for (auto& row : v) row[j] += k * row[i];
    for (size_t c = 0; c < vinv[i].size(); ++c) vinv[i][c] -= k * vinv[j][c];
}

void swap_columns(Mat& a, Mat& v, Mat& vinv, size_t i, size_t j) {
    for (auto& row : a) std::swap(row[i], row[j]);
    for (auto& row : v) std::swap(row[i], row[j]);
    std::swap(vinv[i], vinv[j]);
}

void add_row(Mat& a, size_t i, size_t j, int64_t k) {
    for (size_t c = 0; c < a[j].size(); ++c) a[j][c] += k * a[i][c];
}

}  // namespace

SmithForm smith_normal_form(const Mat& input) {
    Mat a = input;
    const size_t rows = a.size();
    const size_t cols = rows ? a[0].size() : 0;
    Mat v = identity_matrix(cols), vinv = identity_matrix(cols);

    for (size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // smallest nonzero entry in the trailing block becomes the pivot
            size_t pr = rows, pc = cols;
            for (size_t r = t; r < rows; ++r)
                for (size_t c = t; c < cols; ++c)
                    if (a[r][c] != 0 && (pr == rows || std::llabs(a[r][c]) < std::llabs(a[pr][pc]))) {
                        pr = r;
                        pc = c;
                    }
            if (pr == rows) break;
            std::swap(a[t], a[pr]);
            swap_columns(a, v, vinv, t, pc);
            bool clean = true;
            for (size_t r = t + 1; r < rows; ++r) {
                int64_t q = a[r][t] / a[t][t];
                if (q) add_row(a, t, r, -q);
                if (a[r][t] != 0) clean = false;
            }
            for (size_t c = t + 1; c < cols; ++c) {
                int64_t q = a[t][c] / a[t][t];
                if (q) add_column(a, v, vinv, t, c, -q);
                if (a[t][c] != 0) clean = false;
            }
            if (!clean) continue;
            // divisibility condition d_t | every remaining entry
            bool divides = true;
            for (size_t r = t + 1; r < rows && divides; ++r)
                for (size_t c = t + 1; c < cols; ++c)
                    if (a[r][c] % a[t][t] != 0) {
                        add_row(a, r, t, 1);
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        if (a[t][t] < 0) {
            for (auto& x : a[t]) x = -x;
        }
    }
    return SmithForm{std::move(a), std::move(v), std::move(vinv)};
}

}  // namespace iwk
