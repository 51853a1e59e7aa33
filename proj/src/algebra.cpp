#include "iwasawa/algebra.hpp"

#include <map>
#include <sstream>

#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk {

FiniteCommAlgebra::FiniteCommAlgebra(Zq ring, std::vector<std::string> labels,
                                     std::vector<std::vector<std::vector<Term>>> mult, Vec unit,
                                     std::optional<std::vector<Term>> sharp, std::string name)
    : ring_(ring),
      labels_(std::move(labels)),
      mult_(std::move(mult)),
      unit_(std::move(unit)),
      sharp_(std::move(sharp)),
      name_(std::move(name)) {
    const size_t d = labels_.size();
    if (d == 0) throw PreconditionError("algebra of rank 0");
    if (mult_.size() != d || unit_.size() != d) throw SchemaError("algebra: structure constants have wrong shape");
    for (const auto& row : mult_) {
        if (row.size() != d) throw SchemaError("algebra: structure constants have wrong shape");
        for (const auto& terms : row)
            for (const auto& [k, c] : terms)
                if (k < 0 || static_cast<size_t>(k) >= d) throw SchemaError("algebra: basis index out of range");
    }
    for (auto& x : unit_) x = ring_.reduce(x);
    if (sharp_ && sharp_->size() != d) throw SchemaError("algebra: involution has wrong length");
}

Vec FiniteCommAlgebra::basis(int i) const {
    Vec v = zero();
    v[static_cast<size_t>(i)] = 1 % ring_.q;
    return v;
}

Vec FiniteCommAlgebra::scalar(int64_t c) const { return scale(unit_, c); }

Vec FiniteCommAlgebra::add(const Vec& a, const Vec& b) const {
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = ring_.add(a[i], b[i]);
    return out;
}

Vec FiniteCommAlgebra::sub(const Vec& a, const Vec& b) const {
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = ring_.sub(a[i], b[i]);
    return out;
}

Vec FiniteCommAlgebra::neg(const Vec& a) const { return sub(zero(), a); }

Vec FiniteCommAlgebra::scale(const Vec& a, int64_t c) const {
    Vec out(a.size());
    for (size_t i = 0; i < a.size(); ++i) out[i] = ring_.mul(a[i], c);
    return out;
}

Vec FiniteCommAlgebra::mul(const Vec& a, const Vec& b) const {
    if (static_cast<int>(a.size()) != dim() || static_cast<int>(b.size()) != dim())
        throw PreconditionError("algebra element of wrong dimension");
    Vec out = zero();
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) {
            if (b[j] == 0) continue;
            const int64_t ab = ring_.mul(a[i], b[j]);
            for (const auto& [k, c] : mult_[i][j]) out[static_cast<size_t>(k)] = ring_.add(out[static_cast<size_t>(k)], ring_.mul(ab, c));
        }
    }
    return out;
}

Vec FiniteCommAlgebra::sharp(const Vec& a) const {
    if (!sharp_) throw PreconditionError("algebra " + name_ + " has no involution");
    Vec out = zero();
    for (size_t i = 0; i < a.size(); ++i) {
        const auto& [k, s] = (*sharp_)[i];
        out[static_cast<size_t>(k)] = ring_.add(out[static_cast<size_t>(k)], ring_.mul(a[i], s));
    }
    return out;
}

bool FiniteCommAlgebra::is_zero(const Vec& a) const {
    for (auto x : a)
        if (ring_.reduce(x) != 0) return false;
    return true;
}

Matrix FiniteCommAlgebra::mult_matrix(const Vec& a) const {
    Matrix out;
    out.reserve(static_cast<size_t>(dim()));
    for (int i = 0; i < dim(); ++i) out.push_back(mul(basis(i), a));
    return out;
}

std::string FiniteCommAlgebra::validate() const {
    const int d = dim();
    for (int i = 0; i < d; ++i) {
        if (mul(unit_, basis(i)) != basis(i)) return "unit law fails at " + labels_[static_cast<size_t>(i)];
        for (int j = 0; j < d; ++j) {
            if (mul(basis(i), basis(j)) != mul(basis(j), basis(i)))
                return "not commutative at (" + labels_[static_cast<size_t>(i)] + ", " + labels_[static_cast<size_t>(j)] + ")";
        }
    }
    // associativity on all triples when small, otherwise on a deterministic sample
    const int64_t total = static_cast<int64_t>(d) * d * d;
    const int64_t step = total <= 20000 ? 1 : total / 20000 + 1;
    for (int64_t t = 0; t < total; t += step) {
        const int i = static_cast<int>(t / (d * d)), j = static_cast<int>((t / d) % d), k = static_cast<int>(t % d);
        if (mul(mul(basis(i), basis(j)), basis(k)) != mul(basis(i), mul(basis(j), basis(k))))
            return "not associative at basis triple (" + std::to_string(i) + "," + std::to_string(j) + "," +
                   std::to_string(k) + ")";
    }
    if (sharp_) {
        if (sharp(unit_) != unit_) return "involution does not fix 1";
        for (int i = 0; i < d; ++i) {
            if (sharp(sharp(basis(i))) != basis(i)) return "involution is not involutive";
            for (int j = 0; j < d; ++j)
                if (sharp(mul(basis(i), basis(j))) != mul(sharp(basis(i)), sharp(basis(j))))
                    return "involution is not multiplicative";
        }
    }
    return "";
}

std::string FiniteCommAlgebra::format(const Vec& a) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        os << a[i];
        if (labels_[i] != "1") os << "*" << labels_[i];
    }
    if (first) os << "0";
    return os.str();
}

namespace {

std::string element_label(const FiniteAbelianGroup& G, FiniteAbelianGroup::Element g) {
    if (g == 0) return "1";
    std::string s = "g";
    for (auto e : G.exponents(g)) s += "_" + std::to_string(e);
    return s;
}

}  // namespace

AlgebraPtr group_algebra(const GroupPtr& group, int64_t p, int N) {
    const int n = group->size();
    std::vector<std::string> labels;
    for (int g = 0; g < n; ++g) labels.push_back(element_label(*group, g));
    std::vector<std::vector<std::vector<FiniteCommAlgebra::Term>>> mult(
        static_cast<size_t>(n), std::vector<std::vector<FiniteCommAlgebra::Term>>(static_cast<size_t>(n)));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h) mult[static_cast<size_t>(g)][static_cast<size_t>(h)] = {{group->mul(g, h), 1}};
    Vec unit(static_cast<size_t>(n), 0);
    unit[0] = 1;
    std::vector<FiniteCommAlgebra::Term> sharp;
    for (int g = 0; g < n; ++g) sharp.emplace_back(group->inv(g), 1);
    std::string name = "(Z/" + std::to_string(nt::ipow(p, N)) + ")[G]";
    return std::make_shared<const FiniteCommAlgebra>(Zq(p, N), labels, std::move(mult), std::move(unit), sharp, name);
}

AlgebraPtr truncated_poly_algebra(const GroupPtr& group, int64_t p, int N, int M) {
    if (M < 1) throw PreconditionError("truncation degree must be positive");
    const int n = group->size();
    const int d = n * M;
    std::vector<std::string> labels;
    for (int k = 0; k < M; ++k)
        for (int g = 0; g < n; ++g) {
            std::string a = element_label(*group, g);
            std::string t = k == 0 ? "" : (k == 1 ? "T" : "T^" + std::to_string(k));
            labels.push_back(k == 0 ? a : (a == "1" ? t : a + "*" + t));
        }
    std::vector<std::vector<std::vector<FiniteCommAlgebra::Term>>> mult(
        static_cast<size_t>(d), std::vector<std::vector<FiniteCommAlgebra::Term>>(static_cast<size_t>(d)));
    for (int x = 0; x < d; ++x)
        for (int y = 0; y < d; ++y) {
            const int k = x / n + y / n;
            if (k >= M) continue;
            mult[static_cast<size_t>(x)][static_cast<size_t>(y)] = {{k * n + group->mul(x % n, y % n), 1}};
        }
    Vec unit(static_cast<size_t>(d), 0);
    unit[0] = 1;
    std::vector<FiniteCommAlgebra::Term> sharp;
    for (int x = 0; x < d; ++x) sharp.emplace_back((x / n) * n + group->inv(x % n), 1);
    std::string name = "(Z/" + std::to_string(nt::ipow(p, N)) + ")[A][T]/(T^" + std::to_string(M) + ")";
    return std::make_shared<const FiniteCommAlgebra>(Zq(p, N), labels, std::move(mult), std::move(unit), sharp, name);
}

std::pair<int, int64_t> minus_basis_of(const GroupPtr& group, FiniteAbelianGroup::Element j,
                                       FiniteAbelianGroup::Element g) {
    // basis index = rank of min(g, gj) among coset minima
    const auto gj = group->mul(g, j);
    const auto rep = std::min(g, gj);
    int idx = 0;
    for (int h = 0; h < rep; ++h)
        if (h < group->mul(h, j)) ++idx;
    return {idx, g == rep ? 1 : -1};
}

AlgebraPtr minus_quotient_algebra(const GroupPtr& group, FiniteAbelianGroup::Element j, int64_t p, int N) {
    if (j == 0 || group->mul(j, j) != 0) throw PreconditionError("minus quotient needs an element of order 2");
    const Zq R(p, N);
    std::vector<int> reps;
    for (int g = 0; g < group->size(); ++g)
        if (g < group->mul(g, j)) reps.push_back(g);
    const size_t d = reps.size();
    std::vector<std::string> labels;
    for (int g : reps) labels.push_back(element_label(*group, g));
    std::vector<std::vector<std::vector<FiniteCommAlgebra::Term>>> mult(d, std::vector<std::vector<FiniteCommAlgebra::Term>>(d));
    auto term = [&](int g) {
        auto [i, s] = minus_basis_of(group, j, g);
        return FiniteCommAlgebra::Term{i, R.reduce(s)};
    };
    for (size_t a = 0; a < d; ++a)
        for (size_t b = 0; b < d; ++b) mult[a][b] = {term(group->mul(reps[a], reps[b]))};
    Vec unit(d, 0);
    unit[0] = 1;
    std::vector<FiniteCommAlgebra::Term> sharp;
    for (int g : reps) sharp.push_back(term(group->inv(g)));
    std::string name = "(Z/" + std::to_string(R.q) + ")[G]/(1+j)";
    return std::make_shared<const FiniteCommAlgebra>(R, labels, std::move(mult), std::move(unit), sharp, name);
}

AlgebraPtr split_algebra(int k, int64_t p, int N, std::optional<std::vector<int>> involution) {
    const Zq R(p, N);
    std::vector<std::string> labels;
    for (int i = 0; i < k; ++i) labels.push_back("e" + std::to_string(i));
    std::vector<std::vector<std::vector<FiniteCommAlgebra::Term>>> mult(
        static_cast<size_t>(k), std::vector<std::vector<FiniteCommAlgebra::Term>>(static_cast<size_t>(k)));
    for (int i = 0; i < k; ++i) mult[static_cast<size_t>(i)][static_cast<size_t>(i)] = {{i, 1}};
    Vec unit(static_cast<size_t>(k), 1);
    std::optional<std::vector<FiniteCommAlgebra::Term>> sharp;
    if (involution) {
        sharp.emplace();
        for (int i = 0; i < k; ++i) sharp->emplace_back((*involution)[static_cast<size_t>(i)], 1);
    }
    return std::make_shared<const FiniteCommAlgebra>(R, labels, std::move(mult), std::move(unit), sharp,
                                                     "(Z/" + std::to_string(R.q) + ")^" + std::to_string(k));
}

AlgebraHom::AlgebraHom(AlgebraPtr source, AlgebraPtr target, Matrix images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (source_->ring().p != target_->ring().p || source_->ring().N < target_->ring().N)
        throw PreconditionError("homomorphism target modulus must divide the source modulus");
    if (static_cast<int>(images_.size()) != source_->dim()) throw PreconditionError("homomorphism: wrong number of images");
    for (auto& row : images_) {
        if (static_cast<int>(row.size()) != target_->dim()) throw PreconditionError("homomorphism: image of wrong dimension");
        for (auto& x : row) x = target_->ring().reduce(x);
    }
}

Vec AlgebraHom::operator()(const Vec& x) const {
    const Zq& R = target_->ring();
    Vec y(x.size());
    for (size_t i = 0; i < x.size(); ++i) y[i] = R.reduce(x[i]);
    return vec_mat(y, images_, R, static_cast<size_t>(target_->dim()));
}

std::string AlgebraHom::validate() const {
    if ((*this)(source_->one()) != target_->one()) return "homomorphism does not preserve 1";
    for (int i = 0; i < source_->dim(); ++i)
        for (int j = 0; j < source_->dim(); ++j) {
            auto lhs = (*this)(source_->mul(source_->basis(i), source_->basis(j)));
            auto rhs = target_->mul(images_[static_cast<size_t>(i)], images_[static_cast<size_t>(j)]);
            if (lhs != rhs)
                return "homomorphism is not multiplicative at (" + source_->labels()[static_cast<size_t>(i)] + ", " +
                       source_->labels()[static_cast<size_t>(j)] + ")";
        }
    return "";
}

AlgebraHom identity_hom(const AlgebraPtr& a) { return AlgebraHom(a, a, identity_matrix(static_cast<size_t>(a->dim()))); }

AlgebraHom group_pushforward(const AlgebraPtr& source, const AlgebraPtr& target, const std::vector<int>& element_map) {
    Matrix images;
    for (int g = 0; g < source->dim(); ++g) images.push_back(target->basis(element_map[static_cast<size_t>(g)]));
    return AlgebraHom(source, target, std::move(images));
}

AlgebraHom minus_projection(const AlgebraPtr& group_alg, const AlgebraPtr& minus_alg, const GroupPtr& group,
                            FiniteAbelianGroup::Element j) {
    Matrix images;
    for (int g = 0; g < group->size(); ++g) {
        auto [i, s] = minus_basis_of(group, j, g);
        images.push_back(minus_alg->scale(minus_alg->basis(i), s));
    }
    return AlgebraHom(group_alg, minus_alg, std::move(images));
}

AlgebraHom reduction_hom(const AlgebraPtr& source, const AlgebraPtr& target) {
    if (source->dim() != target->dim()) throw PreconditionError("reduction between algebras of different rank");
    return AlgebraHom(source, target, identity_matrix(static_cast<size_t>(source->dim())));
}

}  // namespace iwk
