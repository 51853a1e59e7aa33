#include "iwasawa/ideal.hpp"

#include <set>

#include "iwasawa/errors.hpp"

namespace iwk {

Ideal::Ideal(AlgebraPtr algebra, std::vector<Vec> generators) : algebra_(std::move(algebra)) {
    const size_t d = static_cast<size_t>(algebra_->dim());
    Matrix rows;
    for (auto& g : generators) {
        if (g.size() != d) throw PreconditionError("ideal generator of wrong dimension");
        for (auto& x : g) x = algebra_->ring().reduce(x);
        if (algebra_->is_zero(g)) continue;
        for (auto& r : algebra_->mult_matrix(g)) rows.push_back(std::move(r));
        gens_.push_back(std::move(g));
    }
    howell_ = howell_form(rows, algebra_->ring(), d);
}

int64_t Ideal::log_size() const { return howell_log_size(howell_, algebra_->ring()); }

bool Ideal::contains(const Vec& x) const {
    if (static_cast<int>(x.size()) != algebra_->dim()) throw PreconditionError("element of wrong dimension");
    return howell_contains(howell_, x, algebra_->ring());
}

void Ideal::check_same(const Ideal& other) const {
    if (algebra_ != other.algebra_) throw PreconditionError("ideals of different algebras");
}

bool Ideal::is_subset_of(const Ideal& other) const {
    check_same(other);
    for (const auto& row : howell_)
        if (!other.contains(row)) return false;
    return true;
}

Ideal Ideal::operator*(const Ideal& other) const {
    check_same(other);
    // the Howell rows of one factor span it over Z/p^N, so products with the other's generators suffice
    const auto& small = howell_.size() <= other.howell_.size() ? *this : other;
    const auto& big = &small == this ? other : *this;
    std::vector<Vec> gens;
    for (const auto& a : small.howell_)
        for (const auto& b : big.gens_) gens.push_back(algebra_->mul(a, b));
    return Ideal(algebra_, std::move(gens));
}

Ideal Ideal::operator+(const Ideal& other) const {
    check_same(other);
    std::vector<Vec> gens = gens_;
    gens.insert(gens.end(), other.gens_.begin(), other.gens_.end());
    return Ideal(algebra_, std::move(gens));
}

Ideal Ideal::sharp() const {
    std::vector<Vec> gens;
    for (const auto& g : gens_) gens.push_back(algebra_->sharp(g));
    return Ideal(algebra_, std::move(gens));
}

Ideal Ideal::image(const AlgebraHom& hom) const {
    if (hom.source() != algebra_) throw PreconditionError("homomorphism source does not match the ideal's algebra");
    std::vector<Vec> gens;
    for (const auto& g : gens_) gens.push_back(hom(g));
    return Ideal(hom.target(), std::move(gens));
}

bool operator==(const Ideal& a, const Ideal& b) {
    a.check_same(b);
    return a.howell_ == b.howell_;
}

bool ideal_equal_bruteforce(const Ideal& a, const Ideal& b, size_t limit) {
    const auto& A = *a.algebra();
    const size_t d = static_cast<size_t>(A.dim());
    // every ring element, then every multiple of every generator, then additive closure
    auto closure = [&](const Ideal& I) {
        Matrix rows;
        for (const auto& g : I.generators())
            for (int i = 0; i < A.dim(); ++i) rows.push_back(A.mul(A.basis(i), g));
        auto span = enumerate_span(rows, A.ring(), d, limit);
        return std::set<Vec>(span.begin(), span.end());
    };
    return closure(a) == closure(b);
}

}  // namespace iwk
