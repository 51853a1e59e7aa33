#include "iwasawa/abelian_field.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk {

namespace {

std::vector<int64_t> units_mod(int64_t m) {
    std::vector<int64_t> out;
    for (int64_t a = 0; a < m; ++a)
        if (nt::gcd(a, m) == 1) out.push_back(a);
    return out;
}

}  // namespace

AbelianFieldSpec AbelianFieldSpec::make(int64_t modulus, std::vector<int64_t> fixing, std::string label) {
    if (modulus < 1) throw PreconditionError("modulus must be positive");
    if (modulus > 100000) throw PreconditionError("modulus too large for this toolkit");
    std::set<int64_t> h;
    for (int64_t a : fixing) {
        int64_t r = nt::mod(a, modulus);
        if (nt::gcd(r, modulus) != 1)
            throw PreconditionError("fixing residue " + std::to_string(a) + " is not a unit mod " +
                                    std::to_string(modulus));
        h.insert(r);
    }
    if (!h.contains(nt::mod(1, modulus))) throw PreconditionError("fixing subgroup must contain 1");
    for (int64_t a : h)
        for (int64_t b : h)
            if (!h.contains(nt::mulmod(a, b, modulus)))
                throw PreconditionError("fixing subgroup is not closed under multiplication");
    AbelianFieldSpec spec;
    spec.modulus = modulus;
    spec.fixing.assign(h.begin(), h.end());
    spec.label = std::move(label);
    return spec;
}

AbelianFieldSpec AbelianFieldSpec::cyclotomic(int64_t m) {
    return make(m, {1}, m == 1 ? "Q" : "Q(zeta_" + std::to_string(m) + ")");
}

bool AbelianFieldSpec::contains_residue(int64_t a) const {
    return std::binary_search(fixing.begin(), fixing.end(), nt::mod(a, modulus));
}

int64_t AbelianFieldSpec::degree() const { return nt::euler_phi(modulus) / static_cast<int64_t>(fixing.size()); }

AbelianFieldSpec conductor_reduce(const AbelianFieldSpec& spec) {
    const int64_t m = spec.modulus;
    const auto units = units_mod(m);
    for (int64_t f : nt::divisors(m)) {
        bool ok = true;
        for (int64_t a : units)
            if (nt::mod(a, f) == nt::mod(1, f) && !spec.contains_residue(a)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::vector<int64_t> reduced;
        for (int64_t a : spec.fixing) reduced.push_back(nt::mod(a, f));
        return AbelianFieldSpec::make(f, reduced, spec.label);
    }
    return spec;  // unreachable: f = m always qualifies
}

std::vector<Place> parse_places(const std::string& text) {
    std::vector<Place> out;
    std::string token;
    std::stringstream ss(text);
    while (std::getline(ss, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(), [](unsigned char c) { return std::isspace(c); }),
                    token.end());
        if (token.empty()) continue;
        std::string lower = token;
        std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
        if (lower == "inf" || lower == "infinity" || lower == "oo" || token == "∞") {
            out.push_back(Place{0});
            continue;
        }
        int64_t v = 0;
        try {
            size_t pos = 0;
            v = std::stoll(token, &pos);
            if (pos != token.size()) throw std::invalid_argument(token);
        } catch (const std::exception&) {
            throw PreconditionError("malformed place: '" + token + "'");
        }
        if (!nt::is_prime(v)) throw PreconditionError("place " + token + " is not a prime");
        out.push_back(Place{v});
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string format_places(const std::vector<Place>& places) {
    std::string out;
    for (const auto& v : places) {
        if (!out.empty()) out += ",";
        out += v.is_infinite() ? "inf" : std::to_string(v.prime);
    }
    return out;
}

GaloisGroup::GaloisGroup(const AbelianFieldSpec& spec) : spec_(spec) {
    const int64_t m = spec.modulus;
    const AbelianFieldSpec reduced = conductor_reduce(spec);
    conductor_ = reduced.modulus;
    for (auto [q, e] : nt::factor(conductor_)) ramified_.push_back(q);

    // cosets of the fixing subgroup, keyed by least residue
    std::vector<int64_t> canon(static_cast<size_t>(m), -1);
    const auto units = units_mod(m);
    for (int64_t a : units) {
        if (canon[static_cast<size_t>(a)] != -1) continue;
        int64_t rep = m;
        for (int64_t h : spec.fixing) rep = std::min(rep, nt::mulmod(a, h, m));
        for (int64_t h : spec.fixing) canon[static_cast<size_t>(nt::mulmod(a, h, m))] = rep;
    }
    std::vector<int64_t> cosets;
    for (int64_t a : units)
        if (canon[static_cast<size_t>(a)] == a) cosets.push_back(a);
    const int64_t n = static_cast<int64_t>(cosets.size());
    auto cmul = [&](int64_t a, int64_t b) { return canon[static_cast<size_t>(nt::mulmod(a, b, m))]; };
    auto cpow = [&](int64_t a, int64_t e) {
        int64_t r = canon[static_cast<size_t>(nt::mod(1, m))];
        for (int64_t i = 0; i < e; ++i) r = cmul(r, a);
        return r;
    };
    auto corder = [&](int64_t a) {
        int64_t o = 1;
        for (int64_t x = a; x != canon[static_cast<size_t>(nt::mod(1, m))]; x = cmul(x, a)) ++o;
        return o;
    };

    // greedy generating set; expo maps each coset of the current subgroup to exponents over gens
    const int64_t one = canon[static_cast<size_t>(nt::mod(1, m))];
    std::vector<int64_t> gens;
    std::map<int64_t, std::vector<int64_t>> expo{{one, {}}};
    std::vector<std::vector<int64_t>> relations;
    while (static_cast<int64_t>(expo.size()) < n) {
        int64_t best = -1, best_order = 0;
        for (int64_t c : cosets)
            if (!expo.contains(c)) {
                int64_t o = corder(c);
                if (o > best_order) {
                    best = c;
                    best_order = o;
                }
            }
        // smallest e with best^e in the current subgroup
        int64_t e = 1;
        int64_t x = best;
        while (!expo.contains(x)) {
            x = cmul(x, best);
            ++e;
        }
        const size_t k = gens.size();
        std::vector<int64_t> rel(k + 1, 0);
        for (size_t j = 0; j < k; ++j) rel[j] = -expo[x][j];
        rel[k] = e;
        for (auto& r : relations) r.push_back(0);
        relations.push_back(rel);
        gens.push_back(best);
        std::map<int64_t, std::vector<int64_t>> next;
        for (const auto& [c, ex] : expo) {
            int64_t y = c;
            for (int64_t i = 0; i < e; ++i) {
                auto v = ex;
                v.resize(k + 1, 0);
                v[k] = i;
                next.emplace(y, v);
                y = cmul(y, best);
            }
        }
        expo = std::move(next);
    }

    std::vector<int64_t> orders;
    std::vector<int64_t> new_gens;
    if (!gens.empty()) {
        SmithForm snf = smith_normal_form(relations);
        for (size_t t = 0; t < gens.size(); ++t) {
            int64_t d = std::llabs(snf.d[t][t]);
            if (d <= 1) continue;
            int64_t h = one;
            for (size_t j = 0; j < gens.size(); ++j) {
                int64_t ord = corder(gens[j]);
                h = cmul(h, cpow(gens[j], nt::mod(snf.v_inv[t][j], ord)));
            }
            orders.push_back(d);
            new_gens.push_back(h);
        }
    }
    group_ = std::make_shared<const FiniteAbelianGroup>(orders);
    if (group_->size() != n) throw std::logic_error("invariant-factor decomposition lost elements");

    reps_.assign(static_cast<size_t>(n), -1);
    for (int idx = 0; idx < group_->size(); ++idx) {
        auto ex = group_->exponents(idx);
        int64_t c = one;
        for (size_t t = 0; t < ex.size(); ++t) c = cmul(c, cpow(new_gens[t], ex[t]));
        if (reps_[static_cast<size_t>(idx)] != -1 || std::count(reps_.begin(), reps_.end(), c))
            throw std::logic_error("invariant-factor generators are not independent");
        reps_[static_cast<size_t>(idx)] = c;
    }
    std::map<int64_t, int> rep_index;
    for (int idx = 0; idx < group_->size(); ++idx) rep_index[reps_[static_cast<size_t>(idx)]] = idx;
    residue_to_element_.assign(static_cast<size_t>(m), -1);
    for (int64_t a : units) residue_to_element_[static_cast<size_t>(a)] = rep_index.at(canon[static_cast<size_t>(a)]);
    // report the least positive residue (1 rather than 0 when m = 1)
    if (m == 1) reps_[0] = 1;
}

FiniteAbelianGroup::Element GaloisGroup::element_of(int64_t residue) const {
    const int64_t m = spec_.modulus;
    int64_t r = nt::mod(residue, m);
    int e = residue_to_element_[static_cast<size_t>(r)];
    if (e < 0) throw PreconditionError(std::to_string(residue) + " is not a unit mod " + std::to_string(m));
    return e;
}

FiniteAbelianGroup::Element GaloisGroup::element_of_unramified(int64_t a) const {
    if (nt::gcd(nt::mod(a, conductor_), conductor_) != 1)
        throw PreconditionError(std::to_string(a) + " is not coprime to the conductor " + std::to_string(conductor_));
    const int64_t m = spec_.modulus;
    int64_t b = nt::mod(a, conductor_);
    for (int64_t k = 0; k <= m; ++k) {
        int64_t c = b + k * conductor_;
        if (nt::gcd(c, m) == 1) return element_of(c);
    }
    throw std::logic_error("no unit lift found");
}

FiniteAbelianGroup::Element GaloisGroup::frobenius(int64_t ell) const {
    if (!nt::is_prime(ell)) throw PreconditionError("frobenius: " + std::to_string(ell) + " is not prime");
    if (conductor_ % ell == 0)
        throw PreconditionError("frobenius: " + std::to_string(ell) + " ramifies in " + spec_.label);
    return element_of_unramified(ell);
}

std::vector<int64_t> GaloisGroup::generator_residues() const {
    std::vector<int64_t> out;
    for (int i = 0; i < group_->rank(); ++i) out.push_back(representative(group_->generator(i)));
    return out;
}

std::optional<CMStructure> cm_data(const GaloisGroup& gal) {
    const auto& spec = gal.spec();
    if (spec.contains_residue(-1)) return std::nullopt;
    const auto& G = gal.group();
    const auto j = gal.element_of(-1);
    auto one = GroupRingElement<Rational>::basis(G, Rational(0), G->identity(), Rational(1, 2));
    auto half_j = GroupRingElement<Rational>::basis(G, Rational(0), j, Rational(1, 2));
    return CMStructure{j, one + half_j, one - half_j};
}

std::optional<CMStructure> cm_data(const AbelianFieldSpec& spec) { return cm_data(GaloisGroup(spec)); }

int64_t roots_of_unity_order(const AbelianFieldSpec& spec) {
    const int64_t big = nt::lcm(2, spec.modulus);
    std::vector<int64_t> lifted;
    for (int64_t a : units_mod(big))
        if (spec.contains_residue(a)) lifted.push_back(a);
    int64_t w = 1;
    for (int64_t k : nt::divisors(big)) {
        bool ok = std::all_of(lifted.begin(), lifted.end(), [&](int64_t a) { return nt::mod(a - 1, k) == 0; });
        if (ok) w = std::max(w, k);
    }
    return w;
}

AbelianFieldSpec layer(const AbelianFieldSpec& spec, int64_t p, int n) {
    if (p < 3 || !nt::is_prime(p)) throw PreconditionError("layer: p must be an odd prime");
    if (n < 0) throw PreconditionError("layer: n must be non-negative");
    const int v = nt::valuation(spec.modulus, p);
    if (v >= 2)
        throw PreconditionError("layer: p^2 divides the modulus, so L meets the cyclotomic Z_p-extension");
    const int64_t prime_to_p = spec.modulus / nt::ipow(p, v);
    const int64_t pn1 = nt::ipow(p, n + 1);
    const int64_t big = prime_to_p * pn1;
    std::vector<int64_t> fixing;
    for (int64_t a : units_mod(big))
        if (spec.contains_residue(nt::mod(a, spec.modulus)) && nt::powmod(a, p - 1, pn1) == 1) fixing.push_back(a);
    std::string label = (spec.label.empty() ? "L" : spec.label) + "_" + std::to_string(n) + "[p=" + std::to_string(p) + "]";
    return AbelianFieldSpec::make(big, fixing, label);
}

namespace {

HypVerdict hyp_common(const GaloisGroup& gal, const std::vector<Place>& S, const std::vector<Place>& T) {
    if (!std::any_of(S.begin(), S.end(), [](const Place& v) { return v.is_infinite(); }))
        return {false, "S does not contain the infinite place"};
    for (int64_t q : gal.ramified_primes())
        if (!std::any_of(S.begin(), S.end(), [&](const Place& v) { return v.prime == q; }))
            return {false, "S misses the ramified prime " + std::to_string(q)};
    for (const auto& v : T) {
        if (v.is_infinite()) throw PreconditionError("T must consist of finite primes");
        if (std::find(S.begin(), S.end(), v) != S.end())
            return {false, "S and T share the prime " + std::to_string(v.prime)};
    }
    return {true, ""};
}

HypVerdict torsion_condition(const std::vector<Place>& T, int64_t ell) {
    for (const auto& v : T)
        if (v.prime != ell) return {true, ""};
    return {false, "no prime of T has residue characteristic different from " + std::to_string(ell) +
                       ", so a root of unity of order " + std::to_string(ell) + " lies in E_L^T"};
}

}  // namespace

HypVerdict check_hyp(const AbelianFieldSpec& spec, const std::vector<Place>& S, const std::vector<Place>& T) {
    GaloisGroup gal(spec);
    auto base = hyp_common(gal, S, T);
    if (!base.holds) return base;
    const int64_t w = roots_of_unity_order(spec);
    for (auto [ell, e] : nt::factor(w)) {
        auto t = torsion_condition(T, ell);
        if (!t.holds) return t;
    }
    return {true, "S contains S_ram and S_inf, S and T are disjoint, E_L^T is torsion-free (w_L = " +
                      std::to_string(w) + ")"};
}

HypVerdict check_hyp_at_p(const AbelianFieldSpec& spec, const std::vector<Place>& S, const std::vector<Place>& T,
                          int64_t p) {
    GaloisGroup gal(spec);
    auto base = hyp_common(gal, S, T);
    if (!base.holds) return base;
    if (roots_of_unity_order(spec) % p == 0) {
        auto t = torsion_condition(T, p);
        if (!t.holds) return t;
    }
    return {true, "p-part of Hyp(S,T) holds"};
}

}  // namespace iwk
