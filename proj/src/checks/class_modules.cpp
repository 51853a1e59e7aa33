#include <algorithm>
#include <chrono>
#include <filesystem>
#include <map>
#include <random>
#include <set>

#include "iwasawa/checks.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"
#include "iwasawa/padic.hpp"
#include "iwasawa/serialize.hpp"

namespace iwk::checks {

namespace {

using Clock = std::chrono::steady_clock;
using Elem = std::vector<int64_t>;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// The module as a subgroup of prod Z/o_i, with the group acting through its generators.
struct Explicit {
    const ClassModuleData& m;
    const FiniteAbelianGroup& G;

    Elem gen(size_t i, const Elem& x) const {
        Elem y(x.size(), 0);
        for (size_t r = 0; r < x.size(); ++r) {
            int64_t s = 0;
            for (size_t c = 0; c < x.size(); ++c) s = nt::mod(s + nt::mulmod(nt::mod(m.action[i][r][c], m.orders[r]), x[c], m.orders[r]), m.orders[r]);
            y[r] = s;
        }
        return y;
    }
    Elem act(FiniteAbelianGroup::Element g, Elem x) const {
        const auto e = G.exponents(g);
        for (size_t i = 0; i < e.size(); ++i)
            for (int64_t k = 0; k < e[i]; ++k) x = gen(i, x);
        return x;
    }
    Elem add(const Elem& a, const Elem& b) const {
        Elem y(a.size());
        for (size_t r = 0; r < a.size(); ++r) y[r] = (a[r] + b[r]) % m.orders[r];
        return y;
    }
    Elem scale(const Elem& a, int64_t t) const {
        Elem y(a.size());
        for (size_t r = 0; r < a.size(); ++r) y[r] = nt::mulmod(a[r], nt::mod(t, m.orders[r]), m.orders[r]);
        return y;
    }
    bool is_zero(const Elem& a) const {
        return std::all_of(a.begin(), a.end(), [](int64_t v) { return v == 0; });
    }
};

// theta x with coefficients given as integers modulo something killing x
Elem apply(const Explicit& E, const std::vector<int64_t>& coeffs, const Elem& x) {
    Elem s(x.size(), 0);
    for (int g = 0; g < E.G.size(); ++g)
        if (coeffs[static_cast<size_t>(g)] != 0) s = E.add(s, E.scale(E.act(g, x), coeffs[static_cast<size_t>(g)]));
    return s;
}

int64_t residue_mod(const Rational& x, int64_t o) {
    if (!x.is_integer()) throw PreconditionError("annihilation oracle needs integral coefficients");
    mpz_class r = x.numerator() % o;
    if (r < 0) r += o;
    return r.get_si();
}

std::vector<Elem> all_elements(const std::vector<int64_t>& orders, const std::vector<int64_t>& step,
                               const std::vector<int64_t>& count) {
    std::vector<Elem> out;
    Elem c(orders.size(), 0);
    for (;;) {
        Elem x(orders.size());
        for (size_t i = 0; i < orders.size(); ++i) x[i] = c[i] * step[i] % std::max<int64_t>(orders[i], 1);
        out.push_back(std::move(x));
        size_t i = 0;
        while (i < c.size() && ++c[i] == count[i]) c[i++] = 0;
        if (i == c.size()) break;
    }
    return out;
}

int log_p(size_t n, int64_t p) {
    int k = 0;
    while (n > 1) {
        n /= static_cast<size_t>(p);
        ++k;
    }
    return k;
}

}  // namespace

bool annihilation_oracle(const StickelbergerElement& theta, const ClassModuleData& m) {
    const GaloisGroup gal(theta.spec);
    const Explicit E{m, *gal.group()};
    std::vector<int64_t> one(m.orders.size(), 1);
    for (const auto& x : all_elements(m.orders, one, m.orders)) {
        Elem s(x.size(), 0);
        for (int g = 0; g < gal.size(); ++g) {
            const Elem gx = E.act(g, x);
            for (size_t r = 0; r < x.size(); ++r)
                s[r] = (s[r] + nt::mulmod(residue_mod(theta.value[g], m.orders[r]), gx[r], m.orders[r])) % m.orders[r];
        }
        if (!E.is_zero(s)) return false;
    }
    return true;
}

std::optional<bool> fitting_membership_oracle(const StickelbergerElement& theta, const ClassModuleData& m, int64_t p,
                                              int N) {
    const GaloisGroup gal(theta.spec);
    const auto& G = *gal.group();
    const auto cm = cm_data(gal);
    if (!cm) throw PreconditionError("fitting oracle needs a CM field");
    const Explicit E{m, G};
    const int64_t q = nt::ipow(p, N);

    // M_p and its minus part (1 - j) M_p
    std::vector<int64_t> step, count;
    for (auto o : m.orders) {
        const int a = o > 1 ? nt::valuation(o, p) : 0;
        if (a > N) throw PrecisionBudgetError("module has elements of order above p^N");
        count.push_back(nt::ipow(p, a));
        step.push_back(o / nt::ipow(p, a));
    }
    std::set<Elem> minus_set;
    for (const auto& x : all_elements(m.orders, step, count)) minus_set.insert(E.add(x, E.scale(E.act(cm->j, x), -1)));
    const std::vector<Elem> minus(minus_set.begin(), minus_set.end());
    if (minus.size() == 1) return true;

    std::vector<int64_t> th;
    for (int g = 0; g < G.size(); ++g) th.push_back(PadicInt::from_rational(theta.value[g], p, N).residue());

    if (p != 2 && (p - 1) % G.exponent() == 0) {
        // Z_p[G]^- is a product of copies of Z_p indexed by odd Teichmueller-valued characters
        const int64_t root = nt::primitive_root(p);
        auto psi = [&](int chi, int g) {
            int64_t v = 1;
            const auto ec = G.exponents(chi), eg = G.exponents(g);
            for (size_t i = 0; i < ec.size(); ++i) {
                const int64_t d = G.cyclic_orders()[i];
                const int64_t zeta = teichmuller(nt::powmod(root, (p - 1) / d, p), p, N).residue();
                v = nt::mulmod(v, nt::powmod(zeta, ec[i] * eg[i] % d, q), q);
            }
            return v;
        };
        for (int chi = 0; chi < G.size(); ++chi) {
            if (psi(chi, cm->j) != q - 1) continue;
            size_t eigen = 0;
            for (const auto& x : minus) {
                bool ok = true;
                for (int i = 0; i < G.rank() && ok; ++i)
                    ok = E.gen(static_cast<size_t>(i), x) == E.scale(x, psi(chi, G.generator(i)));
                if (ok) ++eigen;
            }
            const int len = log_p(eigen, p);
            int64_t value = 0;
            for (int g = 0; g < G.size(); ++g) value = (value + nt::mulmod(th[static_cast<size_t>(g)], psi(chi, g), q)) % q;
            int v = 0;
            for (int64_t t = value; v < N && t % p == 0; t /= p) ++v;
            if (value == 0) v = N;
            if (v < std::min(len, N)) return false;
        }
        return true;
    }

    // Cyclic dual: then Fitt = Ann, so membership means theta kills the minus part.
    std::vector<Elem> socle_space;
    for (const auto& x : minus)
        if (E.is_zero(E.scale(x, p))) socle_space.push_back(x);
    std::map<Elem, std::set<Elem>> spans;
    auto span = [&](const Elem& x) -> const std::set<Elem>& {
        auto it = spans.find(x);
        if (it != spans.end()) return it->second;
        std::vector<Elem> orbit;
        for (int g = 0; g < G.size(); ++g) orbit.push_back(E.act(g, x));
        std::set<Elem> s{Elem(x.size(), 0)};
        std::vector<Elem> frontier(s.begin(), s.end());
        while (!frontier.empty()) {
            std::vector<Elem> next;
            for (const auto& a : frontier)
                for (const auto& o : orbit) {
                    Elem b = E.add(a, o);
                    if (s.insert(b).second) next.push_back(b);
                }
            frontier = std::move(next);
        }
        return spans.emplace(x, std::move(s)).first->second;
    };
    std::set<std::set<Elem>> simples;
    for (const auto& x : socle_space) {
        if (E.is_zero(x)) continue;
        const auto& sx = span(x);
        bool simple = true;
        for (const auto& y : sx)
            if (!E.is_zero(y) && span(y).size() != sx.size()) simple = false;
        if (simple) simples.insert(sx);
    }
    std::vector<size_t> coords;
    for (size_t i = 0; i < m.orders.size(); ++i)
        if (m.orders[i] % p == 0) coords.push_back(i);
    bool cyclic = false;
    const int64_t functionals = nt::ipow(p, static_cast<int>(coords.size()));
    for (int64_t w = 0; w < functionals && !cyclic; ++w) {
        std::vector<int64_t> wt;
        for (int64_t t = w; wt.size() < coords.size(); t /= p) wt.push_back(t % p);
        auto f = [&](const Elem& x) {
            int64_t s = 0;
            for (size_t k = 0; k < coords.size(); ++k) s += wt[k] * (x[coords[k]] / (m.orders[coords[k]] / p));
            return s % p;
        };
        cyclic = std::all_of(simples.begin(), simples.end(), [&](const std::set<Elem>& S) {
            return std::any_of(S.begin(), S.end(), [&](const Elem& y) { return f(y) != 0; });
        });
    }
    if (!cyclic) return std::nullopt;
    return std::all_of(minus.begin(), minus.end(), [&](const Elem& x) { return E.is_zero(apply(E, th, x)); });
}

std::vector<ClassModuleCase> load_class_module_cases(const std::string& dir) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir)) throw SchemaError("no class-module data directory at " + dir);
    std::vector<std::string> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.path().extension() == ".json") files.push_back(e.path().string());
    std::sort(files.begin(), files.end());
    std::vector<ClassModuleCase> out;
    for (const auto& f : files) {
        const io::json j = io::read_file(f);
        ClassModuleCase c;
        c.file = fs::path(f).filename().string();
        if (!j.contains("field")) throw SchemaError(f + ": missing field");
        c.spec = io::spec_from_json(j["field"]);
        c.module = io::class_module_from_json(j);
        if (!j.contains("p") || !j.contains("N") || !j["p"].is_number_integer() || !j["N"].is_number_integer())
            throw SchemaError(f + ": missing p or N");
        c.p = j["p"].get<int64_t>();
        c.N = j["N"].get<int>();
        if (j.contains("generator_residues")) {
            const auto expect = j["generator_residues"].get<std::vector<int64_t>>();
            if (expect != GaloisGroup(c.spec).generator_residues())
                throw SchemaError(f + ": generator residues do not match the field");
        }
        c.expect_annihilation = j.value("expect_annihilation", false);
        out.push_back(std::move(c));
    }
    return out;
}

CampaignResult class_module_campaign(const CampaignConfig& cfg) {
    CampaignResult res{"class-module verdicts against exhaustive oracles"};
    const auto t0 = Clock::now();
    std::mt19937_64 rng(cfg.seed ^ 0x81);
    int64_t ann_true = 0, ann_false = 0, fit_true = 0, fit_false = 0;
    std::vector<ClassModuleCase> cases;
    try {
        cases = load_class_module_cases(cfg.data_dir);
    } catch (const std::exception& e) {
        res.fail(e.what());
        res.seconds = since(t0);
        return res;
    }
    if (cases.empty()) res.fail("no class-module data files in " + cfg.data_dir);
    for (const auto& c : cases) {
        const GaloisGroup gal(c.spec);
        try {
            validate_class_module(c.module, gal);
        } catch (const std::exception& e) {
            res.fail(c.file + ": " + e.what());
            continue;
        }
        if (c.module.cardinality() > 729) continue;
        std::vector<Place> S{Place{0}};
        for (auto v : gal.ramified_primes()) S.push_back(Place{v});
        std::vector<std::pair<std::string, StickelbergerElement>> family;
        std::vector<int64_t> tprimes;
        for (int64_t v : {2, 3, 5, 7, 11, 13, 17, 19})
            if (gal.conductor() % v != 0) tprimes.push_back(v);
        for (size_t i = 0; i < tprimes.size(); ++i) {
            std::vector<std::vector<Place>> Ts{{Place{tprimes[i]}}};
            if (i + 1 < tprimes.size()) Ts.push_back({Place{tprimes[i]}, Place{tprimes[i + 1]}});
            for (const auto& T : Ts)
                if (check_hyp(c.spec, S, T).holds)
                    family.emplace_back("theta T={" + format_places(T) + "}", theta(gal, S, T, 0));
        }
        const size_t stickelberger = family.size();
        for (int k = 0; k < 30; ++k) {
            QGroupRing v(gal.group(), Rational(0));
            for (int g = 0; g < gal.size(); ++g)
                v.at(g) = Rational(std::uniform_int_distribution<long>(-3, 3)(rng) * (k % 3 == 0 ? c.p : 1));
            family.emplace_back("random element " + std::to_string(k), StickelbergerElement{v, c.spec, S, {}, 0});
        }
        for (size_t k = 0; k < family.size(); ++k) {
            const auto& [name, th] = family[k];
            const std::string what = c.file + " " + name;
            ++res.checked;
            try {
                const bool ann = annihilation_check(th, c.module).annihilates;
                (ann ? ann_true : ann_false)++;
                if (ann != annihilation_oracle(th, c.module)) res.fail(what + ": annihilation verdict differs from the oracle");
                if (k < stickelberger && c.expect_annihilation && !ann)
                    res.fail(what + ": Stickelberger element does not annihilate the tabulated class group");
                const bool fit = fitting_membership_check(th, c.module, c.p, c.N).member;
                (fit ? fit_true : fit_false)++;
                const auto oracle = fitting_membership_oracle(th, c.module, c.p, c.N);
                if (!oracle)
                    res.fail(what + ": no exhaustive Fitting oracle applies to this module");
                else if (*oracle != fit)
                    res.fail(what + ": Fitting membership verdict differs from the oracle");
            } catch (const std::exception& e) {
                res.fail(what + ": " + e.what());
            }
        }
    }
    res.note = std::to_string(cases.size()) + " data files; annihilation true/false " + std::to_string(ann_true) + "/" +
               std::to_string(ann_false) + ", Fitting membership true/false " + std::to_string(fit_true) + "/" +
               std::to_string(fit_false);
    res.seconds = since(t0);
    return res;
}

}  // namespace iwk::checks
