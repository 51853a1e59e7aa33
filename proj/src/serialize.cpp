#include "iwasawa/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "iwasawa/errors.hpp"
#include "iwasawa/numtheory.hpp"

namespace iwk::io {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw SchemaError(std::string("expected an object holding \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing key \"") + key + "\"");
    return *it;
}

int64_t as_int(const json& j, const char* what) {
    if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
    return j.get<int64_t>();
}

std::vector<int64_t> as_int_list(const json& j, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
    std::vector<int64_t> out;
    for (const auto& x : j) out.push_back(as_int(x, what));
    return out;
}

std::string as_string(const json& j, const char* what) {
    if (!j.is_string()) throw SchemaError(std::string(what) + " must be a string");
    return j.get<std::string>();
}

// Library preconditions hit while decoding are schema problems from the caller's view.
template <class F>
auto decoding(const char* what, F&& f) {
    try {
        return f();
    } catch (const PreconditionError& e) {
        throw SchemaError(std::string(what) + ": " + e.what());
    }
}

}  // namespace

json read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": " + e.what());
    }
}

void write_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << j.dump(2) << "\n";
}

json to_json(const Rational& x) { return x.str(); }

Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    const std::string s = as_string(j, "rational");
    try {
        return Rational::parse(s);
    } catch (const std::exception& e) {
        throw SchemaError("bad rational \"" + s + "\": " + e.what());
    }
}

json to_json(const PadicInt& x) { return {{"p", x.prime()}, {"N", x.precision()}, {"residue", x.residue()}}; }

PadicInt padic_from_json(const json& j) {
    const int64_t p = as_int(field(j, "p"), "p");
    const int64_t N = as_int(field(j, "N"), "N");
    const int64_t r = as_int(field(j, "residue"), "residue");
    if (!nt::is_prime(p) || N < 1 || N > 62) throw SchemaError("bad p-adic prime or precision");
    if (r < 0 || r >= nt::ipow(p, static_cast<int>(N))) throw SchemaError("p-adic residue out of range");
    return decoding("p-adic integer", [&] { return PadicInt(p, static_cast<int>(N), r); });
}

json to_json(const AbelianFieldSpec& spec) {
    return {{"modulus", spec.modulus}, {"fixing", spec.fixing}, {"label", spec.label}};
}

AbelianFieldSpec spec_from_json(const json& j) {
    const int64_t m = as_int(field(j, "modulus"), "modulus");
    std::vector<int64_t> fixing{1};
    if (j.contains("fixing")) fixing = as_int_list(j["fixing"], "fixing");
    std::string label = j.contains("label") ? as_string(j["label"], "label") : "";
    return decoding("field spec", [&] { return AbelianFieldSpec::make(m, fixing, label); });
}

AbelianFieldSpec spec_from_argument(const std::string& arg) {
    if (arg.rfind("zeta:", 0) == 0) {
        int64_t m = 0;
        try {
            m = std::stoll(arg.substr(5));
        } catch (const std::exception&) {
            throw SchemaError("bad field shorthand " + arg);
        }
        return decoding("field spec", [&] { return AbelianFieldSpec::cyclotomic(m); });
    }
    if (!arg.empty() && arg.front() == '{') {
        try {
            return spec_from_json(json::parse(arg));
        } catch (const json::parse_error& e) {
            throw SchemaError(std::string("bad inline field spec: ") + e.what());
        }
    }
    return spec_from_json(read_file(arg));
}

json places_to_json(const std::vector<Place>& places) {
    json out = json::array();
    for (const auto& v : places) {
        if (v.is_infinite())
            out.push_back("inf");
        else
            out.push_back(v.prime);
    }
    return out;
}

std::vector<Place> places_from_json(const json& j) {
    if (!j.is_array()) throw SchemaError("place list must be an array");
    std::string text;
    for (const auto& x : j) {
        if (!text.empty()) text += ",";
        if (x.is_string())
            text += x.get<std::string>();
        else
            text += std::to_string(as_int(x, "place"));
    }
    return decoding("place list", [&] { return parse_places(text); });
}

json element_to_json(const FiniteAbelianGroup& G, FiniteAbelianGroup::Element g) { return G.exponents(g); }

json group_to_json(const GaloisGroup& gal) {
    const auto& G = *gal.group();
    json elements = json::array();
    for (int g = 0; g < G.size(); ++g)
        elements.push_back({{"residue", gal.representative(g)}, {"exponents", element_to_json(G, g)}});
    return {{"orders", G.cyclic_orders()}, {"generators", gal.generator_residues()}, {"elements", elements}};
}

namespace {

FiniteAbelianGroup::Element element_from_key(const std::string& key, const GaloisGroup& gal) {
    int64_t a = 0;
    try {
        size_t used = 0;
        a = std::stoll(key, &used);
        if (used != key.size()) throw SchemaError("");
    } catch (const std::exception&) {
        throw SchemaError("group ring key \"" + key + "\" is not a residue");
    }
    const int64_t m = gal.spec().modulus;
    if (nt::gcd(nt::mod(a, m), m) != 1) throw SchemaError("group ring key " + key + " is not a unit");
    return gal.element_of(nt::mod(a, m));
}

}  // namespace

json group_ring_to_json(const QGroupRing& x, const GaloisGroup& gal) {
    json out = json::object();
    for (int g = 0; g < gal.size(); ++g)
        if (!x[g].is_zero()) out[std::to_string(gal.representative(g))] = to_json(x[g]);
    return out;
}

QGroupRing group_ring_from_json(const json& j, const GaloisGroup& gal) {
    if (!j.is_object()) throw SchemaError("group ring coefficients must be an object");
    QGroupRing out(gal.group(), Rational(0));
    for (const auto& [key, value] : j.items()) out.at(element_from_key(key, gal)) += rational_from_json(value);
    return out;
}

json group_ring_to_json(const ZpGroupRing& x, const GaloisGroup& gal) {
    json out = json::object();
    for (int g = 0; g < gal.size(); ++g)
        if (!x[g].is_zero()) out[std::to_string(gal.representative(g))] = x[g].residue();
    return out;
}

ZpGroupRing zp_group_ring_from_json(const json& j, const GaloisGroup& gal, int64_t p, int N) {
    if (!j.is_object()) throw SchemaError("group ring coefficients must be an object");
    ZpGroupRing out(gal.group(), PadicInt(p, N));
    for (const auto& [key, value] : j.items()) {
        auto& c = out.at(element_from_key(key, gal));
        c = c + PadicInt(p, N, as_int(value, "coefficient"));
    }
    return out;
}

json to_json(const TowerElement& t) {
    json levels = json::array();
    for (size_t n = 0; n < t.entries.size(); ++n)
        levels.push_back({{"n", n},
                          {"field", to_json(t.levels[n]->spec())},
                          {"coeffs", group_ring_to_json(t.entries[n], t.levels[n]->galois())}});
    json meta = {{"S", places_to_json(t.S)}, {"T", places_to_json(t.T)}, {"r", t.r}};
    if (!t.levels.empty()) meta["field"] = to_json(t.levels[0]->base());
    return {{"p", t.p}, {"N", t.N}, {"levels", levels}, {"meta", meta}};
}

TowerElement tower_from_json(const json& j) {
    TowerElement t;
    t.p = as_int(field(j, "p"), "p");
    const int64_t N = as_int(field(j, "N"), "N");
    if (!nt::is_prime(t.p) || N < 1 || N > 30) throw SchemaError("bad tower prime or precision");
    t.N = static_cast<int>(N);
    const json& meta = field(j, "meta");
    t.S = places_from_json(field(meta, "S"));
    t.T = places_from_json(field(meta, "T"));
    t.r = static_cast<int>(as_int(field(meta, "r"), "r"));
    const AbelianFieldSpec base = spec_from_json(field(meta, "field"));
    const json& levels = field(j, "levels");
    if (!levels.is_array() || levels.empty()) throw SchemaError("tower needs at least one level");
    for (size_t k = 0; k < levels.size(); ++k) {
        const int64_t n = as_int(field(levels[k], "n"), "n");
        if (n != static_cast<int64_t>(k)) throw SchemaError("tower levels must be listed as n = 0, 1, ...");
        auto level = decoding("tower level", [&] {
            return std::make_shared<const FiniteLevelAlgebra>(base, t.p, t.N, static_cast<int>(n));
        });
        t.entries.push_back(zp_group_ring_from_json(field(levels[k], "coeffs"), level->galois(), t.p, t.N));
        t.levels.push_back(std::move(level));
    }
    return t;
}

json to_json(const ClassModuleData& m) {
    json action = json::object();
    for (size_t i = 0; i < m.action.size(); ++i) action["g_" + std::to_string(i)] = m.action[i];
    return {{"orders", m.orders}, {"action", action}, {"provenance", m.provenance}};
}

ClassModuleData class_module_from_json(const json& j) {
    ClassModuleData m;
    m.orders = as_int_list(field(j, "orders"), "orders");
    for (auto o : m.orders)
        if (o < 1) throw SchemaError("module orders must be positive");
    const json& action = field(j, "action");
    if (!action.is_object()) throw SchemaError("action must be an object keyed g_0, g_1, ...");
    for (size_t i = 0; i < action.size(); ++i) {
        const std::string key = "g_" + std::to_string(i);
        if (!action.contains(key)) throw SchemaError("action is missing " + key);
        const json& a = action[key];
        if (!a.is_array() || a.size() != m.orders.size()) throw SchemaError(key + " must be a square matrix");
        IntMatrix mat;
        for (const auto& row : a) {
            auto r = as_int_list(row, "action entry");
            if (r.size() != m.orders.size()) throw SchemaError(key + " must be a square matrix");
            mat.push_back(std::move(r));
        }
        m.action.push_back(std::move(mat));
    }
    m.provenance = j.contains("provenance") ? as_string(j["provenance"], "provenance") : "";
    return m;
}

namespace {

using Term = FiniteCommAlgebra::Term;

std::vector<Term> terms_from_json(const json& j, int dim, const char* what) {
    if (!j.is_array()) throw SchemaError(std::string(what) + " must be a list of [index, coefficient] pairs");
    std::vector<Term> out;
    for (const auto& t : j) {
        if (!t.is_array() || t.size() != 2) throw SchemaError(std::string(what) + " entries are [index, coefficient]");
        const int64_t k = as_int(t[0], what);
        if (k < 0 || k >= dim) throw SchemaError(std::string(what) + " index out of range");
        out.emplace_back(static_cast<int>(k), as_int(t[1], what));
    }
    return out;
}

GroupPtr group_from_orders(const json& j) {
    auto orders = as_int_list(j, "orders");
    for (auto o : orders)
        if (o < 2) throw SchemaError("cyclic orders must be at least 2");
    for (size_t i = 1; i < orders.size(); ++i)
        if (orders[i] % orders[i - 1] != 0) throw SchemaError("cyclic orders must form a divisor chain");
    return std::make_shared<const FiniteAbelianGroup>(orders);
}

}  // namespace

AlgebraPtr algebra_from_json(const json& j) {
    const int64_t p = as_int(field(j, "p"), "p");
    const int64_t N = as_int(field(j, "N"), "N");
    if (!nt::is_prime(p) || N < 1 || N > 30) throw SchemaError("bad algebra prime or precision");
    const int n = static_cast<int>(N);
    if (j.contains("type")) {
        const std::string type = as_string(j["type"], "type");
        return decoding("algebra", [&]() -> AlgebraPtr {
            if (type == "group") return group_algebra(group_from_orders(field(j, "orders")), p, n);
            if (type == "truncated") {
                const int64_t M = as_int(field(j, "M"), "M");
                if (M < 1 || M > 64) throw SchemaError("truncation degree out of range");
                return truncated_poly_algebra(group_from_orders(field(j, "orders")), p, n, static_cast<int>(M));
            }
            if (type == "minus") {
                GroupPtr G = group_from_orders(field(j, "orders"));
                auto e = as_int_list(field(j, "j"), "j");
                if (e.size() != G->cyclic_orders().size()) throw SchemaError("j must be an exponent vector");
                return minus_quotient_algebra(G, G->from_exponents(e), p, n);
            }
            if (type == "split") {
                const int64_t k = as_int(field(j, "k"), "k");
                if (k < 1 || k > 64) throw SchemaError("split algebra rank out of range");
                std::optional<std::vector<int>> inv;
                if (j.contains("involution")) {
                    std::vector<int> v;
                    for (auto x : as_int_list(j["involution"], "involution")) v.push_back(static_cast<int>(x));
                    inv = v;
                }
                return split_algebra(static_cast<int>(k), p, n, inv);
            }
            throw SchemaError("unknown algebra type " + type);
        });
    }
    const json& basis = field(j, "basis");
    if (!basis.is_array() || basis.empty()) throw SchemaError("basis must be a non-empty array of labels");
    std::vector<std::string> labels;
    for (const auto& b : basis) labels.push_back(as_string(b, "basis label"));
    const int d = static_cast<int>(labels.size());
    const json& mult = field(j, "mult");
    if (!mult.is_array() || static_cast<int>(mult.size()) != d) throw SchemaError("mult must be a d x d table");
    std::vector<std::vector<std::vector<Term>>> table;
    for (const auto& row : mult) {
        if (!row.is_array() || static_cast<int>(row.size()) != d) throw SchemaError("mult must be a d x d table");
        std::vector<std::vector<Term>> r;
        for (const auto& cell : row) r.push_back(terms_from_json(cell, d, "structure constant"));
        table.push_back(std::move(r));
    }
    Vec unit(static_cast<size_t>(d), 0);
    unit[0] = 1;
    if (j.contains("unit")) {
        unit = as_int_list(j["unit"], "unit");
        if (static_cast<int>(unit.size()) != d) throw SchemaError("unit has the wrong length");
    }
    std::optional<std::vector<Term>> sharp;
    if (j.contains("sharp")) sharp = terms_from_json(j["sharp"], d, "involution");
    std::string name = j.contains("name") ? as_string(j["name"], "name") : "custom";
    auto a = decoding("algebra", [&] {
        return std::make_shared<const FiniteCommAlgebra>(Zq(p, n), labels, table, unit, sharp, name);
    });
    if (auto why = a->validate(); !why.empty()) throw SchemaError("algebra structure: " + why);
    return a;
}

json to_json(const FiniteCommAlgebra& a) {
    json mult = json::array();
    for (int i = 0; i < a.dim(); ++i) {
        json row = json::array();
        for (int k = 0; k < a.dim(); ++k) {
            json cell = json::array();
            for (const auto& [idx, c] : a.product(i, k)) cell.push_back({idx, c});
            row.push_back(cell);
        }
        mult.push_back(row);
    }
    json out = {{"p", a.ring().p}, {"N", a.ring().N}, {"name", a.name()},
                {"basis", a.labels()}, {"mult", mult}, {"unit", a.one()}};
    if (a.has_sharp()) {
        json s = json::array();
        for (int i = 0; i < a.dim(); ++i) {
            const Vec img = a.sharp(a.basis(i));
            int nonzero = 0;
            for (int k = 0; k < a.dim(); ++k)
                if (img[static_cast<size_t>(k)] != 0) {
                    ++nonzero;
                    s.push_back({k, img[static_cast<size_t>(k)]});
                }
            if (nonzero != 1) return out;  // not a signed permutation; omit
        }
        out["sharp"] = s;
    }
    return out;
}

Vec algebra_element_from_json(const json& j, const FiniteCommAlgebra& a) {
    const Zq& R = a.ring();
    Vec out = a.zero();
    if (j.is_number_integer()) return a.scalar(R.reduce(j.get<int64_t>()));
    if (j.is_array()) {
        auto v = as_int_list(j, "algebra element");
        if (static_cast<int>(v.size()) != a.dim()) throw SchemaError("algebra element has the wrong length");
        for (size_t i = 0; i < v.size(); ++i) out[i] = R.reduce(v[i]);
        return out;
    }
    if (j.is_object()) {
        for (const auto& [label, value] : j.items()) {
            auto it = std::find(a.labels().begin(), a.labels().end(), label);
            if (it == a.labels().end()) throw SchemaError("unknown basis label " + label);
            auto& c = out[static_cast<size_t>(it - a.labels().begin())];
            c = R.add(c, R.reduce(as_int(value, "coefficient")));
        }
        return out;
    }
    throw SchemaError("algebra element must be an integer, an array or an object");
}

json algebra_element_to_json(const Vec& x, const FiniteCommAlgebra& a) {
    json out = json::object();
    for (int i = 0; i < a.dim(); ++i)
        if (x[static_cast<size_t>(i)] != 0) out[a.labels()[static_cast<size_t>(i)]] = x[static_cast<size_t>(i)];
    return out;
}

std::vector<std::vector<Vec>> algebra_matrix_from_json(const json& j, const FiniteCommAlgebra& a) {
    if (!j.is_array()) throw SchemaError("matrix must be an array of rows");
    std::vector<std::vector<Vec>> out;
    for (const auto& row : j) {
        if (!row.is_array()) throw SchemaError("matrix rows must be arrays");
        std::vector<Vec> r;
        for (const auto& x : row) r.push_back(algebra_element_from_json(x, a));
        if (!out.empty() && r.size() != out.front().size()) throw SchemaError("ragged matrix");
        out.push_back(std::move(r));
    }
    return out;
}

FinPresModule finpres_from_json(const json& j, const AlgebraPtr& a) {
    FinPresModule m;
    m.algebra = a;
    const int64_t n = as_int(field(j, "generators"), "generators");
    if (n < 0 || n > 16) throw SchemaError("generator count out of range");
    m.generators = static_cast<int>(n);
    if (j.contains("relations")) m.relations = algebra_matrix_from_json(j["relations"], *a);
    for (const auto& row : m.relations)
        if (static_cast<int64_t>(row.size()) != n) throw SchemaError("relation rows need one entry per generator");
    return m;
}

json to_json(const FinPresModule& m) {
    json rels = json::array();
    for (const auto& row : m.relations) {
        json r = json::array();
        for (const auto& x : row) r.push_back(algebra_element_to_json(x, *m.algebra));
        rels.push_back(r);
    }
    return {{"generators", m.generators}, {"relations", rels}};
}

json to_json(const Ideal& ideal) {
    const auto& A = *ideal.algebra();
    json gens = json::array();
    for (const auto& g : ideal.generators()) gens.push_back(algebra_element_to_json(g, A));
    return {{"generators", gens},
            {"howell", ideal.howell()},
            {"log_size", ideal.log_size()},
            {"is_unit", ideal.is_unit()},
            {"is_zero", ideal.is_zero()}};
}

BoundedComplex complex_from_json(const json& j) {
    AlgebraPtr A = algebra_from_json(field(j, "algebra"));
    auto degrees = as_int_list(field(j, "degrees"), "degrees");
    if (degrees.size() != 2 || degrees[1] < degrees[0] || degrees[1] - degrees[0] > 32)
        throw SchemaError("degrees must be [lowest, highest]");
    const size_t count = static_cast<size_t>(degrees[1] - degrees[0] + 1);
    const json& mods = field(j, "modules");
    if (!mods.is_array() || mods.size() != count) throw SchemaError("need one module per degree");
    std::vector<FinPresModule> pres;
    std::vector<AlgebraModule> modules;
    for (const auto& mj : mods) {
        pres.push_back(finpres_from_json(mj, A));
        modules.push_back(decoding("module", [&] { return to_module(pres.back()); }));
    }
    std::vector<Matrix> diffs;
    const json empty = json::array();
    const json& dj = j.contains("differentials") ? j["differentials"] : empty;
    if (!dj.is_array() || dj.size() + 1 != count) throw SchemaError("need one differential between consecutive degrees");
    for (size_t k = 0; k + 1 < count; ++k) {
        auto f = algebra_matrix_from_json(dj[k], *A);
        const size_t rows = static_cast<size_t>(pres[k].generators), cols = static_cast<size_t>(pres[k + 1].generators);
        if (f.size() != rows) throw SchemaError("differential " + std::to_string(k) + " has the wrong number of rows");
        for (const auto& row : f)
            if (row.size() != cols) throw SchemaError("differential " + std::to_string(k) + " has the wrong number of columns");
        if (rows == 0 || cols == 0)
            diffs.emplace_back(rows * static_cast<size_t>(A->dim()), Vec(cols * static_cast<size_t>(A->dim()), 0));
        else
            diffs.push_back(linear_map_matrix(*A, f, cols));
    }
    return make_complex(A, static_cast<int>(degrees[0]), std::move(modules), std::move(diffs));
}

}  // namespace iwk::io
