#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <map>
#include <iostream>
#include <optional>
#include <string>

#include "iwasawa/checks.hpp"
#include "iwasawa/errors.hpp"
#include "iwasawa/fitting.hpp"
#include "iwasawa/serialize.hpp"

using namespace iwk;
using io::json;

namespace {

enum Exit { kOk = 0, kPrecondition = 2, kCheckFailed = 3, kSchema = 4 };

struct Outcome {
    json cert;
    int code = kOk;
};

json certificate(json input, std::string check, json result, json witness) {
    return json{{"input", std::move(input)},
                {"check", std::move(check)},
                {"result", std::move(result)},
                {"witness", std::move(witness)}};
}

template <class T>
T required(const json& in, const char* key) {
    if (!in.contains(key) || in[key].is_null()) throw PreconditionError(std::string("missing --") + key);
    try {
        return in[key].get<T>();
    } catch (const json::exception& e) {
        throw SchemaError(std::string(key) + ": " + e.what());
    }
}

std::vector<Place> default_S(const GaloisGroup& gal, std::optional<int64_t> p = std::nullopt) {
    std::vector<Place> S{Place{0}};
    for (auto q : gal.ramified_primes()) S.push_back(Place{q});
    if (p) S.push_back(Place{*p});
    std::sort(S.begin(), S.end());
    S.erase(std::unique(S.begin(), S.end()), S.end());
    return S;
}

json level_or_null(const std::optional<int>& n) { return n ? json(*n) : json(nullptr); }

Outcome run_theta(const json& in) {
    const auto spec = io::spec_from_json(in.at("spec"));
    const GaloisGroup gal(spec);
    const auto S = io::places_from_json(in.at("S"));
    const auto T = io::places_from_json(in.at("T"));
    const int r = required<int>(in, "r");
    const auto hyp = check_hyp(spec, S, T);
    const auto th = theta(gal, S, T, r);

    json result{{"theta", io::group_ring_to_json(th.value, gal)}, {"hyp", hyp.holds}};
    json witness{{"hyp_reason", hyp.reason}};
    std::optional<bool> integral;
    if (!T.empty()) {
        integral = verify_integrality(th);
        json bad = json::object();
        for (size_t i = 0; i < th.value.coefficients().size(); ++i) {
            const auto& c = th.value.coefficients()[i];
            if (!c.is_integer()) bad[std::to_string(gal.representative(i))] = c.denominator().get_str();
        }
        witness["denominators"] = bad;
    }
    result["integral"] = integral ? json(*integral) : json(nullptr);
    // Integrality is only claimed under Hyp(S, T).
    const int code = (hyp.holds && integral && !*integral) ? kCheckFailed : kOk;
    return {certificate(in, "theta_S^T(r): Hyp(S,T) and integrality", result, witness), code};
}

Outcome tower_report(const json& in, const TowerElement& t, const std::optional<TowerElement>& fresh) {
    const auto coh = coherence_check(t);
    json result{{"tower", io::to_json(t)}, {"coherent", coh.coherent}, {"failing_level", level_or_null(coh.failing_level)}};
    json witness = json::object();
    bool ok = coh.coherent;
    const FiniteLevelAlgebra base(t.levels.front()->base(), t.p, t.N, 0);
    if (t.r != 0 && base.has_cyclotomic_character()) {
        const auto t0 = theta_tower(base.base(), t.S, t.T, t.p, t.N, t.n_max(), 0);
        const auto cong = twist_congruence_check(t, t0);
        result["twist_congruent"] = cong.congruent;
        result["twist_failing_level"] = level_or_null(cong.failing_level);
        ok = ok && cong.congruent;
    } else {
        result["twist_congruent"] = nullptr;
        witness["twist"] = t.r == 0 ? "r = 0: nothing to compare" : "zeta_p is not in the base field";
    }
    if (fresh) {
        std::optional<int> first;
        for (size_t n = 0; n < t.entries.size() && !first; ++n)
            if (n >= fresh->entries.size() || !(t.entries[n] == fresh->entries[n])) first = static_cast<int>(n);
        result["matches_recomputation"] = !first.has_value();
        witness["first_mismatch_level"] = level_or_null(first);
        ok = ok && !first;
    }
    return {certificate(in, "tower coherence and twist congruence", result, witness), ok ? kOk : kCheckFailed};
}

Outcome run_tower(const json& in) {
    const auto spec = io::spec_from_json(in.at("spec"));
    const auto S = io::places_from_json(in.at("S"));
    const auto T = io::places_from_json(in.at("T"));
    const int r = required<int>(in, "r");
    const auto p = required<int64_t>(in, "p");
    const int N = required<int>(in, "N");
    const int levels = required<int>(in, "levels");
    if (N > levels + 1)
        throw PrecisionBudgetError("N = " + std::to_string(N) + " exceeds the budget n_max + 1 = " +
                                   std::to_string(levels + 1));
    try {
        const auto t = theta_tower(spec, S, T, p, N, levels, r);
        return tower_report(in, t, std::nullopt);
    } catch (const IntegralityError& e) {
        json result{{"integral", false}, {"failing_level", e.layer()}};
        return {certificate(in, "tower coherence and twist congruence", result, {{"error", e.what()}}), kCheckFailed};
    }
}

// A stored tower, bare or inside a certificate, checked on its own entries.
Outcome replay_tower(const json& file, const std::string& path) {
    const json& tj = file.contains("result") ? file["result"].at("tower") : file;
    const TowerElement t = io::tower_from_json(tj);
    const auto fresh = theta_tower(t.levels.front()->base(), t.S, t.T, t.p, t.N, t.n_max(), t.r);
    json in{{"command", "tower"}, {"replay", path}};
    return tower_report(in, t, fresh);
}

std::optional<AbelianFieldSpec> optional_spec(const json& in) {
    if (!in.contains("spec") || in["spec"].is_null()) return std::nullopt;
    return io::spec_from_json(in["spec"]);
}

Outcome run_verify(const json& in) {
    const json& data = in.at("data");
    std::optional<AbelianFieldSpec> spec = optional_spec(in);
    if (!spec) {
        if (!data.contains("field")) throw PreconditionError("class data names no field; pass --spec");
        spec = io::spec_from_json(data["field"]);
    }
    const GaloisGroup gal(*spec);
    if (data.contains("generator_residues") &&
        data["generator_residues"].get<std::vector<int64_t>>() != gal.generator_residues())
        throw PreconditionError("class data generators do not match the Galois group of " + spec->label);
    const ClassModuleData m = io::class_module_from_json(data);
    validate_class_module(m, gal);

    const auto S = io::places_from_json(in.at("S"));
    const auto T = io::places_from_json(in.at("T"));
    StickelbergerElement th = theta(gal, S, T, 0);
    if (in.contains("theta") && !in["theta"].is_null()) th.value = io::group_ring_from_json(in["theta"], gal);
    if (!verify_integrality(th)) throw PreconditionError("theta is not integral; Hyp(S,T) fails or T is too small");

    const auto ann = annihilation_check(th, m);
    json result{{"theta", io::group_ring_to_json(th.value, gal)}, {"annihilation", ann.annihilates}};
    json witness{{"acting_matrix", ann.acting}};

    const int64_t p = in.contains("p") && !in["p"].is_null() ? in["p"].get<int64_t>() : data.value("p", int64_t{0});
    const int N = in.contains("N") && !in["N"].is_null() ? in["N"].get<int>() : data.value("N", 0);
    if (p == 0 || N == 0) throw PreconditionError("minus-Fitting membership needs p and N (flags or data file)");
    const auto fit = fitting_membership_check(th, m, p, N);
    result["fitting_membership"] = fit.member;
    witness["theta_sharp"] = fit.theta_sharp;
    witness["residual"] = fit.residual;
    witness["fitting_generators"] = fit.fitting_generators;
    witness["fitting_log_size"] = fit.fitting_log_size;
    witness["minus_log_size"] = fit.minus_log_size;

    int code = kOk;
    // Tabulated class groups must be annihilated; synthetic modules carry no such claim.
    if (data.value("expect_annihilation", false) && !ann.annihilates) code = kCheckFailed;
    return {certificate(in, "annihilation and minus-Fitting membership", result, witness), code};
}

Outcome run_fitting(const json& in) {
    const json& data = in.at("data");
    const AlgebraPtr A = io::algebra_from_json(data.at("algebra"));
    const FinPresModule m = io::finpres_from_json(data.at("module"), A);
    const Ideal fitt = fitting_ideal(m);
    json result{{"fitting_ideal", io::to_json(fitt)}, {"log_size", fitt.log_size()}, {"square", m.is_square()}};
    json witness = json::object();
    int code = kOk;
    const bool lift = m.is_square() && has_injective_lift(m);
    result["injective_lift"] = lift;
    if (lift && A->has_sharp()) {
        const auto e1 = e1_sharp_check(m);
        result["dual_fitting_is_sharp"] = e1.holds;
        witness["dual_fitting_ideal"] = io::to_json(fitting_ideal(dual_presentation(m)));
        witness["detail"] = e1.detail;
        if (!e1.holds) code = kCheckFailed;
    } else {
        result["dual_fitting_is_sharp"] = nullptr;
    }
    if (data.contains("element")) {
        const Vec x = io::algebra_element_from_json(data["element"], *A);
        result["contains_element"] = fitt.contains(x);
    }
    return {certificate(in, "Fitting ideal and transpose-sharp duality", result, witness), code};
}

json ideal_pair(const EulerFittingInvariant& e) {
    return {{"numerator", io::to_json(e.numerator)}, {"denominator", io::to_json(e.denominator)}};
}

Outcome run_complex(const json& in) {
    const BoundedComplex c = io::complex_from_json(in.at("data"));
    json coh = json::array();
    for (int i = c.lowest; i <= c.highest(); ++i) {
        const AlgebraModule h = cohomology(c, i);
        coh.push_back({{"degree", i}, {"log_size", h.log_size()}, {"fitting_ideal", io::to_json(fitting_ideal(h))}});
    }
    const auto ef = euler_fitting(c);
    json parity = json::array();
    bool ok = true;
    for (int n : {1, 2, 3}) {
        const auto shifted = euler_fitting(shift(c, n));
        const bool holds = shifted.equivalent(n % 2 ? ef.inverse() : ef);
        parity.push_back({{"n", n}, {"holds", holds}});
        ok = ok && holds;
    }
    json result{{"cohomology", coh}, {"euler_fitting", ideal_pair(ef)}, {"shift_parity", parity}};
    return {certificate(in, "cohomology, Euler-Fitting invariant and shift parity", result, json::object()),
            ok ? kOk : kCheckFailed};
}

Outcome run_selftest(const json& in) {
    checks::CampaignConfig cfg;
    cfg.seed = in.value("seed", cfg.seed);
    cfg.max_conductor = in.value("max_conductor", cfg.max_conductor);
    cfg.t_primes = in.value("t_primes", cfg.t_primes);
    cfg.tower_levels = in.value("levels", cfg.tower_levels);
    cfg.tower_precision = in.value("N", cfg.tower_precision);
    cfg.lemma_trials = in.value("trials", cfg.lemma_trials);
    cfg.complex_instances = in.value("instances", cfg.complex_instances);
    cfg.data_dir = in.value("data", std::string{});

    std::vector<checks::CampaignResult> all;
    all.push_back(checks::integrality_campaign(cfg));
    all.push_back(checks::character_campaign(cfg));
    all.push_back(checks::coherence_campaign(cfg));
    all.push_back(checks::kummer_campaign(cfg));
    for (auto& r : checks::fitting_lemma_campaigns(cfg)) all.push_back(std::move(r));
    for (auto& r : checks::complex_campaigns(cfg)) all.push_back(std::move(r));
    all.push_back(checks::tower_fitting_campaign(cfg));
    all.push_back(checks::cancellation_campaign(cfg));
    if (!cfg.data_dir.empty()) all.push_back(checks::class_module_campaign(cfg));

    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    json suites = json::array(), timing = json::object();
    bool ok = true;
    for (const auto& r : all) {
        suites.push_back({{"suite", r.name}, {"passed", r.passed}, {"checked", r.checked}, {"failures", r.failures},
                          {"note", r.note}});
        timing[r.name] = r.seconds;
        ok = ok && r.passed;
        std::clog << (r.passed ? "ok   " : "FAIL ") << r.name << " (" << r.checked << " checks)\n";
    }
    return {certificate(in, "property suites", {{"passed", ok}, {"suites", suites}}, {{"seconds", timing}}),
            ok ? kOk : kCheckFailed};
}

const std::map<std::string, std::function<Outcome(const json&)>>& commands() {
    static const std::map<std::string, std::function<Outcome(const json&)>> table{
        {"theta", run_theta},     {"tower", run_tower},     {"verify", run_verify},
        {"fitting", run_fitting}, {"complex", run_complex}, {"selftest", run_selftest}};
    return table;
}

Outcome replay(const std::string& command, const std::string& path) {
    const json file = io::read_file(path);
    const bool is_cert = file.is_object() && file.contains("input") && file.contains("result");
    if (command == "tower" && (!is_cert || file["input"].value("command", "") == "tower")) return replay_tower(file, path);
    if (!is_cert) throw SchemaError(path + ": not a certificate");
    const json& input = file["input"];
    const std::string cmd = input.value("command", command);
    if (cmd != command) throw PreconditionError(path + " is a '" + cmd + "' certificate");
    Outcome again = commands().at(cmd)(input);
    const bool same = again.cert["result"] == file["result"];
    json result{{"identical", same}, {"recorded", file["result"]}, {"recomputed", again.cert["result"]}};
    return {certificate({{"command", cmd}, {"replay", path}}, "replay", result, again.cert["witness"]),
            same ? again.code : kCheckFailed};
}

struct Flags {
    std::string spec, S, T, data, out, replay, theta;
    int r = 0, N = 0, levels = 0, trials = 0, instances = 0, max_conductor = 0;
    int64_t p = 0;
    uint64_t seed = 0;
    std::vector<int64_t> t_primes;
};

json data_argument(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        try {
            return json::parse(arg);
        } catch (const json::exception& e) {
            throw SchemaError(std::string("inline JSON: ") + e.what());
        }
    }
    return io::read_file(arg);
}

// Translates flags into the input object embedded in the certificate.
json build_input(const std::string& cmd, const Flags& f, const CLI::App& sub) {
    json in{{"command", cmd}};
    auto given = [&](const char* name) { return sub.count(name) > 0; };
    if (cmd == "selftest") {
        if (given("--seed")) in["seed"] = f.seed;
        if (given("--max-conductor")) in["max_conductor"] = f.max_conductor;
        if (given("--t-primes")) in["t_primes"] = f.t_primes;
        if (given("--levels")) in["levels"] = f.levels;
        if (given("--N")) in["N"] = f.N;
        if (given("--trials")) in["trials"] = f.trials;
        if (given("--instances")) in["instances"] = f.instances;
        in["data"] = given("--data") ? f.data : std::string(IWK_DATA_DIR);
        in["seed"] = in.value("seed", checks::CampaignConfig{}.seed);
        return in;
    }
    if (cmd == "fitting" || cmd == "complex") {
        if (!given("--data")) throw PreconditionError("--data is required");
        in["data"] = data_argument(f.data);
        return in;
    }
    std::optional<AbelianFieldSpec> spec;
    if (given("--spec")) spec = io::spec_from_argument(f.spec);
    if (cmd == "verify") {
        if (!given("--data")) throw PreconditionError("--data is required");
        in["data"] = data_argument(f.data);
        if (!spec && in["data"].contains("field")) spec = io::spec_from_json(in["data"]["field"]);
        if (given("--theta")) in["theta"] = data_argument(f.theta);
        if (given("--p")) in["p"] = f.p;
        if (given("--N")) in["N"] = f.N;
    }
    if (!spec) throw PreconditionError("--spec is required");
    in["spec"] = io::to_json(*spec);
    const GaloisGroup gal(*spec);
    std::optional<int64_t> p;
    if (cmd == "tower") {
        if (!given("--p")) throw PreconditionError("--p is required");
        p = f.p;
        in["p"] = f.p;
        in["N"] = given("--N") ? f.N : 1;
        in["levels"] = given("--levels") ? f.levels : 1;
    }
    in["S"] = io::places_to_json(given("--S") ? parse_places(f.S) : default_S(gal, p));
    in["T"] = io::places_to_json(given("--T") ? parse_places(f.T) : std::vector<Place>{});
    in["r"] = cmd == "verify" ? 0 : f.r;
    if (cmd == "verify" && f.r != 0) throw PreconditionError("verify works at r = 0");
    return in;
}

int emit(const Outcome& o, const std::string& out) {
    if (out.empty())
        std::cout << o.cert.dump(2) << '\n';
    else
        io::write_file(out, o.cert);
    return o.code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stickelberger elements, Iwasawa algebras, Fitting ideals and complex invariants"};
    app.require_subcommand(1);
    Flags f;
    const std::map<std::string, std::string> help{
        {"theta", "Theta_S^T(r) with Hyp(S,T) and integrality verdicts"},
        {"tower", "Stickelberger tower over the cyclotomic Z_p-extension, with coherence and twist checks"},
        {"verify", "annihilation and minus-Fitting membership on class-module data"},
        {"fitting", "Fitting ideal of a finitely presented module"},
        {"complex", "cohomology and Euler-Fitting invariant of a bounded complex"},
        {"selftest", "run every property suite"}};
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, text] : help) {
        CLI::App* s = app.add_subcommand(name, text);
        subs[name] = s;
        s->add_option("--out", f.out, "write the certificate here instead of stdout");
        s->add_option("--replay", f.replay, "re-run a certificate (or a stored tower) and compare");
        s->add_option("--data", f.data, "JSON input file or inline JSON");
        if (name == "selftest") {
            s->add_option("--seed", f.seed, "random seed");
            s->add_option("--max-conductor", f.max_conductor, "largest conductor in the field corpus");
            s->add_option("--t-primes", f.t_primes, "candidate primes for T")->delimiter(',');
            s->add_option("--levels", f.levels, "tower depth n_max");
            s->add_option("--N", f.N, "tower precision");
            s->add_option("--trials", f.trials, "random trials per Fitting lemma");
            s->add_option("--instances", f.instances, "generated complexes per suite");
            continue;
        }
        if (name == "fitting" || name == "complex") continue;
        s->add_option("--spec", f.spec, "field: zeta:m, inline JSON or a JSON file");
        s->add_option("--S", f.S, "places, e.g. inf,3");
        s->add_option("--T", f.T, "auxiliary primes, e.g. 7");
        s->add_option("--r", f.r, "non-positive integer");
        if (name == "theta") continue;
        s->add_option("--p", f.p, "odd prime");
        s->add_option("--N", f.N, "precision exponent");
        if (name == "tower") s->add_option("--levels", f.levels, "n_max");
        if (name == "verify") s->add_option("--theta", f.theta, "explicit element {residue: coeff} replacing theta");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kPrecondition;
    }

    std::string cmd;
    for (const auto& [name, s] : subs)
        if (s->parsed()) cmd = name;
    try {
        const Outcome o = f.replay.empty() ? commands().at(cmd)(build_input(cmd, f, *subs[cmd])) : replay(cmd, f.replay);
        return emit(o, f.out);
    } catch (const IntegralityError& e) {
        std::cerr << "check failed at layer " << e.layer() << ": " << e.what() << '\n';
        return kCheckFailed;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return kPrecondition;
    } catch (const DivisionByNonUnit& e) {
        std::cerr << "precondition: " << e.what() << '\n';
        return kPrecondition;
    } catch (const SchemaError& e) {
        std::cerr << "input: " << e.what() << '\n';
        return kSchema;
    } catch (const json::exception& e) {
        std::cerr << "input: " << e.what() << '\n';
        return kSchema;
    }
}
