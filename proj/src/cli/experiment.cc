#include "qowf/cli/experiment.h"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "qowf/cli/verify.h"
#include "qowf/classical/function_json.h"
#include "qowf/classical/zoo.h"
#include "qowf/il/classical_sampler.h"
#include "qowf/il/quantum_sampler.h"
#include "qowf/il/schedule.h"
#include "qowf/reductions/sampler.h"
#include "qowf/reductions/sd.h"
#include "qowf/util/bits.h"
#include "qowf/util/error.h"

namespace qowf {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string join_field(const std::string& where, const std::string& key) {
    return where.empty() ? key : where + "." + key;
}

// Strict view over a JSON object: unknown keys are rejected up front.
class ConfigView {
  public:
    ConfigView(const json& j, std::string where, const std::set<std::string>& allowed)
        : j_(j), where_(std::move(where)) {
        require(j.is_object(), "expected a JSON object", where_.empty() ? "config" : where_);
        for (const auto& [key, value] : j.items()) {
            require(allowed.count(key) != 0, "unknown field '" + key + "'", field(key));
        }
    }

    std::string field(const std::string& key) const { return join_field(where_, key); }
    bool has(const std::string& key) const { return j_.contains(key); }

    const json& at(const std::string& key) const {
        require(has(key), "missing field '" + key + "'", field(key));
        return j_.at(key);
    }

    std::uint64_t uint(const std::string& key, std::optional<std::uint64_t> fallback = {}) const {
        if (!has(key) && fallback) {
            return *fallback;
        }
        const json& v = at(key);
        require(v.is_number_unsigned() || (v.is_number_integer() && v.get<std::int64_t>() >= 0),
                "'" + key + "' must be a non-negative integer", field(key));
        return v.get<std::uint64_t>();
    }

    int integer(const std::string& key, std::optional<int> fallback = {}) const {
        if (!has(key) && fallback) {
            return *fallback;
        }
        const json& v = at(key);
        require(v.is_number_integer(), "'" + key + "' must be an integer", field(key));
        auto value = v.get<std::int64_t>();
        require(value >= -1000000 && value <= 1000000, "'" + key + "' out of range", field(key));
        return static_cast<int>(value);
    }

    double number(const std::string& key, std::optional<double> fallback = {}) const {
        if (!has(key) && fallback) {
            return *fallback;
        }
        const json& v = at(key);
        require(v.is_number(), "'" + key + "' must be a number", field(key));
        return v.get<double>();
    }

    std::string str(const std::string& key, std::optional<std::string> fallback = {}) const {
        if (!has(key) && fallback) {
            return *fallback;
        }
        const json& v = at(key);
        require(v.is_string(), "'" + key + "' must be a string", field(key));
        return v.get<std::string>();
    }

    bool flag(const std::string& key, bool fallback) const {
        if (!has(key)) {
            return fallback;
        }
        const json& v = at(key);
        require(v.is_boolean(), "'" + key + "' must be a boolean", field(key));
        return v.get<bool>();
    }

  private:
    const json& j_;
    std::string where_;
};

json rational_json(const Rational& r) { return to_string(r); }

json amplitude_json(Amplitude a) { return json::array({a.real(), a.imag()}); }

json profile_json(const ScheduleProfile& p) {
    json out;
    out["rounds"] = p.rounds;
    json ps = json::array();
    json qs = json::array();
    for (std::size_t t = 0; t < p.rounds.size(); ++t) {
        ps.push_back(rational_json(p.p[t]));
        qs.push_back(rational_json(p.q[t]));
    }
    out["p"] = ps;
    out["q"] = qs;
    out["leftover"] = rational_json(p.leftover);
    Rational total = p.leftover;
    for (const auto& q : p.q) {
        total += q;
    }
    out["telescoping_exact"] = total == 1;
    return out;
}

json cqs_json(const CqsReport& r) {
    return {{"fidelity", r.fidelity}, {"delta", r.delta}, {"epsilon", r.epsilon},
            {"bound", r.bound},       {"pass", r.pass}};
}

bool close(double a, double b) { return std::abs(a - b) <= kTolerance; }

std::uint64_t seed_of(const ConfigView& cfg, const Overrides& o) {
    return o.seed ? *o.seed : cfg.uint("seed", 0);
}

json base_report(const std::string& kind, std::uint64_t seed) {
    return {{"schema_version", kSchemaVersion}, {"kind", kind}, {"seed", seed}};
}

ClassicalFunction builtin_function(const json& ref, const std::string& where) {
    ConfigView v(ref, where, {"builtin", "n", "m", "value", "seed", "log_fanin"});
    std::string name = v.str("builtin");
    int n = v.integer("n");
    if (name == "identity") {
        return identity_function(n);
    }
    if (name == "constant") {
        return constant_function(n, v.integer("m"), v.uint("value", 0));
    }
    if (name == "parity") {
        return parity_function(n);
    }
    if (name == "bitrev") {
        return bit_reversal_function(n);
    }
    if (name == "random") {
        return random_function(n, v.integer("m"), v.uint("seed"));
    }
    if (name == "injective") {
        return random_injective_function(n, v.integer("m"), v.uint("seed"));
    }
    if (name == "regular") {
        return random_regular_function(n, v.integer("log_fanin"), v.uint("seed"));
    }
    fail("unknown builtin generator '" + name + "'", v.field("builtin"));
}

std::vector<int> parse_rounds(const ConfigView& cfg, const ClassicalFunction& f, int k_pad) {
    if (!cfg.has("schedule")) {
        return linear_descending_schedule(f.n(), k_pad);
    }
    const json& s = cfg.at("schedule");
    const std::string where = cfg.field("schedule");
    if (s.is_array()) {
        std::vector<int> rounds;
        for (std::size_t i = 0; i < s.size(); ++i) {
            require(s[i].is_number_integer(), "schedule entries must be integers",
                    where + "[" + std::to_string(i) + "]");
            rounds.push_back(s[i].get<int>());
        }
        return rounds;
    }
    ConfigView outer(s, where, {"offset"});
    ConfigView off(outer.at("offset"), outer.field("offset"), {"n", "step", "seed"});
    return offset_schedule(off.integer("n", f.n()), off.integer("step"), off.uint("seed", 0));
}

std::vector<std::uint64_t> image_list(const ConfigView& cfg, const ClassicalFunction& f) {
    std::vector<std::uint64_t> out;
    if (cfg.has("y")) {
        std::string bits = cfg.str("y");
        std::uint64_t y = parse_bits(bits, f.m(), cfg.field("y"));
        require(!f.preimage(y).empty(), "y is not in the image of f", cfg.field("y"));
        out.push_back(y);
        return out;
    }
    auto counts = f.image_counts();
    for (std::uint64_t y = 0; y < counts.size(); ++y) {
        if (counts[y] != 0) {
            out.push_back(y);
        }
    }
    return out;
}

ExperimentOutcome run_sample(const ConfigView& cfg, const fs::path& base, const Overrides& o) {
    const std::string kind = cfg.str("kind");
    const std::uint64_t seed = seed_of(cfg, o);
    ClassicalFunction f = resolve_function(cfg.at("function"), base, cfg.field("function"));
    InverterSpec inv = parse_inverter(cfg.at("inverter"), f, seed, cfg.field("inverter"));
    std::optional<double> delta;
    if (cfg.has("delta")) {
        delta = cfg.number("delta");
    }
    ExperimentOutcome out;
    out.report = base_report(kind, seed);
    out.report["function"] = {{"n", f.n()}, {"m", f.m()}};
    out.report["inverter"] = to_string(inv.kind);

    Amplitude per_input = 0.0;
    for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
        per_input += inv.profile[f(x)];
    }
    per_input /= static_cast<double>(f.domain_size());
    const double analytic = std::norm(per_input);

    SamplerResult res = kind == "t-qs" ? sampler_from_inverter(f, inv, delta)
                                       : dist_sampler_from_inverter(f, inv, delta);
    out.report["report"] = cqs_json(res.report);
    out.report["analytic_fidelity"] = analytic;
    if (kind == "t-distqs") {
        Amplitude weighted = 0.0;
        auto counts = f.image_counts();
        for (std::uint64_t y = 0; y < counts.size(); ++y) {
            weighted += static_cast<double>(counts[y]) * inv.profile[y];
        }
        weighted /= static_cast<double>(f.domain_size());
        out.report["image_weighted_fidelity"] = std::norm(weighted);
    }
    bool formula = close(res.report.fidelity, analytic);
    out.report["formula_match"] = formula;
    out.passed = formula && res.report.pass;
    out.summary.push_back(kind + ": fidelity " + std::to_string(res.report.fidelity) + ", bound " +
                          std::to_string(res.report.bound) + (out.passed ? " (pass)" : " (FAIL)"));
    return out;
}

ExperimentOutcome run_invert(const ConfigView& cfg, const fs::path& base, const Overrides& o) {
    const std::uint64_t seed = seed_of(cfg, o);
    ClassicalFunction f = resolve_function(cfg.at("function"), base, cfg.field("function"));
    InverterSpec inv = parse_inverter(cfg.at("inverter"), f, seed, cfg.field("inverter"));
    ExperimentOutcome out;
    out.report = base_report("inverter", seed);
    out.report["function"] = {{"n", f.n()}, {"m", f.m()}};
    out.report["inverter"] = to_string(inv.kind);
    json rows = json::array();
    if (inv.kind == InverterKind::GPerfect) {
        // Flag probability over uniform (h, r) against 1 - p_k.
        const int dbits = inv.family->descriptor_bits();
        for (auto y : image_list(cfg, f)) {
            std::uint64_t flagged = 0;
            for (std::uint64_t d = 0; d < (std::uint64_t{1} << dbits); ++d) {
                for (std::uint64_t r = 0; r < (std::uint64_t{1} << inv.k); ++r) {
                    flagged += g_invert(inv, y, d, r) ? 0 : 1;
                }
            }
            Rational flag = Rational(flagged) / Rational(BigInt(1) << (dbits + inv.k));
            Rational p = unique_hit_stats(f, y, inv.k, *inv.family).p;
            bool ok = flag == 1 - p;
            out.passed = out.passed && ok;
            rows.push_back({{"y", format_bits(y, f.m())},
                            {"p", rational_json(p)},
                            {"flag_probability", rational_json(flag)},
                            {"match", ok}});
        }
        out.report["k"] = inv.k;
        out.report["images"] = rows;
        out.summary.push_back(std::string("g-inverter flag check ") + (out.passed ? "pass" : "FAIL"));
        return out;
    }
    double worst = 0.0;
    for (auto y : image_list(cfg, f)) {
        Amplitude analytic = success_amplitude(inv, y);
        Amplitude simulated = measure_success_amplitude(inv, y);
        worst = std::max(worst, std::abs(analytic - simulated));
        rows.push_back({{"y", format_bits(y, f.m())},
                        {"analytic", amplitude_json(analytic)},
                        {"simulated", amplitude_json(simulated)}});
    }
    out.report["images"] = rows;
    out.report["max_deviation"] = worst;
    out.passed = worst <= kTolerance;
    out.summary.push_back(std::string(to_string(inv.kind)) + " inverter: max deviation " +
                          std::to_string(worst) + (out.passed ? " (pass)" : " (FAIL)"));
    return out;
}

ExperimentOutcome run_szk(const ConfigView& cfg, const fs::path& base, const Overrides& o) {
    const std::uint64_t seed = seed_of(cfg, o);
    const json& fam = cfg.at("family");
    require(fam.is_array() && !fam.empty(), "'family' must be a non-empty array", cfg.field("family"));
    std::vector<ClassicalFunction> circuits;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        circuits.push_back(
            resolve_function(fam[i], base, cfg.field("family") + "[" + std::to_string(i) + "]"));
    }
    ClassicalFunction fc = build_szk_candidate(circuits);
    InverterSpec inv = parse_inverter(cfg.at("inverter"), fc, seed, cfg.field("inverter"));
    std::optional<double> delta;
    if (cfg.has("delta")) {
        delta = cfg.number("delta");
    }
    SamplerResult res = dist_sampler_from_inverter(fc, inv, delta);
    Amplitude avg = 0.0;
    for (std::uint64_t x = 0; x < fc.domain_size(); ++x) {
        avg += inv.profile[fc(x)];
    }
    avg /= static_cast<double>(fc.domain_size());
    ExperimentOutcome out;
    out.report = base_report("szk", seed);
    out.report["candidate"] = function_to_json(fc);
    out.report["report"] = cqs_json(res.report);
    out.report["analytic_fidelity"] = std::norm(avg);
    out.report["formula_match"] = close(res.report.fidelity, std::norm(avg));
    out.passed = res.report.pass && close(res.report.fidelity, std::norm(avg));
    out.summary.push_back("szk candidate on " + std::to_string(fc.n()) + " bits: fidelity " +
                          std::to_string(res.report.fidelity) + (out.passed ? " (pass)" : " (FAIL)"));
    return out;
}

ILParams il_params(const ConfigView& cfg, const ClassicalFunction& f) {
    ILParams p;
    p.delta = cfg.number("delta", 0.1);
    p.k_pad = cfg.integer("k_pad", default_k_pad(f.n()));
    if (cfg.has("reps")) {
        p.reps = cfg.uint("reps");
    }
    p.rounds = parse_rounds(cfg, f, p.k_pad);
    validate(p);
    return p;
}

json params_json(const ILParams& p) {
    json j = {{"delta", p.delta}, {"k_pad", p.k_pad}, {"rounds", p.rounds}};
    j["reps"] = p.reps ? json(*p.reps) : json("default");
    return j;
}

ExperimentOutcome run_il_classical(const ConfigView& cfg, const fs::path& base,
                                   const Overrides& o) {
    const std::uint64_t seed = seed_of(cfg, o);
    ClassicalFunction f = resolve_function(cfg.at("function"), base, cfg.field("function"));
    ILParams params = il_params(cfg, f);
    std::string mode = o.mode ? *o.mode : cfg.str("mode", "exact");
    require(mode == "exact" || mode == "montecarlo", "mode must be exact or montecarlo", "mode");
    ExperimentOutcome out;
    out.report = base_report("il-classical", seed);
    out.report["params"] = params_json(params);
    out.report["mode"] = mode;
    json profiles = json::object();
    bool telescoping = true;
    for (auto y : image_list(cfg, f)) {
        ScheduleProfile prof = p_profile(f, y, params.rounds);
        json pj = profile_json(prof);
        telescoping = telescoping && pj["telescoping_exact"].get<bool>();
        profiles[format_bits(y, f.m())] = pj;
    }
    out.report["profiles"] = profiles;

    SamplerTvReport tv;
    if (mode == "exact") {
        tv = sampler_tv_report(f, params, TvMode::Exact);
    } else {
        tv = sampler_tv_report(f, params, TvMode::MonteCarlo, seed, cfg.uint("samples", 100000));
    }
    json images = json::array();
    for (const auto& row : tv.images) {
        json r = {{"y", format_bits(row.y, f.m())},
                  {"tv", row.tv},
                  {"tv_on_success", row.tv_on_success},
                  {"failure", row.failure}};
        if (row.tv_exact) {
            r["tv_exact"] = rational_json(*row.tv_exact);
        }
        images.push_back(r);
    }
    json tvj = {{"tv", tv.tv}, {"images", images}};
    if (tv.tv_exact) {
        tvj["tv_exact"] = rational_json(*tv.tv_exact);
    }
    if (tv.tv_injective_hash) {
        tvj["tv_injective_hash"] = rational_json(*tv.tv_injective_hash);
    }
    if (mode == "montecarlo") {
        tvj["samples"] = tv.samples;
        tvj["noise_band"] = tv.noise_band;
    }
    out.report["sampler_tv"] = tvj;
    out.passed = telescoping && (!tv.tv_injective_hash || *tv.tv_injective_hash == 0);
    out.summary.push_back("il-classical (" + mode + "): TV " + std::to_string(tv.tv) +
                          (out.passed ? " (pass)" : " (FAIL)"));
    return out;
}

ExperimentOutcome run_il_quantum(const ConfigView& cfg, const fs::path& base, const Overrides& o) {
    const std::uint64_t seed = seed_of(cfg, o);
    ClassicalFunction f = resolve_function(cfg.at("function"), base, cfg.field("function"));
    ILParams params = il_params(cfg, f);
    GInverterSet g(f, params.rounds);
    ExperimentOutcome out;
    out.report = base_report("il-quantum", seed);
    out.report["params"] = params_json(params);
    json images = json::array();
    for (auto y : image_list(cfg, f)) {
        json img = {{"y", format_bits(y, f.m())}};
        json pqs = json::array();
        json pap = json::array();
        for (std::size_t t = 0; t < params.rounds.size(); ++t) {
            PqsResult pr = pqs_apply(g.at(t), y);
            PapResult ar = pap_apply(g.at(t), y);
            bool pqs_ok = close(pr.success_amplitude, pr.expected_amplitude);
            bool pap_ok = close(ar.weight_success, to_double(ar.p)) &&
                          close(ar.weight_failure, 1.0 - to_double(ar.p));
            out.passed = out.passed && pqs_ok && pap_ok;
            pqs.push_back({{"k", params.rounds[t]},
                           {"amplitude", pr.success_amplitude},
                           {"sqrt_p", pr.sqrt_p},
                           {"expected", pr.expected_amplitude},
                           {"collision_deficit", pr.collision_deficit},
                           {"match", pqs_ok}});
            pap.push_back({{"k", params.rounds[t]},
                           {"weight_success", ar.weight_success},
                           {"weight_failure", ar.weight_failure},
                           {"p", rational_json(ar.p)},
                           {"match", pap_ok}});
        }
        img["pqs"] = pqs;
        img["pap"] = pap;

        ApResult ap = ap_apply(g, y);
        bool ap_ok = close(ap.leftover, to_double(ap.profile.leftover));
        for (std::size_t t = 0; t < ap.coefficients.size(); ++t) {
            ap_ok = ap_ok && close(ap.coefficients[t], to_double(ap.profile.q[t]));
        }
        img["profile"] = profile_json(ap.profile);
        img["ap"] = {{"coefficients", ap.coefficients}, {"leftover", ap.leftover}, {"match", ap_ok}};

        QsResult qs = qs_apply(g, y);
        double spread = 0.0;
        for (double a : qs.preimage_amplitudes) {
            spread = std::max(spread, std::abs(a - qs.preimage_amplitudes.front()));
        }
        bool qs_ok = close(qs.success_amplitude, qs.expected) && spread <= kTolerance;
        img["qs"] = {{"amplitude", qs.success_amplitude},
                     {"analytic", qs.analytic},
                     {"expected", qs.expected},
                     {"collision_deficit", qs.collision_deficit},
                     {"preimage_amplitudes", qs.preimage_amplitudes},
                     {"uniform", spread <= kTolerance},
                     {"match", qs_ok}};
        ApAdjointCheck adj = ap_adjoint_identity(g, y);
        bool adj_ok = close(adj.simulated, adj.analytic);
        img["ap_adjoint"] = {{"simulated", adj.simulated}, {"analytic", adj.analytic}, {"match", adj_ok}};
        out.passed = out.passed && ap_ok && qs_ok && adj_ok;
        images.push_back(img);
        out.summary.push_back("y=" + format_bits(y, f.m()) + ": QS amplitude " +
                              std::to_string(qs.success_amplitude) + ", analytic " +
                              std::to_string(qs.analytic));
    }
    out.report["images"] = images;
    out.summary.push_back(std::string("il-quantum checks ") + (out.passed ? "pass" : "FAIL"));
    return out;
}

ExperimentOutcome run_lemma_pk(const ConfigView& cfg, const fs::path& base, const Overrides& o) {
    const std::uint64_t seed = seed_of(cfg, o);
    ClassicalFunction f = resolve_function(cfg.at("function"), base, cfg.field("function"));
    std::uint64_t n_eff = cfg.uint("n_effective", std::max<std::uint64_t>(
                                                      2, std::uint64_t{1} << ceil_log2(f.n())));
    std::vector<int> js;
    if (cfg.has("j")) {
        const json& arr = cfg.at("j");
        require(arr.is_array(), "'j' must be an array", cfg.field("j"));
        for (const auto& v : arr) {
            require(v.is_number_integer(), "'j' entries must be integers", cfg.field("j"));
            js.push_back(v.get<int>());
        }
    } else {
        js = linear_descending_schedule(f.n(), floor_log2(n_eff));
    }
    ExperimentOutcome out;
    out.report = base_report("lemma-pk", seed);
    json images = json::array();
    for (auto y : image_list(cfg, f)) {
        LemmaPkReport rep = lemma_pk_report(f, y, n_eff, js);
        json rows = json::array();
        for (const auto& row : rep.rows) {
            rows.push_back({{"j", row.j},
                            {"p", rational_json(row.p)},
                            {"upper", row.upper},
                            {"lower", row.lower},
                            {"in_scope", row.in_scope},
                            {"upper_ok", row.upper_ok},
                            {"lower_slack", row.lower_slack}});
            if (row.in_scope && !row.upper_ok) {
                out.passed = false;
            }
        }
        images.push_back({{"y", format_bits(y, f.m())},
                          {"k", rep.k},
                          {"n_effective", rep.n_effective},
                          {"preimage_size", rep.preimage_size},
                          {"rows", rows}});
    }
    out.report["images"] = images;
    out.summary.push_back(std::string("lemma-pk upper bound ") + (out.passed ? "holds" : "VIOLATED"));
    return out;
}

ExperimentOutcome run_sd(const ConfigView& cfg, const fs::path& base, const Overrides& o) {
    const std::uint64_t seed = seed_of(cfg, o);
    SDInstance inst{resolve_function(cfg.at("c0"), base, cfg.field("c0")),
                    resolve_function(cfg.at("c1"), base, cfg.field("c1")), cfg.number("alpha"),
                    cfg.number("beta")};
    SDReport r = sd_decide(inst, cfg.uint("trials", 400), seed);
    ExperimentOutcome out;
    out.report = base_report("sd", seed);
    json j = {{"tv", rational_json(r.tv)},
              {"tv_value", to_double(r.tv)},
              {"fidelity", r.fidelity},
              {"acceptance", r.acceptance},
              {"far_max", r.far_max},
              {"close_min", r.close_min},
              {"threshold", r.threshold},
              {"separated", r.separated},
              {"trials", r.trials},
              {"accepted", r.accepted},
              {"empirical_rate", r.empirical_rate},
              {"truth", to_string(r.truth)},
              {"verdict", to_string(r.verdict)}};
    if (r.acceptance_circuit) {
        j["acceptance_circuit"] = *r.acceptance_circuit;
    }
    out.report["report"] = j;
    out.passed = r.verdict == r.truth;
    out.summary.push_back(std::string("sd verdict ") + to_string(r.verdict) + ", truth " +
                          to_string(r.truth));
    return out;
}

ExperimentOutcome run_verify(const json& config, const Overrides&) {
    VerifyOptions opts;
    if (!config.is_null()) {
        ConfigView cfg(config, "", {"kind", "modules", "inject_fault", "seed"});
        opts.selector = cfg.str("modules", "all");
        opts.inject_fault = cfg.flag("inject_fault", false);
    }
    auto results = verify_suite(opts);
    ExperimentOutcome out;
    out.report = base_report("verify", 0);
    json checks = json::array();
    for (const auto& c : results) {
        checks.push_back(
            {{"module", c.module}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
        out.passed = out.passed && c.passed;
        out.summary.push_back(std::string(c.passed ? "PASS " : "FAIL ") + c.module + "/" + c.name +
                              (c.detail.empty() ? "" : ": " + c.detail));
    }
    out.report["checks"] = checks;
    out.report["passed"] = out.passed;
    return out;
}

}  // namespace

json load_json(const fs::path& path, const std::string& field) {
    std::ifstream in(path);
    if (!in) {
        fail("cannot read '" + path.string() + "'", field);
    }
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail("malformed JSON in '" + path.string() + "': " + e.what(), field);
    }
}

ClassicalFunction resolve_function(const json& ref, const fs::path& base, const std::string& field) {
    json body;
    if (ref.is_string()) {
        body = load_json(base / ref.get<std::string>(), field);
    } else {
        require(ref.is_object(), "function reference must be a path or an object", field);
        if (ref.contains("zoo")) {
            ConfigView v(ref, field, {"zoo"});
            std::string name = v.str("zoo");
            for (const auto& inst : instance_zoo()) {
                if (inst.name == name) {
                    return inst.f;
                }
            }
            fail("unknown zoo instance '" + name + "'", v.field("zoo"));
        }
        if (ref.contains("builtin")) {
            return builtin_function(ref, field);
        }
        body = ref;
    }
    try {
        return function_from_json(body);
    } catch (const Error& e) {
        throw Error(e.kind(), e.what(), join_field(field, e.field()));
    }
}

InverterSpec parse_inverter(const json& desc, const ClassicalFunction& f, std::uint64_t seed,
                            const std::string& where) {
    ConfigView v(desc, where,
                 {"kind", "target", "profile", "k", "realify", "amplify", "canonicalize"});
    const std::string kind = v.str("kind");
    InverterSpec inv = [&]() -> InverterSpec {
        if (kind == "perfect") {
            return build_perfect_inverter(f);
        }
        if (kind == "distributional") {
            return build_dist_inverter(f);
        }
        if (kind == "g") {
            int k = v.integer("k");
            require(k >= 1 && ToeplitzAffineHash::descriptor_bits(f.n(), k) <=
                                   kMaxExhaustiveDescriptorBits,
                    "k out of range for an exhaustive family", v.field("k"));
            return build_g_inverter(f, k, HashFamily::exhaustive(f.n(), k));
        }
        const json& prof = v.at("profile");
        const std::string pfield = v.field("profile");
        if (kind == "noisy") {
            std::string target = v.str("target", "preimage");
            require(target == "preimage" || target == "preimage-superposition",
                    "target must be preimage or preimage-superposition", v.field("target"));
            std::vector<double> a;
            if (prof.is_object()) {
                ConfigView pv(prof, pfield, {"delta", "seed"});
                a = seeded_noisy_profile(f, pv.number("delta"), pv.uint("seed", seed));
            } else {
                require(prof.is_array(), "profile must be an array or {delta, seed}", pfield);
                for (std::size_t i = 0; i < prof.size(); ++i) {
                    require(prof[i].is_number(), "profile entries must be numbers",
                            pfield + "[" + std::to_string(i) + "]");
                    a.push_back(prof[i].get<double>());
                }
            }
            return build_noisy_inverter(f, std::move(a),
                                        target == "preimage" ? InverterTarget::Preimage
                                                             : InverterTarget::PreimageSuperposition);
        }
        if (kind == "phased") {
            require(prof.is_array(), "profile must be an array", pfield);
            std::vector<Amplitude> c;
            for (std::size_t i = 0; i < prof.size(); ++i) {
                const json& e = prof[i];
                std::string ef = pfield + "[" + std::to_string(i) + "]";
                if (e.is_number()) {
                    c.emplace_back(e.get<double>());
                } else {
                    require(e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number(),
                            "entries must be numbers or [re, im] pairs", ef);
                    c.emplace_back(e[0].get<double>(), e[1].get<double>());
                }
            }
            return build_phased_inverter(f, std::move(c));
        }
        fail("unknown inverter kind '" + kind + "'", v.field("kind"));
    }();
    if (v.flag("realify", false)) {
        inv = realify(inv);
    }
    if (v.flag("amplify", false)) {
        inv = amplify_positivity(inv, f);
    }
    if (v.flag("canonicalize", false)) {
        inv = canonicalize_garbage(inv, f);
    }
    return inv;
}

ExperimentOutcome run_experiment(const std::string& command, const json& config,
                                 const fs::path& base, const Overrides& o) {
    if (command == "verify") {
        return run_verify(config, o);
    }
    static const std::set<std::string> kCommon{"kind", "seed", "function"};
    require(config.is_object(), "config must be a JSON object", "config");
    require(config.contains("kind") && config["kind"].is_string(), "missing string field 'kind'",
            "kind");
    const std::string kind = config["kind"].get<std::string>();
    auto keys = [&](std::initializer_list<const char*> extra) {
        std::set<std::string> s = kCommon;
        s.insert(extra.begin(), extra.end());
        return s;
    };
    if (command == "sample") {
        require(kind == "t-qs" || kind == "t-distqs", "sample runs t-qs or t-distqs", "kind");
        return run_sample(ConfigView(config, "", keys({"inverter", "delta"})), base, o);
    }
    if (command == "invert") {
        require(kind == "inverter", "invert runs kind 'inverter'", "kind");
        return run_invert(ConfigView(config, "", keys({"inverter", "y"})), base, o);
    }
    if (command == "reduce") {
        require(kind == "szk", "reduce runs kind 'szk'", "kind");
        return run_szk(ConfigView(config, "", {"kind", "seed", "family", "inverter", "delta"}), base,
                       o);
    }
    if (command == "il") {
        if (kind == "il-classical") {
            return run_il_classical(
                ConfigView(config, "",
                           keys({"schedule", "reps", "k_pad", "delta", "mode", "samples", "y"})),
                base, o);
        }
        if (kind == "il-quantum") {
            return run_il_quantum(
                ConfigView(config, "", keys({"schedule", "reps", "k_pad", "delta", "y"})), base, o);
        }
        if (kind == "lemma-pk") {
            return run_lemma_pk(ConfigView(config, "", keys({"n_effective", "j", "y"})), base, o);
        }
        fail("il runs il-classical, il-quantum or lemma-pk", "kind");
    }
    if (command == "sd") {
        require(kind == "sd", "sd runs kind 'sd'", "kind");
        return run_sd(ConfigView(config, "", {"kind", "seed", "c0", "c1", "alpha", "beta", "trials"}),
                      base, o);
    }
    fail("unknown subcommand '" + command + "'", "command");
}

void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            fail("cannot write '" + tmp.string() + "'", "out");
        }
        out << content;
        out.flush();
        if (!out) {
            fail("write to '" + tmp.string() + "' failed", "out");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        fail("cannot rename report into '" + path.string() + "': " + ec.message(), "out");
    }
}

json error_json(const std::string& kind, const std::string& field, const std::string& message) {
    return {{"error", {{"kind", kind}, {"field", field}, {"message", message}}}};
}

}  // namespace qowf
