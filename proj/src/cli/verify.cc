#include "qowf/cli/verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "qowf/cli/experiment.h"
#include "qowf/classical/function_json.h"
#include "qowf/classical/zoo.h"
#include "qowf/hashing/toeplitz.h"
#include "qowf/il/classical_sampler.h"
#include "qowf/il/quantum_sampler.h"
#include "qowf/il/schedule.h"
#include "qowf/inverters/inverter.h"
#include "qowf/reductions/sampler.h"
#include "qowf/reductions/sd.h"
#include "qowf/sim/gate.h"
#include "qowf/sim/ops.h"
#include "qowf/util/bits.h"
#include "qowf/util/error.h"
#include "qowf/util/rational.h"
#include "qowf/util/rng.h"

namespace qowf {

namespace {

constexpr double kFaultAngle = 0.05;

using CheckFn = std::function<std::string()>;  // empty string on success

struct Check {
    std::string module;
    std::string name;
    CheckFn run;
};

std::string describe(double got, double want) {
    std::ostringstream os;
    os.precision(12);
    os << "got " << got << ", expected " << want;
    return os.str();
}

bool close(double a, double b) { return std::abs(a - b) <= kTolerance; }

StateVector random_state(const RegisterLayout& layout, CounterRng rng) {
    std::vector<Amplitude> amps(layout.dimension());
    double norm = 0.0;
    for (std::size_t i = 0; i < amps.size(); ++i) {
        amps[i] = Amplitude(rng.uniform(2 * i) - 0.5, rng.uniform(2 * i + 1) - 0.5);
        norm += std::norm(amps[i]);
    }
    for (auto& a : amps) {
        a /= std::sqrt(norm);
    }
    return StateVector(layout, std::move(amps));
}

std::vector<ZooInstance> zoo_where(const std::function<bool(const ClassicalFunction&)>& pred) {
    std::vector<ZooInstance> out;
    for (auto& inst : instance_zoo()) {
        if (pred(inst.f)) {
            out.push_back(inst);
        }
    }
    return out;
}

std::string check_gate_unitary(const GateOp& op) {
    switch (op.kind()) {
        case GateOp::Kind::DenseUnitary: {
            double d = op.matrix().unitarity_defect();
            return d <= kTolerance ? "" : "dense gate defect " + std::to_string(d);
        }
        case GateOp::Kind::Controlled:
            return check_gate_unitary(op.inner());
        case GateOp::Kind::Permutation: {
            std::vector<bool> seen(op.table().size(), false);
            for (auto v : op.table()) {
                if (v >= seen.size() || seen[v]) {
                    return "permutation table is not a bijection";
                }
                seen[v] = true;
            }
            return "";
        }
    }
    return "";
}

// --- core-sim -------------------------------------------------------------

std::vector<Check> core_sim_checks() {
    std::vector<Check> out;
    out.push_back({"core-sim", "norm-preservation", [] {
                       RegisterLayout layout({{"a", 3}, {"b", 1}, {"c", 2}});
                       StateVector s = random_state(layout, CounterRng(1));
                       Circuit c{gates::hadamard(layout, "a"), gates::rotation(layout, "b", 0.3),
                                 gates::xor_into(layout, "c", "a"),
                                 GateOp::controlled("b", 1, gates::hadamard(layout, "c")),
                                 gates::swap(layout, {"a"}, {"b", "c"}),
                                 gates::pauli_x(layout, "a")};
                       for (const auto& g : c) {
                           s = apply_gate(s, g);
                           if (std::abs(s.norm_squared() - 1.0) > kTolerance) {
                               return std::string("norm drifted to ") + std::to_string(s.norm_squared());
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"core-sim", "permutation-inverse", [] {
                       RegisterLayout layout({{"a", 3}, {"b", 2}});
                       StateVector s = random_state(layout, CounterRng(2));
                       GateOp p = gates::classical(layout, {"a", "b"}, [](std::span<std::uint64_t> v) {
                           v[0] = (v[0] + 3 * v[1] + 1) % 8;
                       });
                       StateVector back = apply_gate(apply_gate(s, p), adjoint(p));
                       for (std::uint64_t i = 0; i < s.dimension(); ++i) {
                           if (back[i] != s[i]) {
                               return std::string("amplitude changed at index ") + std::to_string(i);
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"core-sim", "swap-test-agreement", [] {
                       RegisterLayout layout({{"s", 3}});
                       for (std::uint64_t t = 0; t < 100; ++t) {
                           StateVector a = random_state(layout, CounterRng(100, 2 * t));
                           StateVector b = random_state(layout, CounterRng(100, 2 * t + 1));
                           double x = swap_test_prob(a, b, SwapTestMode::Analytic);
                           double y = swap_test_prob(a, b, SwapTestMode::Circuit);
                           if (!close(x, y)) {
                               return "pair " + std::to_string(t) + ": " + describe(y, x);
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"core-sim", "encode-decode-roundtrip", [] {
                       RegisterLayout layout({{"a", 5}, {"b", 4}, {"c", 3}});
                       for (std::uint64_t i = 0; i < layout.dimension(); ++i) {
                           if (layout.encode(layout.decode(i)) != i) {
                               return "index " + std::to_string(i) + " does not round-trip";
                           }
                       }
                       return std::string();
                   }});
    return out;
}

// --- classical-fn ---------------------------------------------------------

std::vector<Check> classical_checks() {
    std::vector<Check> out;
    out.push_back({"classical-fn", "sample-state-overlap", [] {
                       auto zoo = instance_zoo();
                       for (const auto& a : zoo) {
                           StateVector sa = quantum_sample_state(a.f);
                           if (std::abs(sa.norm_squared() - 1.0) > kTolerance) {
                               return a.name + ": quantum sample not normalized";
                           }
                           for (const auto& b : zoo) {
                               if (a.f.m() != b.f.m()) {
                                   continue;
                               }
                               double ip = inner_product(sa, quantum_sample_state(b.f)).real();
                               double cf = classical_fidelity(output_distribution(a.f),
                                                              output_distribution(b.f));
                               if (!close(ip, cf)) {
                                   return a.name + " vs " + b.name + ": " + describe(ip, cf);
                               }
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"classical-fn", "fidelity-tv-sandwich", [] {
                       for (std::uint64_t t = 0; t < 50; ++t) {
                           Distribution d0 = output_distribution(random_function(4, 3, 500 + 2 * t));
                           Distribution d1 = output_distribution(random_function(4, 3, 501 + 2 * t));
                           double f = classical_fidelity(d0, d1);
                           double tv = to_double(tv_distance(d0, d1));
                           if (1.0 - f > tv + kTolerance ||
                               tv > std::sqrt(std::max(0.0, 1.0 - f * f)) + kTolerance) {
                               return "pair " + std::to_string(t) + " violates the sandwich";
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"classical-fn", "preimage-sizes-sum", [] {
                       for (const auto& inst : instance_zoo()) {
                           std::uint64_t sum = 0;
                           for (auto c : inst.f.image_counts()) {
                               sum += c;
                           }
                           if (sum != inst.f.domain_size()) {
                               return inst.name + ": preimage sizes sum to " + std::to_string(sum);
                           }
                       }
                       return std::string();
                   }});
    return out;
}

// --- hashing --------------------------------------------------------------

std::vector<Check> hashing_checks() {
    std::vector<Check> out;
    out.push_back({"hashing", "p-monotone-above-log-preimage", [] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) { return f.n() <= 4; })) {
                           auto counts = inst.f.image_counts();
                           for (std::uint64_t y = 0; y < counts.size(); ++y) {
                               if (counts[y] == 0) {
                                   continue;
                               }
                               auto pre = inst.f.preimage(y);
                               Rational prev = 2;
                               for (int k = std::max(1, ceil_log2(pre.size()));; ++k) {
                                   if (ToeplitzAffineHash::descriptor_bits(inst.f.n(), k) > 13) {
                                       break;
                                   }
                                   Rational p = unique_hit_stats(pre, k, HashFamily::exhaustive(inst.f.n(), k)).p;
                                   if (p > prev) {
                                       return inst.name + ": p_k increases at k = " + std::to_string(k);
                                   }
                                   prev = p;
                               }
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"hashing", "union-bound", [] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) { return f.n() <= 4; })) {
                           auto counts = inst.f.image_counts();
                           for (std::uint64_t y = 0; y < counts.size(); ++y) {
                               if (counts[y] == 0) {
                                   continue;
                               }
                               auto pre = inst.f.preimage(y);
                               for (int k = 1; k <= 3; ++k) {
                                   Rational p = unique_hit_stats(pre, k, HashFamily::exhaustive(inst.f.n(), k)).p;
                                   Rational bound = std::min(Rational(1), Rational(pre.size()) * inverse_pow2(k));
                                   if (p > bound) {
                                       return inst.name + ": p_k above the union bound";
                                   }
                               }
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"hashing", "pairwise-independence", [] {
                       for (int n = 1; n <= 4; ++n) {
                           for (int k = 1; k <= 2; ++k) {
                               auto rep = pairwise_independence_report(HashFamily::exhaustive(n, k));
                               if (!rep.pairwise_independent) {
                                   return "n=" + std::to_string(n) + ", k=" + std::to_string(k) +
                                          ": deviation " + to_string(rep.max_deviation);
                               }
                           }
                       }
                       return std::string();
                   }});
    return out;
}

// --- inverters ------------------------------------------------------------

InverterSpec maybe_faulty(InverterSpec inv, bool fault) {
    return fault ? inject_fault(inv, kFaultAngle) : inv;
}

std::vector<Check> inverter_checks(bool fault) {
    std::vector<Check> out;
    out.push_back({"inverters", "gates-unitary", [] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) { return f.n() <= 4; })) {
                           std::vector<InverterSpec> specs{build_dist_inverter(inst.f)};
                           std::vector<double> half(std::size_t{1} << inst.f.m(), 0.5);
                           specs.push_back(build_noisy_inverter(inst.f, half, InverterTarget::PreimageSuperposition));
                           if (inst.f.injective()) {
                               specs.push_back(build_perfect_inverter(inst.f));
                               specs.push_back(build_noisy_inverter(inst.f, half, InverterTarget::Preimage));
                           }
                           for (const auto& s : specs) {
                               RegisterLayout layout = inverter_layout(s);
                               for (const auto& g : realize(s, default_wiring(s), layout)) {
                                   std::string err = check_gate_unitary(g);
                                   if (!err.empty()) {
                                       return inst.name + " (" + to_string(s.kind) + "): " + err;
                                   }
                               }
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"inverters", "perfect-sampler-composition", [fault] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) {
                                return f.injective() && f.n() <= 6;
                            })) {
                           auto inv = maybe_faulty(build_perfect_inverter(inst.f), fault);
                           double fid = sampler_from_inverter(inst.f, inv).report.fidelity;
                           if (!close(fid, 1.0)) {
                               return inst.name + ": " + describe(fid, 1.0);
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"inverters", "positivity-amplifier", [fault] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) {
                                return f.injective() && f.n() <= 3 && f.m() <= 3;
                            })) {
                           CounterRng rng(77);
                           std::vector<Amplitude> c;
                           for (std::uint64_t y = 0; y < (std::uint64_t{1} << inst.f.m()); ++y) {
                               double r = 0.7 + 0.3 * rng.uniform(2 * y);
                               double th = 2.0 * M_PI * rng.uniform(2 * y + 1);
                               c.emplace_back(r * std::cos(th), r * std::sin(th));
                           }
                           auto base = maybe_faulty(build_phased_inverter(inst.f, c), fault);
                           auto amp = amplify_positivity(realify(base), inst.f);
                           for (std::uint64_t x = 0; x < inst.f.domain_size(); ++x) {
                               std::uint64_t y = inst.f(x);
                               double re = c[y].real();
                               Amplitude got = measure_success_amplitude(amp, y);
                               if (std::abs(got - Amplitude(re * re)) > kTolerance) {
                                   return inst.name + ": " + describe(got.real(), re * re);
                               }
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"inverters", "g-flag-probability", [] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) { return f.n() <= 3; })) {
                           for (int k = 1; k <= 2; ++k) {
                               auto g = build_g_inverter(inst.f, k, HashFamily::exhaustive(inst.f.n(), k));
                               const int dbits = g.family->descriptor_bits();
                               auto counts = inst.f.image_counts();
                               for (std::uint64_t y = 0; y < counts.size(); ++y) {
                                   if (counts[y] == 0) {
                                       continue;
                                   }
                                   std::uint64_t flagged = 0;
                                   for (std::uint64_t d = 0; d < (std::uint64_t{1} << dbits); ++d) {
                                       for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
                                           flagged += g_invert(g, y, d, r) ? 0 : 1;
                                       }
                                   }
                                   Rational flag = Rational(flagged) / Rational(BigInt(1) << (dbits + k));
                                   if (flag != 1 - unique_hit_stats(inst.f, y, k, *g.family).p) {
                                       return inst.name + ": flag probability differs from 1 - p_k";
                                   }
                               }
                           }
                       }
                       return std::string();
                   }});
    return out;
}

// --- reductions -----------------------------------------------------------

std::vector<Check> reduction_checks(bool fault) {
    std::vector<Check> out;
    out.push_back({"reductions", "noisy-bound-chain", [] {
                       auto zoo = zoo_where([](const ClassicalFunction& f) { return f.injective() && f.n() <= 4; });
                       std::uint64_t seed = 0;
                       for (double delta : {0.05, 0.1, 0.2}) {
                           for (const auto& inst : zoo) {
                               auto a = seeded_noisy_profile(inst.f, delta, ++seed);
                               auto inv = build_noisy_inverter(inst.f, a, InverterTarget::Preimage);
                               auto rep = sampler_from_inverter(inst.f, inv, delta).report;
                               double avg = 0.0;
                               for (std::uint64_t x = 0; x < inst.f.domain_size(); ++x) {
                                   avg += a[inst.f(x)];
                               }
                               avg /= static_cast<double>(inst.f.domain_size());
                               if (!close(rep.fidelity, avg * avg)) {
                                   return inst.name + ": " + describe(rep.fidelity, avg * avg);
                               }
                               if (!rep.pass) {
                                   return inst.name + ": fidelity below (1 - delta)^2";
                               }
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"reductions", "dist-perfect-fidelity", [fault] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) { return f.n() <= 4; })) {
                           auto inv = maybe_faulty(build_dist_inverter(inst.f), fault);
                           double fid = dist_sampler_from_inverter(inst.f, inv).report.fidelity;
                           if (!close(fid, 1.0)) {
                               return inst.name + ": " + describe(fid, 1.0);
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"reductions", "dist-fidelity-two-ways", [] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) { return f.n() <= 4; })) {
                           auto a = seeded_noisy_profile(inst.f, 0.1, 9);
                           Rational per_input = 0;
                           for (std::uint64_t x = 0; x < inst.f.domain_size(); ++x) {
                               per_input += Rational(a[inst.f(x)]);
                           }
                           Rational weighted = 0;
                           auto counts = inst.f.image_counts();
                           for (std::uint64_t y = 0; y < counts.size(); ++y) {
                               weighted += Rational(counts[y]) * Rational(a[y]);
                           }
                           if (per_input != weighted) {
                               return inst.name + ": image-weighted and per-input sums differ";
                           }
                           auto inv = build_noisy_inverter(inst.f, a, InverterTarget::PreimageSuperposition);
                           double fid = dist_sampler_from_inverter(inst.f, inv).report.fidelity;
                           double avg = to_double(per_input) / static_cast<double>(inst.f.domain_size());
                           if (!close(fid, avg * avg)) {
                               return inst.name + ": " + describe(fid, avg * avg);
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"reductions", "sd-swap-acceptance", [] {
                       auto zoo = instance_zoo();
                       for (const auto& a : zoo) {
                           for (const auto& b : zoo) {
                               if (a.f.m() != b.f.m() || a.f.m() > 4) {
                                   continue;
                               }
                               double fid = classical_fidelity(output_distribution(a.f), output_distribution(b.f));
                               double q = swap_test_prob(quantum_sample_state(a.f), quantum_sample_state(b.f),
                                                         SwapTestMode::Circuit);
                               if (!close(q, 0.5 + 0.5 * fid * fid)) {
                                   return a.name + " vs " + b.name + ": " + describe(q, 0.5 + 0.5 * fid * fid);
                               }
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"reductions", "sd-verdicts", [] {
                       for (std::uint64_t t = 0; t < 10; ++t) {
                           // Values below 8, so adding 8 gives a disjoint support.
                           ClassicalFunction c0(4, 4, random_function(4, 3, 900 + t).table());
                           std::vector<std::uint64_t> near = c0.table();
                           std::vector<std::uint64_t> far = c0.table();
                           near[t] ^= 1;
                           for (auto& v : far) {
                               v += 8;
                           }
                           for (const auto& c1 : {ClassicalFunction(4, 4, near), ClassicalFunction(4, 4, far)}) {
                               SDInstance inst{c0, c1, 0.9, 0.1};
                               auto r = sd_decide(inst, 400, 31 + t);
                               if (r.verdict != r.truth) {
                                   return "instance " + std::to_string(t) + " (" + to_string(r.truth) +
                                          ") misclassified";
                               }
                           }
                       }
                       return std::string();
                   }});
    return out;
}

// --- il-quantum -----------------------------------------------------------

std::vector<Check> il_checks() {
    std::vector<Check> out;
    out.push_back({"il-quantum", "schedule-telescoping", [] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) { return f.n() <= 4; })) {
                           auto rounds = linear_descending_schedule(inst.f.n(), default_k_pad(inst.f.n()));
                           auto counts = inst.f.image_counts();
                           for (std::uint64_t y = 0; y < counts.size(); ++y) {
                               if (counts[y] == 0) {
                                   continue;
                               }
                               auto prof = p_profile(inst.f, y, rounds);
                               Rational total = prof.leftover;
                               for (const auto& q : prof.q) {
                                   total += q;
                               }
                               if (total != 1) {
                                   return inst.name + ": q and leftover sum to " + to_string(total);
                               }
                               for (std::size_t m = 0; m < prof.q.size(); ++m) {
                                   // q_m^2 sqrt(p_m) = prod (1 - p)^2 p_m^(5/2), squared to stay rational.
                                   Rational lhs = prof.q[m] * prof.q[m] * prof.q[m] * prof.q[m] * prof.p[m];
                                   Rational surv = 1;
                                   for (std::size_t j = 0; j < m; ++j) {
                                       surv *= 1 - prof.p[j];
                                   }
                                   Rational p5 = prof.p[m] * prof.p[m] * prof.p[m] * prof.p[m] * prof.p[m];
                                   if (lhs != surv * surv * surv * surv * p5) {
                                       return inst.name + ": q_m^2 sqrt(p_m) identity fails";
                                   }
                               }
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"il-quantum", "circuits-match-analytics", [] {
                       for (const char* name : {"identity2", "parity2"}) {
                           ClassicalFunction f = [&] {
                               for (auto& inst : instance_zoo()) {
                                   if (inst.name == name) {
                                       return inst.f;
                                   }
                               }
                               fail(ErrorKind::Internal, "zoo entry missing");
                           }();
                           GInverterSet g(f, {2, 1});
                           auto counts = f.image_counts();
                           for (std::uint64_t y = 0; y < counts.size(); ++y) {
                               if (counts[y] == 0) {
                                   continue;
                               }
                               std::string where = std::string(name) + " y=" + std::to_string(y);
                               for (std::size_t t = 0; t < 2; ++t) {
                                   auto pq = pqs_apply(g.at(t), y);
                                   if (!close(pq.success_amplitude, pq.expected_amplitude)) {
                                       return where + " PQS: " + describe(pq.success_amplitude, pq.expected_amplitude);
                                   }
                                   if (f.injective() && !close(pq.success_amplitude, pq.sqrt_p)) {
                                       return where + " PQS: " + describe(pq.success_amplitude, pq.sqrt_p);
                                   }
                                   auto pa = pap_apply(g.at(t), y);
                                   if (!close(pa.weight_success, to_double(pa.p)) ||
                                       !close(pa.weight_failure, 1.0 - to_double(pa.p))) {
                                       return where + " PAP weights differ from (p, 1 - p)";
                                   }
                               }
                               auto ap = ap_apply(g, y);
                               for (std::size_t t = 0; t < 2; ++t) {
                                   if (!close(ap.coefficients[t], to_double(ap.profile.q[t]))) {
                                       return where + " AP: " + describe(ap.coefficients[t], to_double(ap.profile.q[t]));
                                   }
                               }
                               auto qs = qs_apply(g, y);
                               if (!close(qs.success_amplitude, qs.expected)) {
                                   return where + " QS: " + describe(qs.success_amplitude, qs.expected);
                               }
                               if (f.injective() && !close(qs.success_amplitude, qs.analytic)) {
                                   return where + " QS: " + describe(qs.success_amplitude, qs.analytic);
                               }
                               for (double a : qs.preimage_amplitudes) {
                                   if (!close(a, qs.preimage_amplitudes.front())) {
                                       return where + " QS preimage amplitudes are not uniform";
                                   }
                               }
                               auto adj = ap_adjoint_identity(g, y);
                               if (!close(adj.simulated, adj.analytic)) {
                                   return where + " AP adjoint: " + describe(adj.simulated, adj.analytic);
                               }
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"il-quantum", "classical-sampler-injective-tv", [] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) { return f.n() <= 3; })) {
                           ILParams params;
                           params.k_pad = default_k_pad(inst.f.n());
                           params.rounds = linear_descending_schedule(inst.f.n(), params.k_pad);
                           auto rep = sampler_tv_report(inst.f, params, TvMode::Exact);
                           if (*rep.tv_injective_hash != 0) {
                               return inst.name + ": TV " + to_string(*rep.tv_injective_hash) +
                                      " under injective hashes";
                           }
                       }
                       return std::string();
                   }});
    out.push_back({"il-quantum", "lemma-pk-upper-bound", [] {
                       for (const auto& inst : zoo_where([](const ClassicalFunction& f) { return f.n() <= 4; })) {
                           std::uint64_t n_eff = std::max<std::uint64_t>(2, std::uint64_t{1} << ceil_log2(inst.f.n()));
                           auto counts = inst.f.image_counts();
                           for (std::uint64_t y = 0; y < counts.size(); ++y) {
                               if (counts[y] == 0) {
                                   continue;
                               }
                               std::vector<int> js;
                               for (int j = 1; ToeplitzAffineHash::descriptor_bits(inst.f.n(), j) <= 15; ++j) {
                                   js.push_back(j);
                               }
                               for (const auto& row : lemma_pk_report(inst.f, y, n_eff, js).rows) {
                                   if (row.in_scope && !row.upper_ok) {
                                       return inst.name + ": p_" + std::to_string(row.j) + " above the bound";
                                   }
                               }
                           }
                       }
                       return std::string();
                   }});
    return out;
}

// --- cli --------------------------------------------------------------------

std::vector<Check> cli_checks() {
    std::vector<Check> out;
    out.push_back({"cli", "byte-identical-reruns", [] {
                       nlohmann::json cfg = {{"kind", "il-classical"},
                                             {"function", {{"zoo", "parity2"}}},
                                             {"mode", "montecarlo"},
                                             {"samples", 2000},
                                             {"seed", 5}};
                       auto a = run_experiment("il", cfg, ".").report.dump(2);
                       auto b = run_experiment("il", cfg, ".").report.dump(2);
                       return a == b ? std::string() : std::string("reports differ between runs");
                   }});
    out.push_back({"cli", "malformed-function-named", [] {
                       nlohmann::json cfg = {
                           {"kind", "t-qs"},
                           {"function", {{"n", 1}, {"m", 1}, {"table", {"0", "2"}}}},
                           {"inverter", {{"kind", "perfect"}}}};
                       try {
                           run_experiment("sample", cfg, ".");
                       } catch (const Error& e) {
                           return e.field() == "function.table[1]"
                                      ? std::string()
                                      : "error names field '" + e.field() + "'";
                       }
                       return std::string("malformed function was accepted");
                   }});
    return out;
}

}  // namespace

const std::vector<std::string>& verify_modules() {
    static const std::vector<std::string> kModules{"core-sim",   "classical-fn", "hashing", "inverters",
                                                   "reductions", "il-quantum",   "cli"};
    return kModules;
}

std::vector<CheckResult> verify_suite(const VerifyOptions& options) {
    const auto& modules = verify_modules();
    require(options.selector == "all" ||
                std::find(modules.begin(), modules.end(), options.selector) != modules.end(),
            "unknown module '" + options.selector + "'", "modules");
    std::vector<Check> checks;
    for (auto part : {core_sim_checks(), classical_checks(), hashing_checks(),
                      inverter_checks(options.inject_fault), reduction_checks(options.inject_fault),
                      il_checks(), cli_checks()}) {
        for (auto& c : part) {
            if (options.selector == "all" || options.selector == c.module) {
                checks.push_back(std::move(c));
            }
        }
    }
    std::vector<CheckResult> results;
    for (const auto& c : checks) {
        CheckResult r{c.module, c.name, false, {}};
        try {
            r.detail = c.run();
            r.passed = r.detail.empty();
        } catch (const std::exception& e) {
            r.detail = std::string("exception: ") + e.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace qowf
