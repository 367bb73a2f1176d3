#include "qowf/inverters/inverter.h"

#include <cmath>

#include "qowf/sim/ops.h"
#include "qowf/util/bits.h"
#include "qowf/util/error.h"
#include "qowf/util/rng.h"

namespace qowf {

const char* to_string(InverterKind kind) {
    switch (kind) {
        case InverterKind::PerfectOneToOne:
            return "perfect";
        case InverterKind::PerfectDistributional:
            return "distributional";
        case InverterKind::Noisy:
            return "noisy";
        case InverterKind::Phased:
            return "phased";
        case InverterKind::GPerfect:
            return "g-perfect";
        case InverterKind::Amplified:
            return "amplified";
        case InverterKind::Canonical:
            return "canonical";
    }
    return "unknown";
}

const char* to_string(InverterTarget target) {
    return target == InverterTarget::Preimage ? "preimage" : "preimage-superposition";
}

namespace {

std::size_t image_space(const ClassicalFunction& f) {
    require(f.m() <= 16, "inverters need m <= 16", "m");
    return std::size_t{1} << f.m();
}

std::vector<std::uint64_t> inverse_table(const ClassicalFunction& f) {
    // Unique preimage per image; entries for non-images are unused.
    std::vector<std::uint64_t> inv(image_space(f), 0);
    for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
        inv[f(x)] = x;
    }
    return inv;
}

InverterSpec make_spec(InverterKind kind, InverterTarget target, const ClassicalFunction& f,
                       std::vector<Amplitude> profile) {
    InverterSpec s{kind,         target,  f,       std::move(profile), GarbageRule::LexSmallest,
                   false,        0,       std::nullopt, nullptr,  nullptr,
                   std::nullopt};
    return s;
}

bool one_to_one_kind(const InverterSpec& s) {
    return s.target == InverterTarget::Preimage &&
           (s.kind == InverterKind::PerfectOneToOne || s.kind == InverterKind::Noisy ||
            s.kind == InverterKind::Phased || s.kind == InverterKind::Amplified);
}

/// Block for one image y of a one-to-one inverter with success amplitude c:
/// |b> -> c|x^b> + s(b) beta |x^b^d>, where x ^ d is the garbage state chosen
/// for b = 0 and s is +1 on the smaller member of each {b, b^d} pair.
DenseMatrix one_to_one_block(int n, std::uint64_t x, Amplitude c) {
    const std::uint64_t g = x == 0 ? 1 : 0;
    const std::uint64_t d = x ^ g;
    double mag = std::abs(c);
    Amplitude phase = mag > 0 ? c / mag : Amplitude{1.0};
    Amplitude b = phase * std::sqrt(std::max(0.0, 1.0 - mag * mag));
    std::size_t dim = std::size_t{1} << n;
    DenseMatrix m(dim);
    for (std::uint64_t beta = 0; beta < dim; ++beta) {
        double sign = beta < (beta ^ d) ? 1.0 : -1.0;
        m(x ^ beta, beta) += c;
        m(x ^ beta ^ d, beta) += sign * b;
    }
    return m;
}

DenseMatrix noisy_superposition_block(const ClassicalFunction& f, std::uint64_t y, double a) {
    DenseMatrix basis = preimage_basis(f, y);
    const std::size_t dim = basis.dim;
    auto pre = f.preimage(y);
    std::vector<bool> in_pre(dim, false);
    for (auto x : pre) {
        in_pre[x] = true;
    }
    // v = B^T g, with g the garbage vector in the computational basis.
    std::vector<double> v(dim, 0.0);
    std::size_t g = 0;
    while (g < dim && in_pre[g]) {
        ++g;
    }
    if (g < dim) {
        for (std::size_t c = 0; c < dim; ++c) {
            v[c] = basis(g, c).real();
        }
    } else {
        v[1] = 1.0;
    }
    const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
    DenseMatrix rot = DenseMatrix::identity(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        double e_r = r == 0 ? 1.0 : 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            double e_c = c == 0 ? 1.0 : 0.0;
            double delta = (a - 1.0) * (e_r * e_c + v[r] * v[c]) + b * (v[r] * e_c - e_r * v[c]);
            rot(r, c) += delta;
        }
    }
    return basis * rot;
}

void check_wiring(const InverterSpec& s, const InverterWiring& w, const RegisterLayout& layout) {
    require(layout.reg(w.y).width == s.f.m(), "inverter y register must have width m", "y");
    require(layout.reg(w.beta).width == std::max(s.f.n(), 1),
            "inverter answer register must have width n", "beta");
    auto widths = ancilla_widths(s);
    require(widths.size() == w.ancillas.size(),
            "inverter needs " + std::to_string(widths.size()) + " ancilla registers", "ancillas");
    for (std::size_t i = 0; i < widths.size(); ++i) {
        require(layout.reg(w.ancillas[i]).width == widths[i],
                "ancilla '" + w.ancillas[i] + "' has the wrong width", "ancillas");
    }
}

}  // namespace

DenseMatrix preimage_basis(const ClassicalFunction& f, std::uint64_t y) {
    auto pre = f.preimage(y);
    require(!pre.empty(), "y has an empty preimage", "y");
    const std::size_t dim = f.domain_size();
    std::vector<std::vector<double>> cols;
    std::vector<double> h(dim, 0.0);
    for (auto x : pre) {
        h[x] = 1.0 / std::sqrt(static_cast<double>(pre.size()));
    }
    cols.push_back(h);
    for (std::size_t j = 0; j < dim && cols.size() < dim; ++j) {
        std::vector<double> v(dim, 0.0);
        v[j] = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& c : cols) {
                double dot = 0.0;
                for (std::size_t i = 0; i < dim; ++i) {
                    dot += c[i] * v[i];
                }
                for (std::size_t i = 0; i < dim; ++i) {
                    v[i] -= dot * c[i];
                }
            }
        }
        double norm = 0.0;
        for (double e : v) {
            norm += e * e;
        }
        norm = std::sqrt(norm);
        if (norm < 1e-8) {
            continue;
        }
        for (double& e : v) {
            e /= norm;
        }
        cols.push_back(std::move(v));
    }
    require(cols.size() == dim, "Gram-Schmidt completion failed", "y");
    DenseMatrix m(dim);
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t r = 0; r < dim; ++r) {
            m(r, c) = cols[c][r];
        }
    }
    return m;
}

InverterSpec build_perfect_inverter(const ClassicalFunction& f) {
    require(f.injective(), "perfect one-to-one inverter needs an injective f", "f");
    require(f.n() >= 1, "inverters need n >= 1", "n");
    return make_spec(InverterKind::PerfectOneToOne, InverterTarget::Preimage, f,
                        std::vector<Amplitude>(image_space(f), 1.0));
}

InverterSpec build_dist_inverter(const ClassicalFunction& f) {
    require(f.n() >= 1, "inverters need n >= 1", "n");
    return make_spec(InverterKind::PerfectDistributional, InverterTarget::PreimageSuperposition,
                        f, std::vector<Amplitude>(image_space(f), 1.0));
}

InverterSpec build_noisy_inverter(const ClassicalFunction& f, std::vector<double> profile,
                                  InverterTarget target, GarbageRule rule) {
    require(f.n() >= 1, "inverters need n >= 1", "n");
    require(profile.size() == image_space(f), "profile needs one amplitude per y in {0,1}^m",
            "profile");
    if (target == InverterTarget::Preimage) {
        require(f.injective(), "one-to-one noisy inverter needs an injective f", "f");
    }
    std::vector<Amplitude> amps;
    for (std::size_t y = 0; y < profile.size(); ++y) {
        double a = profile[y];
        require(a >= 0.0 && a <= 1.0, "success amplitude must lie in [0, 1]",
                "profile[" + std::to_string(y) + "]");
        amps.emplace_back(a);
    }
    InverterSpec s = make_spec(InverterKind::Noisy, target, f, std::move(amps));
    s.garbage_rule = rule;
    return s;
}

std::vector<double> seeded_noisy_profile(const ClassicalFunction& f, double delta,
                                         std::uint64_t seed) {
    require(delta >= 0.0 && delta <= 0.5, "delta must lie in [0, 0.5]", "delta");
    CounterRng rng(seed);
    auto counts = f.image_counts();
    std::vector<double> u(counts.size(), 0.0);
    double avg = 0.0;
    for (std::size_t y = 0; y < counts.size(); ++y) {
        u[y] = 0.5 + 0.5 * rng.uniform(y);
        avg += static_cast<double>(counts[y]) * u[y];
    }
    avg /= static_cast<double>(f.domain_size());
    // a_y^2 = 1 - delta u_y / avg; the weight u_y / avg is at most 2.
    std::vector<double> profile(counts.size(), 0.0);
    for (std::size_t y = 0; y < counts.size(); ++y) {
        if (counts[y] != 0) {
            profile[y] = std::sqrt(std::max(0.0, 1.0 - delta * u[y] / avg));
        }
    }
    return profile;
}

InverterSpec build_phased_inverter(const ClassicalFunction& f, std::vector<Amplitude> profile) {
    require(f.n() >= 1, "inverters need n >= 1", "n");
    require(f.injective(), "phased inverter needs an injective f", "f");
    require(profile.size() == image_space(f), "profile needs one amplitude per y in {0,1}^m",
            "profile");
    for (std::size_t y = 0; y < profile.size(); ++y) {
        require(std::abs(profile[y]) <= 1.0 + kTolerance, "|c_y| must be at most 1",
                "profile[" + std::to_string(y) + "]");
    }
    return make_spec(InverterKind::Phased, InverterTarget::Preimage, f, std::move(profile));
}

InverterSpec build_g_inverter(const ClassicalFunction& f, int k, const HashFamily& family) {
    require(family.mode() == HashFamily::Mode::Exhaustive,
            "the g-inverter needs an exhaustive hash family", "family");
    require(family.n() == f.n() && family.k() == k, "hash family does not match (f, k)",
            "family");
    auto pre = std::make_shared<std::vector<std::vector<std::uint64_t>>>(image_space(f));
    for (std::uint64_t x = 0; x < f.domain_size(); ++x) {
        (*pre)[f(x)].push_back(x);
    }
    InverterSpec s = make_spec(InverterKind::GPerfect, InverterTarget::Preimage, f,
                   std::vector<Amplitude>(image_space(f), 1.0));
    s.k = k;
    s.family = family;
    s.preimages = std::move(pre);
    return s;
}

InverterSpec realify(const InverterSpec& inverter) {
    require(!inverter.realified, "inverter is already realified");
    require(inverter.kind == InverterKind::PerfectOneToOne ||
                inverter.kind == InverterKind::PerfectDistributional ||
                inverter.kind == InverterKind::Noisy || inverter.kind == InverterKind::Phased,
            "only base inverters can be realified", "kind");
    InverterSpec out = inverter;
    out.realified = true;
    for (auto& c : out.profile) {
        c = c.real();
    }
    return out;
}

InverterSpec amplify_positivity(const InverterSpec& inverter, const ClassicalFunction& f) {
    require(inverter.f == f, "inverter was built for a different function", "f");
    require(f.injective(), "positivity amplification needs a one-to-one f", "f");
    require(inverter.kind == InverterKind::PerfectOneToOne || inverter.kind == InverterKind::Noisy ||
                inverter.kind == InverterKind::Phased,
            "positivity amplification needs a base one-to-one inverter", "kind");
    if (!inverter.realified) {
        for (std::size_t y = 0; y < inverter.profile.size(); ++y) {
            if (std::abs(inverter.profile[y].imag()) > kTolerance) {
                fail("complex success amplitude at y = " + std::to_string(y) +
                         "; apply realify first",
                     "profile[" + std::to_string(y) + "]");
            }
        }
    }
    InverterSpec out = make_spec(InverterKind::Amplified, InverterTarget::Preimage, f, {});
    for (const auto& c : inverter.profile) {
        out.profile.emplace_back(c.real() * c.real());
    }
    out.inner = std::make_shared<const InverterSpec>(inverter);
    return out;
}

InverterSpec canonicalize_garbage(const InverterSpec& inverter, const ClassicalFunction& f) {
    require(inverter.f == f, "inverter was built for a different function", "f");
    require(one_to_one_kind(inverter), "garbage canonicalization needs a one-to-one inverter",
            "kind");
    InverterSpec out = make_spec(InverterKind::Canonical, InverterTarget::Preimage, f, inverter.profile);
    out.inner = std::make_shared<const InverterSpec>(inverter);
    return out;
}

InverterSpec inject_fault(const InverterSpec& inverter, double angle) {
    require(inverter.kind != InverterKind::GPerfect, "faults are injected into circuit inverters",
            "kind");
    InverterSpec out = inverter;
    out.fault_rotation = angle;
    return out;
}

std::vector<int> ancilla_widths(const InverterSpec& s) {
    switch (s.kind) {
        case InverterKind::Amplified: {
            std::vector<int> out{s.f.m(), std::max(s.f.n(), 1)};
            auto inner = ancilla_widths(*s.inner);
            out.insert(out.end(), inner.begin(), inner.end());
            out.insert(out.end(), inner.begin(), inner.end());
            return out;
        }
        case InverterKind::Canonical: {
            std::vector<int> out{s.f.m()};
            auto inner = ancilla_widths(*s.inner);
            out.insert(out.end(), inner.begin(), inner.end());
            return out;
        }
        case InverterKind::GPerfect:
            fail("the g-inverter uses its own wiring; see realize_g", "kind");
        default:
            return s.realified ? std::vector<int>{1} : std::vector<int>{};
    }
}

RegisterLayout inverter_layout(const InverterSpec& s) {
    std::vector<std::pair<std::string, int>> regs{{"y", s.f.m()}, {"beta", std::max(s.f.n(), 1)}};
    auto widths = ancilla_widths(s);
    for (std::size_t i = 0; i < widths.size(); ++i) {
        regs.emplace_back("anc" + std::to_string(i), widths[i]);
    }
    return RegisterLayout(regs);
}

InverterWiring default_wiring(const InverterSpec& s) {
    InverterWiring w{"y", "beta", {}};
    for (std::size_t i = 0; i < ancilla_widths(s).size(); ++i) {
        w.ancillas.push_back("anc" + std::to_string(i));
    }
    return w;
}

namespace {
Circuit realize_body(const InverterSpec& s, const InverterWiring& w, const RegisterLayout& layout);
}

Circuit realize(const InverterSpec& s, const InverterWiring& w, const RegisterLayout& layout) {
    check_wiring(s, w, layout);
    Circuit circuit = realize_body(s, w, layout);
    if (s.fault_rotation) {
        const std::size_t dim = std::size_t{1} << layout.reg(w.beta).width;
        const double c = std::cos(*s.fault_rotation);
        const double sn = std::sin(*s.fault_rotation);
        DenseMatrix m(dim);
        for (std::size_t hi = 0; hi < dim; hi += 2) {
            m(hi, hi) = c;
            m(hi, hi + 1) = -sn;
            m(hi + 1, hi) = sn;
            m(hi + 1, hi + 1) = c;
        }
        circuit.push_back(GateOp::dense({w.beta}, std::move(m)));
    }
    return circuit;
}

namespace {

Circuit realize_body(const InverterSpec& s, const InverterWiring& w, const RegisterLayout& layout) {
    Circuit circuit;
    switch (s.kind) {
        case InverterKind::PerfectOneToOne: {
            auto inv = inverse_table(s.f);
            auto counts = s.f.image_counts();
            circuit.push_back(gates::classical(layout, {w.y, w.beta},
                                               [&](std::span<std::uint64_t> v) {
                                                   if (counts[v[0]] != 0) {
                                                       v[1] ^= inv[v[0]];
                                                   }
                                               }));
            break;
        }
        case InverterKind::Noisy:
        case InverterKind::Phased:
        case InverterKind::PerfectDistributional: {
            auto counts = s.f.image_counts();
            auto inv = inverse_table(s.f);
            for (std::uint64_t y = 0; y < counts.size(); ++y) {
                if (counts[y] == 0) {
                    continue;
                }
                DenseMatrix block;
                if (s.target == InverterTarget::Preimage) {
                    block = one_to_one_block(s.f.n(), inv[y], s.profile[y]);
                } else if (s.kind == InverterKind::PerfectDistributional) {
                    block = preimage_basis(s.f, y);
                } else {
                    block = noisy_superposition_block(s.f, y, s.profile[y].real());
                }
                circuit.push_back(
                    GateOp::controlled(w.y, y, GateOp::dense({w.beta}, std::move(block))));
            }
            break;
        }
        case InverterKind::Amplified: {
            const auto inner_anc = ancilla_widths(*s.inner).size();
            const std::string& y2 = w.ancillas[0];
            const std::string& beta2 = w.ancillas[1];
            InverterWiring first{w.y, w.beta, {}};
            InverterWiring second{y2, beta2, {}};
            for (std::size_t i = 0; i < inner_anc; ++i) {
                first.ancillas.push_back(w.ancillas[2 + i]);
                second.ancillas.push_back(w.ancillas[2 + inner_anc + i]);
            }
            circuit.push_back(gates::xor_into(layout, w.y, y2));
            append(circuit, realize(*s.inner, first, layout));
            append(circuit, realize(*s.inner, second, layout));
            circuit.push_back(gates::xor_into(layout, w.y, y2));
            circuit.push_back(gates::xor_into(layout, w.beta, beta2));
            return circuit;
        }
        case InverterKind::Canonical: {
            const std::string& ycopy = w.ancillas[0];
            InverterWiring inner{ycopy, w.beta, {w.ancillas.begin() + 1, w.ancillas.end()}};
            circuit.push_back(gates::xor_into(layout, w.y, ycopy));
            append(circuit, realize(*s.inner, inner, layout));
            circuit.push_back(gates::xor_into(layout, w.y, ycopy));
            return circuit;
        }
        case InverterKind::GPerfect:
            fail("the g-inverter uses its own wiring; see realize_g", "kind");
    }
    if (s.realified) {
        return realify(circuit, w.ancillas.at(0));
    }
    return circuit;
}

}  // namespace

bool xor_covariant(const InverterSpec& s) {
    return s.kind == InverterKind::PerfectOneToOne || s.kind == InverterKind::Phased ||
           (s.kind == InverterKind::Noisy && s.target == InverterTarget::Preimage);
}

Amplitude success_amplitude(const InverterSpec& s, std::uint64_t y) {
    require(y < s.profile.size(), "y out of range", "y");
    return s.profile[y];
}

StateVector simulate_inverter(const InverterSpec& s, std::uint64_t y) {
    RegisterLayout layout = inverter_layout(s);
    Assignment start;
    for (const auto& r : layout.registers()) {
        start[r.name] = 0;
    }
    start["y"] = y;
    return run_circuit(make_basis_state(layout, start), realize(s, default_wiring(s), layout));
}

Amplitude measure_success_amplitude(const InverterSpec& s, std::uint64_t y) {
    auto pre = s.f.preimage(y);
    require(!pre.empty(), "y is not in the image of f", "y");
    StateVector out = simulate_inverter(s, y);
    const RegisterLayout& layout = out.layout();
    Assignment target;
    for (const auto& r : layout.registers()) {
        target[r.name] = 0;
    }
    target["y"] = y;
    if (s.target == InverterTarget::Preimage) {
        target["beta"] = pre.front();
        return out.amplitude(target);
    }
    Amplitude acc = 0.0;
    for (auto x : pre) {
        target["beta"] = x;
        acc += out.amplitude(target);
    }
    return acc / std::sqrt(static_cast<double>(pre.size()));
}

std::optional<std::uint64_t> g_invert(const InverterSpec& g, std::uint64_t y,
                                      std::uint64_t descriptor, std::uint64_t r) {
    require(g.kind == InverterKind::GPerfect, "not a g-inverter", "kind");
    require(y < g.preimages->size(), "y out of range", "y");
    ToeplitzAffineHash h = ToeplitzAffineHash::from_descriptor(g.f.n(), g.k, descriptor);
    std::optional<std::uint64_t> hit;
    for (auto x : (*g.preimages)[y]) {
        if (h(x) == r) {
            if (hit) {
                return std::nullopt;
            }
            hit = x;
        }
    }
    return hit;
}

GateOp realize_g(const InverterSpec& g, const GWiring& w, const RegisterLayout& layout) {
    require(g.kind == InverterKind::GPerfect, "not a g-inverter", "kind");
    const int n = g.f.n();
    const int m = g.f.m();
    const int k = g.k;
    const int dbits = g.family->descriptor_bits();
    require(static_cast<int>(w.h_bits.size()) == dbits, "h register needs one bit per descriptor bit",
            "h_bits");
    require(static_cast<int>(w.r_bits.size()) == k, "r register needs k bits", "r_bits");
    require(layout.reg(w.y).width == m, "y register must have width m", "y");
    require(layout.reg(w.x).width == n, "x register must have width n", "x");
    require(layout.reg(w.flag).width == 1, "flag register must have width 1", "flag");
    const int total = m + dbits + k + n + 1;
    if (total > 22) {
        fail(ErrorKind::CapExceeded, "g-inverter gate spans more than 22 bits", "k");
    }
    std::vector<std::string> targets{w.y};
    targets.insert(targets.end(), w.h_bits.begin(), w.h_bits.end());
    targets.insert(targets.end(), w.r_bits.begin(), w.r_bits.end());
    targets.push_back(w.x);
    targets.push_back(w.flag);

    std::vector<std::uint64_t> table(std::size_t{1} << total);
    std::vector<std::int64_t> hit(std::size_t{1} << k);
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << m); ++y) {
        for (std::uint64_t d = 0; d < (std::uint64_t{1} << dbits); ++d) {
            std::fill(hit.begin(), hit.end(), -1);
            ToeplitzAffineHash h = ToeplitzAffineHash::from_descriptor(n, k, d);
            for (auto x : (*g.preimages)[y]) {
                auto& slot = hit[h(x)];
                slot = slot == -1 ? static_cast<std::int64_t>(x) : -2;
            }
            const std::uint64_t head = y | (d << m);
            for (std::uint64_t r = 0; r < hit.size(); ++r) {
                for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
                    for (std::uint64_t fl = 0; fl < 2; ++fl) {
                        std::uint64_t xo = x;
                        std::uint64_t fo = fl;
                        if (hit[r] >= 0) {
                            xo ^= static_cast<std::uint64_t>(hit[r]);
                        } else {
                            fo ^= 1;
                        }
                        auto pack = [&](std::uint64_t xv, std::uint64_t fv) {
                            return head | (r << (m + dbits)) | (xv << (m + dbits + k)) |
                                   (fv << (m + dbits + k + n));
                        };
                        table[pack(x, fl)] = pack(xo, fo);
                    }
                }
            }
        }
    }
    return GateOp::permutation(std::move(targets), std::move(table));
}

GateOp hash_xor_gate(int n, int k, const GWiring& w, const RegisterLayout& layout) {
    const int dbits = ToeplitzAffineHash::descriptor_bits(n, k);
    require(static_cast<int>(w.h_bits.size()) == dbits, "h register needs one bit per descriptor bit",
            "h_bits");
    require(static_cast<int>(w.r_bits.size()) == k, "r register needs k bits", "r_bits");
    require(layout.reg(w.x).width == n, "x register must have width n", "x");
    const int total = dbits + k + n;
    if (total > 22) {
        fail(ErrorKind::CapExceeded, "hash gate spans more than 22 bits", "k");
    }
    std::vector<std::string> targets = w.h_bits;
    targets.insert(targets.end(), w.r_bits.begin(), w.r_bits.end());
    targets.push_back(w.x);
    std::vector<std::uint64_t> table(std::size_t{1} << total);
    for (std::uint64_t d = 0; d < (std::uint64_t{1} << dbits); ++d) {
        ToeplitzAffineHash h = ToeplitzAffineHash::from_descriptor(n, k, d);
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) {
            std::uint64_t hx = h(x);
            for (std::uint64_t r = 0; r < (std::uint64_t{1} << k); ++r) {
                std::uint64_t in = d | (r << dbits) | (x << (dbits + k));
                table[in] = d | ((r ^ hx) << dbits) | (x << (dbits + k));
            }
        }
    }
    return GateOp::permutation(std::move(targets), std::move(table));
}

}  // namespace qowf
