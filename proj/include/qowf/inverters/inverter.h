#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qowf/classical/function.h"
#include "qowf/hashing/toeplitz.h"
#include "qowf/sim/gate.h"

namespace qowf {

enum class InverterKind {
    PerfectOneToOne,        // |y>|b> -> |y>|x xor b>
    PerfectDistributional,  // |y>|0> -> |y>|H_y>, completed by Gram-Schmidt
    Noisy,                  // real success amplitudes a_y in [0, 1]
    Phased,                 // complex success amplitudes c_y, |c_y| <= 1
    GPerfect,               // inverter of g(x, h) = (f(x), h, h(x)) with error flag
    Amplified,              // two copies of an inverter: amplitudes c_y -> c_y^2
    Canonical,              // garbage confined to the branch |y>|G_y>
};

/// What a successful inversion writes into the answer register.
enum class InverterTarget {
    Preimage,               // the unique x (one-to-one f)
    PreimageSuperposition,  // |H_y>, the uniform superposition of f^-1(y)
};

/// Lexicographically smallest computational basis state with zero target
/// amplitude; when none exists, the first Gram-Schmidt completion vector.
enum class GarbageRule { LexSmallest };

const char* to_string(InverterKind kind);
const char* to_string(InverterTarget target);

struct InverterSpec {
    InverterKind kind;
    InverterTarget target;
    ClassicalFunction f;
    /// Success amplitude per output value y (size 2^m). Entries for values
    /// outside the image of f are unused.
    std::vector<Amplitude> profile;
    GarbageRule garbage_rule = GarbageRule::LexSmallest;
    /// Real encoding on one extra ancilla bit; profile then holds Re(c_y).
    bool realified = false;

    // GPerfect only.
    int k = 0;
    std::optional<HashFamily> family;
    std::shared_ptr<const std::vector<std::vector<std::uint64_t>>> preimages;

    // Amplified and Canonical wrap another inverter.
    std::shared_ptr<const InverterSpec> inner;

    /// Test-mode fault: a rotation by this angle on the lowest answer bit,
    /// appended after the inverter's gates. The profile is left unchanged.
    std::optional<double> fault_rotation;
};

InverterSpec build_perfect_inverter(const ClassicalFunction& f);
InverterSpec build_dist_inverter(const ClassicalFunction& f);

/// profile[y] = a_y in [0, 1] for every y in {0,1}^m.
InverterSpec build_noisy_inverter(const ClassicalFunction& f, std::vector<double> profile,
                                  InverterTarget target,
                                  GarbageRule rule = GarbageRule::LexSmallest);

/// Seeded profile a_y in [0, 1] with (1/2^n) sum_x a_f(x)^2 = 1 - delta;
/// delta must lie in [0, 0.5].
std::vector<double> seeded_noisy_profile(const ClassicalFunction& f, double delta,
                                         std::uint64_t seed);

/// One-to-one inverter with complex success amplitudes, the general form an
/// imperfect quantum inverter can take before realification.
InverterSpec build_phased_inverter(const ClassicalFunction& f, std::vector<Amplitude> profile);

InverterSpec build_g_inverter(const ClassicalFunction& f, int k, const HashFamily& family);

/// Real-amplitude version on one extra bit. Success amplitude becomes Re(c_y).
InverterSpec realify(const InverterSpec& inverter);

/// Two-copy circuit whose success amplitudes are c_y^2. Rejects complex
/// profiles that were not realified first.
InverterSpec amplify_positivity(const InverterSpec& inverter, const ClassicalFunction& f);

/// Wraps an inverter so its garbage branch keeps the first register intact:
/// |y>|0> -> a_y |y>|x> + b_y |y>|G_y>.
InverterSpec canonicalize_garbage(const InverterSpec& inverter, const ClassicalFunction& f);

/// Copy of the inverter with a perturbing gate appended (negative control).
InverterSpec inject_fault(const InverterSpec& inverter, double angle);

/// Registers an inverter acts on. Ancillas must match ancilla_widths().
struct InverterWiring {
    std::string y;
    std::string beta;
    std::vector<std::string> ancillas;
};

std::vector<int> ancilla_widths(const InverterSpec& inverter);

/// [y: m, beta: n, anc0, anc1, ...] and the matching wiring.
RegisterLayout inverter_layout(const InverterSpec& inverter);
InverterWiring default_wiring(const InverterSpec& inverter);

/// Gates realizing the inverter on the wired registers of `layout`.
Circuit realize(const InverterSpec& inverter, const InverterWiring& wiring,
                const RegisterLayout& layout);

/// Whether the inverter acts on |y>|b> as |y>|x xor b> on its success branch
/// for every b (not only b = 0).
bool xor_covariant(const InverterSpec& inverter);

/// Analytic success amplitude for y: profile[y].
Amplitude success_amplitude(const InverterSpec& inverter, std::uint64_t y);

/// Simulated success amplitude: <y, target, 0...| I |y, 0, 0...>, where
/// target is x (one-to-one) or |H_y> (distributional).
Amplitude measure_success_amplitude(const InverterSpec& inverter, std::uint64_t y);

/// Output state of the realized inverter on |y, 0, 0...>.
StateVector simulate_inverter(const InverterSpec& inverter, std::uint64_t y);

// --- g-inverter ---------------------------------------------------------

struct GWiring {
    std::string y;
    std::vector<std::string> h_bits;  // descriptor bits, least-significant first
    std::vector<std::string> r_bits;  // k bits, least-significant first
    std::string x;
    std::string flag;
};

/// Unique preimage element of y hashing to r under the descriptor, or
/// nullopt on no hit or on a multi-hit (collision).
std::optional<std::uint64_t> g_invert(const InverterSpec& g, std::uint64_t y,
                                      std::uint64_t descriptor, std::uint64_t r);

/// Permutation: x ^= x' on a unique hit x', flag ^= 1 otherwise.
GateOp realize_g(const InverterSpec& g, const GWiring& wiring, const RegisterLayout& layout);

/// r ^= h(x), the reversible hash evaluation used to uncompute h(x).
GateOp hash_xor_gate(int n, int k, const GWiring& wiring, const RegisterLayout& layout);

/// Orthonormal basis {H_y, T^1_y, ...} as columns: Gram-Schmidt over
/// [H_y, e_0, e_1, ...] in index order.
DenseMatrix preimage_basis(const ClassicalFunction& f, std::uint64_t y);

}  // namespace qowf
