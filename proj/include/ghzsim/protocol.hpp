#pragma once

#include <variant>

#include "ghzsim/dynamics.hpp"
#include "ghzsim/hilbert.hpp"

namespace ghzsim {

enum class AtomFamily { Cascade, Lambda };

// --- Protocol steps --------------------------------------------------------

struct PrepareCavity {
    int sign;  // +1 or -1
};
struct RamseyRotate {
    std::string atom;
    std::string named;   // empty when params given explicitly
    RamseyParams params;  // used when named is empty
};
struct DispersiveInteract {
    std::string atom;
    double phi;
};
struct ResonantInteract {
    std::string atom;
    double gt;
};
struct Detect {
    std::string atom;
};

using ProtocolStep =
    std::variant<PrepareCavity, RamseyRotate, DispersiveInteract, ResonantInteract, Detect>;

bool step_equal(const ProtocolStep& a, const ProtocolStep& b);

// --- Named preparations ----------------------------------------------------

/// Sends A0 through R0 (sign=+) or its theta=0 variant (sign=-), then through
/// the cavity resonantly at gt=pi/2. Returns the (A0, C) state with A0
/// disentangled in |f> and the cavity in (|0> +- |1>)/sqrt(2).
StateVector prepare_cavity(int sign, int cutoff = 4);

/// Cascade GHZ preparation: R1, phase pi in C, R2 for A1; R3, C, R4 for A2.
StateVector ghz_prepare_cascade(int sign, int cutoff = 4);

/// Lambda GHZ preparation: both atoms start in |b> and cross C at phi=pi.
StateVector ghz_prepare_lambda(int sign, int cutoff = 4);

/// Closed-form target (|xx0> +- |yy1>)/sqrt(2) on the 3-subsystem layout.
StateVector ghz_target(AtomFamily family, int sign, int cutoff = 4);

/// Maps the cavity's sigma_x information onto probe atom A3: resonant
/// gt=pi/2 pass, then K3. The state must contain subsystems named A3 and C.
StateVector probe_cavity(const StateVector& state);

// --- GHZ test --------------------------------------------------------------

struct OutcomeRecord {
    int shot;
    std::string labels[3];
    int eigs[3];
    int product;
};

struct TestAggregate {
    std::map<std::string, int> histogram;  // branch "l1,l2,l3" -> count
    double empirical_product;              // mean of per-shot products
    double expected_d;                     // <D> on the prepared state
    bool all_match;                        // every product equals expected_d
};

struct TestResult {
    std::vector<OutcomeRecord> records;
    TestAggregate aggregate;
};

/// Runs the sampled GHZ test: per shot, K1 + detect atom 1, K2 + detect
/// atom 2, probe the cavity with A3 + detect. Deterministic per-shot RNG
/// substreams derived from (seed, shot index).
TestResult ghz_test(AtomFamily family, int sign, int shots, std::uint64_t seed, int cutoff = 4);

/// Same sampling loop over an arbitrary step list (must detect A1, A2, A3).
TestResult run_test(AtomFamily family, int sign, const std::vector<ProtocolStep>& steps,
                    int shots, std::uint64_t seed, int cutoff = 4);

// --- Generic interpreter ---------------------------------------------------

struct Execution {
    StateVector state;
    std::vector<std::pair<std::string, std::string>> detections;  // (atom, label), step order
};

/// The 4-subsystem layout every step list runs on: (A1, A2, A3, C) with the
/// atoms in their start labels and the cavity in |0>.
SystemPtr test_system(AtomFamily family, int cutoff = 4);
StateVector initial_state(AtomFamily family, int cutoff = 4);

/// Throws with the step index and reason when the list is malformed
/// (unknown subsystem, interaction after detection, misplaced PrepareCavity).
void validate_steps(const SystemPtr& system, const std::vector<ProtocolStep>& steps);

Execution run_steps(const StateVector& initial, const std::vector<ProtocolStep>& steps,
                    AtomFamily family, std::mt19937_64& rng);

/// The shipped step lists behind --builtin; equivalent to the named
/// preparations plus the three-detection test sequence.
std::vector<ProtocolStep> builtin_steps(AtomFamily family, int sign);

/// Detection label -> sigma_x eigenvalue. Cascade atoms: g -> +1, f -> -1;
/// lambda atoms: c -> +1, b -> -1; probe A3: g -> +1, f -> -1.
int eigenvalue_of(AtomFamily family, int which_atom, const std::string& label);

/// The RNG substream for one shot of one run.
std::mt19937_64 shot_rng(std::uint64_t seed, int shot);

}  // namespace ghzsim
