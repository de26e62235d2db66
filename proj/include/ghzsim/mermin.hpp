#pragma once

#include "ghzsim/hilbert.hpp"

namespace ghzsim {

enum class PauliAxis { X, Y };

/// Picks the two basis labels of a subsystem that play the qubit roles.
/// Cascade atoms: (f, g); lambda atoms: (b, c); the cavity: (0, 1).
struct QubitEmbedding {
    std::string subsystem;
    std::string plus_label;
    std::string minus_label;
};

/// The four three-party Pauli products whose eigenvalues carry the GHZ
/// contradiction: A = x y y, B = y x y, C = y y x, D = x x x.
struct MerminSet {
    Matrix A, B, C, D;
};

// sigma_x = |p><m| + |m><p|, sigma_y = -i(|p><m| - |m><p|) on the embedded
// pair, zero on every other level of the subsystem (in particular on n >= 2
// for the cavity), identity-extended over the rest of the composite.
Matrix sigma(PauliAxis axis, const SystemPtr& system, const QubitEmbedding& emb);

MerminSet build_mermin(const SystemPtr& system, const std::vector<QubitEmbedding>& embeddings);

/// Projector onto the embedded 8-dimensional qubit subspace.
Matrix embedded_projector(const SystemPtr& system, const std::vector<QubitEmbedding>& embeddings);

double commutator_norm(const Matrix& x, const Matrix& y);

double operator_norm(const Matrix& m);

/// <psi|op|psi> for Hermitian op; throws if the imaginary part exceeds tol.
double expectation(const Matrix& op, const StateVector& state, double tol = kDefaultTol);

/// One local-hidden-variable assignment of the six "elements of reality".
struct LhvAssignment {
    int m_x[3];
    int m_y[3];
};

struct LhvLedger {
    int sign;                               // +1 or -1: which GHZ state
    int quantum_d;                          // eigenvalue of D on that state
    std::vector<LhvAssignment> consistent;  // assignments with a=b=c=-sign
    int counterexamples;                    // consistent assignments with d = quantum_d
};

/// Exhausts all 64 assignments: those consistent with a = b = c = -sign all
/// force d = -sign, clashing with the quantum eigenvalue +sign.
LhvLedger lhv_ledger(int sign);

}  // namespace ghzsim
