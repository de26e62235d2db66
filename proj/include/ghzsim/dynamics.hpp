#pragma once

#include "ghzsim/hilbert.hpp"

namespace ghzsim {

/// Resonant/detuned Jaynes-Cummings interaction parameters.
struct JcParams {
    double g;      // coupling rate
    double delta;  // detuning (omega_e - omega_f) - omega
    double t;      // interaction time
};

/// Ramsey-zone rotation: classical field phase theta, pulse area chi = g*eta*t.
struct RamseyParams {
    double theta;
    double chi;
};

/// Lambda-atom couplings; one shared mode (degenerate) or two modes.
struct LambdaParams {
    Complex g1;
    Complex g2;
    double delta;
    double t;
};

// --- Two-level atom + mode -------------------------------------------------

// Exact JC evolution, built block-by-block over excitation sectors.
// Row/column order: (e, f) x (0..cutoff-1). The top block {|e,cutoff-1>} is
// frozen to identity and excluded from support.
Unitary jc_unitary_matrix(const JcParams& p, int cutoff);

// Large-detuning (dispersive) limit: |e,n> -> exp(-i phi (n+1)) |e,n>,
// |f,n> -> exp(i phi n) |f,n>. Exactly unitary, full support.
Unitary jc_dispersive_matrix(double phi, int cutoff);

// Cascade-atom effective operator: phase exp(i phi n) on |f,n>, identity on
// |g,n>; the |e,n> row is frozen and excluded from support.
Unitary cascade_dispersive_matrix(double phi, int cutoff);

// [[cos chi, -i e^{i theta} sin chi], [-i e^{-i theta} sin chi, cos chi]]
// on the (upper, lower) ordered basis.
Matrix ramsey(const RamseyParams& p);

// diag(e^{-i beta/2}, e^{i beta/2}): dispersive phase gate with an intense
// classical field.
Matrix semiclassical_phase(double beta);

/// ZYZ parameters of M = e^{i alpha} Rz(beta) Ry(gamma) Rz(delta),
/// Rz(x) = diag(e^{-ix/2}, e^{ix/2}).
struct Su2Angles {
    double alpha, beta, gamma, delta;
};

Su2Angles su2_decompose(const Matrix& m, double tol = kDefaultTol);
Matrix su2_recompose(const Su2Angles& a);

// --- Lambda atom + mode(s) -------------------------------------------------

// Dispersive lambda operator, row/column order (a, b, c) x (0..cutoff-1):
//   u_aa = -e^{i phi n},  u_bb = u_cc = (e^{i phi n}+1)/2,
//   u_bc = e^{+i(phi1-phi2)} (e^{i phi n}-1)/2,  u_cb its phase conjugate.
// Exactly unitary, full support.
Unitary lambda_dispersive_matrix(double phi, double phi1, double phi2, int cutoff);

// Even/odd photon-parity combinations (e^{i pi n} +- 1)/2 as diagonal
// matrices on the Fock factor. Pi_plus projects even n; Pi_minus = -P_odd.
std::pair<Matrix, Matrix> lambda_parity_projectors(int cutoff);

// Exact degenerate solution (both transitions on one shared mode),
// alpha_1 = g1 a, alpha_2 = g2 a. Incomplete top sectors frozen and
// excluded from support.
Unitary lambda_exact_degenerate(const LambdaParams& p, int cutoff);

// Exact non-degenerate solution (alpha_1 = g1 a1, alpha_2 = g2 a2) on
// (lambda atom, mode 1, mode 2).
Unitary lambda_exact_nondegenerate(const LambdaParams& p, int cutoff1, int cutoff2);

// Classical limit of the two-mode lambda interaction on the (b, c) pair:
// u_bb = u_cc = (e^{i phi}+1)/2, u_bc = e^{+i rel} (e^{i phi}-1)/2,
// u_cb = e^{-i rel} (e^{i phi}-1)/2, rel = theta_1 - theta_2.
Matrix lambda_classical_rotation(double phi, double rel_phase);

// --- Named Ramsey matrices of the preparation/test sequences --------------

// R1..R4 = R_{pi/2, pi/4}; K1, K2 = R_{pi/2, -pi/4}; R0, K3 = R_{pi, pi/4}.
Matrix named_rotation(const std::string& name);

}  // namespace ghzsim
