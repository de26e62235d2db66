#include "ghzsim/verify.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "ghzsim/dynamics.hpp"
#include "ghzsim/mermin.hpp"
#include "ghzsim/protocol.hpp"

namespace ghzsim {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// ||M|| restricted to a basis-index subset (rows and columns).
double restricted_norm(const Matrix& m, const std::vector<int>& idx) {
    Matrix sub(idx.size(), idx.size());
    for (size_t r = 0; r < idx.size(); ++r)
        for (size_t c = 0; c < idx.size(); ++c) sub(r, c) = m(idx[r], idx[c]);
    return operator_norm(sub);
}

// Max |(U^H U - I)_{rc}| over the declared support.
double unitarity_deviation(const Unitary& u) {
    Matrix g = u.matrix.adjoint() * u.matrix;
    std::vector<int> idx;
    if (u.support) {
        idx = *u.support;
    } else {
        for (int i = 0; i < u.local_dim(); ++i) idx.push_back(i);
    }
    double dev = 0.0;
    for (int r : idx)
        for (int c : idx) dev = std::max(dev, std::abs(g(r, c) - (r == c ? 1.0 : 0.0)));
    return dev;
}

double unitarity_deviation(const Matrix& m) {
    return (m.adjoint() * m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

std::vector<CheckResult> run_verify(const VerifyOptions& opts) {
    std::vector<CheckResult> results;
    auto check = [&](const std::string& name, double value, double threshold) {
        results.push_back({name, value, threshold, value <= threshold});
    };

    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> coupling(0.5, 2.0);
    std::uniform_real_distribution<double> detuning(-5.0, 5.0);
    std::uniform_real_distribution<double> time(0.0, 3.0);
    std::uniform_real_distribution<double> angle(-kPi, kPi);

    // Unitarity sweeps on randomized parameters.
    {
        double dev = 0.0;
        for (int i = 0; i < 100; ++i) {
            dev = std::max(dev, unitarity_deviation(
                                    jc_unitary_matrix({coupling(rng), detuning(rng), time(rng)}, 5)));
        }
        check("unitarity jc_unitary (100 draws)", dev, opts.tol);
    }
    {
        double dev = 0.0;
        for (int i = 0; i < 100; ++i) {
            LambdaParams p{coupling(rng) * std::exp(kI * angle(rng)),
                           coupling(rng) * std::exp(kI * angle(rng)), detuning(rng), time(rng)};
            dev = std::max(dev, unitarity_deviation(lambda_exact_degenerate(p, 5)));
        }
        check("unitarity lambda_exact_degenerate (100 draws)", dev, opts.tol);
    }
    {
        double dev = 0.0;
        for (int i = 0; i < 100; ++i) {
            LambdaParams p{coupling(rng) * std::exp(kI * angle(rng)),
                           coupling(rng) * std::exp(kI * angle(rng)), detuning(rng), time(rng)};
            dev = std::max(dev, unitarity_deviation(lambda_exact_nondegenerate(p, 3, 3)));
        }
        check("unitarity lambda_exact_nondegenerate (100 draws)", dev, opts.tol);
    }
    {
        double dev = 0.0;
        for (int i = 0; i < 100; ++i) {
            dev = std::max(dev, unitarity_deviation(
                                    lambda_dispersive_matrix(angle(rng), angle(rng), angle(rng), 5)));
            dev = std::max(dev, unitarity_deviation(ramsey({angle(rng), angle(rng)})));
        }
        check("unitarity lambda_dispersive + ramsey (100 draws)", dev, opts.tol);
    }

    // Dispersive convergence: ||U_exact - U_dispersive|| * (Delta/g) on n <= 2.
    {
        const int cutoff = 6;
        const double g = 1.0, gt = kPi / 4;
        double worst = 0.0;
        for (double ratio : {50.0, 100.0, 200.0}) {
            Unitary exact = jc_unitary_matrix({g, ratio * g, gt / g}, cutoff);
            Unitary disp = jc_dispersive_matrix(gt / ratio, cutoff);
            std::vector<int> idx;
            for (int atom = 0; atom < 2; ++atom)
                for (int n = 0; n <= 2; ++n) idx.push_back(atom * cutoff + n);
            worst = std::max(worst, restricted_norm(exact.matrix - disp.matrix, idx) * ratio);
        }
        check("convergence jc dispersive (scaled, n<=2)", worst, 5.0);
    }
    {
        const int cutoff = 6;
        const double g = 1.0, gt = kPi / 4;
        double worst = 0.0;
        for (double ratio : {50.0, 100.0, 200.0}) {
            Unitary exact = lambda_exact_degenerate({g, g, ratio * g, gt / g}, cutoff);
            Unitary disp = lambda_dispersive_matrix(2.0 * gt / ratio, 0.0, 0.0, cutoff);
            // The |a> row is a decoupled pure phase; compare the b/c block.
            std::vector<int> idx;
            for (int atom = 1; atom < 3; ++atom)
                for (int n = 0; n <= 2; ++n) idx.push_back(atom * cutoff + n);
            worst = std::max(worst, restricted_norm(exact.matrix - disp.matrix, idx) * ratio);
        }
        check("convergence lambda dispersive (scaled, b/c, n<=2)", worst, 10.0);
    }

    // jc_dispersive equals exp(-i phi P_e) * exp(-i H_d t / hbar) exactly.
    {
        const int cutoff = 4;
        const double phi = 0.7321;
        Matrix expected = Matrix::Zero(2 * cutoff, 2 * cutoff);
        for (int n = 0; n < cutoff; ++n) {
            expected(n, n) = std::exp(-kI * phi) * std::exp(-kI * phi * double(n));
            expected(cutoff + n, cutoff + n) = std::exp(kI * phi * double(n));
        }
        double dev = (jc_dispersive_matrix(phi, cutoff).matrix - expected).cwiseAbs().maxCoeff();
        check("jc_dispersive vs effective Hamiltonian", dev, 1e-12);
    }

    // Photon-parity algebra.
    {
        const int cutoff = 5;
        auto [plus, minus] = lambda_parity_projectors(cutoff);
        Matrix id = Matrix::Identity(cutoff, cutoff);
        double dev = (plus * plus - plus).cwiseAbs().maxCoeff();
        dev = std::max(dev, (minus * minus + minus).cwiseAbs().maxCoeff());
        dev = std::max(dev, (plus * minus).cwiseAbs().maxCoeff());
        dev = std::max(dev, (plus - minus - id).cwiseAbs().maxCoeff());
        check("photon parity algebra", dev, 1e-12);
    }

    // lambda_dispersive(pi) equals the parity-projector form term by term.
    {
        const int cutoff = 4;
        auto [plus, minus] = lambda_parity_projectors(cutoff);
        Matrix expected = Matrix::Zero(3 * cutoff, 3 * cutoff);
        for (int n = 0; n < cutoff; ++n) {
            expected(n, n) = -std::exp(kI * kPi * double(n));
            expected(cutoff + n, cutoff + n) = plus(n, n);
            expected(cutoff + n, 2 * cutoff + n) = minus(n, n);
            expected(2 * cutoff + n, cutoff + n) = minus(n, n);
            expected(2 * cutoff + n, 2 * cutoff + n) = plus(n, n);
        }
        double dev =
            (lambda_dispersive_matrix(kPi, 0, 0, cutoff).matrix - expected).cwiseAbs().maxCoeff();
        check("lambda_dispersive(pi) vs parity form", dev, 1e-12);
    }

    // Classical-limit rotation matches the Ramsey matrix up to e^{i pi/4}.
    {
        Matrix lhs = lambda_classical_rotation(kPi / 2, kPi / 2);
        Matrix rhs = std::exp(kI * kPi / 4.0) * ramsey({kPi / 2, -kPi / 4});
        check("classical-limit rotation vs ramsey", (lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
    }

    // SU(2) decomposition round-trip on random unitaries.
    {
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i) {
            Su2Angles a{angle(rng), angle(rng), std::abs(angle(rng)), angle(rng)};
            Matrix m = su2_recompose(a);
            worst = std::max(worst, (su2_recompose(su2_decompose(m)) - m).cwiseAbs().maxCoeff());
        }
        check("su2_decompose round-trip (1000 draws)", worst, opts.tol);
    }

    // Mermin operator algebra and eigenvalue relations, both families.
    {
        double comm = 0.0, algebra = 0.0, eig = 0.0, fid = 0.0;
        for (AtomFamily family : {AtomFamily::Cascade, AtomFamily::Lambda}) {
            for (int sign : {1, -1}) {
                StateVector prepared = family == AtomFamily::Cascade
                                           ? ghz_prepare_cascade(sign)
                                           : ghz_prepare_lambda(sign);
                std::vector<QubitEmbedding> emb =
                    family == AtomFamily::Cascade
                        ? std::vector<QubitEmbedding>{{"A1", "f", "g"},
                                                      {"A2", "f", "g"},
                                                      {"C", "0", "1"}}
                        : std::vector<QubitEmbedding>{{"A1", "b", "c"},
                                                      {"A2", "b", "c"},
                                                      {"C", "0", "1"}};
                MerminSet ops = build_mermin(prepared.system, emb);
                comm = std::max({comm, commutator_norm(ops.A, ops.B),
                                 commutator_norm(ops.A, ops.C), commutator_norm(ops.B, ops.C)});
                Matrix proj = embedded_projector(prepared.system, emb);
                algebra = std::max(
                    algebra, operator_norm(proj * (ops.D + ops.A * ops.B * ops.C) * proj));
                eig = std::max({eig, std::abs(expectation(ops.A, prepared) + sign),
                                std::abs(expectation(ops.B, prepared) + sign),
                                std::abs(expectation(ops.C, prepared) + sign),
                                std::abs(expectation(ops.D, prepared) - sign)});
                fid = std::max(fid, 1.0 - fidelity(prepared, ghz_target(family, sign)));
            }
        }
        check("mermin commutators ||[A,B]||,...", comm, 1e-12);
        check("mermin D = -ABC on embedded subspace", algebra, 1e-12);
        check("mermin eigenvalue relations", eig, opts.tol);
        check("GHZ preparation fidelity deficit", fid, opts.tol);
    }

    // LHV exhaustive scan.
    {
        int bad = 0, consistent = 0;
        for (int sign : {1, -1}) {
            LhvLedger ledger = lhv_ledger(sign);
            bad += ledger.counterexamples;
            consistent += static_cast<int>(ledger.consistent.size());
        }
        check("lhv counterexamples (64-assignment scan, both signs)", bad, 0.0);
        check("lhv consistent-assignment count deviation", std::abs(consistent - 16), 0.0);
    }

    if (opts.perturb) {
        Matrix m = ramsey({kPi / 2, kPi / 4});
        m(0, 0) += 1e-3;
        check("perturbed matrix unitarity (forced failure)", unitarity_deviation(m), opts.tol);
    }

    return results;
}

bool all_pass(const std::vector<CheckResult>& results) {
    for (const auto& r : results) {
        if (!r.pass) return false;
    }
    return true;
}

}  // namespace ghzsim
