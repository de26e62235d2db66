#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ghzsim/dynamics.hpp"

using namespace ghzsim;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

// Independent oracle: integrate i dU/dt = V(t) U with RK4.
Matrix propagate(const std::function<Matrix(double)>& v, int dim, double t_final, int steps) {
    Matrix u = Matrix::Identity(dim, dim);
    double h = t_final / steps;
    for (int s = 0; s < steps; ++s) {
        double t = s * h;
        Matrix k1 = -kI * (v(t) * u);
        Matrix k2 = -kI * (v(t + h / 2) * (u + h / 2 * k1));
        Matrix k3 = -kI * (v(t + h / 2) * (u + h / 2 * k2));
        Matrix k4 = -kI * (v(t + h) * (u + h * k3));
        u += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return u;
}

// Interaction-picture JC coupling on the truncated (e,f) x Fock space.
Matrix jc_coupling(double g, double delta, int cutoff, double t) {
    Matrix v = Matrix::Zero(2 * cutoff, 2 * cutoff);
    for (int n = 0; n + 1 < cutoff; ++n) {
        Complex c = g * std::exp(kI * delta * t) * std::sqrt(n + 1.0);
        v(n, cutoff + n + 1) = c;             // <e,n| V |f,n+1>
        v(cutoff + n + 1, n) = std::conj(c);  // h.c.
    }
    return v;
}

// Interaction-picture lambda coupling (shared mode).
Matrix lambda_coupling(Complex g1, Complex g2, double delta, int cutoff, double t) {
    Matrix v = Matrix::Zero(3 * cutoff, 3 * cutoff);
    Complex ph = std::exp(kI * delta * t);
    for (int n = 0; n + 1 < cutoff; ++n) {
        double root = std::sqrt(n + 1.0);
        v(n, cutoff + n + 1) = ph * g1 * root;      // a |a><b|
        v(n, 2 * cutoff + n + 1) = ph * g2 * root;  // a |a><c|
        v(cutoff + n + 1, n) = std::conj(v(n, cutoff + n + 1));
        v(2 * cutoff + n + 1, n) = std::conj(v(n, 2 * cutoff + n + 1));
    }
    return v;
}

double support_diff(const Matrix& a, const Matrix& b, const std::vector<int>& support) {
    double d = 0.0;
    for (int r : support)
        for (int c : support) d = std::max(d, std::abs(a(r, c) - b(r, c)));
    return d;
}

}  // namespace

TEST_CASE("jc_unitary: resonant pi/2 pulse mappings") {
    const int N = 4;
    Unitary u = jc_unitary_matrix({1.0, 0.0, kPi / 2}, N);
    auto e_idx = [](int n) { return n; };
    auto f_idx = [N](int n) { return N + n; };

    // |e,0> -> -i |f,1>
    CHECK(std::abs(u.matrix(f_idx(1), e_idx(0)) - Complex{0.0, -1.0}) < 1e-12);
    // |f,0> does not evolve
    CHECK(std::abs(u.matrix(f_idx(0), f_idx(0)) - 1.0) < 1e-12);
    // |f,1> -> -i |e,0> (the g3/f3 relabeled probe mapping)
    CHECK(std::abs(u.matrix(e_idx(0), f_idx(1)) - Complex{0.0, -1.0}) < 1e-12);

    // t = 0 is the identity on support.
    Unitary id = jc_unitary_matrix({1.0, 0.3, 0.0}, N);
    CHECK(support_diff(id.matrix, Matrix::Identity(2 * N, 2 * N), *id.support) < 1e-12);

    CHECK_THROWS_AS(jc_unitary_matrix({1.0, 0.0, 1.0}, 1), std::invalid_argument);
}

TEST_CASE("jc_unitary agrees with direct ODE integration") {
    const int N = 4;
    for (auto [g, delta, t] : {std::tuple{1.0, 0.0, kPi / 2}, {0.8, 2.5, 1.3}, {1.7, -4.0, 0.6}}) {
        Unitary u = jc_unitary_matrix({g, delta, t}, N);
        Matrix ref = propagate([&](double s) { return jc_coupling(g, delta, N, s); }, 2 * N, t,
                               4000);
        CHECK(support_diff(u.matrix, ref, *u.support) < 1e-8);
    }
}

TEST_CASE("jc_dispersive: diagonal phases") {
    Unitary u = jc_dispersive_matrix(kPi, 3);
    CHECK(std::abs(u.matrix(3, 3) - 1.0) < 1e-12);                   // |f,0>
    CHECK(std::abs(u.matrix(4, 4) - Complex{-1.0, 0.0}) < 1e-12);    // |f,1>
    CHECK(std::abs(u.matrix(0, 0) - Complex{-1.0, 0.0}) < 1e-12);    // |e,0>
}

TEST_CASE("cascade_dispersive: f picks up the photon phase, g is inert") {
    const int N = 4;
    Unitary u = cascade_dispersive_matrix(kPi, N);
    for (int n = 0; n < N; ++n) {
        CHECK(std::abs(u.matrix(2 * N + n, 2 * N + n) - 1.0) < 1e-12);  // |g,n>
        Complex want = std::exp(kI * kPi * double(n));
        CHECK(std::abs(u.matrix(N + n, N + n) - want) < 1e-12);  // |f,n>
    }
}

TEST_CASE("ramsey: the named rotation matrices") {
    Matrix r1 = ramsey({kPi / 2, kPi / 4});
    Matrix want(2, 2);
    want << 1, 1, -1, 1;
    CHECK((r1 - want / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-12);

    Matrix r0 = ramsey({kPi, kPi / 4});
    want << 1, kI, kI, 1;
    CHECK((r0 - want / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-12);

    Matrix kk = ramsey({kPi / 2, -kPi / 4});
    want << 1, -1, 1, 1;
    CHECK((kk - want / std::sqrt(2.0)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK((ramsey({0.77, 0.0}) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    CHECK((named_rotation("R1") - named_rotation("R2")).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(named_rotation("R9"), std::invalid_argument);
}

TEST_CASE("semiclassical_phase") {
    Matrix u = semiclassical_phase(kPi);
    Matrix want(2, 2);
    want << -1, 0, 0, 1;
    CHECK((u - kI * want).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((semiclassical_phase(0.0) - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((semiclassical_phase(2 * kPi) + Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("su2_decompose: canonical cases and recomposition oracle") {
    Su2Angles id = su2_decompose(Matrix::Identity(2, 2));
    CHECK(id.alpha == doctest::Approx(0.0));
    CHECK(id.beta == doctest::Approx(0.0));
    CHECK(id.gamma == doctest::Approx(0.0));
    CHECK(id.delta == doctest::Approx(0.0));

    Su2Angles ph = su2_decompose(semiclassical_phase(kPi));
    CHECK(ph.alpha == doctest::Approx(0.0));
    CHECK(ph.beta == doctest::Approx(kPi));
    CHECK(ph.gamma == doctest::Approx(0.0));
    CHECK(ph.delta == doctest::Approx(0.0));

    Matrix r = ramsey({kPi / 2, kPi / 4});
    CHECK((su2_recompose(su2_decompose(r)) - r).cwiseAbs().maxCoeff() < 1e-10);

    Matrix bad(2, 2);
    bad << 1, 1, 0, 1;
    CHECK_THROWS_AS(su2_decompose(bad), std::invalid_argument);

    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (int i = 0; i < 1000; ++i) {
        Matrix m = su2_recompose({angle(rng), angle(rng), std::abs(angle(rng)), angle(rng)});
        CHECK((su2_recompose(su2_decompose(m)) - m).cwiseAbs().maxCoeff() < 1e-10);
    }
}

TEST_CASE("lambda_dispersive: pi interaction swaps b and c on odd photon number") {
    const int N = 4;
    Unitary u = lambda_dispersive_matrix(kPi, 0.0, 0.0, N);
    auto b_idx = [N](int n) { return N + n; };
    auto c_idx = [N](int n) { return 2 * N + n; };
    // |b,0> inert; |b,1> -> -|c,1>; |c,1> -> -|b,1>.
    CHECK(std::abs(u.matrix(b_idx(0), b_idx(0)) - 1.0) < 1e-12);
    CHECK(std::abs(u.matrix(c_idx(1), b_idx(1)) + 1.0) < 1e-12);
    CHECK(std::abs(u.matrix(b_idx(1), b_idx(1))) < 1e-12);
    CHECK(std::abs(u.matrix(b_idx(1), c_idx(1)) + 1.0) < 1e-12);
}

TEST_CASE("lambda parity projectors") {
    auto [plus, minus] = lambda_parity_projectors(4);
    CHECK(std::abs(plus(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(plus(1, 1)) < 1e-15);
    CHECK(std::abs(minus(1, 1) + 1.0) < 1e-15);
    CHECK((plus - minus - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((plus * minus).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("lambda_exact_degenerate: t=0, n=0 amplitude, ODE oracle") {
    const int N = 3;
    LambdaParams p{Complex(0.9, 0.3), Complex(0.4, -0.8), 1.7, 0.0};
    Unitary id = lambda_exact_degenerate(p, N);
    CHECK(support_diff(id.matrix, Matrix::Identity(3 * N, 3 * N), *id.support) < 1e-12);

    p.t = 1.234;
    Unitary u = lambda_exact_degenerate(p, N);
    // u_ba on the |a,0> sector against the closed form.
    double mu0 = p.delta * p.delta / 4.0 + std::norm(p.g1) + std::norm(p.g2);
    Complex want = -kI * std::conj(p.g1) / std::sqrt(mu0) *
                   std::exp(-kI * p.delta * p.t / 2.0) * std::sin(std::sqrt(mu0) * p.t);
    CHECK(std::abs(u.matrix(N + 1, 0) - want) < 1e-12);

    Matrix ref = propagate(
        [&](double s) { return lambda_coupling(p.g1, p.g2, p.delta, N, s); }, 3 * N, p.t, 4000);
    CHECK(support_diff(u.matrix, ref, *u.support) < 1e-8);
}

TEST_CASE("lambda_exact_degenerate converges to the dispersive operator") {
    const int N = 4;
    double g = 1.0, gt = kPi / 4;
    double ratio = 200.0;
    Unitary exact = lambda_exact_degenerate({g, g, ratio * g, gt / g}, N);
    Unitary disp = lambda_dispersive_matrix(2.0 * gt / ratio, 0.0, 0.0, N);
    // b/c block only: the decoupled |a> row differs by a pure phase.
    double d = 0.0;
    for (int r = N; r < 3 * N; ++r)
        for (int c = N; c < 3 * N; ++c) d = std::max(d, std::abs(exact.matrix(r, c) - disp.matrix(r, c)));
    CHECK(d <= 10.0 * g / ratio);
}

TEST_CASE("lambda_exact_nondegenerate: identity at t=0, JC reduction, unitarity") {
    LambdaParams p{Complex(0.7, 0.2), Complex(-0.3, 0.9), -2.1, 0.0};
    Unitary id = lambda_exact_nondegenerate(p, 3, 3);
    CHECK(support_diff(id.matrix, Matrix::Identity(27, 27), *id.support) < 1e-12);

    // g2 = 0: u_bb matches the two-level JC |f>-diagonal element.
    LambdaParams red{Complex(1.1, 0.0), 0.0, 1.9, 0.8};
    Unitary u = lambda_exact_nondegenerate(red, 4, 2);
    Unitary jc = jc_unitary_matrix({1.1, 1.9, 0.8}, 4);
    for (int n1 = 1; n1 < 3; ++n1) {
        int b = (1 * 4 + n1) * 2 + 0;  // |b,n1,0>
        CHECK(std::abs(u.matrix(b, b) - jc.matrix(4 + n1, 4 + n1)) < 1e-12);
    }

    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int i = 0; i < 100; ++i) {
        LambdaParams q{Complex(d(rng), d(rng)), Complex(d(rng), d(rng)), d(rng),
                       std::abs(d(rng))};
        Unitary v = lambda_exact_nondegenerate(q, 3, 3);
        Matrix gram = v.matrix.adjoint() * v.matrix;
        double dev = 0.0;
        for (int r : *v.support)
            for (int c : *v.support)
                dev = std::max(dev, std::abs(gram(r, c) - (r == c ? 1.0 : 0.0)));
        CHECK(dev < 1e-10);
    }
}

TEST_CASE("lambda_classical_rotation: the four displayed matrices") {
    Matrix want(2, 2);

    want << 1, -1, 1, 1;
    CHECK((lambda_classical_rotation(kPi / 2, kPi / 2) -
           std::exp(kI * kPi / 4.0) / std::sqrt(2.0) * want)
              .cwiseAbs()
              .maxCoeff() < 1e-12);

    want << 0, -1, 1, 0;
    CHECK((lambda_classical_rotation(kPi, kPi / 2) - kI * want).cwiseAbs().maxCoeff() < 1e-12);

    want << 0, 1, -1, 0;
    CHECK((lambda_classical_rotation(kPi, -kPi / 2) - kI * want).cwiseAbs().maxCoeff() < 1e-12);

    want << 0, 1, 1, 0;
    CHECK((lambda_classical_rotation(kPi, kPi) - want).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("jc dispersive convergence bound") {
    const int cutoff = 6;
    const double g = 1.0, gt = kPi / 4;
    for (double ratio : {50.0, 100.0, 200.0}) {
        Unitary exact = jc_unitary_matrix({g, ratio * g, gt / g}, cutoff);
        Unitary disp = jc_dispersive_matrix(gt / ratio, cutoff);
        double d = 0.0;
        for (int atom = 0; atom < 2; ++atom) {
            for (int n = 0; n <= 2; ++n) {
                int r = atom * cutoff + n;
                for (int atom2 = 0; atom2 < 2; ++atom2) {
                    for (int m = 0; m <= 2; ++m) {
                        int c = atom2 * cutoff + m;
                        d = std::max(d, std::abs(exact.matrix(r, c) - disp.matrix(r, c)));
                    }
                }
            }
        }
        CHECK(d * ratio <= 5.0);
    }
}
