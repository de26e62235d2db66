#include "ghzsim/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ghzsim {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex expi(double x) { return std::exp(kI * x); }

}  // namespace

Unitary jc_unitary_matrix(const JcParams& p, int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("jc_unitary: cutoff must be >= 2");
    if (p.g <= 0.0) throw std::invalid_argument("jc_unitary: g must be positive");
    if (p.t < 0.0) throw std::invalid_argument("jc_unitary: t must be non-negative");

    const int N = cutoff;
    const int dim = 2 * N;
    auto e_idx = [N](int n) { return n; };
    auto f_idx = [N](int n) { return N + n; };

    Matrix m = Matrix::Zero(dim, dim);

    // |f,0>: nu at n=0 reduces the diagonal element to exactly 1.
    {
        double nu = std::abs(p.delta) / 2.0;
        Complex val = 1.0;
        if (nu > 0.0) {
            val = expi(-p.delta * p.t / 2.0) *
                  (std::cos(nu * p.t) + kI * (p.delta / (2.0 * nu)) * std::sin(nu * p.t));
        }
        m(f_idx(0), f_idx(0)) = val;
    }

    // Excitation blocks {|e,n>, |f,n+1>}.
    for (int n = 0; n + 1 < N; ++n) {
        double mu = std::sqrt(p.g * p.g * (n + 1) + p.delta * p.delta / 4.0);
        double s = std::sin(mu * p.t) / mu;
        Complex ph = expi(p.delta * p.t / 2.0);
        m(e_idx(n), e_idx(n)) =
            ph * (std::cos(mu * p.t) - kI * (p.delta / (2.0 * mu)) * std::sin(mu * p.t));
        m(e_idx(n), f_idx(n + 1)) = -kI * p.g * std::sqrt(n + 1.0) * ph * s;
        m(f_idx(n + 1), e_idx(n)) = -kI * p.g * std::sqrt(n + 1.0) * std::conj(ph) * s;
        m(f_idx(n + 1), f_idx(n + 1)) =
            std::conj(ph) *
            (std::cos(mu * p.t) + kI * (p.delta / (2.0 * mu)) * std::sin(mu * p.t));
    }

    // Truncation: |e,N-1> has no |f,N> partner; freeze it.
    m(e_idx(N - 1), e_idx(N - 1)) = 1.0;

    std::vector<int> support;
    for (int i = 0; i < dim; ++i) {
        if (i != e_idx(N - 1)) support.push_back(i);
    }
    return {{}, std::move(m), std::move(support)};
}

Unitary jc_dispersive_matrix(double phi, int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("jc_dispersive: cutoff must be >= 2");
    const int N = cutoff;
    Matrix m = Matrix::Zero(2 * N, 2 * N);
    for (int n = 0; n < N; ++n) {
        m(n, n) = expi(-phi * (n + 1));      // |e,n>
        m(N + n, N + n) = expi(phi * n);     // |f,n>
    }
    return {{}, std::move(m), std::nullopt};
}

Unitary cascade_dispersive_matrix(double phi, int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("cascade_dispersive: cutoff must be >= 2");
    const int N = cutoff;
    Matrix m = Matrix::Identity(3 * N, 3 * N);
    for (int n = 0; n < N; ++n) {
        m(N + n, N + n) = expi(phi * n);     // |f,n>
    }
    // |e,n> never couples in this scheme; rows 0..N-1 stay identity but are
    // outside the guaranteed support.
    std::vector<int> support;
    for (int i = N; i < 3 * N; ++i) support.push_back(i);
    return {{}, std::move(m), std::move(support)};
}

Matrix ramsey(const RamseyParams& p) {
    Matrix m(2, 2);
    m(0, 0) = std::cos(p.chi);
    m(0, 1) = -kI * expi(p.theta) * std::sin(p.chi);
    m(1, 0) = -kI * expi(-p.theta) * std::sin(p.chi);
    m(1, 1) = std::cos(p.chi);
    return m;
}

Matrix semiclassical_phase(double beta) {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = expi(-beta / 2.0);
    m(1, 1) = expi(beta / 2.0);
    return m;
}

Su2Angles su2_decompose(const Matrix& m, double tol) {
    if (m.rows() != 2 || m.cols() != 2)
        throw std::invalid_argument("su2_decompose: matrix must be 2x2");
    if ((m.adjoint() * m - Matrix::Identity(2, 2)).norm() > tol * 10)
        throw std::invalid_argument("su2_decompose: matrix is not unitary");

    Complex det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    double alpha = std::arg(det) / 2.0;
    Matrix su = expi(-alpha) * m;

    double gamma = 2.0 * std::atan2(std::abs(su(1, 0)), std::abs(su(0, 0)));
    double beta = 0.0, delta = 0.0;
    bool have_cos = std::abs(su(0, 0)) > tol;
    bool have_sin = std::abs(su(1, 0)) > tol;
    if (have_cos && have_sin) {
        double sum = -2.0 * std::arg(su(0, 0));   // beta + delta
        double diff = 2.0 * std::arg(su(1, 0));   // beta - delta
        beta = (sum + diff) / 2.0;
        delta = (sum - diff) / 2.0;
    } else if (have_cos) {
        beta = -2.0 * std::arg(su(0, 0));
    } else {
        beta = 2.0 * std::arg(su(1, 0));
    }

    // Canonical ranges: gamma in [0,pi] by construction, alpha in (-pi,pi].
    if (alpha <= -std::numbers::pi) alpha += 2.0 * std::numbers::pi;
    Su2Angles a{alpha, beta, gamma, delta};

    // The +-pi/2 ambiguity in alpha flips the SU(2) part; fix by recomposing.
    if ((su2_recompose(a) - m).norm() > tol) {
        a.alpha = alpha > 0 ? alpha - std::numbers::pi : alpha + std::numbers::pi;
        a.beta = beta + 2.0 * std::numbers::pi;
    }
    return a;
}

Matrix su2_recompose(const Su2Angles& a) {
    Matrix rz_b = Matrix::Zero(2, 2), ry = Matrix::Zero(2, 2), rz_d = Matrix::Zero(2, 2);
    rz_b(0, 0) = expi(-a.beta / 2.0);
    rz_b(1, 1) = expi(a.beta / 2.0);
    ry(0, 0) = std::cos(a.gamma / 2.0);
    ry(0, 1) = -std::sin(a.gamma / 2.0);
    ry(1, 0) = std::sin(a.gamma / 2.0);
    ry(1, 1) = std::cos(a.gamma / 2.0);
    rz_d(0, 0) = expi(-a.delta / 2.0);
    rz_d(1, 1) = expi(a.delta / 2.0);
    return expi(a.alpha) * rz_b * ry * rz_d;
}

Unitary lambda_dispersive_matrix(double phi, double phi1, double phi2, int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("lambda_dispersive: cutoff must be >= 2");
    const int N = cutoff;
    Matrix m = Matrix::Zero(3 * N, 3 * N);
    Complex rel = expi(phi1 - phi2);
    for (int n = 0; n < N; ++n) {
        Complex p = expi(phi * n);
        m(n, n) = -p;                                    // |a,n>
        m(N + n, N + n) = (p + 1.0) / 2.0;               // u_bb
        m(N + n, 2 * N + n) = rel * (p - 1.0) / 2.0;     // u_bc
        m(2 * N + n, N + n) = std::conj(rel) * (p - 1.0) / 2.0;
        m(2 * N + n, 2 * N + n) = (p + 1.0) / 2.0;
    }
    return {{}, std::move(m), std::nullopt};
}

std::pair<Matrix, Matrix> lambda_parity_projectors(int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("parity projectors: cutoff must be >= 2");
    Matrix plus = Matrix::Zero(cutoff, cutoff);
    Matrix minus = Matrix::Zero(cutoff, cutoff);
    for (int n = 0; n < cutoff; ++n) {
        Complex p = expi(std::numbers::pi * n);
        plus(n, n) = (p + 1.0) / 2.0;
        minus(n, n) = (p - 1.0) / 2.0;
    }
    return {plus, minus};
}

Unitary lambda_exact_degenerate(const LambdaParams& p, int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("lambda_exact: cutoff must be >= 2");
    const int N = cutoff;
    auto a_idx = [N](int n) { return n; };
    auto b_idx = [N](int n) { return N + n; };
    auto c_idx = [N](int n) { return 2 * N + n; };

    double g1sq = std::norm(p.g1), g2sq = std::norm(p.g2);
    double gsq = g1sq + g2sq;

    Matrix m = Matrix::Identity(3 * N, 3 * N);

    // Excitation blocks {|a,n-1>, |b,n>, |c,n>} for n >= 1.
    for (int n = 1; n < N; ++n) {
        if (gsq == 0.0) break;
        double omega = std::sqrt(p.delta * p.delta / 4.0 + gsq * n);
        double s = std::sin(omega * p.t) / omega;
        Complex php = expi(p.delta * p.t / 2.0);
        Complex phm = std::conj(php);
        double root_n = std::sqrt(static_cast<double>(n));

        Complex bracket =
            phm * (kI * (p.delta / (2.0 * omega)) * std::sin(omega * p.t) +
                   std::cos(omega * p.t)) -
            1.0;

        int ia = a_idx(n - 1), ib = b_idx(n), ic = c_idx(n);
        m(ia, ia) = php * (std::cos(omega * p.t) -
                           kI * (p.delta / (2.0 * omega)) * std::sin(omega * p.t));
        m(ia, ib) = -kI * php * s * p.g1 * root_n;
        m(ia, ic) = -kI * php * s * p.g2 * root_n;
        m(ib, ia) = -kI * std::conj(p.g1) * root_n * phm * s;
        m(ic, ia) = -kI * std::conj(p.g2) * root_n * phm * s;
        m(ib, ib) = 1.0 + (g1sq / gsq) * bracket;
        m(ib, ic) = (std::conj(p.g1) * p.g2 / gsq) * bracket;
        m(ic, ib) = (std::conj(p.g2) * p.g1 / gsq) * bracket;
        m(ic, ic) = 1.0 + (g2sq / gsq) * bracket;
    }

    // |a,N-1> couples to the absent |b,N>, |c,N>: frozen, out of support.
    std::vector<int> support;
    for (int i = 0; i < 3 * N; ++i) {
        if (i != a_idx(N - 1)) support.push_back(i);
    }
    return {{}, std::move(m), std::move(support)};
}

Unitary lambda_exact_nondegenerate(const LambdaParams& p, int cutoff1, int cutoff2) {
    if (cutoff1 < 2 || cutoff2 < 2)
        throw std::invalid_argument("lambda_exact_nondegenerate: cutoffs must be >= 2");
    const int N1 = cutoff1, N2 = cutoff2;
    auto idx = [N1, N2](int atom, int n1, int n2) { return (atom * N1 + n1) * N2 + n2; };

    double g1sq = std::norm(p.g1), g2sq = std::norm(p.g2);
    Matrix m = Matrix::Identity(3 * N1 * N2, 3 * N1 * N2);
    std::vector<bool> frozen(3 * N1 * N2, false);

    // Mark incomplete top sectors before filling blocks.
    for (int n1 = 0; n1 < N1; ++n1) {
        for (int n2 = 0; n2 < N2; ++n2) {
            if (n1 == N1 - 1 || n2 == N2 - 1) frozen[idx(0, n1, n2)] = true;
            if (n1 >= 1 && n2 == N2 - 1) frozen[idx(1, n1, n2)] = true;
            if (n2 >= 1 && n1 == N1 - 1) frozen[idx(2, n1, n2)] = true;
        }
    }

    // Blocks {|a,n1,n2>, |b,n1+1,n2>, |c,n1,n2+1>}.
    for (int n1 = 0; n1 + 1 < N1; ++n1) {
        for (int n2 = 0; n2 + 1 < N2; ++n2) {
            double w = g1sq * (n1 + 1) + g2sq * (n2 + 1);
            if (w == 0.0) continue;
            double omega = std::sqrt(p.delta * p.delta / 4.0 + w);
            double s = std::sin(omega * p.t) / omega;
            Complex php = expi(p.delta * p.t / 2.0);
            Complex phm = std::conj(php);
            double r1 = std::sqrt(n1 + 1.0), r2 = std::sqrt(n2 + 1.0);
            Complex bracket =
                phm * (kI * (p.delta / (2.0 * omega)) * std::sin(omega * p.t) +
                       std::cos(omega * p.t)) -
                1.0;

            int ia = idx(0, n1, n2), ib = idx(1, n1 + 1, n2), ic = idx(2, n1, n2 + 1);
            m(ia, ia) = php * (std::cos(omega * p.t) -
                               kI * (p.delta / (2.0 * omega)) * std::sin(omega * p.t));
            m(ia, ib) = -kI * php * s * p.g1 * r1;
            m(ia, ic) = -kI * php * s * p.g2 * r2;
            m(ib, ia) = -kI * std::conj(p.g1) * r1 * phm * s;
            m(ic, ia) = -kI * std::conj(p.g2) * r2 * phm * s;
            m(ib, ib) = 1.0 + (g1sq * (n1 + 1) / w) * bracket;
            m(ib, ic) = (std::conj(p.g1) * r1 * p.g2 * r2 / w) * bracket;
            m(ic, ib) = (std::conj(p.g2) * r2 * p.g1 * r1 / w) * bracket;
            m(ic, ic) = 1.0 + (g2sq * (n2 + 1) / w) * bracket;
        }
    }

    std::vector<int> support;
    for (int i = 0; i < 3 * N1 * N2; ++i) {
        if (!frozen[i]) support.push_back(i);
    }
    return {{}, std::move(m), std::move(support)};
}

Matrix lambda_classical_rotation(double phi, double rel_phase) {
    Matrix m(2, 2);
    Complex p = expi(phi);
    m(0, 0) = (p + 1.0) / 2.0;
    m(0, 1) = expi(rel_phase) * (p - 1.0) / 2.0;
    m(1, 0) = expi(-rel_phase) * (p - 1.0) / 2.0;
    m(1, 1) = (p + 1.0) / 2.0;
    return m;
}

Matrix named_rotation(const std::string& name) {
    const double pi = std::numbers::pi;
    if (name == "R0" || name == "K3") return ramsey({pi, pi / 4});
    if (name == "R1" || name == "R2" || name == "R3" || name == "R4")
        return ramsey({pi / 2, pi / 4});
    if (name == "K1" || name == "K2") return ramsey({pi / 2, -pi / 4});
    throw std::invalid_argument("unknown named rotation '" + name + "'");
}

}  // namespace ghzsim
