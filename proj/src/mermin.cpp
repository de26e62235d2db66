#include "ghzsim/mermin.hpp"

#include <Eigen/SVD>
#include <set>
#include <stdexcept>

namespace ghzsim {

namespace {

constexpr Complex kI{0.0, 1.0};

// Identity-extends a single-subsystem operator over the composite space.
Matrix embed_local(const SystemPtr& system, int k, const Matrix& local) {
    const CompositeSystem& sys = *system;
    const int dim = sys.dim();
    Matrix out = Matrix::Zero(dim, dim);
    for (int r = 0; r < dim; ++r) {
        int lr = sys.local_of(r, k);
        for (int lc = 0; lc < sys.subsystem(k).dim(); ++lc) {
            if (local(lr, lc) == Complex{0.0, 0.0} && lr != lc) continue;
            std::vector<int> loc = sys.unpack(r);
            loc[k] = lc;
            out(r, sys.index_of(loc)) = local(lr, lc);
        }
    }
    return out;
}

}  // namespace

Matrix sigma(PauliAxis axis, const SystemPtr& system, const QubitEmbedding& emb) {
    int k = system->subsystem_index(emb.subsystem);
    const SubsystemSpec& spec = system->subsystem(k);
    int ip = spec.label_index(emb.plus_label);
    int im = spec.label_index(emb.minus_label);
    if (ip == im) throw std::invalid_argument("embedding labels must differ");
    Matrix local = Matrix::Zero(spec.dim(), spec.dim());
    if (axis == PauliAxis::X) {
        local(ip, im) = 1.0;
        local(im, ip) = 1.0;
    } else {
        local(ip, im) = -kI;
        local(im, ip) = kI;
    }
    return embed_local(system, k, local);
}

MerminSet build_mermin(const SystemPtr& system, const std::vector<QubitEmbedding>& embeddings) {
    if (embeddings.size() != 3) throw std::invalid_argument("build_mermin needs three embeddings");
    std::set<std::string> names;
    for (const auto& e : embeddings) {
        if (!names.insert(e.subsystem).second)
            throw std::invalid_argument("embeddings must target distinct subsystems");
    }
    Matrix x1 = sigma(PauliAxis::X, system, embeddings[0]);
    Matrix y1 = sigma(PauliAxis::Y, system, embeddings[0]);
    Matrix x2 = sigma(PauliAxis::X, system, embeddings[1]);
    Matrix y2 = sigma(PauliAxis::Y, system, embeddings[1]);
    Matrix x3 = sigma(PauliAxis::X, system, embeddings[2]);
    Matrix y3 = sigma(PauliAxis::Y, system, embeddings[2]);
    return {x1 * y2 * y3, y1 * x2 * y3, y1 * y2 * x3, x1 * x2 * x3};
}

Matrix embedded_projector(const SystemPtr& system, const std::vector<QubitEmbedding>& embeddings) {
    const CompositeSystem& sys = *system;
    Matrix p = Matrix::Identity(sys.dim(), sys.dim());
    for (const auto& e : embeddings) {
        int k = sys.subsystem_index(e.subsystem);
        const SubsystemSpec& spec = sys.subsystem(k);
        Matrix local = Matrix::Zero(spec.dim(), spec.dim());
        local(spec.label_index(e.plus_label), spec.label_index(e.plus_label)) = 1.0;
        local(spec.label_index(e.minus_label), spec.label_index(e.minus_label)) = 1.0;
        p = p * embed_local(system, k, local);
    }
    return p;
}

double operator_norm(const Matrix& m) {
    return Eigen::JacobiSVD<Matrix>(m).singularValues()(0);
}

double commutator_norm(const Matrix& x, const Matrix& y) {
    if (x.rows() != y.rows()) throw std::invalid_argument("commutator: dimension mismatch");
    return operator_norm(x * y - y * x);
}

double expectation(const Matrix& op, const StateVector& state, double tol) {
    Complex v = state.amplitudes.dot(op * state.amplitudes);
    if (std::abs(v.imag()) > tol)
        throw std::runtime_error("expectation has non-negligible imaginary part");
    return v.real();
}

LhvLedger lhv_ledger(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    LhvLedger ledger{sign, sign, {}, 0};
    for (int bits = 0; bits < 64; ++bits) {
        LhvAssignment asg{};
        for (int k = 0; k < 3; ++k) {
            asg.m_x[k] = (bits >> k) & 1 ? 1 : -1;
            asg.m_y[k] = (bits >> (k + 3)) & 1 ? 1 : -1;
        }
        int a = asg.m_x[0] * asg.m_y[1] * asg.m_y[2];
        int b = asg.m_y[0] * asg.m_x[1] * asg.m_y[2];
        int c = asg.m_y[0] * asg.m_y[1] * asg.m_x[2];
        if (a != -sign || b != -sign || c != -sign) continue;
        ledger.consistent.push_back(asg);
        int d = asg.m_x[0] * asg.m_x[1] * asg.m_x[2];
        if (d == ledger.quantum_d) ++ledger.counterexamples;
    }
    return ledger;
}

}  // namespace ghzsim
