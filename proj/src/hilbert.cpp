#include "ghzsim/hilbert.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace ghzsim {

int SubsystemSpec::label_index(const std::string& label) const {
    for (int i = 0; i < dim(); ++i) {
        if (labels[i] == label) return i;
    }
    throw std::invalid_argument("unknown label '" + label + "' for subsystem '" + name + "'");
}

SubsystemSpec two_level(std::string name, std::string upper, std::string lower) {
    return {SubsystemKind::TwoLevel, std::move(name), {std::move(upper), std::move(lower)}};
}

SubsystemSpec cascade_atom(std::string name) {
    return {SubsystemKind::Cascade, std::move(name), {"e", "f", "g"}};
}

SubsystemSpec lambda_atom(std::string name) {
    return {SubsystemKind::Lambda, std::move(name), {"a", "b", "c"}};
}

SubsystemSpec fock_mode(std::string name, int cutoff) {
    if (cutoff < 2) throw std::invalid_argument("fock cutoff must be >= 2");
    std::vector<std::string> labels;
    for (int n = 0; n < cutoff; ++n) labels.push_back(std::to_string(n));
    return {SubsystemKind::Fock, std::move(name), std::move(labels)};
}

CompositeSystem::CompositeSystem(std::vector<SubsystemSpec> specs) : specs_(std::move(specs)) {
    if (specs_.empty()) throw std::invalid_argument("composite system needs at least one subsystem");
    std::set<std::string> names;
    for (const auto& s : specs_) {
        if (!names.insert(s.name).second)
            throw std::invalid_argument("duplicate subsystem name '" + s.name + "'");
        std::set<std::string> ls(s.labels.begin(), s.labels.end());
        if (static_cast<int>(ls.size()) != s.dim())
            throw std::invalid_argument("duplicate labels in subsystem '" + s.name + "'");
    }
    strides_.assign(specs_.size(), 1);
    dim_ = 1;
    for (int i = static_cast<int>(specs_.size()) - 1; i >= 0; --i) {
        strides_[i] = dim_;
        dim_ *= specs_[i].dim();
    }
}

int CompositeSystem::subsystem_index(const std::string& name) const {
    for (int i = 0; i < num_subsystems(); ++i) {
        if (specs_[i].name == name) return i;
    }
    throw std::invalid_argument("no subsystem named '" + name + "'");
}

bool CompositeSystem::has_subsystem(const std::string& name) const {
    return std::any_of(specs_.begin(), specs_.end(),
                       [&](const SubsystemSpec& s) { return s.name == name; });
}

int CompositeSystem::index_of(const std::vector<int>& local) const {
    if (static_cast<int>(local.size()) != num_subsystems())
        throw std::invalid_argument("local index tuple has wrong length");
    int idx = 0;
    for (int i = 0; i < num_subsystems(); ++i) {
        if (local[i] < 0 || local[i] >= specs_[i].dim())
            throw std::invalid_argument("local index out of range");
        idx += local[i] * strides_[i];
    }
    return idx;
}

std::vector<int> CompositeSystem::unpack(int global) const {
    std::vector<int> local(num_subsystems());
    for (int i = 0; i < num_subsystems(); ++i) {
        local[i] = (global / strides_[i]) % specs_[i].dim();
    }
    return local;
}

int CompositeSystem::local_of(int global, int k) const {
    return (global / strides_[k]) % specs_[k].dim();
}

SystemPtr make_system(std::vector<SubsystemSpec> specs) {
    return std::make_shared<const CompositeSystem>(std::move(specs));
}

StateVector basis_state(const SystemPtr& system, const std::vector<std::string>& labels) {
    if (static_cast<int>(labels.size()) != system->num_subsystems())
        throw std::invalid_argument("need one label per subsystem");
    std::vector<int> local(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
        local[i] = system->subsystem(static_cast<int>(i)).label_index(labels[i]);
    }
    Vector amps = Vector::Zero(system->dim());
    amps(system->index_of(local)) = 1.0;
    return {system, std::move(amps)};
}

StateVector superposition(const SystemPtr& system,
                          const std::vector<std::pair<std::vector<std::string>, Complex>>& terms) {
    Vector amps = Vector::Zero(system->dim());
    for (const auto& [labels, amp] : terms) {
        std::vector<int> local(labels.size());
        for (size_t i = 0; i < labels.size(); ++i) {
            local[i] = system->subsystem(static_cast<int>(i)).label_index(labels[i]);
        }
        amps(system->index_of(local)) += amp;
    }
    double n = amps.norm();
    if (n == 0.0) throw std::invalid_argument("superposition terms cancel to zero");
    amps /= n;
    return {system, std::move(amps)};
}

void validate_unitary(const Unitary& u, double tol) {
    const int d = u.local_dim();
    if (u.matrix.cols() != d) throw std::invalid_argument("unitary matrix not square");
    if (u.support) {
        for (int i : *u.support) {
            if (i < 0 || i >= d) throw std::invalid_argument("support index out of range");
        }
        Matrix g = u.matrix.adjoint() * u.matrix;
        for (int r : *u.support) {
            for (int c : *u.support) {
                double expect = (r == c) ? 1.0 : 0.0;
                if (std::abs(g(r, c) - expect) > tol)
                    throw std::runtime_error("matrix not unitary on declared support");
            }
        }
    } else {
        Matrix g = u.matrix.adjoint() * u.matrix;
        if ((g - Matrix::Identity(d, d)).norm() > tol * d)
            throw std::runtime_error("matrix not unitary");
    }
}

Unitary embed_two_level(const SystemPtr& system, const std::string& subsystem, const Matrix& m2,
                        const std::string& row0_label, const std::string& row1_label) {
    int k = system->subsystem_index(subsystem);
    const SubsystemSpec& spec = system->subsystem(k);
    int i0 = spec.label_index(row0_label);
    int i1 = spec.label_index(row1_label);
    if (i0 == i1) throw std::invalid_argument("embedding labels must differ");
    Matrix m = Matrix::Identity(spec.dim(), spec.dim());
    m(i0, i0) = m2(0, 0);
    m(i0, i1) = m2(0, 1);
    m(i1, i0) = m2(1, 0);
    m(i1, i1) = m2(1, 1);
    return {{k}, std::move(m), std::nullopt};
}

namespace {

// Global indices grouped by the joint local index of the target tuple.
// For each setting of the non-target subsystems, fills `slot[j]` with the
// global index whose target-local joint index is j.
void for_each_fiber(const CompositeSystem& sys, const std::vector<int>& targets,
                    const std::function<void(const std::vector<int>& slot)>& fn) {
    std::vector<int> tdims;
    for (int t : targets) tdims.push_back(sys.subsystem(t).dim());
    int tdim = 1;
    for (int d : tdims) tdim *= d;

    std::vector<bool> is_target(sys.num_subsystems(), false);
    for (int t : targets) is_target[t] = true;

    std::vector<int> slot(tdim);
    for (int g = 0; g < sys.dim(); ++g) {
        // Visit each fiber once: representative has all target locals at 0.
        bool rep = true;
        for (int t : targets) {
            if (sys.local_of(g, t) != 0) { rep = false; break; }
        }
        if (!rep) continue;
        std::vector<int> local = sys.unpack(g);
        for (int j = 0; j < tdim; ++j) {
            int rem = j;
            for (int ti = static_cast<int>(targets.size()) - 1; ti >= 0; --ti) {
                local[targets[ti]] = rem % tdims[ti];
                rem /= tdims[ti];
            }
            slot[j] = sys.index_of(local);
        }
        fn(slot);
    }
}

}  // namespace

StateVector apply(const StateVector& state, const Unitary& u, double tol) {
    const CompositeSystem& sys = *state.system;
    int tdim = 1;
    for (int t : u.targets) {
        if (t < 0 || t >= sys.num_subsystems())
            throw std::invalid_argument("unitary target out of range");
        tdim *= sys.subsystem(t).dim();
    }
    if (tdim != u.local_dim())
        throw std::invalid_argument("unitary dimension does not match target subsystems");

    std::vector<bool> in_support(tdim, true);
    if (u.support) {
        in_support.assign(tdim, false);
        for (int i : *u.support) in_support[i] = true;
    }

    Vector out = Vector::Zero(sys.dim());
    Vector fiber(tdim);
    for_each_fiber(sys, u.targets, [&](const std::vector<int>& slot) {
        for (int j = 0; j < tdim; ++j) {
            fiber(j) = state.amplitudes(slot[j]);
            if (!in_support[j] && std::abs(fiber(j)) > tol)
                throw std::runtime_error("state has amplitude outside the unitary's support");
        }
        Vector res = u.matrix * fiber;
        for (int j = 0; j < tdim; ++j) out(slot[j]) = res(j);
    });

    double n = out.norm();
    if (std::abs(n - 1.0) > tol)
        throw std::runtime_error("apply() broke normalization");
    return {state.system, std::move(out)};
}

double fidelity(const StateVector& s1, const StateVector& s2) {
    if (s1.system != s2.system && s1.system->dim() != s2.system->dim())
        throw std::invalid_argument("fidelity requires states on the same system");
    Complex ip = s1.amplitudes.dot(s2.amplitudes);
    return std::norm(ip);
}

std::map<std::string, double> marginal(const StateVector& state, const std::string& subsystem) {
    const CompositeSystem& sys = *state.system;
    int k = sys.subsystem_index(subsystem);
    const SubsystemSpec& spec = sys.subsystem(k);
    std::vector<double> probs(spec.dim(), 0.0);
    for (int g = 0; g < sys.dim(); ++g) {
        probs[sys.local_of(g, k)] += std::norm(state.amplitudes(g));
    }
    std::map<std::string, double> out;
    for (int i = 0; i < spec.dim(); ++i) out[spec.labels[i]] = probs[i];
    return out;
}

std::pair<std::string, StateVector> measure(const StateVector& state, const std::string& subsystem,
                                            std::mt19937_64& rng) {
    const CompositeSystem& sys = *state.system;
    int k = sys.subsystem_index(subsystem);
    const SubsystemSpec& spec = sys.subsystem(k);

    std::vector<double> probs(spec.dim(), 0.0);
    for (int g = 0; g < sys.dim(); ++g) probs[sys.local_of(g, k)] += std::norm(state.amplitudes(g));

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double r = unit(rng);
    int outcome = spec.dim() - 1;
    double cdf = 0.0;
    for (int i = 0; i < spec.dim(); ++i) {
        cdf += probs[i];
        if (r <= cdf) { outcome = i; break; }
    }

    Vector collapsed = Vector::Zero(sys.dim());
    for (int g = 0; g < sys.dim(); ++g) {
        if (sys.local_of(g, k) == outcome) collapsed(g) = state.amplitudes(g);
    }
    double n = collapsed.norm();
    if (n < 1e-15) throw std::runtime_error("zero-norm projection in measure()");
    collapsed /= n;
    return {spec.labels[outcome], StateVector{state.system, std::move(collapsed)}};
}

}  // namespace ghzsim
