#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ghzsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kDefaultTol = 1e-10;

enum class SubsystemKind { TwoLevel, Cascade, Lambda, Fock };

/// One tensor factor: a multi-level atom or a truncated Fock mode.
/// Basis labels are ordered; that order fixes both the index mapping and
/// the row/column convention of every matrix acting on the factor.
struct SubsystemSpec {
    SubsystemKind kind;
    std::string name;
    std::vector<std::string> labels;

    int dim() const { return static_cast<int>(labels.size()); }
    int label_index(const std::string& label) const;
};

// Factories. Two-level basis order is (upper, lower); cascade is (e, f, g);
// lambda is (a, b, c); Fock is |0>..|cutoff-1>.
SubsystemSpec two_level(std::string name, std::string upper = "e", std::string lower = "f");
SubsystemSpec cascade_atom(std::string name);
SubsystemSpec lambda_atom(std::string name);
SubsystemSpec fock_mode(std::string name, int cutoff);

/// Ordered list of subsystems with row-major basis indexing.
class CompositeSystem {
  public:
    explicit CompositeSystem(std::vector<SubsystemSpec> specs);

    int dim() const { return dim_; }
    int num_subsystems() const { return static_cast<int>(specs_.size()); }
    const SubsystemSpec& subsystem(int i) const { return specs_.at(i); }
    int subsystem_index(const std::string& name) const;
    bool has_subsystem(const std::string& name) const;

    // Row-major: the first subsystem varies slowest.
    int index_of(const std::vector<int>& local) const;
    std::vector<int> unpack(int global) const;
    // Local index of subsystem k within global index.
    int local_of(int global, int k) const;

  private:
    std::vector<SubsystemSpec> specs_;
    std::vector<int> strides_;
    int dim_;
};

using SystemPtr = std::shared_ptr<const CompositeSystem>;

SystemPtr make_system(std::vector<SubsystemSpec> specs);

/// Normalized amplitude vector over the composite basis.
struct StateVector {
    SystemPtr system;
    Vector amplitudes;

    double norm() const { return amplitudes.norm(); }
};

StateVector basis_state(const SystemPtr& system, const std::vector<std::string>& labels);

/// Builds a (generally unnormalized) state from label-tuple -> amplitude terms,
/// then normalizes. Convenience for writing golden states in tests/protocols.
StateVector superposition(const SystemPtr& system,
                          const std::vector<std::pair<std::vector<std::string>, Complex>>& terms);

/// Dense unitary on an ordered tuple of subsystems. `support`, when present,
/// lists the local joint-basis indices on which unitarity is guaranteed;
/// outside it the matrix is frozen to identity and apply() rejects states
/// with amplitude there.
struct Unitary {
    std::vector<int> targets;
    Matrix matrix;
    std::optional<std::vector<int>> support;

    int local_dim() const { return static_cast<int>(matrix.rows()); }
};

/// Checks M†M = I on the declared support. Throws on violation.
void validate_unitary(const Unitary& u, double tol = kDefaultTol);

/// Lifts a 2x2 matrix onto two chosen labels of a subsystem, identity on the
/// remaining levels. Used for Ramsey rotations on three-level atoms.
Unitary embed_two_level(const SystemPtr& system, const std::string& subsystem,
                        const Matrix& m2, const std::string& row0_label,
                        const std::string& row1_label);

StateVector apply(const StateVector& state, const Unitary& u, double tol = kDefaultTol);

double fidelity(const StateVector& s1, const StateVector& s2);

std::map<std::string, double> marginal(const StateVector& state, const std::string& subsystem);

/// Projective measurement of one subsystem. Samples by inverse-CDF over the
/// labels in declaration order; a draw landing exactly on a boundary resolves
/// to the lower-index label.
std::pair<std::string, StateVector> measure(const StateVector& state, const std::string& subsystem,
                                            std::mt19937_64& rng);

}  // namespace ghzsim
