#include "ghzsim/protocol.hpp"

#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

#include "ghzsim/mermin.hpp"

namespace ghzsim {

namespace {

constexpr double kPi = std::numbers::pi;

// The (upper, lower) label pair a 2x2 rotation acts on.
std::pair<std::string, std::string> qubit_pair(const SubsystemSpec& spec) {
    switch (spec.kind) {
        case SubsystemKind::TwoLevel:
            return {spec.labels[0], spec.labels[1]};
        case SubsystemKind::Cascade:
            return {"f", "g"};
        case SubsystemKind::Lambda:
            return {"b", "c"};
        case SubsystemKind::Fock:
            break;
    }
    throw std::invalid_argument("no qubit pair on subsystem '" + spec.name + "'");
}

int require_sign(int sign) {
    if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
    return sign;
}

}  // namespace

bool step_equal(const ProtocolStep& a, const ProtocolStep& b) {
    if (a.index() != b.index()) return false;
    if (auto* pa = std::get_if<PrepareCavity>(&a))
        return pa->sign == std::get<PrepareCavity>(b).sign;
    if (auto* ra = std::get_if<RamseyRotate>(&a)) {
        const auto& rb = std::get<RamseyRotate>(b);
        if (ra->atom != rb.atom || ra->named != rb.named) return false;
        if (!ra->named.empty()) return true;
        return ra->params.theta == rb.params.theta && ra->params.chi == rb.params.chi;
    }
    if (auto* da = std::get_if<DispersiveInteract>(&a)) {
        const auto& db = std::get<DispersiveInteract>(b);
        return da->atom == db.atom && da->phi == db.phi;
    }
    if (auto* ia = std::get_if<ResonantInteract>(&a)) {
        const auto& ib = std::get<ResonantInteract>(b);
        return ia->atom == ib.atom && ia->gt == ib.gt;
    }
    return std::get<Detect>(a).atom == std::get<Detect>(b).atom;
}

StateVector prepare_cavity(int sign, int cutoff) {
    require_sign(sign);
    auto system = make_system({two_level("A0", "e", "f"), fock_mode("C", cutoff)});
    StateVector state = basis_state(system, {"f", "0"});

    double theta = sign > 0 ? kPi : 0.0;
    state = apply(state, embed_two_level(system, "A0", ramsey({theta, kPi / 4}), "e", "f"));

    Unitary jc = jc_unitary_matrix({1.0, 0.0, kPi / 2}, cutoff);
    jc.targets = {0, 1};
    return apply(state, jc);
}

StateVector ghz_target(AtomFamily family, int sign, int cutoff) {
    require_sign(sign);
    if (family == AtomFamily::Cascade) {
        auto system =
            make_system({cascade_atom("A1"), cascade_atom("A2"), fock_mode("C", cutoff)});
        return superposition(system, {{{"f", "f", "0"}, 1.0},
                                      {{"g", "g", "1"}, static_cast<double>(sign)}});
    }
    auto system = make_system({lambda_atom("A1"), lambda_atom("A2"), fock_mode("C", cutoff)});
    return superposition(system, {{{"b", "b", "0"}, 1.0},
                                  {{"c", "c", "1"}, static_cast<double>(sign)}});
}

StateVector ghz_prepare_cascade(int sign, int cutoff) {
    require_sign(sign);
    auto system = make_system({cascade_atom("A1"), cascade_atom("A2"), fock_mode("C", cutoff)});
    // Cavity already prepared in (|0> + sign |1>)/sqrt(2); A0 has left the scene.
    StateVector state = superposition(
        system, {{{"g", "g", "0"}, 1.0}, {{"g", "g", "1"}, static_cast<double>(sign)}});

    Unitary phase = cascade_dispersive_matrix(kPi, cutoff);
    for (const char* atom : {"A1", "A2"}) {
        int k = system->subsystem_index(atom);
        state = apply(state, embed_two_level(system, atom, named_rotation("R1"), "f", "g"));
        Unitary u = phase;
        u.targets = {k, system->subsystem_index("C")};
        state = apply(state, u);
        state = apply(state, embed_two_level(system, atom, named_rotation("R2"), "f", "g"));
    }
    return state;
}

StateVector ghz_prepare_lambda(int sign, int cutoff) {
    require_sign(sign);
    auto system = make_system({lambda_atom("A1"), lambda_atom("A2"), fock_mode("C", cutoff)});
    StateVector state = superposition(
        system, {{{"b", "b", "0"}, 1.0}, {{"b", "b", "1"}, static_cast<double>(sign)}});

    Unitary u = lambda_dispersive_matrix(kPi, 0.0, 0.0, cutoff);
    for (const char* atom : {"A1", "A2"}) {
        Unitary v = u;
        v.targets = {system->subsystem_index(atom), system->subsystem_index("C")};
        state = apply(state, v);
    }
    return state;
}

StateVector probe_cavity(const StateVector& state) {
    const SystemPtr& system = state.system;
    int a3 = system->subsystem_index("A3");
    int cav = system->subsystem_index("C");
    int cutoff = system->subsystem(cav).dim();

    Unitary jc = jc_unitary_matrix({1.0, 0.0, kPi / 2}, cutoff);
    jc.targets = {a3, cav};
    StateVector out = apply(state, jc);
    return apply(out, embed_two_level(system, "A3", named_rotation("K3"), "f", "g"));
}

SystemPtr test_system(AtomFamily family, int cutoff) {
    std::vector<SubsystemSpec> specs;
    if (family == AtomFamily::Cascade) {
        specs = {cascade_atom("A1"), cascade_atom("A2")};
    } else {
        specs = {lambda_atom("A1"), lambda_atom("A2")};
    }
    specs.push_back(two_level("A3", "f", "g"));
    specs.push_back(fock_mode("C", cutoff));
    return make_system(std::move(specs));
}

StateVector initial_state(AtomFamily family, int cutoff) {
    auto system = test_system(family, cutoff);
    if (family == AtomFamily::Cascade) return basis_state(system, {"g", "g", "g", "0"});
    return basis_state(system, {"b", "b", "g", "0"});
}

namespace {

const std::string* step_atom(const ProtocolStep& step) {
    if (auto* r = std::get_if<RamseyRotate>(&step)) return &r->atom;
    if (auto* d = std::get_if<DispersiveInteract>(&step)) return &d->atom;
    if (auto* i = std::get_if<ResonantInteract>(&step)) return &i->atom;
    if (auto* d = std::get_if<Detect>(&step)) return &d->atom;
    return nullptr;
}

[[noreturn]] void step_error(size_t index, const std::string& reason) {
    throw std::invalid_argument("step " + std::to_string(index + 1) + ": " + reason);
}

}  // namespace

void validate_steps(const SystemPtr& system, const std::vector<ProtocolStep>& steps) {
    std::set<std::string> detected;
    std::set<std::string> interacted;
    for (size_t i = 0; i < steps.size(); ++i) {
        const ProtocolStep& step = steps[i];
        if (std::holds_alternative<PrepareCavity>(step)) {
            if (i != 0) step_error(i, "prepare_cavity must be the first step");
            continue;
        }
        const std::string& atom = *step_atom(step);
        if (!system->has_subsystem(atom)) step_error(i, "unknown subsystem '" + atom + "'");
        if (detected.count(atom))
            step_error(i, "subsystem '" + atom + "' already detected");
        if (std::holds_alternative<Detect>(step)) {
            if (!interacted.count(atom))
                step_error(i, "detect before any interaction on '" + atom + "'");
            detected.insert(atom);
        } else {
            interacted.insert(atom);
        }
    }
}

Execution run_steps(const StateVector& initial, const std::vector<ProtocolStep>& steps,
                    AtomFamily family, std::mt19937_64& rng) {
    (void)family;
    const SystemPtr& system = initial.system;
    validate_steps(system, steps);
    int cav = system->subsystem_index("C");
    int cutoff = system->subsystem(cav).dim();

    Execution ex{initial, {}};
    for (const ProtocolStep& step : steps) {
        if (auto* p = std::get_if<PrepareCavity>(&step)) {
            // Valid on the fresh state only (enforced by validate_steps):
            // replace the |0> cavity factor with (|0> + sign |1>)/sqrt(2).
            Vector amps = Vector::Zero(system->dim());
            double inv_sqrt2 = 1.0 / std::sqrt(2.0);
            for (int g = 0; g < system->dim(); ++g) {
                if (system->local_of(g, cav) != 0) {
                    if (std::abs(ex.state.amplitudes(g)) > 1e-12)
                        throw std::runtime_error("prepare_cavity requires the cavity in |0>");
                    continue;
                }
                Complex a = ex.state.amplitudes(g);
                std::vector<int> loc = system->unpack(g);
                amps(g) += a * inv_sqrt2;
                loc[cav] = 1;
                amps(system->index_of(loc)) += a * inv_sqrt2 * static_cast<double>(p->sign);
            }
            ex.state = {system, std::move(amps)};
        } else if (auto* r = std::get_if<RamseyRotate>(&step)) {
            Matrix m = r->named.empty() ? ramsey(r->params) : named_rotation(r->named);
            auto [up, lo] = qubit_pair(system->subsystem(system->subsystem_index(r->atom)));
            ex.state = apply(ex.state, embed_two_level(system, r->atom, m, up, lo));
        } else if (auto* d = std::get_if<DispersiveInteract>(&step)) {
            int k = system->subsystem_index(d->atom);
            Unitary u;
            switch (system->subsystem(k).kind) {
                case SubsystemKind::Cascade:
                    u = cascade_dispersive_matrix(d->phi, cutoff);
                    break;
                case SubsystemKind::Lambda:
                    u = lambda_dispersive_matrix(d->phi, 0.0, 0.0, cutoff);
                    break;
                case SubsystemKind::TwoLevel:
                    u = jc_dispersive_matrix(d->phi, cutoff);
                    break;
                default:
                    throw std::invalid_argument("dispersive step needs an atomic subsystem");
            }
            u.targets = {k, cav};
            ex.state = apply(ex.state, u);
        } else if (auto* res = std::get_if<ResonantInteract>(&step)) {
            int k = system->subsystem_index(res->atom);
            if (system->subsystem(k).kind != SubsystemKind::TwoLevel)
                throw std::invalid_argument("resonant step needs a two-level atom");
            Unitary u = jc_unitary_matrix({1.0, 0.0, res->gt}, cutoff);
            u.targets = {k, cav};
            ex.state = apply(ex.state, u);
        } else {
            const auto& det = std::get<Detect>(step);
            auto [label, collapsed] = measure(ex.state, det.atom, rng);
            ex.state = std::move(collapsed);
            ex.detections.emplace_back(det.atom, label);
        }
    }
    return ex;
}

std::vector<ProtocolStep> builtin_steps(AtomFamily family, int sign) {
    require_sign(sign);
    std::vector<ProtocolStep> steps;
    steps.push_back(PrepareCavity{sign});
    if (family == AtomFamily::Cascade) {
        steps.push_back(RamseyRotate{"A1", "R1", {}});
        steps.push_back(DispersiveInteract{"A1", kPi});
        steps.push_back(RamseyRotate{"A1", "R2", {}});
        steps.push_back(RamseyRotate{"A2", "R3", {}});
        steps.push_back(DispersiveInteract{"A2", kPi});
        steps.push_back(RamseyRotate{"A2", "R4", {}});
    } else {
        steps.push_back(DispersiveInteract{"A1", kPi});
        steps.push_back(DispersiveInteract{"A2", kPi});
    }
    steps.push_back(RamseyRotate{"A1", "K1", {}});
    steps.push_back(Detect{"A1"});
    steps.push_back(RamseyRotate{"A2", "K2", {}});
    steps.push_back(Detect{"A2"});
    steps.push_back(ResonantInteract{"A3", kPi / 2});
    steps.push_back(RamseyRotate{"A3", "K3", {}});
    steps.push_back(Detect{"A3"});
    return steps;
}

int eigenvalue_of(AtomFamily family, int which_atom, const std::string& label) {
    if (which_atom == 2) return label == "g" ? 1 : -1;  // probe A3
    if (family == AtomFamily::Cascade) return label == "g" ? 1 : -1;
    return label == "c" ? 1 : -1;
}

std::mt19937_64 shot_rng(std::uint64_t seed, int shot) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(shot)};
    return std::mt19937_64(seq);
}

TestResult ghz_test(AtomFamily family, int sign, int shots, std::uint64_t seed, int cutoff) {
    return run_test(family, sign, builtin_steps(family, sign), shots, seed, cutoff);
}

TestResult run_test(AtomFamily family, int sign, const std::vector<ProtocolStep>& steps,
                    int shots, std::uint64_t seed, int cutoff) {
    require_sign(sign);
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");

    StateVector start = initial_state(family, cutoff);

    // Cross-check value from the operator algebra.
    StateVector prepared = family == AtomFamily::Cascade ? ghz_prepare_cascade(sign, cutoff)
                                                         : ghz_prepare_lambda(sign, cutoff);
    std::vector<QubitEmbedding> emb;
    if (family == AtomFamily::Cascade) {
        emb = {{"A1", "f", "g"}, {"A2", "f", "g"}, {"C", "0", "1"}};
    } else {
        emb = {{"A1", "b", "c"}, {"A2", "b", "c"}, {"C", "0", "1"}};
    }
    MerminSet ops = build_mermin(prepared.system, emb);
    double expected_d = expectation(ops.D, prepared);

    TestResult result;
    result.aggregate.expected_d = expected_d;
    result.aggregate.all_match = true;
    double sum = 0.0;

    for (int shot = 0; shot < shots; ++shot) {
        std::mt19937_64 rng = shot_rng(seed, shot);
        Execution ex = run_steps(start, steps, family, rng);
        if (ex.detections.size() != 3)
            throw std::runtime_error("test protocol must detect exactly three subsystems");

        OutcomeRecord rec;
        rec.shot = shot;
        rec.product = 1;
        for (const auto& [atom, label] : ex.detections) {
            int k = atom == "A1" ? 0 : atom == "A2" ? 1 : 2;
            rec.labels[k] = label + std::to_string(k + 1);
            rec.eigs[k] = eigenvalue_of(family, k, label);
            rec.product *= rec.eigs[k];
        }
        std::string key = rec.labels[0] + "," + rec.labels[1] + "," + rec.labels[2];
        sum += rec.product;
        if (rec.product != static_cast<int>(std::lround(expected_d)))
            result.aggregate.all_match = false;
        ++result.aggregate.histogram[key];
        result.records.push_back(rec);
    }
    result.aggregate.empirical_product = sum / shots;
    return result;
}

}  // namespace ghzsim
