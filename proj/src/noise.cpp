#include "sqbench/noise.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqbench {

namespace {

constexpr double kPi = std::numbers::pi;

double dephasing_probability(double duration_ns, double t2_ns) {
    return (1.0 - std::exp(-duration_ns / t2_ns)) / 2.0;
}

GateKind pauli_kind(std::uint64_t pick) {
    switch (pick) {
        case 0: return GateKind::PauliX;
        case 1: return GateKind::PauliY;
        default: return GateKind::PauliZ;
    }
}

GateKind rotation_kind(std::uint64_t pick) {
    switch (pick) {
        case 0: return GateKind::RX;
        case 1: return GateKind::RY;
        default: return GateKind::RZ;
    }
}

void inject(StateVector& s, Operation op, int op_index, bool before,
            NoiseChannel channel, std::vector<ErrorEvent>* log) {
    apply_gate(s, op);
    if (log) {
        ErrorEvent e;
        e.op_index = op_index;
        e.before = before;
        e.channel = channel;
        e.kind = op.kind;
        e.operands = op.operands;
        e.angle = op.angle;
        log->push_back(std::move(e));
    }
}

}  // namespace

void NoiseParamsQ::validate() const {
    if (!(p1d >= 0.0 && p1d <= 0.1))
        throw std::invalid_argument("p1d must lie in [0, 0.1]");
    profile.validate();
}

double NoiseParamsTN::tau1p(double op_duration_ns) const {
    if (tau1p_override) return *tau1p_override;
    return dephasing_probability(op_duration_ns, profile.t2_ns);
}

double NoiseParamsTN::p_cross() const {
    if (xi <= 0.0) throw std::invalid_argument("crosstalk needs xi > 0");
    return 10.0 * p1r / (3.0 * xi);
}

void NoiseParamsTN::validate() const {
    if (!(p1r >= 0.0 && p1r <= 0.1))
        throw std::invalid_argument("p1r must lie in [0, 0.1]");
    if (tau1p_override && !(*tau1p_override >= 0.0 && *tau1p_override <= 1.0))
        throw std::invalid_argument("tau1p must lie in [0, 1]");
    if (crosstalk && xi <= 0.0)
        throw std::invalid_argument("crosstalk needs xi > 0");
    profile.validate();
}

const char* channel_name(NoiseChannel c) {
    switch (c) {
        case NoiseChannel::PauliDepolarizing: return "pauli";
        case NoiseChannel::DephasingZ: return "dephasing_z";
        case NoiseChannel::RandomRotation: return "rotation";
        case NoiseChannel::DecoherenceRotation: return "decoherence_rz";
        case NoiseChannel::Crosstalk: return "crosstalk";
    }
    return "?";
}

Operation ErrorEvent::to_operation() const {
    Operation op;
    op.kind = kind;
    op.operands = operands;
    op.angle = angle;
    op.tag = OpTag::Noise;
    return op;
}

DepolarizingNoise::DepolarizingNoise(NoiseParamsQ params) : params_(params) {
    params_.validate();
}

void DepolarizingNoise::before_measure(StateVector& s, const Operation& op,
                                       int op_index, Rng& rng,
                                       std::vector<ErrorEvent>* log) {
    int q = op.operands[0];
    if (rng.bernoulli(params_.p2d()))
        inject(s, make_1q(pauli_kind(rng.uniform_int(3)), q, OpTag::Noise),
               op_index, true, NoiseChannel::PauliDepolarizing, log);
}

void DepolarizingNoise::after_op(StateVector& s, const Operation& op,
                                 int op_index, Rng& rng,
                                 std::vector<ErrorEvent>* log) {
    if (op.kind == GateKind::MeasureZ || op.kind == GateKind::Reset) return;
    const bool two_qubit = is_two_qubit(op.kind);
    const double rate = two_qubit ? params_.p2d() : params_.p1d;
    const double tau =
        dephasing_probability(duration_of(op, params_.profile), params_.profile.t2_ns);
    for (int q : op.operands) {
        if (rng.bernoulli(rate))
            inject(s, make_1q(pauli_kind(rng.uniform_int(3)), q, OpTag::Noise),
                   op_index, false, NoiseChannel::PauliDepolarizing, log);
        if (rng.bernoulli(tau))
            inject(s, make_1q(GateKind::PauliZ, q, OpTag::Noise), op_index, false,
                   NoiseChannel::DephasingZ, log);
    }
}

RotationNoise::RotationNoise(NoiseParamsTN params) : params_(params) {
    params_.validate();
}

void RotationNoise::rotation_kick(StateVector& s, int op_index,
                                  std::span<const int> targets, double p_rot,
                                  double p_tau, double duration, Rng& rng,
                                  std::vector<ErrorEvent>* log) {
    const double psi = reduce_angle(kPi * std::exp(duration / params_.profile.t2_ns));
    for (int q : targets) {
        if (rng.bernoulli(p_rot)) {
            GateKind axis = rotation_kind(rng.uniform_int(3));
            double phi = reduce_angle(kPi / rng.uniform01_open0());
            inject(s, make_rotation(axis, q, phi, OpTag::Noise), op_index, false,
                   NoiseChannel::RandomRotation, log);
        }
        if (rng.bernoulli(p_tau))
            inject(s, make_rotation(GateKind::RZ, q, psi, OpTag::Noise), op_index,
                   false, NoiseChannel::DecoherenceRotation, log);
    }
}

void RotationNoise::after_op(StateVector& s, const Operation& op, int op_index,
                             Rng& rng, std::vector<ErrorEvent>* log) {
    if (op.kind == GateKind::Reset) return;
    if (op.kind == GateKind::MeasureZ && !params_.post_measurement_noise) return;
    const bool two_qubit_rate =
        is_two_qubit(op.kind) || op.kind == GateKind::MeasureZ;
    const double duration = duration_of(op, params_.profile);
    const double p_rot = two_qubit_rate ? params_.p2r() : params_.p1r;
    const double p_tau =
        two_qubit_rate ? params_.tau2p(duration) : params_.tau1p(duration);

    std::vector<int> all;
    std::span<const int> targets = op.operands;
    if (params_.scope == RotationScope::AllQubits) {
        all.resize(s.n);
        for (int q = 0; q < s.n; ++q) all[q] = q;
        targets = all;
    }
    rotation_kick(s, op_index, targets, p_rot, p_tau, duration, rng, log);

    if (params_.crosstalk && is_two_qubit(op.kind) && s.n >= 3 &&
        rng.bernoulli(params_.p_cross())) {
        int leg = op.operands[rng.uniform_int(2)];
        std::vector<int> bystanders;
        for (int q = 0; q < s.n; ++q)
            if (q != op.operands[0] && q != op.operands[1]) bystanders.push_back(q);
        int partner = bystanders[rng.uniform_int(bystanders.size())];
        double zeta = rng.uniform(0.0, 2.0 * kPi);
        inject(s, make_cphase(leg, partner, zeta, OpTag::Noise), op_index, false,
               NoiseChannel::Crosstalk, log);
    }
}

TrajectoryResult run_trajectory(int n_qubits, std::span<const Operation> ops,
                                NoiseModel& noise, Rng& rng, bool record_events,
                                int trial) {
    TrajectoryResult result{StateVector::zero(n_qubits), {}, {}, {}};
    std::vector<ErrorEvent>* log = record_events ? &result.events : nullptr;
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Operation& op = ops[i];
        const int idx = static_cast<int>(i);
        if (op.tag == OpTag::Noise) {
            apply_gate(result.state, op);
            continue;
        }
        switch (op.kind) {
            case GateKind::MeasureZ: {
                noise.before_measure(result.state, op, idx, rng, log);
                result.measurements.push_back(
                    measure_z(result.state, op.operands[0], rng));
                noise.after_op(result.state, op, idx, rng, log);
                break;
            }
            case GateKind::Reset: {
                int m = measure_z(result.state, op.operands[0], rng);
                if (m == 1)
                    apply_gate(result.state,
                               make_1q(GateKind::PauliX, op.operands[0], OpTag::Noise));
                result.reset_outcomes.push_back(m);
                noise.after_op(result.state, op, idx, rng, log);
                break;
            }
            default: {
                apply_gate(result.state, op);
                noise.after_op(result.state, op, idx, rng, log);
                break;
            }
        }
    }
    for (ErrorEvent& e : result.events) e.trial = trial;
    return result;
}

StateVector replay_with_events(int n_qubits, std::span<const Operation> ops,
                               std::span<const ErrorEvent> events,
                               std::span<const int> measurements,
                               std::span<const int> reset_outcomes) {
    StateVector s = StateVector::zero(n_qubits);
    std::size_t ev = 0, meas = 0, rst = 0;
    auto apply_events = [&](int op_index, bool before) {
        while (ev < events.size() && events[ev].op_index == op_index &&
               events[ev].before == before) {
            apply_gate(s, events[ev].to_operation());
            ++ev;
        }
    };
    for (std::size_t i = 0; i < ops.size(); ++i) {
        const Operation& op = ops[i];
        const int idx = static_cast<int>(i);
        if (op.tag == OpTag::Noise) {
            apply_gate(s, op);
            continue;
        }
        apply_events(idx, true);
        switch (op.kind) {
            case GateKind::MeasureZ:
                if (meas >= measurements.size())
                    throw std::invalid_argument("replay ran out of measurement outcomes");
                project_z(s, op.operands[0], measurements[meas++]);
                break;
            case GateKind::Reset: {
                if (rst >= reset_outcomes.size())
                    throw std::invalid_argument("replay ran out of reset outcomes");
                int m = reset_outcomes[rst++];
                project_z(s, op.operands[0], m);
                if (m == 1) apply_gate(s, make_1q(GateKind::PauliX, op.operands[0]));
                break;
            }
            default:
                apply_gate(s, op);
                break;
        }
        apply_events(idx, false);
    }
    return s;
}

}  // namespace sqbench
