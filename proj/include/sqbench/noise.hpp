#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sqbench/ir.hpp"
#include "sqbench/rng.hpp"
#include "sqbench/sim.hpp"

namespace sqbench {

// Depolarizing-plus-dephasing channel parameters. The two-qubit rate is
// pinned at ten times the single-qubit rate.
struct NoiseParamsQ {
    double p1d = 5e-3;
    HardwareProfile profile{};

    double p2d() const { return 10.0 * p1d; }
    void validate() const;  // p1d in [0, 0.1]
};

enum class RotationScope { Operands, AllQubits };

// Random-rotation channel parameters. tau1p defaults to the per-operation
// dephasing probability (1 - exp(-t/T2)) / 2 when no override is given; the
// two-qubit variants are ten times the single-qubit ones.
struct NoiseParamsTN {
    double p1r = 0.01;
    std::optional<double> tau1p_override;
    bool crosstalk = false;
    double xi = 0.0;  // average connectivity degree, used by the crosstalk rate
    RotationScope scope = RotationScope::Operands;
    bool post_measurement_noise = true;
    HardwareProfile profile{};

    double p2r() const { return 10.0 * p1r; }
    double tau1p(double op_duration_ns) const;
    double tau2p(double op_duration_ns) const { return 10.0 * tau1p(op_duration_ns); }
    double p_cross() const;  // 10 * p1r / (3 * xi)
    void validate() const;
};

enum class NoiseChannel {
    PauliDepolarizing,
    DephasingZ,
    RandomRotation,
    DecoherenceRotation,
    Crosstalk,
};

const char* channel_name(NoiseChannel c);

// One injected error. Replaying the circuit with its event log reproduces
// the trajectory exactly, without any random draws.
struct ErrorEvent {
    int trial = 0;
    int op_index = 0;    // index of the operation the error followed/preceded
    bool before = false; // fired ahead of a measurement projection
    NoiseChannel channel{};
    GateKind kind{};
    std::vector<int> operands;
    double angle = 0.0;

    Operation to_operation() const;
};

class NoiseModel {
public:
    virtual ~NoiseModel() = default;
    // Called immediately before a MeasureZ projection.
    virtual void before_measure(StateVector&, const Operation&, int, Rng&,
                                std::vector<ErrorEvent>*) {}
    // Called after every executed operation (including MeasureZ).
    virtual void after_op(StateVector&, const Operation&, int, Rng&,
                          std::vector<ErrorEvent>*) {}
};

class NoNoise final : public NoiseModel {};

// After every gate or shuttle: a uniform Pauli with the class rate, then a
// Z error with the duration-dependent dephasing probability. Before each
// measurement: a uniform Pauli at the two-qubit rate.
class DepolarizingNoise final : public NoiseModel {
public:
    explicit DepolarizingNoise(NoiseParamsQ params);
    void before_measure(StateVector&, const Operation&, int, Rng&,
                        std::vector<ErrorEvent>*) override;
    void after_op(StateVector&, const Operation&, int, Rng&,
                  std::vector<ErrorEvent>*) override;

private:
    NoiseParamsQ params_;
};

// After every gate or shuttle (and optionally after measurements): a
// rotation about a uniform axis with angle pi/mu, mu ~ U(0,1], with the
// class rate; then Rz(pi * exp(t/T2)) with the tau' probability. With
// crosstalk enabled, each two-qubit gate may additionally fire a
// CPHASE(zeta), zeta ~ U[0,2pi), between one operand and a uniformly chosen
// bystander qubit.
class RotationNoise final : public NoiseModel {
public:
    explicit RotationNoise(NoiseParamsTN params);
    void after_op(StateVector&, const Operation&, int, Rng&,
                  std::vector<ErrorEvent>*) override;

private:
    void rotation_kick(StateVector& s, int op_index, std::span<const int> targets,
                       double p_rot, double p_tau, double duration, Rng& rng,
                       std::vector<ErrorEvent>* log);
    NoiseParamsTN params_;
};

struct TrajectoryResult {
    StateVector state;
    std::vector<int> measurements;    // MeasureZ outcomes in stream order
    std::vector<int> reset_outcomes;  // collapse outcomes consumed by resets
    std::vector<ErrorEvent> events;
};

// Replay an operation stream against a fresh |0...0> register, sampling the
// noise model along the way. Noise-tagged ops in the input are applied as
// written (no extra noise is attached to them).
TrajectoryResult run_trajectory(int n_qubits, std::span<const Operation> ops,
                                NoiseModel& noise, Rng& rng,
                                bool record_events = false, int trial = 0);

// Deterministic replay of a recorded trajectory: circuit ops plus logged
// error events, reusing the logged measurement and reset outcomes.
StateVector replay_with_events(int n_qubits, std::span<const Operation> ops,
                               std::span<const ErrorEvent> events,
                               std::span<const int> measurements,
                               std::span<const int> reset_outcomes);

}  // namespace sqbench
