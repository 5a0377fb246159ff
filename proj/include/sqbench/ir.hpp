#pragma once

#include <compare>
#include <string>
#include <vector>

namespace sqbench {

// Grid site of a bilinear array, addressed as (row, col), row in {0, 1}.
// Row 1 is the bottom row; readout happens at the bottom-left site.
struct Dot {
    int row = 0;
    int col = 0;
    auto operator<=>(const Dot&) const = default;
};

std::string to_string(Dot d);

enum class GateKind {
    H,
    CX,
    CY,
    CZ,
    RX,
    RY,
    RZ,
    CPhase,
    PauliX,
    PauliY,
    PauliZ,
    MeasureZ,
    Shuttle,
    Reset,
};

// Provenance of an operation in a trajectory stream. Routing ops are
// compiler-inserted shuttles; noise ops are injected error gates and are
// invisible to timing and fidelity accounting.
enum class OpTag { Circuit, Routing, Noise };

bool is_single_qubit(GateKind k);
bool is_two_qubit(GateKind k);
bool is_rotation(GateKind k);
bool is_unitary(GateKind k);
const char* gate_name(GateKind k);

// Reduce an angle into [0, 2*pi).
double reduce_angle(double a);

// One step of the strictly sequential operation stream.
// Shuttles carry the moved qubit in operands[0] plus source/target dots.
struct Operation {
    GateKind kind = GateKind::H;
    std::vector<int> operands;
    double angle = 0.0;  // rotations and CPhase, radians in [0, 2*pi)
    OpTag tag = OpTag::Circuit;
    Dot src{};
    Dot dst{};

    bool operator==(const Operation&) const = default;
};

Operation make_1q(GateKind k, int q, OpTag tag = OpTag::Circuit);
Operation make_rotation(GateKind k, int q, double angle, OpTag tag = OpTag::Circuit);
Operation make_2q(GateKind k, int a, int b, OpTag tag = OpTag::Circuit);
Operation make_cphase(int a, int b, double angle, OpTag tag = OpTag::Circuit);
Operation make_measure(int q);
Operation make_reset(int q);
Operation make_shuttle(int q, Dot from, Dot to);

// Ordered gate list over logical qubits. Exactly one operation executes per
// time step; there is no parallelism anywhere in the model.
struct Circuit {
    int n_qubits = 0;
    std::vector<Operation> ops;

    Circuit() = default;
    explicit Circuit(int n) : n_qubits(n) {}

    Circuit& add(Operation op);
    Circuit& h(int q) { return add(make_1q(GateKind::H, q)); }
    Circuit& cx(int c, int t) { return add(make_2q(GateKind::CX, c, t)); }
    Circuit& cy(int c, int t) { return add(make_2q(GateKind::CY, c, t)); }
    Circuit& cz(int a, int b) { return add(make_2q(GateKind::CZ, a, b)); }
    Circuit& measure_z(int q) { return add(make_measure(q)); }
    Circuit& reset(int q) { return add(make_reset(q)); }
};

// Device timing and fidelity figures. Durations in nanoseconds.
struct HardwareProfile {
    double t_1q_ns = 100.0;
    double t_shuttle_ns = 100.0;
    double t_2q_ns = 150.0;
    double t_meas_ns = 5000.0;
    double t2_ns = 20000.0;  // dephasing time
    double f_1q = 0.9999;
    double f_shuttle = 0.9999;
    double f_2q = 0.999;
    double f_meas = 0.999;

    void validate() const;  // throws std::invalid_argument
};

// Wall-clock cost of one operation. Noise-tagged operations take no time;
// resets are ideal.
double duration_of(const Operation& op, const HardwareProfile& p);

// Success-probability factor of one operation. Noise-tagged operations and
// resets contribute 1.
double fidelity_of(const Operation& op, const HardwareProfile& p);

// Total sequential duration.
double circuit_duration(const Circuit& c, const HardwareProfile& p);

// Text form: one op per line, `GATE q<i> [q<j>] [angle]`. Shuttle lines are
// `SHUTTLE q<i> (r,c) (r,c)`.
std::string format_operation(const Operation& op);
std::string format_circuit(const Circuit& c);
Circuit parse_circuit(const std::string& text);

}  // namespace sqbench
