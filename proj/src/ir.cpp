#include "sqbench/ir.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace sqbench {

std::string to_string(Dot d) {
    return "(" + std::to_string(d.row) + "," + std::to_string(d.col) + ")";
}

bool is_single_qubit(GateKind k) {
    switch (k) {
        case GateKind::H:
        case GateKind::RX:
        case GateKind::RY:
        case GateKind::RZ:
        case GateKind::PauliX:
        case GateKind::PauliY:
        case GateKind::PauliZ:
        case GateKind::MeasureZ:
        case GateKind::Reset:
            return true;
        default:
            return false;
    }
}

bool is_two_qubit(GateKind k) {
    switch (k) {
        case GateKind::CX:
        case GateKind::CY:
        case GateKind::CZ:
        case GateKind::CPhase:
            return true;
        default:
            return false;
    }
}

bool is_rotation(GateKind k) {
    return k == GateKind::RX || k == GateKind::RY || k == GateKind::RZ;
}

bool is_unitary(GateKind k) {
    return k != GateKind::MeasureZ && k != GateKind::Reset && k != GateKind::Shuttle;
}

const char* gate_name(GateKind k) {
    switch (k) {
        case GateKind::H: return "H";
        case GateKind::CX: return "CX";
        case GateKind::CY: return "CY";
        case GateKind::CZ: return "CZ";
        case GateKind::RX: return "RX";
        case GateKind::RY: return "RY";
        case GateKind::RZ: return "RZ";
        case GateKind::CPhase: return "CPHASE";
        case GateKind::PauliX: return "X";
        case GateKind::PauliY: return "Y";
        case GateKind::PauliZ: return "Z";
        case GateKind::MeasureZ: return "MZ";
        case GateKind::Shuttle: return "SHUTTLE";
        case GateKind::Reset: return "RESET";
    }
    return "?";
}

double reduce_angle(double a) {
    if (!std::isfinite(a)) throw std::invalid_argument("angle must be finite");
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    return r;
}

Operation make_1q(GateKind k, int q, OpTag tag) {
    if (!is_single_qubit(k) || is_rotation(k))
        throw std::invalid_argument("make_1q: not an angle-free 1q gate");
    if (q < 0) throw std::invalid_argument("make_1q: negative qubit");
    Operation op;
    op.kind = k;
    op.operands = {q};
    op.tag = tag;
    return op;
}

Operation make_rotation(GateKind k, int q, double angle, OpTag tag) {
    if (!is_rotation(k)) throw std::invalid_argument("make_rotation: not a rotation");
    if (q < 0) throw std::invalid_argument("make_rotation: negative qubit");
    Operation op;
    op.kind = k;
    op.operands = {q};
    op.angle = reduce_angle(angle);
    op.tag = tag;
    return op;
}

Operation make_2q(GateKind k, int a, int b, OpTag tag) {
    if (!is_two_qubit(k)) throw std::invalid_argument("make_2q: not a 2q gate");
    if (a < 0 || b < 0 || a == b) throw std::invalid_argument("make_2q: operands must be distinct");
    Operation op;
    op.kind = k;
    op.operands = {a, b};
    op.tag = tag;
    return op;
}

Operation make_cphase(int a, int b, double angle, OpTag tag) {
    Operation op = make_2q(GateKind::CPhase, a, b, tag);
    op.angle = reduce_angle(angle);
    return op;
}

Operation make_measure(int q) { return make_1q(GateKind::MeasureZ, q); }

Operation make_reset(int q) { return make_1q(GateKind::Reset, q); }

Operation make_shuttle(int q, Dot from, Dot to) {
    if (q < 0) throw std::invalid_argument("make_shuttle: negative qubit");
    if (from == to) throw std::invalid_argument("make_shuttle: dots must be distinct");
    Operation op;
    op.kind = GateKind::Shuttle;
    op.operands = {q};
    op.tag = OpTag::Routing;
    op.src = from;
    op.dst = to;
    return op;
}

Circuit& Circuit::add(Operation op) {
    for (int q : op.operands) {
        if (q < 0 || q >= n_qubits)
            throw std::invalid_argument("Circuit::add: operand out of range");
    }
    ops.push_back(std::move(op));
    return *this;
}

void HardwareProfile::validate() const {
    auto positive = [](double v) { return v > 0.0 && std::isfinite(v); };
    if (!positive(t_1q_ns) || !positive(t_shuttle_ns) || !positive(t_2q_ns) ||
        !positive(t_meas_ns))
        throw std::invalid_argument("HardwareProfile: durations must be positive");
    // An infinite T2 is allowed and turns dephasing off exactly.
    if (!(t2_ns > 0.0) || std::isnan(t2_ns))
        throw std::invalid_argument("HardwareProfile: T2 must be positive");
    auto fid = [](double f) { return f > 0.0 && f <= 1.0; };
    if (!fid(f_1q) || !fid(f_shuttle) || !fid(f_2q) || !fid(f_meas))
        throw std::invalid_argument("HardwareProfile: fidelities must lie in (0, 1]");
}

double duration_of(const Operation& op, const HardwareProfile& p) {
    if (op.tag == OpTag::Noise) return 0.0;
    switch (op.kind) {
        case GateKind::CX:
        case GateKind::CY:
        case GateKind::CZ:
        case GateKind::CPhase:
            return p.t_2q_ns;
        case GateKind::Shuttle:
            return p.t_shuttle_ns;
        case GateKind::MeasureZ:
            return p.t_meas_ns;
        case GateKind::Reset:
            return 0.0;
        default:
            return p.t_1q_ns;
    }
}

double fidelity_of(const Operation& op, const HardwareProfile& p) {
    if (op.tag == OpTag::Noise) return 1.0;
    switch (op.kind) {
        case GateKind::CX:
        case GateKind::CY:
        case GateKind::CZ:
        case GateKind::CPhase:
            return p.f_2q;
        case GateKind::Shuttle:
            return p.f_shuttle;
        case GateKind::MeasureZ:
            return p.f_meas;
        case GateKind::Reset:
            return 1.0;
        default:
            return p.f_1q;
    }
}

double circuit_duration(const Circuit& c, const HardwareProfile& p) {
    double total = 0.0;
    for (const auto& op : c.ops) total += duration_of(op, p);
    return total;
}

std::string format_operation(const Operation& op) {
    std::ostringstream os;
    os << gate_name(op.kind);
    for (int q : op.operands) os << " q" << q;
    if (op.kind == GateKind::Shuttle) os << " " << to_string(op.src) << " " << to_string(op.dst);
    if (is_rotation(op.kind) || op.kind == GateKind::CPhase) os << " " << op.angle;
    return os.str();
}

std::string format_circuit(const Circuit& c) {
    std::ostringstream os;
    os << "qubits " << c.n_qubits << "\n";
    for (const auto& op : c.ops) os << format_operation(op) << "\n";
    return os.str();
}

namespace {

GateKind kind_from_name(const std::string& name) {
    static const std::unordered_map<std::string, GateKind> table = {
        {"H", GateKind::H},       {"CX", GateKind::CX},
        {"CY", GateKind::CY},     {"CZ", GateKind::CZ},
        {"RX", GateKind::RX},     {"RY", GateKind::RY},
        {"RZ", GateKind::RZ},     {"CPHASE", GateKind::CPhase},
        {"X", GateKind::PauliX},  {"Y", GateKind::PauliY},
        {"Z", GateKind::PauliZ},  {"MZ", GateKind::MeasureZ},
        {"MEASURE", GateKind::MeasureZ},
        {"RESET", GateKind::Reset},
    };
    std::string up;
    for (char ch : name) up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
    auto it = table.find(up);
    if (it == table.end()) throw std::invalid_argument("unknown gate: " + name);
    return it->second;
}

int parse_qubit(const std::string& tok) {
    if (tok.size() < 2 || (tok[0] != 'q' && tok[0] != 'Q'))
        throw std::invalid_argument("expected qubit token, got: " + tok);
    return std::stoi(tok.substr(1));
}

}  // namespace

Circuit parse_circuit(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    Circuit c;
    bool have_header = false;
    int max_q = -1;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head == "qubits") {
            if (!(ls >> c.n_qubits) || c.n_qubits <= 0)
                throw std::invalid_argument("bad qubits line");
            have_header = true;
            continue;
        }
        GateKind k = kind_from_name(head);
        if (k == GateKind::Shuttle)
            throw std::invalid_argument("shuttles are compiler output, not circuit input");
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        Operation op;
        if (is_two_qubit(k)) {
            if (toks.size() < 2) throw std::invalid_argument("2q gate needs two operands: " + line);
            int a = parse_qubit(toks[0]), b = parse_qubit(toks[1]);
            op = (k == GateKind::CPhase)
                     ? make_cphase(a, b, toks.size() > 2 ? std::stod(toks[2]) : 0.0)
                     : make_2q(k, a, b);
        } else if (is_rotation(k)) {
            if (toks.size() < 2) throw std::invalid_argument("rotation needs an angle: " + line);
            op = make_rotation(k, parse_qubit(toks[0]), std::stod(toks[1]));
        } else {
            if (toks.empty()) throw std::invalid_argument("missing operand: " + line);
            op = make_1q(k, parse_qubit(toks[0]));
        }
        for (int q : op.operands) max_q = std::max(max_q, q);
        c.ops.push_back(std::move(op));
    }
    if (!have_header) c.n_qubits = max_q + 1;
    if (c.n_qubits <= max_q) throw std::invalid_argument("operand exceeds declared qubit count");
    return c;
}

}  // namespace sqbench
