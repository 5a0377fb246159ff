#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sqbench/compile.hpp"
#include "sqbench/ir.hpp"
#include "sqbench/sim.hpp"

namespace sqbench {

// Pauli operator in binary symplectic form with an i^phase prefactor.
// Bit q of x/z selects X/Z content on qubit q (both bits set = Y).
struct PauliTerm {
    std::uint32_t x = 0;
    std::uint32_t z = 0;
    int phase = 0;  // power of i, mod 4

    bool operator==(const PauliTerm&) const = default;
};

PauliTerm pauli_from_string(std::string_view letters);
std::string pauli_to_string(const PauliTerm& p, int n_qubits);
PauliTerm pauli_mul(const PauliTerm& a, const PauliTerm& b);

// Abelian Pauli group generated by commuting generators. Holds all 2^g
// signed products; every element of a stabilizer group is Hermitian, so
// phases are restricted to +/-1.
struct StabilizerGroup {
    int n_qubits = 0;
    std::vector<PauliTerm> generators;
    std::vector<PauliTerm> elements;

    static StabilizerGroup from_generators(int n_qubits,
                                           std::span<const std::string> generators);
};

// Generators of the six-qubit absolutely maximally entangled graph state.
std::span<const std::string> ame62_generators();

StabilizerGroup ame62_group();

// Graph-state preparation circuit: H on every qubit, then CZ along each
// graph edge.
Circuit ame62_circuit();

// Sum of the expectation values of all signed group elements. Bounded by
// the group size; equals 2^n exactly on the stabilized state.
double bell_expectation(const StateVector& s, const StabilizerGroup& g);

// Qubit roles in the distance-2 error-detecting surface code circuit.
inline constexpr int kQedNumQubits = 7;
inline constexpr std::array<int, 4> kQedData = {0, 1, 2, 3};
inline constexpr int kQedAncillaX = 4;   // measures XXXX
inline constexpr int kQedAncillaZ1 = 5;  // measures IZIZ
inline constexpr int kQedAncillaZ2 = 6;  // measures ZIZI
inline constexpr int kQedOpsPerRound = 16;
inline constexpr int kQedChecksPerRound = 3;

// Error-detection cycle circuit: data prepared in |0>, one preparation round
// of the three stabilizer checks, then `cycles` further rounds. Each round
// measures XXXX, IZIZ, ZIZI in that order, resetting the ancilla after each
// check. Built entirely from {H, CX}.
Circuit qed412_circuit(int cycles);

// Per-trial stabilizer measurement outcomes, one 3-bit row per round
// (preparation round first; bit order XXXX, IZIZ, ZIZI).
struct SyndromeRecord {
    std::vector<std::array<int, 3>> rounds;

    int cycles() const { return static_cast<int>(rounds.size()) - 1; }
    std::array<int, 3> frame() const { return rounds.front(); }
    // Final-cycle syndrome relative to the preparation frame.
    std::array<int, 3> final_syndrome() const;
};

// Group a flat measurement-outcome list (as produced by trajectory replay of
// a qed412 circuit) into per-round syndrome rows.
SyndromeRecord syndromes_from_outcomes(std::span<const int> outcomes);

enum class SyndromeClass { Success, ErrorX, ErrorY, ErrorZ, Other };

// Appendix-style decision rule on a frame-adjusted syndrome:
// {000, 111} -> success, 100 -> Z, {010, 001} -> X, {110, 101} -> Y,
// 011 -> other.
SyndromeClass classify_syndrome(const std::array<int, 3>& syndrome);

struct LogicalRates {
    double ps = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
    double other = 0.0;
};

// Success and Pauli-classified rates over a trial set, decided on each
// trial's final-cycle syndrome.
LogicalRates logical_success_rate(std::span<const SyndromeRecord> records);

// Estimated success probability: product of per-op fidelities over the
// circuit and routing operations times exp(-t/T2) with t the total
// sequential duration.
double esp(const CompiledCircuit& cc, const HardwareProfile& profile);
double esp(std::span<const Operation> ops, double duration_ns,
           const HardwareProfile& profile);

// Disjoint, nonempty subsets A, B, C; remaining qubits are traced out.
struct I3Partition {
    std::vector<int> a, b, c;

    void validate(int n_qubits) const;  // throws on overlap/empty/range
};

// Default partition for the 7-qubit detection-code trajectories: one data
// qubit per subset, fourth data qubit and all ancillas traced out. Measured
// ancillas end each round in a product state, so any subset content beyond
// the data qubits contributes nothing.
I3Partition default_qed_partition();

// S_A + S_B + S_C + S_ABC - S_AB - S_BC - S_AC, in nats.
double tripartite_mi(const StateVector& s, const I3Partition& p);

}  // namespace sqbench
