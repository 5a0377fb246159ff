#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sqbench/arch.hpp"
#include "sqbench/ir.hpp"
#include "sqbench/rng.hpp"

namespace sqbench {

// Circuit qubits as nodes, two-qubit gate counts as edge weights.
struct InteractionGraph {
    int n_qubits = 0;
    std::map<std::pair<int, int>, int> weights;  // key (a, b) with a < b

    int weight(int a, int b) const;
};

InteractionGraph build_interaction_graph(const Circuit& c);

// Injective qubit -> dot assignment.
struct Placement {
    std::vector<Dot> dot_of;  // indexed by qubit

    int n_qubits() const { return static_cast<int>(dot_of.size()); }
    void validate(const ConnectivityGraph& cg) const;  // throws on violation
    bool operator==(const Placement&) const = default;
};

Placement random_placement(const ConnectivityGraph& cg, int n_qubits, Rng& rng);

// Hardware-legal operation stream: the source circuit ops in order, with
// shuttles interleaved so that every 2q gate acts on adjacent dots, every
// measurement happens at the measurement dot, and no dot ever holds two
// qubits.
struct CompiledCircuit {
    int n_qubits = 0;
    std::vector<Operation> ops;
    Placement initial_placement;
    Placement final_placement;
    long shuttle_count = 0;
    double duration_ns = 0.0;
};

// Route a circuit against a connectivity graph from a given placement.
// Deterministic for fixed (circuit, cg, placement, seed).
CompiledCircuit route(const Circuit& c, const ConnectivityGraph& cg,
                      const Placement& placement, std::uint64_t seed,
                      const HardwareProfile& profile = {});

// Displace the occupants of blocked interior dots of `path` to their nearest
// free dot off the path (BFS distance, lexicographic tie-break), moving them
// only through free dots. Emits the displacement shuttles and updates
// occupancy/positions. Returns false if some blocker cannot be displaced;
// callers then fall back to rerouting.
bool resolve_blockage(const ConnectivityGraph& cg, OccupancySet& occupied,
                      std::vector<Dot>& dot_of_qubit,
                      std::span<const Dot> path,
                      std::vector<Operation>& out);

// Reverse traversal: ops in reverse order; H/CX/CY/CZ are self-inverse,
// rotations and CPhase get negated angles, measurements and resets are kept
// as qubit-touch events.
Circuit reverse_circuit(const Circuit& c);

// Initial placement search. Each trial samples a random placement, routes
// the forward circuit, uses the resulting final placement to route the
// reversed circuit, and takes that pass's final placement as the candidate.
// The candidate whose forward routing needs the fewest shuttles wins (ties
// go to the lowest trial index).
Placement sabre_placement(const Circuit& c, const ConnectivityGraph& cg,
                          int trials, std::uint64_t seed,
                          const HardwareProfile& profile = {});

struct AuditResult {
    bool ok = true;
    std::string message;
};

// Replay a compiled stream and verify every legality invariant: shuttle
// edge-validity and single occupancy, 2q adjacency, measurement-dot
// residency, and that the circuit-tagged ops match the source circuit.
AuditResult audit_stream(const Circuit& source, const CompiledCircuit& cc,
                         const ConnectivityGraph& cg);

}  // namespace sqbench
