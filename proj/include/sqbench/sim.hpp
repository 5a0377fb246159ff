#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "sqbench/ir.hpp"
#include "sqbench/rng.hpp"

namespace sqbench {

using cplx = std::complex<double>;

// Pure n-qubit state. Qubit 0 is the least-significant bit of the amplitude
// index; this ordering is fixed so that seeded runs are bit-reproducible.
struct StateVector {
    int n = 0;
    std::vector<cplx> amps;

    static StateVector zero(int n_qubits);
    std::size_t dim() const { return amps.size(); }
    double norm() const;
};

// Reduced state over a qubit subset. Row-major, dim x dim.
struct DensityMatrix {
    int dim = 0;
    std::vector<cplx> m;

    cplx& at(int r, int c) { return m[static_cast<std::size_t>(r) * dim + c]; }
    const cplx& at(int r, int c) const { return m[static_cast<std::size_t>(r) * dim + c]; }
    cplx trace() const;
    double hermiticity_error() const;  // max |m[r][c] - conj(m[c][r])|
};

// Apply a unitary operation in place. Shuttles are identity on the logical
// state. MeasureZ and Reset are rejected; use measure_z / reset_qubit.
void apply_gate(StateVector& s, const Operation& op);

// Projective Z measurement with Born sampling; renormalizes.
int measure_z(StateVector& s, int qubit, Rng& rng);

// Forced projection onto a known outcome; throws if that branch has
// (near-)zero probability.
void project_z(StateVector& s, int qubit, int outcome);

// Collapse to Z basis, then flip to |0>.
void reset_qubit(StateVector& s, int qubit, Rng& rng);

// Reduced density matrix over `keep` (ascending qubit order; bit j of the
// reduced index is keep[j]).
DensityMatrix partial_trace(const StateVector& s, std::span<const int> keep);

// Eigenvalues of a Hermitian matrix by cyclic Jacobi rotations, converged to
// off-diagonal Frobenius norm < 1e-12 (at most 100 sweeps). Unsorted.
std::vector<double> jacobi_eigenvalues(DensityMatrix a);

// Von Neumann entropy in nats. Eigenvalues in [-1e-9, 0) are clamped to 0;
// anything more negative is an invariant violation and throws.
double vn_entropy(const DensityMatrix& rho);

// Entropy of the reduced state over `subset`. For a pure global state the
// entropy of a subset equals that of its complement, so the reduction is
// taken over whichever side is smaller.
double subset_entropy(const StateVector& s, std::span<const int> subset);

// <s|P|s> for a Pauli string with letter i acting on qubit i.
double pauli_expectation(const StateVector& s, std::string_view paulis);

// Mask form: bit q of xmask/zmask selects X/Z content on qubit q (both = Y).
double pauli_expectation(const StateVector& s, std::uint32_t xmask, std::uint32_t zmask);

}  // namespace sqbench
