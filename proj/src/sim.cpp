#include "sqbench/sim.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sqbench {

namespace {

constexpr cplx kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.70710678118654752440;

}  // namespace

StateVector StateVector::zero(int n_qubits) {
    if (n_qubits <= 0 || n_qubits > 24)
        throw std::invalid_argument("unsupported qubit count");
    StateVector s;
    s.n = n_qubits;
    s.amps.assign(std::size_t{1} << n_qubits, cplx{0.0, 0.0});
    s.amps[0] = 1.0;
    return s;
}

double StateVector::norm() const {
    double t = 0.0;
    for (const cplx& a : amps) t += std::norm(a);
    return std::sqrt(t);
}

cplx DensityMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < dim; ++i) t += at(i, i);
    return t;
}

double DensityMatrix::hermiticity_error() const {
    double worst = 0.0;
    for (int r = 0; r < dim; ++r)
        for (int c = r; c < dim; ++c)
            worst = std::max(worst, std::abs(at(r, c) - std::conj(at(c, r))));
    return worst;
}

namespace {

// u = [[u00, u01], [u10, u11]] acting on `qubit`.
void apply_1q_unitary(StateVector& s, int qubit, const cplx u[2][2]) {
    const std::size_t bit = std::size_t{1} << qubit;
    const std::size_t dim = s.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if (i & bit) continue;
        cplx a0 = s.amps[i];
        cplx a1 = s.amps[i | bit];
        s.amps[i] = u[0][0] * a0 + u[0][1] * a1;
        s.amps[i | bit] = u[1][0] * a0 + u[1][1] * a1;
    }
}

void apply_controlled_1q(StateVector& s, int control, int target, const cplx u[2][2]) {
    const std::size_t cbit = std::size_t{1} << control;
    const std::size_t tbit = std::size_t{1} << target;
    const std::size_t dim = s.dim();
    for (std::size_t i = 0; i < dim; ++i) {
        if (!(i & cbit) || (i & tbit)) continue;
        cplx a0 = s.amps[i];
        cplx a1 = s.amps[i | tbit];
        s.amps[i] = u[0][0] * a0 + u[0][1] * a1;
        s.amps[i | tbit] = u[1][0] * a0 + u[1][1] * a1;
    }
}

void check_operands(const StateVector& s, const Operation& op) {
    for (int q : op.operands)
        if (q < 0 || q >= s.n) throw std::invalid_argument("operand out of range");
}

}  // namespace

void apply_gate(StateVector& s, const Operation& op) {
    check_operands(s, op);
    switch (op.kind) {
        case GateKind::H: {
            const cplx u[2][2] = {{kInvSqrt2, kInvSqrt2}, {kInvSqrt2, -kInvSqrt2}};
            apply_1q_unitary(s, op.operands[0], u);
            return;
        }
        case GateKind::PauliX: {
            const cplx u[2][2] = {{0, 1}, {1, 0}};
            apply_1q_unitary(s, op.operands[0], u);
            return;
        }
        case GateKind::PauliY: {
            const cplx u[2][2] = {{0, -kI}, {kI, 0}};
            apply_1q_unitary(s, op.operands[0], u);
            return;
        }
        case GateKind::PauliZ: {
            const cplx u[2][2] = {{1, 0}, {0, -1}};
            apply_1q_unitary(s, op.operands[0], u);
            return;
        }
        case GateKind::RX: {
            double h = op.angle / 2.0;
            const cplx u[2][2] = {{std::cos(h), -kI * std::sin(h)},
                                  {-kI * std::sin(h), std::cos(h)}};
            apply_1q_unitary(s, op.operands[0], u);
            return;
        }
        case GateKind::RY: {
            double h = op.angle / 2.0;
            const cplx u[2][2] = {{std::cos(h), -std::sin(h)},
                                  {std::sin(h), std::cos(h)}};
            apply_1q_unitary(s, op.operands[0], u);
            return;
        }
        case GateKind::RZ: {
            double h = op.angle / 2.0;
            const cplx u[2][2] = {{std::exp(-kI * h), 0}, {0, std::exp(kI * h)}};
            apply_1q_unitary(s, op.operands[0], u);
            return;
        }
        case GateKind::CX: {
            const cplx u[2][2] = {{0, 1}, {1, 0}};
            apply_controlled_1q(s, op.operands[0], op.operands[1], u);
            return;
        }
        case GateKind::CY: {
            const cplx u[2][2] = {{0, -kI}, {kI, 0}};
            apply_controlled_1q(s, op.operands[0], op.operands[1], u);
            return;
        }
        case GateKind::CZ: {
            const cplx u[2][2] = {{1, 0}, {0, -1}};
            apply_controlled_1q(s, op.operands[0], op.operands[1], u);
            return;
        }
        case GateKind::CPhase: {
            // diag(1, 1, 1, e^{i zeta})
            const cplx u[2][2] = {{1, 0}, {0, std::exp(kI * op.angle)}};
            apply_controlled_1q(s, op.operands[0], op.operands[1], u);
            return;
        }
        case GateKind::Shuttle:
            return;  // moves a qubit between dots; logical state unchanged
        case GateKind::MeasureZ:
        case GateKind::Reset:
            throw std::invalid_argument("non-unitary op passed to apply_gate");
    }
}

int measure_z(StateVector& s, int qubit, Rng& rng) {
    if (qubit < 0 || qubit >= s.n) throw std::invalid_argument("qubit out of range");
    const std::size_t bit = std::size_t{1} << qubit;
    double p1 = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (i & bit) p1 += std::norm(s.amps[i]);
    int outcome = rng.uniform01() < p1 ? 1 : 0;
    double keep_prob = outcome ? p1 : 1.0 - p1;
    double scale = 1.0 / std::sqrt(keep_prob);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        bool one = (i & bit) != 0;
        if (one == (outcome == 1))
            s.amps[i] *= scale;
        else
            s.amps[i] = 0.0;
    }
    return outcome;
}

void project_z(StateVector& s, int qubit, int outcome) {
    if (qubit < 0 || qubit >= s.n) throw std::invalid_argument("qubit out of range");
    const std::size_t bit = std::size_t{1} << qubit;
    double keep_prob = 0.0;
    for (std::size_t i = 0; i < s.dim(); ++i)
        if (((i & bit) != 0) == (outcome == 1)) keep_prob += std::norm(s.amps[i]);
    if (keep_prob < 1e-12)
        throw std::invalid_argument("projection onto a zero-probability branch");
    double scale = 1.0 / std::sqrt(keep_prob);
    for (std::size_t i = 0; i < s.dim(); ++i) {
        bool one = (i & bit) != 0;
        if (one == (outcome == 1))
            s.amps[i] *= scale;
        else
            s.amps[i] = 0.0;
    }
}

void reset_qubit(StateVector& s, int qubit, Rng& rng) {
    int m = measure_z(s, qubit, rng);
    if (m == 1) apply_gate(s, make_1q(GateKind::PauliX, qubit));
}

DensityMatrix partial_trace(const StateVector& s, std::span<const int> keep) {
    if (keep.empty() || static_cast<int>(keep.size()) >= s.n)
        throw std::invalid_argument("keep must be a nonempty proper subset");
    std::vector<int> ks(keep.begin(), keep.end());
    std::sort(ks.begin(), ks.end());
    if (std::unique(ks.begin(), ks.end()) != ks.end())
        throw std::invalid_argument("keep has duplicates");
    for (int q : ks)
        if (q < 0 || q >= s.n) throw std::invalid_argument("keep qubit out of range");

    std::vector<int> env;
    for (int q = 0; q < s.n; ++q)
        if (!std::binary_search(ks.begin(), ks.end(), q)) env.push_back(q);

    const int k = static_cast<int>(ks.size());
    const std::size_t dim_k = std::size_t{1} << k;
    const std::size_t dim_e = std::size_t{1} << env.size();

    auto scatter = [](std::size_t compact, const std::vector<int>& qubits) {
        std::size_t out = 0;
        for (std::size_t j = 0; j < qubits.size(); ++j)
            if (compact & (std::size_t{1} << j)) out |= std::size_t{1} << qubits[j];
        return out;
    };

    std::vector<std::size_t> keep_idx(dim_k), env_idx(dim_e);
    for (std::size_t i = 0; i < dim_k; ++i) keep_idx[i] = scatter(i, ks);
    for (std::size_t i = 0; i < dim_e; ++i) env_idx[i] = scatter(i, env);

    DensityMatrix rho;
    rho.dim = static_cast<int>(dim_k);
    rho.m.assign(dim_k * dim_k, cplx{0.0, 0.0});
    for (std::size_t r = 0; r < dim_k; ++r)
        for (std::size_t c = 0; c < dim_k; ++c) {
            cplx acc = 0.0;
            for (std::size_t e = 0; e < dim_e; ++e)
                acc += s.amps[keep_idx[r] | env_idx[e]] *
                       std::conj(s.amps[keep_idx[c] | env_idx[e]]);
            rho.m[r * dim_k + c] = acc;
        }
    return rho;
}

std::vector<double> jacobi_eigenvalues(DensityMatrix a) {
    const int n = a.dim;
    if (n == 1) return {a.at(0, 0).real()};
    constexpr double kTol = 1e-12;
    constexpr int kMaxSweeps = 100;

    auto off_norm = [&]() {
        double t = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                if (p != q) t += std::norm(a.at(p, q));
        return std::sqrt(t);
    };

    for (int sweep = 0; sweep < kMaxSweeps && off_norm() >= kTol; ++sweep) {
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                cplx apq = a.at(p, q);
                double mag = std::abs(apq);
                if (mag < 1e-300) continue;
                cplx phase = apq / mag;
                double app = a.at(p, p).real();
                double aqq = a.at(q, q).real();
                double tau = (app - aqq) / (2.0 * mag);
                double t = (tau >= 0.0 ? 1.0 : -1.0) /
                           (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double sv = t * c;
                // G = [[c, -s*phase], [s*conj(phase), c]] on columns (p, q)
                for (int r = 0; r < n; ++r) {
                    cplx xp = a.at(r, p), xq = a.at(r, q);
                    a.at(r, p) = c * xp + sv * std::conj(phase) * xq;
                    a.at(r, q) = -sv * phase * xp + c * xq;
                }
                for (int col = 0; col < n; ++col) {
                    cplx xp = a.at(p, col), xq = a.at(q, col);
                    a.at(p, col) = c * xp + sv * phase * xq;
                    a.at(q, col) = -sv * std::conj(phase) * xp + c * xq;
                }
            }
        }
    }

    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a.at(i, i).real();
    return eig;
}

double vn_entropy(const DensityMatrix& rho) {
    if (rho.hermiticity_error() > 1e-9)
        throw std::invalid_argument("density matrix is not Hermitian");
    std::vector<double> eig = jacobi_eigenvalues(rho);
    double s = 0.0;
    for (double lam : eig) {
        if (lam < -1e-9)
            throw std::invalid_argument("density matrix has a negative eigenvalue");
        if (lam <= 0.0) continue;  // 0 ln 0 := 0, clamp tiny negatives
        s -= lam * std::log(lam);
    }
    return s;
}

double subset_entropy(const StateVector& s, std::span<const int> subset) {
    if (subset.empty()) return 0.0;
    if (static_cast<int>(subset.size()) * 2 <= s.n)
        return vn_entropy(partial_trace(s, subset));
    std::vector<int> sorted(subset.begin(), subset.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> complement;
    for (int q = 0; q < s.n; ++q)
        if (!std::binary_search(sorted.begin(), sorted.end(), q)) complement.push_back(q);
    if (complement.empty()) return 0.0;  // whole system, pure
    return vn_entropy(partial_trace(s, complement));
}

double pauli_expectation(const StateVector& s, std::string_view paulis) {
    if (static_cast<int>(paulis.size()) != s.n)
        throw std::invalid_argument("pauli string length must equal qubit count");
    std::uint32_t xmask = 0, zmask = 0;
    for (int q = 0; q < s.n; ++q) {
        switch (paulis[q]) {
            case 'I': break;
            case 'X': xmask |= 1u << q; break;
            case 'Z': zmask |= 1u << q; break;
            case 'Y': xmask |= 1u << q; zmask |= 1u << q; break;
            default: throw std::invalid_argument("pauli letters must be I, X, Y or Z");
        }
    }
    return pauli_expectation(s, xmask, zmask);
}

double pauli_expectation(const StateVector& s, std::uint32_t xmask, std::uint32_t zmask) {
    // <s|P|s> = sum_j conj(a[j ^ x]) * phase(j) * a[j], with phase(j) the
    // product of i*(-1)^bit for Y letters and (-1)^bit for Z letters.
    const std::uint32_t ymask = xmask & zmask;
    const int y_count = std::popcount(ymask);
    cplx acc = 0.0;
    for (std::size_t j = 0; j < s.dim(); ++j) {
        int minus = std::popcount(static_cast<std::uint32_t>(j) & zmask);
        cplx term = std::conj(s.amps[j ^ xmask]) * s.amps[j];
        acc += (minus & 1) ? -term : term;
    }
    // i^y_count global factor from the Y letters
    switch (y_count & 3) {
        case 1: acc *= kI; break;
        case 2: acc *= -1.0; break;
        case 3: acc *= -kI; break;
        default: break;
    }
    return acc.real();
}

}  // namespace sqbench
