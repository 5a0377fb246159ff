#include "sqbench/bench.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

namespace sqbench {

PauliTerm pauli_from_string(std::string_view letters) {
    if (letters.size() > 32) throw std::invalid_argument("pauli string too long");
    PauliTerm p;
    for (std::size_t q = 0; q < letters.size(); ++q) {
        switch (letters[q]) {
            case 'I': break;
            case 'X': p.x |= 1u << q; break;
            case 'Z': p.z |= 1u << q; break;
            case 'Y': p.x |= 1u << q; p.z |= 1u << q; break;
            default: throw std::invalid_argument("pauli letters must be I, X, Y or Z");
        }
    }
    return p;
}

std::string pauli_to_string(const PauliTerm& p, int n_qubits) {
    std::string out;
    for (int q = 0; q < n_qubits; ++q) {
        bool x = p.x & (1u << q), z = p.z & (1u << q);
        out.push_back(x ? (z ? 'Y' : 'X') : (z ? 'Z' : 'I'));
    }
    return out;
}

PauliTerm pauli_mul(const PauliTerm& a, const PauliTerm& b) {
    // Per-qubit phase of P_a * P_b with codes I=0, X=1, Z=2, Y=3,
    // expressed as a power of i.
    static constexpr int kPhase[4][4] = {
        // I  X  Z  Y     (right factor)
        {0, 0, 0, 0},  // I
        {0, 0, 3, 1},  // X  (X*Z = -iY, X*Y = iZ)
        {0, 1, 0, 3},  // Z  (Z*X = iY,  Z*Y = -iX)
        {0, 3, 1, 0},  // Y  (Y*X = -iZ, Y*Z = iX)
    };
    PauliTerm out;
    out.x = a.x ^ b.x;
    out.z = a.z ^ b.z;
    int phase = a.phase + b.phase;
    for (std::uint32_t bits = a.x | a.z | b.x | b.z; bits;) {
        int q = std::countr_zero(bits);
        bits &= bits - 1;
        int ca = ((a.x >> q) & 1) | (((a.z >> q) & 1) << 1);
        int cb = ((b.x >> q) & 1) | (((b.z >> q) & 1) << 1);
        phase += kPhase[ca][cb];
    }
    out.phase = phase & 3;
    return out;
}

StabilizerGroup StabilizerGroup::from_generators(
    int n_qubits, std::span<const std::string> generators) {
    StabilizerGroup g;
    g.n_qubits = n_qubits;
    for (const auto& s : generators) {
        if (static_cast<int>(s.size()) != n_qubits)
            throw std::invalid_argument("generator length must equal qubit count");
        g.generators.push_back(pauli_from_string(s));
    }
    for (std::size_t i = 0; i < g.generators.size(); ++i)
        for (std::size_t j = i + 1; j < g.generators.size(); ++j) {
            PauliTerm ab = pauli_mul(g.generators[i], g.generators[j]);
            PauliTerm ba = pauli_mul(g.generators[j], g.generators[i]);
            if (!(ab == ba))
                throw std::invalid_argument("generators must commute");
        }
    const std::size_t count = std::size_t{1} << g.generators.size();
    g.elements.reserve(count);
    for (std::size_t mask = 0; mask < count; ++mask) {
        PauliTerm e;  // identity
        for (std::size_t i = 0; i < g.generators.size(); ++i)
            if (mask & (std::size_t{1} << i)) e = pauli_mul(e, g.generators[i]);
        if (e.phase & 1)
            throw std::invalid_argument("group element with imaginary phase");
        g.elements.push_back(e);
    }
    return g;
}

std::span<const std::string> ame62_generators() {
    static const std::vector<std::string> kGens = {
        "XZIIZZ", "ZXZZII", "IZXZIZ", "IZZXZI", "ZIIZXZ", "ZIZIZX",
    };
    return kGens;
}

StabilizerGroup ame62_group() {
    return StabilizerGroup::from_generators(6, ame62_generators());
}

Circuit ame62_circuit() {
    // Graph edges read off the Z supports of the generators (0-indexed).
    static constexpr std::array<std::pair<int, int>, 9> kEdges = {{
        {0, 1}, {0, 4}, {0, 5}, {1, 2}, {1, 3}, {2, 3}, {2, 5}, {3, 4}, {4, 5},
    }};
    Circuit c(6);
    for (int q = 0; q < 6; ++q) c.h(q);
    for (auto [a, b] : kEdges) c.cz(a, b);
    return c;
}

double bell_expectation(const StateVector& s, const StabilizerGroup& g) {
    if (s.n != g.n_qubits)
        throw std::invalid_argument("state and group qubit counts differ");
    double total = 0.0;
    for (const PauliTerm& e : g.elements) {
        double v = pauli_expectation(s, e.x, e.z);
        total += (e.phase == 2) ? -v : v;
    }
    return total;
}

Circuit qed412_circuit(int cycles) {
    if (cycles < 1 || cycles > 10)
        throw std::invalid_argument("cycles must lie in [1, 10]");
    Circuit c(kQedNumQubits);
    auto round = [&c]() {
        c.h(kQedAncillaX);
        for (int d : kQedData) c.cx(kQedAncillaX, d);
        c.h(kQedAncillaX);
        c.measure_z(kQedAncillaX);
        c.reset(kQedAncillaX);
        c.cx(1, kQedAncillaZ1);
        c.cx(3, kQedAncillaZ1);
        c.measure_z(kQedAncillaZ1);
        c.reset(kQedAncillaZ1);
        c.cx(0, kQedAncillaZ2);
        c.cx(2, kQedAncillaZ2);
        c.measure_z(kQedAncillaZ2);
        c.reset(kQedAncillaZ2);
    };
    for (int r = 0; r < cycles + 1; ++r) round();  // preparation + cycles
    return c;
}

std::array<int, 3> SyndromeRecord::final_syndrome() const {
    if (rounds.size() < 2)
        throw std::invalid_argument("record needs a preparation round and a cycle");
    std::array<int, 3> out{};
    for (int b = 0; b < 3; ++b) out[b] = rounds.back()[b] ^ rounds.front()[b];
    return out;
}

SyndromeRecord syndromes_from_outcomes(std::span<const int> outcomes) {
    if (outcomes.empty() || outcomes.size() % kQedChecksPerRound != 0)
        throw std::invalid_argument("outcome count must be a multiple of 3");
    SyndromeRecord rec;
    for (std::size_t i = 0; i < outcomes.size(); i += kQedChecksPerRound)
        rec.rounds.push_back({outcomes[i], outcomes[i + 1], outcomes[i + 2]});
    return rec;
}

SyndromeClass classify_syndrome(const std::array<int, 3>& s) {
    int code = s[0] * 4 + s[1] * 2 + s[2];
    switch (code) {
        case 0b000:
        case 0b111:
            return SyndromeClass::Success;
        case 0b100:
            return SyndromeClass::ErrorZ;
        case 0b010:
        case 0b001:
            return SyndromeClass::ErrorX;
        case 0b110:
        case 0b101:
            return SyndromeClass::ErrorY;
        default:
            return SyndromeClass::Other;
    }
}

LogicalRates logical_success_rate(std::span<const SyndromeRecord> records) {
    if (records.empty()) throw std::invalid_argument("no syndrome records");
    const int cycles = records.front().cycles();
    LogicalRates rates;
    for (const auto& rec : records) {
        if (rec.cycles() != cycles)
            throw std::invalid_argument("records have unequal cycle counts");
        switch (classify_syndrome(rec.final_syndrome())) {
            case SyndromeClass::Success: rates.ps += 1.0; break;
            case SyndromeClass::ErrorX: rates.x += 1.0; break;
            case SyndromeClass::ErrorY: rates.y += 1.0; break;
            case SyndromeClass::ErrorZ: rates.z += 1.0; break;
            case SyndromeClass::Other: rates.other += 1.0; break;
        }
    }
    const double n = static_cast<double>(records.size());
    rates.ps /= n;
    rates.x /= n;
    rates.y /= n;
    rates.z /= n;
    rates.other /= n;
    return rates;
}

double esp(std::span<const Operation> ops, double duration_ns,
           const HardwareProfile& profile) {
    double product = 1.0;
    for (const auto& op : ops) product *= fidelity_of(op, profile);
    return product * std::exp(-duration_ns / profile.t2_ns);
}

double esp(const CompiledCircuit& cc, const HardwareProfile& profile) {
    return esp(cc.ops, cc.duration_ns, profile);
}

void I3Partition::validate(int n_qubits) const {
    if (a.empty() || b.empty() || c.empty())
        throw std::invalid_argument("partition subsets must be nonempty");
    std::set<int> seen;
    for (const auto* part : {&a, &b, &c})
        for (int q : *part) {
            if (q < 0 || q >= n_qubits)
                throw std::invalid_argument("partition qubit out of range");
            if (!seen.insert(q).second)
                throw std::invalid_argument("partition subsets overlap");
        }
}

I3Partition default_qed_partition() { return {{0}, {1}, {2}}; }

double tripartite_mi(const StateVector& s, const I3Partition& p) {
    p.validate(s.n);
    auto joined = [](std::initializer_list<const std::vector<int>*> parts) {
        std::vector<int> out;
        for (const auto* part : parts) out.insert(out.end(), part->begin(), part->end());
        std::sort(out.begin(), out.end());
        return out;
    };
    double s_a = subset_entropy(s, p.a);
    double s_b = subset_entropy(s, p.b);
    double s_c = subset_entropy(s, p.c);
    double s_ab = subset_entropy(s, joined({&p.a, &p.b}));
    double s_bc = subset_entropy(s, joined({&p.b, &p.c}));
    double s_ac = subset_entropy(s, joined({&p.a, &p.c}));
    double s_abc = subset_entropy(s, joined({&p.a, &p.b, &p.c}));
    return s_a + s_b + s_c + s_abc - s_ab - s_bc - s_ac;
}

}  // namespace sqbench
