#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "oracles.hpp"
#include "sqbench/bench.hpp"
#include "sqbench/noise.hpp"

using namespace sqbench;

namespace {

constexpr double kLn2 = 0.6931471805599453;

StateVector noiseless_final_state(const Circuit& c, std::uint64_t seed) {
    NoNoise none;
    Rng rng(seed);
    return run_trajectory(c.n_qubits, c.ops, none, rng).state;
}

}  // namespace

TEST_CASE("pauli algebra") {
    PauliTerm x = pauli_from_string("X"), z = pauli_from_string("Z");
    PauliTerm y = pauli_from_string("Y");
    PauliTerm xz = pauli_mul(x, z);
    CHECK(xz.x == y.x);
    CHECK(xz.z == y.z);
    CHECK(xz.phase == 3);  // XZ = -iY
    PauliTerm zx = pauli_mul(z, x);
    CHECK(zx.phase == 1);  // ZX = iY
    CHECK(pauli_to_string(pauli_mul(x, y), 1) == "Z");
    CHECK(pauli_mul(x, x) == PauliTerm{});
}

TEST_CASE("AME group structure") {
    StabilizerGroup g = ame62_group();
    REQUIRE(g.generators.size() == 6);
    CHECK(g.elements.size() == 64);
    CHECK(g.elements[0] == PauliTerm{});  // identity member

    SUBCASE("closure with signs, checked exhaustively") {
        std::set<std::tuple<std::uint32_t, std::uint32_t, int>> members;
        for (const auto& e : g.elements) members.insert({e.x, e.z, e.phase});
        for (const auto& a : g.elements)
            for (const auto& b : g.elements) {
                PauliTerm p = pauli_mul(a, b);
                CHECK(members.count({p.x, p.z, p.phase}) == 1);
            }
    }
}

TEST_CASE("AME circuit") {
    Circuit c = ame62_circuit();
    CHECK(c.n_qubits == 6);
    CHECK(c.ops.size() == 15);  // 6 H + 9 CZ
    int h = 0, cz = 0;
    for (const auto& op : c.ops) {
        h += op.kind == GateKind::H;
        cz += op.kind == GateKind::CZ;
    }
    CHECK(h == 6);
    CHECK(cz == 9);

    StateVector s = noiseless_final_state(c, 1);

    SUBCASE("stabilized by every generator") {
        for (const auto& gen : ame62_generators())
            CHECK(pauli_expectation(s, gen) == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("every 3-qubit reduction is maximally mixed") {
        for (int a = 0; a < 6; ++a)
            for (int b = a + 1; b < 6; ++b)
                for (int d = b + 1; d < 6; ++d) {
                    double entropy =
                        vn_entropy(partial_trace(s, std::vector<int>{a, b, d}));
                    CHECK(entropy == doctest::Approx(3 * kLn2).epsilon(1e-8));
                }
    }
}

TEST_CASE("bell expectation") {
    StabilizerGroup g = ame62_group();

    SUBCASE("the AME state saturates the quantum bound") {
        StateVector s = noiseless_final_state(ame62_circuit(), 1);
        CHECK(bell_expectation(s, g) == doctest::Approx(64.0).epsilon(1e-9));
    }

    SUBCASE("|000000> against a brute-force sum over strings") {
        StateVector s = StateVector::zero(6);
        double brute = 0.0;
        for (const auto& e : g.elements) {
            double v = pauli_expectation(s, pauli_to_string(e, 6));
            brute += (e.phase == 2) ? -v : v;
        }
        CHECK(bell_expectation(s, g) == doctest::Approx(brute).epsilon(1e-12));
        CHECK(brute == doctest::Approx(1.0));  // only the identity survives
    }

    SUBCASE("bounded by 64 on random states") {
        Rng rng(77);
        for (int rep = 0; rep < 30; ++rep) {
            StateVector s = oracle::random_state(6, rng);
            double b = bell_expectation(s, g);
            CHECK(b <= 64.0 + 1e-6);
            CHECK(b >= -1e-6);  // the group sum is 64x a projector
        }
    }
}

TEST_CASE("qed412 circuit shape") {
    Circuit c = qed412_circuit(3);
    CHECK(c.n_qubits == 7);
    CHECK(c.ops.size() == static_cast<std::size_t>(kQedOpsPerRound) * 4);
    CHECK_THROWS_AS(qed412_circuit(0), std::invalid_argument);
    CHECK_THROWS_AS(qed412_circuit(11), std::invalid_argument);
    for (const auto& op : c.ops) {
        bool allowed = op.kind == GateKind::H || op.kind == GateKind::CX ||
                       op.kind == GateKind::MeasureZ || op.kind == GateKind::Reset;
        CHECK(allowed);
    }
}

TEST_CASE("qed412 noiseless behavior") {
    SUBCASE("post-preparation data state is the logical zero codeword") {
        Circuit prep = qed412_circuit(1);
        prep.ops.resize(kQedOpsPerRound);  // keep the preparation round only
        // Pick a seed whose X-check returns +1 (frame bit 0).
        for (std::uint64_t seed = 1;; ++seed) {
            NoNoise none;
            Rng rng(seed);
            TrajectoryResult r = run_trajectory(prep.n_qubits, prep.ops, none, rng);
            REQUIRE(r.measurements.size() == 3);
            CHECK(r.measurements[1] == 0);
            CHECK(r.measurements[2] == 0);
            if (r.measurements[0] != 0) continue;
            const double inv = 1.0 / std::sqrt(2.0);
            for (std::size_t i = 0; i < r.state.dim(); ++i) {
                double expected = (i == 0b0000 || i == 0b1111) ? inv : 0.0;
                CHECK(std::abs(r.state.amps[i] - cplx{expected, 0.0}) < 1e-9);
            }
            break;
        }
    }

    SUBCASE("preparation X outcome is uniform") {
        NoNoise none;
        Rng rng(5);
        Circuit c = qed412_circuit(1);
        int ones = 0;
        const int trials = 2000;
        for (int t = 0; t < trials; ++t) {
            TrajectoryResult r = run_trajectory(c.n_qubits, c.ops, none, rng);
            ones += r.measurements[0];
        }
        CHECK(std::abs(ones - trials / 2) < 3 * std::sqrt(trials * 0.25));
    }

    SUBCASE("all frame-adjusted syndromes stay zero for any cycle count") {
        NoNoise none;
        Rng rng(9);
        for (int cycles = 1; cycles <= 10; ++cycles) {
            Circuit c = qed412_circuit(cycles);
            TrajectoryResult r = run_trajectory(c.n_qubits, c.ops, none, rng);
            SyndromeRecord rec = syndromes_from_outcomes(r.measurements);
            REQUIRE(rec.cycles() == cycles);
            for (int cy = 1; cy <= cycles; ++cy)
                for (int b = 0; b < 3; ++b)
                    CHECK((rec.rounds[cy][b] ^ rec.frame()[b]) == 0);
        }
    }

    SUBCASE("X on d2 between rounds flips exactly IZIZ") {
        Circuit c = qed412_circuit(2);
        Operation err = make_1q(GateKind::PauliX, 1, OpTag::Noise);
        c.ops.insert(c.ops.begin() + kQedOpsPerRound, err);
        NoNoise none;
        Rng rng(3);
        TrajectoryResult r = run_trajectory(c.n_qubits, c.ops, none, rng);
        SyndromeRecord rec = syndromes_from_outcomes(r.measurements);
        auto syn = rec.final_syndrome();
        CHECK(syn == std::array<int, 3>{0, 1, 0});
        CHECK(classify_syndrome(syn) == SyndromeClass::ErrorX);
    }
}

TEST_CASE("syndrome classification table") {
    CHECK(classify_syndrome({0, 0, 0}) == SyndromeClass::Success);
    CHECK(classify_syndrome({1, 1, 1}) == SyndromeClass::Success);
    CHECK(classify_syndrome({1, 0, 0}) == SyndromeClass::ErrorZ);
    CHECK(classify_syndrome({0, 1, 0}) == SyndromeClass::ErrorX);
    CHECK(classify_syndrome({0, 0, 1}) == SyndromeClass::ErrorX);
    CHECK(classify_syndrome({1, 1, 0}) == SyndromeClass::ErrorY);
    CHECK(classify_syndrome({1, 0, 1}) == SyndromeClass::ErrorY);
    CHECK(classify_syndrome({0, 1, 1}) == SyndromeClass::Other);
}

TEST_CASE("logical success rate") {
    SUBCASE("uniform syndromes accept exactly two of eight") {
        std::vector<SyndromeRecord> records;
        for (int code = 0; code < 8; ++code) {
            SyndromeRecord rec;
            rec.rounds.push_back({0, 0, 0});
            rec.rounds.push_back({(code >> 2) & 1, (code >> 1) & 1, code & 1});
            records.push_back(rec);
        }
        LogicalRates rates = logical_success_rate(records);
        CHECK(rates.ps == doctest::Approx(0.25));
        CHECK(rates.z == doctest::Approx(0.125));
        CHECK(rates.x == doctest::Approx(0.25));
        CHECK(rates.y == doctest::Approx(0.25));
        CHECK(rates.other == doctest::Approx(0.125));
    }

    SUBCASE("validation") {
        CHECK_THROWS_AS(logical_success_rate({}), std::invalid_argument);
        SyndromeRecord one, two;
        one.rounds = {{{0, 0, 0}}, {{0, 0, 0}}};
        two.rounds = {{{0, 0, 0}}, {{0, 0, 0}}, {{0, 0, 0}}};
        std::vector<SyndromeRecord> mixed{one, two};
        CHECK_THROWS_AS(logical_success_rate(mixed), std::invalid_argument);
    }
}

TEST_CASE("esp") {
    HardwareProfile p;

    SUBCASE("empty stream") {
        CHECK(esp(std::vector<Operation>{}, 0.0, p) == doctest::Approx(1.0));
    }

    SUBCASE("ten sequential 1q gates") {
        std::vector<Operation> ops;
        for (int i = 0; i < 10; ++i) ops.push_back(make_1q(GateKind::H, 0));
        double expected = std::pow(0.9999, 10) * std::exp(-1000.0 / 20000.0);
        double got = esp(ops, 1000.0, p);
        CHECK(got == doctest::Approx(expected).epsilon(1e-12));
        CHECK(got == doctest::Approx(0.95028).epsilon(5e-6));
        CHECK(std::abs(got - oracle::esp(ops, 1000.0, p)) < 1e-12);
    }

    SUBCASE("mixed stream against the extended-precision oracle") {
        std::vector<Operation> ops;
        ops.push_back(make_1q(GateKind::H, 0));
        ops.push_back(make_2q(GateKind::CX, 0, 1));
        ops.push_back(make_shuttle(1, {0, 0}, {0, 1}));
        ops.push_back(make_measure(0));
        ops.push_back(make_reset(0));
        ops.push_back(make_1q(GateKind::PauliZ, 1, OpTag::Noise));
        double duration = 100 + 150 + 100 + 5000;
        CHECK(std::abs(esp(ops, duration, p) - oracle::esp(ops, duration, p)) < 1e-12);
    }
}

TEST_CASE("tripartite mutual information") {
    SUBCASE("product state gives zero for any partition") {
        StateVector s = StateVector::zero(7);
        apply_gate(s, make_1q(GateKind::H, 2));
        apply_gate(s, make_1q(GateKind::H, 5));
        CHECK(tripartite_mi(s, {{0}, {1}, {2}}) == doctest::Approx(0.0).epsilon(1e-10));
        CHECK(tripartite_mi(s, {{0, 1}, {2, 3}, {4, 5}}) ==
              doctest::Approx(0.0).epsilon(1e-10));
    }

    SUBCASE("4-qubit GHZ with single-qubit subsets gives +ln 2") {
        StateVector s = StateVector::zero(4);
        apply_gate(s, make_1q(GateKind::H, 0));
        for (int q = 1; q < 4; ++q) apply_gate(s, make_2q(GateKind::CX, 0, q));
        I3Partition p{{0}, {1}, {2}};
        CHECK(tripartite_mi(s, p) == doctest::Approx(kLn2).epsilon(1e-9));
        CHECK(oracle::tripartite_mi(s, p) == doctest::Approx(kLn2).epsilon(1e-8));
    }

    SUBCASE("matches the dense oracle on random states and partitions") {
        Rng rng(2025);
        for (int rep = 0; rep < 12; ++rep) {
            StateVector s = oracle::random_state(7, rng);
            std::vector<int> qubits{0, 1, 2, 3, 4, 5, 6};
            rng.shuffle(qubits);
            int na = 1 + static_cast<int>(rng.uniform_int(2));
            int nb = 1 + static_cast<int>(rng.uniform_int(2));
            int nc = 1 + static_cast<int>(rng.uniform_int(2));
            I3Partition p;
            p.a.assign(qubits.begin(), qubits.begin() + na);
            p.b.assign(qubits.begin() + na, qubits.begin() + na + nb);
            p.c.assign(qubits.begin() + na + nb, qubits.begin() + na + nb + nc);
            CHECK(tripartite_mi(s, p) ==
                  doctest::Approx(oracle::tripartite_mi(s, p)).epsilon(1e-8));
        }
    }

    SUBCASE("symmetric under subset permutations") {
        Rng rng(31);
        StateVector s = oracle::random_state(6, rng);
        I3Partition p1{{0, 1}, {2}, {3, 4}};
        I3Partition p2{{3, 4}, {0, 1}, {2}};
        I3Partition p3{{2}, {3, 4}, {0, 1}};
        double v = tripartite_mi(s, p1);
        CHECK(tripartite_mi(s, p2) == doctest::Approx(v).epsilon(1e-10));
        CHECK(tripartite_mi(s, p3) == doctest::Approx(v).epsilon(1e-10));
    }

    SUBCASE("overlapping subsets are rejected") {
        StateVector s = StateVector::zero(4);
        CHECK_THROWS_AS(tripartite_mi(s, {{0}, {0}, {2}}), std::invalid_argument);
        CHECK_THROWS_AS(tripartite_mi(s, {{0}, {}, {2}}), std::invalid_argument);
        CHECK_THROWS_AS(tripartite_mi(s, {{0}, {1}, {9}}), std::invalid_argument);
    }

    SUBCASE("purity identity: S_ABC equals S of the complement") {
        Rng rng(8);
        StateVector s = oracle::random_state(7, rng);
        std::vector<int> abc{0, 1, 2, 3, 4};
        std::vector<int> d{5, 6};
        CHECK(vn_entropy(partial_trace(s, abc)) ==
              doctest::Approx(vn_entropy(partial_trace(s, d))).epsilon(1e-8));
    }
}
