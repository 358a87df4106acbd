// Copyright 2026 The qcomm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qcomm/circuits.h"

#include <cmath>

#include <gtest/gtest.h>

#include "qcomm/teleport.h"

using namespace qcomm;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kR = 1.0 / std::sqrt(2.0);

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }
Matrix g(const char *name, const std::vector<double> &p = {}) { return standard_gate(name, p).matrix; }

double total_probability(const PureRun &run) {
    double sum = 0;
    for (const auto &b : run.branches) {
        sum += b.probability;
    }
    return sum;
}

}  // namespace

TEST(circuits, phase_pi_is_z) { EXPECT_LT(max_abs(g("P", {kPi}) - pauli('Z')), 1e-12); }

TEST(circuits, rz_zero_is_identity) { EXPECT_LT(max_abs(g("Rz", {0}) - Matrix::Identity(2, 2)), 1e-15); }

TEST(circuits, sigma_zt_zero_is_z) {
    EXPECT_LT(max_abs(g("SigmaZt", {0}) - pauli('Z')), 1e-15);
    const Matrix s2 = g("SigmaZt", {2});
    EXPECT_LT(std::abs(s2(1, 1) - std::polar(1.0, kPi / 4)), 1e-15);
    EXPECT_THROW(standard_gate("SigmaZt", {0.5}), std::invalid_argument);
}

TEST(circuits, gate_algebra) {
    const Matrix h = g("H");
    EXPECT_LT(max_abs(h * pauli('X') * h - pauli('Z')), 1e-12);
    EXPECT_LT(max_abs(h * pauli('Z') * h - pauli('X')), 1e-12);
    EXPECT_LT(max_abs(g("CNOT") * g("CNOT") - Matrix::Identity(4, 4)), 1e-12);
    EXPECT_LT(max_abs(g("SWAP") * g("SWAP") - Matrix::Identity(4, 4)), 1e-12);
}

TEST(circuits, rotation_matrices) {
    const Complex i(0, 1);
    EXPECT_LT(max_abs(g("Rx", {kPi}) + i * pauli('X')), 1e-12);
    EXPECT_LT(max_abs(g("Ry", {kPi}) + i * pauli('Y')), 1e-12);
    EXPECT_LT(max_abs(g("Rz", {kPi}) + i * pauli('Z')), 1e-12);
}

TEST(circuits, euler_decomposition_is_unitary) {
    Rng rng(1);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (int trial = 0; trial < 20; trial++) {
        const Matrix m = g("U", {u(rng), u(rng), u(rng), u(rng)});
        EXPECT_LT(max_abs(m.adjoint() * m - Matrix::Identity(2, 2)), 1e-10);
    }
}

TEST(circuits, gate_errors) {
    EXPECT_THROW(standard_gate("Toffoli"), std::invalid_argument);
    EXPECT_THROW(standard_gate("P"), std::invalid_argument);
    EXPECT_THROW(standard_gate("X", {1.0}), std::invalid_argument);
}

TEST(circuits, every_standard_gate_is_unitary) {
    for (const char *name : {"I", "X", "Y", "Z", "H", "iY", "CNOT", "CZ", "SWAP"}) {
        EXPECT_TRUE(is_unitary(g(name), 1e-10)) << name;
    }
    for (const char *name : {"P", "Rx", "Ry", "Rz"}) {
        EXPECT_TRUE(is_unitary(g(name, {0.7}), 1e-10)) << name;
    }
}

TEST(circuits, bell_phi_plus) {
    const PureState s = prepare_named("phi+");
    EXPECT_LT((s.amplitudes() - Vector{{kR, 0, 0, kR}}).norm(), 1e-15);
}

TEST(circuits, all_bell_states) {
    EXPECT_LT((prepare_bell(BellState::kPhiMinus).amplitudes() - Vector{{kR, 0, 0, -kR}}).norm(), 1e-15);
    EXPECT_LT((prepare_bell(BellState::kPsiPlus).amplitudes() - Vector{{0, kR, kR, 0}}).norm(), 1e-15);
    EXPECT_LT((prepare_bell(BellState::kPsiMinus).amplitudes() - Vector{{0, kR, -kR, 0}}).norm(), 1e-15);
}

TEST(circuits, ghz3) {
    const PureState s = prepare_named("ghz3");
    EXPECT_NEAR(s.amplitude(0).real(), kR, 1e-15);
    EXPECT_NEAR(s.amplitude(7).real(), kR, 1e-15);
    EXPECT_NEAR(s.amplitudes().cwiseAbs2().segment(1, 6).sum(), 0.0, 1e-30);
    EXPECT_THROW(prepare_ghz(2), std::invalid_argument);
    EXPECT_THROW(prepare_named("ghz2"), std::invalid_argument);
}

TEST(circuits, cluster4) {
    const PureState s = prepare_named("cluster4");
    for (uint64_t i : {0b0000, 0b0011, 0b1100}) {
        EXPECT_NEAR(s.amplitude(i).real(), 0.5, 1e-15);
    }
    EXPECT_NEAR(s.amplitude(0b1111).real(), -0.5, 1e-15);
}

TEST(circuits, prep_circuits_match_named_states) {
    for (BellState b : {BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus, BellState::kPsiMinus}) {
        const PureRun run = run_circuit(bell_prep_circuit(b), PureState::zeros(2));
        EXPECT_NEAR(fidelity(run.branches[0].state, prepare_bell(b)), 1.0, 1e-12) << bell_name(b);
    }
    EXPECT_NEAR(fidelity(run_circuit(ghz_prep_circuit(4), PureState::zeros(4)).branches[0].state, prepare_ghz(4)),
                1.0, 1e-12);
    EXPECT_NEAR(
        fidelity(run_circuit(cluster4_prep_circuit(), PureState::zeros(4)).branches[0].state, prepare_cluster4()), 1.0,
        1e-12);
}

TEST(circuits, teleport_circuit_every_branch) {
    Rng rng(2);
    for (int trial = 0; trial < 10; trial++) {
        const PureState psi = random_pure_state(1, rng);
        const PureState input = tensor_product(psi, prepare_bell(BellState::kPhiPlus));
        const PureRun run = run_circuit(teleport_circuit(BellState::kPhiPlus), input);
        EXPECT_EQ(run.branches.size(), 4u);
        EXPECT_NEAR(total_probability(run), 1.0, 1e-10);
        for (const auto &b : run.branches) {
            EXPECT_NEAR(fidelity(psi, partial_trace(b.state, {2})), 1.0, 1e-10) << b.bits;
        }
    }
}

TEST(circuits, empty_circuit_keeps_input) {
    Rng rng(3);
    const PureState psi = random_pure_state(2, rng);
    const PureRun run = run_circuit(Circuit(2), psi);
    ASSERT_EQ(run.branches.size(), 1u);
    EXPECT_LT((run.branches[0].state.amplitudes() - psi.amplitudes()).norm(), 1e-15);
    EXPECT_EQ(run.branches[0].bits, "");
}

TEST(circuits, plus_broadcast_receivers_are_uniform) {
    const PureState input = tensor_product(prepare_bell(BellState::kPhiPlus), prepare_bell(BellState::kPhiPlus));
    const PureRun run = run_circuit(broadcast_plus_circuit(2), input);
    std::map<std::string, double> receivers;
    for (const auto &b : run.branches) {
        // Record: two Alice bits, then the two receiver bits.
        receivers[b.bits.substr(2)] += b.probability;
    }
    ASSERT_EQ(receivers.size(), 4u);
    for (const auto &[bits, p] : receivers) {
        EXPECT_NEAR(p, 0.25, 1e-12) << bits;
    }
}

TEST(circuits, classical_control_and_parity) {
    Circuit c(2);
    c.gate("H", {0}).measure({0}).controlled(standard_gate("X"), {1}, {0}, 1);
    const PureRun run = run_circuit(c, PureState::zeros(2));
    ASSERT_EQ(run.branches.size(), 2u);
    for (const auto &b : run.branches) {
        EXPECT_NEAR(b.probability, 0.5, 1e-12);
        const std::string expect = b.bits == "0" ? "00" : "11";
        EXPECT_NEAR(fidelity(b.state, PureState::from_bits(expect)), 1.0, 1e-12);
    }
    Circuit zero_parity(2);
    zero_parity.gate("H", {0}).measure({0}).controlled(standard_gate("X"), {1}, {0}, 0);
    for (const auto &b : run_circuit(zero_parity, PureState::zeros(2)).branches) {
        const std::string expect = b.bits == "0" ? "01" : "10";
        EXPECT_NEAR(fidelity(b.state, PureState::from_bits(expect)), 1.0, 1e-12);
    }
}

TEST(circuits, construction_errors) {
    Circuit c(2);
    EXPECT_THROW(c.gate("X", {2}), std::invalid_argument);
    EXPECT_THROW(c.controlled(standard_gate("X"), {0}, {0}), std::invalid_argument);
    EXPECT_THROW(c.gate("CNOT", {0}), std::invalid_argument);
    EXPECT_THROW(c.gate(Gate{"bad", Matrix{{1, 1}, {0, 1}}, {}}, {0}), std::invalid_argument);
    EXPECT_THROW(run_circuit(c, PureState::zeros(3)), std::invalid_argument);
    EXPECT_THROW(Circuit(kMaxQubits + 1), std::invalid_argument);
}

TEST(circuits, inverse_undoes_preparation) {
    const Circuit prep = cluster4_prep_circuit();
    Circuit both(4);
    both.append(prep).append(prep.inverse());
    const PureRun run = run_circuit(both, PureState::zeros(4));
    EXPECT_NEAR(fidelity(run.branches[0].state, PureState::zeros(4)), 1.0, 1e-12);
    Circuit measured(1);
    measured.measure({0});
    EXPECT_THROW(measured.inverse(), std::invalid_argument);
}

TEST(circuits, branch_probabilities_sum_to_one) {
    Rng rng(4);
    Circuit c(3);
    c.gate("H", {0}).gate("CNOT", {0, 1}).gate("Ry", {2}, {0.9}).measure({0, 2}).gate("H", {1}).measure({1});
    for (int trial = 0; trial < 5; trial++) {
        const PureState psi = random_pure_state(3, rng);
        EXPECT_NEAR(total_probability(run_circuit(c, psi)), 1.0, 1e-10);
        double mixed_total = 0;
        for (const auto &b : run_circuit(c, psi.density()).branches) {
            mixed_total += b.probability;
        }
        EXPECT_NEAR(mixed_total, 1.0, 1e-10);
    }
}

TEST(circuits, mixed_run_matches_pure_run) {
    Rng rng(5);
    const PureState psi = tensor_product(random_pure_state(1, rng), prepare_bell(BellState::kPhiPlus));
    const PureRun pure = run_circuit(teleport_circuit(BellState::kPhiPlus), psi);
    const MixedRun mixed = run_circuit(teleport_circuit(BellState::kPhiPlus), psi.density());
    ASSERT_EQ(pure.branches.size(), mixed.branches.size());
    for (size_t i = 0; i < pure.branches.size(); i++) {
        EXPECT_EQ(pure.branches[i].bits, mixed.branches[i].bits);
        EXPECT_NEAR(pure.branches[i].probability, mixed.branches[i].probability, 1e-12);
        EXPECT_LT(max_abs(pure.branches[i].state.density().matrix() - mixed.branches[i].state.matrix()), 1e-12);
    }
}

TEST(circuits, sampled_run_is_seeded) {
    Circuit c(1);
    c.gate("H", {0}).measure({0});
    const PureRun a = run_circuit(c, PureState::zeros(1), RunMode::kSampled, 8192, 42);
    const PureRun b = run_circuit(c, PureState::zeros(1), RunMode::kSampled, 8192, 42);
    EXPECT_EQ(a.histogram.counts, b.histogram.counts);
    EXPECT_EQ(a.histogram.counts.at("0") + a.histogram.counts.at("1"), 8192u);
    const double sigma = std::sqrt(8192 * 0.25);
    EXPECT_LE(std::abs(static_cast<double>(a.histogram.counts.at("0")) - 4096.0), 5 * sigma);
}

TEST(circuits, parse_circuit_text) {
    const Circuit c = parse_circuit(R"(# Bell pair then measure
qubits 3
H 0
CNOT 0 1
Rz(pi/2) 2
P(-0.5*pi) 2
MEASURE 0 1
X 2 if 0 1 == 1
Z 2 if 0
)");
    EXPECT_EQ(c.num_qubits(), 3);
    EXPECT_EQ(c.num_record_bits(), 2);
    EXPECT_EQ(c.ops().size(), 7u);
    const auto &rz = std::get<GateOp>(c.ops()[2]);
    EXPECT_NEAR(rz.gate.params.at(0), kPi / 2, 1e-15);
    const auto &p = std::get<GateOp>(c.ops()[3]);
    EXPECT_NEAR(p.gate.params.at(0), -kPi / 2, 1e-15);
    const auto &x = std::get<GateOp>(c.ops()[5]);
    EXPECT_EQ(x.condition, (std::vector<int>{0, 1}));
    EXPECT_EQ(x.parity, 1);
}

TEST(circuits, parse_circuit_errors) {
    EXPECT_THROW(parse_circuit("H 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("qubits 1\nFOO 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("qubits 1\nX 0 if 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit("qubits 1\nRz(pi 0\n"), std::invalid_argument);
    EXPECT_THROW(parse_circuit(""), std::invalid_argument);
    try {
        parse_circuit("qubits 2\nH 0\nX 5\n");
        FAIL();
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
    }
}
