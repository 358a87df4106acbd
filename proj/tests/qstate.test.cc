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

#include "qcomm/qstate.h"

#include <cmath>

#include <gtest/gtest.h>

#include "qcomm/circuits.h"

using namespace qcomm;

namespace {

const double kR = 1.0 / std::sqrt(2.0);

PureState ket(std::initializer_list<Complex> amps) {
    Vector v(static_cast<Eigen::Index>(amps.size()));
    Eigen::Index i = 0;
    for (Complex a : amps) {
        v(i++) = a;
    }
    return PureState(static_cast<int>(std::log2(amps.size())), v);
}

double max_abs(const Matrix &m) { return m.cwiseAbs().maxCoeff(); }

Matrix hadamard() { return standard_gate("H").matrix; }

}  // namespace

TEST(qstate, constructor_normalizes) {
    PureState s(1, Vector{{3, 4}});
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_NEAR(std::abs(s.amplitude(1)), 0.8, 1e-12);
}

TEST(qstate, constructor_rejects_bad_input) {
    EXPECT_THROW(PureState(2, Vector{{1, 0}}), std::invalid_argument);
    EXPECT_THROW(PureState(1, Vector{{0, 0}}), std::invalid_argument);
    EXPECT_THROW(PureState::zeros(kMaxQubits + 1), std::invalid_argument);
    EXPECT_THROW(MixedState(1, Matrix{{1, 1}, {0, 0}}), std::invalid_argument);
    EXPECT_THROW(MixedState(1, Matrix{{0.5, 0}, {0, 0.4}}), std::invalid_argument);
    EXPECT_THROW(MixedState(1, Matrix{{1.5, 0}, {0, -0.5}}), std::invalid_argument);
}

TEST(qstate, from_bits_is_big_endian) {
    const PureState s = PureState::from_bits("01");
    EXPECT_EQ(s.amplitude(1), Complex(1));
    EXPECT_EQ(bits_to_string(1, 2), "01");
}

TEST(qstate, tensor_zero_one) {
    const PureState s = tensor_product(PureState::from_bits("0"), PureState::from_bits("1"));
    EXPECT_EQ(s.num_qubits(), 2);
    EXPECT_NEAR(std::abs(s.amplitude(1) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(s.amplitudes().cwiseAbs().sum(), 1.0, 1e-15);
}

TEST(qstate, tensor_with_empty_state) {
    const PureState psi = ket({0.6, Complex(0, 0.8)});
    const PureState out = tensor_product(psi, PureState());
    EXPECT_EQ(out.num_qubits(), 1);
    EXPECT_NEAR((out.amplitudes() - psi.amplitudes()).norm(), 0.0, 1e-15);
}

TEST(qstate, tensor_plus_plus) {
    const PureState plus = ket({kR, kR});
    const PureState out = tensor_product(plus, plus);
    for (uint64_t i = 0; i < 4; i++) {
        EXPECT_NEAR(std::abs(out.amplitude(i) - 0.5), 0.0, 1e-15);
    }
}

TEST(qstate, tensor_of_mixed_matches_kronecker) {
    Rng rng(1);
    const MixedState a = random_mixed_state(1, rng);
    const MixedState b = random_mixed_state(1, rng);
    const MixedState ab = tensor_product(a, b);
    Matrix kron(4, 4);
    for (int i = 0; i < 2; i++) {
        for (int j = 0; j < 2; j++) {
            kron.block(2 * i, 2 * j, 2, 2) = a.matrix()(i, j) * b.matrix();
        }
    }
    EXPECT_LT(max_abs(ab.matrix() - kron), 1e-14);
}

TEST(qstate, x_flips_zero) {
    const PureState out = apply_unitary(PureState::from_bits("0"), pauli('X'), {0});
    EXPECT_NEAR(fidelity(out, PureState::from_bits("1")), 1.0, 1e-15);
}

TEST(qstate, identity_keeps_state) {
    Rng rng(2);
    const PureState psi = random_pure_state(3, rng);
    const PureState out = apply_unitary(psi, pauli('I'), {1});
    EXPECT_LT((out.amplitudes() - psi.amplitudes()).norm(), 1e-15);
}

TEST(qstate, hadamard_twice_is_identity) {
    const PureState once = apply_unitary(PureState::from_bits("0"), hadamard(), {0});
    const PureState twice = apply_unitary(once, hadamard(), {0});
    EXPECT_LT((twice.amplitudes() - PureState::from_bits("0").amplitudes()).norm(), 1e-12);
}

TEST(qstate, unitary_targets_follow_order) {
    // CNOT with control 1 and target 0 maps |01> to |11>.
    const PureState out = apply_unitary(PureState::from_bits("01"), standard_gate("CNOT").matrix, {1, 0});
    EXPECT_NEAR(fidelity(out, PureState::from_bits("11")), 1.0, 1e-15);
}

TEST(qstate, apply_unitary_rejects_bad_arguments) {
    const PureState s = PureState::zeros(2);
    EXPECT_THROW(apply_unitary(s, Matrix{{1, 0}, {0, 2}}, {0}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(s, standard_gate("CNOT").matrix, {0, 0}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(s, pauli('X'), {2}), std::invalid_argument);
    EXPECT_THROW(apply_unitary(s, standard_gate("CNOT").matrix, {0}), std::invalid_argument);
}

TEST(qstate, unitary_preserves_norm_and_trace) {
    Rng rng(3);
    for (int trial = 0; trial < 20; trial++) {
        const PureState psi = random_pure_state(3, rng);
        const Matrix u = standard_gate("U", {0.3 * trial, 1.1, -0.7, 0.2 * trial}).matrix;
        const PureState out = apply_unitary(psi, u, {trial % 3});
        EXPECT_LT(std::abs(out.amplitudes().norm() - 1.0), 1e-10);
        const MixedState rho = apply_unitary(random_mixed_state(2, rng), standard_gate("CZ").matrix, {1, 0});
        EXPECT_LT(std::abs(rho.trace() - 1.0), 1e-10);
    }
}

TEST(qstate, mixed_unitary_matches_pure) {
    Rng rng(4);
    const PureState psi = random_pure_state(3, rng);
    const Matrix u = standard_gate("U", {0.1, 0.2, 0.3, 0.4}).matrix;
    const Matrix cz = standard_gate("CZ").matrix;
    const PureState p = apply_unitary(apply_unitary(psi, u, {2}), cz, {2, 0});
    const MixedState m = apply_unitary(apply_unitary(psi.density(), u, {2}), cz, {2, 0});
    EXPECT_LT(max_abs(m.matrix() - p.density().matrix()), 1e-14);
}

TEST(qstate, measure_plus_computational) {
    const auto probs = outcome_probabilities(ket({kR, kR}), MeasurementBasis::computational(1), {0});
    EXPECT_NEAR(probs[0], 0.5, 1e-12);
    EXPECT_NEAR(probs[1], 0.5, 1e-12);
}

TEST(qstate, measure_zero_is_certain) {
    const auto probs = outcome_probabilities(PureState::from_bits("0"), MeasurementBasis::computational(1), {0});
    EXPECT_NEAR(probs[0], 1.0, 1e-15);
}

TEST(qstate, measure_phi_plus_in_bell_basis) {
    const auto probs = outcome_probabilities(prepare_bell(BellState::kPhiPlus), MeasurementBasis::bell(), {0, 1});
    EXPECT_NEAR(probs[0], 1.0, 1e-12);
    EXPECT_NEAR(probs[1] + probs[2] + probs[3], 0.0, 1e-12);
}

TEST(qstate, born_probabilities_sum_to_one) {
    Rng rng(5);
    for (int trial = 0; trial < 10; trial++) {
        const PureState psi = random_pure_state(3, rng);
        for (const auto &basis : {MeasurementBasis::bell(), MeasurementBasis::computational(2)}) {
            const auto p = outcome_probabilities(psi, basis, {2, 0});
            double sum = 0;
            for (double x : p) {
                sum += x;
            }
            EXPECT_NEAR(sum, 1.0, 1e-10);
        }
        const auto pd = outcome_probabilities(psi, MeasurementBasis::diagonal(), {1});
        EXPECT_NEAR(pd[0] + pd[1], 1.0, 1e-10);
    }
}

TEST(qstate, pure_and_mixed_probabilities_agree) {
    Rng rng(6);
    const PureState psi = random_pure_state(2, rng);
    const auto a = outcome_probabilities(psi, MeasurementBasis::bell(), {0, 1});
    const auto b = outcome_probabilities(psi.density(), MeasurementBasis::bell(), {0, 1});
    for (size_t i = 0; i < a.size(); i++) {
        EXPECT_NEAR(a[i], b[i], 1e-12);
    }
}

TEST(qstate, sampled_frequencies_within_five_sigma) {
    Rng rng(7);
    const PureState psi = random_pure_state(2, rng);
    const auto basis = MeasurementBasis::computational(2);
    const auto probs = outcome_probabilities(psi, basis, {0, 1});
    Rng shots_rng(8);
    const MeasureResult r = measure(psi, basis, {0, 1}, 8192, shots_rng);
    uint64_t total = 0;
    for (size_t i = 0; i < probs.size(); i++) {
        const auto it = r.histogram.counts.find(basis.labels[i]);
        const double count = it == r.histogram.counts.end() ? 0.0 : static_cast<double>(it->second);
        total += static_cast<uint64_t>(count);
        const double sigma = std::sqrt(8192 * probs[i] * (1 - probs[i]));
        EXPECT_LE(std::abs(count - 8192 * probs[i]), 5 * sigma + 1e-9) << basis.labels[i];
    }
    EXPECT_EQ(total, r.histogram.shots);
}

TEST(qstate, same_seed_same_histogram) {
    const PureState psi = ket({0.6, 0.8});
    Rng a(11), b(11);
    const auto ha = measure(psi, MeasurementBasis::computational(1), {0}, 1000, a).histogram;
    const auto hb = measure(psi, MeasurementBasis::computational(1), {0}, 1000, b).histogram;
    EXPECT_EQ(ha.counts, hb.counts);
}

TEST(qstate, collapse_renormalizes) {
    const PureState out = collapse(prepare_bell(BellState::kPhiPlus), MeasurementBasis::computational(1), {0}, 1);
    EXPECT_NEAR(fidelity(out, PureState::from_bits("11")), 1.0, 1e-12);
}

TEST(qstate, forced_impossible_branch_is_reported) {
    Rng rng(1);
    EXPECT_THROW(collapse(PureState::from_bits("0"), MeasurementBasis::computational(1), {0}, 1),
                 ImpossibleBranchError);
    EXPECT_THROW(measure(PureState::from_bits("0"), MeasurementBasis::computational(1), {0}, 10, rng, 1),
                 ImpossibleBranchError);
}

TEST(qstate, custom_basis_validation) {
    EXPECT_THROW(MeasurementBasis::custom({Vector{{1, 0}}, Vector{{1, 0}}}, {"a", "b"}), std::invalid_argument);
    EXPECT_THROW(MeasurementBasis::custom({Vector{{1, 0}}}, {"a"}), std::invalid_argument);
    EXPECT_NO_THROW(MeasurementBasis::custom({Vector{{kR, kR}}, Vector{{kR, -kR}}}, {"+", "-"}));
}

TEST(qstate, partial_trace_of_bell_is_maximally_mixed) {
    const MixedState r = partial_trace(prepare_bell(BellState::kPhiPlus), {0});
    EXPECT_LT(max_abs(r.matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(qstate, partial_trace_of_product_keeps_factor) {
    Rng rng(9);
    const MixedState a = random_mixed_state(1, rng);
    const MixedState b = random_mixed_state(2, rng);
    const MixedState r = partial_trace(tensor_product(a, b), {0});
    EXPECT_LT(max_abs(r.matrix() - a.matrix()), 1e-14);
    const MixedState rb = partial_trace(tensor_product(a, b), {1, 2});
    EXPECT_LT(max_abs(rb.matrix() - b.matrix()), 1e-14);
}

TEST(qstate, partial_trace_of_zero_one) {
    const MixedState r = partial_trace(PureState::from_bits("01"), {1});
    EXPECT_LT(max_abs(r.matrix() - Matrix{{0, 0}, {0, 1}}), 1e-15);
}

TEST(qstate, partial_trace_edge_cases) {
    Rng rng(10);
    const MixedState rho = random_mixed_state(2, rng);
    EXPECT_LT(max_abs(partial_trace(rho, {0, 1}).matrix() - rho.matrix()), 1e-15);
    EXPECT_THROW(partial_trace(rho, {}), std::invalid_argument);
    EXPECT_NEAR(partial_trace(rho, {1}).trace(), 1.0, 1e-10);
}

TEST(qstate, fidelity_examples) {
    Rng rng(12);
    const MixedState rho = random_mixed_state(2, rng);
    EXPECT_NEAR(fidelity(rho, rho), 1.0, 1e-10);
    const MixedState zero = PureState::from_bits("0").density();
    EXPECT_NEAR(fidelity(zero, MixedState::maximally_mixed(1)), 0.5, 1e-12);
    EXPECT_NEAR(fidelity(zero, PureState::from_bits("1").density()), 0.0, 1e-12);
    EXPECT_THROW(fidelity(zero, rho), std::invalid_argument);
}

TEST(qstate, fidelity_is_symmetric) {
    Rng rng(13);
    for (int trial = 0; trial < 25; trial++) {
        const MixedState a = random_mixed_state(2, rng);
        const MixedState b = random_mixed_state(2, rng);
        EXPECT_NEAR(fidelity(a, b), fidelity(b, a), 1e-8);
    }
}

TEST(qstate, fidelity_pure_reduces_to_expectation) {
    Rng rng(14);
    for (int trial = 0; trial < 10; trial++) {
        const PureState psi = random_pure_state(2, rng);
        const MixedState rho = random_mixed_state(2, rng);
        const double expect = (psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0, 0).real();
        EXPECT_NEAR(fidelity(psi.density(), rho), expect, 1e-10);
        EXPECT_NEAR(fidelity(psi, rho), expect, 1e-10);
    }
}

TEST(qstate, mixed_state_purity_bounds) {
    Rng rng(15);
    for (int n = 1; n <= 3; n++) {
        const MixedState rho = random_mixed_state(n, rng);
        EXPECT_GE(rho.purity(), 1.0 / (1 << n) - 1e-10);
        EXPECT_LE(rho.purity(), 1.0 + 1e-10);
    }
    EXPECT_NEAR(MixedState::maximally_mixed(2).purity(), 0.25, 1e-12);
}

TEST(qstate, tomography_of_zero) {
    const MixedState r = tomography_reconstruct({{"I", 1}, {"X", 0}, {"Y", 0}, {"Z", 1}});
    EXPECT_LT(max_abs(r.matrix() - Matrix{{1, 0}, {0, 0}}), 1e-12);
}

TEST(qstate, tomography_of_identity_only) {
    const MixedState r = tomography_reconstruct({{"I", 1}, {"X", 0}, {"Y", 0}, {"Z", 0}});
    EXPECT_LT(max_abs(r.matrix() - Matrix::Identity(2, 2) / 2.0), 1e-15);
}

TEST(qstate, tomography_of_phi_plus) {
    const PureState bell = prepare_bell(BellState::kPhiPlus);
    const auto ex = pauli_expectations(bell.density());
    EXPECT_EQ(ex.size(), 16u);
    EXPECT_NEAR(ex.at("XX"), 1.0, 1e-12);
    EXPECT_NEAR(ex.at("YY"), -1.0, 1e-12);
    EXPECT_NEAR(ex.at("ZZ"), 1.0, 1e-12);
    EXPECT_LT(max_abs(tomography_reconstruct(ex).matrix() - bell.density().matrix()), 1e-9);
}

TEST(qstate, tomography_rejects_bad_input) {
    EXPECT_THROW(tomography_reconstruct({{"I", 1}, {"X", 0}, {"Z", 0}}), std::invalid_argument);
    EXPECT_THROW(tomography_reconstruct({{"I", 0.5}, {"X", 0}, {"Y", 0}, {"Z", 0}}), std::invalid_argument);
    EXPECT_THROW(tomography_reconstruct({}), std::invalid_argument);
}

TEST(qstate, tomography_round_trip_random_states) {
    Rng rng(16);
    for (int n = 1; n <= 2; n++) {
        for (int trial = 0; trial < 50; trial++) {
            const MixedState rho = random_mixed_state(n, rng);
            const MixedState back = tomography_reconstruct(pauli_expectations(rho));
            EXPECT_LT(max_abs(back.matrix() - rho.matrix()), 1e-9);
        }
    }
}

TEST(qstate, tomography_clamps_unphysical_estimates) {
    // <X> = <Z> = 1 lies outside the Bloch ball.
    const MixedState r = tomography_reconstruct({{"I", 1}, {"X", 1}, {"Y", 0}, {"Z", 1}});
    Eigen::SelfAdjointEigenSolver<Matrix> es(r.matrix());
    EXPECT_GE(es.eigenvalues().minCoeff(), -1e-12);
    EXPECT_NEAR(r.trace(), 1.0, 1e-12);
}

TEST(qstate, sampled_tomography_converges) {
    Rng rng(17);
    const MixedState rho = random_mixed_state(1, rng);
    Rng shots(18);
    const auto est = sample_pauli_expectations(rho, 8192, shots);
    const auto exact = pauli_expectations(rho);
    for (const auto &[s, v] : exact) {
        // Each estimate is a mean of +-1 outcomes: sigma <= 1/sqrt(8192).
        EXPECT_NEAR(est.at(s), v, 5.0 / std::sqrt(8192.0)) << s;
    }
}

TEST(qstate, pauli_strings) {
    EXPECT_EQ(all_pauli_strings(2).size(), 16u);
    EXPECT_EQ(all_pauli_strings(1).front(), "I");
    EXPECT_LT(max_abs(pauli_string_matrix("XZ") - standard_gate("CNOT").matrix * 0 - [] {
                  Matrix m = Matrix::Zero(4, 4);
                  m.block(0, 2, 2, 2) = pauli('Z');
                  m.block(2, 0, 2, 2) = pauli('Z');
                  return m;
              }()),
              1e-15);
    EXPECT_THROW(pauli('Q'), std::invalid_argument);
}

TEST(qstate, inverse_cdf_sampling) {
    Rng rng(19);
    EXPECT_EQ(sample_inverse_cdf({0.0, 1.0, 0.0}, rng), 1u);
    EXPECT_THROW(sample_inverse_cdf({}, rng), std::invalid_argument);
}
