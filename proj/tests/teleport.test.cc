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

#include "qcomm/teleport.h"

#include <cmath>
#include <map>

#include <gtest/gtest.h>

using namespace qcomm;

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kR = 1.0 / std::sqrt(2.0);
const std::vector<BellState> kBells{BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus,
                                    BellState::kPsiMinus};

void expect_perfect(const ProtocolResult &r, const std::string &what) {
    EXPECT_NEAR(r.total_probability(), 1.0, 1e-10) << what;
    EXPECT_GE(r.min_fidelity(), 1.0 - 1e-10) << what;
}

}  // namespace

TEST(teleport, zero_through_phi_plus) {
    const ProtocolResult r = standard_teleport(PureState::from_bits("0"), BellState::kPhiPlus);
    ASSERT_EQ(r.branches.size(), 4u);
    expect_perfect(r, "|0>");
    EXPECT_EQ(r.bell_pairs, 1);
    EXPECT_EQ(r.classical_bits, 2);
}

TEST(teleport, plus_i_state_every_resource) {
    const PureState psi(1, Vector{{kR, Complex(0, kR)}});
    for (BellState b : kBells) {
        const ProtocolResult r = standard_teleport(psi, b);
        expect_perfect(r, bell_name(b));
        for (const auto &br : r.branches) {
            EXPECT_NEAR(br.probability, 0.25, 1e-12);
        }
    }
}

TEST(teleport, random_payloads_every_resource) {
    Rng rng(1);
    for (int trial = 0; trial < 25; trial++) {
        const PureState psi = random_pure_state(1, rng);
        for (BellState b : kBells) {
            expect_perfect(standard_teleport(psi, b), bell_name(b));
        }
    }
    EXPECT_THROW(standard_teleport(PureState::zeros(2), BellState::kPhiPlus), std::invalid_argument);
}

TEST(teleport, rsp_unitary_maps_to_complement) {
    Rng rng(2);
    for (int trial = 0; trial < 10; trial++) {
        const KnownQubit q = KnownQubit::random(rng);
        const Vector v = q.state().amplitudes();
        const Vector w = rsp_unitary(q.phi) * v;
        EXPECT_NEAR(std::abs(v.dot(w)), 0.0, 1e-12);
        EXPECT_TRUE(is_unitary(rsp_unitary(q.phi), 1e-12));
    }
}

TEST(teleport, rsp_zero_state) {
    const ProtocolResult r = rsp(KnownQubit(0, 0));
    expect_perfect(r, "theta=0");
}

TEST(teleport, rsp_plus_state) {
    const ProtocolResult r = rsp(KnownQubit(kPi / 2, 0));
    ASSERT_EQ(r.branches.size(), 2u);
    expect_perfect(r, "|+>");
    for (const auto &b : r.branches) {
        EXPECT_NEAR(b.probability, 0.5, 1e-12);
    }
    EXPECT_EQ(r.classical_bits, 1);
}

TEST(teleport, rsp_random_states_every_resource) {
    Rng rng(3);
    for (int trial = 0; trial < 25; trial++) {
        const KnownQubit q = KnownQubit::random(rng);
        for (BellState b : kBells) {
            const ProtocolResult r = rsp(q, b);
            expect_perfect(r, bell_name(b));
            for (const auto &br : r.branches) {
                EXPECT_NEAR(br.probability, 0.5, 1e-10);
            }
        }
    }
}

TEST(teleport, known_qubit_validation) {
    EXPECT_THROW(KnownQubit(-0.1, 0), std::invalid_argument);
    EXPECT_THROW(KnownQubit(kPi + 0.1, 0), std::invalid_argument);
    EXPECT_THROW(KnownQubit(1, 2 * kPi), std::invalid_argument);
    const PureState s = KnownQubit(kPi / 2, kPi / 2).state();
    EXPECT_LT(std::abs(s.amplitude(1) - Complex(0, kR)), 1e-15);
}

TEST(teleport, ghz_like_payload_validation) {
    EXPECT_THROW(GhzLikePayload(0, 1, 0), std::invalid_argument);
    EXPECT_THROW(GhzLikePayload(2, 1, 1), std::invalid_argument);
    const PureState s = GhzLikePayload(3, kR, -kR).state();
    EXPECT_NEAR(s.amplitude(0).real(), kR, 1e-15);
    EXPECT_NEAR(s.amplitude(7).real(), -kR, 1e-15);
}

TEST(teleport, dissolve_single_qubit_is_identity) {
    const GhzLikePayload p(1, 0.6, Complex(0, 0.8));
    EXPECT_NEAR(fidelity(mqt_dissolve(p), p.state()), 1.0, 1e-15);
    EXPECT_EQ(mqt_cascade(1).ops().size(), 0u);
}

TEST(teleport, dissolve_three_qubit_plus) {
    const PureState out = mqt_dissolve(GhzLikePayload(3, kR, kR));
    const PureState expect = tensor_product(PureState(1, Vector{{kR, kR}}), PureState::zeros(2));
    EXPECT_NEAR(fidelity(out, expect), 1.0, 1e-12);
}

TEST(teleport, dissolve_reconstruct_round_trip) {
    Rng rng(4);
    for (int m = 1; m <= 4; m++) {
        const GhzLikePayload p = GhzLikePayload::random(m, rng);
        const PureState dissolved = mqt_dissolve(p);
        EXPECT_NEAR(partial_trace(dissolved, {0}).purity(), 1.0, 1e-12);
        const PureState core(1, Vector{{p.alpha, p.beta}});
        EXPECT_NEAR(fidelity(core, partial_trace(dissolved, {0})), 1.0, 1e-12);
        EXPECT_NEAR(fidelity(mqt_reconstruct(core, m), p.state()), 1.0, 1e-12) << m;
        // The trailing qubits are |0...0>.
        if (m > 1) {
            std::vector<int> rest;
            for (int q = 1; q < m; q++) {
                rest.push_back(q);
            }
            EXPECT_NEAR(fidelity(PureState::zeros(m - 1), partial_trace(dissolved, rest)), 1.0, 1e-12);
        }
    }
}

TEST(teleport, mqt_layout_counts) {
    const MqtLayout l = mqt_layout(3);
    EXPECT_EQ(l.num_qubits, 16);
    EXPECT_EQ(l.payload_a.size(), 3u);
    EXPECT_EQ(l.payload_b.size(), 4u);
    EXPECT_EQ(l.receiver1.size(), 3u);
    EXPECT_EQ(l.receiver2.size(), 4u);
    EXPECT_THROW(mqt_layout(0), std::invalid_argument);
}

TEST(teleport, mqt_random_payloads) {
    Rng rng(5);
    for (int m = 1; m <= 3; m++) {
        for (int trial = 0; trial < (m == 3 ? 3 : 10); trial++) {
            const ProtocolResult r = mqt_run(GhzLikePayload::random(m, rng), GhzLikePayload::random(m + 1, rng));
            EXPECT_EQ(r.branches.size(), 16u);
            EXPECT_EQ(r.bell_pairs, 2);
            EXPECT_EQ(r.classical_bits, 4);
            expect_perfect(r, "m=" + std::to_string(m));
        }
    }
}

TEST(teleport, mqt_zero_payload) {
    Rng rng(6);
    const ProtocolResult r = mqt_run(GhzLikePayload(2, 1, 0), GhzLikePayload::random(3, rng));
    expect_perfect(r, "|00>");
}

TEST(teleport, mqt_rejects_mismatched_payloads) {
    EXPECT_THROW(mqt_run(GhzLikePayload(1, 1, 0), GhzLikePayload(1, 1, 0)), std::invalid_argument);
}

TEST(teleport, mqt_plus_payloads_give_uniform_receivers) {
    const double r = kR;
    const GhzLikePayload a(1, r, r), b(2, r, r);
    const MqtSample s = mqt_sample(a, b, 8192, 7);
    ASSERT_EQ(s.receiver_cores.shots, 8192u);
    const double sigma = std::sqrt(8192 * 0.25 * 0.75);
    for (const char *key : {"00", "01", "10", "11"}) {
        const auto it = s.receiver_cores.counts.find(key);
        ASSERT_NE(it, s.receiver_cores.counts.end()) << key;
        EXPECT_LE(std::abs(static_cast<double>(it->second) - 2048.0), 5 * sigma) << key;
    }
    // Analytic check of the same distribution.
    std::map<std::string, double> probs;
    for (const auto &br : run_circuit(mqt_circuit(1, true), mqt_input(a, b)).branches) {
        probs[br.bits.substr(4)] += br.probability;
    }
    for (const auto &[k, p] : probs) {
        EXPECT_NEAR(p, 0.25, 1e-12) << k;
    }
}

TEST(teleport, mqt_noiseless_output_matches_payloads) {
    Rng rng(8);
    const GhzLikePayload a = GhzLikePayload::random(1, rng), b = GhzLikePayload::random(2, rng);
    const MixedState out = mqt_noisy_output(a, b, std::nullopt);
    EXPECT_NEAR(fidelity(tensor_product(a.state(), b.state()), out), 1.0, 1e-10);
}

TEST(teleport, broadcast_plain_plus_two_receivers) {
    BroadcastChannelSpec spec;
    spec.parties = 2;
    const BroadcastResult r = broadcast_known(KnownQubit(kPi / 2, 0), spec);
    EXPECT_EQ(r.status, BroadcastStatus::kCompleted);
    EXPECT_EQ(r.bell_pairs, 2);
    EXPECT_EQ(r.classical_bits, 2);
    EXPECT_GE(r.min_fidelity(), 1 - 1e-10);
}

TEST(teleport, broadcast_plain_zero_five_receivers) {
    BroadcastChannelSpec spec;
    spec.parties = 5;
    const BroadcastResult r = broadcast_known(KnownQubit(0, 0), spec);
    EXPECT_EQ(r.bell_pairs, 5);
    EXPECT_GE(r.min_fidelity(), 1 - 1e-10);
    ASSERT_EQ(r.units.size(), 1u);
    for (const auto &b : r.units[0].result.branches) {
        EXPECT_EQ(b.fidelities.size(), 5u);
    }
}

TEST(teleport, broadcast_every_variant_random) {
    Rng rng(9);
    for (int trial = 0; trial < 5; trial++) {
        const KnownQubit q = KnownQubit::random(rng);
        for (int m = 2; m <= 4; m++) {
            for (BroadcastVariant v : {BroadcastVariant::kPlain, BroadcastVariant::kJoint,
                                       BroadcastVariant::kControlled, BroadcastVariant::kMultidirectional}) {
                BroadcastChannelSpec spec;
                spec.variant = v;
                spec.parties = m;
                if (v == BroadcastVariant::kControlled) {
                    for (int i = 0; i < m; i++) {
                        spec.controller_choices.push_back(i % 2 ? BellState::kPhiMinus : BellState::kPhiPlus);
                    }
                }
                const BroadcastResult r = broadcast_known(q, spec);
                EXPECT_GE(r.min_fidelity(), 1 - 1e-10) << broadcast_variant_name(v) << " m=" << m;
                for (const auto &u : r.units) {
                    EXPECT_NEAR(u.result.total_probability(), 1.0, 1e-10);
                }
            }
        }
    }
}

TEST(teleport, broadcast_resource_counts) {
    BroadcastChannelSpec spec;
    spec.variant = BroadcastVariant::kMultidirectional;
    spec.parties = 3;
    EXPECT_EQ(spec.resource_units(), 6);
    EXPECT_EQ(broadcast_known(KnownQubit(1, 1), spec).bell_pairs, 6);
    spec.variant = BroadcastVariant::kJoint;
    const BroadcastResult joint = broadcast_known(KnownQubit(1, 1), spec);
    EXPECT_EQ(joint.ghz_triples, 3);
    EXPECT_EQ(joint.bell_pairs, 0);
}

TEST(teleport, broadcast_mixed_pair_resources) {
    BroadcastChannelSpec spec;
    spec.parties = 4;
    spec.pair_resources = kBells;
    spec.require_distinct = true;
    EXPECT_GE(broadcast_known(KnownQubit(0.7, 4.0), spec).min_fidelity(), 1 - 1e-10);
    spec.pair_resources = {BellState::kPhiPlus, BellState::kPhiPlus, BellState::kPsiMinus, BellState::kPsiPlus};
    EXPECT_THROW(broadcast_known(KnownQubit(0.7, 4.0), spec), std::invalid_argument);
    spec.require_distinct = false;
    EXPECT_GE(broadcast_known(KnownQubit(0.7, 4.0), spec).min_fidelity(), 1 - 1e-10);
}

TEST(teleport, controlled_withheld_disclosure) {
    BroadcastChannelSpec spec;
    spec.variant = BroadcastVariant::kControlled;
    spec.parties = 3;
    spec.controller_choices = {BellState::kPhiMinus, BellState::kPhiPlus, BellState::kPhiMinus};
    spec.disclosed = false;
    const BroadcastResult r = broadcast_known(KnownQubit(1.2, 0.3), spec);
    EXPECT_EQ(r.status, BroadcastStatus::kControlNotReleased);
    EXPECT_TRUE(r.units.empty());
}

TEST(teleport, controlled_spec_validation) {
    BroadcastChannelSpec spec;
    spec.variant = BroadcastVariant::kControlled;
    spec.parties = 2;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.controller_choices = {BellState::kPhiPlus, BellState::kPsiPlus};
    EXPECT_THROW(spec.validate(), std::invalid_argument);
    spec.controller_choices = {BellState::kPhiPlus, BellState::kPhiMinus};
    EXPECT_NO_THROW(spec.validate());
    spec.parties = 0;
    EXPECT_THROW(spec.validate(), std::invalid_argument);
}

TEST(teleport, joint_matches_plain_final_states) {
    Rng rng(10);
    for (int trial = 0; trial < 10; trial++) {
        const KnownQubit q = KnownQubit::random(rng);
        BroadcastChannelSpec joint;
        joint.variant = BroadcastVariant::kJoint;
        joint.parties = 2;
        BroadcastChannelSpec plain;
        plain.parties = 2;
        // Both deliver the combined (theta, phi) state to every receiver.
        EXPECT_GE(broadcast_known(q, joint).min_fidelity(), 1 - 1e-10);
        EXPECT_GE(broadcast_known(q, plain).min_fidelity(), 1 - 1e-10);
    }
}

TEST(teleport, plain_broadcast_noiseless_output) {
    const KnownQubit q(1.1, 2.2);
    const MixedState out = broadcast_noisy_output(q, 3, std::nullopt);
    EXPECT_NEAR(fidelity(tensor_product(tensor_product(q.state(), q.state()), q.state()), out), 1.0, 1e-10);
}

TEST(teleport, variant_names_round_trip) {
    for (BroadcastVariant v : {BroadcastVariant::kPlain, BroadcastVariant::kJoint, BroadcastVariant::kControlled,
                               BroadcastVariant::kMultidirectional}) {
        EXPECT_EQ(parse_broadcast_variant(broadcast_variant_name(v)), v);
    }
    EXPECT_THROW(parse_broadcast_variant("unicast"), std::invalid_argument);
}
