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

#ifndef QCOMM_TELEPORT_H
#define QCOMM_TELEPORT_H

#include <optional>
#include <string>
#include <vector>

#include "qcomm/circuits.h"
#include "qcomm/noise.h"
#include "qcomm/qstate.h"

namespace qcomm {

/// cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>, theta in [0, pi], phi in [0, 2 pi).
struct KnownQubit {
    double theta;
    double phi;

    KnownQubit(double theta, double phi);
    PureState state() const;
    static KnownQubit random(Rng &rng);
};

/// alpha|0...0> + beta|1...1> on m qubits.
struct GhzLikePayload {
    int m;
    Complex alpha;
    Complex beta;

    GhzLikePayload(int m, Complex alpha, Complex beta);
    PureState state() const;
    static GhzLikePayload random(int m, Rng &rng);
};

/// Receiver outcome of one classical branch.
struct ProtocolBranch {
    std::string bits;
    double probability;
    /// One fidelity per receiver.
    std::vector<double> fidelities;
    double min_fidelity() const;
};

struct ProtocolResult {
    std::vector<ProtocolBranch> branches;
    int bell_pairs = 0;
    int ghz_triples = 0;
    int classical_bits = 0;
    double min_fidelity() const;
    double total_probability() const;
};

/// Single-qubit teleportation through any Bell resource. Bob first undoes
/// the Pauli that maps phi+ onto the resource, then applies X^b1 Z^b0.
ProtocolResult standard_teleport(const PureState &payload, BellState resource);
Circuit teleport_circuit(BellState resource);

/// X Z P(-2 phi): maps the known state to its orthogonal complement.
Matrix rsp_unitary(double phi);

/// Alice measures her half of the resource in {q, U_RSP q}. Outcome q needs
/// U_RSP^{-1} at the receiver on the singlet; other Bell resources are first
/// rotated onto the singlet by a Pauli on the receiver's side.
ProtocolResult rsp(const KnownQubit &payload, BellState resource = BellState::kPsiMinus);

/// CNOT cascade from qubit 0 onto every other qubit.
Circuit mqt_cascade(int m);
/// Maps the payload to (alpha|0> + beta|1>) (x) |0...0>.
PureState mqt_dissolve(const GhzLikePayload &payload);
/// Inverse of mqt_dissolve for a single-qubit core.
PureState mqt_reconstruct(const PureState &core, int m);

struct MqtLayout {
    int m;
    int num_qubits;
    std::vector<int> payload_a;
    std::vector<int> payload_b;
    int pair1_alice, pair1_receiver;
    int pair2_alice, pair2_receiver;
    std::vector<int> receiver1;
    std::vector<int> receiver2;
};

MqtLayout mqt_layout(int m);
/// Payloads (x) two phi+ pairs (x) receiver ancillas.
PureState mqt_input(const GhzLikePayload &a, const GhzLikePayload &b);
/// Dissolve, two Bell measurements, Pauli corrections and reconstruction.
/// With `measure_receivers` the receiver cores are measured at the end.
Circuit mqt_circuit(int m, bool measure_receivers = false);

/// Receiver 1 reconstructs payload a (m qubits) and receiver 2 payload b
/// (m+1 qubits) on each of the 16 branches.
ProtocolResult mqt_run(const GhzLikePayload &a, const GhzLikePayload &b);

struct MqtSample {
    ShotHistogram receiver_cores;
};

/// Sampled run measuring the two receiver cores; keys are "r1r2".
MqtSample mqt_sample(const GhzLikePayload &a, const GhzLikePayload &b, uint64_t shots, uint64_t seed);

/// Joint receiver state averaged over branches, with the channel hitting the
/// receivers' halves of both pairs before Alice measures.
MixedState mqt_noisy_output(const GhzLikePayload &a, const GhzLikePayload &b,
                            const std::optional<KrausChannel> &channel);

enum class BroadcastVariant { kPlain, kJoint, kControlled, kMultidirectional };

std::string broadcast_variant_name(BroadcastVariant v);
BroadcastVariant parse_broadcast_variant(std::string_view name);

struct BroadcastChannelSpec {
    BroadcastVariant variant = BroadcastVariant::kPlain;
    /// Receivers for plain, joint and controlled; parties for multidirectional.
    int parties = 2;
    /// One Bell state per pair; empty means phi+ everywhere.
    std::vector<BellState> pair_resources;
    /// Reject repeated entries in pair_resources.
    bool require_distinct = false;
    /// Controlled variant: the controller's secret choice (phi+ or phi-) per pair.
    std::vector<BellState> controller_choices;
    bool disclosed = true;
    /// Multidirectional: each party's own known qubit; empty reuses the payload.
    std::vector<KnownQubit> party_payloads;

    int resource_units() const;
    void validate() const;
};

enum class BroadcastStatus { kCompleted, kControlNotReleased };

/// Each unit is an independent block of the protocol: the whole run for
/// plain and controlled, one GHZ triple for joint, one sender/receiver pair
/// for multidirectional. Joint outcomes are products over units.
struct BroadcastUnit {
    std::string label;
    ProtocolResult result;
};

struct BroadcastResult {
    BroadcastStatus status = BroadcastStatus::kCompleted;
    std::vector<BroadcastUnit> units;
    int bell_pairs = 0;
    int ghz_triples = 0;
    int classical_bits = 0;
    double min_fidelity() const;
};

/// Plain circuit over m pairs: qubit 2i is Alice's half of pair i and
/// qubit 2i+1 the receiver's.
Circuit broadcast_plain_circuit(const KnownQubit &payload, const std::vector<BellState> &resources);
/// The |+> special case: Hadamard measurement on Alice's halves, ZX
/// correction, then every receiver measured in the computational basis.
Circuit broadcast_plus_circuit(int m);

BroadcastResult broadcast_known(const KnownQubit &payload, const BroadcastChannelSpec &spec);

/// Plain broadcast with the channel on each receiver's half before Alice
/// measures. Returns the branch-averaged joint receiver state.
MixedState broadcast_noisy_output(const KnownQubit &payload, int receivers,
                                  const std::optional<KrausChannel> &channel);

}  // namespace qcomm

#endif
