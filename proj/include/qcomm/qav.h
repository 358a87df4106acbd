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

#ifndef QCOMM_QAV_H
#define QCOMM_QAV_H

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcomm/circuits.h"
#include "qcomm/noise.h"
#include "qcomm/qstate.h"

namespace qcomm {

/// One flag per voter V1..Vn; true means veto.
struct VoteVector {
    std::vector<bool> vetoes;

    explicit VoteVector(std::vector<bool> vetoes);
    /// "1000": voter 1 vetoes.
    static VoteVector parse(std::string_view pattern);
    int n() const { return static_cast<int>(vetoes.size()); }
    int veto_count() const;
    std::string to_string() const;
};

/// Iteration t of the Bell-pair protocol: each vetoing voter applies
/// sigma_z(t) = diag(1, e^{i pi / 2^t}) to the travelling qubit.
struct VetoRound {
    int t;
    Matrix unitary() const;
};

struct RoundResult {
    int t;
    /// "phi+", "phi-", or "mixed" when the pair is not a Bell state.
    std::string state;
    /// Measured string after CNOT(0,1), H(0): "00" for phi+, "10" for phi-,
    /// "mixed" otherwise.
    std::string outcome;
    bool conclusive;
    /// Outcome probabilities of the reverse-EPR measurement.
    std::map<std::string, double> probabilities;
};

/// Qubit 0 stays with the agent, qubit 1 travels V1 -> ... -> Vn.
RoundResult protocol_a_round(const VoteVector &votes, int t);

struct ProtocolARun {
    std::vector<RoundResult> rounds;
    bool veto;
};

/// 1 + ceil(log2 n).
int protocol_a_max_rounds(int n);

/// Runs t = 0, 1, ... until a round is conclusive or the bound is reached.
ProtocolARun protocol_a_run(const VoteVector &votes);

enum class QavResource { kCluster4, kGhz3 };

std::string qav_resource_name(QavResource r);
QavResource parse_qav_resource(std::string_view name);

/// Two-qubit operator each voter applies to the two travelling qubits when
/// vetoing.
struct EncodingTable {
    QavResource resource;
    std::vector<Matrix> ops;
    std::vector<std::string> labels;

    static EncodingTable standard(QavResource resource);
};

Circuit qav_prep_circuit(QavResource resource);
/// Cluster: qubits (0, 2). GHZ: qubits (1, 2).
std::vector<int> qav_travel_qubits(QavResource resource);

struct ProtocolBResult {
    PureState initial;
    PureState final_state;
    /// Computational outcome after undoing the preparation circuit.
    std::string outcome;
    double outcome_probability;
    /// |<initial|final>|^2.
    double overlap;
    /// True when the overlap differs from 1, i.e. someone vetoed.
    bool conclusive;
};

ProtocolBResult protocol_b_run(const VoteVector &votes, QavResource resource, const EncodingTable &encoding);

/// State held by the agent before measuring, with the channel applied to the
/// travel qubit(s) on each of the n+1 hops agent -> V1 -> ... -> Vn -> agent.
MixedState qav_a_noisy_output(const VoteVector &votes, int t, const std::optional<KrausChannel> &channel);
MixedState qav_b_noisy_output(const VoteVector &votes, QavResource resource,
                              const std::optional<KrausChannel> &channel);

}  // namespace qcomm

#endif
