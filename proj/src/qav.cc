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

#include "qcomm/qav.h"

#include <cmath>

namespace qcomm {

namespace {

constexpr double kSure = 1.0 - 1e-10;

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Circuit reverse_epr() {
    Circuit c(2);
    c.gate("CNOT", {0, 1}).gate("H", {0}).measure({0, 1});
    return c;
}

}  // namespace

VoteVector::VoteVector(std::vector<bool> v) : vetoes(std::move(v)) {
    if (vetoes.empty()) {
        throw std::invalid_argument("need at least one voter");
    }
    if (static_cast<int>(vetoes.size()) + 1 > 64) {
        throw std::invalid_argument("too many voters");
    }
}

VoteVector VoteVector::parse(std::string_view pattern) {
    std::vector<bool> v;
    for (char c : pattern) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("vote pattern must contain only 0 and 1, got '" + std::string(pattern) + "'");
        }
        v.push_back(c == '1');
    }
    return VoteVector(std::move(v));
}

int VoteVector::veto_count() const {
    int k = 0;
    for (bool b : vetoes) {
        k += b ? 1 : 0;
    }
    return k;
}

std::string VoteVector::to_string() const {
    std::string s;
    for (bool b : vetoes) {
        s += b ? '1' : '0';
    }
    return s;
}

Matrix VetoRound::unitary() const { return standard_gate("SigmaZt", {static_cast<double>(t)}).matrix; }

// ------------------------------------------------------------- Protocol A

RoundResult protocol_a_round(const VoteVector &votes, int t) {
    if (t < 0) {
        throw std::invalid_argument("iteration index must be non-negative");
    }
    Circuit c = bell_prep_circuit(BellState::kPhiPlus);
    const Gate g{"SigmaZt", VetoRound{t}.unitary(), {static_cast<double>(t)}};
    for (bool veto : votes.vetoes) {
        if (veto) {
            c.gate(g, {1});
        }
    }
    c.append(reverse_epr());
    const PureRun run = run_circuit(c, PureState::zeros(2));
    RoundResult r{t, "mixed", "mixed", false, {}};
    for (const auto &b : run.branches) {
        r.probabilities[b.bits] = b.probability;
    }
    for (const auto &[bits, p] : r.probabilities) {
        if (p >= kSure && (bits == "00" || bits == "10")) {
            r.outcome = bits;
            r.state = bits == "00" ? "phi+" : "phi-";
            r.conclusive = bits == "10";
        }
    }
    return r;
}

int protocol_a_max_rounds(int n) {
    if (n < 1) {
        throw std::invalid_argument("need at least one voter");
    }
    int rounds = 1;
    while ((1 << (rounds - 1)) < n) {
        rounds++;
    }
    return rounds;
}

ProtocolARun protocol_a_run(const VoteVector &votes) {
    ProtocolARun run{{}, false};
    const int max_rounds = protocol_a_max_rounds(votes.n());
    for (int t = 0; t < max_rounds; t++) {
        run.rounds.push_back(protocol_a_round(votes, t));
        if (run.rounds.back().conclusive) {
            run.veto = true;
            break;
        }
    }
    return run;
}

// ------------------------------------------------------------- Protocol B

std::string qav_resource_name(QavResource r) { return r == QavResource::kCluster4 ? "cluster4" : "ghz3"; }

QavResource parse_qav_resource(std::string_view name) {
    if (name == "cluster4") {
        return QavResource::kCluster4;
    }
    if (name == "ghz3") {
        return QavResource::kGhz3;
    }
    throw std::invalid_argument("unknown resource '" + std::string(name) + "' (expected cluster4 or ghz3)");
}

EncodingTable EncodingTable::standard(QavResource resource) {
    const Matrix x = pauli('X');
    const Matrix z = pauli('Z');
    const Matrix i = pauli('I');
    const Matrix iy = standard_gate("iY").matrix;
    if (resource == QavResource::kCluster4) {
        return EncodingTable{resource,
                             {kron(x, iy), kron(x, z), kron(iy, z), kron(iy, iy)},
                             {"X(x)iY", "X(x)Z", "iY(x)Z", "iY(x)iY"}};
    }
    return EncodingTable{
        resource, {kron(x, i), kron(x, x), kron(iy, x), kron(iy, i)}, {"X(x)I", "X(x)X", "iY(x)X", "iY(x)I"}};
}

Circuit qav_prep_circuit(QavResource resource) {
    return resource == QavResource::kCluster4 ? cluster4_prep_circuit() : ghz_prep_circuit(3);
}

std::vector<int> qav_travel_qubits(QavResource resource) {
    return resource == QavResource::kCluster4 ? std::vector<int>{0, 2} : std::vector<int>{1, 2};
}

ProtocolBResult protocol_b_run(const VoteVector &votes, QavResource resource, const EncodingTable &encoding) {
    if (encoding.resource != resource) {
        throw std::invalid_argument("encoding table is for " + qav_resource_name(encoding.resource) + ", not " +
                                    qav_resource_name(resource));
    }
    if (votes.n() != static_cast<int>(encoding.ops.size())) {
        throw std::invalid_argument("encoding table covers " + std::to_string(encoding.ops.size()) +
                                    " voters, got " + std::to_string(votes.n()));
    }
    const Circuit prep = qav_prep_circuit(resource);
    const int n = prep.num_qubits();
    const std::vector<int> travel = qav_travel_qubits(resource);
    Circuit voting(n);
    for (int v = 0; v < votes.n(); v++) {
        if (votes.vetoes[static_cast<size_t>(v)]) {
            voting.gate(Gate{"U" + std::to_string(v + 1), encoding.ops[static_cast<size_t>(v)], {}}, travel);
        }
    }
    const PureState initial = run_circuit(prep, PureState::zeros(n)).branches.front().state;
    const PureState final_state = run_circuit(voting, initial).branches.front().state;

    Circuit readout = prep.inverse();
    std::vector<int> all(static_cast<size_t>(n));
    for (int q = 0; q < n; q++) {
        all[static_cast<size_t>(q)] = q;
    }
    readout.measure(all);
    const PureRun run = run_circuit(readout, final_state);
    ProtocolBResult out{initial, final_state, "", 0.0, 0.0, false};
    for (const auto &b : run.branches) {
        if (b.probability > out.outcome_probability) {
            out.outcome = b.bits;
            out.outcome_probability = b.probability;
        }
    }
    out.overlap = std::norm(initial.amplitudes().dot(final_state.amplitudes()));
    out.conclusive = out.overlap < kSure;
    return out;
}

// ------------------------------------------------------------------ noise

MixedState qav_a_noisy_output(const VoteVector &votes, int t, const std::optional<KrausChannel> &channel) {
    MixedState rho = prepare_bell(BellState::kPhiPlus).density();
    const Matrix u = VetoRound{t}.unitary();
    auto hop = [&]() {
        if (channel) {
            rho = apply_channel(rho, *channel, 1);
        }
    };
    hop();
    for (bool veto : votes.vetoes) {
        if (veto) {
            rho = MixedState::trusted(2, detail::conjugate(rho.matrix(), 2, u, {1}));
        }
        hop();
    }
    return rho;
}

MixedState qav_b_noisy_output(const VoteVector &votes, QavResource resource,
                              const std::optional<KrausChannel> &channel) {
    const EncodingTable enc = EncodingTable::standard(resource);
    if (votes.n() != static_cast<int>(enc.ops.size())) {
        throw std::invalid_argument("protocol B supports exactly four voters");
    }
    const Circuit prep = qav_prep_circuit(resource);
    const int n = prep.num_qubits();
    const std::vector<int> travel = qav_travel_qubits(resource);
    MixedState rho = run_circuit(prep, PureState::zeros(n)).branches.front().state.density();
    auto hop = [&]() {
        if (channel) {
            rho = apply_channel(rho, *channel, travel);
        }
    };
    hop();
    for (int v = 0; v < votes.n(); v++) {
        if (votes.vetoes[static_cast<size_t>(v)]) {
            rho = MixedState::trusted(n, detail::conjugate(rho.matrix(), n, enc.ops[static_cast<size_t>(v)], travel));
        }
        hop();
    }
    return rho;
}

}  // namespace qcomm
