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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

namespace qcomm {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Q with (I (x) Q) phi+ = resource, up to global phase.
Matrix phi_plus_to(BellState b) {
    switch (b) {
        case BellState::kPhiPlus:
            return pauli('I');
        case BellState::kPhiMinus:
            return pauli('Z');
        case BellState::kPsiPlus:
            return pauli('X');
        case BellState::kPsiMinus:
            return pauli('X') * pauli('Z');
    }
    throw std::invalid_argument("bad Bell state");
}

// P with (I (x) P) psi- = resource, up to global phase.
Matrix singlet_to(BellState b) {
    switch (b) {
        case BellState::kPhiPlus:
            return pauli('Z') * pauli('X');
        case BellState::kPhiMinus:
            return pauli('X');
        case BellState::kPsiPlus:
            return pauli('Z');
        case BellState::kPsiMinus:
            return pauli('I');
    }
    throw std::invalid_argument("bad Bell state");
}

Gate named(const std::string &label, Matrix m) { return Gate{label, std::move(m), {}}; }

// Rows are the bras of the two basis vectors.
Gate basis_change(const std::string &label, const Vector &v0, const Vector &v1) {
    Matrix m(2, 2);
    m.row(0) = v0.adjoint();
    m.row(1) = v1.adjoint();
    return named(label, m);
}

ProtocolResult collect(const PureRun &run, const std::vector<std::vector<int>> &receivers,
                       const std::vector<PureState> &targets) {
    ProtocolResult out;
    for (const auto &br : run.branches) {
        ProtocolBranch pb{br.bits, br.probability, {}};
        for (size_t r = 0; r < receivers.size(); r++) {
            pb.fidelities.push_back(fidelity(targets[r], partial_trace(br.state, receivers[r])));
        }
        out.branches.push_back(std::move(pb));
    }
    return out;
}

// Exact channel unravelling: the noisy input is a weighted sum of pure
// states, one per choice of Kraus operator at each site, so the circuit only
// ever runs on statevectors. Returns the branch-averaged reduced state.
MixedState noisy_average(const PureState &input, const Circuit &circuit, const std::vector<int> &sites,
                         const std::optional<KrausChannel> &channel, const std::vector<int> &keep) {
    const int n = input.num_qubits();
    const size_t ops = channel ? channel->operators.size() : 1;
    const Eigen::Index dk = Eigen::Index{1} << keep.size();
    Matrix acc = Matrix::Zero(dk, dk);
    std::vector<size_t> choice(sites.size(), 0);
    while (true) {
        Vector amps = input.amplitudes();
        if (channel) {
            for (size_t s = 0; s < sites.size(); s++) {
                detail::apply_matrix(amps, n, channel->operators[choice[s]], {sites[s]});
            }
        }
        const double weight = amps.squaredNorm();
        if (weight > 1e-15) {
            for (const auto &br : run_circuit(circuit, PureState(n, amps)).branches) {
                acc += weight * br.probability * partial_trace(br.state, keep).matrix();
            }
        }
        size_t s = 0;
        while (s < choice.size() && ++choice[s] == ops) {
            choice[s++] = 0;
        }
        if (s == choice.size()) {
            break;
        }
    }
    return MixedState::trusted(static_cast<int>(keep.size()), acc / acc.trace().real());
}

}  // namespace

// ------------------------------------------------------------ value types

KnownQubit::KnownQubit(double theta_, double phi_) : theta(theta_), phi(phi_) {
    if (!(theta >= 0.0 && theta <= kPi)) {
        throw std::invalid_argument("theta must lie in [0, pi]");
    }
    if (!(phi >= 0.0 && phi < 2 * kPi)) {
        throw std::invalid_argument("phi must lie in [0, 2 pi)");
    }
}

PureState KnownQubit::state() const {
    return PureState(1, Vector{{std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)}});
}

KnownQubit KnownQubit::random(Rng &rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double theta = std::acos(1.0 - 2.0 * u(rng));
    const double phi = std::fmod(2 * kPi * u(rng), 2 * kPi);
    return KnownQubit(theta, phi);
}

GhzLikePayload::GhzLikePayload(int m_, Complex alpha_, Complex beta_) : m(m_), alpha(alpha_), beta(beta_) {
    if (m < 1) {
        throw std::invalid_argument("payload needs m >= 1");
    }
    detail::check_qubit_count(m);
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0) > 1e-10) {
        throw std::invalid_argument("payload needs |alpha|^2 + |beta|^2 = 1");
    }
}

PureState GhzLikePayload::state() const {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(uint64_t{1} << m));
    v(0) = alpha;
    v(v.size() - 1) += beta;
    return PureState(m, std::move(v));
}

GhzLikePayload GhzLikePayload::random(int m, Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Complex a(g(rng), g(rng));
    Complex b(g(rng), g(rng));
    const double n = std::sqrt(std::norm(a) + std::norm(b));
    return GhzLikePayload(m, a / n, b / n);
}

double ProtocolBranch::min_fidelity() const {
    return fidelities.empty() ? 1.0 : *std::min_element(fidelities.begin(), fidelities.end());
}

double ProtocolResult::min_fidelity() const {
    double f = 1.0;
    for (const auto &b : branches) {
        f = std::min(f, b.min_fidelity());
    }
    return f;
}

double ProtocolResult::total_probability() const {
    double s = 0;
    for (const auto &b : branches) {
        s += b.probability;
    }
    return s;
}

// ----------------------------------------------------------- teleportation

Circuit teleport_circuit(BellState resource) {
    Circuit c(3);
    c.gate(named("Q^dag", phi_plus_to(resource).adjoint()), {2});
    c.gate("CNOT", {0, 1}).gate("H", {0}).measure({0, 1});
    c.controlled(standard_gate("X"), {2}, {1});
    c.controlled(standard_gate("Z"), {2}, {0});
    return c;
}

ProtocolResult standard_teleport(const PureState &payload, BellState resource) {
    if (payload.num_qubits() != 1) {
        throw std::invalid_argument("teleportation payload must be one qubit");
    }
    const PureState input = tensor_product(payload, prepare_bell(resource));
    ProtocolResult out = collect(run_circuit(teleport_circuit(resource), input), {{2}}, {payload});
    out.bell_pairs = 1;
    out.classical_bits = 2;
    return out;
}

Matrix rsp_unitary(double phi) {
    return pauli('X') * pauli('Z') * standard_gate("P", {-2 * phi}).matrix;
}

ProtocolResult rsp(const KnownQubit &payload, BellState resource) {
    const Vector q = payload.state().amplitudes();
    const Matrix u = rsp_unitary(payload.phi);
    Circuit c(2);
    c.gate(named("P^dag", singlet_to(resource).adjoint()), {1});
    c.gate(basis_change("RSP-basis", q, u * q), {0}).measure({0});
    c.controlled(named("U_RSP^-1", u.adjoint()), {1}, {0}, 0);
    ProtocolResult out = collect(run_circuit(c, prepare_bell(resource)), {{1}}, {payload.state()});
    out.bell_pairs = 1;
    out.classical_bits = 1;
    return out;
}

// --------------------------------------------------------------------- MQT

Circuit mqt_cascade(int m) {
    Circuit c(m);
    for (int q = 1; q < m; q++) {
        c.gate("CNOT", {0, q});
    }
    return c;
}

PureState mqt_dissolve(const GhzLikePayload &payload) {
    return run_circuit(mqt_cascade(payload.m), payload.state()).branches.front().state;
}

PureState mqt_reconstruct(const PureState &core, int m) {
    if (core.num_qubits() != 1) {
        throw std::invalid_argument("core must be one qubit");
    }
    const PureState padded = m > 1 ? tensor_product(core, PureState::zeros(m - 1)) : core;
    return run_circuit(mqt_cascade(m), padded).branches.front().state;
}

MqtLayout mqt_layout(int m) {
    if (m < 1) {
        throw std::invalid_argument("MQT needs m >= 1");
    }
    MqtLayout l;
    l.m = m;
    l.num_qubits = 4 * m + 4;
    detail::check_qubit_count(l.num_qubits);
    for (int q = 0; q < m; q++) {
        l.payload_a.push_back(q);
    }
    for (int q = m; q <= 2 * m; q++) {
        l.payload_b.push_back(q);
    }
    l.pair1_alice = 2 * m + 1;
    l.pair1_receiver = 2 * m + 2;
    l.pair2_alice = 2 * m + 3;
    l.pair2_receiver = 2 * m + 4;
    l.receiver1.push_back(l.pair1_receiver);
    int next = 2 * m + 5;
    for (int i = 1; i < m; i++) {
        l.receiver1.push_back(next++);
    }
    l.receiver2.push_back(l.pair2_receiver);
    for (int i = 0; i < m; i++) {
        l.receiver2.push_back(next++);
    }
    return l;
}

PureState mqt_input(const GhzLikePayload &a, const GhzLikePayload &b) {
    if (b.m != a.m + 1) {
        throw std::invalid_argument("second payload must have one more qubit than the first");
    }
    const MqtLayout l = mqt_layout(a.m);
    PureState s = tensor_product(a.state(), b.state());
    s = tensor_product(s, prepare_bell(BellState::kPhiPlus));
    s = tensor_product(s, prepare_bell(BellState::kPhiPlus));
    return tensor_product(s, PureState::zeros(2 * a.m - 1));
}

Circuit mqt_circuit(int m, bool measure_receivers) {
    const MqtLayout l = mqt_layout(m);
    Circuit c(l.num_qubits);
    const int a0 = l.payload_a.front();
    const int b0 = l.payload_b.front();
    for (size_t i = 1; i < l.payload_a.size(); i++) {
        c.gate("CNOT", {a0, l.payload_a[i]});
    }
    for (size_t i = 1; i < l.payload_b.size(); i++) {
        c.gate("CNOT", {b0, l.payload_b[i]});
    }
    c.gate("CNOT", {a0, l.pair1_alice}).gate("H", {a0});
    c.gate("CNOT", {b0, l.pair2_alice}).gate("H", {b0});
    c.measure({a0, l.pair1_alice, b0, l.pair2_alice});
    c.controlled(standard_gate("X"), {l.pair1_receiver}, {1});
    c.controlled(standard_gate("Z"), {l.pair1_receiver}, {0});
    c.controlled(standard_gate("X"), {l.pair2_receiver}, {3});
    c.controlled(standard_gate("Z"), {l.pair2_receiver}, {2});
    for (size_t i = 1; i < l.receiver1.size(); i++) {
        c.gate("CNOT", {l.pair1_receiver, l.receiver1[i]});
    }
    for (size_t i = 1; i < l.receiver2.size(); i++) {
        c.gate("CNOT", {l.pair2_receiver, l.receiver2[i]});
    }
    if (measure_receivers) {
        c.measure({l.pair1_receiver, l.pair2_receiver});
    }
    return c;
}

ProtocolResult mqt_run(const GhzLikePayload &a, const GhzLikePayload &b) {
    const MqtLayout l = mqt_layout(a.m);
    ProtocolResult out =
        collect(run_circuit(mqt_circuit(a.m), mqt_input(a, b)), {l.receiver1, l.receiver2}, {a.state(), b.state()});
    out.bell_pairs = 2;
    out.classical_bits = 4;
    return out;
}

MqtSample mqt_sample(const GhzLikePayload &a, const GhzLikePayload &b, uint64_t shots, uint64_t seed) {
    const PureRun run = run_circuit(mqt_circuit(a.m, true), mqt_input(a, b), RunMode::kSampled, shots, seed);
    MqtSample out;
    out.receiver_cores.shots = run.histogram.shots;
    for (const auto &[bits, count] : run.histogram.counts) {
        out.receiver_cores.counts[bits.substr(4)] += count;
    }
    return out;
}

MixedState mqt_noisy_output(const GhzLikePayload &a, const GhzLikePayload &b,
                            const std::optional<KrausChannel> &channel) {
    const MqtLayout l = mqt_layout(a.m);
    std::vector<int> keep = l.receiver1;
    keep.insert(keep.end(), l.receiver2.begin(), l.receiver2.end());
    return noisy_average(mqt_input(a, b), mqt_circuit(a.m), {l.pair1_receiver, l.pair2_receiver}, channel, keep);
}

// --------------------------------------------------------------- broadcast

std::string broadcast_variant_name(BroadcastVariant v) {
    switch (v) {
        case BroadcastVariant::kPlain:
            return "plain";
        case BroadcastVariant::kJoint:
            return "joint";
        case BroadcastVariant::kControlled:
            return "controlled";
        case BroadcastVariant::kMultidirectional:
            return "multidirectional";
    }
    throw std::invalid_argument("bad broadcast variant");
}

BroadcastVariant parse_broadcast_variant(std::string_view name) {
    for (auto v : {BroadcastVariant::kPlain, BroadcastVariant::kJoint, BroadcastVariant::kControlled,
                   BroadcastVariant::kMultidirectional}) {
        if (broadcast_variant_name(v) == name) {
            return v;
        }
    }
    throw std::invalid_argument("unknown broadcast variant '" + std::string(name) + "'");
}

int BroadcastChannelSpec::resource_units() const {
    return variant == BroadcastVariant::kMultidirectional ? parties * (parties - 1) : parties;
}

void BroadcastChannelSpec::validate() const {
    const int min_parties = variant == BroadcastVariant::kMultidirectional ? 2 : 1;
    if (parties < min_parties) {
        throw std::invalid_argument("broadcast needs at least " + std::to_string(min_parties) + " parties");
    }
    const int units = resource_units();
    if (variant == BroadcastVariant::kPlain || variant == BroadcastVariant::kControlled) {
        if (2 * units > kMaxQubits) {
            throw std::invalid_argument("too many receivers for a joint statevector");
        }
    }
    if (!pair_resources.empty() && static_cast<int>(pair_resources.size()) != units) {
        throw std::invalid_argument("pair_resources needs one entry per pair (" + std::to_string(units) + ")");
    }
    if (require_distinct) {
        if (units > 4) {
            throw std::invalid_argument("distinct pairs allow at most four pairs");
        }
        std::set<BellState> seen(pair_resources.begin(), pair_resources.end());
        if (seen.size() != pair_resources.size()) {
            throw std::invalid_argument("pair resources must be distinct");
        }
    }
    if (variant == BroadcastVariant::kControlled) {
        if (static_cast<int>(controller_choices.size()) != units) {
            throw std::invalid_argument("controlled broadcast needs one controller choice per pair");
        }
        for (BellState b : controller_choices) {
            if (b != BellState::kPhiPlus && b != BellState::kPhiMinus) {
                throw std::invalid_argument("controller chooses between phi+ and phi-");
            }
        }
    }
    if (variant == BroadcastVariant::kMultidirectional && !party_payloads.empty() &&
        static_cast<int>(party_payloads.size()) != parties) {
        throw std::invalid_argument("party_payloads needs one entry per party");
    }
}

double BroadcastResult::min_fidelity() const {
    double f = 1.0;
    for (const auto &u : units) {
        f = std::min(f, u.result.min_fidelity());
    }
    return f;
}

Circuit broadcast_plain_circuit(const KnownQubit &payload, const std::vector<BellState> &resources) {
    const int m = static_cast<int>(resources.size());
    const Vector q = payload.state().amplitudes();
    const Matrix u = rsp_unitary(payload.phi);
    const Vector q_perp = u * q;
    const Gate measure_basis = basis_change("RSP-basis*", q.conjugate(), q_perp.conjugate());
    const Gate undo = named("U_RSP^-1", u.adjoint());
    Circuit c(2 * m);
    for (int i = 0; i < m; i++) {
        c.gate(named("Q^dag", phi_plus_to(resources[static_cast<size_t>(i)]).adjoint()), {2 * i + 1});
    }
    for (int i = 0; i < m; i++) {
        c.gate(measure_basis, {2 * i});
    }
    std::vector<int> alice(static_cast<size_t>(m));
    for (int i = 0; i < m; i++) {
        alice[static_cast<size_t>(i)] = 2 * i;
    }
    c.measure(alice);
    for (int i = 0; i < m; i++) {
        c.controlled(undo, {2 * i + 1}, {i});
    }
    return c;
}

Circuit broadcast_plus_circuit(int m) {
    if (m < 1) {
        throw std::invalid_argument("broadcast needs at least one receiver");
    }
    Circuit c(2 * m);
    std::vector<int> alice;
    std::vector<int> receivers;
    for (int i = 0; i < m; i++) {
        c.gate("H", {2 * i});
        alice.push_back(2 * i);
        receivers.push_back(2 * i + 1);
    }
    c.measure(alice);
    for (int i = 0; i < m; i++) {
        c.controlled(standard_gate("X"), {2 * i + 1}, {i});
        c.controlled(standard_gate("Z"), {2 * i + 1}, {i});
    }
    c.measure(receivers);
    return c;
}

namespace {

PureState pairs_state(const std::vector<BellState> &resources) {
    PureState s;
    for (BellState b : resources) {
        s = tensor_product(s, prepare_bell(b));
    }
    return s;
}

ProtocolResult run_plain(const KnownQubit &payload, const std::vector<BellState> &resources) {
    const int m = static_cast<int>(resources.size());
    std::vector<std::vector<int>> receivers;
    std::vector<PureState> targets;
    for (int i = 0; i < m; i++) {
        receivers.push_back({2 * i + 1});
        targets.push_back(payload.state());
    }
    return collect(run_circuit(broadcast_plain_circuit(payload, resources), pairs_state(resources)), receivers,
                   targets);
}

// Sender 1 knows theta, sender 2 knows phi; qubits (s1, s2, receiver).
ProtocolResult run_joint_triple(const KnownQubit &payload) {
    const double c = std::cos(payload.theta / 2);
    const double s = std::sin(payload.theta / 2);
    const double r = 1.0 / std::sqrt(2.0);
    const Complex e = std::polar(1.0, payload.phi);
    Circuit circ(3);
    circ.gate(basis_change("S1-basis", Vector{{c, s}}, Vector{{s, -c}}), {0}).measure({0});
    // a1 = 0: {(|0> +- e^{-i phi}|1>)/sqrt2}; a1 = 1: {(|0> +- e^{i phi}|1>)/sqrt2}.
    circ.controlled(basis_change("S2-basis0", Vector{{r, r * std::conj(e)}}, Vector{{r, -r * std::conj(e)}}), {1},
                    {0}, 0);
    circ.controlled(basis_change("S2-basis1", Vector{{r, r * e}}, Vector{{r, -r * e}}), {1}, {0}, 1);
    circ.measure({1});
    circ.controlled(standard_gate("X"), {2}, {0});
    circ.controlled(standard_gate("Z"), {2}, {0, 1});
    return collect(run_circuit(circ, prepare_ghz(3)), {{2}}, {payload.state()});
}

std::vector<BellState> resolved_resources(const BroadcastChannelSpec &spec) {
    if (!spec.pair_resources.empty()) {
        return spec.pair_resources;
    }
    const int units = spec.resource_units();
    if (spec.require_distinct) {
        const std::vector<BellState> order{BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus,
                                           BellState::kPsiMinus};
        return std::vector<BellState>(order.begin(), order.begin() + units);
    }
    return std::vector<BellState>(static_cast<size_t>(units), BellState::kPhiPlus);
}

}  // namespace

BroadcastResult broadcast_known(const KnownQubit &payload, const BroadcastChannelSpec &spec) {
    spec.validate();
    BroadcastResult out;
    const int m = spec.parties;
    switch (spec.variant) {
        case BroadcastVariant::kPlain: {
            out.units.push_back({"all", run_plain(payload, resolved_resources(spec))});
            out.bell_pairs = m;
            out.classical_bits = m;
            break;
        }
        case BroadcastVariant::kControlled: {
            out.bell_pairs = m;
            out.classical_bits = 2 * m;
            if (!spec.disclosed) {
                out.status = BroadcastStatus::kControlNotReleased;
                break;
            }
            out.units.push_back({"all", run_plain(payload, spec.controller_choices)});
            break;
        }
        case BroadcastVariant::kJoint: {
            const ProtocolResult triple = run_joint_triple(payload);
            for (int i = 0; i < m; i++) {
                out.units.push_back({"receiver" + std::to_string(i + 1), triple});
            }
            out.ghz_triples = m;
            out.classical_bits = 2 * m;
            break;
        }
        case BroadcastVariant::kMultidirectional: {
            const auto resources = resolved_resources(spec);
            size_t pair = 0;
            for (int from = 0; from < m; from++) {
                const KnownQubit &q =
                    spec.party_payloads.empty() ? payload : spec.party_payloads[static_cast<size_t>(from)];
                for (int to = 0; to < m; to++) {
                    if (to == from) {
                        continue;
                    }
                    out.units.push_back({std::to_string(from + 1) + "->" + std::to_string(to + 1),
                                         run_plain(q, {resources[pair++]})});
                }
            }
            out.bell_pairs = m * (m - 1);
            out.classical_bits = m * (m - 1);
            break;
        }
    }
    for (auto &u : out.units) {
        if (spec.variant == BroadcastVariant::kJoint) {
            u.result.bell_pairs = 0;
            u.result.ghz_triples = 1;
            u.result.classical_bits = 2;
        } else if (spec.variant == BroadcastVariant::kMultidirectional) {
            u.result.bell_pairs = 1;
            u.result.classical_bits = 1;
        } else {
            u.result.bell_pairs = m;
            u.result.classical_bits = m;
        }
    }
    return out;
}

MixedState broadcast_noisy_output(const KnownQubit &payload, int receivers,
                                  const std::optional<KrausChannel> &channel) {
    const std::vector<BellState> resources(static_cast<size_t>(receivers), BellState::kPhiPlus);
    std::vector<int> keep;
    for (int i = 0; i < receivers; i++) {
        keep.push_back(2 * i + 1);
    }
    return noisy_average(pairs_state(resources), broadcast_plain_circuit(payload, resources), keep, channel, keep);
}

}  // namespace qcomm
