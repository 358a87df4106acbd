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

#include "commands.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "qcomm/noise.h"
#include "qcomm/qav.h"
#include "qcomm/qkdmodel.h"
#include "qcomm/qstate.h"
#include "qcomm/rio.h"
#include "qcomm/teleport.h"

namespace qcomm::cli {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string num(double v) { return format_number(v); }
std::string num(uint64_t v) { return std::to_string(v); }
std::string num(int v) { return std::to_string(v); }
std::string flag(bool b) { return b ? "true" : "false"; }

// Payload randomness and shot sampling draw from separate streams so that
// switching --mode does not change the payload.
Rng payload_rng(const Global &g) { return Rng(g.seed); }
Rng sampling_rng(const Global &g) { return Rng(g.seed ^ 0x9e3779b97f4a7c15ULL); }

ShotHistogram sample_labels(const std::vector<std::string> &labels, const std::vector<double> &probs,
                            uint64_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be positive");
    }
    ShotHistogram h;
    h.shots = shots;
    for (const auto &l : labels) {
        h.counts[l] = 0;
    }
    for (uint64_t s = 0; s < shots; s++) {
        h.counts[labels[sample_inverse_cdf(probs, rng)]]++;
    }
    return h;
}

double frequency(const ShotHistogram &h, const std::string &label) {
    const auto it = h.counts.find(label);
    return it == h.counts.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(h.shots);
}

PureState operand_state(const OperandArgs &a, Rng &rng) {
    if (a.theta.has_value() != a.phi.has_value()) {
        throw std::invalid_argument("--psi-theta and --psi-phi must be given together");
    }
    if (a.theta) {
        return KnownQubit(*a.theta, *a.phi).state();
    }
    return KnownQubit::random(rng).state();
}

Complex phase_or_random(const std::optional<double> &phase, Rng &rng) {
    if (phase) {
        return std::polar(1.0, *phase);
    }
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    return std::polar(1.0, u(rng));
}

std::string join_numbers(const std::vector<double> &v) {
    std::string out;
    for (size_t i = 0; i < v.size(); i++) {
        out += (i ? ";" : "") + num(v[i]);
    }
    return out;
}

CsvTable rio_table(const std::string &protocol, const std::string &channel, const RioResult &r) {
    CsvTable t({"protocol", "channel", "status", "branch", "probability", "fidelity", "error_probs", "count"});
    if (r.status == RioStatus::kHalted) {
        t.add_row({protocol, channel, "halted", "", "0", "", "", "0"});
        return t;
    }
    for (const auto &b : r.branches) {
        t.add_row({protocol, channel, "completed", b.label(), num(b.probability), num(b.fidelity),
                   join_numbers(b.error_probs), num(b.count)});
    }
    return t;
}

std::vector<double> linspace(double lo, double hi, int points) {
    if (points < 1) {
        throw std::invalid_argument("grid needs at least one point");
    }
    std::vector<double> v;
    for (int i = 0; i < points; i++) {
        v.push_back(points == 1 ? hi : lo + (hi - lo) * i / (points - 1));
    }
    return v;
}

CsvTable surface_table(const SurfaceArgs &s) {
    if (!(s.z_max > 0)) {
        throw std::invalid_argument("--z-max must be positive");
    }
    // Open at zero: z > 0 and D in (0, 1].
    const auto z = linspace(s.z_max / s.points, s.z_max, s.points);
    const auto d = linspace(1.0 / s.points, 1.0, s.points);
    const auto th = linspace(kPi / s.thetas, kPi, s.thetas);
    CsvTable t({"z", "D", "theta", "P1Suc", "P2Suc"});
    for (const auto &p : success_surface(z, d, th)) {
        t.add_row({num(p.z), num(p.D), num(p.theta), num(p.p.riho), num(p.p.ripuo)});
    }
    return t;
}

std::vector<std::string> expand_patterns(const std::vector<std::string> &given, int n) {
    if (!given.empty()) {
        return given;
    }
    std::vector<std::string> out;
    for (uint64_t k = 0; k < (uint64_t{1} << n); k++) {
        out.push_back(bits_to_string(k, n));
    }
    return out;
}

}  // namespace

// -------------------------------------------------------------------- mqt

CsvTable run_mqt(const MqtArgs &a, const Global &g) {
    Rng rng = payload_rng(g);
    const double r = 1.0 / std::sqrt(2.0);
    const GhzLikePayload pa = a.plus ? GhzLikePayload(a.m, r, r) : GhzLikePayload::random(a.m, rng);
    const GhzLikePayload pb = a.plus ? GhzLikePayload(a.m + 1, r, r) : GhzLikePayload::random(a.m + 1, rng);
    if (g.mode == RunMode::kSampled) {
        const MqtSample s = mqt_sample(pa, pb, g.shots, g.seed);
        CsvTable t({"m", "outcome", "count", "frequency"});
        for (const auto &[bits, count] : s.receiver_cores.counts) {
            t.add_row({num(a.m), bits, num(count), num(frequency(s.receiver_cores, bits))});
        }
        return t;
    }
    const ProtocolResult res = mqt_run(pa, pb);
    CsvTable t({"m", "branch", "probability", "fidelity_receiver1", "fidelity_receiver2"});
    for (const auto &b : res.branches) {
        t.add_row({num(a.m), b.bits, num(b.probability), num(b.fidelities.at(0)), num(b.fidelities.at(1))});
    }
    return t;
}

// -------------------------------------------------------------- broadcast

CsvTable run_broadcast(const BroadcastArgs &a, const Global &g) {
    Rng rng = payload_rng(g);
    if (a.theta.has_value() != a.phi.has_value()) {
        throw std::invalid_argument("--theta and --phi must be given together");
    }
    const KnownQubit payload = a.theta ? KnownQubit(*a.theta, *a.phi) : KnownQubit::random(rng);
    BroadcastChannelSpec spec;
    spec.variant = parse_broadcast_variant(a.variant);
    spec.parties = a.parties;
    spec.require_distinct = a.distinct;
    for (const auto &s : a.resources) {
        spec.pair_resources.push_back(parse_bell(s));
    }
    if (spec.variant == BroadcastVariant::kControlled) {
        if (a.controller.empty()) {
            std::bernoulli_distribution coin(0.5);
            for (int i = 0; i < spec.resource_units(); i++) {
                spec.controller_choices.push_back(coin(rng) ? BellState::kPhiMinus : BellState::kPhiPlus);
            }
        } else {
            for (const auto &s : a.controller) {
                spec.controller_choices.push_back(parse_bell(s));
            }
        }
        spec.disclosed = !a.withhold;
    } else if (a.withhold || !a.controller.empty()) {
        throw std::invalid_argument("--controller and --withhold apply only to the controlled variant");
    }
    const BroadcastResult res = broadcast_known(payload, spec);
    const std::string variant = broadcast_variant_name(spec.variant);
    if (res.status == BroadcastStatus::kControlNotReleased) {
        CsvTable t({"variant", "status", "unit", "branch", "probability", "receiver", "fidelity"});
        t.add_row({variant, "control_not_released", "", "", "0", "", ""});
        return t;
    }
    Rng srng = sampling_rng(g);
    if (g.mode == RunMode::kSampled) {
        CsvTable t({"variant", "status", "unit", "branch", "count", "frequency"});
        for (const auto &u : res.units) {
            std::vector<std::string> labels;
            std::vector<double> probs;
            for (const auto &b : u.result.branches) {
                labels.push_back(b.bits);
                probs.push_back(b.probability);
            }
            const ShotHistogram h = sample_labels(labels, probs, g.shots, srng);
            for (const auto &[bits, count] : h.counts) {
                t.add_row({variant, "completed", u.label, bits, num(count), num(frequency(h, bits))});
            }
        }
        return t;
    }
    CsvTable t({"variant", "status", "unit", "branch", "probability", "receiver", "fidelity"});
    for (const auto &u : res.units) {
        for (const auto &b : u.result.branches) {
            for (size_t i = 0; i < b.fidelities.size(); i++) {
                t.add_row({variant, "completed", u.label, b.bits, num(b.probability), num(static_cast<int>(i) + 1),
                           num(b.fidelities[i])});
            }
        }
    }
    return t;
}

// -------------------------------------------------------------------- rio

CsvTable run_riho_cmd(const RihoArgs &a, const Global &g) {
    if (a.surface.enabled) {
        return surface_table(a.surface);
    }
    Rng rng = payload_rng(g);
    const PureState payload = operand_state(a.operand, rng);
    const Complex u = phase_or_random(a.u_phase, rng);
    const Complex v = phase_or_random(a.v_phase, rng);
    const RioChannel channel = parse_rio_channel(a.channel);
    const HomodyneModel model(a.probe.z, a.probe.theta, a.probe.D);
    const RioResult r =
        run_riho(payload, channel, SuOperator::lump(u, v), model, RioOptions{g.mode, g.shots, g.seed});
    return rio_table("riho", rio_channel_name(channel), r);
}

CsvTable run_ripuo_cmd(const RipuoArgs &a, const Global &g) {
    if (a.surface.enabled) {
        return surface_table(a.surface);
    }
    Rng rng = payload_rng(g);
    const PureState payload = operand_state(a.operand, rng);
    const Complex e0 = phase_or_random(a.phase0, rng);
    const Complex e1 = phase_or_random(a.phase1, rng);
    Matrix op;
    if (a.form == "diagonal") {
        op = Matrix{{e0, 0}, {0, e1}};
    } else if (a.form == "antidiagonal") {
        op = Matrix{{0, e0}, {e1, 0}};
    } else {
        throw std::invalid_argument("--form must be diagonal or antidiagonal");
    }
    const RioChannel channel = parse_rio_channel(a.channel);
    const HomodyneModel model(a.probe.z, a.probe.theta, a.probe.D);
    const RioResult r = run_ripuo(payload, channel, op, model, RioOptions{g.mode, g.shots, g.seed});
    return rio_table("ripuo", rio_channel_name(channel), r);
}

CsvTable run_cjrio_cmd(const CjrioArgs &a, const Global &g) {
    Rng rng = payload_rng(g);
    const PureState payload = operand_state(a.operand, rng);
    if (a.senders < 1) {
        throw std::invalid_argument("--senders must be at least 1");
    }
    std::vector<SuOperator> ops;
    for (int i = 0; i < a.senders; i++) {
        ops.push_back(SuOperator::random_unimodular(rng));
    }
    const RioResult r = run_cjrio(payload, ops, a.controllers, !a.withhold_consent,
                                  CjrioOptions{g.mode, g.shots, g.seed, a.branch_limit});
    return rio_table("cjrio", "M" + num(a.senders) + "N" + num(a.controllers), r);
}

// -------------------------------------------------------------------- qav

CsvTable run_qav_a(const QavAArgs &a, const Global &g) {
    const std::vector<std::string> patterns =
        a.patterns.empty() ? std::vector<std::string>{"0000", "1000", "1100", "1110", "1111"} : a.patterns;
    Rng srng = sampling_rng(g);
    CsvTable t({"pattern", "iteration", "t", "state", "conclusive", "outcome", "probability", "verdict"});
    for (const auto &p : patterns) {
        const VoteVector votes = VoteVector::parse(p);
        const ProtocolARun run = protocol_a_run(votes);
        for (const auto &r : run.rounds) {
            std::string outcome = r.outcome;
            double prob = 0;
            if (outcome == "mixed") {
                for (const auto &[bits, q] : r.probabilities) {
                    prob = std::max(prob, q);
                }
            } else {
                prob = r.probabilities.at(outcome);
            }
            if (g.mode == RunMode::kSampled) {
                std::vector<std::string> labels;
                std::vector<double> probs;
                for (const auto &[bits, q] : r.probabilities) {
                    labels.push_back(bits);
                    probs.push_back(q);
                }
                const ShotHistogram h = sample_labels(labels, probs, g.shots, srng);
                prob = outcome == "mixed" ? 0.0 : frequency(h, outcome);
            }
            t.add_row({p, num(r.t + 1), num(r.t), r.state, flag(r.conclusive), outcome, num(prob), run.veto ? "veto" : "no_veto"});
        }
    }
    return t;
}

CsvTable run_qav_b(const QavBArgs &a, const Global &g) {
    const QavResource resource = parse_qav_resource(a.resource);
    const EncodingTable enc = EncodingTable::standard(resource);
    Rng srng = sampling_rng(g);
    CsvTable t({"resource", "pattern", "outcome", "conclusive", "probability", "overlap"});
    for (const auto &p : expand_patterns(a.patterns, 4)) {
        const ProtocolBResult r = protocol_b_run(VoteVector::parse(p), resource, enc);
        double prob = r.outcome_probability;
        if (g.mode == RunMode::kSampled) {
            // Deterministic outcome: every shot lands on it up to rounding.
            const ShotHistogram h = sample_labels({r.outcome, "other"}, {prob, std::max(0.0, 1.0 - prob)}, g.shots,
                                                  srng);
            prob = frequency(h, r.outcome);
        }
        t.add_row({qav_resource_name(resource), p, r.outcome, flag(r.conclusive), num(prob), num(r.overlap)});
    }
    return t;
}

// -------------------------------------------------------------------- qkd

CsvTable run_qkd(const QkdArgs &a, const Global &) {
    QkdParams p = QkdParams::defaults(parse_qkd_protocol(a.protocol));
    auto set = [](double &field, const std::optional<double> &v) {
        if (v) {
            field = *v;
        }
    };
    set(p.DR, a.dr);
    set(p.CR, a.cr);
    set(p.d, a.d);
    set(p.mu, a.mu);
    set(p.l_f, a.lf);
    set(p.f, a.f);
    set(p.eta, a.eta);
    set(p.l_m, a.lm);
    if (a.td_us) {
        p.t_d = *a.td_us * 1e-6;
    }
    p.dead_time_correction = a.dead_time_correction;
    p.validate();
    std::vector<SweepPoint> points;
    if (a.sweep.empty()) {
        points.push_back({p, key_rate(p)});
    } else {
        SweepLimits limits;
        limits.d_min = a.d_min;
        limits.d_max = a.d_max;
        const SweepAxis axis = parse_sweep_axis(a.sweep);
        points = sweep(p, axis, default_grid(axis, a.points, limits), limits);
    }
    CsvTable t({"protocol", "d_km", "DR", "CR", "t_d_us", "tau", "clicks", "key_rate", "corrected"});
    for (const auto &sp : points) {
        t.add_row({qkd_protocol_name(sp.params.protocol), num(sp.params.d), num(sp.params.DR), num(sp.params.CR),
                   num(sp.params.t_d * 1e6), num(sp.result.tau), num(sp.result.clicks), num(sp.result.key_rate),
                   flag(sp.result.dead_time_corrected)});
    }
    return t;
}

// ------------------------------------------------------------ noise-sweep

CsvTable run_noise_sweep(const NoiseArgs &a, const Global &g) {
    BitFlipConvention convention;
    if (a.convention == "printed") {
        convention = BitFlipConvention::kPrinted;
    } else if (a.convention == "standard") {
        convention = BitFlipConvention::kStandard;
    } else {
        throw std::invalid_argument("--convention must be printed or standard");
    }
    std::vector<ChannelKind> channels;
    for (const auto &c : a.channels) {
        channels.push_back(parse_channel(c));
    }
    if (channels.empty()) {
        channels = all_channels();
    }
    const std::vector<double> grid = p_grid(a.step);
    Rng rng = payload_rng(g);

    std::vector<std::pair<std::string, NoisyRunner>> runners;
    const std::vector<std::string> known{"mqt", "broadcast", "qav-a", "qav-b", "bell-vs-cluster"};
    if (std::find(known.begin(), known.end(), a.protocol) == known.end() && a.protocol != "all") {
        throw std::invalid_argument("unknown noise protocol '" + a.protocol +
                                    "' (expected mqt, broadcast, qav-a, qav-b, bell-vs-cluster or all)");
    }
    auto wanted = [&](const std::string &name) { return a.protocol == "all" || a.protocol == name; };
    if (wanted("mqt")) {
        const GhzLikePayload pa = GhzLikePayload::random(1, rng);
        const GhzLikePayload pb = GhzLikePayload::random(2, rng);
        runners.emplace_back("mqt", [pa, pb](const std::optional<KrausChannel> &ch) {
            return mqt_noisy_output(pa, pb, ch);
        });
    }
    if (wanted("broadcast")) {
        if (a.receivers < 1) {
            throw std::invalid_argument("--receivers must be at least 1");
        }
        const KnownQubit q = KnownQubit::random(rng);
        const int m = a.receivers;
        runners.emplace_back("broadcast", [q, m](const std::optional<KrausChannel> &ch) {
            return broadcast_noisy_output(q, m, ch);
        });
    }
    if (wanted("qav-a")) {
        const VoteVector votes = VoteVector::parse(a.vetoes);
        runners.emplace_back("qav-a", [votes](const std::optional<KrausChannel> &ch) {
            return qav_a_noisy_output(votes, 0, ch);
        });
    }
    if (wanted("qav-b")) {
        const VoteVector votes = VoteVector::parse(a.vetoes);
        const QavResource res = parse_qav_resource(a.resource);
        runners.emplace_back("qav-b-" + qav_resource_name(res), [votes, res](const std::optional<KrausChannel> &ch) {
            return qav_b_noisy_output(votes, res, ch);
        });
    }

    CsvTable t({"channel", "p", "protocol", "fidelity"});
    for (ChannelKind kind : channels) {
        for (const auto &[name, runner] : runners) {
            for (const auto &pt : noise_sweep(name, runner, kind, grid, convention)) {
                t.add_row({pt.channel, num(pt.p), pt.protocol, num(pt.fidelity)});
            }
        }
        if (wanted("bell-vs-cluster")) {
            const PureState bell2 = tensor_product(prepare_bell(BellState::kPhiPlus), prepare_bell(BellState::kPhiPlus));
            const PureState cluster = prepare_cluster4();
            for (double p : grid) {
                const KrausChannel ch = make_channel(kind, p, convention);
                t.add_row({channel_name(kind), num(p), "bell_x_bell", num(state_fidelity_under_noise(bell2, ch))});
                t.add_row({channel_name(kind), num(p), "cluster4", num(state_fidelity_under_noise(cluster, ch))});
            }
        }
    }
    return t;
}

// ------------------------------------------------------------- tomography

CsvTable run_tomography(const TomographyArgs &a, const Global &g) {
    if (a.states < 1) {
        throw std::invalid_argument("--states must be positive");
    }
    Rng rng = payload_rng(g);
    Rng srng = sampling_rng(g);
    CsvTable t({"index", "qubits", "mode", "max_element_error"});
    for (int i = 0; i < a.states; i++) {
        const MixedState rho = random_mixed_state(a.qubits, rng);
        const auto ex = g.mode == RunMode::kSampled ? sample_pauli_expectations(rho, g.shots, srng)
                                                    : pauli_expectations(rho);
        const MixedState back = tomography_reconstruct(ex);
        const double err = (back.matrix() - rho.matrix()).cwiseAbs().maxCoeff();
        t.add_row({num(i), num(a.qubits), g.mode == RunMode::kSampled ? "sampled" : "analytic", num(err)});
    }
    return t;
}

// ---------------------------------------------------------------- circuit

CsvTable run_circuit_file(const CircuitArgs &a, const Global &g) {
    std::ifstream in(a.file);
    if (!in) {
        throw std::invalid_argument("cannot open circuit file '" + a.file + "'");
    }
    std::stringstream text;
    text << in.rdbuf();
    const Circuit c = parse_circuit(text.str());
    const PureRun run = run_circuit(c, PureState::zeros(c.num_qubits()), g.mode, g.shots, g.seed);
    if (g.mode == RunMode::kSampled) {
        CsvTable t({"record", "count", "frequency"});
        for (const auto &[bits, count] : run.histogram.counts) {
            t.add_row({bits, num(count), num(frequency(run.histogram, bits))});
        }
        return t;
    }
    CsvTable t({"record", "probability"});
    for (const auto &b : run.branches) {
        t.add_row({b.bits, num(b.probability)});
    }
    return t;
}

}  // namespace qcomm::cli
