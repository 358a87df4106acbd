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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.h"

namespace {

using qcomm::CsvTable;
using namespace qcomm::cli;

void add_operand(CLI::App *sub, OperandArgs &o) {
    sub->add_option("--psi-theta", o.theta, "Operand photon polar angle (random when omitted)");
    sub->add_option("--psi-phi", o.phi, "Operand photon azimuth");
}

void add_probe(CLI::App *sub, ProbeArgs &p) {
    sub->add_option("--z", p.z, "Probe coherent amplitude")->check(CLI::PositiveNumber);
    sub->add_option("--theta", p.theta, "Cross-Kerr phase unit");
    sub->add_option("--D", p.D, "Dissipation factor in (0, 1]");
}

void add_surface(CLI::App *sub, SurfaceArgs &s) {
    sub->add_flag("--surface", s.enabled, "Emit the success-probability surface over (z, D, theta)");
    sub->add_option("--points", s.points, "Grid points along z and D")->check(CLI::PositiveNumber);
    sub->add_option("--thetas", s.thetas, "Grid points along theta")->check(CLI::PositiveNumber);
    sub->add_option("--z-max", s.z_max, "Upper end of the z grid");
}

void emit(const CsvTable &table, const std::string &out, const std::string &sub) {
    std::string path = out;
    if (path.empty()) {
        if (const char *dir = std::getenv("QCOMM_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
            std::filesystem::create_directories(dir);
            path = (std::filesystem::path(dir) / (sub + ".csv")).string();
        }
    }
    if (path.empty()) {
        table.write(std::cout);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw std::runtime_error("cannot write '" + path + "'");
    }
    table.write(f);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"qcomm: quantum communication protocol simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "TOML/INI file with option values");

    Global g;
    std::string mode = "analytic";
    std::string out;
    app.add_option("--seed", g.seed, "RNG seed")->capture_default_str();
    app.add_option("--shots", g.shots, "Shots in sampled mode")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--mode", mode, "analytic or sampled")
        ->capture_default_str()
        ->check(CLI::IsMember({"analytic", "sampled"}));
    app.add_option("--out", out, "Output CSV path (default: $QCOMM_OUTPUT_DIR/<subcommand>.csv, else stdout)");

    std::map<std::string, std::function<CsvTable()>> handlers;

    MqtArgs mqt;
    auto *s_mqt = app.add_subcommand("mqt", "Multiple-qubit teleportation to two receivers");
    s_mqt->add_option("--m", mqt.m, "Qubits of the first payload (second has m+1)");
    s_mqt->add_flag("--plus", mqt.plus, "Use alpha = beta = 1/sqrt2 for both payloads");
    handlers["mqt"] = [&] { return run_mqt(mqt, g); };

    BroadcastArgs bc;
    auto *s_bc = app.add_subcommand("broadcast", "Broadcast a known qubit by remote state preparation");
    s_bc->add_option("--variant", bc.variant, "plain, joint, controlled or multidirectional")->capture_default_str();
    s_bc->add_option("--parties", bc.parties, "Receivers (parties for multidirectional)")->capture_default_str();
    s_bc->add_option("--theta", bc.theta, "Known qubit polar angle in [0, pi] (random when omitted)");
    s_bc->add_option("--phi", bc.phi, "Known qubit azimuth in [0, 2 pi)");
    s_bc->add_option("--resources", bc.resources, "Bell state per pair (phi+, phi-, psi+, psi-)");
    s_bc->add_flag("--distinct", bc.distinct, "Require distinct pair resources");
    s_bc->add_option("--controller", bc.controller, "Controller's phi+/phi- choice per pair (random when omitted)");
    s_bc->add_flag("--withhold", bc.withhold, "Controller withholds disclosure");
    handlers["broadcast"] = [&] { return run_broadcast(bc, g); };

    RihoArgs riho;
    auto *s_riho = app.add_subcommand("rio-riho", "Remote implementation of a hybrid operator");
    s_riho->add_option("--channel", riho.channel, "omega+, omega-, pi+ or pi-")->capture_default_str();
    s_riho->add_option("--u-phase", riho.u_phase, "Phase of u (random when omitted)");
    s_riho->add_option("--v-phase", riho.v_phase, "Phase of v (random when omitted)");
    add_operand(s_riho, riho.operand);
    add_probe(s_riho, riho.probe);
    add_surface(s_riho, riho.surface);
    handlers["rio-riho"] = [&] { return run_riho_cmd(riho, g); };

    RipuoArgs ripuo;
    auto *s_ripuo = app.add_subcommand("rio-ripuo", "Remote implementation of a partially unknown operator");
    s_ripuo->add_option("--channel", ripuo.channel, "omega+, omega-, pi+ or pi-")->capture_default_str();
    s_ripuo->add_option("--form", ripuo.form, "diagonal or antidiagonal")->capture_default_str();
    s_ripuo->add_option("--phase0", ripuo.phase0, "Phase of the first non-zero entry (random when omitted)");
    s_ripuo->add_option("--phase1", ripuo.phase1, "Phase of the second non-zero entry (random when omitted)");
    add_operand(s_ripuo, ripuo.operand);
    add_probe(s_ripuo, ripuo.probe);
    add_surface(s_ripuo, ripuo.surface);
    handlers["rio-ripuo"] = [&] { return run_ripuo_cmd(ripuo, g); };

    CjrioArgs cj;
    auto *s_cj = app.add_subcommand("rio-cjrio", "Controlled joint remote implementation of operators");
    s_cj->add_option("--senders", cj.senders, "Joint operator holders M")->capture_default_str();
    s_cj->add_option("--controllers", cj.controllers, "Controllers N")->capture_default_str();
    s_cj->add_flag("--no-consent", cj.withhold_consent, "Controllers refuse; the run halts");
    s_cj->add_option("--branch-limit", cj.branch_limit, "Refuse enumerations larger than this")
        ->capture_default_str();
    add_operand(s_cj, cj.operand);
    handlers["rio-cjrio"] = [&] { return run_cjrio_cmd(cj, g); };

    QavAArgs qa;
    auto *s_qa = app.add_subcommand("qav-a", "Iterative Bell-pair anonymous veto");
    s_qa->add_option("--vetoes", qa.patterns, "Vote patterns such as 1100 (default: one per veto count)");
    handlers["qav-a"] = [&] { return run_qav_a(qa, g); };

    QavBArgs qb;
    auto *s_qb = app.add_subcommand("qav-b", "Single-shot anonymous veto over cluster4 or ghz3");
    s_qb->add_option("--resource", qb.resource, "cluster4 or ghz3")->capture_default_str();
    s_qb->add_option("--vetoes", qb.patterns, "Four-voter patterns (default: all 16)");
    handlers["qav-b"] = [&] { return run_qav_b(qb, g); };

    QkdArgs qkd;
    auto *s_qkd = app.add_subcommand("qkd", "COW/DPS click and key-rate model");
    s_qkd->add_option("--protocol", qkd.protocol, "cow or dps")->capture_default_str();
    s_qkd->add_option("--sweep", qkd.sweep, "Sweep axis: dr, cr, td or d");
    s_qkd->add_option("--points", qkd.points, "Sweep grid points")->capture_default_str();
    s_qkd->add_option("--dr", qkd.dr, "Disclose rate");
    s_qkd->add_option("--cr", qkd.cr, "Compression ratio");
    s_qkd->add_option("--d", qkd.d, "Distance in km");
    s_qkd->add_option("--td-us", qkd.td_us, "Detector dead time in microseconds");
    s_qkd->add_option("--mu", qkd.mu, "Mean photon number per pulse");
    s_qkd->add_option("--lf", qkd.lf, "Fiber loss in dB/km");
    s_qkd->add_option("--f", qkd.f, "Pulse frequency in Hz");
    s_qkd->add_option("--eta", qkd.eta, "Detector efficiency");
    s_qkd->add_option("--lm", qkd.lm, "Interferometer loss in dB (DPS)");
    s_qkd->add_flag("--dead-time-correction", qkd.dead_time_correction, "Apply 1/(1 + C t_d) to clicks");
    s_qkd->add_option("--d-min", qkd.d_min, "Lower end of the distance sweep")->capture_default_str();
    s_qkd->add_option("--d-max", qkd.d_max, "Upper end of the distance sweep")->capture_default_str();
    handlers["qkd"] = [&] { return run_qkd(qkd, g); };

    NoiseArgs ns;
    auto *s_ns = app.add_subcommand("noise-sweep", "Fidelity against noise strength");
    s_ns->add_option("--protocol", ns.protocol, "mqt, broadcast, qav-a, qav-b, bell-vs-cluster or all")
        ->capture_default_str();
    s_ns->add_option("--channel", ns.channels, "Channels (default: all four)");
    s_ns->add_option("--step", ns.step, "Grid step in p")->capture_default_str();
    s_ns->add_option("--convention", ns.convention, "Bit-flip weights: printed or standard")->capture_default_str();
    s_ns->add_option("--vetoes", ns.vetoes, "Vote pattern for qav-a and qav-b")->capture_default_str();
    s_ns->add_option("--resource", ns.resource, "qav-b resource")->capture_default_str();
    s_ns->add_option("--receivers", ns.receivers, "Broadcast receivers")->capture_default_str();
    handlers["noise-sweep"] = [&] { return run_noise_sweep(ns, g); };

    TomographyArgs tomo;
    auto *s_tomo = app.add_subcommand("tomography", "Pauli tomography round trip on random mixed states");
    s_tomo->add_option("--qubits", tomo.qubits, "Qubits per state")->check(CLI::Range(1, 4))->capture_default_str();
    s_tomo->add_option("--states", tomo.states, "Number of random states")->capture_default_str();
    handlers["tomography"] = [&] { return run_tomography(tomo, g); };

    CircuitArgs circ;
    auto *s_circ = app.add_subcommand("circuit", "Run a circuit file from |0...0>");
    s_circ->add_option("--file", circ.file, "Circuit text file")->required();
    handlers["circuit"] = [&] { return run_circuit_file(circ, g); };

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        return app.exit(e);
    }
    g.mode = mode == "sampled" ? qcomm::RunMode::kSampled : qcomm::RunMode::kAnalytic;
    const std::string sub = app.get_subcommands().front()->get_name();
    try {
        emit(handlers.at(sub)(), out, sub);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
