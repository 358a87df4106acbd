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

#ifndef QCOMM_TOOLS_COMMANDS_H
#define QCOMM_TOOLS_COMMANDS_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcomm/circuits.h"
#include "qcomm/csv.h"

namespace qcomm::cli {

struct Global {
    uint64_t seed = 0;
    uint64_t shots = 8192;
    RunMode mode = RunMode::kAnalytic;
};

struct MqtArgs {
    int m = 1;
    /// Both payloads alpha = beta = 1/sqrt2.
    bool plus = false;
};

struct BroadcastArgs {
    std::string variant = "plain";
    int parties = 2;
    std::optional<double> theta;
    std::optional<double> phi;
    std::vector<std::string> resources;
    bool distinct = false;
    std::vector<std::string> controller;
    bool withhold = false;
};

struct OperandArgs {
    std::optional<double> theta;
    std::optional<double> phi;
};

struct ProbeArgs {
    double z = 1.0;
    double theta = 3.14159265358979323846;
    double D = 1.0;
};

struct SurfaceArgs {
    bool enabled = false;
    int points = 20;
    int thetas = 8;
    double z_max = 3.0;
};

struct RihoArgs {
    std::string channel = "omega+";
    std::optional<double> u_phase;
    std::optional<double> v_phase;
    OperandArgs operand;
    ProbeArgs probe;
    SurfaceArgs surface;
};

struct RipuoArgs {
    std::string channel = "omega+";
    std::string form = "diagonal";
    std::optional<double> phase0;
    std::optional<double> phase1;
    OperandArgs operand;
    ProbeArgs probe;
    SurfaceArgs surface;
};

struct CjrioArgs {
    int senders = 2;
    int controllers = 1;
    bool withhold_consent = false;
    uint64_t branch_limit = 1 << 16;
    OperandArgs operand;
};

struct QavAArgs {
    std::vector<std::string> patterns;
};

struct QavBArgs {
    std::string resource = "cluster4";
    std::vector<std::string> patterns;
};

struct QkdArgs {
    std::string protocol = "dps";
    std::string sweep;
    int points = 16;
    std::optional<double> dr, cr, d, td_us, mu, lf, f, eta, lm;
    bool dead_time_correction = false;
    double d_min = 40.0;
    double d_max = 120.0;
};

struct NoiseArgs {
    std::string protocol = "mqt";
    std::vector<std::string> channels;
    double step = 0.05;
    std::string convention = "printed";
    std::string vetoes = "1000";
    std::string resource = "cluster4";
    int receivers = 2;
};

struct TomographyArgs {
    int qubits = 1;
    int states = 50;
};

struct CircuitArgs {
    std::string file;
};

CsvTable run_mqt(const MqtArgs &a, const Global &g);
CsvTable run_broadcast(const BroadcastArgs &a, const Global &g);
CsvTable run_riho_cmd(const RihoArgs &a, const Global &g);
CsvTable run_ripuo_cmd(const RipuoArgs &a, const Global &g);
CsvTable run_cjrio_cmd(const CjrioArgs &a, const Global &g);
CsvTable run_qav_a(const QavAArgs &a, const Global &g);
CsvTable run_qav_b(const QavBArgs &a, const Global &g);
CsvTable run_qkd(const QkdArgs &a, const Global &g);
CsvTable run_noise_sweep(const NoiseArgs &a, const Global &g);
CsvTable run_tomography(const TomographyArgs &a, const Global &g);
CsvTable run_circuit_file(const CircuitArgs &a, const Global &g);

}  // namespace qcomm::cli

#endif
