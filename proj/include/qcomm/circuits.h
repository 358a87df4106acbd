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

#ifndef QCOMM_CIRCUITS_H
#define QCOMM_CIRCUITS_H

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "qcomm/qstate.h"

namespace qcomm {

struct Gate {
    std::string label;
    Matrix matrix;
    std::vector<double> params;

    int num_qubits() const;
    Gate adjoint() const;
};

/// Known names: I X Y Z H iY P(phi) Rx(a) Ry(a) Rz(a) SigmaZt(t) U(phi,gamma,beta,alpha)
/// CNOT CZ SWAP. U is e^{i phi} Rz(gamma) Ry(beta) Rx(alpha); SigmaZt(t) is
/// diag(1, e^{i pi / 2^t}); iY is [[0,1],[-1,0]].
Gate standard_gate(std::string_view name, const std::vector<double> &params = {});

enum class BellState { kPhiPlus, kPhiMinus, kPsiPlus, kPsiMinus };

/// "phi+", "phi-", "psi+", "psi-".
std::string bell_name(BellState b);
BellState parse_bell(std::string_view name);
PureState prepare_bell(BellState b);
/// Throws for n < 3.
PureState prepare_ghz(int n);
/// (|0000> + |0011> + |1100> - |1111>) / 2.
PureState prepare_cluster4();
/// "phi+" etc., "ghz<n>" such as "ghz3", or "cluster4".
PureState prepare_named(std::string_view name);

struct GateOp {
    Gate gate;
    std::vector<int> targets;
    /// Indices into the measurement record. When non-empty the gate runs only
    /// if the XOR of those bits equals `parity`.
    std::vector<int> condition;
    int parity = 1;
};

/// Computational-basis measurement appending one record bit per target.
struct MeasureOp {
    std::vector<int> targets;
};

using CircuitOp = std::variant<GateOp, MeasureOp>;

class Circuit {
   public:
    explicit Circuit(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    int num_record_bits() const { return num_bits_; }
    const std::vector<CircuitOp> &ops() const { return ops_; }

    Circuit &gate(const Gate &g, std::vector<int> targets);
    Circuit &gate(std::string_view name, std::vector<int> targets, const std::vector<double> &params = {});
    Circuit &controlled(const Gate &g, std::vector<int> targets, std::vector<int> condition, int parity = 1);
    Circuit &measure(std::vector<int> targets);
    Circuit &append(const Circuit &other);

    /// Reverses a measurement-free circuit and conjugates every gate.
    Circuit inverse() const;

   private:
    int num_qubits_;
    int num_bits_ = 0;
    std::vector<CircuitOp> ops_;
};

Circuit bell_prep_circuit(BellState b);
Circuit ghz_prep_circuit(int n);
Circuit cluster4_prep_circuit();

enum class RunMode { kAnalytic, kSampled };

struct PureBranch {
    std::string bits;
    double probability;
    PureState state;
};

struct MixedBranch {
    std::string bits;
    double probability;
    MixedState state;
};

struct PureRun {
    std::vector<PureBranch> branches;
    /// Filled in sampled mode; draws from the branch probabilities.
    ShotHistogram histogram;
};

struct MixedRun {
    std::vector<MixedBranch> branches;
    ShotHistogram histogram;
};

/// Analytic mode enumerates every measurement branch with nonzero
/// probability. Sampled mode also draws `shots` records.
PureRun run_circuit(const Circuit &c, const PureState &input, RunMode mode = RunMode::kAnalytic,
                    uint64_t shots = 8192, uint64_t seed = 0);
MixedRun run_circuit(const Circuit &c, const MixedState &input, RunMode mode = RunMode::kAnalytic,
                     uint64_t shots = 8192, uint64_t seed = 0);

/// Text format, one statement per line, '#' starts a comment:
///   qubits N
///   NAME[(p1,p2,...)] t1 t2 ... [if b1 b2 ... [== 0|1]]
///   MEASURE t1 t2 ...
Circuit parse_circuit(std::string_view text);

}  // namespace qcomm

#endif
