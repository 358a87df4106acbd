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

#ifndef QCOMM_RIO_H
#define QCOMM_RIO_H

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qcomm/circuits.h"
#include "qcomm/dual_rail.h"
#include "qcomm/homodyne.h"
#include "qcomm/qstate.h"

namespace qcomm {

/// ((u, v), (-v*, u*)). The unimodular form has |u|^2 + |v|^2 = 1. The lump
/// form has |u| = |v| = 1 and carries an extra 1/sqrt2; it hides the
/// sub-operators U0 = diag(u, u*) and U1 = ((0, v), (-v*, 0)).
struct SuOperator {
    enum class Form { kUnimodular, kLump };

    Complex u;
    Complex v;
    Form form;

    static SuOperator unimodular(Complex u, Complex v);
    static SuOperator lump(Complex u, Complex v);
    static SuOperator random_unimodular(Rng &rng);
    static SuOperator random_lump(Rng &rng);

    Matrix matrix() const;
    Matrix u0() const;
    Matrix u1() const;
};

/// Two-photon channel on paths A and B: omega+- = a0b0 +- a1b1,
/// pi+- = a0b1 +- a1b0 (normalized).
enum class RioChannel { kOmegaPlus, kOmegaMinus, kPiPlus, kPiMinus };

std::string rio_channel_name(RioChannel c);
RioChannel parse_rio_channel(std::string_view name);
Vector rio_channel_state(RioChannel c);

enum class RioStatus { kCompleted, kHalted };

struct RioBranch {
    /// Announced classical outcomes in protocol order, e.g. {"k", 1}.
    std::vector<std::pair<std::string, int>> outcomes;
    double probability;
    /// Fidelity of the operand photon with the protocol's target.
    double fidelity;
    /// Homodyne misidentification probability of each probe readout.
    std::vector<double> error_probs;
    /// Sampled mode: number of trajectories that produced this transcript
    /// (fidelity is then their mean).
    uint64_t count = 0;

    std::string label() const;
    int outcome(const std::string &name) const;
};

struct RioResult {
    RioStatus status = RioStatus::kCompleted;
    std::vector<RioBranch> branches;
    double min_fidelity() const;
    double total_probability() const;
};

struct RioOptions {
    RunMode mode = RunMode::kAnalytic;
    uint64_t shots = 8192;
    uint64_t seed = 0;
};

/// Hidden operator: Bob holds a lump operator; Alice's photon ends in
/// U_m |psi> where m is announced.
RioResult run_riho(const PureState &payload, RioChannel channel, const SuOperator &op, const HomodyneModel &model,
                   const RioOptions &options = {});

/// Partially unknown operator: `op` must be a diagonal or anti-diagonal
/// unitary. Alice's photon ends in op |psi>.
RioResult run_ripuo(const PureState &payload, RioChannel channel, const Matrix &op, const HomodyneModel &model,
                    const RioOptions &options = {});

struct CjrioOptions {
    RunMode mode = RunMode::kAnalytic;
    /// Trajectories in sampled mode.
    uint64_t shots = 8192;
    uint64_t seed = 0;
    /// Exhaustive enumeration refuses to go beyond this many branches.
    uint64_t branch_limit = 1 << 16;
};

/// Controlled joint remote implementation: M = ops.size() senders, N
/// controllers. Photon A ends in ops[0] ops[1] ... ops[M-1] |psi>. Without
/// consent the run halts after the first two probe readouts.
RioResult run_cjrio(const PureState &payload, const std::vector<SuOperator> &ops, int controllers, bool consent,
                    const CjrioOptions &options = {});

struct Rational {
    int64_t num;
    int64_t den;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    bool operator==(const Rational &o) const = default;
};

/// M / (5M + 3N + 2), reduced.
Rational efficiency(int M, int N);

struct ErrorTerms {
    double p1, p2, p31, p32, p33;
};

/// Readout error terms with the printed signed peak gaps.
ErrorTerms error_terms(const HomodyneModel &model);

struct SuccessProbabilities {
    /// 1 - P1 P2 (P31 + P32 + P33).
    double riho;
    /// 1 - P1 (P31 + P32 + P33).
    double ripuo;
};

SuccessProbabilities success_probabilities(const HomodyneModel &model);

struct SurfacePoint {
    double z, D, theta;
    SuccessProbabilities p;
};

std::vector<SurfacePoint> success_surface(const std::vector<double> &z, const std::vector<double> &D,
                                          const std::vector<double> &theta);

struct ProbeTrajectoryPoint {
    double gamma_t;
    /// Tr(rho b) from the integrated Lindblad equation.
    Complex mean_b;
};

/// Integrates d rho/dt = gamma/2 (2 b rho b^dag - b^dag b rho - rho b^dag b)
/// for an initial coherent state |z> (z real) with RK4 in a truncated Fock
/// basis. Time is measured in units of 1/gamma.
std::vector<ProbeTrajectoryPoint> integrate_probe_dissipation(double z, double gamma_t_end, int steps,
                                                              int fock_dim = 0);

}  // namespace qcomm

#endif
