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

#ifndef QCOMM_NOISE_H
#define QCOMM_NOISE_H

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qcomm/qstate.h"

namespace qcomm {

enum class ChannelKind { kBitFlip, kDepolarizing, kAmplitudeDamping, kPhaseDamping };

/// The printed bit-flip pair is E0 = sqrt(p) I, E1 = sqrt(1-p) X, so p = 0
/// is a certain flip. The standard pair swaps the two weights.
enum class BitFlipConvention { kPrinted, kStandard };

std::string channel_name(ChannelKind kind);
ChannelKind parse_channel(std::string_view name);
const std::vector<ChannelKind> &all_channels();

struct KrausChannel {
    ChannelKind kind;
    double p;
    std::vector<Matrix> operators;

    /// max |sum E^dag E - I|.
    double completeness_error() const;
};

/// Operators that vanish identically at this p are dropped, so
/// make_channel(depolarizing, 0) is the single operator I.
KrausChannel make_channel(ChannelKind kind, double p, BitFlipConvention convention = BitFlipConvention::kPrinted);

MixedState apply_channel(const MixedState &rho, const KrausChannel &ch, int target);
/// Applies the channel once to each listed qubit.
MixedState apply_channel(const MixedState &rho, const KrausChannel &ch, const std::vector<int> &targets);

/// Runs a protocol with the channel applied at its travel sites (or without
/// noise when given nullopt) and returns the protocol's output state.
using NoisyRunner = std::function<MixedState(const std::optional<KrausChannel> &)>;

struct CurvePoint {
    std::string channel;
    double p;
    std::string protocol;
    double fidelity;
};

/// Evenly spaced grid {0, step, ..., 1}.
std::vector<double> p_grid(double step = 0.05);

/// One point per grid value: fidelity of the noisy output against the
/// noiseless output of the same runner.
std::vector<CurvePoint> noise_sweep(const std::string &protocol, const NoisyRunner &runner, ChannelKind kind,
                                    const std::vector<double> &grid,
                                    BitFlipConvention convention = BitFlipConvention::kPrinted);

/// Fidelity of `state` with itself after the channel hits every qubit once.
double state_fidelity_under_noise(const PureState &state, const KrausChannel &ch);

/// Largest increase between consecutive points (0 when non-increasing).
double max_increase(const std::vector<CurvePoint> &curve);

}  // namespace qcomm

#endif
