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

#include "qcomm/noise.h"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qcomm {

std::string channel_name(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::kBitFlip:
            return "bit_flip";
        case ChannelKind::kDepolarizing:
            return "depolarizing";
        case ChannelKind::kAmplitudeDamping:
            return "amplitude_damping";
        case ChannelKind::kPhaseDamping:
            return "phase_damping";
    }
    throw std::invalid_argument("bad channel kind");
}

const std::vector<ChannelKind> &all_channels() {
    static const std::vector<ChannelKind> kinds{ChannelKind::kBitFlip, ChannelKind::kDepolarizing,
                                                ChannelKind::kAmplitudeDamping, ChannelKind::kPhaseDamping};
    return kinds;
}

ChannelKind parse_channel(std::string_view name) {
    for (ChannelKind k : all_channels()) {
        if (channel_name(k) == name) {
            return k;
        }
    }
    throw std::invalid_argument("unknown channel '" + std::string(name) +
                                "' (expected bit_flip, depolarizing, amplitude_damping or phase_damping)");
}

double KrausChannel::completeness_error() const {
    Matrix sum = Matrix::Zero(2, 2);
    for (const auto &e : operators) {
        sum += e.adjoint() * e;
    }
    return (sum - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff();
}

KrausChannel make_channel(ChannelKind kind, double p, BitFlipConvention convention) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("noise probability must lie in [0, 1], got " + std::to_string(p));
    }
    const Matrix i2 = Matrix::Identity(2, 2);
    std::vector<Matrix> ops;
    switch (kind) {
        case ChannelKind::kBitFlip: {
            const double keep = convention == BitFlipConvention::kPrinted ? p : 1.0 - p;
            ops = {std::sqrt(keep) * i2, std::sqrt(1.0 - keep) * pauli('X')};
            break;
        }
        case ChannelKind::kDepolarizing:
            ops = {std::sqrt(1.0 - 3.0 * p / 4.0) * i2, std::sqrt(p) / 2.0 * pauli('X'),
                   std::sqrt(p) / 2.0 * pauli('Y'), std::sqrt(p) / 2.0 * pauli('Z')};
            break;
        case ChannelKind::kAmplitudeDamping:
            ops = {Matrix{{1, 0}, {0, std::sqrt(1.0 - p)}}, Matrix{{0, std::sqrt(p)}, {0, 0}}};
            break;
        case ChannelKind::kPhaseDamping:
            ops = {std::sqrt(1.0 - p) * i2, Matrix{{std::sqrt(p), 0}, {0, 0}}, Matrix{{0, 0}, {0, std::sqrt(p)}}};
            break;
    }
    std::vector<Matrix> kept;
    for (auto &e : ops) {
        if (e.cwiseAbs().maxCoeff() > 0.0) {
            kept.push_back(std::move(e));
        }
    }
    return KrausChannel{kind, p, std::move(kept)};
}

MixedState apply_channel(const MixedState &rho, const KrausChannel &ch, int target) {
    detail::check_targets(rho.num_qubits(), {target});
    Matrix out = Matrix::Zero(rho.matrix().rows(), rho.matrix().cols());
    for (const auto &e : ch.operators) {
        out += detail::conjugate(rho.matrix(), rho.num_qubits(), e, {target});
    }
    out = (out + out.adjoint()) / 2.0;
    return MixedState::trusted(rho.num_qubits(), std::move(out));
}

MixedState apply_channel(const MixedState &rho, const KrausChannel &ch, const std::vector<int> &targets) {
    MixedState out = rho;
    for (int t : targets) {
        out = apply_channel(out, ch, t);
    }
    return out;
}

std::vector<double> p_grid(double step) {
    if (!(step > 0.0 && step <= 1.0)) {
        throw std::invalid_argument("grid step must lie in (0, 1]");
    }
    const int n = static_cast<int>(std::lround(1.0 / step));
    std::vector<double> grid;
    for (int i = 0; i <= n; i++) {
        grid.push_back(std::min(1.0, i * step));
    }
    return grid;
}

std::vector<CurvePoint> noise_sweep(const std::string &protocol, const NoisyRunner &runner, ChannelKind kind,
                                    const std::vector<double> &grid, BitFlipConvention convention) {
    const MixedState ideal = runner(std::nullopt);
    std::vector<CurvePoint> out;
    for (double p : grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw std::invalid_argument("grid values must lie in [0, 1]");
        }
        const MixedState noisy = runner(make_channel(kind, p, convention));
        out.push_back(CurvePoint{channel_name(kind), p, protocol, fidelity(ideal, noisy)});
    }
    return out;
}

double state_fidelity_under_noise(const PureState &state, const KrausChannel &ch) {
    std::vector<int> all(static_cast<size_t>(state.num_qubits()));
    std::iota(all.begin(), all.end(), 0);
    return fidelity(state, apply_channel(state.density(), ch, all));
}

double max_increase(const std::vector<CurvePoint> &curve) {
    double worst = 0;
    for (size_t i = 1; i < curve.size(); i++) {
        worst = std::max(worst, curve[i].fidelity - curve[i - 1].fidelity);
    }
    return worst;
}

}  // namespace qcomm
