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

#include "qcomm/homodyne.h"

#include <cmath>
#include <cstdlib>

namespace qcomm {

namespace {

constexpr int kMaxPhaseIndex = 3;

}  // namespace

HomodyneModel::HomodyneModel(double z_, double theta_, double D_) : z(z_), theta(theta_), D(D_) {
    if (!(z > 0.0) || !std::isfinite(z)) {
        throw std::invalid_argument("probe amplitude z must be positive");
    }
    if (!(D > 0.0 && D <= 1.0)) {
        throw std::invalid_argument("dissipation factor D must lie in (0, 1]");
    }
    if (!std::isfinite(theta)) {
        throw std::invalid_argument("theta must be finite");
    }
}

double HomodyneModel::centre(int n) const { return 2 * D * z * std::cos(n * theta); }

double HomodyneModel::peak_separation(int n1, int n2) const {
    return 2 * D * z * (std::cos(n1 * theta) - std::cos(n2 * theta));
}

double HomodyneModel::midpoint(int n1, int n2) const {
    return D * z * (std::cos(n1 * theta) + std::cos(n2 * theta));
}

double HomodyneModel::signed_error(int n1, int n2) const {
    return 0.5 * std::erfc(D * z * (std::cos(n1 * theta) - std::cos(n2 * theta)) / std::sqrt(2.0));
}

double HomodyneModel::error(int n1, int n2) const {
    return 0.5 * std::erfc(D * z * std::abs(std::cos(n1 * theta) - std::cos(n2 * theta)) / std::sqrt(2.0));
}

std::vector<DiscriminationBranch> homodyne_discriminate(const HomodyneModel &model, const DualRailRegister &reg,
                                                        int max_class, bool merge, RunMode mode, Rng *rng) {
    if (max_class < 0 || max_class > kMaxPhaseIndex) {
        throw std::invalid_argument("candidate classes must lie in 0..3");
    }
    for (int t : reg.tags()) {
        if (std::abs(t) > kMaxPhaseIndex) {
            throw std::invalid_argument("probe phase index " + std::to_string(t) + " outside {0, +-1, +-2, +-3}");
        }
    }
    const auto weights = reg.class_probabilities(merge);
    for (const auto &[cls, w] : weights) {
        if (cls < 0 || cls > max_class) {
            throw std::invalid_argument("probe class " + std::to_string(cls) + " is not a candidate at this step");
        }
    }
    auto describe = [&](int n, double probability) {
        const int lo = (n == max_class && max_class > 0) ? n - 1 : n;
        const int hi = lo + 1;
        return DiscriminationResult{n, probability, model.error(lo, hi), model.peak_separation(lo, hi),
                                    model.midpoint(lo, hi)};
    };
    std::vector<DiscriminationBranch> out;
    if (mode == RunMode::kAnalytic) {
        for (const auto &[cls, w] : weights) {
            DualRailRegister r = reg;
            r.project_class(cls, merge);
            out.push_back({describe(cls, w), std::move(r)});
        }
        return out;
    }
    if (rng == nullptr) {
        throw std::invalid_argument("sampled discrimination needs a random source");
    }
    std::vector<int> classes;
    std::vector<double> probs;
    for (const auto &[cls, w] : weights) {
        classes.push_back(cls);
        probs.push_back(w);
    }
    const int truth = classes[sample_inverse_cdf(probs, *rng)];
    std::normal_distribution<double> noise(model.centre(truth), 1.0);
    const double x = noise(*rng);
    int recorded = 0;
    for (int c = 1; c <= max_class; c++) {
        if (std::abs(x - model.centre(c)) < std::abs(x - model.centre(recorded))) {
            recorded = c;
        }
    }
    DualRailRegister r = reg;
    r.project_class(truth, merge);
    out.push_back({describe(recorded, weights.at(truth)), std::move(r)});
    return out;
}

}  // namespace qcomm
