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

#ifndef QCOMM_HOMODYNE_H
#define QCOMM_HOMODYNE_H

#include <vector>

#include "qcomm/circuits.h"
#include "qcomm/dual_rail.h"

namespace qcomm {

/// Coherent probe |z> with Kerr phase unit theta and dissipation factor
/// D = exp(-gamma t). Probe class n has its X-quadrature peak at 2 D z cos(n theta).
struct HomodyneModel {
    double z;
    double theta;
    double D;

    HomodyneModel(double z, double theta, double D = 1.0);
    double centre(int n) const;
    /// 2 D z (cos n1 theta - cos n2 theta).
    double peak_separation(int n1, int n2) const;
    /// D z (cos n1 theta + cos n2 theta).
    double midpoint(int n1, int n2) const;
    /// 1/2 erfc(D z (cos n1 theta - cos n2 theta) / sqrt2), signed as written.
    double signed_error(int n1, int n2) const;
    /// Misidentification probability between two classes, using the
    /// magnitude of the peak gap so it never exceeds 1/2.
    double error(int n1, int n2) const;
};

struct DiscriminationResult {
    int outcome;
    double probability;
    double error_prob;
    double peak_separation;
    double midpoint;
};

struct DiscriminationBranch {
    DiscriminationResult result;
    DualRailRegister reg;
};

/// Reads the probe of `reg`. Classes 0..max_class are the candidates the
/// protocol distinguishes at this step; each class is compared with its upper
/// neighbour (the top class with its lower one). With `merge`, +n and -n are
/// one class. Analytic mode returns every class present with its Born
/// weight; sampled mode draws x ~ N(2 D z cos(n theta), 1) for the true
/// class n, records the candidate with the nearest peak, and returns that
/// single branch projected onto the true class.
std::vector<DiscriminationBranch> homodyne_discriminate(const HomodyneModel &model, const DualRailRegister &reg,
                                                        int max_class, bool merge, RunMode mode, Rng *rng);

}  // namespace qcomm

#endif
