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

#ifndef QCOMM_DUAL_RAIL_H
#define QCOMM_DUAL_RAIL_H

#include <map>
#include <string>
#include <vector>

#include "qcomm/qstate.h"

namespace qcomm {

/// Photonic register of named binary degrees of freedom. A path dof "A"
/// holds rails a0/a1 (bit value 0/1); a polarization dof holds H/V. Every
/// amplitude carries an integer probe tag n standing for the coherent probe
/// |z e^{i n theta}>, so a cross-Kerr coupling only moves tags around.
class DualRailRegister {
   public:
    /// Amplitudes over the dofs in big-endian order; must have unit norm.
    DualRailRegister(std::vector<std::string> names, Vector amplitudes);

    const std::vector<std::string> &names() const { return names_; }
    const Vector &amplitudes() const { return amps_; }
    const std::vector<int> &tags() const { return tags_; }
    int num_dofs() const { return static_cast<int>(names_.size()); }
    bool has(const std::string &name) const;

    /// 2x2 unitary on one dof.
    void apply(const std::string &name, const Matrix &u);
    /// `u` on `target` only where `control` holds `value`.
    void apply_controlled(const std::string &control, int value, const std::string &target, const Matrix &u);
    /// Balanced beam splitter on a path pair: |s0> -> (|s0>+|s1>)/sqrt2,
    /// |s1> -> (|s0>-|s1>)/sqrt2.
    void bbs_mix(const std::string &name);
    /// Adds `n` to the probe tag wherever `name` sits on rail `path`.
    void cross_kerr(const std::string &name, int path, int n);

    /// Appends new dofs in the given joint state (tags are kept).
    void attach(const std::vector<std::string> &names, const Vector &state);

    /// Born weight of each probe class present. With `merge`, tags +n and
    /// -n form the single class n.
    std::map<int, double> class_probabilities(bool merge) const;
    /// Keeps only the amplitudes of one class, renormalizes and clears every
    /// tag (the probe is consumed). Returns the class weight.
    double project_class(int cls, bool merge);

    double bit_probability(const std::string &name, int value) const;
    double project_bit(const std::string &name, int value);

    /// Reduced 2x2 density matrix of one dof.
    Matrix reduced(const std::string &name) const;

   private:
    int index(const std::string &name) const;
    uint64_t mask(const std::string &name) const;

    std::vector<std::string> names_;
    Vector amps_;
    std::vector<int> tags_;
};

}  // namespace qcomm

#endif
