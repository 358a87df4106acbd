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

#include "qcomm/dual_rail.h"

#include <cmath>
#include <cstdlib>
#include <set>

namespace qcomm {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kPresent = 1e-24;

}  // namespace

DualRailRegister::DualRailRegister(std::vector<std::string> names, Vector amplitudes)
    : names_(std::move(names)), amps_(std::move(amplitudes)) {
    detail::check_qubit_count(num_dofs());
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size()) {
        throw std::invalid_argument("register dof names must be distinct");
    }
    if (amps_.size() != (Eigen::Index{1} << names_.size())) {
        throw std::invalid_argument("register amplitudes do not match the dof count");
    }
    if (std::abs(amps_.squaredNorm() - 1.0) > kNormTol) {
        throw std::invalid_argument("register amplitudes must have unit norm");
    }
    tags_.assign(static_cast<size_t>(amps_.size()), 0);
}

bool DualRailRegister::has(const std::string &name) const {
    for (const auto &n : names_) {
        if (n == name) {
            return true;
        }
    }
    return false;
}

int DualRailRegister::index(const std::string &name) const {
    for (size_t i = 0; i < names_.size(); i++) {
        if (names_[i] == name) {
            return static_cast<int>(i);
        }
    }
    throw std::invalid_argument("unknown register dof '" + name + "'");
}

uint64_t DualRailRegister::mask(const std::string &name) const {
    return uint64_t{1} << (num_dofs() - 1 - index(name));
}

void DualRailRegister::apply(const std::string &name, const Matrix &u) {
    if (u.rows() != 2 || u.cols() != 2 || !is_unitary(u, 1e-10)) {
        throw std::invalid_argument("dof operation must be a 2x2 unitary");
    }
    const uint64_t m = mask(name);
    for (uint64_t i = 0; i < static_cast<uint64_t>(amps_.size()); i++) {
        if (i & m) {
            continue;
        }
        const Complex a0 = amps_(static_cast<Eigen::Index>(i));
        const Complex a1 = amps_(static_cast<Eigen::Index>(i | m));
        amps_(static_cast<Eigen::Index>(i)) = u(0, 0) * a0 + u(0, 1) * a1;
        amps_(static_cast<Eigen::Index>(i | m)) = u(1, 0) * a0 + u(1, 1) * a1;
        // Tags travel with the probe, not the photon; mixing two amplitudes
        // with different tags would need the probe entangled in the result.
        if (tags_[i] != tags_[i | m] && (std::norm(a0) > kPresent && std::norm(a1) > kPresent)) {
            throw std::logic_error("mixing amplitudes with different probe tags; measure the probe first");
        }
        const int tag = std::norm(a0) > kPresent ? tags_[i] : tags_[i | m];
        tags_[i] = tags_[i | m] = tag;
    }
}

void DualRailRegister::apply_controlled(const std::string &control, int value, const std::string &target,
                                        const Matrix &u) {
    if (value != 0 && value != 1) {
        throw std::invalid_argument("control value must be 0 or 1");
    }
    if (control == target) {
        throw std::invalid_argument("control and target must differ");
    }
    const uint64_t cm = mask(control);
    const Vector before = amps_;
    const std::vector<int> before_tags = tags_;
    apply(target, u);
    for (uint64_t i = 0; i < static_cast<uint64_t>(amps_.size()); i++) {
        if (((i & cm) != 0) != (value == 1)) {
            amps_(static_cast<Eigen::Index>(i)) = before(static_cast<Eigen::Index>(i));
            tags_[i] = before_tags[i];
        }
    }
}

void DualRailRegister::bbs_mix(const std::string &name) {
    const double r = 1.0 / std::sqrt(2.0);
    apply(name, Matrix{{r, r}, {r, -r}});
}

void DualRailRegister::cross_kerr(const std::string &name, int path, int n) {
    if (path != 0 && path != 1) {
        throw std::invalid_argument("path must be 0 or 1");
    }
    const uint64_t m = mask(name);
    for (uint64_t i = 0; i < static_cast<uint64_t>(amps_.size()); i++) {
        if (((i & m) != 0) == (path == 1)) {
            tags_[i] += n;
        }
    }
}

void DualRailRegister::attach(const std::vector<std::string> &names, const Vector &state) {
    if (state.size() != (Eigen::Index{1} << names.size())) {
        throw std::invalid_argument("attached state does not match its dof count");
    }
    if (std::abs(state.squaredNorm() - 1.0) > kNormTol) {
        throw std::invalid_argument("attached state must have unit norm");
    }
    for (const auto &n : names) {
        if (has(n)) {
            throw std::invalid_argument("dof '" + n + "' already present");
        }
    }
    detail::check_qubit_count(num_dofs() + static_cast<int>(names.size()));
    const Eigen::Index k = state.size();
    Vector out(amps_.size() * k);
    std::vector<int> tags(static_cast<size_t>(out.size()));
    for (Eigen::Index i = 0; i < amps_.size(); i++) {
        out.segment(i * k, k) = amps_(i) * state;
        for (Eigen::Index j = 0; j < k; j++) {
            tags[static_cast<size_t>(i * k + j)] = tags_[static_cast<size_t>(i)];
        }
    }
    names_.insert(names_.end(), names.begin(), names.end());
    amps_ = std::move(out);
    tags_ = std::move(tags);
}

std::map<int, double> DualRailRegister::class_probabilities(bool merge) const {
    std::map<int, double> out;
    for (Eigen::Index i = 0; i < amps_.size(); i++) {
        const double w = std::norm(amps_(i));
        if (w > kPresent) {
            const int t = tags_[static_cast<size_t>(i)];
            out[merge ? std::abs(t) : t] += w;
        }
    }
    return out;
}

double DualRailRegister::project_class(int cls, bool merge) {
    double kept = 0;
    for (Eigen::Index i = 0; i < amps_.size(); i++) {
        const int t = tags_[static_cast<size_t>(i)];
        if ((merge ? std::abs(t) : t) != cls) {
            amps_(i) = 0;
        } else {
            kept += std::norm(amps_(i));
        }
    }
    if (kept <= kPresent) {
        throw ImpossibleBranchError("probe class " + std::to_string(cls) + " has zero weight");
    }
    amps_ /= std::sqrt(kept);
    std::fill(tags_.begin(), tags_.end(), 0);
    return kept;
}

double DualRailRegister::bit_probability(const std::string &name, int value) const {
    const uint64_t m = mask(name);
    double p = 0;
    for (uint64_t i = 0; i < static_cast<uint64_t>(amps_.size()); i++) {
        if (((i & m) != 0) == (value == 1)) {
            p += std::norm(amps_(static_cast<Eigen::Index>(i)));
        }
    }
    return p;
}

double DualRailRegister::project_bit(const std::string &name, int value) {
    if (value != 0 && value != 1) {
        throw std::invalid_argument("bit value must be 0 or 1");
    }
    const uint64_t m = mask(name);
    double kept = 0;
    for (uint64_t i = 0; i < static_cast<uint64_t>(amps_.size()); i++) {
        if (((i & m) != 0) != (value == 1)) {
            amps_(static_cast<Eigen::Index>(i)) = 0;
        } else {
            kept += std::norm(amps_(static_cast<Eigen::Index>(i)));
        }
    }
    if (kept <= kPresent) {
        throw ImpossibleBranchError("dof '" + name + "' outcome " + std::to_string(value) + " has zero weight");
    }
    amps_ /= std::sqrt(kept);
    return kept;
}

Matrix DualRailRegister::reduced(const std::string &name) const {
    const uint64_t m = mask(name);
    Matrix rho = Matrix::Zero(2, 2);
    for (uint64_t i = 0; i < static_cast<uint64_t>(amps_.size()); i++) {
        if (i & m) {
            continue;
        }
        const Complex a0 = amps_(static_cast<Eigen::Index>(i));
        const Complex a1 = amps_(static_cast<Eigen::Index>(i | m));
        rho(0, 0) += a0 * std::conj(a0);
        rho(0, 1) += a0 * std::conj(a1);
        rho(1, 0) += a1 * std::conj(a0);
        rho(1, 1) += a1 * std::conj(a1);
    }
    return rho;
}

}  // namespace qcomm
