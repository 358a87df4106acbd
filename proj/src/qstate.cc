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

#include "qcomm/qstate.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <Eigen/Eigenvalues>

namespace qcomm {

namespace {

constexpr double kBranchFloor = 1e-14;

uint64_t qubit_mask(int num_qubits, int qubit) { return uint64_t{1} << (num_qubits - 1 - qubit); }

// offsets[g] is the state-index contribution of gate index g.
std::vector<uint64_t> target_offsets(int num_qubits, const std::vector<int> &targets) {
    const size_t k = targets.size();
    std::vector<uint64_t> offsets(size_t{1} << k, 0);
    for (size_t g = 0; g < offsets.size(); g++) {
        uint64_t off = 0;
        for (size_t j = 0; j < k; j++) {
            if ((g >> (k - 1 - j)) & 1) {
                off |= qubit_mask(num_qubits, targets[j]);
            }
        }
        offsets[g] = off;
    }
    return offsets;
}

}  // namespace

namespace detail {

void check_qubit_count(int num_qubits) {
    if (num_qubits < 0 || num_qubits > kMaxQubits) {
        throw std::invalid_argument("qubit count must be in [0, " + std::to_string(kMaxQubits) + "], got " +
                                    std::to_string(num_qubits));
    }
}

void check_targets(int num_qubits, const std::vector<int> &targets) {
    std::set<int> seen;
    for (int t : targets) {
        if (t < 0 || t >= num_qubits) {
            throw std::invalid_argument("target qubit " + std::to_string(t) + " out of range for " +
                                        std::to_string(num_qubits) + " qubits");
        }
        if (!seen.insert(t).second) {
            throw std::invalid_argument("duplicate target qubit " + std::to_string(t));
        }
    }
}

void apply_matrix(Vector &amps, int num_qubits, const Matrix &op, const std::vector<int> &targets) {
    apply_matrix_raw(amps.data(), num_qubits, op, targets);
}

void apply_matrix_raw(Complex *amps, int num_qubits, const Matrix &op, const std::vector<int> &targets) {
    const auto offsets = target_offsets(num_qubits, targets);
    if (static_cast<size_t>(op.rows()) != offsets.size() || op.rows() != op.cols()) {
        throw std::invalid_argument("operator dimension does not match target count");
    }
    uint64_t target_bits = 0;
    for (int t : targets) {
        target_bits |= qubit_mask(num_qubits, t);
    }
    const size_t k = offsets.size();
    std::vector<Complex> in(k);
    std::vector<Complex> out(k);
    const uint64_t dim = uint64_t{1} << num_qubits;
    for (uint64_t base = 0; base < dim; base++) {
        if (base & target_bits) {
            continue;
        }
        for (size_t g = 0; g < k; g++) {
            in[g] = amps[base | offsets[g]];
        }
        for (size_t r = 0; r < k; r++) {
            Complex acc = 0;
            for (size_t c = 0; c < k; c++) {
                acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
            }
            out[r] = acc;
        }
        for (size_t g = 0; g < k; g++) {
            amps[base | offsets[g]] = out[g];
        }
    }
}

Matrix conjugate(const Matrix &rho, int num_qubits, const Matrix &op, const std::vector<int> &targets) {
    // U rho column by column, then (conj(U) (U rho)^T)^T = U rho U^dag.
    Matrix left = rho;
    for (Eigen::Index c = 0; c < left.cols(); c++) {
        apply_matrix_raw(left.data() + c * left.rows(), num_qubits, op, targets);
    }
    Matrix right = left.transpose();
    const Matrix op_conj = op.conjugate();
    for (Eigen::Index c = 0; c < right.cols(); c++) {
        apply_matrix_raw(right.data() + c * right.rows(), num_qubits, op_conj, targets);
    }
    return right.transpose();
}

}  // namespace detail

std::string bits_to_string(uint64_t value, int width) {
    std::string s(static_cast<size_t>(width), '0');
    for (int i = 0; i < width; i++) {
        if ((value >> (width - 1 - i)) & 1) {
            s[static_cast<size_t>(i)] = '1';
        }
    }
    return s;
}

// ---------------------------------------------------------------- PureState

PureState::PureState() : num_qubits_(0), amplitudes_(Vector::Ones(1)) {}

PureState::PureState(int num_qubits, Vector amplitudes) : num_qubits_(num_qubits) {
    detail::check_qubit_count(num_qubits);
    if (static_cast<uint64_t>(amplitudes.size()) != (uint64_t{1} << num_qubits)) {
        throw std::invalid_argument("amplitude vector length must be 2^num_qubits");
    }
    const double norm = amplitudes.norm();
    if (!(norm > 1e-300) || !std::isfinite(norm)) {
        throw std::invalid_argument("amplitude vector has zero or non-finite norm");
    }
    amplitudes_ = amplitudes / norm;
}

PureState PureState::basis(int num_qubits, uint64_t index) {
    detail::check_qubit_count(num_qubits);
    const uint64_t dim = uint64_t{1} << num_qubits;
    if (index >= dim) {
        throw std::invalid_argument("basis index out of range");
    }
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(num_qubits, std::move(v));
}

PureState PureState::zeros(int num_qubits) { return basis(num_qubits, 0); }

PureState PureState::from_bits(std::string_view bits) {
    uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit-string may contain only 0 and 1");
        }
        index = (index << 1) | static_cast<uint64_t>(c == '1');
    }
    return basis(static_cast<int>(bits.size()), index);
}

MixedState PureState::density() const {
    return MixedState::trusted(num_qubits_, amplitudes_ * amplitudes_.adjoint());
}

// --------------------------------------------------------------- MixedState

MixedState::MixedState(int num_qubits, Matrix matrix, Unchecked)
    : num_qubits_(num_qubits), matrix_(std::move(matrix)) {}

MixedState MixedState::trusted(int num_qubits, Matrix matrix) {
    detail::check_qubit_count(num_qubits);
    return MixedState(num_qubits, std::move(matrix), Unchecked{});
}

MixedState::MixedState(int num_qubits, Matrix matrix) : num_qubits_(num_qubits), matrix_(std::move(matrix)) {
    detail::check_qubit_count(num_qubits);
    const auto dim = static_cast<Eigen::Index>(uint64_t{1} << num_qubits);
    if (matrix_.rows() != dim || matrix_.cols() != dim) {
        throw std::invalid_argument("density matrix must be 2^n x 2^n");
    }
    if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0)) > 1e-10) {
        throw std::invalid_argument("density matrix trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(matrix_, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw std::invalid_argument("density matrix has a negative eigenvalue");
    }
}

MixedState MixedState::maximally_mixed(int num_qubits) {
    detail::check_qubit_count(num_qubits);
    const auto dim = static_cast<Eigen::Index>(uint64_t{1} << num_qubits);
    return trusted(num_qubits, Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

double MixedState::purity() const { return (matrix_ * matrix_).trace().real(); }

double MixedState::trace() const { return matrix_.trace().real(); }

// --------------------------------------------------------- MeasurementBasis

MeasurementBasis MeasurementBasis::computational(int num_qubits) {
    detail::check_qubit_count(num_qubits);
    MeasurementBasis b;
    b.kind = BasisKind::kComputational;
    const uint64_t dim = uint64_t{1} << num_qubits;
    for (uint64_t i = 0; i < dim; i++) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(i)) = 1.0;
        b.vectors.push_back(v);
        b.labels.push_back(bits_to_string(i, num_qubits));
    }
    return b;
}

MeasurementBasis MeasurementBasis::diagonal() {
    const double r = 1.0 / std::sqrt(2.0);
    MeasurementBasis b;
    b.kind = BasisKind::kDiagonal;
    b.vectors = {Vector{{r, r}}, Vector{{r, -r}}};
    b.labels = {"+", "-"};
    return b;
}

MeasurementBasis MeasurementBasis::bell() {
    const double r = 1.0 / std::sqrt(2.0);
    MeasurementBasis b;
    b.kind = BasisKind::kBell;
    b.vectors = {Vector{{r, 0, 0, r}}, Vector{{r, 0, 0, -r}}, Vector{{0, r, r, 0}}, Vector{{0, r, -r, 0}}};
    b.labels = {"phi+", "phi-", "psi+", "psi-"};
    return b;
}

MeasurementBasis MeasurementBasis::custom(std::vector<Vector> vectors, std::vector<std::string> labels) {
    MeasurementBasis b;
    b.kind = BasisKind::kCustom;
    b.vectors = std::move(vectors);
    b.labels = std::move(labels);
    b.validate();
    return b;
}

int MeasurementBasis::num_qubits() const {
    if (vectors.empty()) {
        throw std::invalid_argument("measurement basis is empty");
    }
    const auto dim = static_cast<uint64_t>(vectors.front().size());
    int n = 0;
    while ((uint64_t{1} << n) < dim) {
        n++;
    }
    if ((uint64_t{1} << n) != dim) {
        throw std::invalid_argument("basis vector length is not a power of two");
    }
    return n;
}

void MeasurementBasis::validate() const {
    const int n = num_qubits();
    const auto dim = static_cast<Eigen::Index>(uint64_t{1} << n);
    if (static_cast<Eigen::Index>(vectors.size()) != dim) {
        throw std::invalid_argument("basis must contain 2^k vectors");
    }
    if (labels.size() != vectors.size()) {
        throw std::invalid_argument("basis needs one label per vector");
    }
    Matrix sum = Matrix::Zero(dim, dim);
    for (size_t i = 0; i < vectors.size(); i++) {
        if (vectors[i].size() != dim) {
            throw std::invalid_argument("basis vectors differ in length");
        }
        for (size_t j = 0; j < vectors.size(); j++) {
            const Complex ip = vectors[i].dot(vectors[j]);
            if (std::abs(ip - Complex(i == j ? 1.0 : 0.0)) > 1e-10) {
                throw std::invalid_argument("basis vectors are not orthonormal");
            }
        }
        sum += vectors[i] * vectors[i].adjoint();
    }
    if ((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-10) {
        throw std::invalid_argument("basis is not complete");
    }
}

Matrix MeasurementBasis::to_computational() const {
    const auto dim = static_cast<Eigen::Index>(vectors.size());
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        m.row(i) = vectors[static_cast<size_t>(i)].adjoint();
    }
    return m;
}

// ----------------------------------------------------------------- products

PureState tensor_product(const PureState &a, const PureState &b) {
    detail::check_qubit_count(a.num_qubits() + b.num_qubits());
    const auto &x = a.amplitudes();
    const auto &y = b.amplitudes();
    Vector out(x.size() * y.size());
    for (Eigen::Index i = 0; i < x.size(); i++) {
        out.segment(i * y.size(), y.size()) = x(i) * y;
    }
    return PureState(a.num_qubits() + b.num_qubits(), std::move(out));
}

MixedState tensor_product(const MixedState &a, const MixedState &b) {
    detail::check_qubit_count(a.num_qubits() + b.num_qubits());
    const auto &x = a.matrix();
    const auto &y = b.matrix();
    Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
    for (Eigen::Index i = 0; i < x.rows(); i++) {
        for (Eigen::Index j = 0; j < x.cols(); j++) {
            out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
        }
    }
    return MixedState::trusted(a.num_qubits() + b.num_qubits(), std::move(out));
}

bool is_unitary(const Matrix &u, double tolerance) {
    if (u.rows() != u.cols()) {
        return false;
    }
    return (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).cwiseAbs().maxCoeff() <= tolerance;
}

namespace {

void check_gate(int num_qubits, const Matrix &u, const std::vector<int> &targets) {
    detail::check_targets(num_qubits, targets);
    if (targets.empty()) {
        throw std::invalid_argument("unitary needs at least one target");
    }
    if (u.rows() != (Eigen::Index{1} << targets.size()) || u.cols() != u.rows()) {
        throw std::invalid_argument("unitary dimension does not match target count");
    }
    if (!is_unitary(u, 1e-8)) {
        throw std::invalid_argument("matrix is not unitary");
    }
}

}  // namespace

PureState apply_unitary(const PureState &state, const Matrix &u, const std::vector<int> &targets) {
    check_gate(state.num_qubits(), u, targets);
    Vector amps = state.amplitudes();
    detail::apply_matrix(amps, state.num_qubits(), u, targets);
    return PureState(state.num_qubits(), std::move(amps));
}

MixedState apply_unitary(const MixedState &state, const Matrix &u, const std::vector<int> &targets) {
    check_gate(state.num_qubits(), u, targets);
    return MixedState::trusted(state.num_qubits(),
                               detail::conjugate(state.matrix(), state.num_qubits(), u, targets));
}

// -------------------------------------------------------------- measurement

namespace {

void check_measurement(int num_qubits, const MeasurementBasis &basis, const std::vector<int> &targets) {
    detail::check_targets(num_qubits, targets);
    if (basis.num_qubits() != static_cast<int>(targets.size())) {
        throw std::invalid_argument("basis size does not match target count");
    }
}

// Rotates the targets so that basis vector i becomes |i>.
Vector rotated_amplitudes(const PureState &state, const MeasurementBasis &basis, const std::vector<int> &targets) {
    Vector amps = state.amplitudes();
    if (basis.kind != BasisKind::kComputational) {
        detail::apply_matrix(amps, state.num_qubits(), basis.to_computational(), targets);
    }
    return amps;
}

uint64_t target_value(uint64_t index, int num_qubits, const std::vector<int> &targets) {
    uint64_t v = 0;
    for (int t : targets) {
        v = (v << 1) | ((index >> (num_qubits - 1 - t)) & 1);
    }
    return v;
}

}  // namespace

std::vector<double> outcome_probabilities(const PureState &state, const MeasurementBasis &basis,
                                          const std::vector<int> &targets) {
    check_measurement(state.num_qubits(), basis, targets);
    const Vector amps = rotated_amplitudes(state, basis, targets);
    std::vector<double> probs(basis.vectors.size(), 0.0);
    for (Eigen::Index i = 0; i < amps.size(); i++) {
        probs[target_value(static_cast<uint64_t>(i), state.num_qubits(), targets)] += std::norm(amps(i));
    }
    return probs;
}

std::vector<double> outcome_probabilities(const MixedState &state, const MeasurementBasis &basis,
                                          const std::vector<int> &targets) {
    check_measurement(state.num_qubits(), basis, targets);
    Matrix rho = state.matrix();
    if (basis.kind != BasisKind::kComputational) {
        rho = detail::conjugate(rho, state.num_qubits(), basis.to_computational(), targets);
    }
    std::vector<double> probs(basis.vectors.size(), 0.0);
    for (Eigen::Index i = 0; i < rho.rows(); i++) {
        probs[target_value(static_cast<uint64_t>(i), state.num_qubits(), targets)] += rho(i, i).real();
    }
    return probs;
}

namespace {

std::optional<PureState> collapse_rotated(const PureState &state, const MeasurementBasis &basis,
                                          const std::vector<int> &targets, const Vector &rotated, size_t index,
                                          double *probability) {
    Vector kept = Vector::Zero(rotated.size());
    double p = 0;
    for (Eigen::Index i = 0; i < rotated.size(); i++) {
        if (target_value(static_cast<uint64_t>(i), state.num_qubits(), targets) == index) {
            kept(i) = rotated(i);
            p += std::norm(rotated(i));
        }
    }
    *probability = p;
    if (p < kBranchFloor) {
        return std::nullopt;
    }
    if (basis.kind != BasisKind::kComputational) {
        detail::apply_matrix(kept, state.num_qubits(), basis.to_computational().adjoint(), targets);
    }
    return PureState(state.num_qubits(), std::move(kept));
}

}  // namespace

std::vector<MeasurementBranch> measure_branches(const PureState &state, const MeasurementBasis &basis,
                                                const std::vector<int> &targets) {
    check_measurement(state.num_qubits(), basis, targets);
    const Vector rotated = rotated_amplitudes(state, basis, targets);
    std::vector<MeasurementBranch> out;
    for (size_t i = 0; i < basis.vectors.size(); i++) {
        double p = 0;
        auto collapsed = collapse_rotated(state, basis, targets, rotated, i, &p);
        out.push_back(MeasurementBranch{basis.labels[i], p, std::move(collapsed)});
    }
    return out;
}

PureState collapse(const PureState &state, const MeasurementBasis &basis, const std::vector<int> &targets,
                   size_t index) {
    check_measurement(state.num_qubits(), basis, targets);
    if (index >= basis.vectors.size()) {
        throw std::invalid_argument("outcome index out of range");
    }
    const Vector rotated = rotated_amplitudes(state, basis, targets);
    double p = 0;
    auto collapsed = collapse_rotated(state, basis, targets, rotated, index, &p);
    if (!collapsed) {
        throw ImpossibleBranchError("outcome '" + basis.labels[index] + "' has zero probability");
    }
    return *collapsed;
}

size_t sample_inverse_cdf(const std::vector<double> &weights, Rng &rng) {
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (weights.empty() || !(total > 0)) {
        throw std::invalid_argument("cannot sample from an empty distribution");
    }
    std::uniform_real_distribution<double> uniform(0.0, total);
    const double u = uniform(rng);
    double acc = 0;
    size_t last_positive = 0;
    for (size_t i = 0; i < weights.size(); i++) {
        if (weights[i] > 0) {
            last_positive = i;
        }
        acc += weights[i];
        if (u < acc && weights[i] > 0) {
            return i;
        }
    }
    return last_positive;
}

MeasureResult measure(const PureState &state, const MeasurementBasis &basis, const std::vector<int> &targets,
                      uint64_t shots, Rng &rng, std::optional<size_t> forced) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be positive");
    }
    MeasureResult result;
    result.probabilities = outcome_probabilities(state, basis, targets);
    result.histogram.shots = shots;
    std::optional<size_t> first;
    for (uint64_t s = 0; s < shots; s++) {
        const size_t i = sample_inverse_cdf(result.probabilities, rng);
        result.histogram.counts[basis.labels[i]]++;
        if (!first) {
            first = i;
        }
    }
    const size_t record = forced.value_or(*first);
    result.record_label = basis.labels.at(record);
    result.collapsed = collapse(state, basis, targets, record);
    return result;
}

// ------------------------------------------------------------ partial trace

namespace {

void check_keep(int num_qubits, const std::vector<int> &keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial trace needs at least one kept qubit");
    }
    detail::check_targets(num_qubits, keep);
}

std::vector<int> traced_qubits(int num_qubits, const std::vector<int> &keep) {
    std::vector<int> env;
    for (int q = 0; q < num_qubits; q++) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            env.push_back(q);
        }
    }
    return env;
}

}  // namespace

MixedState partial_trace(const PureState &psi, const std::vector<int> &keep) {
    const int n = psi.num_qubits();
    check_keep(n, keep);
    const auto env = traced_qubits(n, keep);
    const auto keep_off = target_offsets(n, keep);
    const auto env_off = target_offsets(n, env);
    Matrix a(static_cast<Eigen::Index>(keep_off.size()), static_cast<Eigen::Index>(env_off.size()));
    for (size_t i = 0; i < keep_off.size(); i++) {
        for (size_t e = 0; e < env_off.size(); e++) {
            a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(e)) =
                psi.amplitude(keep_off[i] | env_off[e]);
        }
    }
    return MixedState::trusted(static_cast<int>(keep.size()), a * a.adjoint());
}

MixedState partial_trace(const MixedState &rho, const std::vector<int> &keep) {
    const int n = rho.num_qubits();
    check_keep(n, keep);
    const auto env = traced_qubits(n, keep);
    const auto keep_off = target_offsets(n, keep);
    const auto env_off = target_offsets(n, env);
    const auto dk = static_cast<Eigen::Index>(keep_off.size());
    Matrix out = Matrix::Zero(dk, dk);
    const Matrix &m = rho.matrix();
    for (size_t i = 0; i < keep_off.size(); i++) {
        for (size_t j = 0; j < keep_off.size(); j++) {
            Complex acc = 0;
            for (uint64_t e : env_off) {
                acc += m(static_cast<Eigen::Index>(keep_off[i] | e), static_cast<Eigen::Index>(keep_off[j] | e));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return MixedState::trusted(static_cast<int>(keep.size()), std::move(out));
}

// ----------------------------------------------------------------- fidelity

namespace {

// Negative eigenvalues down to -1e-12 are clamped to zero; anything more
// negative is an invariant violation. Positive values below the round-off
// floor are zeroed too, since their square roots (~1e-8) would otherwise
// leak into the fidelity of rank-deficient states.
Eigen::VectorXd clamped_eigenvalues(const Eigen::VectorXd &values) {
    Eigen::VectorXd out = values;
    const double floor = 32.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(values.size()) *
                         std::max(1.0, values.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < out.size(); i++) {
        if (out(i) < -1e-12) {
            throw std::domain_error("matrix square root of a matrix with eigenvalue " + std::to_string(out(i)));
        }
        if (out(i) < floor) {
            out(i) = 0;
        }
    }
    return out;
}

}  // namespace

double fidelity(const MixedState &sigma, const MixedState &rho) {
    if (sigma.num_qubits() != rho.num_qubits()) {
        throw std::invalid_argument("fidelity of states with different qubit counts");
    }
    // Work in sigma's eigenbasis: sqrt(sigma) rho sqrt(sigma) = D V^dag rho V D.
    Eigen::SelfAdjointEigenSolver<Matrix> es_sigma(sigma.matrix());
    const Eigen::VectorXcd d = clamped_eigenvalues(es_sigma.eigenvalues()).cwiseSqrt().cast<Complex>();
    const Matrix &v = es_sigma.eigenvectors();
    Matrix inner = d.asDiagonal() * (v.adjoint() * rho.matrix() * v) * d.asDiagonal();
    inner = (inner + inner.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(inner, Eigen::EigenvaluesOnly);
    const double root_sum = clamped_eigenvalues(es.eigenvalues()).cwiseSqrt().sum();
    return std::clamp(root_sum * root_sum, 0.0, 1.0);
}

double fidelity(const PureState &psi, const MixedState &rho) {
    if (psi.num_qubits() != rho.num_qubits()) {
        throw std::invalid_argument("fidelity of states with different qubit counts");
    }
    const Complex f = psi.amplitudes().dot(rho.matrix() * psi.amplitudes());
    return std::clamp(f.real(), 0.0, 1.0);
}

double fidelity(const PureState &a, const PureState &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw std::invalid_argument("fidelity of states with different qubit counts");
    }
    return std::clamp(std::norm(a.amplitudes().dot(b.amplitudes())), 0.0, 1.0);
}

// --------------------------------------------------------------- tomography

Matrix pauli(char label) {
    const Complex i(0, 1);
    switch (label) {
        case 'I':
            return Matrix::Identity(2, 2);
        case 'X':
            return Matrix{{0, 1}, {1, 0}};
        case 'Y':
            return Matrix{{0, -i}, {i, 0}};
        case 'Z':
            return Matrix{{1, 0}, {0, -1}};
        default:
            throw std::invalid_argument(std::string("unknown Pauli label '") + label + "'");
    }
}

Matrix pauli_string_matrix(std::string_view labels) {
    Matrix out = Matrix::Identity(1, 1);
    for (char c : labels) {
        const Matrix p = pauli(c);
        Matrix next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index r = 0; r < out.rows(); r++) {
            for (Eigen::Index c2 = 0; c2 < out.cols(); c2++) {
                next.block(r * 2, c2 * 2, 2, 2) = out(r, c2) * p;
            }
        }
        out = std::move(next);
    }
    return out;
}

std::vector<std::string> all_pauli_strings(int num_qubits) {
    detail::check_qubit_count(num_qubits);
    std::vector<std::string> out{""};
    for (int q = 0; q < num_qubits; q++) {
        std::vector<std::string> next;
        for (const auto &s : out) {
            for (char c : {'I', 'X', 'Y', 'Z'}) {
                next.push_back(s + c);
            }
        }
        out = std::move(next);
    }
    return out;
}

std::map<std::string, double> pauli_expectations(const MixedState &rho) {
    std::map<std::string, double> out;
    for (const auto &s : all_pauli_strings(rho.num_qubits())) {
        out[s] = (pauli_string_matrix(s) * rho.matrix()).trace().real();
    }
    return out;
}

std::map<std::string, double> sample_pauli_expectations(const MixedState &rho, uint64_t shots, Rng &rng) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be positive");
    }
    const int n = rho.num_qubits();
    std::vector<int> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 0);
    std::map<std::string, double> out;
    for (const auto &s : all_pauli_strings(n)) {
        // Eigenbasis of the string, ordered so the computational index of an
        // eigenvector encodes the parity of its non-identity letters.
        Eigen::SelfAdjointEigenSolver<Matrix> es(pauli_string_matrix(s));
        std::vector<double> weights;
        std::vector<double> signs;
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); k++) {
            const Vector v = es.eigenvectors().col(k);
            weights.push_back(std::max(0.0, v.dot(rho.matrix() * v).real()));
            signs.push_back(es.eigenvalues()(k) > 0 ? 1.0 : -1.0);
        }
        double acc = 0;
        for (uint64_t k = 0; k < shots; k++) {
            acc += signs[sample_inverse_cdf(weights, rng)];
        }
        out[s] = acc / static_cast<double>(shots);
    }
    return out;
}

MixedState tomography_reconstruct(const std::map<std::string, double> &expectations) {
    if (expectations.empty()) {
        throw std::invalid_argument("no expectations supplied");
    }
    const int n = static_cast<int>(expectations.begin()->first.size());
    detail::check_qubit_count(n);
    const auto dim = static_cast<Eigen::Index>(uint64_t{1} << n);
    Matrix rho = Matrix::Zero(dim, dim);
    for (const auto &s : all_pauli_strings(n)) {
        const auto it = expectations.find(s);
        if (it == expectations.end()) {
            throw std::invalid_argument("missing expectation for Pauli string " + (s.empty() ? "<empty>" : s));
        }
        rho += it->second * pauli_string_matrix(s);
    }
    if (expectations.size() != static_cast<size_t>(dim * dim)) {
        throw std::invalid_argument("expectations contain strings of the wrong length");
    }
    if (std::abs(expectations.at(std::string(static_cast<size_t>(n), 'I')) - 1.0) > 1e-8) {
        throw std::invalid_argument("identity expectation must be 1");
    }
    rho /= static_cast<double>(dim);
    rho = (rho + rho.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    Eigen::VectorXd values = es.eigenvalues().cwiseMax(0.0);
    if (values.minCoeff() == 0.0 && es.eigenvalues().minCoeff() < 0.0) {
        values /= values.sum();
        rho = es.eigenvectors() * values.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
    }
    return MixedState::trusted(n, std::move(rho));
}

PureState random_pure_state(int num_qubits, Rng &rng) {
    detail::check_qubit_count(num_qubits);
    std::normal_distribution<double> g(0.0, 1.0);
    Vector v(static_cast<Eigen::Index>(uint64_t{1} << num_qubits));
    for (Eigen::Index i = 0; i < v.size(); i++) {
        const double re = g(rng);
        v(i) = Complex(re, g(rng));
    }
    return PureState(num_qubits, std::move(v));
}

MixedState random_mixed_state(int num_qubits, Rng &rng) {
    detail::check_qubit_count(num_qubits);
    std::normal_distribution<double> g(0.0, 1.0);
    const auto dim = static_cast<Eigen::Index>(uint64_t{1} << num_qubits);
    Matrix m(dim, dim);
    for (Eigen::Index i = 0; i < dim; i++) {
        for (Eigen::Index j = 0; j < dim; j++) {
            const double re = g(rng);
            m(i, j) = Complex(re, g(rng));
        }
    }
    Matrix rho = m * m.adjoint();
    rho /= rho.trace().real();
    return MixedState(num_qubits, (rho + rho.adjoint()) / 2.0);
}

}  // namespace qcomm
