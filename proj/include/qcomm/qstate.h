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

#ifndef QCOMM_QSTATE_H
#define QCOMM_QSTATE_H

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qcomm {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;
using Rng = std::mt19937_64;

inline constexpr int kMaxQubits = 20;

/// Raised when a measurement is forced onto an outcome of zero probability.
class ImpossibleBranchError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

class MixedState;

/// Normalized amplitude vector over n qubits.
///
/// Qubit 0 is the leftmost ket symbol and the most significant bit of the
/// basis index, so |01> has amplitude index 1.
class PureState {
   public:
    /// The zero-qubit state (scalar 1).
    PureState();
    /// Normalizes `amplitudes`. Throws on a length mismatch, a zero vector,
    /// or more than kMaxQubits qubits.
    PureState(int num_qubits, Vector amplitudes);

    static PureState basis(int num_qubits, uint64_t index);
    static PureState zeros(int num_qubits);
    /// Computational basis state from a bit-string such as "0110".
    static PureState from_bits(std::string_view bits);

    int num_qubits() const { return num_qubits_; }
    uint64_t dimension() const { return uint64_t{1} << num_qubits_; }
    const Vector &amplitudes() const { return amplitudes_; }
    Complex amplitude(uint64_t index) const { return amplitudes_(static_cast<Eigen::Index>(index)); }
    MixedState density() const;

   private:
    int num_qubits_;
    Vector amplitudes_;
};

/// Trace-one positive semidefinite density matrix over n qubits.
class MixedState {
   public:
    /// Validates hermiticity, unit trace and eigenvalues >= -1e-10.
    MixedState(int num_qubits, Matrix matrix);

    /// Skips the eigenvalue check. For results of trace-preserving maps
    /// applied to states that were already valid.
    static MixedState trusted(int num_qubits, Matrix matrix);
    static MixedState maximally_mixed(int num_qubits);

    int num_qubits() const { return num_qubits_; }
    uint64_t dimension() const { return uint64_t{1} << num_qubits_; }
    const Matrix &matrix() const { return matrix_; }
    double purity() const;
    double trace() const;

   private:
    struct Unchecked {};
    MixedState(int num_qubits, Matrix matrix, Unchecked);
    int num_qubits_;
    Matrix matrix_;
};

enum class BasisKind { kComputational, kDiagonal, kBell, kCustom };

/// Orthonormal, complete set of vectors on a 2^k dimensional subspace.
struct MeasurementBasis {
    BasisKind kind = BasisKind::kCustom;
    std::vector<Vector> vectors;
    std::vector<std::string> labels;

    static MeasurementBasis computational(int num_qubits);
    /// {|+>, |->} labelled "+" and "-".
    static MeasurementBasis diagonal();
    /// {phi+, phi-, psi+, psi-}.
    static MeasurementBasis bell();
    /// Throws unless the vectors are orthonormal and complete within 1e-10.
    static MeasurementBasis custom(std::vector<Vector> vectors, std::vector<std::string> labels);

    int num_qubits() const;
    /// Row i is <v_i|; applying it maps v_i to |i>.
    Matrix to_computational() const;
    void validate() const;
};

struct ShotHistogram {
    uint64_t shots = 0;
    std::map<std::string, uint64_t> counts;
};

struct MeasurementBranch {
    std::string label;
    double probability;
    /// Absent when the branch has probability below 1e-14.
    std::optional<PureState> state;
};

struct MeasureResult {
    std::vector<double> probabilities;
    ShotHistogram histogram;
    std::string record_label;
    PureState collapsed;
};

std::string bits_to_string(uint64_t value, int width);

PureState tensor_product(const PureState &a, const PureState &b);
MixedState tensor_product(const MixedState &a, const MixedState &b);

bool is_unitary(const Matrix &u, double tolerance = 1e-8);

/// Applies `u` to the listed qubits; targets[0] is the most significant
/// qubit of u's index. Rejects non-unitary matrices and bad targets.
PureState apply_unitary(const PureState &state, const Matrix &u, const std::vector<int> &targets);
MixedState apply_unitary(const MixedState &state, const Matrix &u, const std::vector<int> &targets);

/// Born probabilities of `basis` on `targets`.
std::vector<double> outcome_probabilities(const PureState &state, const MeasurementBasis &basis,
                                          const std::vector<int> &targets);
std::vector<double> outcome_probabilities(const MixedState &state, const MeasurementBasis &basis,
                                          const std::vector<int> &targets);

/// Every outcome with its exact probability and collapsed state. After
/// collapse the target qubits hold the basis vector of the outcome.
std::vector<MeasurementBranch> measure_branches(const PureState &state, const MeasurementBasis &basis,
                                                const std::vector<int> &targets);

/// Collapses onto outcome `index`, or throws ImpossibleBranchError.
PureState collapse(const PureState &state, const MeasurementBasis &basis, const std::vector<int> &targets,
                   size_t index);

/// Draws `shots` outcomes by inverse CDF. The collapsed state is the one of
/// `forced` when given, otherwise of the first shot.
MeasureResult measure(const PureState &state, const MeasurementBasis &basis, const std::vector<int> &targets,
                      uint64_t shots, Rng &rng, std::optional<size_t> forced = std::nullopt);

/// Inverse-CDF draw from a discrete distribution (need not be normalized).
size_t sample_inverse_cdf(const std::vector<double> &weights, Rng &rng);

/// Keeps `keep` in the given order. Empty `keep` is rejected.
MixedState partial_trace(const MixedState &rho, const std::vector<int> &keep);
MixedState partial_trace(const PureState &psi, const std::vector<int> &keep);

/// Uhlmann fidelity (Tr sqrt(sqrt(s) r sqrt(s)))^2.
double fidelity(const MixedState &sigma, const MixedState &rho);
double fidelity(const PureState &psi, const MixedState &rho);
double fidelity(const PureState &a, const PureState &b);

/// 2x2 Pauli for 'I', 'X', 'Y' or 'Z'.
Matrix pauli(char label);
Matrix pauli_string_matrix(std::string_view labels);
std::vector<std::string> all_pauli_strings(int num_qubits);

/// tr(P rho) for every n-letter Pauli string P.
std::map<std::string, double> pauli_expectations(const MixedState &rho);

/// Per-string sampled estimates from `shots` eigenbasis measurements.
std::map<std::string, double> sample_pauli_expectations(const MixedState &rho, uint64_t shots, Rng &rng);

/// rho = sum_P <P> P / 2^n, then negative eigenvalues are clamped to zero
/// and the trace renormalized.
MixedState tomography_reconstruct(const std::map<std::string, double> &expectations);

/// Haar-random pure state from normalized complex Gaussian amplitudes.
PureState random_pure_state(int num_qubits, Rng &rng);
/// Full-rank random density matrix G G^dag / tr(G G^dag), G complex Ginibre.
MixedState random_mixed_state(int num_qubits, Rng &rng);

namespace detail {

void check_qubit_count(int num_qubits);
void check_targets(int num_qubits, const std::vector<int> &targets);
/// In-place op on targets; `op` need not be unitary.
void apply_matrix(Vector &amps, int num_qubits, const Matrix &op, const std::vector<int> &targets);
/// Same on a raw contiguous block of 2^num_qubits amplitudes.
void apply_matrix_raw(Complex *amps, int num_qubits, const Matrix &op, const std::vector<int> &targets);
/// op * rho * op^dagger on targets.
Matrix conjugate(const Matrix &rho, int num_qubits, const Matrix &op, const std::vector<int> &targets);

}  // namespace detail

}  // namespace qcomm

#endif
