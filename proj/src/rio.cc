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

#include "qcomm/rio.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace qcomm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr int kMaxCjrioPhotons = 7;

Matrix x_pow(int e) { return (e & 1) ? pauli('X') : pauli('I'); }
Matrix z_pow(int e) { return (e & 1) ? pauli('Z') : pauli('I'); }

Complex random_phase(Rng &rng) {
    std::uniform_real_distribution<double> u(0.0, 2 * kPi);
    return std::polar(1.0, u(rng));
}

double fidelity_with(const Matrix &rho, const Vector &target) {
    return (target.adjoint() * rho * target)(0, 0).real();
}

// Walks every branch of a protocol by re-running it with a forced choice
// sequence, or draws one branch per run in sampled mode.
class Chooser {
   public:
    Chooser(RunMode mode, Rng *rng) : mode_(mode), rng_(rng) {}

    size_t pick(const std::vector<double> &weights) {
        if (weights.empty()) {
            throw std::logic_error("no outcome to choose from");
        }
        if (mode_ == RunMode::kSampled) {
            return sample_inverse_cdf(weights, *rng_);
        }
        if (pos_ < choices_.size()) {
            if (sizes_[pos_] != weights.size()) {
                throw std::logic_error("branch structure changed between enumeration passes");
            }
            return choices_[pos_++];
        }
        choices_.push_back(0);
        sizes_.push_back(weights.size());
        pos_++;
        return 0;
    }

    /// Moves to the next unexplored branch; false once all are done.
    bool advance() {
        pos_ = 0;
        while (!choices_.empty() && choices_.back() + 1 >= sizes_.back()) {
            choices_.pop_back();
            sizes_.pop_back();
        }
        if (choices_.empty()) {
            return false;
        }
        choices_.back()++;
        return true;
    }

   private:
    RunMode mode_;
    Rng *rng_;
    std::vector<size_t> choices_;
    std::vector<size_t> sizes_;
    size_t pos_ = 0;
};

struct Trajectory {
    RioBranch branch{{}, 1.0, 0.0, {}, 0};

    void note(const std::string &name, int value) { branch.outcomes.emplace_back(name, value); }
};

// Reads the probe through the homodyne model, following the chooser in
// analytic mode.
DualRailRegister readout(const HomodyneModel &model, const DualRailRegister &reg, int max_class, bool merge,
                         RunMode mode, Rng *rng, Chooser &chooser, Trajectory &t, const std::string &name) {
    auto branches = homodyne_discriminate(model, reg, max_class, merge, mode, rng);
    size_t i = 0;
    if (mode == RunMode::kAnalytic) {
        std::vector<double> w;
        for (const auto &b : branches) {
            w.push_back(b.result.probability);
        }
        i = chooser.pick(w);
    }
    const auto &chosen = branches[i];
    t.branch.probability *= chosen.result.probability;
    t.branch.error_probs.push_back(chosen.result.error_prob);
    t.note(name, chosen.result.outcome);
    return chosen.reg;
}

// Ideal probe readout for the multiparty scheme.
int pick_class(DualRailRegister &reg, bool merge, Chooser &chooser, Trajectory &t, const std::string &name) {
    const auto weights = reg.class_probabilities(merge);
    std::vector<int> classes;
    std::vector<double> w;
    for (const auto &[c, p] : weights) {
        classes.push_back(c);
        w.push_back(p);
    }
    const int cls = classes[chooser.pick(w)];
    t.branch.probability *= reg.project_class(cls, merge);
    t.note(name, cls);
    return cls;
}

int pick_bit(DualRailRegister &reg, const std::string &dof, Chooser &chooser, Trajectory &t,
             const std::string &name) {
    std::vector<int> values;
    std::vector<double> w;
    for (int v : {0, 1}) {
        const double p = reg.bit_probability(dof, v);
        if (p > 1e-24) {
            values.push_back(v);
            w.push_back(p);
        }
    }
    const int v = values[chooser.pick(w)];
    t.branch.probability *= reg.project_bit(dof, v);
    t.note(name, v);
    return v;
}

RioResult collect_runs(RunMode mode, uint64_t shots, uint64_t seed, uint64_t branch_limit,
                       const std::function<std::optional<Trajectory>(Chooser &, Rng *)> &once) {
    RioResult out;
    Rng rng(seed);
    if (mode == RunMode::kAnalytic) {
        Chooser chooser(mode, nullptr);
        do {
            auto t = once(chooser, nullptr);
            if (!t) {
                out.status = RioStatus::kHalted;
                out.branches.clear();
                return out;
            }
            out.branches.push_back(std::move(t->branch));
            if (out.branches.size() > branch_limit) {
                throw std::invalid_argument("exhaustive enumeration exceeds the branch limit of " +
                                            std::to_string(branch_limit) + "; use sampled mode");
            }
        } while (chooser.advance());
        return out;
    }
    if (shots == 0) {
        throw std::invalid_argument("shots must be positive");
    }
    std::map<std::string, size_t> index;
    for (uint64_t s = 0; s < shots; s++) {
        Chooser chooser(mode, &rng);
        auto t = once(chooser, &rng);
        if (!t) {
            out.status = RioStatus::kHalted;
            out.branches.clear();
            return out;
        }
        const std::string key = t->branch.label();
        auto it = index.find(key);
        if (it == index.end()) {
            index[key] = out.branches.size();
            t->branch.count = 1;
            out.branches.push_back(std::move(t->branch));
        } else {
            RioBranch &b = out.branches[it->second];
            b.fidelity += t->branch.fidelity;
            b.count++;
        }
    }
    for (auto &b : out.branches) {
        b.fidelity /= static_cast<double>(b.count);
        b.probability = static_cast<double>(b.count) / static_cast<double>(shots);
    }
    std::sort(out.branches.begin(), out.branches.end(),
              [](const RioBranch &a, const RioBranch &b) { return a.label() < b.label(); });
    return out;
}

void check_payload(const PureState &payload) {
    if (payload.num_qubits() != 1) {
        throw std::invalid_argument("operand must be a single qubit");
    }
}

bool is_minus(RioChannel c) { return c == RioChannel::kOmegaMinus || c == RioChannel::kPiMinus; }
bool is_pi(RioChannel c) { return c == RioChannel::kPiPlus || c == RioChannel::kPiMinus; }

// Payload photon X and the channel photons A, B.
DualRailRegister two_party_register(const PureState &payload, RioChannel channel) {
    return DualRailRegister({"X", "A", "B"},
                            tensor_product(payload, PureState(2, rio_channel_state(channel))).amplitudes());
}

// Step 1 shared by both two-party schemes: the probe couples x0 (+1) and
// a0 (-1); afterwards the photons are flipped into alpha x0a0b0 + beta x1a1b1.
DualRailRegister entangle_operand(DualRailRegister reg, RioChannel channel, const HomodyneModel &model,
                                  RunMode mode, Rng *rng, Chooser &chooser, Trajectory &t) {
    reg.cross_kerr("X", 0, +1);
    reg.cross_kerr("A", 0, -1);
    reg = readout(model, reg, 1, true, mode, rng, chooser, t, "k");
    const int k = t.branch.outcomes.back().second;
    if (!is_pi(channel)) {
        if (k == 1) {
            reg.apply("A", pauli('X'));
            reg.apply("B", pauli('X'));
        }
    } else {
        reg.apply(k == 1 ? "A" : "B", pauli('X'));
    }
    return reg;
}

// Final step shared by both schemes: BBS on A and B, the probe reads
// a1 (+1) and b1 (+2), giving n = 2p + q, and Alice fixes the relative phase.
DualRailRegister disentangle(DualRailRegister reg, RioChannel channel, const HomodyneModel &model, RunMode mode,
                             Rng *rng, Chooser &chooser, Trajectory &t) {
    reg.bbs_mix("A");
    reg.bbs_mix("B");
    reg.cross_kerr("A", 1, +1);
    reg.cross_kerr("B", 1, +2);
    reg = readout(model, reg, 3, false, mode, rng, chooser, t, "n");
    const int n = t.branch.outcomes.back().second;
    t.branch.outcomes.pop_back();
    const int p = n >> 1;
    const int q = n & 1;
    t.note("p", p);
    t.note("q", q);
    reg.apply("X", z_pow(p ^ q ^ (is_minus(channel) ? 1 : 0)));
    return reg;
}

}  // namespace

// ------------------------------------------------------------- SuOperator

SuOperator SuOperator::unimodular(Complex u, Complex v) {
    if (std::abs(std::norm(u) + std::norm(v) - 1.0) > 1e-10) {
        throw std::invalid_argument("unimodular operator needs |u|^2 + |v|^2 = 1");
    }
    return SuOperator{u, v, Form::kUnimodular};
}

SuOperator SuOperator::lump(Complex u, Complex v) {
    if (std::abs(std::abs(u) - 1.0) > 1e-10 || std::abs(std::abs(v) - 1.0) > 1e-10) {
        throw std::invalid_argument("lump operator needs |u| = |v| = 1");
    }
    return SuOperator{u, v, Form::kLump};
}

SuOperator SuOperator::random_unimodular(Rng &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    double a[4];
    for (double &x : a) {
        x = g(rng);
    }
    const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2] + a[3] * a[3]);
    return unimodular(Complex(a[0], a[1]) / n, Complex(a[2], a[3]) / n);
}

SuOperator SuOperator::random_lump(Rng &rng) {
    const Complex u = random_phase(rng);
    return lump(u, random_phase(rng));
}

Matrix SuOperator::matrix() const {
    Matrix m{{u, v}, {-std::conj(v), std::conj(u)}};
    return form == Form::kLump ? Matrix(m / std::sqrt(2.0)) : m;
}

Matrix SuOperator::u0() const { return Matrix{{u, 0}, {0, std::conj(u)}}; }

Matrix SuOperator::u1() const { return Matrix{{0, v}, {-std::conj(v), 0}}; }

// ---------------------------------------------------------------- channels

std::string rio_channel_name(RioChannel c) {
    switch (c) {
        case RioChannel::kOmegaPlus:
            return "omega+";
        case RioChannel::kOmegaMinus:
            return "omega-";
        case RioChannel::kPiPlus:
            return "pi+";
        case RioChannel::kPiMinus:
            return "pi-";
    }
    throw std::invalid_argument("bad RIO channel");
}

RioChannel parse_rio_channel(std::string_view name) {
    for (auto c : {RioChannel::kOmegaPlus, RioChannel::kOmegaMinus, RioChannel::kPiPlus, RioChannel::kPiMinus}) {
        if (rio_channel_name(c) == name) {
            return c;
        }
    }
    throw std::invalid_argument("unknown channel '" + std::string(name) + "' (expected omega+, omega-, pi+ or pi-)");
}

Vector rio_channel_state(RioChannel c) {
    const double r = 1.0 / std::sqrt(2.0);
    const double s = is_minus(c) ? -r : r;
    return is_pi(c) ? Vector{{0, r, s, 0}} : Vector{{r, 0, 0, s}};
}

std::string RioBranch::label() const {
    std::string s;
    for (const auto &[name, v] : outcomes) {
        s += (s.empty() ? "" : " ") + name + "=" + std::to_string(v);
    }
    return s;
}

int RioBranch::outcome(const std::string &name) const {
    for (const auto &[n, v] : outcomes) {
        if (n == name) {
            return v;
        }
    }
    throw std::invalid_argument("no outcome named '" + name + "'");
}

double RioResult::min_fidelity() const {
    double f = 1.0;
    for (const auto &b : branches) {
        f = std::min(f, b.fidelity);
    }
    return f;
}

double RioResult::total_probability() const {
    double s = 0;
    for (const auto &b : branches) {
        s += b.probability;
    }
    return s;
}

// ------------------------------------------------------------------- RIHO

RioResult run_riho(const PureState &payload, RioChannel channel, const SuOperator &op, const HomodyneModel &model,
                   const RioOptions &options) {
    check_payload(payload);
    if (op.form != SuOperator::Form::kLump) {
        throw std::invalid_argument("hidden operator must be in lump form");
    }
    const DualRailRegister start = two_party_register(payload, channel);
    const Vector psi = payload.amplitudes();
    auto once = [&](Chooser &chooser, Rng *rng) -> std::optional<Trajectory> {
        Trajectory t;
        DualRailRegister reg = entangle_operand(start, channel, model, options.mode, rng, chooser, t);
        reg.apply("B", op.matrix());
        reg.cross_kerr("A", 0, +1);
        reg.cross_kerr("B", 0, -1);
        reg = readout(model, reg, 1, true, options.mode, rng, chooser, t, "m");
        const int m = t.branch.outcomes.back().second;
        reg.apply("X", x_pow(m));
        reg = disentangle(reg, channel, model, options.mode, rng, chooser, t);
        const Vector target = (m == 0 ? op.u0() : op.u1()) * psi;
        t.branch.fidelity = fidelity_with(reg.reduced("X"), target);
        return t;
    };
    return collect_runs(options.mode, options.shots, options.seed, UINT64_MAX, once);
}

// ------------------------------------------------------------------ RIPUO

RioResult run_ripuo(const PureState &payload, RioChannel channel, const Matrix &op, const HomodyneModel &model,
                    const RioOptions &options) {
    check_payload(payload);
    if (op.rows() != 2 || op.cols() != 2 || !is_unitary(op, 1e-10)) {
        throw std::invalid_argument("operator must be a 2x2 unitary");
    }
    const double tol = 1e-12;
    int m;
    if (std::abs(op(0, 1)) < tol && std::abs(op(1, 0)) < tol) {
        m = 0;
    } else if (std::abs(op(0, 0)) < tol && std::abs(op(1, 1)) < tol) {
        m = 1;
    } else {
        throw std::invalid_argument("operator must be diagonal or anti-diagonal");
    }
    const DualRailRegister start = two_party_register(payload, channel);
    const Vector target = op * payload.amplitudes();
    auto once = [&](Chooser &chooser, Rng *rng) -> std::optional<Trajectory> {
        Trajectory t;
        DualRailRegister reg = entangle_operand(start, channel, model, options.mode, rng, chooser, t);
        reg.apply("B", op);
        t.note("m", m);
        reg.apply("X", x_pow(m));
        reg = disentangle(reg, channel, model, options.mode, rng, chooser, t);
        t.branch.fidelity = fidelity_with(reg.reduced("X"), target);
        return t;
    };
    return collect_runs(options.mode, options.shots, options.seed, UINT64_MAX, once);
}

// ------------------------------------------------------------------ CJRIO

RioResult run_cjrio(const PureState &payload, const std::vector<SuOperator> &ops, int controllers, bool consent,
                    const CjrioOptions &options) {
    check_payload(payload);
    const int M = static_cast<int>(ops.size());
    const int N = controllers;
    if (M < 1 || N < 0) {
        throw std::invalid_argument("need at least one sender and a non-negative controller count");
    }
    if (M + N + 1 > kMaxCjrioPhotons) {
        throw std::invalid_argument("M + N + 1 must not exceed " + std::to_string(kMaxCjrioPhotons));
    }
    for (const auto &op : ops) {
        if (op.form != SuOperator::Form::kUnimodular) {
            throw std::invalid_argument("joint operators must be unimodular");
        }
    }
    std::vector<std::string> B, C;
    for (int i = 1; i <= M; i++) {
        B.push_back("B" + std::to_string(i));
    }
    for (int j = 1; j <= N; j++) {
        C.push_back("C" + std::to_string(j));
    }
    std::vector<std::string> names{"X", "A"};
    names.insert(names.end(), B.begin(), B.end());
    names.insert(names.end(), C.begin(), C.end());
    const int n = static_cast<int>(names.size());

    // Operand (x) path GHZ over A, B..., C...
    Vector amps = Vector::Zero(Eigen::Index{1} << n);
    const uint64_t rest = (uint64_t{1} << (n - 1)) - 1;
    const Complex alpha = payload.amplitude(0);
    const Complex beta = payload.amplitude(1);
    for (uint64_t x : {0, 1}) {
        for (uint64_t j : {0, 1}) {
            amps(static_cast<Eigen::Index>((x << (n - 1)) | (j ? rest : 0))) += (x ? beta : alpha) / std::sqrt(2.0);
        }
    }
    const DualRailRegister start(names, amps);

    Vector target = payload.amplitudes();
    for (int i = M - 1; i >= 0; i--) {
        target = ops[static_cast<size_t>(i)].matrix() * target;
    }
    const Matrix h = standard_gate("H").matrix;

    auto once = [&](Chooser &chooser, Rng *) -> std::optional<Trajectory> {
        Trajectory t;
        DualRailRegister reg = start;
        // Alice couples her operand to the channel.
        reg.cross_kerr("X", 0, +1);
        reg.cross_kerr("A", 0, -1);
        const int k = pick_class(reg, true, chooser, t, "k");
        reg.apply("X", h);
        reg.apply("A", h);
        reg.cross_kerr("X", 0, +1);
        reg.cross_kerr("A", k, +2);
        const int c = pick_class(reg, false, chooser, t, "mn");
        t.branch.outcomes.pop_back();
        const int m = c >> 1;
        const int nn = c & 1;
        t.note("m", m);
        t.note("n", nn);
        if (!consent) {
            return std::nullopt;
        }
        // Controllers release their photons.
        int parity = k ^ m ^ nn;
        for (int j = 0; j < N; j++) {
            reg.apply(C[static_cast<size_t>(j)], h);
            reg.cross_kerr(C[static_cast<size_t>(j)], k, +1);
            parity ^= pick_class(reg, true, chooser, t, "s" + std::to_string(j + 1));
        }
        std::vector<int> L(static_cast<size_t>(M), 0);
        for (int i = 0; i + 1 < M; i++) {
            reg.apply(B[static_cast<size_t>(i)], h);
            reg.cross_kerr(B[static_cast<size_t>(i)], k, +1);
            L[static_cast<size_t>(i)] = pick_class(reg, true, chooser, t, "l" + std::to_string(i + 1));
            parity ^= L[static_cast<size_t>(i)];
        }
        if ((M + N) % 2 == 0) {
            parity ^= k ^ 1;
        }
        // The last sender applies the corrections and its operator first.
        const std::string &last = B.back();
        reg.apply(last, x_pow(k));
        reg.apply(last, z_pow(parity));
        reg.apply(last, ops.back().matrix());
        // Each earlier sender takes the operand over from the next one.
        for (int i = M - 1; i >= 1; i--) {
            const std::string &lo = B[static_cast<size_t>(i - 1)];
            const std::string &hi = B[static_cast<size_t>(i)];
            const int l = L[static_cast<size_t>(i - 1)];
            reg.apply(lo, h);
            reg.cross_kerr(lo, k ^ l ^ 1, +1);
            reg.cross_kerr(hi, 0, -1);
            const int r = pick_class(reg, true, chooser, t, "r" + std::to_string(i));
            reg.apply(hi, h);
            reg.cross_kerr(hi, 1, +1);
            const int g = pick_class(reg, true, chooser, t, "g" + std::to_string(i));
            reg.apply(lo, x_pow(k ^ l ^ r ^ 1));
            reg.apply(lo, z_pow(k ^ l ^ g ^ 1));
            reg.apply(lo, ops[static_cast<size_t>(i - 1)].matrix());
        }
        // Polarization GHZ carries the result back to photon A.
        std::vector<std::string> pol{"PA"};
        for (const auto &b : B) {
            pol.push_back("P" + b);
        }
        for (const auto &cj : C) {
            pol.push_back("P" + cj);
        }
        Vector ghz = Vector::Zero(Eigen::Index{1} << pol.size());
        ghz(0) = ghz(ghz.size() - 1) = 1.0 / std::sqrt(2.0);
        reg.attach(pol, ghz);
        reg.apply_controlled(B[0], 1, "P" + B[0], pauli('X'));
        reg.apply(B[0], h);
        const int p = pick_bit(reg, "P" + B[0], chooser, t, "p");
        int par = pick_bit(reg, B[0], chooser, t, "q");
        for (int i = 1; i < M; i++) {
            reg.apply("P" + B[static_cast<size_t>(i)], h);
            par ^= pick_bit(reg, "P" + B[static_cast<size_t>(i)], chooser, t, "w" + std::to_string(i + 1));
        }
        for (int j = 0; j < N; j++) {
            reg.apply("P" + C[static_cast<size_t>(j)], h);
            par ^= pick_bit(reg, "P" + C[static_cast<size_t>(j)], chooser, t, "v" + std::to_string(j + 1));
        }
        reg.apply("PA", x_pow(p));
        reg.apply("PA", z_pow(par));
        // PBS and HWP map polarization back onto the path of photon A.
        const int jj = k ^ m ^ 1;
        reg.apply_controlled("PA", 1, "A", pauli('X'));
        reg.apply_controlled("A", jj ^ 1, "PA", pauli('X'));
        reg.apply("A", x_pow(jj));
        t.branch.fidelity = fidelity_with(reg.reduced("A"), target);
        return t;
    };
    return collect_runs(options.mode, options.shots, options.seed, options.branch_limit, once);
}

// -------------------------------------------------------------- accounting

Rational efficiency(int M, int N) {
    if (M < 1) {
        throw std::invalid_argument("efficiency needs M >= 1");
    }
    if (N < 0) {
        throw std::invalid_argument("efficiency needs N >= 0");
    }
    const int64_t num = M;
    const int64_t den = 5 * int64_t{M} + 3 * int64_t{N} + 2;
    const int64_t g = std::gcd(num, den);
    return Rational{num / g, den / g};
}

ErrorTerms error_terms(const HomodyneModel &model) {
    const double first = model.signed_error(0, 1);
    return ErrorTerms{first, first, first, model.signed_error(1, 2), model.signed_error(2, 3)};
}

SuccessProbabilities success_probabilities(const HomodyneModel &model) {
    const ErrorTerms e = error_terms(model);
    const double third = e.p31 + e.p32 + e.p33;
    return SuccessProbabilities{1.0 - e.p1 * e.p2 * third, 1.0 - e.p1 * third};
}

std::vector<SurfacePoint> success_surface(const std::vector<double> &z, const std::vector<double> &D,
                                          const std::vector<double> &theta) {
    std::vector<SurfacePoint> out;
    for (double zz : z) {
        for (double dd : D) {
            for (double th : theta) {
                out.push_back(SurfacePoint{zz, dd, th, success_probabilities(HomodyneModel(zz, th, dd))});
            }
        }
    }
    return out;
}

std::vector<ProbeTrajectoryPoint> integrate_probe_dissipation(double z, double gamma_t_end, int steps,
                                                              int fock_dim) {
    if (!(z > 0.0) || !(gamma_t_end >= 0.0) || steps < 1) {
        throw std::invalid_argument("need z > 0, gamma t >= 0 and at least one step");
    }
    if (fock_dim <= 0) {
        fock_dim = static_cast<int>(std::ceil(z * z + 10.0 * z + 20.0));
    }
    Matrix b = Matrix::Zero(fock_dim, fock_dim);
    for (int k = 1; k < fock_dim; k++) {
        b(k - 1, k) = std::sqrt(static_cast<double>(k));
    }
    const Matrix bd = b.adjoint();
    const Matrix num = bd * b;
    Vector coh(fock_dim);
    double fact = 1.0;
    for (int k = 0; k < fock_dim; k++) {
        if (k > 0) {
            fact *= std::sqrt(static_cast<double>(k));
        }
        coh(k) = std::exp(-z * z / 2) * std::pow(z, k) / fact;
    }
    coh.normalize();
    Matrix rho = coh * coh.adjoint();
    // Time in units of 1/gamma, so gamma = 1 below.
    auto rhs = [&](const Matrix &r) -> Matrix { return 0.5 * (2.0 * b * r * bd - num * r - r * num); };
    const double dt = gamma_t_end / steps;
    std::vector<ProbeTrajectoryPoint> out;
    out.push_back({0.0, (rho * b).trace()});
    for (int s = 1; s <= steps; s++) {
        const Matrix k1 = rhs(rho);
        const Matrix k2 = rhs(rho + 0.5 * dt * k1);
        const Matrix k3 = rhs(rho + 0.5 * dt * k2);
        const Matrix k4 = rhs(rho + dt * k3);
        rho += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push_back({s * dt, (rho * b).trace()});
    }
    return out;
}

}  // namespace qcomm
