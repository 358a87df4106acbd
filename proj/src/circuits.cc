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

#include "qcomm/circuits.h"

#include <cmath>
#include <sstream>

namespace qcomm {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kBranchFloor = 1e-14;

void require_params(std::string_view name, const std::vector<double> &params, size_t arity) {
    if (params.size() != arity) {
        throw std::invalid_argument("gate " + std::string(name) + " takes " + std::to_string(arity) +
                                    " parameter(s), got " + std::to_string(params.size()));
    }
}

Matrix rx(double a) {
    const Complex i(0, 1);
    return Matrix{{std::cos(a / 2), -i * std::sin(a / 2)}, {-i * std::sin(a / 2), std::cos(a / 2)}};
}

Matrix ry(double a) { return Matrix{{std::cos(a / 2), -std::sin(a / 2)}, {std::sin(a / 2), std::cos(a / 2)}}; }

Matrix rz(double a) {
    return Matrix{{std::polar(1.0, -a / 2), 0}, {0, std::polar(1.0, a / 2)}};
}

}  // namespace

int Gate::num_qubits() const {
    int n = 0;
    while ((Eigen::Index{1} << n) < matrix.rows()) {
        n++;
    }
    return n;
}

Gate Gate::adjoint() const { return Gate{label + "^dag", matrix.adjoint(), params}; }

Gate standard_gate(std::string_view name, const std::vector<double> &params) {
    const std::string n(name);
    auto fixed = [&](Matrix m) {
        require_params(name, params, 0);
        return Gate{n, std::move(m), {}};
    };
    auto one = [&](Matrix m) {
        require_params(name, params, 1);
        return Gate{n, std::move(m), params};
    };
    if (n == "I" || n == "X" || n == "Y" || n == "Z") {
        return fixed(pauli(n[0]));
    }
    if (n == "H") {
        const double r = 1.0 / std::sqrt(2.0);
        return fixed(Matrix{{r, r}, {r, -r}});
    }
    if (n == "iY") {
        return fixed(Matrix{{0, 1}, {-1, 0}});
    }
    if (n == "CNOT") {
        return fixed(Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
    }
    if (n == "CZ") {
        return fixed(Matrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, -1}});
    }
    if (n == "SWAP") {
        return fixed(Matrix{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}});
    }
    if (n == "P") {
        return one(Matrix{{1, 0}, {0, std::polar(1.0, params.empty() ? 0.0 : params[0])}});
    }
    if (n == "Rx") {
        return one(rx(params.empty() ? 0.0 : params[0]));
    }
    if (n == "Ry") {
        return one(ry(params.empty() ? 0.0 : params[0]));
    }
    if (n == "Rz") {
        return one(rz(params.empty() ? 0.0 : params[0]));
    }
    if (n == "SigmaZt") {
        require_params(name, params, 1);
        const double t = params[0];
        if (t < 0 || t != std::floor(t)) {
            throw std::invalid_argument("SigmaZt takes a non-negative integer t");
        }
        return Gate{n, Matrix{{1, 0}, {0, std::polar(1.0, kPi / std::ldexp(1.0, static_cast<int>(t)))}}, params};
    }
    if (n == "U") {
        require_params(name, params, 4);
        Matrix m = std::polar(1.0, params[0]) * rz(params[1]) * ry(params[2]) * rx(params[3]);
        return Gate{n, std::move(m), params};
    }
    throw std::invalid_argument("unknown gate '" + n + "'");
}

// ------------------------------------------------------------ named states

std::string bell_name(BellState b) {
    switch (b) {
        case BellState::kPhiPlus:
            return "phi+";
        case BellState::kPhiMinus:
            return "phi-";
        case BellState::kPsiPlus:
            return "psi+";
        case BellState::kPsiMinus:
            return "psi-";
    }
    throw std::invalid_argument("bad Bell state");
}

BellState parse_bell(std::string_view name) {
    for (BellState b : {BellState::kPhiPlus, BellState::kPhiMinus, BellState::kPsiPlus, BellState::kPsiMinus}) {
        if (bell_name(b) == name) {
            return b;
        }
    }
    throw std::invalid_argument("unknown Bell state '" + std::string(name) + "'");
}

PureState prepare_bell(BellState b) {
    return PureState(2, MeasurementBasis::bell().vectors[static_cast<size_t>(b)]);
}

PureState prepare_ghz(int n) {
    if (n < 3) {
        throw std::invalid_argument("GHZ state needs at least 3 qubits");
    }
    detail::check_qubit_count(n);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(uint64_t{1} << n));
    v(0) = 1;
    v(v.size() - 1) = 1;
    return PureState(n, std::move(v));
}

PureState prepare_cluster4() { return PureState(4, Vector{{1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, -1}}); }

PureState prepare_named(std::string_view name) {
    if (name == "cluster4") {
        return prepare_cluster4();
    }
    if (name.substr(0, 3) == "ghz") {
        const std::string digits(name.substr(3));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw std::invalid_argument("expected ghz<n>, got '" + std::string(name) + "'");
        }
        return prepare_ghz(std::stoi(digits));
    }
    return prepare_bell(parse_bell(name));
}

// ----------------------------------------------------------------- Circuit

Circuit::Circuit(int num_qubits) : num_qubits_(num_qubits) { detail::check_qubit_count(num_qubits); }

Circuit &Circuit::gate(const Gate &g, std::vector<int> targets) { return controlled(g, std::move(targets), {}); }

Circuit &Circuit::gate(std::string_view name, std::vector<int> targets, const std::vector<double> &params) {
    return gate(standard_gate(name, params), std::move(targets));
}

Circuit &Circuit::controlled(const Gate &g, std::vector<int> targets, std::vector<int> condition, int parity) {
    detail::check_targets(num_qubits_, targets);
    if (g.matrix.rows() != (Eigen::Index{1} << targets.size())) {
        throw std::invalid_argument("gate " + g.label + " does not match its target count");
    }
    if (!is_unitary(g.matrix, 1e-10)) {
        throw std::invalid_argument("gate " + g.label + " is not unitary");
    }
    for (int b : condition) {
        if (b < 0 || b >= num_bits_) {
            throw std::invalid_argument("classical control references a bit not yet measured");
        }
    }
    if (parity != 0 && parity != 1) {
        throw std::invalid_argument("control parity must be 0 or 1");
    }
    ops_.push_back(GateOp{g, std::move(targets), std::move(condition), parity});
    return *this;
}

Circuit &Circuit::measure(std::vector<int> targets) {
    detail::check_targets(num_qubits_, targets);
    num_bits_ += static_cast<int>(targets.size());
    ops_.push_back(MeasureOp{std::move(targets)});
    return *this;
}

Circuit &Circuit::append(const Circuit &other) {
    if (other.num_qubits_ != num_qubits_) {
        throw std::invalid_argument("appending a circuit of a different width");
    }
    const int offset = num_bits_;
    for (const auto &op : other.ops_) {
        if (const auto *g = std::get_if<GateOp>(&op)) {
            GateOp shifted = *g;
            for (int &b : shifted.condition) {
                b += offset;
            }
            ops_.push_back(std::move(shifted));
        } else {
            ops_.push_back(op);
        }
    }
    num_bits_ += other.num_bits_;
    return *this;
}

Circuit Circuit::inverse() const {
    Circuit out(num_qubits_);
    for (auto it = ops_.rbegin(); it != ops_.rend(); ++it) {
        const auto *g = std::get_if<GateOp>(&*it);
        if (g == nullptr || !g->condition.empty()) {
            throw std::invalid_argument("only unconditional gate circuits can be inverted");
        }
        out.gate(g->gate.adjoint(), g->targets);
    }
    return out;
}

Circuit bell_prep_circuit(BellState b) {
    Circuit c(2);
    if (b == BellState::kPhiMinus || b == BellState::kPsiMinus) {
        c.gate("X", {0});
    }
    if (b == BellState::kPsiPlus || b == BellState::kPsiMinus) {
        c.gate("X", {1});
    }
    c.gate("H", {0}).gate("CNOT", {0, 1});
    return c;
}

Circuit ghz_prep_circuit(int n) {
    if (n < 3) {
        throw std::invalid_argument("GHZ state needs at least 3 qubits");
    }
    Circuit c(n);
    c.gate("H", {0});
    for (int q = 1; q < n; q++) {
        c.gate("CNOT", {0, q});
    }
    return c;
}

Circuit cluster4_prep_circuit() {
    Circuit c(4);
    c.gate("H", {0}).gate("H", {2}).gate("CNOT", {0, 1}).gate("CNOT", {2, 3}).gate("CZ", {1, 2});
    return c;
}

// ------------------------------------------------------------------- runs

namespace {

bool condition_holds(const GateOp &g, const std::string &bits) {
    if (g.condition.empty()) {
        return true;
    }
    int x = 0;
    for (int b : g.condition) {
        x ^= bits[static_cast<size_t>(b)] == '1';
    }
    return x == g.parity;
}

uint64_t bit_mask(int n, int q) { return uint64_t{1} << (n - 1 - q); }

struct RawPure {
    std::string bits;
    Vector amps;
};

struct RawMixed {
    std::string bits;
    Matrix rho;
};

ShotHistogram sample_branches(const std::vector<std::string> &labels, const std::vector<double> &probs,
                              uint64_t shots, uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be positive");
    }
    Rng rng(seed);
    ShotHistogram h;
    h.shots = shots;
    for (uint64_t s = 0; s < shots; s++) {
        h.counts[labels[sample_inverse_cdf(probs, rng)]]++;
    }
    return h;
}

}  // namespace

PureRun run_circuit(const Circuit &c, const PureState &input, RunMode mode, uint64_t shots, uint64_t seed) {
    if (input.num_qubits() != c.num_qubits()) {
        throw std::invalid_argument("circuit width does not match input state");
    }
    const int n = c.num_qubits();
    std::vector<RawPure> live{{"", input.amplitudes()}};
    for (const auto &op : c.ops()) {
        if (const auto *g = std::get_if<GateOp>(&op)) {
            for (auto &br : live) {
                if (condition_holds(*g, br.bits)) {
                    detail::apply_matrix(br.amps, n, g->gate.matrix, g->targets);
                }
            }
            continue;
        }
        const auto &m = std::get<MeasureOp>(op);
        std::vector<RawPure> next;
        const uint64_t outcomes = uint64_t{1} << m.targets.size();
        for (const auto &br : live) {
            for (uint64_t o = 0; o < outcomes; o++) {
                Vector kept = br.amps;
                for (Eigen::Index i = 0; i < kept.size(); i++) {
                    for (size_t j = 0; j < m.targets.size(); j++) {
                        const bool want = (o >> (m.targets.size() - 1 - j)) & 1;
                        const bool have = static_cast<uint64_t>(i) & bit_mask(n, m.targets[j]);
                        if (want != have) {
                            kept(i) = 0;
                            break;
                        }
                    }
                }
                if (kept.squaredNorm() >= kBranchFloor) {
                    next.push_back({br.bits + bits_to_string(o, static_cast<int>(m.targets.size())), kept});
                }
            }
        }
        live = std::move(next);
    }
    PureRun run;
    std::vector<std::string> labels;
    std::vector<double> probs;
    for (auto &br : live) {
        const double p = br.amps.squaredNorm();
        run.branches.push_back(PureBranch{br.bits, p, PureState(n, br.amps)});
        labels.push_back(br.bits);
        probs.push_back(p);
    }
    if (mode == RunMode::kSampled) {
        run.histogram = sample_branches(labels, probs, shots, seed);
    }
    return run;
}

MixedRun run_circuit(const Circuit &c, const MixedState &input, RunMode mode, uint64_t shots, uint64_t seed) {
    if (input.num_qubits() != c.num_qubits()) {
        throw std::invalid_argument("circuit width does not match input state");
    }
    const int n = c.num_qubits();
    std::vector<RawMixed> live{{"", input.matrix()}};
    for (const auto &op : c.ops()) {
        if (const auto *g = std::get_if<GateOp>(&op)) {
            for (auto &br : live) {
                if (condition_holds(*g, br.bits)) {
                    br.rho = detail::conjugate(br.rho, n, g->gate.matrix, g->targets);
                }
            }
            continue;
        }
        const auto &m = std::get<MeasureOp>(op);
        std::vector<RawMixed> next;
        const uint64_t outcomes = uint64_t{1} << m.targets.size();
        for (const auto &br : live) {
            for (uint64_t o = 0; o < outcomes; o++) {
                Vector keep = Vector::Ones(br.rho.rows());
                for (Eigen::Index i = 0; i < keep.size(); i++) {
                    for (size_t j = 0; j < m.targets.size(); j++) {
                        const bool want = (o >> (m.targets.size() - 1 - j)) & 1;
                        const bool have = static_cast<uint64_t>(i) & bit_mask(n, m.targets[j]);
                        if (want != have) {
                            keep(i) = 0;
                            break;
                        }
                    }
                }
                Matrix projected = keep.asDiagonal() * br.rho * keep.asDiagonal();
                if (projected.trace().real() >= kBranchFloor) {
                    next.push_back({br.bits + bits_to_string(o, static_cast<int>(m.targets.size())), projected});
                }
            }
        }
        live = std::move(next);
    }
    MixedRun run;
    std::vector<std::string> labels;
    std::vector<double> probs;
    for (auto &br : live) {
        const double p = br.rho.trace().real();
        run.branches.push_back(MixedBranch{br.bits, p, MixedState::trusted(n, br.rho / p)});
        labels.push_back(br.bits);
        probs.push_back(p);
    }
    if (mode == RunMode::kSampled) {
        run.histogram = sample_branches(labels, probs, shots, seed);
    }
    return run;
}

// ------------------------------------------------------------------ parser

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) {
        return "";
    }
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

int parse_int(const std::string &tok, int line) {
    try {
        size_t used = 0;
        const int v = std::stoi(tok, &used);
        if (used != tok.size()) {
            throw std::invalid_argument(tok);
        }
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument("line " + std::to_string(line) + ": expected an integer, got '" + tok + "'");
    }
}

double parse_param(const std::string &tok, int line) {
    std::string t = trim(tok);
    // Accepts plain numbers and multiples of pi such as "pi", "-pi/2", "0.5*pi".
    const auto pi_pos = t.find("pi");
    if (pi_pos != std::string::npos) {
        std::string before = t.substr(0, pi_pos);
        std::string after = t.substr(pi_pos + 2);
        if (!before.empty() && before.back() == '*') {
            before.pop_back();
        }
        double factor = 1;
        if (before == "-") {
            factor = -1;
        } else if (!before.empty()) {
            factor = parse_param(before, line);
        }
        double divisor = 1;
        if (!after.empty()) {
            if (after[0] != '/') {
                throw std::invalid_argument("line " + std::to_string(line) + ": bad parameter '" + tok + "'");
            }
            divisor = parse_param(after.substr(1), line);
        }
        return factor * kPi / divisor;
    }
    try {
        size_t used = 0;
        const double v = std::stod(t, &used);
        if (used != t.size()) {
            throw std::invalid_argument(t);
        }
        return v;
    } catch (const std::exception &) {
        throw std::invalid_argument("line " + std::to_string(line) + ": bad parameter '" + tok + "'");
    }
}

}  // namespace

Circuit parse_circuit(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    std::optional<Circuit> circuit;
    while (std::getline(in, raw)) {
        line_no++;
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) {
            continue;
        }
        std::string head;
        std::vector<double> params;
        const auto open = line.find('(');
        const auto first_space = line.find_first_of(" \t");
        size_t rest_at;
        if (open != std::string::npos && (first_space == std::string::npos || open < first_space)) {
            const auto close = line.find(')', open);
            if (close == std::string::npos) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": unclosed parameter list");
            }
            head = line.substr(0, open);
            std::istringstream ps(line.substr(open + 1, close - open - 1));
            std::string tok;
            while (std::getline(ps, tok, ',')) {
                params.push_back(parse_param(tok, line_no));
            }
            rest_at = close + 1;
        } else {
            head = line.substr(0, first_space);
            rest_at = first_space == std::string::npos ? line.size() : first_space;
        }
        std::istringstream rest(line.substr(rest_at));
        std::vector<std::string> toks;
        for (std::string t; rest >> t;) {
            toks.push_back(t);
        }
        if (head == "qubits") {
            if (circuit || toks.size() != 1) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": 'qubits N' must appear once, first");
            }
            circuit.emplace(parse_int(toks[0], line_no));
            continue;
        }
        if (!circuit) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": missing 'qubits N' header");
        }
        std::vector<int> targets;
        std::vector<int> condition;
        int parity = 1;
        size_t i = 0;
        for (; i < toks.size() && toks[i] != "if"; i++) {
            targets.push_back(parse_int(toks[i], line_no));
        }
        if (i < toks.size()) {
            for (i++; i < toks.size() && toks[i] != "=="; i++) {
                condition.push_back(parse_int(toks[i], line_no));
            }
            if (i < toks.size()) {
                if (i + 2 != toks.size()) {
                    throw std::invalid_argument("line " + std::to_string(line_no) + ": expected '== 0' or '== 1'");
                }
                parity = parse_int(toks[i + 1], line_no);
            }
            if (condition.empty()) {
                throw std::invalid_argument("line " + std::to_string(line_no) + ": 'if' needs record bits");
            }
        }
        try {
            if (head == "MEASURE") {
                if (!condition.empty() || !params.empty()) {
                    throw std::invalid_argument("MEASURE takes only targets");
                }
                circuit->measure(targets);
            } else {
                circuit->controlled(standard_gate(head, params), targets, condition, parity);
            }
        } catch (const std::invalid_argument &e) {
            throw std::invalid_argument("line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!circuit) {
        throw std::invalid_argument("circuit text has no 'qubits N' header");
    }
    return *circuit;
}

}  // namespace qcomm
