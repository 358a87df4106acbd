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

#include "qcomm/qkdmodel.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcomm {

namespace {

void require_fraction(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
    }
}

std::string range_text(double lo, double hi) {
    std::ostringstream s;
    s << "[" << lo << ", " << hi << "]";
    return s.str();
}

}  // namespace

std::string qkd_protocol_name(QkdProtocol p) { return p == QkdProtocol::kCow ? "cow" : "dps"; }

QkdProtocol parse_qkd_protocol(std::string_view name) {
    if (name == "cow" || name == "COW") {
        return QkdProtocol::kCow;
    }
    if (name == "dps" || name == "DPS") {
        return QkdProtocol::kDps;
    }
    throw std::invalid_argument("unknown QKD protocol '" + std::string(name) + "' (expected cow or dps)");
}

QkdParams QkdParams::defaults(QkdProtocol protocol) {
    QkdParams p;
    p.protocol = protocol;
    if (protocol == QkdProtocol::kCow) {
        p.mu = 0.5;
        p.f = 5e8;
        p.l_f = 0.5;
        p.l_m = 0.0;
    }
    return p;
}

void QkdParams::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::invalid_argument("mu must be positive");
    }
    if (!(l_f >= 0.0) || !std::isfinite(l_f)) {
        throw std::invalid_argument("fiber loss must be non-negative");
    }
    if (!(d >= 0.0) || !std::isfinite(d)) {
        throw std::invalid_argument("distance must be non-negative");
    }
    if (!(f > 0.0) || !std::isfinite(f)) {
        throw std::invalid_argument("pulse frequency must be positive");
    }
    if (!(t_d >= 0.0) || !std::isfinite(t_d)) {
        throw std::invalid_argument("dead time must be non-negative");
    }
    if (!(l_m >= 0.0) || !std::isfinite(l_m)) {
        throw std::invalid_argument("interferometer loss must be non-negative");
    }
    require_fraction(eta, "eta");
    require_fraction(DR, "DR");
    require_fraction(CR, "CR");
}

double tau(const QkdParams &p) {
    p.validate();
    return p.eta * p.mu * p.f * std::pow(10.0, -p.l_f * p.d / 10.0);
}

double clicks(const QkdParams &p) {
    const double t = tau(p);
    if (p.protocol == QkdProtocol::kCow) {
        return t / (1.0 + t);
    }
    const double x = t * std::pow(10.0, -p.l_m / 10.0);
    return x / (1.0 + x);
}

KeyRateResult key_rate(const QkdParams &p) {
    KeyRateResult r{tau(p), clicks(p), 0.0, p.dead_time_correction};
    if (p.dead_time_correction) {
        r.clicks /= 1.0 + r.clicks * p.t_d;
    }
    const double factor = p.protocol == QkdProtocol::kDps ? 2.0 : 1.0;
    r.key_rate = factor * r.clicks * (1.0 - p.DR) * (1.0 - p.CR);
    return r;
}

std::string sweep_axis_name(SweepAxis a) {
    switch (a) {
        case SweepAxis::kDR:
            return "dr";
        case SweepAxis::kCR:
            return "cr";
        case SweepAxis::kTd:
            return "td";
        case SweepAxis::kD:
            return "d";
    }
    throw std::invalid_argument("bad sweep axis");
}

SweepAxis parse_sweep_axis(std::string_view name) {
    for (auto a : {SweepAxis::kDR, SweepAxis::kCR, SweepAxis::kTd, SweepAxis::kD}) {
        if (sweep_axis_name(a) == name) {
            return a;
        }
    }
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "' (expected dr, cr, td or d)");
}

namespace {

std::pair<double, double> axis_range(SweepAxis axis, const SweepLimits &l) {
    switch (axis) {
        case SweepAxis::kDR:
            return {l.dr_min, l.dr_max};
        case SweepAxis::kCR:
            return {l.cr_min, l.cr_max};
        case SweepAxis::kTd:
            return {l.td_min, l.td_max};
        case SweepAxis::kD:
            return {l.d_min, l.d_max};
    }
    throw std::invalid_argument("bad sweep axis");
}

}  // namespace

std::vector<double> default_grid(SweepAxis axis, int points, const SweepLimits &limits) {
    if (points < 2) {
        throw std::invalid_argument("a sweep grid needs at least two points");
    }
    const auto [lo, hi] = axis_range(axis, limits);
    std::vector<double> g;
    for (int i = 0; i < points; i++) {
        g.push_back(i == points - 1 ? hi : lo + (hi - lo) * i / (points - 1));
    }
    return g;
}

std::vector<SweepPoint> sweep(const QkdParams &base, SweepAxis axis, const std::vector<double> &grid,
                              const SweepLimits &limits) {
    const auto [lo, hi] = axis_range(axis, limits);
    std::vector<SweepPoint> out;
    for (double v : grid) {
        if (!(v >= lo && v <= hi)) {
            std::ostringstream s;
            s << sweep_axis_name(axis) << " value " << v << " outside the allowed range " << range_text(lo, hi);
            throw std::invalid_argument(s.str());
        }
        QkdParams p = base;
        switch (axis) {
            case SweepAxis::kDR:
                p.DR = v;
                break;
            case SweepAxis::kCR:
                p.CR = v;
                break;
            case SweepAxis::kTd:
                p.t_d = v;
                break;
            case SweepAxis::kD:
                p.d = v;
                break;
        }
        out.push_back(SweepPoint{p, key_rate(p)});
    }
    return out;
}

}  // namespace qcomm
