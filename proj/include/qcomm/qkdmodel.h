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

#ifndef QCOMM_QKDMODEL_H
#define QCOMM_QKDMODEL_H

#include <string>
#include <string_view>
#include <vector>

namespace qcomm {

enum class QkdProtocol { kCow, kDps };

std::string qkd_protocol_name(QkdProtocol p);
QkdProtocol parse_qkd_protocol(std::string_view name);

/// Distances in km, losses in dB (per km for l_f), f in Hz, t_d in seconds.
/// DR, CR and eta are fractions.
struct QkdParams {
    QkdProtocol protocol = QkdProtocol::kDps;
    double mu = 0.2;
    double l_f = 0.2;
    double d = 80.0;
    double f = 1e9;
    double eta = 0.1;
    double t_d = 20e-6;
    double l_m = 2.0;
    double DR = 0.03125;
    double CR = 0.5;
    /// Multiply clicks by 1 / (1 + clicks t_d).
    bool dead_time_correction = false;

    /// Lab defaults: COW mu 0.5, f 500 MHz, l_f 0.5 dB/km; DPS mu 0.2,
    /// f 1 GHz, l_f 0.2 dB/km, l_m 2 dB; both eta 0.1.
    static QkdParams defaults(QkdProtocol protocol);
    void validate() const;
};

struct KeyRateResult {
    double tau;
    /// After the dead-time factor when it is enabled.
    double clicks;
    double key_rate;
    bool dead_time_corrected;
};

/// eta mu f 10^(-l_f d / 10).
double tau(const QkdParams &p);
/// COW tau/(1+tau); DPS tau L/(1+tau L) with L = 10^(-l_m/10). The result is
/// a saturation fraction, reported without rescaling.
double clicks(const QkdParams &p);
/// COW clicks (1-DR)(1-CR); DPS twice that.
KeyRateResult key_rate(const QkdParams &p);

enum class SweepAxis { kDR, kCR, kTd, kD };

std::string sweep_axis_name(SweepAxis a);
SweepAxis parse_sweep_axis(std::string_view name);

struct SweepLimits {
    double dr_min = 0.03125, dr_max = 0.5;
    double cr_min = 0.5, cr_max = 0.95;
    double td_min = 20e-6, td_max = 50e-6;
    double d_min = 40.0, d_max = 120.0;
};

/// Evenly spaced grid of the axis' allowed range with the given point count.
std::vector<double> default_grid(SweepAxis axis, int points, const SweepLimits &limits = {});

struct SweepPoint {
    QkdParams params;
    KeyRateResult result;
};

/// One result per grid value; values outside the allowed range are rejected.
std::vector<SweepPoint> sweep(const QkdParams &base, SweepAxis axis, const std::vector<double> &grid,
                              const SweepLimits &limits = {});

}  // namespace qcomm

#endif
