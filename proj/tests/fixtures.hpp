#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "enantio/params.hpp"

namespace enantio::testing {

inline double rel_diff(std::complex<double> x, std::complex<double> y)
{
    const double scale = std::max(std::abs(x), std::abs(y));
    return scale == 0 ? 0.0 : std::abs(x - y) / scale;
}

// Drive on the upper polariton peak with the cavity tied to delta_21.
inline ModelParams detection_params(double kappa_hz, double omega32_hz,
                                    double flux_hz, double eta, double phi)
{
    auto p = baseline_params();
    p.kappa_a = hz_to_rad(kappa_hz);
    p.omega32_rabi = hz_to_rad(omega32_hz);
    p.set_drive_flux_hz(flux_hz);
    p.eta = eta;
    p.phi = phi;
    return p;
}

// Operating point A: kappa 1 MHz, omega32 25 kHz, flux 400 MHz.
inline ModelParams point_a(double eta = 1, double phi = 0)
{
    return detection_params(1e6, 25e3, 400e6, eta, phi);
}

// Operating point B (also the excitation-fraction parameter set).
inline ModelParams point_b(double eta = 0, double phi = 0)
{
    return detection_params(4e6, 50e3, 400e6, eta, phi);
}

// Undriven, eta = 0.9, omega32 20 kHz, on the upper polariton.
inline ModelParams photon_peak_params()
{
    auto p = baseline_params();
    p.eta = 0.9;
    return p;
}

// Random valid parameters spanning several decades around the baseline.
inline ModelParams random_params(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0, 1);
    auto log_between = [&](double lo, double hi) {
        return std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * u(rng));
    };
    ModelParams p;
    p.g_a = hz_to_rad(log_between(1e2, 1e5));
    p.omega31_rabi = hz_to_rad(log_between(1e2, 1e5));
    p.omega32_rabi = hz_to_rad(log_between(1e2, 1e6));
    p.phi = two_pi * u(rng);
    p.kappa_a = hz_to_rad(log_between(1e4, 1e7));
    p.gamma_A = hz_to_rad(log_between(1e3, 1e6));
    p.gamma_B = hz_to_rad(log_between(1e3, 1e6));
    p.n_total = log_between(1e2, 1e10);
    p.eta = 2 * u(rng) - 1;
    p.delta_21 = hz_to_rad(2e8 * (u(rng) - 0.5));
    p.delta_a = hz_to_rad(2e8 * (u(rng) - 0.5));
    p.delta_31 = hz_to_rad(2e7 * (u(rng) - 0.5));
    p.set_drive_flux_hz(log_between(1e6, 1e10));
    return p;
}

}  // namespace enantio::testing
