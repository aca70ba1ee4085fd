#pragma once

#include <complex>
#include <numbers>
#include <utility>

namespace enantio {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Frequencies enter and leave the program as nu = omega / 2pi in Hz; inside,
// everything is angular frequency in rad/s.
constexpr double hz_to_rad(double hz) { return two_pi * hz; }
constexpr double rad_to_hz(double rad) { return rad / two_pi; }

/*!
 * Parameters of the driven ring cavity loaded with a chiral mixture.
 *
 * All rates are angular frequencies (rad/s). The drive amplitude is the
 * square root of a photon flux, (rad/s)^(1/2). The species counts N_L and N_R
 * are never stored; they follow from n_total and eta.
 */
struct ModelParams
{
    double g_a = 0;           //!< single-molecule cavity coupling
    double omega31_rabi = 0;  //!< classical 1-3 coupling
    double omega32_rabi = 0;  //!< classical 2-3 coupling
    double phi = 0;           //!< overall loop phase; right-handed gets phi + pi
    double delta_a = 0;       //!< cavity detuning from the drive
    double delta_21 = 0;
    double delta_31 = 0;
    double kappa_a = 0;  //!< total cavity decay (both partial mirrors)
    double gamma_A = 0;
    double gamma_B = 0;
    double drive_amp = 0;  //!< epsilon_d, real and nonnegative
    double n_total = 0;
    double eta = 0;  //!< enantiomeric excess (N_L - N_R) / N

    // Set drive_amp from a flux epsilon_d^2 / 2pi quoted in Hz.
    void set_drive_flux_hz(double flux_hz);
    double drive_flux_hz() const;
};

struct RateConstants
{
    cplx K_a;  //!< kappa_a + i delta_a
    cplx K_A;  //!< gamma_A + i delta_21
    cplx K_B;  //!< gamma_B + i delta_31
};

struct SpeciesCounts
{
    double left = 0;
    double right = 0;
};

// Returns p unchanged or throws ValidationError naming the first violated
// invariant.
const ModelParams& validate_params(const ModelParams& p);

SpeciesCounts species_counts(const ModelParams& p);

RateConstants rate_constants(const ModelParams& p);

// Collective coupling g_a sqrt(N): the half-width of the vacuum Rabi
// splitting.
double collective_coupling(const ModelParams& p);

// Baseline parameter set used throughout the detection scheme: propanediol in
// a 1 MHz cavity, cavity resonant with the 1-2 transition at the upper
// polariton, no drive, racemic.
ModelParams baseline_params();

}  // namespace enantio
