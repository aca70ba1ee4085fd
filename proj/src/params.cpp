#include "enantio/params.hpp"

#include <cmath>
#include <string>

#include "enantio/errors.hpp"

namespace enantio {
namespace {

void require(bool ok, const char* message)
{
    if (!ok)
        throw ValidationError(message);
}

}  // namespace

void ModelParams::set_drive_flux_hz(double flux_hz)
{
    require(std::isfinite(flux_hz) && flux_hz >= 0,
            "drive_flux must be finite and nonnegative");
    drive_amp = std::sqrt(hz_to_rad(flux_hz));
}

double ModelParams::drive_flux_hz() const
{
    return rad_to_hz(drive_amp * drive_amp);
}

const ModelParams& validate_params(const ModelParams& p)
{
    const double fields[] = {p.g_a, p.omega31_rabi, p.omega32_rabi, p.phi,
                             p.delta_a, p.delta_21, p.delta_31, p.kappa_a,
                             p.gamma_A, p.gamma_B, p.drive_amp, p.n_total,
                             p.eta};
    for (double v : fields)
        require(std::isfinite(v), "parameters must be finite");

    require(p.kappa_a > 0, "kappa_a must be positive");
    require(p.gamma_A > 0, "gamma_A must be positive");
    require(p.gamma_B > 0, "gamma_B must be positive");
    require(p.g_a >= 0, "g_a must be nonnegative");
    require(p.omega31_rabi >= 0, "omega31 must be nonnegative");
    require(p.omega32_rabi >= 0, "omega32 must be nonnegative");
    require(p.drive_amp >= 0, "drive_amp must be nonnegative");
    require(p.n_total > 0, "n_total must be positive");
    require(p.eta >= -1 && p.eta <= 1, "eta out of range");
    return p;
}

SpeciesCounts species_counts(const ModelParams& p)
{
    // (1 + eta) and (1 - eta) are exact for |eta| <= 1 up to one rounding,
    // and vanish exactly at the enantiopure limits.
    return {0.5 * p.n_total * (1 + p.eta), 0.5 * p.n_total * (1 - p.eta)};
}

RateConstants rate_constants(const ModelParams& p)
{
    return {{p.kappa_a, p.delta_a},
            {p.gamma_A, p.delta_21},
            {p.gamma_B, p.delta_31}};
}

double collective_coupling(const ModelParams& p)
{
    return p.g_a * std::sqrt(p.n_total);
}

ModelParams baseline_params()
{
    ModelParams p;
    p.g_a = hz_to_rad(10e3);
    p.omega31_rabi = hz_to_rad(8e3);
    p.omega32_rabi = hz_to_rad(20e3);
    p.phi = 0;
    p.kappa_a = hz_to_rad(1e6);
    p.gamma_A = hz_to_rad(0.1e6);
    p.gamma_B = hz_to_rad(0.1e6);
    p.n_total = 1e8;
    p.eta = 0;
    p.delta_21 = collective_coupling(p);
    p.delta_a = p.delta_21;
    p.delta_31 = 0;
    p.drive_amp = 0;
    return p;
}

}  // namespace enantio
