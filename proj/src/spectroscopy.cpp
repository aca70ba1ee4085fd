#include "enantio/spectroscopy.hpp"

#include <cmath>
#include <string>

#include "enantio/errors.hpp"
#include "enantio/params.hpp"

namespace enantio {
namespace {

double norm(const Direction& v)
{
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

void require_unit(const Direction& v, const char* name)
{
    if (std::abs(norm(v) - 1.0) > 1e-12)
        throw ValidationError(std::string(name) + " is not a unit vector");
}

}  // namespace

void validate_rotor(const RotorSpec& r)
{
    if (!(std::isfinite(r.A) && std::isfinite(r.B) && std::isfinite(r.C)
          && std::isfinite(r.omega_vib)))
        throw ValidationError("rotor constants must be finite");
    if (!(r.A >= r.B && r.B >= r.C && r.C > 0))
        throw ValidationError("rotor constants must satisfy A >= B >= C > 0");
    if (r.omega_vib < 0)
        throw ValidationError("omega_vib must be nonnegative");
}

RotorSpec propanediol_rotor()
{
    return {hz_to_rad(8524.405e6), hz_to_rad(3635.492e6),
            hz_to_rad(2788.699e6), hz_to_rad(100.950e12)};
}

double j1_level_energy(const RotorSpec& r, int ka, int kc)
{
    if (ka == 0 && kc == 1)
        return r.B + r.C;
    if (ka == 1 && kc == 1)
        return r.A + r.C;
    if (ka == 1 && kc == 0)
        return r.A + r.B;
    throw ValidationError("unsupported J=1 level (" + std::to_string(ka) + ","
                          + std::to_string(kc) + ")");
}

TransitionFrequencies transition_frequencies(const RotorSpec& r)
{
    validate_rotor(r);
    TransitionFrequencies tf;
    tf.omega21 = r.omega_vib + j1_level_energy(r, 1, 1);
    tf.omega31 = r.omega_vib + j1_level_energy(r, 1, 0);
    // B - C directly: omega31 - omega21 would cancel ~14 digits at 100 THz.
    tf.omega32 = r.B - r.C;
    return tf;
}

BeamGeometry perpendicular_geometry()
{
    return {};
}

double phase_mismatch(const TransitionFrequencies& tf, const BeamGeometry& g,
                      const FieldDetunings& detunings)
{
    require_unit(g.k31_direction, "k31_direction");
    require_unit(g.ka_direction, "ka_direction");
    require_unit(g.k32_direction, "k32_direction");

    const double nu_d = tf.omega21 - detunings.delta_21;
    // Three-photon resonance nu31 = nu_d + nu32, formed without subtracting
    // two 100 THz numbers.
    const double nu32 = tf.omega32 + detunings.delta_21 - detunings.delta_31;

    const double ka = nu_d / speed_of_light;
    const double k32 = nu32 / speed_of_light;

    // k31 k^31 - ka k^a = ka (k^31 - k^a) + (nu32 / c) k^31
    double sum2 = 0;
    for (int i = 0; i < 3; ++i) {
        const double c = ka * (g.k31_direction[i] - g.ka_direction[i])
                         + k32 * g.k31_direction[i] - k32 * g.k32_direction[i];
        sum2 += c * c;
    }
    return std::sqrt(sum2);
}

std::optional<double> max_sample_size(double dk, double margin)
{
    if (!(margin > 0 && margin <= 1))
        throw ValidationError("margin must lie in (0, 1]");
    if (!(dk >= 0) || !std::isfinite(dk))
        throw ValidationError("phase mismatch must be finite and nonnegative");
    if (dk == 0)
        return std::nullopt;
    return margin * two_pi / dk;
}

}  // namespace enantio
