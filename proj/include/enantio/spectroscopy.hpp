#pragma once

#include <array>
#include <optional>

namespace enantio {

inline constexpr double speed_of_light = 299792458.0;  // m/s

//! Rigid asymmetric-top constants plus the vibrational band origin (rad/s).
struct RotorSpec
{
    double A = 0;
    double B = 0;
    double C = 0;
    double omega_vib = 0;
};

struct TransitionFrequencies
{
    double omega21 = 0;
    double omega31 = 0;
    double omega32 = 0;
};

using Direction = std::array<double, 3>;

struct BeamGeometry
{
    Direction k31_direction{1, 0, 0};
    Direction ka_direction{1, 0, 0};
    Direction k32_direction{0, 1, 0};
};

// Field detunings that fix the laboratory frequencies: nu_d = omega21 -
// delta_21 and nu31 = omega31 - delta_31, with nu32 closing the loop.
struct FieldDetunings
{
    double delta_21 = 0;
    double delta_31 = 0;
};

void validate_rotor(const RotorSpec& r);

// 1,2-propanediol, OH-stretch band.
RotorSpec propanediol_rotor();

// Energy of the J = 1 level |1_{ka kc}> above |0_00>. Only (0,1), (1,1) and
// (1,0) exist for J = 1.
double j1_level_energy(const RotorSpec& r, int ka, int kc);

// Working states |1> = |g,0_00>, |2> = |e,1_11>, |3> = |e,1_10>.
TransitionFrequencies transition_frequencies(const RotorSpec& r);

// k31 and ka along x, k32 along y.
BeamGeometry perpendicular_geometry();

// |k31 - ka - k32| in 1/m (angular wavenumber).
double phase_mismatch(const TransitionFrequencies& tf, const BeamGeometry& g,
                      const FieldDetunings& detunings = {});

// Largest sample length margin * 2pi / |dk|; nullopt when dk == 0.
std::optional<double> max_sample_size(double dk, double margin);

}  // namespace enantio
