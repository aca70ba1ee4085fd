#pragma once

#include <array>
#include <cstddef>
#include <utility>

#include "enantio/linalg.hpp"
#include "enantio/params.hpp"

namespace enantio {

// Mode ordering of every mean-value vector in the library.
enum Mode : std::size_t
{
    mode_a = 0,
    mode_AL = 1,
    mode_AR = 2,
    mode_BL = 3,
    mode_BR = 4,
};

inline constexpr std::size_t mode_count = 5;

using ModeVector = linalg::Vector<mode_count>;
using ModeMatrix = linalg::Matrix<mode_count>;

//! Mean-field equations of motion dv/dt = matrix * v + source.
struct DriftSystem
{
    ModeMatrix matrix{};
    ModeVector source{};
};

// Excitation fraction above which the bosonized model is flagged.
inline constexpr double low_excitation_threshold = 0.1;

// Matrices with a 1-norm condition estimate above this are rejected.
inline constexpr double max_condition = 1e14;

struct SteadyState
{
    cplx a;
    cplx A_L;
    cplx A_R;
    cplx B_L;
    cplx B_R;
    //! |M v + s|_inf / (|M|_inf |v|_inf + |s|_inf)
    double residual = 0;
    //! Set by parameter-aware solvers when P_e exceeds the threshold.
    bool low_excitation_warning = false;

    ModeVector as_vector() const { return {a, A_L, A_R, B_L, B_R}; }
    static SteadyState from_vector(const ModeVector& v);
};

// Sign of the chiral term in the optimal transmission: +1 for phi = 2n pi,
// -1 for phi = (2n + 1) pi. Throws ValidationError otherwise.
int chiral_branch(double phi);

DriftSystem build_drift(const ModelParams& p);

// Relative residual of v against the steady-state equations of d.
double steady_residual(const DriftSystem& d, const ModeVector& v);

// Dense elimination route: solves matrix * v = -source.
SteadyState solve_steady_linear(const DriftSystem& d);

// Linear route plus the low-excitation flag.
SteadyState solve_steady(const ModelParams& p);

// Closed-form steady-state cavity amplitude.
cplx intracavity_amplitude_closed(const ModelParams& p);

// T = kappa_a |<a>|^2 / eps_d^2; requires a drive.
double transmission(const ModelParams& p);

// Large-splitting approximation of T at delta_21 = delta_a = g_a sqrt(N).
double optimal_transmission(const ModelParams& p);

// T_op(eta = 1) - T_op(eta = -1).
double delta_t_op(const ModelParams& p);

// sqrt(kappa_a) eps_d gamma_B - sqrt(N) omega31 omega32; >= 0 means T_op is
// monotone in eta.
double monotonicity_margin(const ModelParams& p);

// Sum over species of (|A_Q|^2 + |B_Q|^2) / N_Q; empty species contribute 0.
double excitation_fraction(const SteadyState& s, const ModelParams& p);

// (+g_a sqrt(N), -g_a sqrt(N)).
std::pair<double, double> rabi_peak_detuning(const ModelParams& p);

enum class PolaritonPeak
{
    upper,
    lower,
};

// Exact transmission with delta_21 = delta_a set to the chosen polariton
// peak. The lower peak has no closed-form optimum; this is the supported
// route there.
double peak_transmission(ModelParams p, PolaritonPeak peak);

// True when g_a sqrt(N) exceeds every other rate by the given factor, the
// regime where optimal_transmission is trustworthy.
bool strong_collective_coupling(const ModelParams& p, double factor = 10.0);

}  // namespace enantio
