#pragma once

#include <cstddef>
#include <vector>

#include "enantio/params.hpp"
#include "enantio/steady_state.hpp"

namespace enantio {

struct MeanFieldState
{
    double t = 0;
    ModeVector v{};
};

struct Trajectory
{
    std::vector<MeanFieldState> states;
    double dt = 0;            //!< integration step actually used
    std::size_t stride = 1;   //!< steps between recorded states
    double final_residual = 0;  //!< steady-state residual of the last state
};

struct SettleOptions
{
    double tol = 1e-6;
    double dt = 0;  //!< 0 selects half the stability guard
    //! Give up after this many damping times 1 / min(decay rates).
    double cap_damping_times = 1e4;
};

struct SettleResult
{
    SteadyState state;
    double settle_time = 0;
};

// M v + s.
ModeVector derivative(const ModeVector& v, const DriftSystem& d);
ModeVector derivative(const ModeVector& v, const ModelParams& p);

// Largest rate of the model: |K_a|, |K_A|, |K_B|, g_a sqrt(N), omega32,
// omega31 sqrt(N).
double fastest_rate(const ModelParams& p);

// Largest allowed fixed step, 0.1 / fastest_rate.
double max_stable_step(const ModelParams& p);

// One classical fourth-order Runge-Kutta step.
ModeVector rk4_step(const DriftSystem& d, const ModeVector& v, double dt);

/*!
 * Fixed-step RK4 from t = 0 to t_end.
 *
 * The step is shrunk to t_end / ceil(t_end / dt) so the grid lands on t_end.
 * Every `stride`-th state is recorded, plus the initial and final ones.
 */
Trajectory integrate(const ModelParams& p, const ModeVector& v0, double t_end,
                     double dt, std::size_t stride = 1);

// Integrate from vacuum until |dv/dt| <= tol * min_rate * |v|.
SettleResult settle(const ModelParams& p, const SettleOptions& opts = {});

// Same on a raw drift system; min_rate and step come from the diagonal.
SettleResult settle(const DriftSystem& d, const SettleOptions& opts = {});

}  // namespace enantio
