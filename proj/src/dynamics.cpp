#include "enantio/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "enantio/errors.hpp"

namespace enantio {
namespace {

bool all_finite(const ModeVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const cplx& x) {
        return std::isfinite(x.real()) && std::isfinite(x.imag());
    });
}

// axpy: v + h * k
ModeVector shifted(const ModeVector& v, const ModeVector& k, double h)
{
    ModeVector out;
    for (std::size_t i = 0; i < mode_count; ++i)
        out[i] = v[i] + h * k[i];
    return out;
}

double slowest_decay(const DriftSystem& d)
{
    double r = INFINITY;
    for (std::size_t i = 0; i < mode_count; ++i)
        r = std::min(r, std::abs(d.matrix[i][i].real()));
    return r;
}

double largest_entry(const DriftSystem& d)
{
    double r = linalg::norm_inf(d.matrix);
    return std::max(r, 1e-300);
}

}  // namespace

ModeVector derivative(const ModeVector& v, const DriftSystem& d)
{
    auto out = linalg::multiply(d.matrix, v);
    for (std::size_t i = 0; i < mode_count; ++i)
        out[i] += d.source[i];
    return out;
}

ModeVector derivative(const ModeVector& v, const ModelParams& p)
{
    return derivative(v, build_drift(validate_params(p)));
}

double fastest_rate(const ModelParams& p)
{
    const auto k = rate_constants(p);
    const double root_n = std::sqrt(p.n_total);
    return std::max({std::abs(k.K_a), std::abs(k.K_A), std::abs(k.K_B),
                     p.g_a * root_n, p.omega32_rabi,
                     p.omega31_rabi * root_n});
}

double max_stable_step(const ModelParams& p)
{
    return 0.1 / fastest_rate(p);
}

ModeVector rk4_step(const DriftSystem& d, const ModeVector& v, double dt)
{
    const auto k1 = derivative(v, d);
    const auto k2 = derivative(shifted(v, k1, 0.5 * dt), d);
    const auto k3 = derivative(shifted(v, k2, 0.5 * dt), d);
    const auto k4 = derivative(shifted(v, k3, dt), d);
    ModeVector out;
    for (std::size_t i = 0; i < mode_count; ++i)
        out[i] = v[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    return out;
}

Trajectory integrate(const ModelParams& p, const ModeVector& v0, double t_end,
                     double dt, std::size_t stride)
{
    validate_params(p);
    if (!(t_end > 0) || !std::isfinite(t_end))
        throw ValidationError("t_end must be positive");
    if (!(dt > 0))
        throw ValidationError("dt must be positive");
    if (dt > max_stable_step(p))
        throw ValidationError("dt exceeds the stability guard "
                              + std::to_string(max_stable_step(p)) + " s");
    if (stride == 0)
        throw ValidationError("stride must be at least 1");
    if (!all_finite(v0))
        throw ValidationError("initial state is not finite");

    const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt));
    const double h = t_end / static_cast<double>(steps);
    const auto d = build_drift(p);

    Trajectory traj;
    traj.dt = h;
    traj.stride = stride;
    traj.states.reserve(steps / stride + 2);
    traj.states.push_back({0.0, v0});

    ModeVector v = v0;
    for (std::size_t n = 1; n <= steps; ++n) {
        v = rk4_step(d, v, h);
        if (!all_finite(v))
            throw NumericalError("integration diverged at t = "
                                 + std::to_string(n * h) + " s");
        if (n % stride == 0 || n == steps)
            traj.states.push_back({static_cast<double>(n) * h, v});
    }
    traj.final_residual = steady_residual(d, v);
    return traj;
}

SettleResult settle(const DriftSystem& d, const SettleOptions& opts)
{
    if (!(opts.tol > 0))
        throw ValidationError("settle tolerance must be positive");
    const double min_rate = slowest_decay(d);
    if (!(min_rate > 0))
        throw ValidationError("drift matrix has an undamped mode");

    const double dt = opts.dt > 0 ? opts.dt : 0.05 / largest_entry(d);
    const double t_cap = opts.cap_damping_times / min_rate;
    const auto max_steps = static_cast<std::size_t>(std::ceil(t_cap / dt));

    ModeVector v{};
    for (std::size_t n = 0; n <= max_steps; ++n) {
        const auto rate = derivative(v, d);
        const double scale = linalg::norm2(v);
        if (!std::isfinite(scale) || !std::isfinite(linalg::norm2(rate)))
            break;
        if (scale > 0 && linalg::norm2(rate) <= opts.tol * min_rate * scale) {
            SettleResult out{SteadyState::from_vector(v),
                             static_cast<double>(n) * dt};
            out.state.residual = steady_residual(d, v);
            return out;
        }
        if (scale == 0 && linalg::norm2(rate) == 0)
            return {SteadyState{}, static_cast<double>(n) * dt};
        if (n == max_steps)
            break;
        v = rk4_step(d, v, dt);
        if (!all_finite(v))
            break;
    }
    throw ConvergenceError("no convergence within "
                           + std::to_string(opts.cap_damping_times)
                           + " damping times");
}

SettleResult settle(const ModelParams& p, const SettleOptions& opts)
{
    validate_params(p);
    auto o = opts;
    if (o.dt <= 0)
        o.dt = 0.5 * max_stable_step(p);
    else if (o.dt > max_stable_step(p))
        throw ValidationError("dt exceeds the stability guard");
    auto r = settle(build_drift(p), o);
    r.state.low_excitation_warning = excitation_fraction(r.state, p)
                                     > low_excitation_threshold;
    return r;
}

}  // namespace enantio
