#include "enantio/steady_state.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "enantio/errors.hpp"

namespace enantio {
namespace {

constexpr cplx I{0, 1};

void require_drive(const ModelParams& p)
{
    if (!(p.drive_amp > 0))
        throw ValidationError("transmission requires a nonzero drive");
}

// Optimal transmission on the chiral branch with the given sign.
double optimal_transmission_branch(const ModelParams& p, int sign, double eta)
{
    const double drive = std::sqrt(p.kappa_a) * p.drive_amp * p.gamma_B;
    const double chiral = std::sqrt(p.n_total) * p.omega31_rabi
                          * p.omega32_rabi;
    const double denom = p.gamma_A * p.gamma_B + p.kappa_a * p.gamma_B
                         + p.omega32_rabi * p.omega32_rabi;
    const double ratio = (drive + sign * chiral * eta) / denom;
    return p.kappa_a / (p.drive_amp * p.drive_amp) * ratio * ratio;
}

}  // namespace

SteadyState SteadyState::from_vector(const ModeVector& v)
{
    SteadyState s;
    s.a = v[mode_a];
    s.A_L = v[mode_AL];
    s.A_R = v[mode_AR];
    s.B_L = v[mode_BL];
    s.B_R = v[mode_BR];
    return s;
}

int chiral_branch(double phi)
{
    const double turns = phi / std::numbers::pi;
    const double n = std::round(turns);
    if (!std::isfinite(phi) || std::abs(turns - n) > 1e-9)
        throw ValidationError(
            "phi must be an integer multiple of pi for the optimal "
            "transmission formula");
    return std::fmod(std::abs(n), 2.0) == 0 ? 1 : -1;
}

DriftSystem build_drift(const ModelParams& p)
{
    const auto k = rate_constants(p);
    const auto counts = species_counts(p);
    const double root_left = std::sqrt(counts.left);
    const double root_right = std::sqrt(counts.right);
    // phi_R = phi + pi, applied as an exact sign flip.
    const cplx loop_left = std::polar(1.0, p.phi);
    const cplx loop_right = -loop_left;

    DriftSystem d;
    auto& m = d.matrix;

    m[mode_a][mode_a] = -k.K_a;
    m[mode_a][mode_AL] = -I * p.g_a * root_left;
    m[mode_a][mode_AR] = -I * p.g_a * root_right;
    d.source[mode_a] = std::sqrt(p.kappa_a) * p.drive_amp;

    const struct
    {
        std::size_t A, B;
        double root_n;
        cplx loop;
    } species[] = {{mode_AL, mode_BL, root_left, loop_left},
                   {mode_AR, mode_BR, root_right, loop_right}};

    for (const auto& q : species) {
        m[q.A][q.A] = -k.K_A;
        m[q.A][mode_a] = -I * p.g_a * q.root_n;
        m[q.A][q.B] = -I * p.omega32_rabi * std::conj(q.loop);

        m[q.B][q.B] = -k.K_B;
        m[q.B][q.A] = -I * p.omega32_rabi * q.loop;
        d.source[q.B] = -I * p.omega31_rabi * q.root_n;
    }
    return d;
}

double steady_residual(const DriftSystem& d, const ModeVector& v)
{
    auto r = linalg::multiply(d.matrix, v);
    for (std::size_t i = 0; i < mode_count; ++i)
        r[i] += d.source[i];
    const double scale = linalg::norm_inf(d.matrix) * linalg::norm_inf(v)
                         + linalg::norm_inf(d.source);
    return scale == 0 ? 0.0 : linalg::norm_inf(r) / scale;
}

SteadyState solve_steady_linear(const DriftSystem& d)
{
    const linalg::LuDecomposition<mode_count> lu(d.matrix);
    const double cond = lu.condition();
    if (!(cond <= max_condition))
        throw SingularMatrixError("drift matrix is ill-conditioned (cond1 = "
                                      + std::to_string(cond) + ")",
                                  cond);

    ModeVector rhs;
    for (std::size_t i = 0; i < mode_count; ++i)
        rhs[i] = -d.source[i];
    auto v = lu.solve(rhs);

    // One step of iterative refinement.
    auto r = linalg::multiply(d.matrix, v);
    for (std::size_t i = 0; i < mode_count; ++i)
        r[i] = rhs[i] - r[i];
    const auto dv = lu.solve(r);
    for (std::size_t i = 0; i < mode_count; ++i)
        v[i] += dv[i];

    auto s = SteadyState::from_vector(v);
    s.residual = steady_residual(d, v);
    if (!(s.residual <= 1e-10))
        throw NumericalError("steady-state residual "
                             + std::to_string(s.residual)
                             + " exceeds tolerance");
    return s;
}

SteadyState solve_steady(const ModelParams& p)
{
    auto s = solve_steady_linear(build_drift(p));
    s.low_excitation_warning = excitation_fraction(s, p)
                               > low_excitation_threshold;
    return s;
}

cplx intracavity_amplitude_closed(const ModelParams& p)
{
    const auto k = rate_constants(p);
    const double om32_sq = p.omega32_rabi * p.omega32_rabi;
    const cplx ladder = k.K_A * k.K_B + om32_sq;

    const cplx chiral = I * (p.eta * p.n_total) * p.g_a * p.omega31_rabi
                        * p.omega32_rabi * std::polar(1.0, -p.phi);
    const cplx driven = std::sqrt(p.kappa_a) * p.drive_amp * ladder;

    const cplx cavity_term = k.K_a * ladder;
    const cplx molecule_term = p.g_a * p.g_a * p.n_total * k.K_B;
    const cplx denom = cavity_term + molecule_term;
    if (std::abs(denom)
        <= 1e-15 * (std::abs(cavity_term) + std::abs(molecule_term)))
        throw NumericalError("closed-form denominator vanishes");
    return (chiral + driven) / denom;
}

double transmission(const ModelParams& p)
{
    require_drive(p);
    return p.kappa_a * std::norm(intracavity_amplitude_closed(p))
           / (p.drive_amp * p.drive_amp);
}

double optimal_transmission(const ModelParams& p)
{
    const int sign = chiral_branch(p.phi);
    require_drive(p);
    return optimal_transmission_branch(p, sign, p.eta);
}

double delta_t_op(const ModelParams& p)
{
    const int sign = chiral_branch(p.phi);
    require_drive(p);
    return optimal_transmission_branch(p, sign, 1.0)
           - optimal_transmission_branch(p, sign, -1.0);
}

double monotonicity_margin(const ModelParams& p)
{
    return std::sqrt(p.kappa_a) * p.drive_amp * p.gamma_B
           - std::sqrt(p.n_total) * p.omega31_rabi * p.omega32_rabi;
}

double excitation_fraction(const SteadyState& s, const ModelParams& p)
{
    const auto counts = species_counts(p);
    double pe = 0;
    if (counts.left > 0)
        pe += (std::norm(s.A_L) + std::norm(s.B_L)) / counts.left;
    if (counts.right > 0)
        pe += (std::norm(s.A_R) + std::norm(s.B_R)) / counts.right;
    return pe;
}

std::pair<double, double> rabi_peak_detuning(const ModelParams& p)
{
    const double g = collective_coupling(p);
    return {g, -g};
}

double peak_transmission(ModelParams p, PolaritonPeak peak)
{
    const auto [upper, lower] = rabi_peak_detuning(p);
    p.delta_21 = peak == PolaritonPeak::upper ? upper : lower;
    p.delta_a = p.delta_21;
    return transmission(p);
}

bool strong_collective_coupling(const ModelParams& p, double factor)
{
    const double others = std::max({p.kappa_a, p.gamma_A, p.gamma_B,
                                    p.omega32_rabi, p.omega31_rabi});
    return collective_coupling(p) >= factor * others;
}

}  // namespace enantio
