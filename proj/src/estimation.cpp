#include "enantio/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "enantio/steady_state.hpp"

namespace enantio {
namespace {

ModelParams at_eta(ModelParams p, double eta)
{
    p.eta = eta;
    return p;
}

double exact_t(const ModelParams& p, double eta)
{
    return transmission(at_eta(p, eta));
}

void require_measurement(double t_meas)
{
    if (!(t_meas >= 0) || !std::isfinite(t_meas))
        throw ValidationError("measured transmission must be finite and "
                              "nonnegative");
}

double bisect(const ModelParams& p, double t_meas, double lo, double hi)
{
    double f_lo = exact_t(p, lo) - t_meas;
    while (hi - lo > bisection_tolerance) {
        const double mid = 0.5 * (lo + hi);
        const double f_mid = exact_t(p, mid) - t_meas;
        if ((f_mid < 0) == (f_lo < 0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

EtaEstimate full_estimate(const ModelParams& p, double t_meas, double eta,
                          bool monotone)
{
    EtaEstimate e;
    e.method = EstimateMethod::full_model;
    e.eta_hat = eta;
    e.eta_clamped = std::clamp(eta, -1.0, 1.0);
    e.in_range = true;
    e.monotone_regime = monotone;
    e.ambiguous = !monotone;
    e.residual = std::abs(exact_t(p, eta) - t_meas);
    return e;
}

}  // namespace

const char* to_string(EstimateMethod m)
{
    return m == EstimateMethod::closed_form ? "closed-form" : "full-model";
}

EtaEstimate eta_from_top_closed(double t_meas, const ModelParams& p)
{
    require_measurement(t_meas);
    validate_params(at_eta(p, 0));
    const int sign = chiral_branch(p.phi);
    if (!(p.drive_amp > 0))
        throw ValidationError("estimation requires a nonzero drive");
    if (monotonicity_margin(p) < 0)
        throw ValidationError("monotonicity condition violated; optimal "
                              "transmission does not determine eta uniquely");
    const double chiral = std::sqrt(p.n_total) * p.omega31_rabi
                          * p.omega32_rabi;
    if (chiral == 0)
        throw ValidationError("no chiral pathway (omega31 or omega32 is "
                              "zero); eta is unobservable");

    const double t_max = optimal_transmission(at_eta(p, sign > 0 ? 1 : -1));
    if (t_meas > t_max * (1 + 1e-12))
        throw ValidationError("measured transmission exceeds the attainable "
                              "maximum "
                              + std::to_string(t_max));

    // T = kappa / eps^2 (x / D)^2 with x = drive + sign chiral eta >= 0 on
    // the whole eta range in the monotone regime.
    const double drive = std::sqrt(p.kappa_a) * p.drive_amp * p.gamma_B;
    const double denom = p.gamma_A * p.gamma_B + p.kappa_a * p.gamma_B
                         + p.omega32_rabi * p.omega32_rabi;
    const double x = std::sqrt(t_meas / p.kappa_a) * p.drive_amp * denom;

    EtaEstimate e;
    e.method = EstimateMethod::closed_form;
    e.monotone_regime = true;
    e.eta_hat = sign * (x - drive) / chiral;
    e.eta_clamped = std::clamp(e.eta_hat, -1.0, 1.0);
    e.in_range = e.eta_hat >= -1 && e.eta_hat <= 1;
    e.residual = std::abs(optimal_transmission(at_eta(p, e.eta_clamped))
                          - t_meas);
    return e;
}

EtaEstimate eta_from_transmission_full(double t_meas, const ModelParams& p,
                                       Bracket bracket)
{
    require_measurement(t_meas);
    if (!(bracket.lo >= -1 && bracket.hi <= 1 && bracket.lo < bracket.hi))
        throw ValidationError("bracket must be an interval inside [-1, 1]");
    validate_params(at_eta(p, bracket.lo));
    if (!(p.drive_amp > 0))
        throw ValidationError("estimation requires a nonzero drive");

    const int n = monotonicity_samples;
    std::vector<double> eta(n), t(n);
    for (int i = 0; i < n; ++i) {
        eta[i] = bracket.lo + (bracket.hi - bracket.lo) * i / (n - 1);
        t[i] = exact_t(p, eta[i]);
    }

    const bool increasing = std::is_sorted(t.begin(), t.end());
    const bool decreasing = std::is_sorted(t.rbegin(), t.rend());
    const bool monotone = increasing || decreasing;
    if (monotone) {
        const auto [t_min, t_max] = std::minmax(t.front(), t.back());
        if (t_meas < t_min || t_meas > t_max)
            throw ValidationError("measured transmission outside ["
                                  + std::to_string(t_min) + ", "
                                  + std::to_string(t_max)
                                  + "] attained over the bracket");
        return full_estimate(p, t_meas, bisect(p, t_meas, bracket.lo,
                                               bracket.hi),
                             true);
    }

    std::vector<EtaEstimate> candidates;
    for (int i = 0; i + 1 < n; ++i) {
        const double f0 = t[i] - t_meas;
        const double f1 = t[i + 1] - t_meas;
        if (f0 == 0)
            candidates.push_back(full_estimate(p, t_meas, eta[i], false));
        else if ((f0 < 0) != (f1 < 0) && f1 != 0)
            candidates.push_back(full_estimate(
                p, t_meas, bisect(p, t_meas, eta[i], eta[i + 1]), false));
    }
    if (t.back() == t_meas)
        candidates.push_back(full_estimate(p, t_meas, eta.back(), false));
    if (candidates.empty())
        throw ValidationError("measured transmission is not attained over "
                              "the bracket");
    const auto what = "transmission is not monotone in eta over the bracket; "
                      + std::to_string(candidates.size()) + " candidate(s)";
    throw AmbiguousEstimateError(what, std::move(candidates));
}

double sensitivity(const ModelParams& p, double eta)
{
    if (!(p.drive_amp > 0))
        throw ValidationError("sensitivity requires a nonzero drive");
    // <a> = (alpha eta + beta) / D with D independent of eta.
    const auto k = rate_constants(p);
    const double om32_sq = p.omega32_rabi * p.omega32_rabi;
    const cplx ladder = k.K_A * k.K_B + om32_sq;
    const cplx alpha = cplx{0, 1} * p.n_total * p.g_a * p.omega31_rabi
                       * p.omega32_rabi * std::polar(1.0, -p.phi);
    const cplx beta = std::sqrt(p.kappa_a) * p.drive_amp * ladder;
    const cplx denom = k.K_a * ladder + p.g_a * p.g_a * p.n_total * k.K_B;
    const cplx num = alpha * eta + beta;
    return p.kappa_a / (p.drive_amp * p.drive_amp) * 2.0
           * std::real(std::conj(num) * alpha) / std::norm(denom);
}

EtaEstimate with_uncertainty(EtaEstimate e, const ModelParams& p,
                             double t_sigma)
{
    if (!(t_sigma >= 0))
        throw ValidationError("transmission uncertainty must be nonnegative");
    const double slope = std::abs(sensitivity(p, e.eta_clamped));
    e.eta_sigma = slope > 0 ? t_sigma / slope
                            : std::numeric_limits<double>::infinity();
    return e;
}

}  // namespace enantio
