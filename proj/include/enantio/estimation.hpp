#pragma once

#include <optional>
#include <string>
#include <vector>

#include "enantio/errors.hpp"
#include "enantio/params.hpp"

namespace enantio {

enum class EstimateMethod
{
    closed_form,  //!< inversion of the optimal-transmission formula
    full_model,   //!< bisection on the exact transmission
};

const char* to_string(EstimateMethod m);

struct EtaEstimate
{
    double eta_hat = 0;      //!< raw estimate, may lie outside [-1, 1]
    double eta_clamped = 0;  //!< eta_hat clamped to [-1, 1]
    EstimateMethod method = EstimateMethod::closed_form;
    bool monotone_regime = false;
    bool in_range = false;
    bool ambiguous = false;
    double residual = 0;  //!< |T(eta_hat) - T_measured|
    //! First-order interval from a transmission uncertainty, when supplied.
    std::optional<double> eta_sigma;
};

//! Thrown when T(eta) is not one-to-one over the bracket.
class AmbiguousEstimateError : public NumericalError
{
  public:
    AmbiguousEstimateError(const std::string& what,
                           std::vector<EtaEstimate> candidates)
        : NumericalError(what), candidates_(std::move(candidates))
    {
    }

    const std::vector<EtaEstimate>& candidates() const noexcept
    {
        return candidates_;
    }

  private:
    std::vector<EtaEstimate> candidates_;
};

struct Bracket
{
    double lo = -1;
    double hi = 1;
};

// Number of samples used to test T(eta) for monotonicity.
inline constexpr int monotonicity_samples = 401;

inline constexpr double bisection_tolerance = 1e-10;

/*!
 * Invert the optimal-transmission formula for eta.
 *
 * Requires phi to be a multiple of pi (the caller declares the operating
 * branch through p.phi) and a nonnegative monotonicity margin; p.eta is
 * ignored. Measurements above the attainable maximum throw ValidationError.
 * Values below the minimum give in_range = false and an unclamped eta_hat.
 */
EtaEstimate eta_from_top_closed(double t_meas, const ModelParams& p);

// Bisection on the exact transmission T(eta) over the bracket. Throws
// AmbiguousEstimateError (with every crossing found) when T is not monotone
// and ValidationError when t_meas lies outside the attained range.
EtaEstimate eta_from_transmission_full(double t_meas, const ModelParams& p,
                                       Bracket bracket = {});

// dT/d eta of the exact transmission at the given eta.
double sensitivity(const ModelParams& p, double eta);

// Attach a first-order eta uncertainty sigma_T / |dT/d eta| to an estimate.
EtaEstimate with_uncertainty(EtaEstimate e, const ModelParams& p,
                             double t_sigma);

}  // namespace enantio
