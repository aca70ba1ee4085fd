#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "enantio/config.hpp"
#include "enantio/dynamics.hpp"
#include "enantio/estimation.hpp"

namespace enantio {

// t_s, then re/im pairs of a, A_L, A_R, B_L, B_R. Returns bytes written.
std::size_t emit_trajectory_csv(const Trajectory& traj, std::ostream& out);

// One-point observables with full parameter provenance.
std::string steady_report_json(const Config& cfg);

struct Measurement
{
    double t_meas = 0;
    std::optional<double> t_sigma;
};

// Rows of "t_meas[,t_sigma]". A first row that does not parse as numbers is
// treated as a header. Blank lines are skipped.
std::vector<Measurement> read_measurements(std::istream& in);

struct BatchRow
{
    Measurement input;
    std::vector<EtaEstimate> estimates;  //!< one, or every ambiguous candidate
    std::string error;                   //!< set when no estimate exists
};

BatchRow estimate_one(const Measurement& m, const ModelParams& p,
                      EstimateMethod method);

std::size_t emit_estimates_csv(const std::vector<BatchRow>& rows,
                               std::ostream& out);

std::string params_json(const ModelParams& p);

}  // namespace enantio
