#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "enantio/config.hpp"

namespace enantio {

enum class Observable
{
    photon_number,  //!< |<a>|^2
    transmission,
    t_op,
    delta_t_op,
    p_e,
    monotonicity_margin,  //!< reported in Hz^2
};

std::string_view to_string(Observable o);
Observable parse_observable(std::string_view name);

struct SweepAxis
{
    std::string name;  //!< a model_fields() key; values in file units
    double lo = 0;
    double hi = 0;
    std::size_t points = 2;

    double value(std::size_t i) const;
};

// "name:lo:hi:points"
SweepAxis parse_axis(std::string_view text);

struct SweepSpec
{
    ModelConfig base;
    SweepAxis axis1;
    SweepAxis axis2;
    Observable observable = Observable::photon_number;
};

void validate_sweep(const SweepSpec& s);

// Per-point diagnostics; these are part of the data, not log output.
enum PointWarning : std::uint8_t
{
    warn_low_excitation = 1,   //!< P_e above the low-excitation threshold
    warn_non_monotone = 2,     //!< negative monotonicity margin
    warn_weak_collective = 4,  //!< g_a sqrt(N) < 10x every other rate
};

std::string warning_names(std::uint8_t flags);

struct PointResult
{
    double value = 0;
    bool ok = true;
    std::uint8_t warnings = 0;
    std::string error;  //!< set when !ok
};

struct SweepResult
{
    SweepSpec spec;
    //! Row-major: index = i1 * axis2.points + i2.
    std::vector<PointResult> points;

    const PointResult& at(std::size_t i1, std::size_t i2) const
    {
        return points[i1 * spec.axis2.points + i2];
    }
};

// Parameters of one grid point, locks re-applied.
ModelParams grid_params(const SweepSpec& s, std::size_t i1, std::size_t i2);

// Evaluate one observable plus the warning flags at p.
PointResult evaluate_point(const ModelParams& p, Observable o);

/*!
 * Evaluate the grid with a pool of `workers` threads.
 *
 * All grid points are validated before any evaluation; the first invalid
 * point aborts with its coordinates. Output is ordered by grid index and does
 * not depend on the worker count.
 */
SweepResult run_sweep(const SweepSpec& s, unsigned workers = 1);

// Header: axis1, axis2, observable (with units), status, warnings. Failed
// points carry status "failed" and value nan. Returns bytes written.
std::size_t emit_csv(const SweepResult& r, std::ostream& out);
std::size_t emit_csv(const SweepResult& r, const std::filesystem::path& path);

// Header name of the observable column, e.g. "transmission".
std::string observable_column(Observable o);

// Provenance side-car: base parameters in file units, locks, axes, version.
std::string sweep_metadata_json(const SweepResult& r);

}  // namespace enantio
