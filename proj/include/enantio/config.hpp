#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "enantio/params.hpp"
#include "enantio/spectroscopy.hpp"

namespace enantio {

inline constexpr std::string_view version = "0.1.0";
inline constexpr std::string_view propanediol_preset = "propanediol-1,2";

//! One ModelParams field as it appears in files: frequencies in Hz.
struct ParamField
{
    std::string_view key;
    double (*get)(const ModelParams&);
    void (*set)(ModelParams&, double);
};

std::span<const ParamField> model_fields();
const ParamField* find_model_field(std::string_view key);

enum class DetuningLock
{
    none,
    upper_polariton,  //!< delta_21 = +g_a sqrt(N)
    lower_polariton,  //!< delta_21 = -g_a sqrt(N)
};

/*!
 * Model parameters plus the symbolic detuning relations a config can state.
 *
 * The locks are re-applied by resolve() whenever a field changes, so a sweep
 * over g_a keeps delta_21 on the polariton peak and delta_a tied to delta_21.
 */
struct ModelConfig
{
    ModelParams params;
    DetuningLock delta_21_lock = DetuningLock::none;
    bool cavity_follows_21 = false;

    ModelParams resolve() const;
    // Set a field by config key and drop any lock that the field overrides.
    void set(std::string_view key, double value_in_file_units);
};

struct RunOptions
{
    unsigned threads = 1;
    double settle_tol = 1e-6;
    double sample_margin = 1.0;
};

struct Config
{
    ModelConfig model;
    RotorSpec rotor;
    bool has_rotor = false;
    RunOptions run;
    std::optional<std::string> preset;
};

// Baseline model and the propanediol rotor.
Config preset_config(std::string_view name);

/*!
 * Parse an INI-style document:
 *
 *   preset = propanediol-1,2
 *   [model]  g_a_hz, omega31_hz, ..., eta
 *   [rotor]  a_hz, b_hz, c_hz, vib_hz
 *   [run]    threads, settle_tol, sample_margin
 *
 * Unknown sections or keys are errors. The resolved parameters are
 * validated; violations name the offending key where one is known.
 */
Config parse_config(std::istream& in, const std::string& source_name = "<config>");
Config load_config(const std::filesystem::path& path);

// Locale-independent shortest-round-trip-safe formatting (17 significant
// digits) and the strict inverse.
std::string format_double(double v);
double parse_double(std::string_view text);

}  // namespace enantio
