#include "enantio/config.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "enantio/errors.hpp"
#include "enantio/steady_state.hpp"

namespace enantio {
namespace {

namespace pt = boost::property_tree;

// clang-format off
constexpr std::array<ParamField, 13> fields{{
    {"g_a_hz",        [](const ModelParams& p) { return rad_to_hz(p.g_a); },
                      [](ModelParams& p, double v) { p.g_a = hz_to_rad(v); }},
    {"omega31_hz",    [](const ModelParams& p) { return rad_to_hz(p.omega31_rabi); },
                      [](ModelParams& p, double v) { p.omega31_rabi = hz_to_rad(v); }},
    {"omega32_hz",    [](const ModelParams& p) { return rad_to_hz(p.omega32_rabi); },
                      [](ModelParams& p, double v) { p.omega32_rabi = hz_to_rad(v); }},
    {"phi_rad",       [](const ModelParams& p) { return p.phi; },
                      [](ModelParams& p, double v) { p.phi = v; }},
    {"delta_a_hz",    [](const ModelParams& p) { return rad_to_hz(p.delta_a); },
                      [](ModelParams& p, double v) { p.delta_a = hz_to_rad(v); }},
    {"delta_21_hz",   [](const ModelParams& p) { return rad_to_hz(p.delta_21); },
                      [](ModelParams& p, double v) { p.delta_21 = hz_to_rad(v); }},
    {"delta_31_hz",   [](const ModelParams& p) { return rad_to_hz(p.delta_31); },
                      [](ModelParams& p, double v) { p.delta_31 = hz_to_rad(v); }},
    {"kappa_a_hz",    [](const ModelParams& p) { return rad_to_hz(p.kappa_a); },
                      [](ModelParams& p, double v) { p.kappa_a = hz_to_rad(v); }},
    {"gamma_a_hz",    [](const ModelParams& p) { return rad_to_hz(p.gamma_A); },
                      [](ModelParams& p, double v) { p.gamma_A = hz_to_rad(v); }},
    {"gamma_b_hz",    [](const ModelParams& p) { return rad_to_hz(p.gamma_B); },
                      [](ModelParams& p, double v) { p.gamma_B = hz_to_rad(v); }},
    {"drive_flux_hz", [](const ModelParams& p) { return p.drive_flux_hz(); },
                      [](ModelParams& p, double v) {
                          // Negative values reach validation as a negative amplitude.
                          if (v < 0) { p.drive_amp = -std::sqrt(-hz_to_rad(v)); return; }
                          p.set_drive_flux_hz(v); }},
    {"n_total",       [](const ModelParams& p) { return p.n_total; },
                      [](ModelParams& p, double v) { p.n_total = v; }},
    {"eta",           [](const ModelParams& p) { return p.eta; },
                      [](ModelParams& p, double v) { p.eta = v; }},
}};
// clang-format on

[[noreturn]] void fail(const std::string& source, const std::string& msg)
{
    throw ValidationError(source + ": " + msg);
}

double parse_value(const std::string& source, const std::string& key,
                   const std::string& text)
{
    try {
        return parse_double(text);
    } catch (const ValidationError&) {
        fail(source, "key '" + key + "': not a number: '" + text + "'");
    }
}

void read_model(const pt::ptree& section, Config& cfg,
                const std::string& source)
{
    for (const auto& [key, node] : section) {
        const std::string text = node.get_value<std::string>();
        if (!node.empty())
            fail(source, "unexpected nesting under [model]." + key);
        if (key == "delta_21_hz" && text == "upper_polariton") {
            cfg.model.delta_21_lock = DetuningLock::upper_polariton;
            continue;
        }
        if (key == "delta_21_hz" && text == "lower_polariton") {
            cfg.model.delta_21_lock = DetuningLock::lower_polariton;
            continue;
        }
        if (key == "delta_a_hz" && text == "delta_21") {
            cfg.model.cavity_follows_21 = true;
            continue;
        }
        if (key == "phi_rad" && (text == "pi" || text == "-pi")) {
            cfg.model.set(key, text == "pi" ? std::numbers::pi
                                            : -std::numbers::pi);
            continue;
        }
        if (!find_model_field(key))
            fail(source, "unknown key [model]." + key);
        cfg.model.set(key, parse_value(source, key, text));
    }
}

void read_rotor(const pt::ptree& section, Config& cfg,
                const std::string& source)
{
    if (!cfg.has_rotor)
        cfg.rotor = {};
    cfg.has_rotor = true;
    for (const auto& [key, node] : section) {
        const double v = parse_value(source, key, node.get_value<std::string>());
        if (key == "a_hz")
            cfg.rotor.A = hz_to_rad(v);
        else if (key == "b_hz")
            cfg.rotor.B = hz_to_rad(v);
        else if (key == "c_hz")
            cfg.rotor.C = hz_to_rad(v);
        else if (key == "vib_hz")
            cfg.rotor.omega_vib = hz_to_rad(v);
        else
            fail(source, "unknown key [rotor]." + key);
    }
}

void read_run(const pt::ptree& section, Config& cfg, const std::string& source)
{
    for (const auto& [key, node] : section) {
        const double v = parse_value(source, key, node.get_value<std::string>());
        if (key == "threads") {
            if (!(v >= 1 && v <= 1024 && v == std::floor(v)))
                fail(source, "[run].threads must be an integer in [1, 1024]");
            cfg.run.threads = static_cast<unsigned>(v);
        } else if (key == "settle_tol") {
            if (!(v > 0))
                fail(source, "[run].settle_tol must be positive");
            cfg.run.settle_tol = v;
        } else if (key == "sample_margin") {
            if (!(v > 0 && v <= 1))
                fail(source, "[run].sample_margin must lie in (0, 1]");
            cfg.run.sample_margin = v;
        } else {
            fail(source, "unknown key [run]." + key);
        }
    }
}

// Map validation messages back to the config key that feeds them.
std::string key_for_message(const std::string& msg)
{
    static const std::pair<const char*, const char*> map[] = {
        {"kappa_a", "kappa_a_hz"}, {"gamma_A", "gamma_a_hz"},
        {"gamma_B", "gamma_b_hz"}, {"g_a", "g_a_hz"},
        {"omega31", "omega31_hz"}, {"omega32", "omega32_hz"},
        {"drive_amp", "drive_flux_hz"}, {"n_total", "n_total"},
        {"eta", "eta"}};
    for (const auto& [needle, key] : map)
        if (msg.rfind(needle, 0) == 0)
            return key;
    return {};
}

}  // namespace

std::span<const ParamField> model_fields()
{
    return fields;
}

const ParamField* find_model_field(std::string_view key)
{
    for (const auto& f : fields)
        if (f.key == key)
            return &f;
    return nullptr;
}

ModelParams ModelConfig::resolve() const
{
    ModelParams p = params;
    switch (delta_21_lock) {
        case DetuningLock::upper_polariton:
            p.delta_21 = rabi_peak_detuning(p).first;
            break;
        case DetuningLock::lower_polariton:
            p.delta_21 = rabi_peak_detuning(p).second;
            break;
        case DetuningLock::none:
            break;
    }
    if (cavity_follows_21)
        p.delta_a = p.delta_21;
    return p;
}

void ModelConfig::set(std::string_view key, double value)
{
    const auto* f = find_model_field(key);
    if (!f)
        throw ValidationError("unknown parameter '" + std::string(key) + "'");
    if (!std::isfinite(value))
        throw ValidationError("parameter '" + std::string(key)
                              + "' must be finite");
    f->set(params, value);
    if (key == "delta_21_hz")
        delta_21_lock = DetuningLock::none;
    if (key == "delta_a_hz")
        cavity_follows_21 = false;
}

Config preset_config(std::string_view name)
{
    if (name != propanediol_preset)
        throw ValidationError("unknown preset '" + std::string(name) + "'");
    Config cfg;
    cfg.preset = std::string(name);
    cfg.model.params = baseline_params();
    cfg.model.delta_21_lock = DetuningLock::upper_polariton;
    cfg.model.cavity_follows_21 = true;
    cfg.rotor = propanediol_rotor();
    cfg.has_rotor = true;
    return cfg;
}

Config parse_config(std::istream& in, const std::string& source)
{
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        fail(source, "line " + std::to_string(e.line()) + ": " + e.message());
    }

    Config cfg;
    if (auto preset = tree.get_optional<std::string>("preset");
        preset && tree.get_child("preset").empty())
        cfg = preset_config(*preset);

    for (const auto& [name, node] : tree) {
        if (name == "preset" && node.empty())
            continue;
        if (node.empty())
            fail(source, "unknown top-level key '" + name + "'");
        if (name == "model")
            read_model(node, cfg, source);
        else if (name == "rotor")
            read_rotor(node, cfg, source);
        else if (name == "run")
            read_run(node, cfg, source);
        else
            fail(source, "unknown section [" + name + "]");
    }

    try {
        validate_params(cfg.model.resolve());
        if (cfg.has_rotor)
            validate_rotor(cfg.rotor);
    } catch (const ValidationError& e) {
        const std::string key = key_for_message(e.what());
        fail(source, (key.empty() ? "" : "key '" + key + "': ") + e.what());
    }
    return cfg;
}

Config load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot open config '" + path.string() + "'");
    return parse_config(in, path.string());
}

std::string format_double(double v)
{
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

double parse_double(std::string_view text)
{
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t'
                             || text.back() == '\r'))
        text.remove_suffix(1);
    if (!text.empty() && text.front() == '+')
        text.remove_prefix(1);
    double v = 0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{}
        || res.ptr != text.data() + text.size())
        throw ValidationError("not a number: '" + std::string(text) + "'");
    return v;
}

}  // namespace enantio
