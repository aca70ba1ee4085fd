#include "enantio/sweep.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "enantio/errors.hpp"
#include "enantio/steady_state.hpp"

namespace enantio {
namespace {

constexpr std::pair<Observable, std::string_view> observable_names[] = {
    {Observable::photon_number, "photon_number"},
    {Observable::transmission, "transmission"},
    {Observable::t_op, "t_op"},
    {Observable::delta_t_op, "delta_t_op"},
    {Observable::p_e, "p_e"},
    {Observable::monotonicity_margin, "monotonicity_margin"},
};

void check_axis(const SweepAxis& a)
{
    if (!find_model_field(a.name))
        throw ValidationError("sweep axis '" + a.name
                              + "' is not a model parameter");
    if (a.points < 2)
        throw ValidationError("sweep axis '" + a.name
                              + "' needs at least 2 points");
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi))
        throw ValidationError("sweep axis '" + a.name
                              + "' has a non-finite range");
}

std::string json_lock(DetuningLock l)
{
    switch (l) {
        case DetuningLock::upper_polariton: return "upper_polariton";
        case DetuningLock::lower_polariton: return "lower_polariton";
        case DetuningLock::none: break;
    }
    return "none";
}

}  // namespace

std::string_view to_string(Observable o)
{
    for (const auto& [k, name] : observable_names)
        if (k == o)
            return name;
    return "unknown";
}

Observable parse_observable(std::string_view name)
{
    for (const auto& [k, n] : observable_names)
        if (n == name)
            return k;
    throw ValidationError("unknown observable '" + std::string(name) + "'");
}

std::string observable_column(Observable o)
{
    if (o == Observable::monotonicity_margin)
        return "monotonicity_margin_hz2";
    return std::string(to_string(o));
}

double SweepAxis::value(std::size_t i) const
{
    if (i + 1 == points)
        return hi;
    return lo + (hi - lo) * static_cast<double>(i)
                    / static_cast<double>(points - 1);
}

SweepAxis parse_axis(std::string_view text)
{
    std::vector<std::string> parts;
    std::string cur;
    for (char c : text) {
        if (c == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 4)
        throw ValidationError("axis must be name:lo:hi:points, got '"
                              + std::string(text) + "'");
    SweepAxis a;
    a.name = parts[0];
    a.lo = parse_double(parts[1]);
    a.hi = parse_double(parts[2]);
    const double n = parse_double(parts[3]);
    if (!(n >= 2 && n == std::floor(n) && n < 1e8))
        throw ValidationError("axis point count must be an integer >= 2");
    a.points = static_cast<std::size_t>(n);
    check_axis(a);
    return a;
}

void validate_sweep(const SweepSpec& s)
{
    check_axis(s.axis1);
    check_axis(s.axis2);
    if (s.axis1.name == s.axis2.name)
        throw ValidationError("sweep axes must differ");
}

std::string warning_names(std::uint8_t flags)
{
    std::string out;
    auto add = [&](std::uint8_t bit, const char* name) {
        if (flags & bit) {
            if (!out.empty())
                out += ';';
            out += name;
        }
    };
    add(warn_low_excitation, "low_excitation");
    add(warn_non_monotone, "non_monotone");
    add(warn_weak_collective, "weak_collective_coupling");
    return out;
}

ModelParams grid_params(const SweepSpec& s, std::size_t i1, std::size_t i2)
{
    ModelConfig cfg = s.base;
    cfg.set(s.axis1.name, s.axis1.value(i1));
    cfg.set(s.axis2.name, s.axis2.value(i2));
    return cfg.resolve();
}

PointResult evaluate_point(const ModelParams& p, Observable o)
{
    PointResult r;
    try {
        const auto st = solve_steady(p);
        const double pe = excitation_fraction(st, p);
        if (st.low_excitation_warning)
            r.warnings |= warn_low_excitation;
        if (monotonicity_margin(p) < 0)
            r.warnings |= warn_non_monotone;
        if (!strong_collective_coupling(p))
            r.warnings |= warn_weak_collective;

        switch (o) {
            case Observable::photon_number:
                r.value = std::norm(intracavity_amplitude_closed(p));
                break;
            case Observable::transmission: r.value = transmission(p); break;
            case Observable::t_op: r.value = optimal_transmission(p); break;
            case Observable::delta_t_op: r.value = delta_t_op(p); break;
            case Observable::p_e: r.value = pe; break;
            case Observable::monotonicity_margin:
                r.value = monotonicity_margin(p) / (two_pi * two_pi);
                break;
        }
        if (!std::isfinite(r.value))
            throw NumericalError("non-finite observable");
    } catch (const Error& e) {
        r.ok = false;
        r.value = std::nan("");
        r.error = e.what();
    }
    return r;
}

SweepResult run_sweep(const SweepSpec& s, unsigned workers)
{
    validate_sweep(s);
    const std::size_t n1 = s.axis1.points;
    const std::size_t n2 = s.axis2.points;

    std::vector<ModelParams> grid(n1 * n2);
    for (std::size_t i1 = 0; i1 < n1; ++i1) {
        for (std::size_t i2 = 0; i2 < n2; ++i2) {
            auto p = grid_params(s, i1, i2);
            try {
                validate_params(p);
            } catch (const ValidationError& e) {
                throw ValidationError(
                    "grid point (" + s.axis1.name + " = "
                    + format_double(s.axis1.value(i1)) + ", " + s.axis2.name
                    + " = " + format_double(s.axis2.value(i2))
                    + "): " + e.what());
            }
            grid[i1 * n2 + i2] = p;
        }
    }

    SweepResult out;
    out.spec = s;
    out.points.resize(grid.size());

    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++)
            out.points[i] = evaluate_point(grid[i], s.observable);
    };

    const unsigned n_threads = std::max(1u, std::min<unsigned>(
                                                workers, grid.size()));
    std::vector<std::jthread> pool;
    for (unsigned t = 1; t < n_threads; ++t)
        pool.emplace_back(work);
    work();
    pool.clear();
    return out;
}

std::size_t emit_csv(const SweepResult& r, std::ostream& out)
{
    const auto& s = r.spec;
    std::ostringstream buf;
    buf << s.axis1.name << ',' << s.axis2.name << ','
        << observable_column(s.observable) << ",status,warnings\n";
    for (std::size_t i1 = 0; i1 < s.axis1.points; ++i1) {
        for (std::size_t i2 = 0; i2 < s.axis2.points; ++i2) {
            const auto& pt = r.at(i1, i2);
            buf << format_double(s.axis1.value(i1)) << ','
                << format_double(s.axis2.value(i2)) << ','
                << (pt.ok ? format_double(pt.value) : "nan") << ','
                << (pt.ok ? "ok" : "failed") << ','
                << warning_names(pt.warnings) << '\n';
        }
    }
    const std::string text = buf.str();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw IoError("failed writing CSV");
    return text.size();
}

std::size_t emit_csv(const SweepResult& r, const std::filesystem::path& path)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + path.string() + "'");
    return emit_csv(r, out);
}

std::string sweep_metadata_json(const SweepResult& r)
{
    using nlohmann::ordered_json;
    const auto& s = r.spec;
    ordered_json base;
    for (const auto& f : model_fields())
        base[std::string(f.key)] = f.get(s.base.params);

    auto axis = [](const SweepAxis& a) {
        return ordered_json{{"name", a.name}, {"lo", a.lo}, {"hi", a.hi},
                            {"points", a.points}};
    };
    std::size_t failed = 0;
    for (const auto& p : r.points)
        failed += p.ok ? 0 : 1;

    ordered_json doc{
        {"artifact", "enantio"},
        {"version", std::string(version)},
        {"observable", std::string(to_string(s.observable))},
        {"axis1", axis(s.axis1)},
        {"axis2", axis(s.axis2)},
        {"base", base},
        {"delta_21_lock", json_lock(s.base.delta_21_lock)},
        {"cavity_follows_21", s.base.cavity_follows_21},
        {"failed_points", failed},
    };
    return doc.dump(2) + "\n";
}

}  // namespace enantio
