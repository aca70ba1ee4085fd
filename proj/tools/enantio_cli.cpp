// Command-line front end: steady, sweep, dynamics, estimate, molecule,
// figures. Exit codes: 0 ok, 1 validation, 2 numerical failure, 3 I/O.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "enantio/config.hpp"
#include "enantio/dynamics.hpp"
#include "enantio/errors.hpp"
#include "enantio/estimation.hpp"
#include "enantio/figures.hpp"
#include "enantio/report.hpp"
#include "enantio/spectroscopy.hpp"
#include "enantio/steady_state.hpp"
#include "enantio/sweep.hpp"

namespace {

using namespace enantio;
using nlohmann::ordered_json;

enum ExitCode
{
    exit_ok = 0,
    exit_validation = 1,
    exit_numerical = 2,
    exit_io = 3,
};

// Writes to `path`, or stdout when empty.
template<class Fn>
void with_output(const std::string& path, Fn&& fn)
{
    if (path.empty() || path == "-") {
        fn(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError("cannot write '" + path + "'");
    fn(out);
    if (!out)
        throw IoError("failed writing '" + path + "'");
}

void write_text(const std::string& path, const std::string& text)
{
    with_output(path, [&](std::ostream& os) { os << text; });
}

Config config_or_preset(const std::string& path)
{
    if (path.empty())
        return preset_config(propanediol_preset);
    return load_config(path);
}

ordered_json estimate_json(const EtaEstimate& e)
{
    ordered_json j{{"eta_hat", e.eta_hat},
                   {"eta_clamped", e.eta_clamped},
                   {"method", to_string(e.method)},
                   {"monotone_regime", e.monotone_regime},
                   {"in_range", e.in_range},
                   {"ambiguous", e.ambiguous},
                   {"residual", e.residual}};
    if (e.eta_sigma)
        j["eta_sigma"] = *e.eta_sigma;
    return j;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Driven-cavity enantiomeric-excess detection model"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_path;
    unsigned threads = 0;

    auto* steady = app.add_subcommand("steady", "one-point steady state and observables");
    steady->add_option("-c,--config", config_path, "config file")->required();
    steady->add_option("-o,--out", out_path, "JSON output (default stdout)");

    std::string axis1_text, axis2_text, observable_name = "transmission";
    auto* sweep = app.add_subcommand("sweep", "two-axis parameter sweep to CSV");
    sweep->add_option("-c,--config", config_path, "config file")->required();
    sweep->add_option("--axis1", axis1_text, "name:lo:hi:points (file units)")->required();
    sweep->add_option("--axis2", axis2_text, "name:lo:hi:points (file units)")->required();
    sweep->add_option("--observable", observable_name,
                      "photon_number|transmission|t_op|delta_t_op|p_e|monotonicity_margin");
    sweep->add_option("-o,--out", out_path, "CSV output; provenance goes to <out>.meta.json")->required();
    sweep->add_option("-j,--threads", threads, "worker threads (default from config)");

    double t_end = 0, dt = 0;
    std::size_t stride = 1;
    bool do_settle = false;
    auto* dyn = app.add_subcommand("dynamics", "integrate the mean-field equations from vacuum");
    dyn->add_option("-c,--config", config_path, "config file")->required();
    dyn->add_option("--t-end", t_end, "end time in s (default 50 / slowest decay)");
    dyn->add_option("--dt", dt, "step in s (default half the stability guard)");
    dyn->add_option("--stride", stride, "record every n-th step");
    dyn->add_flag("--settle", do_settle, "run until settled and report the state as JSON");
    dyn->add_option("-o,--out", out_path, "output (default stdout)");

    std::optional<double> t_meas, t_sigma;
    std::string batch_path, method_name = "closed";
    auto* est = app.add_subcommand("estimate", "infer eta from measured transmission");
    est->add_option("-c,--config", config_path, "config file (eta is ignored)")->required();
    est->add_option("-t,--transmission", t_meas, "single measured transmission");
    est->add_option("--sigma", t_sigma, "uncertainty of the single measurement");
    est->add_option("--batch", batch_path, "CSV of t_meas[,t_sigma] rows");
    est->add_option("--method", method_name, "closed|full")
        ->check(CLI::IsMember({"closed", "full"}));
    est->add_option("-o,--out", out_path, "output (default stdout)");

    double d21_hz = 0, d31_hz = 0;
    double margin = 0;
    auto* mol = app.add_subcommand("molecule", "transition frequencies and phase mismatch");
    mol->add_option("-c,--config", config_path, "config file (default: propanediol preset)");
    mol->add_option("--delta-21-hz", d21_hz, "field detuning fixing the drive frequency");
    mol->add_option("--delta-31-hz", d31_hz, "field detuning of the 1-3 beam");
    mol->add_option("--margin", margin, "sample-size margin in (0, 1] (default from config)");
    mol->add_option("-o,--out", out_path, "JSON output (default stdout)");

    std::string out_dir = "figures";
    auto* figs = app.add_subcommand("figures", "regenerate the canned figure data");
    figs->add_option("-d,--out-dir", out_dir, "output directory");
    figs->add_option("-j,--threads", threads, "worker threads");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_validation;
    }

    try {
        if (steady->parsed()) {
            write_text(out_path, steady_report_json(load_config(config_path)));
        } else if (sweep->parsed()) {
            const auto cfg = load_config(config_path);
            SweepSpec spec{cfg.model, parse_axis(axis1_text),
                           parse_axis(axis2_text),
                           parse_observable(observable_name)};
            const auto result = run_sweep(spec, threads ? threads : cfg.run.threads);
            with_output(out_path, [&](std::ostream& os) { emit_csv(result, os); });
            write_text(out_path + ".meta.json", sweep_metadata_json(result));
        } else if (dyn->parsed()) {
            const auto cfg = load_config(config_path);
            const auto p = validate_params(cfg.model.resolve());
            if (do_settle) {
                SettleOptions opts;
                opts.tol = cfg.run.settle_tol;
                opts.dt = dt;
                const auto r = settle(p, opts);
                const auto lin = solve_steady(p);
                ordered_json j{
                    {"settle_time_s", r.settle_time},
                    {"a", {{"re", r.state.a.real()}, {"im", r.state.a.imag()}}},
                    {"residual", r.state.residual},
                    {"rel_diff_vs_linear",
                     linalg::norm2([&] {
                         auto d = r.state.as_vector();
                         const auto l = lin.as_vector();
                         for (std::size_t i = 0; i < mode_count; ++i)
                             d[i] -= l[i];
                         return d;
                     }()) / std::max(linalg::norm2(lin.as_vector()), 1e-300)},
                    {"low_excitation_warning", r.state.low_excitation_warning}};
                write_text(out_path, j.dump(2) + "\n");
            } else {
                const double slowest = std::min({p.kappa_a, p.gamma_A, p.gamma_B});
                const double te = t_end > 0 ? t_end : 50.0 / slowest;
                const double h = dt > 0 ? dt : 0.5 * max_stable_step(p);
                const auto traj = integrate(p, ModeVector{}, te, h, stride);
                with_output(out_path, [&](std::ostream& os) { emit_trajectory_csv(traj, os); });
            }
        } else if (est->parsed()) {
            const auto cfg = load_config(config_path);
            const auto p = cfg.model.resolve();
            const auto method = method_name == "closed" ? EstimateMethod::closed_form
                                                        : EstimateMethod::full_model;
            if (t_meas.has_value() == !batch_path.empty())
                throw ValidationError("give exactly one of --transmission or --batch");
            if (t_meas) {
                const auto row = estimate_one({*t_meas, t_sigma}, p, method);
                ordered_json j{{"t_meas", *t_meas}};
                j["estimates"] = ordered_json::array();
                for (const auto& e : row.estimates)
                    j["estimates"].push_back(estimate_json(e));
                if (!row.error.empty())
                    j["error"] = row.error;
                write_text(out_path, j.dump(2) + "\n");
                if (row.estimates.empty())
                    return exit_validation;
                if (!row.error.empty())
                    return exit_numerical;
            } else {
                std::ifstream in(batch_path);
                if (!in)
                    throw IoError("cannot open '" + batch_path + "'");
                std::vector<BatchRow> rows;
                for (const auto& m : read_measurements(in))
                    rows.push_back(estimate_one(m, p, method));
                with_output(out_path, [&](std::ostream& os) { emit_estimates_csv(rows, os); });
            }
        } else if (mol->parsed()) {
            const auto cfg = config_or_preset(config_path);
            const RotorSpec rotor = cfg.has_rotor ? cfg.rotor : propanediol_rotor();
            const auto tf = transition_frequencies(rotor);
            const double dk = phase_mismatch(tf, perpendicular_geometry(),
                                             {hz_to_rad(d21_hz), hz_to_rad(d31_hz)});
            const double m = margin > 0 ? margin : cfg.run.sample_margin;
            const auto l = max_sample_size(dk, m);
            ordered_json j{{"omega21_hz", rad_to_hz(tf.omega21)},
                           {"omega31_hz", rad_to_hz(tf.omega31)},
                           {"omega32_hz", rad_to_hz(tf.omega32)},
                           {"phase_mismatch_per_m", dk},
                           {"phase_mismatch_over_2pi_per_m", dk / two_pi},
                           {"sample_margin", m}};
            if (l)
                j["max_sample_size_m"] = *l;
            else
                j["max_sample_size_m"] = "unbounded";
            write_text(out_path, j.dump(2) + "\n");
        } else if (figs->parsed()) {
            for (const auto& o : write_figures(out_dir, threads ? threads : 1))
                std::cout << o.csv.string() << " (" << o.bytes << " bytes)\n";
        }
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return exit_io;
    }
    return exit_ok;
}
