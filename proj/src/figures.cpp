#include "enantio/figures.hpp"

#include <fstream>
#include <numbers>

#include "enantio/errors.hpp"

namespace enantio {
namespace {

ModelConfig detection_base()
{
    ModelConfig m;
    m.params = baseline_params();
    m.delta_21_lock = DetuningLock::none;
    m.cavity_follows_21 = true;
    return m;
}

SweepAxis axis(std::string name, double lo, double hi, std::size_t n)
{
    return {std::move(name), lo, hi, n};
}

}  // namespace

std::vector<FigureSpec> figure_specs()
{
    std::vector<FigureSpec> out;

    const std::pair<const char*, double> fig2[] = {
        {"fig2a", 0.0}, {"fig2b", -2e6}, {"fig2c", 2e6}};
    for (const auto& [tag, d31] : fig2) {
        auto base = detection_base();
        base.params.drive_amp = 0;
        base.params.eta = 0.9;
        base.set("delta_31_hz", d31);
        out.push_back({std::string(tag) + "_photon_number",
                       "intracavity photon number without drive",
                       {base, axis("delta_21_hz", -150e6, 150e6, 301),
                        axis("g_a_hz", 0, 15e3, 61),
                        Observable::photon_number}});
    }

    const std::pair<const char*, double> fig3[] = {
        {"fig3a", 0.0},
        {"fig3b", std::numbers::pi / 3},
        {"fig3c", 2 * std::numbers::pi / 3},
        {"fig3d", std::numbers::pi}};
    for (const auto& [tag, phi] : fig3) {
        auto base = detection_base();
        base.params.set_drive_flux_hz(400e6);
        base.params.phi = phi;
        out.push_back({std::string(tag) + "_transmission",
                       "drive transmission versus detuning and eta",
                       {base, axis("delta_21_hz", -150e6, 150e6, 601),
                        axis("eta", -1, 1, 5), Observable::transmission}});
    }

    const std::pair<const char*, double> fig4[] = {{"fig4a", 1e6},
                                                   {"fig4b", 4e6}};
    for (const auto& [tag, kappa] : fig4) {
        auto base = detection_base();
        base.delta_21_lock = DetuningLock::upper_polariton;
        base.set("kappa_a_hz", kappa);
        base.params.set_drive_flux_hz(400e6);
        const auto omega = axis("omega32_hz", 0, 100e3, 41);
        const auto flux = axis("drive_flux_hz", 10e6, 800e6, 80);
        out.push_back({std::string(tag) + "_delta_t_op",
                       "optimal-transmission contrast", {base, omega, flux,
                                                         Observable::delta_t_op}});
        out.push_back({std::string(tag) + "_monotonicity_margin",
                       "monotone (>= 0) versus non-monotone regions",
                       {base, omega, flux, Observable::monotonicity_margin}});
    }

    auto fig5 = detection_base();
    fig5.delta_21_lock = DetuningLock::upper_polariton;
    fig5.set("kappa_a_hz", 4e6);
    fig5.set("omega32_hz", 50e3);
    fig5.params.set_drive_flux_hz(400e6);
    const auto eta = axis("eta", -1, 1, 201);
    const auto phi = axis("phi_rad", 0, std::numbers::pi, 2);
    out.push_back({"fig5a_t_op", "optimal transmission versus eta",
                   {fig5, eta, phi, Observable::t_op}});
    out.push_back({"fig5b_p_e", "excitation fraction versus eta",
                   {fig5, eta, phi, Observable::p_e}});
    return out;
}

std::vector<FigureOutput> write_figures(const std::filesystem::path& dir,
                                        unsigned workers)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw IoError("cannot create '" + dir.string() + "': " + ec.message());

    std::vector<FigureOutput> out;
    for (const auto& fig : figure_specs()) {
        const auto result = run_sweep(fig.sweep, workers);
        FigureOutput o{fig.name, dir / (fig.name + ".csv"),
                       dir / (fig.name + ".meta.json"), 0};
        o.bytes = emit_csv(result, o.csv);
        std::ofstream meta(o.metadata, std::ios::binary);
        meta << sweep_metadata_json(result);
        if (!meta)
            throw IoError("cannot write '" + o.metadata.string() + "'");
        out.push_back(std::move(o));
    }
    return out;
}

}  // namespace enantio
