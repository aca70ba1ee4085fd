#include "enantio/report.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "enantio/errors.hpp"
#include "enantio/spectroscopy.hpp"
#include "enantio/steady_state.hpp"

namespace enantio {
namespace {

using nlohmann::ordered_json;

ordered_json params_object(const ModelParams& p)
{
    ordered_json o;
    for (const auto& f : model_fields())
        o[std::string(f.key)] = f.get(p);
    return o;
}

ordered_json complex_object(cplx z)
{
    return {{"re", z.real()}, {"im", z.imag()}};
}

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::size_t emit_trajectory_csv(const Trajectory& traj, std::ostream& out)
{
    std::ostringstream buf;
    buf << "t_s,a_re,a_im,A_L_re,A_L_im,A_R_re,A_R_im,B_L_re,B_L_im,B_R_re,"
           "B_R_im\n";
    for (const auto& s : traj.states) {
        buf << format_double(s.t);
        for (const auto& z : s.v)
            buf << ',' << format_double(z.real()) << ','
                << format_double(z.imag());
        buf << '\n';
    }
    const std::string text = buf.str();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw IoError("failed writing trajectory CSV");
    return text.size();
}

std::string params_json(const ModelParams& p)
{
    return params_object(p).dump(2);
}

std::string steady_report_json(const Config& cfg)
{
    const ModelParams p = validate_params(cfg.model.resolve());
    const auto linear = solve_steady(p);
    const cplx closed = intracavity_amplitude_closed(p);
    const double pe = excitation_fraction(linear, p);

    ordered_json doc;
    doc["artifact"] = "enantio";
    doc["version"] = std::string(version);
    if (cfg.preset)
        doc["preset"] = *cfg.preset;
    doc["params"] = params_object(p);

    ordered_json st;
    st["a"] = complex_object(closed);
    st["A_L"] = complex_object(linear.A_L);
    st["A_R"] = complex_object(linear.A_R);
    st["B_L"] = complex_object(linear.B_L);
    st["B_R"] = complex_object(linear.B_R);
    st["photon_number"] = std::norm(closed);
    st["residual"] = linear.residual;
    st["closed_vs_linear_rel_diff"] =
        closed == cplx{} ? std::abs(linear.a)
                         : std::abs(linear.a - closed) / std::abs(closed);
    doc["steady_state"] = st;

    ordered_json obs;
    obs["p_e"] = pe;
    obs["monotonicity_margin_hz2"] = monotonicity_margin(p)
                                     / (two_pi * two_pi);
    obs["rabi_peak_hz"] = rad_to_hz(rabi_peak_detuning(p).first);
    if (p.drive_amp > 0) {
        obs["transmission"] = transmission(p);
        obs["transmission_upper_peak"] =
            peak_transmission(p, PolaritonPeak::upper);
        obs["transmission_lower_peak"] =
            peak_transmission(p, PolaritonPeak::lower);
        try {
            obs["t_op"] = optimal_transmission(p);
            obs["delta_t_op"] = delta_t_op(p);
        } catch (const ValidationError&) {
            obs["t_op"] = nullptr;
            obs["delta_t_op"] = nullptr;
        }
    }
    doc["observables"] = obs;

    std::vector<std::string> warnings;
    if (linear.low_excitation_warning)
        warnings.emplace_back("low_excitation");
    if (monotonicity_margin(p) < 0)
        warnings.emplace_back("non_monotone");
    if (!strong_collective_coupling(p))
        warnings.emplace_back("weak_collective_coupling");
    doc["warnings"] = warnings;
    return doc.dump(2) + "\n";
}

std::vector<Measurement> read_measurements(std::istream& in)
{
    std::vector<Measurement> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        const auto cells = split_csv(line);
        if (cells.size() > 2)
            throw ValidationError("measurement line "
                                  + std::to_string(line_no)
                                  + ": expected t_meas[,t_sigma]");
        try {
            Measurement m;
            m.t_meas = parse_double(cells[0]);
            if (cells.size() == 2
                && cells[1].find_first_not_of(" \t") != std::string::npos)
                m.t_sigma = parse_double(cells[1]);
            out.push_back(m);
        } catch (const ValidationError&) {
            if (out.empty() && line_no == 1)
                continue;  // header
            throw ValidationError("measurement line "
                                  + std::to_string(line_no)
                                  + ": not a number");
        }
    }
    return out;
}

BatchRow estimate_one(const Measurement& m, const ModelParams& p,
                      EstimateMethod method)
{
    BatchRow row{m, {}, {}};
    auto finish = [&](EtaEstimate e) {
        if (m.t_sigma)
            e = with_uncertainty(e, p, *m.t_sigma);
        row.estimates.push_back(e);
    };
    try {
        if (method == EstimateMethod::closed_form)
            finish(eta_from_top_closed(m.t_meas, p));
        else
            finish(eta_from_transmission_full(m.t_meas, p));
    } catch (const AmbiguousEstimateError& e) {
        for (const auto& c : e.candidates())
            finish(c);
        row.error = e.what();
    } catch (const Error& e) {
        row.error = e.what();
    }
    return row;
}

std::size_t emit_estimates_csv(const std::vector<BatchRow>& rows,
                               std::ostream& out)
{
    std::ostringstream buf;
    buf << "t_meas,t_sigma,eta_hat,eta_clamped,eta_sigma,in_range,"
           "monotone_regime,ambiguous,residual,method,status\n";
    for (const auto& r : rows) {
        const std::string sigma = r.input.t_sigma
                                      ? format_double(*r.input.t_sigma)
                                      : "";
        if (r.estimates.empty()) {
            buf << format_double(r.input.t_meas) << ',' << sigma
                << ",nan,nan,,,,,,,failed\n";
            continue;
        }
        for (const auto& e : r.estimates) {
            buf << format_double(r.input.t_meas) << ',' << sigma << ','
                << format_double(e.eta_hat) << ','
                << format_double(e.eta_clamped) << ','
                << (e.eta_sigma ? format_double(*e.eta_sigma) : "") << ','
                << (e.in_range ? 1 : 0) << ',' << (e.monotone_regime ? 1 : 0)
                << ',' << (e.ambiguous ? 1 : 0) << ','
                << format_double(e.residual) << ',' << to_string(e.method)
                << ',' << (e.ambiguous ? "ambiguous" : "ok") << '\n';
        }
    }
    const std::string text = buf.str();
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out)
        throw IoError("failed writing estimates CSV");
    return text.size();
}

}  // namespace enantio
