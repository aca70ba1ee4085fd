#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "enantio/sweep.hpp"

namespace enantio {

struct FigureSpec
{
    std::string name;  //!< output stem, e.g. "fig2a_photon_number"
    std::string description;
    SweepSpec sweep;
};

/*!
 * Canned figure grids.
 *
 * Grid ranges and resolutions are choices of this tool: they bracket the
 * plotted axes and place the quoted operating points (A, B) on grid nodes.
 *
 *   fig2{a,b,c}  |<a>|^2 over delta_21 in [-150, 150] MHz (301) x g_a in
 *                [0, 15] kHz (61); no drive, eta = 0.9; delta_31 = 0, -2, +2 MHz
 *   fig3{a..d}   T over delta_21 in [-150, 150] MHz (601) x eta in [-1, 1] (5);
 *                eps_d^2 / 2pi = 400 MHz; phi = 0, pi/3, 2pi/3, pi
 *   fig4{a,b}    delta T_op and the monotonicity margin over omega32 in
 *                [0, 100] kHz (41) x eps_d^2 / 2pi in [10, 800] MHz (80);
 *                kappa_a / 2pi = 1, 4 MHz
 *   fig5{a,b}    T_op and P_e over eta in [-1, 1] (201) x phi in {0, pi}
 */
std::vector<FigureSpec> figure_specs();

struct FigureOutput
{
    std::string name;
    std::filesystem::path csv;
    std::filesystem::path metadata;
    std::size_t bytes = 0;
};

// Run every canned sweep, writing <name>.csv and <name>.meta.json.
std::vector<FigureOutput> write_figures(const std::filesystem::path& dir,
                                        unsigned workers);

}  // namespace enantio
