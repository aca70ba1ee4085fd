#include <doctest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "enantio/dynamics.hpp"
#include "enantio/errors.hpp"
#include "fixtures.hpp"

using namespace enantio;

namespace {

double rel_dist(const ModeVector& x, const ModeVector& y)
{
    ModeVector d;
    for (std::size_t i = 0; i < mode_count; ++i)
        d[i] = x[i] - y[i];
    return linalg::norm2(d) / std::max(linalg::norm2(y), 1e-300);
}

// v(t) = v* + exp(M t) (v0 - v*), with the exponential from Eigen.
ModeVector exact_solution(const DriftSystem& d, const ModeVector& v0, double t)
{
    Eigen::MatrixXcd m(mode_count, mode_count);
    Eigen::VectorXcd s(mode_count), x0(mode_count);
    for (std::size_t i = 0; i < mode_count; ++i) {
        for (std::size_t j = 0; j < mode_count; ++j)
            m(i, j) = d.matrix[i][j];
        s(i) = d.source[i];
        x0(i) = v0[i];
    }
    const Eigen::VectorXcd fixed = m.partialPivLu().solve(-s);
    const Eigen::MatrixXcd prop = (m * t).exp();
    const Eigen::VectorXcd x = fixed + prop * (x0 - fixed);
    ModeVector out;
    for (std::size_t i = 0; i < mode_count; ++i)
        out[i] = x(i);
    return out;
}

double slowest(const ModelParams& p)
{
    return std::min({p.kappa_a, p.gamma_A, p.gamma_B});
}

}  // namespace

TEST_CASE("derivative vanishes at the steady state")
{
    const auto p = testing::point_b(0.5, 0);
    const auto d = build_drift(p);
    const auto v = solve_steady(p).as_vector();
    CHECK(linalg::norm2(derivative(v, p)) <= 1e-8 * linalg::norm2(d.source));
}

TEST_CASE("derivative from vacuum is the source")
{
    auto p = baseline_params();
    p.eta = 0.3;
    p.set_drive_flux_hz(100e6);
    const auto d = build_drift(p);
    const auto f = derivative(ModeVector{}, p);
    for (std::size_t i = 0; i < mode_count; ++i)
        CHECK(f[i] == d.source[i]);

    p.drive_amp = 0;
    p.omega31_rabi = 0;
    for (const auto& z : derivative(ModeVector{}, p))
        CHECK(z == cplx{});
}

TEST_CASE("integration preserves the fixed point")
{
    const auto p = testing::point_b(0.5, 0);
    auto v0 = solve_steady(p).as_vector();
    v0[mode_a] = intracavity_amplitude_closed(p);
    const auto traj = integrate(p, v0, 2e-6, max_stable_step(p), 1000);
    CHECK(rel_dist(traj.states.back().v, v0) <= 1e-8);
}

TEST_CASE("integration from vacuum relaxes to the linear solve")
{
    const auto p = testing::point_b(0.5, 0);
    const double t_end = 50 / slowest(p);
    const auto traj = integrate(p, ModeVector{}, t_end, 0.5 * max_stable_step(p), 100000);
    CHECK(traj.states.back().t == doctest::Approx(t_end).epsilon(1e-12));
    CHECK(rel_dist(traj.states.back().v, solve_steady(p).as_vector()) <= 1e-6);
    CHECK(traj.final_residual <= 1e-10);
}

TEST_CASE("trajectory bookkeeping")
{
    const auto p = testing::point_b(0.5, 0);
    const double h = max_stable_step(p);
    const auto traj = integrate(p, ModeVector{}, 95.5 * h, h, 10);
    CHECK(traj.dt <= h);
    CHECK(traj.states.front().t == 0);
    // 96 steps -> records at 0, 10, ..., 90 and the final step.
    CHECK(traj.states.size() == 11);
    for (std::size_t i = 1; i < traj.states.size(); ++i)
        CHECK(traj.states[i].t > traj.states[i - 1].t);
}

TEST_CASE("racemic undriven cavity stays empty at every step")
{
    auto p = baseline_params();
    p.eta = 0;
    const auto traj = integrate(p, ModeVector{}, 5 / slowest(p), max_stable_step(p), 1);
    for (const auto& s : traj.states)
        REQUIRE(s.v[mode_a] == cplx{});
    CHECK(std::abs(traj.states.back().v[mode_BL]) > 0);
}

TEST_CASE("fourth-order convergence")
{
    const auto p = testing::point_b(0.5, 0);
    const auto d = build_drift(p);
    const double h0 = max_stable_step(p);
    const double t_end = 400 * h0;
    const auto exact = exact_solution(d, ModeVector{}, t_end);

    double prev = 0;
    for (int k = 0; k < 3; ++k) {
        const double h = h0 / (1 << k);
        const auto traj = integrate(p, ModeVector{}, t_end, h, 1u << 20);
        const double err = rel_dist(traj.states.back().v, exact);
        if (k > 0) {
            const double ratio = prev / err;
            CHECK(ratio > 13);
            CHECK(ratio < 19);
        }
        prev = err;
    }
}

TEST_CASE("homogeneous integration is linear in the initial state")
{
    auto p = testing::point_b(0.2, 0.4);
    p.drive_amp = 0;
    p.omega31_rabi = 0;
    const ModeVector v0{cplx{1, 2}, cplx{-0.5, 0.1}, cplx{0, 3}, cplx{2, -1}, cplx{0.3, 0.3}};
    const cplx alpha{-1.7, 0.6};
    ModeVector scaled;
    for (std::size_t i = 0; i < mode_count; ++i)
        scaled[i] = alpha * v0[i];
    const double t_end = 2e-7;
    const auto a = integrate(p, v0, t_end, max_stable_step(p), 1u << 20).states.back().v;
    const auto b = integrate(p, scaled, t_end, max_stable_step(p), 1u << 20).states.back().v;
    ModeVector expect;
    for (std::size_t i = 0; i < mode_count; ++i)
        expect[i] = alpha * a[i];
    CHECK(rel_dist(b, expect) <= 1e-12);
}

TEST_CASE("step guard and bad inputs")
{
    const auto p = testing::point_b();
    CHECK_THROWS_AS(integrate(p, ModeVector{}, 1e-6, 2 * max_stable_step(p)), ValidationError);
    CHECK_THROWS_AS(integrate(p, ModeVector{}, -1, max_stable_step(p)), ValidationError);
    CHECK_THROWS_AS(integrate(p, ModeVector{cplx{NAN, 0}}, 1e-6, max_stable_step(p)),
                    ValidationError);
    CHECK(max_stable_step(p) == doctest::Approx(0.1 / fastest_rate(p)));
}

TEST_CASE("settle matches the linear solve")
{
    for (const auto& p : {testing::point_b(0.5, 0), testing::photon_peak_params()}) {
        const auto r = settle(p, {.tol = 1e-6});
        CHECK(rel_dist(r.state.as_vector(), solve_steady(p).as_vector()) <= 1e-6);
        CHECK(r.settle_time > 0);
        CHECK(r.state.residual <= 1e-6);
        CHECK_FALSE(r.state.low_excitation_warning);
    }
}

TEST_CASE("settle does not depend on the step")
{
    const auto p = testing::point_b(-0.3, 0);
    const auto a = settle(p, {.tol = 1e-7, .dt = 0.5 * max_stable_step(p)});
    const auto b = settle(p, {.tol = 1e-7, .dt = 0.25 * max_stable_step(p)});
    CHECK(rel_dist(a.state.as_vector(), b.state.as_vector()) <= 1e-6);
}

TEST_CASE("overdamped empty cavity settles like a single mode")
{
    auto p = baseline_params();
    p.g_a = 0;
    p.omega31_rabi = 0;
    p.omega32_rabi = 0;
    p.delta_a = 0;
    p.set_drive_flux_hz(1e6);
    const auto r = settle(p, {.tol = 1e-6});
    const cplx expected = std::sqrt(p.kappa_a) * p.drive_amp / cplx{p.kappa_a, p.delta_a};
    CHECK(testing::rel_diff(r.state.a, expected) <= 1e-6);
    CHECK(r.settle_time * p.kappa_a > 5);
    CHECK(r.settle_time * p.kappa_a < 25);
}

TEST_CASE("unstable systems hit the convergence cap")
{
    DriftSystem d;
    for (std::size_t i = 0; i < mode_count; ++i)
        d.matrix[i][i] = -1e3;
    d.matrix[mode_a][mode_a] = +1e3;  // negative decay
    d.source[mode_a] = 1;
    CHECK_THROWS_AS(settle(d, {.tol = 1e-6, .dt = 1e-5}), ConvergenceError);

    // A stable system with too small a cap also fails.
    d.matrix[mode_a][mode_a] = -1e3;
    CHECK_THROWS_AS(settle(d, {.tol = 1e-6, .dt = 1e-5, .cap_damping_times = 1}),
                    ConvergenceError);
    CHECK_NOTHROW(settle(d, {.tol = 1e-6, .dt = 1e-5}));
}
