#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "duhem/model.hpp"

namespace duhem {

enum class Method {
    rk45_adaptive,  ///< Dormand-Prince 5(4) embedded pair, adaptive steps
    rk4_fixed,      ///< classic fixed-step RK4; kept as an independent oracle
};

struct IntegratorConfig {
    Method method = Method::rk45_adaptive;
    double rtol = 1e-8;
    double atol = 1e-10;
    double h_init = 0.0;  ///< 0 selects the automatic starting step
    double h_max = 1.0;
    double t_end = 1e4;
    std::uint64_t max_steps = 10'000'000;

    /// Throws InvalidParams when a field is out of range.
    void check() const;
};

struct TrajectoryMeta {
    std::string system_id;
    IntegratorConfig config;
    std::string termination_reason;  ///< "t_end" or "max_steps"
    std::uint64_t accepted_steps = 0;
    std::uint64_t rejected_steps = 0;
    std::uint64_t rhs_evaluations = 0;
    /// Sum of the accepted per-step local error estimates; a crude upper
    /// bound for the accumulated truncation error.
    double error_estimate_sum = 0.0;
};

/// Sampled solution on the accepted-step grid. times[0] = 0, strictly
/// increasing, one state per time, all finite.
struct Trajectory {
    std::vector<double> times;
    std::vector<State> states;
    TrajectoryMeta meta;

    [[nodiscard]] std::size_t size() const noexcept { return times.size(); }
    [[nodiscard]] const State& front() const { return states.front(); }
    [[nodiscard]] const State& back() const { return states.back(); }
};

/// Integrates the oscillator from `init` over [0, t_end]. Throws
/// StepSizeUnderflow when adaptive control stalls and propagates
/// NonFiniteEvaluation from the right-hand side.
Trajectory integrate(const System& sys, const State& init,
                     const IntegratorConfig& cfg);

/// One sweep element: either a trajectory or the error that stopped it.
struct SweepElement {
    State init;
    std::optional<Trajectory> trajectory;
    std::string error;

    [[nodiscard]] bool ok() const noexcept { return trajectory.has_value(); }
};

/// Integrates every initial condition independently (elements may run in
/// parallel; results are deterministic and order-independent). Per-element
/// failures are collected, not fatal. Throws EmptyGrid on an empty input.
std::vector<SweepElement> sweep(const System& sys,
                                const std::vector<State>& inits,
                                const IntegratorConfig& cfg);

/// Expands a regular lattice of initial conditions: `count` points per axis
/// spaced evenly over [lo, hi] (a single point sits at the midpoint).
std::vector<State> init_grid(double lo, double hi, std::size_t count);

}  // namespace duhem
