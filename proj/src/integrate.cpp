#include "duhem/integrate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <thread>

namespace duhem {

namespace {

using Vec3 = std::array<double, 3>;

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 0.2;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                 a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                 a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kShrinkLimit = 0.2;
constexpr double kGrowLimit = 10.0;

Vec3 to_vec(const State& s) { return {s.x, s.z, s.v}; }
State to_state(const Vec3& y) { return {y[0], y[1], y[2]}; }

struct RhsCounter {
    const System& sys;
    std::uint64_t evals = 0;

    Vec3 operator()(const Vec3& y) {
        ++evals;
        const State d = rhs(sys, to_state(y));
        return to_vec(d);
    }
};

double error_norm(const Vec3& err, const Vec3& y0, const Vec3& y1, double atol,
                  double rtol) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double sc =
            atol + rtol * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
        const double q = err[i] / sc;
        acc += q * q;
    }
    return std::sqrt(acc / 3.0);
}

double scaled_rms(const Vec3& w, const Vec3& sc) {
    double acc = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double q = w[i] / sc[i];
        acc += q * q;
    }
    return std::sqrt(acc / 3.0);
}

// Standard starting-step heuristic from the scale of y0 and f(y0), refined
// with one explicit Euler probe of the second derivative.
double initial_step(RhsCounter& f, const Vec3& y0, const Vec3& f0,
                    const IntegratorConfig& cfg) {
    Vec3 sc;
    for (int i = 0; i < 3; ++i) {
        sc[i] = cfg.atol + cfg.rtol * std::fabs(y0[i]);
    }
    const double d0 = scaled_rms(y0, sc);
    const double d1 = scaled_rms(f0, sc);
    double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
    h0 = std::min({h0, cfg.h_max, cfg.t_end});

    Vec3 y1;
    for (int i = 0; i < 3; ++i) y1[i] = y0[i] + h0 * f0[i];
    const Vec3 f1 = f(y1);
    Vec3 df;
    for (int i = 0; i < 3; ++i) df[i] = f1[i] - f0[i];
    const double d2 = scaled_rms(df, sc) / h0;

    const double dmax = std::max(d1, d2);
    const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3)
                                    : std::pow(0.01 / dmax, 0.2);
    return std::min({100.0 * h0, h1, cfg.h_max, cfg.t_end});
}

Trajectory integrate_dopri5(const System& sys, const State& init,
                            const IntegratorConfig& cfg) {
    Trajectory traj;
    traj.meta.system_id = sys.id();
    traj.meta.config = cfg;

    RhsCounter f{sys};
    Vec3 y = to_vec(init);
    double t = 0.0;
    traj.times.push_back(t);
    traj.states.push_back(init);

    Vec3 k1 = f(y);
    double h = cfg.h_init > 0.0 ? std::min({cfg.h_init, cfg.h_max, cfg.t_end})
                                : initial_step(f, y, k1, cfg);
    const double h_min = 1e-14 * cfg.t_end;

    std::uint64_t attempts = 0;
    traj.meta.termination_reason = "t_end";
    while (t < cfg.t_end) {
        if (attempts >= cfg.max_steps) {
            traj.meta.termination_reason = "max_steps";
            break;
        }
        ++attempts;

        const bool last = t + h >= cfg.t_end;
        if (last) h = cfg.t_end - t;

        Vec3 k2, k3, k4, k5, k6, k7, y1, ytmp, err;
        for (int i = 0; i < 3; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        k2 = f(ytmp);
        for (int i = 0; i < 3; ++i)
            ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        k3 = f(ytmp);
        for (int i = 0; i < 3; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        k4 = f(ytmp);
        for (int i = 0; i < 3; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                  a54 * k4[i]);
        k5 = f(ytmp);
        for (int i = 0; i < 3; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                  a64 * k4[i] + a65 * k5[i]);
        k6 = f(ytmp);
        for (int i = 0; i < 3; ++i)
            y1[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                b5 * k5[i] + b6 * k6[i]);
        k7 = f(y1);
        for (int i = 0; i < 3; ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                          e6 * k6[i] + e7 * k7[i]);

        const double err_norm =
            error_norm(err, y, y1, cfg.atol, cfg.rtol);

        if (err_norm <= 1.0) {
            t = last ? cfg.t_end : t + h;
            y = y1;
            k1 = k7;  // first-same-as-last
            traj.times.push_back(t);
            traj.states.push_back(to_state(y));
            ++traj.meta.accepted_steps;
            traj.meta.error_estimate_sum +=
                std::max({std::fabs(err[0]), std::fabs(err[1]),
                          std::fabs(err[2])});
            const double fac =
                err_norm == 0.0
                    ? kGrowLimit
                    : std::clamp(kSafety * std::pow(err_norm, -0.2),
                                 kShrinkLimit, kGrowLimit);
            h = std::min(h * fac, cfg.h_max);
        } else {
            ++traj.meta.rejected_steps;
            const double fac = std::clamp(kSafety * std::pow(err_norm, -0.2),
                                          kShrinkLimit, 1.0);
            h *= fac;
            if (h < h_min) {
                throw StepSizeUnderflow(
                    "adaptive step fell below 1e-14 * t_end at t = " +
                    std::to_string(t));
            }
        }
    }

    traj.meta.rhs_evaluations = f.evals;
    return traj;
}

Trajectory integrate_rk4(const System& sys, const State& init,
                         const IntegratorConfig& cfg) {
    Trajectory traj;
    traj.meta.system_id = sys.id();
    traj.meta.config = cfg;
    traj.meta.termination_reason = "t_end";

    RhsCounter f{sys};
    const double h_req = cfg.h_init > 0.0 ? cfg.h_init : 1e-3;
    const auto n_steps = static_cast<std::uint64_t>(
        std::ceil(cfg.t_end / h_req - 1e-12));
    const double h = cfg.t_end / static_cast<double>(n_steps);

    Vec3 y = to_vec(init);
    traj.times.push_back(0.0);
    traj.states.push_back(init);

    for (std::uint64_t step = 0; step < n_steps; ++step) {
        if (step >= cfg.max_steps) {
            traj.meta.termination_reason = "max_steps";
            break;
        }
        const Vec3 k1 = f(y);
        Vec3 ytmp;
        for (int i = 0; i < 3; ++i) ytmp[i] = y[i] + 0.5 * h * k1[i];
        const Vec3 k2 = f(ytmp);
        for (int i = 0; i < 3; ++i) ytmp[i] = y[i] + 0.5 * h * k2[i];
        const Vec3 k3 = f(ytmp);
        for (int i = 0; i < 3; ++i) ytmp[i] = y[i] + h * k3[i];
        const Vec3 k4 = f(ytmp);
        for (int i = 0; i < 3; ++i)
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);

        const double t = step + 1 == n_steps
                             ? cfg.t_end
                             : static_cast<double>(step + 1) * h;
        traj.times.push_back(t);
        traj.states.push_back(to_state(y));
        ++traj.meta.accepted_steps;
    }

    traj.meta.rhs_evaluations = f.evals;
    return traj;
}

}  // namespace

void IntegratorConfig::check() const {
    if (!(rtol > 0.0) || !(atol > 0.0))
        throw InvalidParams("integrator tolerances must be positive");
    if (!(t_end > 0.0)) throw InvalidParams("t_end must be positive");
    if (max_steps < 1) throw InvalidParams("max_steps must be >= 1");
    if (!(h_max > 0.0)) throw InvalidParams("h_max must be positive");
    if (h_init < 0.0) throw InvalidParams("h_init must be >= 0");
}

Trajectory integrate(const System& sys, const State& init,
                     const IntegratorConfig& cfg) {
    cfg.check();
    if (!init.finite()) throw InvalidParams("initial state is not finite");
    switch (cfg.method) {
        case Method::rk4_fixed:
            return integrate_rk4(sys, init, cfg);
        case Method::rk45_adaptive:
        default:
            return integrate_dopri5(sys, init, cfg);
    }
}

std::vector<SweepElement> sweep(const System& sys,
                                const std::vector<State>& inits,
                                const IntegratorConfig& cfg) {
    if (inits.empty()) throw EmptyGrid("sweep over an empty grid");

    std::vector<SweepElement> out(inits.size());
    for (std::size_t i = 0; i < inits.size(); ++i) out[i].init = inits[i];

    const auto run = [&](std::size_t i) {
        try {
            out[i].trajectory = integrate(sys, inits[i], cfg);
        } catch (const Error& e) {
            out[i].error = e.what();
        }
    };

    const std::size_t workers = std::min<std::size_t>(
        std::max(1u, std::thread::hardware_concurrency()), inits.size());
    if (workers <= 1 || inits.size() == 1) {
        for (std::size_t i = 0; i < inits.size(); ++i) run(i);
        return out;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t i = w; i < inits.size(); i += workers) run(i);
        });
    }
    for (auto& th : pool) th.join();
    return out;
}

std::vector<State> init_grid(double lo, double hi, std::size_t count) {
    std::vector<State> grid;
    if (count == 0) return grid;
    std::vector<double> axis;
    if (count == 1) {
        axis.push_back(0.5 * (lo + hi));
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            axis.push_back(lo + (hi - lo) * static_cast<double>(i) /
                                    static_cast<double>(count - 1));
        }
    }
    for (double x : axis)
        for (double z : axis)
            for (double v : axis) grid.push_back({x, z, v});
    return grid;
}

}  // namespace duhem
