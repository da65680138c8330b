#include "duhem/model.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <utility>

namespace duhem {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

}  // namespace

bool State::finite() const noexcept {
    return std::isfinite(x) && std::isfinite(z) && std::isfinite(v);
}

double inf_norm(const State& s) noexcept {
    return std::max({std::fabs(s.x), std::fabs(s.z), std::fabs(s.v)});
}

double inf_dist(const State& a, const State& b) noexcept {
    return std::max({std::fabs(a.x - b.x), std::fabs(a.z - b.z),
                     std::fabs(a.v - b.v)});
}

double norm2(const State& s) noexcept {
    return std::sqrt(s.x * s.x + s.z * s.z + s.v * s.v);
}

double ScalarFunction::operator()(double u) const {
    const double y = eval(u);
    if (!std::isfinite(y)) {
        throw NonFiniteEvaluation(name + "(" + fmt(u) + ") is not finite");
    }
    return y;
}

double DampingFunction::operator()(double x, double z, double v) const {
    const double y = eval(x, z, v);
    if (!std::isfinite(y)) {
        throw NonFiniteEvaluation(name + "(" + fmt(x) + ", " + fmt(z) + ", " +
                                  fmt(v) + ") is not finite");
    }
    return y;
}

System::System(ScalarFunction f1, ScalarFunction f2, ScalarFunction g1,
               ScalarFunction g2, ScalarFunction h1, ScalarFunction h2,
               DampingFunction c, std::string id)
    : f1_(std::move(f1)),
      f2_(std::move(f2)),
      g1_(std::move(g1)),
      g2_(std::move(g2)),
      h1_(std::move(h1)),
      h2_(std::move(h2)),
      c_(std::move(c)),
      id_(std::move(id)) {
    for (const ScalarFunction* h : {&h1_, &h2_}) {
        if (!h->props.strictly_increasing || !h->props.zero_at_zero) {
            throw InvalidParams(h->name +
                                " must declare strictly_increasing and zero_at_zero");
        }
    }
    for (const ScalarFunction* f : {&f1_, &f2_, &g1_, &g2_, &h1_, &h2_}) {
        if (!f->eval) throw InvalidParams(f->name + " has no eval");
    }
    if (!c_.eval) throw InvalidParams("c has no eval");
}

State rhs(const System& sys, const State& s) {
    const double f1 = sys.f1().eval(s.z);
    const double f2 = sys.f2().eval(s.z);
    const double g1 = sys.g1().eval(s.v);
    const double g2 = sys.g2().eval(s.v);
    const double h1 = sys.h1().eval(s.x);
    const double h2 = sys.h2().eval(s.z);
    const double c = sys.c().eval(s.x, s.z, s.v);

    State d{s.v, s.v + f1 * g1 + f2 * g2, -h1 - h2 - c};
    if (!d.finite()) {
        // Slow path: rerun through the checked evaluators to name the culprit.
        sys.f1()(s.z);
        sys.f2()(s.z);
        sys.g1()(s.v);
        sys.g2()(s.v);
        sys.h1()(s.x);
        sys.h2()(s.z);
        sys.c()(s.x, s.z, s.v);
        throw NonFiniteEvaluation("rhs overflowed while combining finite terms");
    }
    return d;
}

std::vector<double> GridSpec::points() const {
    std::vector<double> pts;
    if (!(step > 0.0) || !(hi > lo)) return pts;
    const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step));
    pts.reserve(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double u = lo + static_cast<double>(i) * step;
        if (std::fabs(u) <= exclusion) continue;
        pts.push_back(u);
    }
    return pts;
}

std::string ValidationReport::summary() const {
    if (passed()) return "validated: all sampled conditions hold";
    std::ostringstream os;
    os << violations.size() << " condition(s) violated:";
    for (const auto& v : violations) {
        os << "\n  - " << v.condition << ": " << v.witness;
        if (v.count > 1) os << " (+" << v.count - 1 << " more sample points)";
    }
    return os.str();
}

struct ValidationAccess {
    static void mark(const System& sys, bool ok) { validated_of(sys)->store(ok); }
    static std::shared_ptr<std::atomic<bool>> validated_of(const System& sys) {
        return sys.validated_;
    }
};

namespace {

class ViolationSink {
public:
    void add(const std::string& condition, const std::string& witness) {
        for (auto& v : report_.violations) {
            if (v.condition == condition) {
                ++v.count;
                return;
            }
        }
        report_.violations.push_back({condition, witness, 1});
    }

    ValidationReport take() { return std::move(report_); }

private:
    ValidationReport report_;
};

std::vector<double> coarsen(const std::vector<double>& pts, std::size_t target) {
    std::vector<double> out;
    if (pts.empty()) return out;
    const std::size_t stride = std::max<std::size_t>(1, pts.size() / target);
    for (std::size_t i = 0; i < pts.size(); i += stride) out.push_back(pts[i]);
    return out;
}

void check_zero_at_zero(const ScalarFunction& f, ViolationSink& sink) {
    const double y = f.eval(0.0);
    if (y != 0.0) {
        sink.add(f.name + "(0) = 0",
                 f.name + "(0) = " + fmt(y) + " (expected exactly 0)");
    }
}

void check_inverse(const ScalarFunction& f, const std::vector<double>& ys,
                   ViolationSink& sink) {
    if (!f.inverse) return;
    for (double y : ys) {
        const double round_trip = f.eval((*f.inverse)(y));
        if (!(std::fabs(round_trip - y) <= 1e-10)) {
            sink.add(f.name + " inverse consistency",
                     f.name + "(" + f.name + "^-1(" + fmt(y) + ")) = " +
                         fmt(round_trip));
        }
    }
}

void check_antiderivative(const ScalarFunction& f, const std::vector<double>& us,
                          ViolationSink& sink) {
    if (!f.antiderivative) return;
    const auto& F = *f.antiderivative;
    for (double u : us) {
        const double delta = 1e-5 * std::max(1.0, std::fabs(u));
        const double slope = (F(u + delta) - F(u - delta)) / (2.0 * delta);
        if (!(std::fabs(slope - f.eval(u)) <= 1e-6)) {
            sink.add(f.name + " antiderivative consistency",
                     "d/du " + f.name + "_antideriv(" + fmt(u) + ") = " +
                         fmt(slope) + " but " + f.name + "(" + fmt(u) + ") = " +
                         fmt(f.eval(u)));
        }
    }
}

}  // namespace

ValidationReport validate(const System& sys, const GridSpec& grid) {
    ViolationSink sink;
    const std::vector<double> pts = grid.points();

    for (const ScalarFunction* f :
         {&sys.f1(), &sys.f2(), &sys.g1(), &sys.g2(), &sys.h1(), &sys.h2()}) {
        check_zero_at_zero(*f, sink);
    }

    // Sign table for the hysteretic switching functions.
    for (double z : pts) {
        const double f1 = sys.f1().eval(z);
        const double f2 = sys.f2().eval(z);
        if (z < 0.0) {
            if (!(f1 > 0.0))
                sink.add("f1(z) > 0 for z < 0",
                         "f1(" + fmt(z) + ") = " + fmt(f1) + " not > 0");
            if (!(f2 < 0.0))
                sink.add("f2(z) < 0 for z < 0",
                         "f2(" + fmt(z) + ") = " + fmt(f2) + " not < 0");
        } else {
            if (!(f1 < 0.0))
                sink.add("f1(z) < 0 for z > 0",
                         "f1(" + fmt(z) + ") = " + fmt(f1) + " not < 0");
            if (!(f2 > 0.0))
                sink.add("f2(z) > 0 for z > 0",
                         "f2(" + fmt(z) + ") = " + fmt(f2) + " not > 0");
        }
    }
    for (double v : pts) {
        const double g1 = sys.g1().eval(v);
        const double g2 = sys.g2().eval(v);
        if (v > 0.0) {
            if (!(g1 > 0.0))
                sink.add("g1(v) > 0 for v > 0",
                         "g1(" + fmt(v) + ") = " + fmt(g1) + " not > 0");
            if (g2 != 0.0)
                sink.add("g2(v) = 0 for v > 0",
                         "g2(" + fmt(v) + ") = " + fmt(g2) + " not 0");
        } else {
            if (g1 != 0.0)
                sink.add("g1(v) = 0 for v < 0",
                         "g1(" + fmt(v) + ") = " + fmt(g1) + " not 0");
            if (!(g2 < 0.0))
                sink.add("g2(v) < 0 for v < 0",
                         "g2(" + fmt(v) + ") = " + fmt(g2) + " not < 0");
        }
    }

    // Strict monotonicity of the restoring forces.
    for (const ScalarFunction* h : {&sys.h1(), &sys.h2()}) {
        double prev_u = 0.0, prev_y = 0.0;
        bool have_prev = false;
        for (double u : pts) {
            const double y = h->eval(u);
            if (have_prev && !(y > prev_y)) {
                sink.add(h->name + " strictly increasing",
                         h->name + "(" + fmt(u) + ") = " + fmt(y) + " not > " +
                             h->name + "(" + fmt(prev_u) + ") = " + fmt(prev_y));
            }
            prev_u = u;
            prev_y = y;
            have_prev = true;
        }
    }

    // Damping: c(x, z, 0) = 0 and v c(x, z, v) >= 0 on a coarse lattice.
    const std::vector<double> coarse = coarsen(pts, 16);
    for (double x : coarse) {
        for (double z : coarse) {
            const double at_rest = sys.c().eval(x, z, 0.0);
            if (at_rest != 0.0) {
                sink.add("c(x, z, 0) = 0", "c(" + fmt(x) + ", " + fmt(z) +
                                               ", 0) = " + fmt(at_rest));
            }
            for (double v : coarse) {
                const double power = v * sys.c().eval(x, z, v);
                if (!(power >= 0.0)) {
                    sink.add("0 <= v c(x, z, v)",
                             "v c = " + fmt(power) + " at (" + fmt(x) + ", " +
                                 fmt(z) + ", " + fmt(v) + ")");
                }
            }
        }
    }

    const std::vector<double> sample = coarsen(pts, 40);
    for (const ScalarFunction* f :
         {&sys.f1(), &sys.f2(), &sys.g1(), &sys.g2(), &sys.h1(), &sys.h2()}) {
        check_inverse(*f, sample, sink);
        check_antiderivative(*f, sample, sink);
    }

    ValidationReport report = sink.take();
    ValidationAccess::mark(sys, report.passed());
    return report;
}

// Built-in families -----------------------------------------------------------

ScalarFunction power_law(double kappa, double p, std::string name) {
    if (!(kappa > 0.0) || !(p >= 1.0)) {
        throw InvalidParams("power_law requires kappa > 0 and p >= 1");
    }
    ScalarFunction f;
    f.name = name.empty() ? "power_law" : std::move(name);
    f.eval = [kappa, p](double u) {
        return u == 0.0 ? 0.0 : kappa * std::copysign(std::pow(std::fabs(u), p), u);
    };
    f.inverse = [kappa, p](double y) {
        return y == 0.0 ? 0.0
                        : std::copysign(std::pow(std::fabs(y) / kappa, 1.0 / p), y);
    };
    f.antiderivative = [kappa, p](double u) {
        return kappa * std::pow(std::fabs(u), p + 1.0) / (p + 1.0);
    };
    f.props = {.zero_at_zero = true,
               .strictly_increasing = true,
               .locally_lipschitz_claimed = true};
    return f;
}

ScalarFunction signed_power(double coeff, double p, std::string name) {
    if (!(p >= 1.0)) throw InvalidParams("signed_power requires p >= 1");
    ScalarFunction f;
    f.name = name.empty() ? "signed_power" : std::move(name);
    f.eval = [coeff, p](double u) {
        return u == 0.0 ? 0.0 : coeff * std::copysign(std::pow(std::fabs(u), p), u);
    };
    f.props = {.zero_at_zero = true,
               .strictly_increasing = coeff > 0.0,
               .locally_lipschitz_claimed = true};
    return f;
}

ScalarFunction ramp_positive(std::string name) {
    ScalarFunction f;
    f.name = std::move(name);
    f.eval = [](double v) { return (v + std::fabs(v)) / 2.0; };
    f.props = {.zero_at_zero = true,
               .strictly_increasing = false,
               .locally_lipschitz_claimed = true};
    return f;
}

ScalarFunction ramp_negative(std::string name) {
    ScalarFunction f;
    f.name = std::move(name);
    f.eval = [](double v) { return (v - std::fabs(v)) / 2.0; };
    f.props = {.zero_at_zero = true,
               .strictly_increasing = false,
               .locally_lipschitz_claimed = true};
    return f;
}

DampingFunction linear_damping(double b_over_m) {
    if (!(b_over_m >= 0.0)) throw InvalidParams("linear damping needs b/m >= 0");
    return {[b_over_m](double, double, double v) { return b_over_m * v; },
            "linear_damping"};
}

DampingFunction cubic_damping(double d) {
    if (!(d >= 0.0)) throw InvalidParams("cubic damping needs d >= 0");
    return {[d](double, double, double v) { return d * v * v * v; },
            "cubic_damping"};
}

DampingFunction zero_damping() {
    return {[](double, double, double) { return 0.0; }, "zero_damping"};
}

System make_custom_system(ScalarFunction h1, ScalarFunction h2, double f_gain,
                          double f_exponent, DampingFunction c, std::string id) {
    if (!(f_gain > 0.0)) throw InvalidParams("custom system needs f_gain > 0");
    ScalarFunction f1 = signed_power(-f_gain, f_exponent, "f1");
    ScalarFunction f2 = signed_power(f_gain, f_exponent, "f2");
    h1.name = "h1";
    h2.name = "h2";
    return System(std::move(f1), std::move(f2), ramp_positive(), ramp_negative(),
                  std::move(h1), std::move(h2), std::move(c), std::move(id));
}

}  // namespace duhem
