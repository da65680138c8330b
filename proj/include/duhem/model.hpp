#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "duhem/errors.hpp"

namespace duhem {

/// One point of the oscillator state space.
struct State {
    double x = 0.0;  ///< displacement
    double z = 0.0;  ///< hysteretic internal variable
    double v = 0.0;  ///< velocity

    [[nodiscard]] bool finite() const noexcept;
};

[[nodiscard]] double inf_norm(const State& s) noexcept;
[[nodiscard]] double inf_dist(const State& a, const State& b) noexcept;
[[nodiscard]] double norm2(const State& s) noexcept;

/// Structural claims attached to a ScalarFunction. Claims are checked by
/// sampling in validate(); local Lipschitz continuity is declared only,
/// never verified.
struct FunctionProps {
    bool zero_at_zero = false;
    bool strictly_increasing = false;
    bool locally_lipschitz_claimed = true;
};

/// An evaluable real map with optional exact inverse and antiderivative.
/// The antiderivative F must satisfy F(0) = 0.
struct ScalarFunction {
    std::function<double(double)> eval;
    std::optional<std::function<double(double)>> inverse;
    std::optional<std::function<double(double)>> antiderivative;
    FunctionProps props;
    std::string name = "f";

    /// Checked evaluation: throws NonFiniteEvaluation when the result is
    /// NaN or infinite.
    double operator()(double u) const;
};

/// Damping term c(x, z, v); required to satisfy c(x, z, 0) = 0 and
/// 0 <= v c(x, z, v).
struct DampingFunction {
    std::function<double(double, double, double)> eval;
    std::string name = "c";

    double operator()(double x, double z, double v) const;
};

/// The seven constituent functions of the oscillator
///
///   x' = v
///   z' = v + f1(z) g1(v) + f2(z) g2(v)
///   v' = -h1(x) - h2(z) - c(x, z, v)
///
/// Immutable after construction; all operations on it are pure and safe to
/// call concurrently. h1 and h2 must declare strictly_increasing and
/// zero_at_zero (construction throws InvalidParams otherwise).
class System {
public:
    System(ScalarFunction f1, ScalarFunction f2, ScalarFunction g1,
           ScalarFunction g2, ScalarFunction h1, ScalarFunction h2,
           DampingFunction c, std::string id = "custom");

    [[nodiscard]] const ScalarFunction& f1() const noexcept { return f1_; }
    [[nodiscard]] const ScalarFunction& f2() const noexcept { return f2_; }
    [[nodiscard]] const ScalarFunction& g1() const noexcept { return g1_; }
    [[nodiscard]] const ScalarFunction& g2() const noexcept { return g2_; }
    [[nodiscard]] const ScalarFunction& h1() const noexcept { return h1_; }
    [[nodiscard]] const ScalarFunction& h2() const noexcept { return h2_; }
    [[nodiscard]] const DampingFunction& c() const noexcept { return c_; }

    [[nodiscard]] const std::string& id() const noexcept { return id_; }

    /// Free-form advisory notes attached by factories (e.g. a class
    /// membership warning). Never affects evaluation.
    [[nodiscard]] const std::vector<std::string>& notes() const noexcept { return notes_; }
    void add_note(std::string note) { notes_.push_back(std::move(note)); }

    /// True once validate() has run on this system (or a copy of it) with
    /// zero violations.
    [[nodiscard]] bool is_validated() const noexcept { return validated_->load(); }

private:
    friend struct ValidationAccess;

    ScalarFunction f1_, f2_, g1_, g2_, h1_, h2_;
    DampingFunction c_;
    std::string id_;
    std::vector<std::string> notes_;
    std::shared_ptr<std::atomic<bool>> validated_ =
        std::make_shared<std::atomic<bool>>(false);
};

/// The right-hand side (x', z', v') of the oscillator at state s.
/// Throws NonFiniteEvaluation if any constituent misbehaves.
State rhs(const System& sys, const State& s);

/// Symmetric sampling grid for structural validation. Points within
/// `exclusion` of zero are skipped by the strict-sign checks; conditions at
/// zero itself are tested against the exact representable 0.0.
struct GridSpec {
    double lo = -10.0;
    double hi = 10.0;
    double step = 0.01;
    double exclusion = 1e-12;

    [[nodiscard]] std::vector<double> points() const;
};

/// One violated structural condition, with the first witness found and the
/// total number of sample points that violated it.
struct Violation {
    std::string condition;
    std::string witness;
    std::size_t count = 1;
};

struct ValidationReport {
    std::vector<Violation> violations;

    [[nodiscard]] bool passed() const noexcept { return violations.empty(); }
    [[nodiscard]] std::string summary() const;
};

/// Samples every structural condition of the model class over `grid`:
/// zeros at the origin, the sign table for f1/f2/g1/g2, strict monotonicity
/// of h1/h2, the damping conditions, and the consistency of any declared
/// inverse or antiderivative. Violations are data, not errors. A passing
/// report marks the system validated.
ValidationReport validate(const System& sys, const GridSpec& grid = {});

// Built-in function families -------------------------------------------------

/// kappa * sign(u) * |u|^p with exact inverse and antiderivative.
/// Requires kappa > 0 and p >= 1.
ScalarFunction power_law(double kappa, double p, std::string name = "");

/// coeff * sign(u) * |u|^p with no exact forms attached. Intended for the
/// f-type switching gains, where coeff may carry either sign.
ScalarFunction signed_power(double coeff, double p, std::string name = "");

/// (v + |v|)/2: identity on v > 0, zero on v <= 0.
ScalarFunction ramp_positive(std::string name = "g1");

/// (v - |v|)/2: zero on v >= 0, identity on v < 0.
ScalarFunction ramp_negative(std::string name = "g2");

DampingFunction linear_damping(double b_over_m);
DampingFunction cubic_damping(double d);
DampingFunction zero_damping();

/// Assembles a non-Bouc-Wen oscillator from power-law restoring forces
/// h1, h2, switching gains f1 = -mu sign(z)|z|^q, f2 = +mu sign(z)|z|^q
/// (mu > 0, q >= 1) and an arbitrary damping term.
System make_custom_system(ScalarFunction h1, ScalarFunction h2, double f_gain,
                          double f_exponent, DampingFunction c,
                          std::string id = "custom");

}  // namespace duhem
