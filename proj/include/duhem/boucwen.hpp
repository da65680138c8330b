#pragma once

#include <string>

#include "duhem/model.hpp"

namespace duhem {

/// Parameters of the Bouc-Wen oscillator
///
///   x' = v
///   z' = D^-1 A v - D^-1 beta |z|^(n-1) z |v| - D^-1 gamma |z|^n v
///   v' = -alpha (k/m) x - (1 - alpha) D (k/m) z - (b/m) v
///
/// together with the output force F = -alpha k x - (1 - alpha) D k z.
struct BoucWenParams {
    double A = 1.0;
    double beta = 0.5;
    double gamma = 0.25;
    double n = 2.0;       ///< exponent, > 1
    double alpha = 0.5;   ///< in (0, 1)
    double k = 1.0;       ///< stiffness, > 0
    double D = 1.0;       ///< > 0
    double m = 1.0;       ///< mass, > 0
    double b = 0.0;       ///< viscous coefficient, >= 0

    /// Throws InvalidParams when a type invariant is violated
    /// (alpha in (0,1), k > 0, D > 0, n > 1, m > 0, b >= 0, beta != -gamma).
    void check() const;
};

/// Class-I membership: A > 0 and gamma in (-beta, beta].
[[nodiscard]] bool is_class_I(const BoucWenParams& p);

/// Empty string when class I holds, otherwise a description of the violated
/// condition suitable for user-facing messages.
[[nodiscard]] std::string class_I_violation(const BoucWenParams& p);

/// Reduces the Bouc-Wen oscillator to the general Duhem form, in the
/// rescaled internal coordinate Z = z D / A:
///
///   f1(z) = -A^(n-1) D^-n (beta |z|^(n-1) z + gamma |z|^n)
///   f2(z) =  A^(n-1) D^-n (beta |z|^(n-1) z - gamma |z|^n)
///   g1(v) = (v + |v|)/2          g2(v) = (v - |v|)/2
///   h1(x) = alpha (k/m) x        h2(z) = (1 - alpha) A (k/m) z
///   c(x, z, v) = (b/m) v
///
/// h1 and h2 carry exact inverses and antiderivatives. Non-class-I
/// parameters still construct (so validation can be watched failing); a
/// warning note is attached to the system in that case.
[[nodiscard]] System to_duhem(const BoucWenParams& p);

/// Coordinate change between the model's native internal variable and the
/// rescaled one used for simulation: rescale_z(z) = z D / A.
[[nodiscard]] double rescale_z(const BoucWenParams& p, double z_orig);
[[nodiscard]] double unscale_z(const BoucWenParams& p, double z_scaled);

/// Output force in original coordinates: F = -alpha k x - (1 - alpha) D k z.
[[nodiscard]] double output_force(const BoucWenParams& p, double x, double z_orig);

/// Residual of the terminal relation in rescaled coordinates:
/// alpha x + (1 - alpha) A z.
[[nodiscard]] double terminal_residual_rescaled(const BoucWenParams& p, double x,
                                                double z_scaled);

/// Residual of the terminal relation in original coordinates:
/// alpha x + (1 - alpha) D z.
[[nodiscard]] double terminal_residual_original(const BoucWenParams& p, double x,
                                                double z_orig);

}  // namespace duhem
