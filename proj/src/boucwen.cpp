#include "duhem/boucwen.hpp"

#include <cmath>
#include <sstream>

namespace duhem {

void BoucWenParams::check() const {
    std::ostringstream bad;
    if (!(alpha > 0.0 && alpha < 1.0)) bad << "alpha = " << alpha << " not in (0, 1); ";
    if (!(k > 0.0)) bad << "k = " << k << " not > 0; ";
    if (!(D > 0.0)) bad << "D = " << D << " not > 0; ";
    if (!(n > 1.0)) bad << "n = " << n << " not > 1; ";
    if (!(m > 0.0)) bad << "m = " << m << " not > 0; ";
    if (!(b >= 0.0)) bad << "b = " << b << " not >= 0; ";
    if (!(beta != -gamma)) bad << "beta = -gamma = " << beta << "; ";
    const std::string msg = bad.str();
    if (!msg.empty()) throw InvalidParams("invalid Bouc-Wen parameters: " + msg);
}

bool is_class_I(const BoucWenParams& p) {
    return p.A > 0.0 && p.gamma > -p.beta && p.gamma <= p.beta;
}

std::string class_I_violation(const BoucWenParams& p) {
    std::ostringstream os;
    if (!(p.A > 0.0)) {
        os << "A = " << p.A << " not > 0";
    } else if (!(p.gamma > -p.beta && p.gamma <= p.beta)) {
        os << "gamma = " << p.gamma << " outside (-beta, beta] with beta = "
           << p.beta;
    }
    return os.str();
}

System to_duhem(const BoucWenParams& p) {
    p.check();
    const double n = p.n;
    const double scale = std::pow(p.A, n - 1.0) * std::pow(p.D, -n);
    const double cb = scale * p.beta;
    const double cg = scale * p.gamma;
    const double c1 = p.alpha * p.k / p.m;
    const double c2 = (1.0 - p.alpha) * p.A * p.k / p.m;

    ScalarFunction f1;
    f1.name = "f1";
    f1.eval = [cb, cg, n](double z) {
        if (z == 0.0) return 0.0;
        const double az = std::fabs(z);
        const double t = std::pow(az, n - 1.0);
        return -cb * t * z - cg * t * az;
    };
    f1.props = {.zero_at_zero = true, .strictly_increasing = false,
                .locally_lipschitz_claimed = true};

    ScalarFunction f2;
    f2.name = "f2";
    f2.eval = [cb, cg, n](double z) {
        if (z == 0.0) return 0.0;
        const double az = std::fabs(z);
        const double t = std::pow(az, n - 1.0);
        return cb * t * z - cg * t * az;
    };
    f2.props = f1.props;

    ScalarFunction h1;
    h1.name = "h1";
    h1.eval = [c1](double x) { return c1 * x; };
    h1.inverse = [c1](double y) { return y / c1; };
    h1.antiderivative = [c1](double x) { return 0.5 * c1 * x * x; };
    h1.props = {.zero_at_zero = true, .strictly_increasing = true,
                .locally_lipschitz_claimed = true};

    ScalarFunction h2;
    h2.name = "h2";
    h2.eval = [c2](double z) { return c2 * z; };
    h2.inverse = [c2](double y) { return y / c2; };
    h2.antiderivative = [c2](double z) { return 0.5 * c2 * z * z; };
    h2.props = h1.props;

    System sys(std::move(f1), std::move(f2), ramp_positive(), ramp_negative(),
               std::move(h1), std::move(h2), linear_damping(p.b / p.m),
               "bouc_wen");
    if (!is_class_I(p)) {
        sys.add_note("warning: parameters are not class I (" +
                     class_I_violation(p) + "); validation is expected to fail");
    }
    return sys;
}

double rescale_z(const BoucWenParams& p, double z_orig) {
    return z_orig * p.D / p.A;
}

double unscale_z(const BoucWenParams& p, double z_scaled) {
    return z_scaled * p.A / p.D;
}

double output_force(const BoucWenParams& p, double x, double z_orig) {
    return -p.alpha * p.k * x - (1.0 - p.alpha) * p.D * p.k * z_orig;
}

double terminal_residual_rescaled(const BoucWenParams& p, double x,
                                  double z_scaled) {
    return p.alpha * x + (1.0 - p.alpha) * p.A * z_scaled;
}

double terminal_residual_original(const BoucWenParams& p, double x,
                                  double z_orig) {
    return p.alpha * x + (1.0 - p.alpha) * p.D * z_orig;
}

}  // namespace duhem
