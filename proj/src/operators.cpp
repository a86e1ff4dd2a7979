#include "hadvo/operators.hpp"

#include <cmath>
#include <mutex>

#include "hadvo/specfun.hpp"

namespace hadvo {

namespace {

using quadrature::QuadratureConfig;
using quadrature::QuadratureResult;

/// Kernel integral of x'(tau) d tau written as a weighted integral of
/// tau * x'(tau) against the d tau/tau measure.
std::function<double(double)> times_t_first_deriv(const FunctionSpec& fs) {
    return [&fs](double tau) { return tau * fs.deriv(1, tau); };
}

void require_first_deriv(const FunctionSpec& fs, const char* who) {
    if (fs.max_order() < 1) {
        throw std::invalid_argument(std::string(who) + ": FunctionSpec must provide x'");
    }
}

double right_deriv_value(const FunctionSpec& fs, const OrderFunction& of, double t,
                         const QuadratureConfig& cfg) {
    const double alpha = of.alpha(t);
    const double ap = of.alpha_prime(t);
    double value = right_marchaud_oracle(fs, of, t, cfg);
    if (ap != 0.0) {
        const auto x = [&fs](double tau) { return fs.value(tau); };
        const QuadratureResult kern =
            quadrature::hadamard_weighted_integral_right(x, t, of.b(), -alpha, true, cfg);
        value += t * ap / specfun::gamma(1.0 - alpha) * kern.value;
    }
    return value;
}

/// One-time numerical witness for the derived right-derivative relation:
/// compare against a central finite difference of the defining
/// t-derivative of the kernel integral (both the limit and the order
/// argument move with t).
void right_deriv_self_test() {
    const double a = 1.0;
    const double b = 5.0;
    const OrderFunction of = OrderFunction::linear(0.0, 0.1, a, b);
    const FunctionSpec fs(
        [b](double t) {
            const double m = std::log(b / t);
            return m * m;
        },
        [b](int j, double t) {
            const double m = std::log(b / t);
            if (j == 1) return -2.0 * m / t;
            if (j == 2) return (2.0 + 2.0 * m) / (t * t);
            throw std::invalid_argument("self-test function: unsupported order");
        },
        2, a, b);

    QuadratureConfig tight;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-13;

    const auto x = [&fs](double tau) { return fs.value(tau); };
    const auto kernel_integral = [&](double s) {
        return quadrature::hadamard_weighted_integral_right(x, s, b, -of.alpha(s),
                                                            false, tight)
            .value;
    };
    constexpr double h = 1e-5;
    for (const double t : {2.0, 3.5}) {
        const double fd = -t / specfun::gamma(1.0 - of.alpha(t)) *
                          (kernel_integral(t + h) - kernel_integral(t - h)) / (2.0 * h);
        const double direct = right_deriv_value(fs, of, t, tight);
        if (std::fabs(fd - direct) > 1e-4 * std::max(1.0, std::fabs(direct))) {
            throw InternalConsistencyError(
                "right_hadamard_deriv_oracle: decomposition disagrees with the "
                "finite-difference evaluation of the defining derivative");
        }
    }
}

}  // namespace

double left_integral_oracle(const FunctionSpec& fs, const OrderFunction& of, double t,
                            const QuadratureConfig& cfg) {
    const double a = of.a();
    if (t == a) return 0.0;
    if (!(t > a && t <= of.b())) {
        throw std::invalid_argument("left_integral_oracle: t outside (a, b]");
    }
    const double alpha = of.alpha(t);
    const auto x = [&fs](double tau) { return fs.value(tau); };
    const QuadratureResult r =
        quadrature::hadamard_weighted_integral(x, a, t, alpha - 1.0, false, cfg);
    return r.value / specfun::gamma(alpha);
}

double left_marchaud_oracle(const FunctionSpec& fs, const OrderFunction& of, double t,
                            const QuadratureConfig& cfg) {
    require_first_deriv(fs, "left_marchaud_oracle");
    const double a = of.a();
    if (!(t > a && t <= of.b())) {
        throw std::invalid_argument(
            "left_marchaud_oracle: t must lie in (a, b] (boundary power diverges at a)");
    }
    const double alpha = of.alpha(t);
    const double big_l = std::log(t / a);
    const double rg = specfun::gamma_reciprocal(1.0 - alpha);
    const QuadratureResult kern = quadrature::hadamard_weighted_integral(
        times_t_first_deriv(fs), a, t, -alpha, false, cfg);
    return rg * (fs.value(a) * std::pow(big_l, -alpha) + kern.value);
}

double left_hadamard_deriv_oracle(const FunctionSpec& fs, const OrderFunction& of,
                                  double t, const QuadratureConfig& cfg) {
    const double alpha = of.alpha(t);
    const double ap = of.alpha_prime(t);
    double value = left_marchaud_oracle(fs, of, t, cfg);
    if (ap != 0.0) {
        const auto x = [&fs](double tau) { return fs.value(tau); };
        const QuadratureResult kern = quadrature::hadamard_weighted_integral(
            x, of.a(), t, -alpha, true, cfg);
        value -= t * ap / specfun::gamma(1.0 - alpha) * kern.value;
    }
    return value;
}

double right_integral_oracle(const FunctionSpec& fs, const OrderFunction& of, double t,
                             const QuadratureConfig& cfg) {
    const double b = of.b();
    if (t == b) return 0.0;
    if (!(t >= of.a() && t < b)) {
        throw std::invalid_argument("right_integral_oracle: t outside [a, b)");
    }
    const double alpha = of.alpha(t);
    const auto x = [&fs](double tau) { return fs.value(tau); };
    const QuadratureResult r =
        quadrature::hadamard_weighted_integral_right(x, t, b, alpha - 1.0, false, cfg);
    return r.value / specfun::gamma(alpha);
}

double right_marchaud_oracle(const FunctionSpec& fs, const OrderFunction& of, double t,
                             const QuadratureConfig& cfg) {
    require_first_deriv(fs, "right_marchaud_oracle");
    const double b = of.b();
    if (!(t >= of.a() && t < b)) {
        throw std::invalid_argument(
            "right_marchaud_oracle: t must lie in [a, b) (boundary power diverges at b)");
    }
    const double alpha = of.alpha(t);
    const double big_m = std::log(b / t);
    const double rg = specfun::gamma_reciprocal(1.0 - alpha);
    const QuadratureResult kern = quadrature::hadamard_weighted_integral_right(
        times_t_first_deriv(fs), t, b, -alpha, false, cfg);
    return rg * (fs.value(b) * std::pow(big_m, -alpha) - kern.value);
}

double right_hadamard_deriv_oracle(const FunctionSpec& fs, const OrderFunction& of,
                                   double t, const QuadratureConfig& cfg) {
    static std::once_flag tested;
    std::call_once(tested, right_deriv_self_test);
    return right_deriv_value(fs, of, t, cfg);
}

double caputo_left_oracle(const FunctionSpec& fs, const OrderFunction& of, double t,
                          const QuadratureConfig& cfg) {
    require_first_deriv(fs, "caputo_left_oracle");
    const double a = of.a();
    if (!(t > a && t <= of.b())) {
        throw std::invalid_argument("caputo_left_oracle: t outside (a, b]");
    }
    const double alpha = of.alpha(t);
    const double ap = of.alpha_prime(t);
    const auto integrand = times_t_first_deriv(fs);

    double direct = 0.0;
    double direct_err = 0.0;
    const QuadratureResult plain =
        quadrature::hadamard_weighted_integral(integrand, a, t, -alpha, false, cfg);
    direct += plain.value / specfun::gamma(1.0 - alpha);
    direct_err += plain.error_estimate;
    if (ap != 0.0) {
        const QuadratureResult power = quadrature::hadamard_weighted_integral(
            integrand, a, t, 1.0 - alpha, false, cfg);
        const QuadratureResult power_log = quadrature::hadamard_weighted_integral(
            integrand, a, t, 1.0 - alpha, true, cfg);
        direct += t * ap / specfun::gamma(2.0 - alpha) *
                  (power.value / (1.0 - alpha) - power_log.value);
        direct_err += power.error_estimate + power_log.error_estimate;
    }

    const FunctionSpec shifted = fs.shifted_by(fs.value(a));
    const double via_shift = left_hadamard_deriv_oracle(shifted, of, t, cfg);

    const double tol = 100.0 * (direct_err + std::fabs(direct) * cfg.rel_tol) +
                       1e-8 * std::max(1.0, std::fabs(direct));
    if (std::fabs(direct - via_shift) > tol) {
        throw InternalConsistencyError(
            "caputo_left_oracle: direct quadrature and shifted-function routes disagree");
    }
    return direct;
}

double closed_form_logpower(LogPowerKind kind, double beta, const OrderFunction& of,
                            double a, double t) {
    if (!(beta > -1.0)) {
        throw std::invalid_argument("closed_form_logpower: beta must exceed -1");
    }
    if (!(a > 0.0) || t < a) {
        throw std::invalid_argument("closed_form_logpower: need 0 < a <= t");
    }
    const double alpha = of.alpha(t);
    const double big_l = std::log(t / a);
    const double gb1 = specfun::gamma(beta + 1.0);
    switch (kind) {
        case LogPowerKind::integral:
            return gb1 * specfun::gamma_reciprocal(beta + alpha + 1.0) *
                   std::pow(big_l, beta + alpha);
        case LogPowerKind::marchaud:
            if (t == a) {
                throw std::invalid_argument("closed_form_logpower: derivative kinds need t > a");
            }
            return gb1 * specfun::gamma_reciprocal(beta - alpha + 1.0) *
                   std::pow(big_l, beta - alpha);
        case LogPowerKind::hadamard_deriv: {
            if (t == a) {
                throw std::invalid_argument("closed_form_logpower: derivative kinds need t > a");
            }
            const double marchaud = gb1 * specfun::gamma_reciprocal(beta - alpha + 1.0) *
                                    std::pow(big_l, beta - alpha);
            const double bracket = std::log(big_l) + specfun::digamma(1.0 - alpha) -
                                   specfun::digamma(beta - alpha + 2.0);
            return marchaud - t * of.alpha_prime(t) * gb1 *
                                  specfun::gamma_reciprocal(beta - alpha + 2.0) *
                                  std::pow(big_l, beta - alpha + 1.0) * bracket;
        }
    }
    throw std::logic_error("closed_form_logpower: unreachable");
}

}  // namespace hadvo
