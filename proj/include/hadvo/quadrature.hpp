#pragma once

#include <functional>
#include <stdexcept>

/// Adaptive integration of smooth integrands and of the weakly singular
/// logarithmic kernels (ln(t/tau))^mu, optionally times ln(ln(t/tau)),
/// that appear in every operator oracle.
namespace hadvo::quadrature {

/// Tolerances and budget for one integration call.
struct QuadratureConfig {
    double rel_tol = 1e-10;     ///< relative tolerance target
    double abs_tol = 1e-12;     ///< absolute tolerance target
    int max_subdivisions = 200; ///< panel-split budget per call
    int base_order = 15;        ///< nodes per panel: 15 (G7K15) or 21 (G10K21)
};

/// Value plus the accumulated error estimate actually achieved.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
};

/// Thrown when the split budget is exhausted before the tolerances are
/// met; carries the best estimate obtained so far.
class ToleranceNotMet : public std::runtime_error {
public:
    ToleranceNotMet(const std::string& what, QuadratureResult best)
        : std::runtime_error(what), best_(best) {}

    [[nodiscard]] QuadratureResult best() const { return best_; }

private:
    QuadratureResult best_;
};

/// Thrown when the kernel exponent makes the integral divergent (mu <= -1).
class DivergentIntegral : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Adaptive Gauss-Kronrod integration of f over [lo, hi].
///
/// The returned error_estimate satisfies
///   error_estimate <= max(cfg.abs_tol, cfg.rel_tol * |value|)
/// on success.  Throws ToleranceNotMet when the subdivision budget runs
/// out, and std::domain_error if the integrand evaluates non-finite.
[[nodiscard]] QuadratureResult integrate(const std::function<double(double)>& f,
                                         double lo, double hi,
                                         const QuadratureConfig& cfg = {});

/// Weighted integral with the left Hadamard kernel:
///
///   I = integral_a^t (ln(t/tau))^mu * [ln(ln(t/tau)) if log_factor] * f(tau)/tau dtau
///
/// for 0 < a < t and mu > -1.  The substitution u = ln(t/tau)/ln(t/a)
/// maps the domain to [0,1] with the endpoint singularity u^mu at u = 0;
/// panels refine geometrically into the singularity and the last sliver
/// is integrated with the analytic antiderivatives of u^mu and
/// u^mu ln u against a two-term local model of f, so the power-times-log
/// double singularity does not degrade the grading.
///
/// Throws DivergentIntegral for mu <= -1 and ToleranceNotMet on budget
/// exhaustion.
[[nodiscard]] QuadratureResult hadamard_weighted_integral(
    const std::function<double(double)>& f, double a, double t, double mu,
    bool log_factor, const QuadratureConfig& cfg = {});

/// Mirrored version over [t, b] with kernel (ln(tau/t))^mu and optional
/// ln(ln(tau/t)) factor, via the substitution u = ln(tau/t)/ln(b/t).
[[nodiscard]] QuadratureResult hadamard_weighted_integral_right(
    const std::function<double(double)>& f, double t, double b, double mu,
    bool log_factor, const QuadratureConfig& cfg = {});

}  // namespace hadvo::quadrature
