#pragma once

#include "hadvo/expansion.hpp"
#include "hadvo/functions.hpp"

/// A-priori error bounds for the finite expansions in module expansion.
/// Each bound is an explicit closed-form expression in the truncation
/// index N, the order value alpha(t) (and its slope for E2), and a maximum
/// of |x_{n,1}| or |x'| over the operator's memory interval.
namespace hadvo::bounds {

/// Everything a bound expression consumes.  For left-side bounds the
/// memory interval is [a, t]; for right-side bounds it is [t, b].
struct BoundInputs {
    int n = 1;                   ///< derivative depth of the expansion
    int N = 2;                   ///< truncation index (>= n + 1)
    double t = 0.0;              ///< evaluation point
    double a = 0.0;              ///< left interval endpoint
    double b = 0.0;              ///< right interval endpoint
    double alpha_t = 0.0;        ///< alpha(t)
    double alpha_prime_t = 0.0;  ///< alpha'(t)
    double M_n1 = 0.0;           ///< max |x_{n,1}| over the memory interval
    double M_x1 = 0.0;           ///< max |x'| over the memory interval
};

/// Which quantity max_abs_seq maximises.
enum class SeqMax {
    x_n1,     ///< |x_{n,1}(tau)|; needs derivatives through order n+1
    x_prime,  ///< |x'(tau)|
};

/// Maximum of the requested quantity over [lo, hi]: a uniform grid of
/// `samples` points followed by one golden-section refinement pass in the
/// bracket around the grid maximiser.  The result is accurate to roughly
/// the grid resolution (hi - lo)/(samples - 1), which suffices for upper
/// estimates fed into the bounds below.
[[nodiscard]] double max_abs_seq(const FunctionSpec& fs, double lo, double hi,
                                 SeqMax which, int n, int samples = 1000);

/// Convenience builder: fills BoundInputs for the point t with
/// alpha(t)/alpha'(t) from `of` and the maxima M_n1/M_x1 measured over
/// [a, t] (left) or [t, b] (right) with 1000-sample grids.
[[nodiscard]] BoundInputs bound_inputs_for(const FunctionSpec& fs,
                                           const OrderFunction& of, double t, int n,
                                           int N, expansion::Side side);

/// Truncation bound for the left integral expansion:
///
///   M_n1 * exp((n+alpha)^2 + n+alpha)
///     / (Gamma(n+1+alpha) (n+alpha) N^{n+alpha}) * (ln(t/a))^{n+alpha} (t-a).
[[nodiscard]] double bound_integral_EN(const BoundInputs& bi);

/// Truncation bound shared by the left derivative expansions (the S1
/// part): same shape as bound_integral_EN with n-alpha exponents.
[[nodiscard]] double bound_deriv_E1(const BoundInputs& bi);

/// Order-variation bound for the left derivative expansion (the S2 part):
///
///   M_x1 * |t (2t-a) alpha'(t) (ln(t/a))^{2-alpha}|
///     * exp(alpha^2 - alpha) / (Gamma(2-alpha) N^{1-alpha})
///     * [ |ln(ln(t/a))| + 1/N ].
///
/// Zero when alpha'(t) = 0.
[[nodiscard]] double bound_deriv_E2(const BoundInputs& bi);

/// Right-side mirror of bound_integral_EN, in powers of ln(b/t) and with
/// the factor (b - t); maxima are taken over [t, b].
[[nodiscard]] double bound_right_EN(const BoundInputs& bi);

/// Right-side mirror of bound_deriv_E1, in powers of ln(b/t) and with the
/// factor (b - t); maxima are taken over [t, b].
[[nodiscard]] double bound_right_E1(const BoundInputs& bi);

/// Right-side order-variation bound:
///
///   M_x1 * |b t alpha'(t) (ln(b/t))^{2-alpha}|
///     * exp(alpha^2 - alpha) / (Gamma(2-alpha) N^{1-alpha})
///     * [ |ln(ln(b/t))| + 1/N ].
[[nodiscard]] double bound_right_E2(const BoundInputs& bi);

}  // namespace hadvo::bounds
