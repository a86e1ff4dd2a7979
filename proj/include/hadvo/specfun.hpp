#pragma once

#include <stdexcept>

/// Special functions used by every coefficient and closed form in the
/// library: Gamma, log-Gamma, digamma, Beta, generalized binomial
/// coefficients and pole-safe Gamma ratios.
///
/// All functions are pure and thread-safe.  Real arguments only.
namespace hadvo::specfun {

/// A real value stored as sign * exp(log_abs).  Keeps Gamma-sized
/// magnitudes representable far beyond double overflow and makes the
/// sign of Gamma at negative arguments explicit.
struct SignedMagnitude {
    double log_abs = 0.0;   ///< natural log of |value|; ignored when sign == 0
    int sign = 0;           ///< -1, 0 or +1; 0 means the value is exactly zero

    /// Reconstruct the plain value sign * exp(log_abs).
    /// Throws std::overflow_error when exp(log_abs) overflows a double.
    [[nodiscard]] double value() const;
};

/// sin(pi*x) with exact argument reduction, so that integers map to
/// exactly zero and half-integers to exactly +-1.
[[nodiscard]] double sin_pi(double x);

/// Natural log of Gamma(x) for x > 0.
/// Accuracy: at least 13 significant digits on (0, 1e10].
[[nodiscard]] double log_gamma(double x);

/// log|Gamma(x)| together with the sign of Gamma(x), valid for every x
/// that is not a pole (0, -1, -2, ...).  Throws std::domain_error at poles.
[[nodiscard]] SignedMagnitude log_gamma_signed(double x);

/// Gamma(x) for x not a non-positive integer.
///
/// Negative arguments are evaluated through the reflection formula
/// Gamma(x)Gamma(1-x) = pi/sin(pi x).  The safe overflow-free range is
/// |x| <= 171.6 on the positive side; beyond it (and for negative x whose
/// reflected magnitude overflows) std::overflow_error is thrown.
/// Throws std::domain_error at poles.
[[nodiscard]] double gamma(double x);

/// 1/Gamma(x) for any real x.  Entire: returns exactly 0 at the poles of
/// Gamma (x = 0, -1, -2, ...), which is the limit the closed forms need.
[[nodiscard]] double gamma_reciprocal(double x);

/// Digamma psi(x) = Gamma'(x)/Gamma(x) for x not a non-positive integer.
/// Accuracy: at least 12 significant digits.  Throws std::domain_error
/// at poles.
[[nodiscard]] double digamma(double x);

/// Beta function B(lambda, mu) = Gamma(lambda)Gamma(mu)/Gamma(lambda+mu)
/// for lambda, mu > 0, computed via log-Gamma so large arguments do not
/// overflow intermediate terms.  Throws std::domain_error otherwise.
[[nodiscard]] double beta(double lambda, double mu);

/// Generalized binomial coefficient (-alpha choose k) for 0 < alpha < 1,
/// k >= 0, evaluated as the exact product prod_{j=1..k} (-alpha-j+1)/j.
/// Throws std::domain_error outside the domain.
[[nodiscard]] double gen_binomial(double alpha, int k);

/// Gamma(z+m)/Gamma(z) for integer m >= 0 as the rising factorial
/// prod_{j=0..m-1} (z+j).  Exact and pole-free: expansion coefficients
/// whose Gamma arguments differ by an integer must use this instead of
/// two Gamma calls, because the individual Gammas can sit on poles that
/// cancel in the ratio.  m = 0 returns 1.
[[nodiscard]] double gamma_ratio_shift(double z, int m);

}  // namespace hadvo::specfun
