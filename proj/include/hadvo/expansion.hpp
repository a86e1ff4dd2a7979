#pragma once

#include <map>
#include <vector>

#include "hadvo/functions.hpp"
#include "hadvo/quadrature.hpp"

/// Approximation of Hadamard-type fractional operators by finite expansions
/// in integer-order derivatives plus moment integrals.  Each operator value
/// is written as a pointwise combination
///
///   sum_{k=0..n} A(k) P^{e(k)} x_{k,0}(t)  +  sum_{k=n+1..N} B(k) P^{e'(k)} M_k(t)
///
/// where P is ln(t/a) (left) or ln(b/t) (right), x_{k,0} are the iterated
/// t*d/dt images of x, and M_k are running moments of x.  Derivative kinds
/// of non-constant order add a correction series with an explicit
/// alpha'(t) prefactor.
namespace hadvo::expansion {

/// Which endpoint the operator's memory extends from.
enum class Side { left, right };

/// Operator family being approximated.  caputo_shifted is the left
/// Caputo-type derivative, realised by applying the hadamard_deriv
/// expansion to x(.) - x(a).
enum class OperatorKind { integral, hadamard_deriv, marchaud, caputo_shifted };

/// Expansion parameters.
struct ExpansionConfig {
    int n = 1;                                 ///< pointwise derivative depth (>= 1)
    int N = 3;                                 ///< truncation index (>= n + 1)
    Side side = Side::left;                    ///< operator side
    OperatorKind kind = OperatorKind::integral; ///< operator family
};

/// Moments of a function, indexed k = n+1 .. max_index.
struct MomentVector {
    int n = 0;                     ///< derivative depth the moments belong to
    int max_index = 0;             ///< largest stored index
    std::map<int, double> values;  ///< values[k] for k = n+1 .. max_index

    /// Stored moment of order k; throws std::out_of_range when absent.
    [[nodiscard]] double at(int k) const { return values.at(k); }
};

/// Expansion coefficients at a fixed evaluation point (they depend on t
/// through alpha(t), so they are recomputed per point).
struct CoefficientSet {
    int n = 0;              ///< derivative depth
    std::vector<double> A;  ///< A[k] for k = 0 .. n
    std::vector<double> B;  ///< B(k) for k = n+1 .. N stored at B[k - n - 1]
    double alpha_at_t = 0.0;

    /// Coefficient B(k), k = n+1 .. N.
    [[nodiscard]] double b_at(int k) const { return B.at(static_cast<std::size_t>(k - n - 1)); }
};

/// Left moment of order k at depth n:
///
///   V_k(t) = (k - n) * integral_a^t (ln(tau/a))^{k-n-1} x(tau)/tau dtau,
///
/// evaluated after the substitution sigma = ln(tau/a), which makes the
/// integrand a regular (often polynomial) function of sigma.
/// Requires k >= n + 1 and t >= a; V_k(a) = 0.
[[nodiscard]] double moment_left(const FunctionSpec& fs, double a, double t, int n,
                                 int k, const quadrature::QuadratureConfig& cfg = {});

/// Right moment of order k at depth n:
///
///   W_k(t) = (k - n) * integral_t^b (ln(b/tau))^{k-n-1} x(tau)/tau dtau,
///
/// evaluated after the substitution sigma = ln(b/tau).
/// Requires k >= n + 1 and t <= b; W_k(b) = 0.
[[nodiscard]] double moment_right(const FunctionSpec& fs, double t, double b, int n,
                                  int k, const quadrature::QuadratureConfig& cfg = {});

/// All left moments with indices n+1 .. max_index at the point t.
[[nodiscard]] MomentVector moment_vector_left(const FunctionSpec& fs, double a,
                                              double t, int n, int max_index,
                                              const quadrature::QuadratureConfig& cfg = {});

/// All right moments with indices n+1 .. max_index at the point t.
[[nodiscard]] MomentVector moment_vector_right(const FunctionSpec& fs, double t,
                                               double b, int n, int max_index,
                                               const quadrature::QuadratureConfig& cfg = {});

/// Coefficients of the integral expansion at order value alpha_t:
///
///   A(k) = (1/Gamma(alpha+k+1)) [1 + sum_{p=n-k+1..N}
///              Gamma(p-alpha-n) / (Gamma(-alpha-k) (p-n+k)!)],  k = 0..n,
///   B(k) = Gamma(k-alpha-n) / (Gamma(alpha) Gamma(1-alpha) (k-n)!),
///                                                              k = n+1..N.
///
/// The Gamma ratios are rising factorials (integer shift p-n+k), evaluated
/// without forming the individual Gamma values, and
/// Gamma(alpha)Gamma(1-alpha) is evaluated as pi/sin(pi*alpha).
[[nodiscard]] CoefficientSet coeffs_integral(double alpha_t, int n, int N);

/// Coefficients of the derivative expansions at order value alpha_t:
///
///   A(k) = (1/Gamma(k+1-alpha)) [1 + sum_{p=n-k+1..N}
///              Gamma(p+alpha-n) / (Gamma(alpha-k) (p-n+k)!)],  k = 0..n,
///   B(k) = -sin(pi*alpha) Gamma(k+alpha-n) / (pi (k-n)!),      k = n+1..N.
///
/// Shared by the Marchaud-form and the full derivative expansions.
[[nodiscard]] CoefficientSet coeffs_deriv(double alpha_t, int n, int N);

/// Expansion of the left Hadamard integral:
///
///   sum_{k=0..n} A(k) L^{alpha+k} x_{k,0}(t)
///     + sum_{k=n+1..N} B(k) L^{alpha+n-k} V_k(t),   L = ln(t/a).
///
/// Requires fs.max_order() >= ec.n; returns 0 at t = a.
[[nodiscard]] double approx_integral_left(const FunctionSpec& fs, const OrderFunction& of,
                                          double t, const ExpansionConfig& ec,
                                          const quadrature::QuadratureConfig& cfg = {});

/// Expansion of the left Marchaud-form derivative (no order-variation
/// correction):
///
///   S1 = sum_{k=0..n} A(k) L^{k-alpha} x_{k,0}(t)
///          + sum_{k=n+1..N} B(k) L^{n-alpha-k} V_k(t)
///
/// with derivative coefficients.  Requires t > a.
[[nodiscard]] double approx_marchaud_left(const FunctionSpec& fs, const OrderFunction& of,
                                          double t, const ExpansionConfig& ec,
                                          const quadrature::QuadratureConfig& cfg = {});

/// Expansion of the left Hadamard derivative: S1 - S2, where S2 is the
/// order-variation series (binomial double sums with moments through
/// index 2N+n+1).  Every S2 term carries alpha'(t), so constant order
/// collapses this to approx_marchaud_left exactly.  Requires t > a.
[[nodiscard]] double approx_hadamard_deriv_left(const FunctionSpec& fs,
                                                const OrderFunction& of, double t,
                                                const ExpansionConfig& ec,
                                                const quadrature::QuadratureConfig& cfg = {});

/// Expansion of the right Hadamard integral: the mirrored assembly in
/// powers of M = ln(b/t) and right moments W_k, with the A-part carrying
/// an extra (-1)^k.  Returns 0 at t = b.  The mirrored coefficients are
/// certified against right_integral_oracle by the test suite.
[[nodiscard]] double approx_integral_right(const FunctionSpec& fs, const OrderFunction& of,
                                           double t, const ExpansionConfig& ec,
                                           const quadrature::QuadratureConfig& cfg = {});

/// Expansion of the right Marchaud-form derivative: mirrored S1 with
/// (-1)^k on the A-part, powers of M = ln(b/t), and W_k moments.
/// Requires t < b.
[[nodiscard]] double approx_marchaud_right(const FunctionSpec& fs, const OrderFunction& of,
                                           double t, const ExpansionConfig& ec,
                                           const quadrature::QuadratureConfig& cfg = {});

/// Expansion of the right Hadamard derivative: S1 + S2 with the mirrored
/// S1 above and S2 written in powers of M = ln(b/t) and moments W_k.
/// Requires t < b.
[[nodiscard]] double approx_hadamard_deriv_right(const FunctionSpec& fs,
                                                 const OrderFunction& of, double t,
                                                 const ExpansionConfig& ec,
                                                 const quadrature::QuadratureConfig& cfg = {});

/// Expansion of the left Caputo-type derivative: the hadamard_deriv
/// expansion applied to x(.) - x(a).
[[nodiscard]] double approx_caputo_left(const FunctionSpec& fs, const OrderFunction& of,
                                        double t, const ExpansionConfig& ec,
                                        const quadrature::QuadratureConfig& cfg = {});

/// Dispatch on (ec.side, ec.kind).  The right-side Caputo expansion is not
/// provided and raises std::invalid_argument.
[[nodiscard]] double approx_operator(const FunctionSpec& fs, const OrderFunction& of,
                                     double t, const ExpansionConfig& ec,
                                     const quadrature::QuadratureConfig& cfg = {});

}  // namespace hadvo::expansion
