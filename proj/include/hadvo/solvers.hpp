#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "hadvo/functions.hpp"
#include "hadvo/quadrature.hpp"

/// Solvers for differential problems posed with the left Marchaud-form
/// derivative of variable order, built on the n = 1 expansion: the
/// fractional equation becomes a first-order system in (x, V_2..V_N),
/// and the variational problem becomes a Hamiltonian boundary value
/// problem in (x, V, lambda) solved by single shooting.
///
/// The system coefficients contain (ln(t/a))^{-alpha(t)} and
/// (ln(t/a))^{-k}, singular at t = a, so integration starts at
/// t = a + epsilon.  The offset actually used is reported in the solution
/// diagnostics rather than hidden.
namespace hadvo::solvers {

/// Raised when the coefficient of x' in the assembled system is too small
/// to divide by (t too close to a, or a vanishing leading coefficient).
class SingularAssembly : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when the integration produces a non-finite state.
class Divergence : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when the shooting Jacobian is numerically singular.
class RankDeficient : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Raised when Newton fails to reach the tolerance; carries the best
/// residual norm achieved.
class ShootingFailed : public std::runtime_error {
  public:
    ShootingFailed(const std::string& what, double best)
        : std::runtime_error(what), best_residual_(best) {}
    [[nodiscard]] double best_residual() const { return best_residual_; }

  private:
    double best_residual_;
};

/// Initial value problem  D^{alpha(t)} x(t) = rhs(t, x(t)),  x(a) = x_a,
/// with D the left Marchaud-form derivative anchored at a.
struct FdeProblem {
    OrderFunction of;                           ///< order function covering [a, b]
    double a = 0.0;                             ///< lower operator terminal
    double b = 0.0;                             ///< solve end point
    std::function<double(double, double)> rhs;  ///< (t, x) -> D^{alpha(t)} x
    double x_a = 0.0;                           ///< initial value at a
    int N = 2;                                  ///< expansion size (>= 2)
    double epsilon = 0.0;  ///< start offset; 0 -> default 1e-4 * (b - a)
    double step = 0.0;     ///< target step in t; 0 -> (b - a - epsilon)/2000
};

/// Variational problem: minimize
///   integral_a^b ( D^{alpha(t)} x(t) - target(t) )^2 dt
/// subject to x(a) = x_a and x(b) = x_b.
struct FvpProblem {
    OrderFunction of;                     ///< order function covering [a, b]
    double a = 0.0;                       ///< lower operator terminal
    double b = 0.0;                       ///< right boundary point
    std::function<double(double)> target; ///< tracked function in the integrand
    double x_a = 0.0;                     ///< boundary value at a
    double x_b = 0.0;                     ///< boundary value at b
    int N = 2;                            ///< expansion size (>= 2)
    double epsilon = 0.0;                 ///< start offset; 0 -> 1e-4 * (b - a)
    double step = 0.0;                    ///< target step in t; 0 -> 2000 steps
    double newton_tol = 1e-10;            ///< shooting residual tolerance
    int max_newton_iters = 50;            ///< Newton iteration budget
};

/// Solve metadata; fields not meaningful for a given solver are left 0.
struct SolveDiagnostics {
    double epsilon = 0.0;        ///< start offset actually used
    int steps = 0;               ///< integration step count
    double residual_norm = 0.0;  ///< achieved shooting residual (variational)
    int newton_iterations = 0;   ///< Newton iterations used (variational)
    double objective = 0.0;      ///< reconstructed objective value (variational)
};

/// Discrete trajectory on a strictly increasing grid over [a+epsilon, b].
struct TrajectorySolution {
    std::vector<double> grid;  ///< grid points, grid.front() = a+epsilon, grid.back() = b
    std::vector<double> x;     ///< x at each grid point
    /// V[i][j] holds the moment of index j+2 at grid point i (j = 0..N-2).
    std::vector<std::vector<double>> V;
    /// lambda[i][j] holds costate j+1 at grid point i (variational only).
    std::vector<std::vector<double>> lambda;
    SolveDiagnostics diagnostics;
};

/// Solve the expansion relation for x' at one point:
///
///   A(0) L^{-alpha} x + A(1) L^{1-alpha} t x' + sum_{k=2..N} B(k) L^{1-k-alpha} V_k
///     = rhs(t, x),   L = ln(t/a),
///
/// with coefficients from the derivative expansion at alpha(t), n = 1.
/// `V[k-2]` holds V_k.  Throws SingularAssembly when the x' coefficient is
/// not safely invertible (t <= a or underflowed pivot).
[[nodiscard]] double fde_assemble(const FdeProblem& problem, double t, double x,
                                  const std::vector<double>& V);

/// Integrate (x, V_2..V_N) from t = a+epsilon (x = x_a, V_k = 0) to t = b
/// with the classical fixed-step 4th-order scheme.  Steps are uniform in
/// the stretched variable ell = ln(ln(t/a)), which equidistributes the
/// coefficient stiffness ~1/(t ln(t/a)) near t = a; the step count is
/// (b - a - epsilon)/step rounded, so the `step` field keeps its plain
/// meaning of a target t-resolution.
[[nodiscard]] TrajectorySolution fde_solve(const FdeProblem& problem);

/// Right-hand side of the Hamiltonian system of the variational problem.
/// State layout: (x, V_2..V_N, lambda_1..lambda_N), size 2N:
///
///   x'        = target(t) L^{alpha-1}/(A(1) t) - L^{2alpha-2}/(2 (A(1) t)^2) lambda_1
///               - A(0) L^{-1}/(A(1) t) x - sum_k B(k) L^{-k}/(A(1) t) V_k
///   V_k'      = (k-1) L^{k-2} x / t
///   lambda_1' = A(0) L^{-1}/(A(1) t) lambda_1 - sum_k (k-1) L^{k-2}/t lambda_k
///   lambda_k' = B(k) L^{-k}/(A(1) t) lambda_1.
[[nodiscard]] std::vector<double> fvp_hamiltonian_rhs(const FvpProblem& problem,
                                                      double t,
                                                      const std::vector<double>& state);

/// Solve the variational problem by single shooting over the N unknown
/// costates: Newton (forward-difference Jacobian, perturbation 1e-6,
/// damped halving up to 20 times) drives the residual vector
/// (x(b) - x_b, lambda_2(b), ..., lambda_N(b)) to zero.  The costate
/// subsystem is closed and linear, so each residual evaluation integrates
/// the costates backward from t = b (where the shooting unknowns are the
/// costates' terminal values, an equivalent parameterization of the
/// initial costates through the linear flow) and then the state forward
/// from t = a+epsilon; initial guess lambda = 0, one retry from a fixed-
/// seed random perturbation of magnitude 1e-2.  On success the returned
/// diagnostics carry the residual norm, Newton iteration count, and the
/// reconstructed objective value.
[[nodiscard]] TrajectorySolution fvp_solve(const FvpProblem& problem);

/// L2 distance (integral_a^b (f-g)^2 dt)^{1/2} via adaptive quadrature.
[[nodiscard]] double l2_error(const std::function<double(double)>& f,
                              const std::function<double(double)>& g, double a,
                              double b, const quadrature::QuadratureConfig& cfg = {});

/// Piecewise-cubic interpolant of the trajectory's x values (Hermite with
/// three-point slopes); evaluation clamps to the grid range.
[[nodiscard]] std::function<double(double)> trajectory_interpolant(
    const TrajectorySolution& sol);

}  // namespace hadvo::solvers
