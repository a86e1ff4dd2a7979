#pragma once

#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

/// Problem data shared by every operator: the variable order alpha(t)
/// and the scalar function x(t) with its analytic derivatives, plus the
/// two derivative sequences built from them.
namespace hadvo {

/// Thrown when a built-in numerical cross-check of two internal routes
/// disagrees; indicates a defect, not a user error.
class InternalConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// The variable fractional order alpha(t) together with its derivative
/// alpha'(t) on a domain [a, b] with 0 < a < b.
///
/// Construction validates that alpha stays inside (0,1) on a dense grid
/// and that alpha_prime matches a central finite difference of alpha at
/// sampled points (step 1e-5, tolerance 1e-6).  Immutable afterwards and
/// safe to share across threads.
class OrderFunction {
public:
    OrderFunction(std::function<double(double)> alpha,
                  std::function<double(double)> alpha_prime, double a, double b);

    /// alpha(t) = c, constant order.
    [[nodiscard]] static OrderFunction constant(double c, double a, double b);

    /// alpha(t) = c0 + c1*t.
    [[nodiscard]] static OrderFunction linear(double c0, double c1, double a, double b);

    [[nodiscard]] double alpha(double t) const { return alpha_(t); }
    [[nodiscard]] double alpha_prime(double t) const { return alpha_prime_(t); }
    [[nodiscard]] double a() const { return a_; }
    [[nodiscard]] double b() const { return b_; }

private:
    std::function<double(double)> alpha_;
    std::function<double(double)> alpha_prime_;
    double a_;
    double b_;
};

/// A scalar function x(t) on [a, b], a > 0, with analytic derivatives up
/// to max_order.  deriv(0, t) must equal value(t).
///
/// Construction spot-checks each derivative order against a central
/// finite difference of the previous order at interior samples
/// (relative tolerance 1e-5).  Instances are immutable and shareable.
class FunctionSpec {
public:
    using Value = std::function<double(double)>;
    using Deriv = std::function<double(int, double)>;

    FunctionSpec(Value value, Deriv deriv, int max_order, double a, double b);

    /// x(t) = (ln(t/base))^beta with beta > -1; derivatives of every
    /// order are generated exactly from the log-power recurrence.
    [[nodiscard]] static FunctionSpec log_power(double beta, double base, double b,
                                                int max_order = 8);

    /// x(t) = sum_i coeff_i * (ln(t/base))^{beta_i}.
    [[nodiscard]] static FunctionSpec log_poly(
        std::vector<std::pair<double, double>> coeff_beta, double base, double b,
        int max_order = 8);

    /// x(t) = c.
    [[nodiscard]] static FunctionSpec constant(double c, double a, double b);

    /// Wraps a plain value function, supplying derivatives by nested
    /// central finite differences.  Flagged reduced-accuracy: expansions
    /// need x^(n+1) and silent finite-difference degradation must be a
    /// visible opt-in, never a fallback.
    [[nodiscard]] static FunctionSpec from_value_only(Value value, int max_order,
                                                      double a, double b);

    [[nodiscard]] double value(double t) const { return value_(t); }
    [[nodiscard]] double deriv(int j, double t) const;
    [[nodiscard]] int max_order() const { return max_order_; }
    [[nodiscard]] double a() const { return a_; }
    [[nodiscard]] double b() const { return b_; }
    [[nodiscard]] bool reduced_accuracy() const { return reduced_accuracy_; }

    /// The shifted function x(t) - c with identical derivatives; used by
    /// the Caputo-type derivative, which acts on x(.) - x(a).
    [[nodiscard]] FunctionSpec shifted_by(double c) const;

private:
    FunctionSpec() = default;

    Value value_;
    Deriv deriv_;
    int max_order_ = 0;
    double a_ = 0.0;
    double b_ = 0.0;
    bool reduced_accuracy_ = false;
};

/// x_{k,0}(t): the k-fold application of t*d/dt to x, evaluated through
/// the closed expansion sum_j S2(k,j) t^j x^(j)(t) with Stirling numbers
/// of the second kind.  Requires fs.max_order >= k.
[[nodiscard]] double seq_x_k0(const FunctionSpec& fs, int k, double t);

/// x_{k,1}(t): x_{0,1} = x', x_{k+1,1} = d/dt(t*x_{k,1}), evaluated as
/// sum_j a_{k,j} t^j x^(j+1)(t) with a_{0,0} = 1 and
/// a_{k+1,j} = (j+1)a_{k,j} + a_{k,j-1}.  Requires fs.max_order >= k+1.
[[nodiscard]] double seq_x_k1(const FunctionSpec& fs, int k, double t);

}  // namespace hadvo
