#include "hadvo/expansion.hpp"

#include <cmath>
#include <stdexcept>

#include "hadvo/specfun.hpp"

namespace hadvo::expansion {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double factorial(int m) {
    double f = 1.0;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
}

void check_config(const ExpansionConfig& ec, const FunctionSpec& fs, Side side,
                  OperatorKind kind, const char* who) {
    if (ec.n < 1) throw std::invalid_argument(std::string(who) + ": n must be >= 1");
    if (ec.N < ec.n + 1) {
        throw std::invalid_argument(std::string(who) + ": N must be >= n + 1");
    }
    if (ec.side != side || ec.kind != kind) {
        throw std::invalid_argument(std::string(who) +
                                    ": ExpansionConfig side/kind does not match");
    }
    if (fs.max_order() < ec.n) {
        throw std::invalid_argument(
            std::string(who) + ": FunctionSpec must provide derivatives through order n");
    }
}

/// S1-style assembly shared by every kind:
///
///   sum_{k=0..n} s^k A(k) P^{base_a+k} x_{k,0}(t)
///     + sum_{k=n+1..N} B(k) P^{base_b-k} M_k(t)
///
/// with s = -1 on the right side (A-part only) and s = +1 on the left.
double assemble_s1(const FunctionSpec& fs, double t, double p_pow,
                   const CoefficientSet& cs, int big_n, double base_a, double base_b,
                   bool alternate_a, const MomentVector& mv) {
    double acc = 0.0;
    double sign = 1.0;
    for (int k = 0; k <= cs.n; ++k) {
        acc += sign * cs.A[static_cast<std::size_t>(k)] * std::pow(p_pow, base_a + k) *
               seq_x_k0(fs, k, t);
        if (alternate_a) sign = -sign;
    }
    for (int k = cs.n + 1; k <= big_n; ++k) {
        acc += cs.b_at(k) * std::pow(p_pow, base_b - k) * mv.at(k);
    }
    return acc;
}

/// Order-variation series shared by the left and right derivative
/// expansions; p_pow is ln(t/a) or ln(b/t) and mv holds the matching
/// moments through index 2N+n+1.  Every term carries alpha'(t).
double assemble_s2(const FunctionSpec& fs, const OrderFunction& of, double t,
                   double p_pow, int n, int big_n, const MomentVector& mv) {
    const double ap = of.alpha_prime(t);
    if (ap == 0.0) return 0.0;
    const double alpha = of.alpha(t);
    const double log_p = std::log(p_pow);
    const double om = 1.0 - alpha;

    double sum_single = 0.0;  // sum_k C(-alpha,k)(-1)^k / (k+1)
    double sum_double = 0.0;  // sum_k C(-alpha,k)(-1)^k sum_p 1/(p(k+p+1))
    for (int k = 0; k <= big_n; ++k) {
        const double c =
            specfun::gen_binomial(alpha, k) * ((k % 2 == 0) ? 1.0 : -1.0);
        sum_single += c / (k + 1);
        double inner = 0.0;
        for (int p = 1; p <= big_n; ++p) {
            inner += 1.0 / (static_cast<double>(p) * (k + p + 1));
        }
        sum_double += c * inner;
    }
    const double bracket_point = log_p / om - 1.0 / (om * om) - log_p * sum_single +
                                 sum_double;

    double moment_single = 0.0;  // log_p-weighted moment sum
    double moment_double = 0.0;  // double sum over shifted moments
    for (int k = n + 1; k <= big_n + n + 1; ++k) {
        const int j = k - n - 1;
        const double c =
            specfun::gen_binomial(alpha, j) * ((j % 2 == 0) ? 1.0 : -1.0);
        moment_single += c / (k - n) * std::pow(p_pow, n - k) * mv.at(k);
        double inner = 0.0;
        for (int p = 1; p <= big_n; ++p) {
            inner += std::pow(p_pow, n - k - p) * mv.at(k + p) /
                     (static_cast<double>(p) * (k + p - n));
        }
        moment_double += c * inner;
    }

    const double prefactor =
        t * ap / specfun::gamma(1.0 - alpha) * std::pow(p_pow, om);
    return prefactor *
           (fs.value(t) * bracket_point + (log_p * moment_single - moment_double));
}

}  // namespace

double moment_left(const FunctionSpec& fs, double a, double t, int n, int k,
                   const quadrature::QuadratureConfig& cfg) {
    if (k < n + 1) throw std::invalid_argument("moment_left: requires k >= n + 1");
    if (!(a > 0.0) || t < a) {
        throw std::invalid_argument("moment_left: requires 0 < a <= t");
    }
    if (t == a) return 0.0;
    const double big_l = std::log(t / a);
    const int e = k - n - 1;
    const auto g = [&fs, a, e](double sigma) {
        return std::pow(sigma, e) * fs.value(a * std::exp(sigma));
    };
    return (k - n) * quadrature::integrate(g, 0.0, big_l, cfg).value;
}

double moment_right(const FunctionSpec& fs, double t, double b, int n, int k,
                    const quadrature::QuadratureConfig& cfg) {
    if (k < n + 1) throw std::invalid_argument("moment_right: requires k >= n + 1");
    if (!(t > 0.0) || t > b) {
        throw std::invalid_argument("moment_right: requires 0 < t <= b");
    }
    if (t == b) return 0.0;
    const double big_m = std::log(b / t);
    const int e = k - n - 1;
    const auto g = [&fs, b, e](double sigma) {
        return std::pow(sigma, e) * fs.value(b * std::exp(-sigma));
    };
    return (k - n) * quadrature::integrate(g, 0.0, big_m, cfg).value;
}

MomentVector moment_vector_left(const FunctionSpec& fs, double a, double t, int n,
                                int max_index, const quadrature::QuadratureConfig& cfg) {
    MomentVector mv;
    mv.n = n;
    mv.max_index = max_index;
    for (int k = n + 1; k <= max_index; ++k) {
        mv.values[k] = moment_left(fs, a, t, n, k, cfg);
    }
    return mv;
}

MomentVector moment_vector_right(const FunctionSpec& fs, double t, double b, int n,
                                 int max_index, const quadrature::QuadratureConfig& cfg) {
    MomentVector mv;
    mv.n = n;
    mv.max_index = max_index;
    for (int k = n + 1; k <= max_index; ++k) {
        mv.values[k] = moment_right(fs, t, b, n, k, cfg);
    }
    return mv;
}

CoefficientSet coeffs_integral(double alpha_t, int n, int N) {
    if (!(alpha_t > 0.0 && alpha_t < 1.0)) {
        throw std::invalid_argument("coeffs_integral: order value outside (0, 1)");
    }
    if (n < 1 || N < n + 1) {
        throw std::invalid_argument("coeffs_integral: requires n >= 1 and N >= n + 1");
    }
    CoefficientSet cs;
    cs.n = n;
    cs.alpha_at_t = alpha_t;
    cs.A.resize(static_cast<std::size_t>(n) + 1);
    cs.B.resize(static_cast<std::size_t>(N - n));
    for (int k = 0; k <= n; ++k) {
        double s = 0.0;
        for (int p = n - k + 1; p <= N; ++p) {
            s += specfun::gamma_ratio_shift(-alpha_t - k, p - n + k) /
                 factorial(p - n + k);
        }
        cs.A[static_cast<std::size_t>(k)] =
            (1.0 + s) * specfun::gamma_reciprocal(alpha_t + k + 1.0);
    }
    const double sin_pa = specfun::sin_pi(alpha_t);
    for (int k = n + 1; k <= N; ++k) {
        cs.B[static_cast<std::size_t>(k - n - 1)] =
            sin_pa * specfun::gamma(k - alpha_t - n) / (kPi * factorial(k - n));
    }
    return cs;
}

CoefficientSet coeffs_deriv(double alpha_t, int n, int N) {
    if (!(alpha_t > 0.0 && alpha_t < 1.0)) {
        throw std::invalid_argument("coeffs_deriv: order value outside (0, 1)");
    }
    if (n < 1 || N < n + 1) {
        throw std::invalid_argument("coeffs_deriv: requires n >= 1 and N >= n + 1");
    }
    CoefficientSet cs;
    cs.n = n;
    cs.alpha_at_t = alpha_t;
    cs.A.resize(static_cast<std::size_t>(n) + 1);
    cs.B.resize(static_cast<std::size_t>(N - n));
    for (int k = 0; k <= n; ++k) {
        double s = 0.0;
        for (int p = n - k + 1; p <= N; ++p) {
            s += specfun::gamma_ratio_shift(alpha_t - k, p - n + k) /
                 factorial(p - n + k);
        }
        cs.A[static_cast<std::size_t>(k)] =
            (1.0 + s) * specfun::gamma_reciprocal(k + 1.0 - alpha_t);
    }
    const double sin_pa = specfun::sin_pi(alpha_t);
    for (int k = n + 1; k <= N; ++k) {
        cs.B[static_cast<std::size_t>(k - n - 1)] =
            -sin_pa * specfun::gamma(k + alpha_t - n) / (kPi * factorial(k - n));
    }
    return cs;
}

double approx_integral_left(const FunctionSpec& fs, const OrderFunction& of, double t,
                            const ExpansionConfig& ec,
                            const quadrature::QuadratureConfig& cfg) {
    check_config(ec, fs, Side::left, OperatorKind::integral, "approx_integral_left");
    const double a = of.a();
    if (t == a) return 0.0;
    if (!(t > a && t <= of.b())) {
        throw std::invalid_argument("approx_integral_left: t outside [a, b]");
    }
    const double alpha = of.alpha(t);
    const CoefficientSet cs = coeffs_integral(alpha, ec.n, ec.N);
    const MomentVector mv = moment_vector_left(fs, a, t, ec.n, ec.N, cfg);
    return assemble_s1(fs, t, std::log(t / a), cs, ec.N, alpha, alpha + ec.n, false, mv);
}

double approx_marchaud_left(const FunctionSpec& fs, const OrderFunction& of, double t,
                            const ExpansionConfig& ec,
                            const quadrature::QuadratureConfig& cfg) {
    check_config(ec, fs, Side::left, OperatorKind::marchaud, "approx_marchaud_left");
    const double a = of.a();
    if (!(t > a && t <= of.b())) {
        throw std::invalid_argument("approx_marchaud_left: t outside (a, b]");
    }
    const double alpha = of.alpha(t);
    const CoefficientSet cs = coeffs_deriv(alpha, ec.n, ec.N);
    const MomentVector mv = moment_vector_left(fs, a, t, ec.n, ec.N, cfg);
    return assemble_s1(fs, t, std::log(t / a), cs, ec.N, -alpha, ec.n - alpha, false, mv);
}

double approx_hadamard_deriv_left(const FunctionSpec& fs, const OrderFunction& of,
                                  double t, const ExpansionConfig& ec,
                                  const quadrature::QuadratureConfig& cfg) {
    check_config(ec, fs, Side::left, OperatorKind::hadamard_deriv,
                 "approx_hadamard_deriv_left");
    const double a = of.a();
    if (!(t > a && t <= of.b())) {
        throw std::invalid_argument("approx_hadamard_deriv_left: t outside (a, b]");
    }
    const double alpha = of.alpha(t);
    const double big_l = std::log(t / a);
    const CoefficientSet cs = coeffs_deriv(alpha, ec.n, ec.N);
    const MomentVector mv =
        moment_vector_left(fs, a, t, ec.n, 2 * ec.N + ec.n + 1, cfg);
    const double s1 = assemble_s1(fs, t, big_l, cs, ec.N, -alpha, ec.n - alpha, false, mv);
    const double s2 = assemble_s2(fs, of, t, big_l, ec.n, ec.N, mv);
    return s1 - s2;
}

double approx_integral_right(const FunctionSpec& fs, const OrderFunction& of, double t,
                             const ExpansionConfig& ec,
                             const quadrature::QuadratureConfig& cfg) {
    check_config(ec, fs, Side::right, OperatorKind::integral, "approx_integral_right");
    const double b = of.b();
    if (t == b) return 0.0;
    if (!(t >= of.a() && t < b)) {
        throw std::invalid_argument("approx_integral_right: t outside [a, b]");
    }
    const double alpha = of.alpha(t);
    const CoefficientSet cs = coeffs_integral(alpha, ec.n, ec.N);
    const MomentVector mv = moment_vector_right(fs, t, b, ec.n, ec.N, cfg);
    return assemble_s1(fs, t, std::log(b / t), cs, ec.N, alpha, alpha + ec.n, true, mv);
}

double approx_marchaud_right(const FunctionSpec& fs, const OrderFunction& of, double t,
                             const ExpansionConfig& ec,
                             const quadrature::QuadratureConfig& cfg) {
    check_config(ec, fs, Side::right, OperatorKind::marchaud, "approx_marchaud_right");
    const double b = of.b();
    if (!(t >= of.a() && t < b)) {
        throw std::invalid_argument("approx_marchaud_right: t outside [a, b)");
    }
    const double alpha = of.alpha(t);
    const CoefficientSet cs = coeffs_deriv(alpha, ec.n, ec.N);
    const MomentVector mv = moment_vector_right(fs, t, b, ec.n, ec.N, cfg);
    return assemble_s1(fs, t, std::log(b / t), cs, ec.N, -alpha, ec.n - alpha, true, mv);
}

double approx_hadamard_deriv_right(const FunctionSpec& fs, const OrderFunction& of,
                                   double t, const ExpansionConfig& ec,
                                   const quadrature::QuadratureConfig& cfg) {
    check_config(ec, fs, Side::right, OperatorKind::hadamard_deriv,
                 "approx_hadamard_deriv_right");
    const double b = of.b();
    if (!(t >= of.a() && t < b)) {
        throw std::invalid_argument("approx_hadamard_deriv_right: t outside [a, b)");
    }
    const double alpha = of.alpha(t);
    const double big_m = std::log(b / t);
    const CoefficientSet cs = coeffs_deriv(alpha, ec.n, ec.N);
    const MomentVector mv =
        moment_vector_right(fs, t, b, ec.n, 2 * ec.N + ec.n + 1, cfg);
    const double s1 = assemble_s1(fs, t, big_m, cs, ec.N, -alpha, ec.n - alpha, true, mv);
    const double s2 = assemble_s2(fs, of, t, big_m, ec.n, ec.N, mv);
    return s1 + s2;
}

double approx_caputo_left(const FunctionSpec& fs, const OrderFunction& of, double t,
                          const ExpansionConfig& ec,
                          const quadrature::QuadratureConfig& cfg) {
    check_config(ec, fs, Side::left, OperatorKind::caputo_shifted, "approx_caputo_left");
    ExpansionConfig inner = ec;
    inner.kind = OperatorKind::hadamard_deriv;
    return approx_hadamard_deriv_left(fs.shifted_by(fs.value(of.a())), of, t, inner, cfg);
}

double approx_operator(const FunctionSpec& fs, const OrderFunction& of, double t,
                       const ExpansionConfig& ec,
                       const quadrature::QuadratureConfig& cfg) {
    if (ec.side == Side::left) {
        switch (ec.kind) {
            case OperatorKind::integral: return approx_integral_left(fs, of, t, ec, cfg);
            case OperatorKind::marchaud: return approx_marchaud_left(fs, of, t, ec, cfg);
            case OperatorKind::hadamard_deriv:
                return approx_hadamard_deriv_left(fs, of, t, ec, cfg);
            case OperatorKind::caputo_shifted:
                return approx_caputo_left(fs, of, t, ec, cfg);
        }
    } else {
        switch (ec.kind) {
            case OperatorKind::integral: return approx_integral_right(fs, of, t, ec, cfg);
            case OperatorKind::marchaud: return approx_marchaud_right(fs, of, t, ec, cfg);
            case OperatorKind::hadamard_deriv:
                return approx_hadamard_deriv_right(fs, of, t, ec, cfg);
            case OperatorKind::caputo_shifted:
                throw std::invalid_argument(
                    "approx_operator: right-side Caputo expansion is not provided");
        }
    }
    throw std::logic_error("approx_operator: unreachable");
}

}  // namespace hadvo::expansion
