#include "hadvo/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "hadvo/specfun.hpp"

namespace hadvo::bounds {

namespace {

void check_inputs(const BoundInputs& bi, const char* who) {
    if (bi.N < bi.n + 1) throw std::invalid_argument(std::string(who) + ": N must be >= n + 1");
    if (bi.M_n1 < 0.0 || bi.M_x1 < 0.0) {
        throw std::invalid_argument(std::string(who) + ": maxima must be non-negative");
    }
    if (!(bi.alpha_t > 0.0 && bi.alpha_t < 1.0)) {
        throw std::invalid_argument(std::string(who) + ": order value outside (0, 1)");
    }
}

/// Order-variation E2 shape shared by the left and right variants.
double variation_bound(double m_x1, double t_factor, double alpha_prime, double alpha,
                       int N, double width_log) {
    if (m_x1 == 0.0 || alpha_prime == 0.0 || width_log == 0.0) return 0.0;
    const double core = std::fabs(t_factor * alpha_prime *
                                  std::pow(width_log, 2.0 - alpha));
    return m_x1 * core * std::exp(alpha * alpha - alpha) *
           specfun::gamma_reciprocal(2.0 - alpha) / std::pow(N, 1.0 - alpha) *
           (std::fabs(std::log(width_log)) + 1.0 / N);
}

}  // namespace

double max_abs_seq(const FunctionSpec& fs, double lo, double hi, SeqMax which, int n,
                   int samples) {
    if (samples < 2) throw std::invalid_argument("max_abs_seq: samples must be >= 2");
    if (!(lo <= hi)) throw std::invalid_argument("max_abs_seq: requires lo <= hi");
    const auto eval = [&](double tau) {
        return which == SeqMax::x_prime ? std::fabs(fs.deriv(1, tau))
                                        : std::fabs(seq_x_k1(fs, n, tau));
    };
    if (lo == hi) return eval(lo);

    const double h = (hi - lo) / (samples - 1);
    double best = 0.0;
    int best_i = 0;
    for (int i = 0; i < samples; ++i) {
        const double v = eval(lo + i * h);
        if (v > best) {
            best = v;
            best_i = i;
        }
    }

    // One golden-section pass in the bracket around the grid maximiser.
    double left = lo + std::max(0, best_i - 1) * h;
    double right = lo + std::min(samples - 1, best_i + 1) * h;
    constexpr double kInvPhi = 0.6180339887498949;
    double c = right - kInvPhi * (right - left);
    double d = left + kInvPhi * (right - left);
    double fc = eval(c);
    double fd = eval(d);
    for (int iter = 0; iter < 60 && right - left > 1e-12 * (hi - lo); ++iter) {
        if (fc > fd) {
            right = d;
            d = c;
            fd = fc;
            c = right - kInvPhi * (right - left);
            fc = eval(c);
        } else {
            left = c;
            c = d;
            fc = fd;
            d = left + kInvPhi * (right - left);
            fd = eval(d);
        }
    }
    return std::max({best, fc, fd});
}

BoundInputs bound_inputs_for(const FunctionSpec& fs, const OrderFunction& of, double t,
                             int n, int N, expansion::Side side) {
    BoundInputs bi;
    bi.n = n;
    bi.N = N;
    bi.t = t;
    bi.a = of.a();
    bi.b = of.b();
    bi.alpha_t = of.alpha(t);
    bi.alpha_prime_t = of.alpha_prime(t);
    const double lo = side == expansion::Side::left ? of.a() : t;
    const double hi = side == expansion::Side::left ? t : of.b();
    bi.M_n1 = max_abs_seq(fs, lo, hi, SeqMax::x_n1, n);
    bi.M_x1 = max_abs_seq(fs, lo, hi, SeqMax::x_prime, n);
    return bi;
}

double bound_integral_EN(const BoundInputs& bi) {
    check_inputs(bi, "bound_integral_EN");
    if (bi.M_n1 == 0.0 || bi.t == bi.a) return 0.0;
    const double e = bi.n + bi.alpha_t;
    const double big_l = std::log(bi.t / bi.a);
    return bi.M_n1 * std::exp(e * e + e) *
           specfun::gamma_reciprocal(bi.n + 1.0 + bi.alpha_t) /
           (e * std::pow(bi.N, e)) * std::pow(big_l, e) * (bi.t - bi.a);
}

double bound_deriv_E1(const BoundInputs& bi) {
    check_inputs(bi, "bound_deriv_E1");
    if (bi.M_n1 == 0.0 || bi.t == bi.a) return 0.0;
    const double e = bi.n - bi.alpha_t;
    const double big_l = std::log(bi.t / bi.a);
    return bi.M_n1 * std::exp(e * e + e) *
           specfun::gamma_reciprocal(bi.n + 1.0 - bi.alpha_t) /
           (e * std::pow(bi.N, e)) * std::pow(big_l, e) * (bi.t - bi.a);
}

double bound_deriv_E2(const BoundInputs& bi) {
    check_inputs(bi, "bound_deriv_E2");
    if (bi.t == bi.a) return 0.0;
    return variation_bound(bi.M_x1, bi.t * (2.0 * bi.t - bi.a), bi.alpha_prime_t,
                           bi.alpha_t, bi.N, std::log(bi.t / bi.a));
}

double bound_right_EN(const BoundInputs& bi) {
    check_inputs(bi, "bound_right_EN");
    if (bi.M_n1 == 0.0 || bi.t == bi.b) return 0.0;
    const double e = bi.n + bi.alpha_t;
    const double big_m = std::log(bi.b / bi.t);
    return bi.M_n1 * std::exp(e * e + e) *
           specfun::gamma_reciprocal(bi.n + 1.0 + bi.alpha_t) /
           (e * std::pow(bi.N, e)) * std::pow(big_m, e) * (bi.b - bi.t);
}

double bound_right_E1(const BoundInputs& bi) {
    check_inputs(bi, "bound_right_E1");
    if (bi.M_n1 == 0.0 || bi.t == bi.b) return 0.0;
    const double e = bi.n - bi.alpha_t;
    const double big_m = std::log(bi.b / bi.t);
    return bi.M_n1 * std::exp(e * e + e) *
           specfun::gamma_reciprocal(bi.n + 1.0 - bi.alpha_t) /
           (e * std::pow(bi.N, e)) * std::pow(big_m, e) * (bi.b - bi.t);
}

double bound_right_E2(const BoundInputs& bi) {
    check_inputs(bi, "bound_right_E2");
    if (bi.t == bi.b) return 0.0;
    return variation_bound(bi.M_x1, bi.b * bi.t, bi.alpha_prime_t, bi.alpha_t, bi.N,
                           std::log(bi.b / bi.t));
}

}  // namespace hadvo::bounds
