#include "hadvo/functions.hpp"

#include <cmath>
#include <limits>

namespace hadvo {

namespace {

constexpr int kMaxSeqOrder = 24;

/// Coefficients c_{j,i} of the exact log-power derivative expansion
///   d^j/dt^j sigma^beta = t^{-j} sum_{i=1..j} c_{j,i} ff(beta,i) sigma^{beta-i},
/// sigma = ln(t/base), ff the falling factorial.  beta-independent:
/// c_{1,1} = 1, c_{j+1,i} = -j*c_{j,i} + c_{j,i-1}.
std::vector<std::vector<double>> logpower_coeffs(int max_order) {
    std::vector<std::vector<double>> c(static_cast<std::size_t>(max_order) + 1);
    if (max_order >= 1) c[1] = {0.0, 1.0};
    for (int j = 1; j < max_order; ++j) {
        c[static_cast<std::size_t>(j) + 1].assign(static_cast<std::size_t>(j) + 2, 0.0);
        for (int i = 1; i <= j + 1; ++i) {
            double v = 0.0;
            if (i <= j) v -= static_cast<double>(j) * c[j][static_cast<std::size_t>(i)];
            if (i >= 2) v += c[j][static_cast<std::size_t>(i) - 1];
            c[static_cast<std::size_t>(j) + 1][static_cast<std::size_t>(i)] = v;
        }
    }
    return c;
}

/// Falling factorials ff[i] = beta*(beta-1)*...*(beta-i+1).
std::vector<double> falling_factorials(double beta, int max_order) {
    std::vector<double> ff(static_cast<std::size_t>(max_order) + 1, 1.0);
    for (int i = 1; i <= max_order; ++i) {
        ff[static_cast<std::size_t>(i)] =
            ff[static_cast<std::size_t>(i) - 1] * (beta - static_cast<double>(i) + 1.0);
    }
    return ff;
}

double logpower_deriv(const std::vector<std::vector<double>>& c,
                      const std::vector<double>& ff, double beta, double base,
                      int j, double t) {
    const double sigma = std::log(t / base);
    if (j == 0) return std::pow(sigma, beta);
    double sum = 0.0;
    for (int i = 1; i <= j; ++i) {
        const double coef = c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] *
                            ff[static_cast<std::size_t>(i)];
        if (coef == 0.0) continue;  // integer beta: avoid 0 * inf at sigma = 0
        sum += coef * std::pow(sigma, beta - static_cast<double>(i));
    }
    return sum * std::pow(t, -static_cast<double>(j));
}

void check_function_derivatives(const FunctionSpec& fs) {
    const double a = fs.a();
    const double b = fs.b();
    const double cbrt_eps = std::cbrt(std::numeric_limits<double>::epsilon());
    const int orders = std::min(fs.max_order(), 4);
    for (const double frac : {0.15, 0.35, 0.55, 0.75, 0.9}) {
        const double t = a + frac * (b - a);
        if (std::fabs(fs.deriv(0, t) - fs.value(t)) >
            1e-12 * (1.0 + std::fabs(fs.value(t)))) {
            throw std::invalid_argument("FunctionSpec: deriv(0, t) must equal value(t)");
        }
        for (int j = 1; j <= orders; ++j) {
            const double h = cbrt_eps * std::max(1.0, std::fabs(t));
            const double fd = (fs.deriv(j - 1, t + h) - fs.deriv(j - 1, t - h)) / (2.0 * h);
            const double ref = fs.deriv(j, t);
            if (std::fabs(fd - ref) > 1e-5 * std::max(1.0, std::fabs(ref))) {
                throw std::invalid_argument(
                    "FunctionSpec: derivative order " + std::to_string(j) +
                    " disagrees with finite difference of order " + std::to_string(j - 1));
            }
        }
    }
}

}  // namespace

OrderFunction::OrderFunction(std::function<double(double)> alpha,
                             std::function<double(double)> alpha_prime, double a,
                             double b)
    : alpha_(std::move(alpha)), alpha_prime_(std::move(alpha_prime)), a_(a), b_(b) {
    if (!(a_ > 0.0 && b_ > a_)) {
        throw std::invalid_argument("OrderFunction: domain must satisfy 0 < a < b");
    }
    constexpr int kGrid = 512;
    for (int i = 0; i <= kGrid; ++i) {
        const double t = a_ + (b_ - a_) * static_cast<double>(i) / kGrid;
        const double al = alpha_(t);
        if (!(al > 0.0 && al < 1.0)) {
            throw std::invalid_argument("OrderFunction: alpha(t) must stay inside (0,1)");
        }
    }
    constexpr double kStep = 1e-5;
    constexpr int kSamples = 33;
    for (int i = 0; i <= kSamples; ++i) {
        double t = a_ + (b_ - a_) * static_cast<double>(i) / kSamples;
        t = std::min(std::max(t, a_ + kStep), b_ - kStep);
        const double fd = (alpha_(t + kStep) - alpha_(t - kStep)) / (2.0 * kStep);
        if (std::fabs(fd - alpha_prime_(t)) > 1e-6) {
            throw std::invalid_argument(
                "OrderFunction: alpha_prime disagrees with finite difference of alpha");
        }
    }
}

OrderFunction OrderFunction::constant(double c, double a, double b) {
    return OrderFunction([c](double) { return c; }, [](double) { return 0.0; }, a, b);
}

OrderFunction OrderFunction::linear(double c0, double c1, double a, double b) {
    return OrderFunction([c0, c1](double t) { return c0 + c1 * t; },
                         [c1](double) { return c1; }, a, b);
}

FunctionSpec::FunctionSpec(Value value, Deriv deriv, int max_order, double a, double b)
    : value_(std::move(value)), deriv_(std::move(deriv)), max_order_(max_order),
      a_(a), b_(b) {
    if (!(a_ > 0.0 && b_ > a_)) {
        throw std::invalid_argument("FunctionSpec: domain must satisfy 0 < a < b");
    }
    if (max_order_ < 0) {
        throw std::invalid_argument("FunctionSpec: max_order must be non-negative");
    }
    check_function_derivatives(*this);
}

double FunctionSpec::deriv(int j, double t) const {
    if (j < 0 || j > max_order_) {
        throw std::invalid_argument("FunctionSpec: derivative order " + std::to_string(j) +
                                    " exceeds max_order " + std::to_string(max_order_));
    }
    if (j == 0) return value_(t);
    return deriv_(j, t);
}

FunctionSpec FunctionSpec::log_power(double beta, double base, double b, int max_order) {
    return log_poly({{1.0, beta}}, base, b, max_order);
}

FunctionSpec FunctionSpec::log_poly(std::vector<std::pair<double, double>> coeff_beta,
                                    double base, double b, int max_order) {
    for (const auto& [coeff, beta] : coeff_beta) {
        (void)coeff;
        if (!(beta > -1.0)) {
            throw std::invalid_argument("log_poly: every exponent must satisfy beta > -1");
        }
    }
    auto c = std::make_shared<const std::vector<std::vector<double>>>(
        logpower_coeffs(max_order));
    auto terms = std::make_shared<const std::vector<std::pair<double, double>>>(
        std::move(coeff_beta));
    std::vector<std::vector<double>> ffs;
    ffs.reserve(terms->size());
    for (const auto& [coeff, beta] : *terms) {
        (void)coeff;
        ffs.push_back(falling_factorials(beta, max_order));
    }
    auto ff = std::make_shared<const std::vector<std::vector<double>>>(std::move(ffs));

    Value value = [terms, base](double t) {
        const double sigma = std::log(t / base);
        double sum = 0.0;
        for (const auto& [coeff, beta] : *terms) sum += coeff * std::pow(sigma, beta);
        return sum;
    };
    Deriv deriv = [terms, c, ff, base](int j, double t) {
        double sum = 0.0;
        for (std::size_t i = 0; i < terms->size(); ++i) {
            sum += (*terms)[i].first *
                   logpower_deriv(*c, (*ff)[i], (*terms)[i].second, base, j, t);
        }
        return sum;
    };
    return FunctionSpec(std::move(value), std::move(deriv), max_order, base, b);
}

FunctionSpec FunctionSpec::constant(double c, double a, double b) {
    return FunctionSpec([c](double) { return c; },
                        [](int, double) { return 0.0; }, 8, a, b);
}

FunctionSpec FunctionSpec::from_value_only(Value value, int max_order, double a,
                                           double b) {
    struct NestedFd {
        Value f;
        double operator()(int j, double t) const {
            if (j == 0) return f(t);
            const double h = std::pow(std::numeric_limits<double>::epsilon(),
                                      1.0 / static_cast<double>(j + 2)) *
                             std::max(1.0, std::fabs(t));
            return ((*this)(j - 1, t + h) - (*this)(j - 1, t - h)) / (2.0 * h);
        }
    };
    FunctionSpec fs;
    fs.value_ = value;
    fs.deriv_ = NestedFd{std::move(value)};
    fs.max_order_ = max_order;
    fs.a_ = a;
    fs.b_ = b;
    fs.reduced_accuracy_ = true;
    return fs;
}

FunctionSpec FunctionSpec::shifted_by(double c) const {
    FunctionSpec fs;
    fs.value_ = [v = value_, c](double t) { return v(t) - c; };
    fs.deriv_ = [d = deriv_, v = value_, c](int j, double t) {
        return j == 0 ? v(t) - c : d(j, t);
    };
    fs.max_order_ = max_order_;
    fs.a_ = a_;
    fs.b_ = b_;
    fs.reduced_accuracy_ = reduced_accuracy_;
    return fs;
}

namespace {

/// Stirling numbers of the second kind S2(k,j) and the companion
/// triangle a_{k,j} of the first-derivative sequence, both filled once.
struct SeqTables {
    std::vector<std::vector<double>> s2;
    std::vector<std::vector<double>> a;

    SeqTables() {
        s2.assign(kMaxSeqOrder + 1, std::vector<double>(kMaxSeqOrder + 1, 0.0));
        a.assign(kMaxSeqOrder + 1, std::vector<double>(kMaxSeqOrder + 1, 0.0));
        s2[0][0] = 1.0;
        a[0][0] = 1.0;
        for (int k = 0; k < kMaxSeqOrder; ++k) {
            for (int j = 0; j <= k + 1; ++j) {
                double sv = static_cast<double>(j) * s2[k][static_cast<std::size_t>(j)];
                double av = static_cast<double>(j + 1) * a[k][static_cast<std::size_t>(j)];
                if (j >= 1) {
                    sv += s2[k][static_cast<std::size_t>(j) - 1];
                    av += a[k][static_cast<std::size_t>(j) - 1];
                }
                s2[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(j)] = sv;
                a[static_cast<std::size_t>(k) + 1][static_cast<std::size_t>(j)] = av;
            }
        }
    }
};

const SeqTables& seq_tables() {
    static const SeqTables tables;
    return tables;
}

}  // namespace

double seq_x_k0(const FunctionSpec& fs, int k, double t) {
    if (k < 0 || k > kMaxSeqOrder) {
        throw std::invalid_argument("seq_x_k0: order out of range");
    }
    if (fs.max_order() < k) {
        throw std::invalid_argument("seq_x_k0: FunctionSpec max_order insufficient");
    }
    const auto& s2 = seq_tables().s2;
    double sum = 0.0;
    double tj = 1.0;
    for (int j = 0; j <= k; ++j) {
        const double w = s2[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        if (w != 0.0) sum += w * tj * fs.deriv(j, t);
        tj *= t;
    }
    return sum;
}

double seq_x_k1(const FunctionSpec& fs, int k, double t) {
    if (k < 0 || k > kMaxSeqOrder) {
        throw std::invalid_argument("seq_x_k1: order out of range");
    }
    if (fs.max_order() < k + 1) {
        throw std::invalid_argument("seq_x_k1: FunctionSpec max_order insufficient");
    }
    const auto& a = seq_tables().a;
    double sum = 0.0;
    double tj = 1.0;
    for (int j = 0; j <= k; ++j) {
        const double w = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        if (w != 0.0) sum += w * tj * fs.deriv(j + 1, t);
        tj *= t;
    }
    return sum;
}

}  // namespace hadvo
