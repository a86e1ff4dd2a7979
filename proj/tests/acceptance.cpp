// Acceptance gate for the variable-order Hadamard operator engine.
//
// Runs nine end-to-end checks, printing exactly one line per check:
//   [PASS] criterion k: <label> (<key numbers>)
//   [FAIL] criterion k: <label>: <what was violated>
// The process exits 0 only if every selected criterion passes.
//
//   acceptance_tests                 runs all nine
//   acceptance_tests --criterion 4   runs one

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "hadvo/bounds.hpp"
#include "hadvo/expansion.hpp"
#include "hadvo/functions.hpp"
#include "hadvo/operators.hpp"
#include "hadvo/quadrature.hpp"
#include "hadvo/solvers.hpp"
#include "hadvo/specfun.hpp"

using namespace hadvo;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;  // appended to the printed line
};

double now_seconds() {
    using clock = std::chrono::steady_clock;
    static const clock::time_point start = clock::now();
    return std::chrono::duration<double>(clock::now() - start).count();
}

std::string num(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

OrderFunction variable_order() { return OrderFunction::linear(0.0, 0.1, 1.0, 5.0); }
FunctionSpec logsq() { return FunctionSpec::log_power(2.0, 1.0, 5.0); }

/// 50 evaluation points covering [1.05, 5]; the last one is exactly 5.
std::vector<double> sample_grid() {
    std::vector<double> ts(50);
    for (int i = 0; i < 50; ++i) {
        ts[static_cast<std::size_t>(i)] =
            i == 49 ? 5.0 : 1.05 + (5.0 - 1.05) * i / 49.0;
    }
    return ts;
}

double model_forcing(const OrderFunction& of, double t) {
    return closed_form_logpower(LogPowerKind::marchaud, 2.0, of, 1.0, t);
}

// --- criterion 1 -----------------------------------------------------------

Outcome run_closed_form_agreement() {
    const double t0 = now_seconds();
    const OrderFunction of = variable_order();
    quadrature::QuadratureConfig qc;
    qc.rel_tol = 1e-10;
    qc.abs_tol = 1e-12;
    double worst = 0.0;
    for (const double beta : {1.0, 2.0, 3.0}) {
        const FunctionSpec fs = FunctionSpec::log_power(beta, 1.0, 5.0);
        for (const double t : sample_grid()) {
            const struct {
                LogPowerKind kind;
                double oracle;
            } rows[] = {
                {LogPowerKind::integral, left_integral_oracle(fs, of, t, qc)},
                {LogPowerKind::marchaud, left_marchaud_oracle(fs, of, t, qc)},
                {LogPowerKind::hadamard_deriv, left_hadamard_deriv_oracle(fs, of, t, qc)},
            };
            for (const auto& row : rows) {
                const double exact = closed_form_logpower(row.kind, beta, of, 1.0, t);
                worst = std::max(worst, std::abs(row.oracle - exact) / std::abs(exact));
            }
        }
    }
    const double elapsed = now_seconds() - t0;
    Outcome oc;
    oc.pass = worst <= 1e-7 && elapsed <= 30.0;
    oc.detail = "max relative error " + num(worst) + " (tolerance 1e-7), " +
                num(elapsed) + "s (limit 30s)";
    return oc;
}

// --- criterion 2 -----------------------------------------------------------

Outcome run_polynomial_identity() {
    const OrderFunction of = variable_order();
    const FunctionSpec fs = logsq();
    const auto poly = [](int bigN, double t) {
        switch (bigN) {
            case 2: return (t * t - 20.0 * t + 300.0) / 300.0;
            case 3: return (-t * t * t + 40.0 * t * t - 700.0 * t + 12000.0) / 12000.0;
            default:
                return (t * t * t * t - 70.0 * t * t * t + 1900.0 * t * t -
                        33000.0 * t + 600000.0) /
                       600000.0;
        }
    };
    double worst = 0.0;
    for (const int bigN : {2, 3, 4}) {
        for (const double t : {2.0, 3.0, 4.0, 5.0}) {
            const double lt = std::log(t);
            const double expected = poly(bigN, t) * std::pow(lt, 2.0 + t / 10.0) *
                                    specfun::gamma_reciprocal(2.0 + t / 10.0);
            expansion::ExpansionConfig ec;
            ec.n = 1;
            ec.N = bigN;
            const double got = expansion::approx_integral_left(fs, of, t, ec);
            worst = std::max(worst, std::abs(got - expected) / std::abs(expected));
        }
    }
    Outcome oc;
    oc.pass = worst <= 1e-12;
    oc.detail = "max relative error " + num(worst) + " (tolerance 1e-12)";
    return oc;
}

// --- criterion 3 -----------------------------------------------------------

Outcome run_bound_soundness() {
    const OrderFunction of = variable_order();
    const FunctionSpec fs = logsq();
    int checked = 0;
    int violations = 0;
    std::string first;
    const auto record = [&](bool ok, const char* what, double t, int bigN, double err,
                            double bd) {
        ++checked;
        if (!ok) {
            ++violations;
            if (first.empty()) {
                first = std::string(what) + " at t=" + num(t) + ", N=" +
                        std::to_string(bigN) + ": error " + num(err) + " > bound " +
                        num(bd);
            }
        }
    };
    for (const double t : sample_grid()) {
        bounds::BoundInputs bl = bounds::bound_inputs_for(fs, of, t, 1, 2,
                                                          expansion::Side::left);
        for (const int bigN : {2, 3, 4}) {
            bl.N = bigN;
            expansion::ExpansionConfig ec;
            ec.n = 1;
            ec.N = bigN;

            ec.kind = expansion::OperatorKind::integral;
            double err = std::abs(left_integral_oracle(fs, of, t) -
                                  expansion::approx_operator(fs, of, t, ec));
            double bd = bounds::bound_integral_EN(bl);
            record(err <= bd, "left integral", t, bigN, err, bd);

            ec.kind = expansion::OperatorKind::marchaud;
            err = std::abs(left_marchaud_oracle(fs, of, t) -
                           expansion::approx_operator(fs, of, t, ec));
            bd = bounds::bound_deriv_E1(bl);
            record(err <= bd, "left marchaud-form", t, bigN, err, bd);

            ec.kind = expansion::OperatorKind::hadamard_deriv;
            err = std::abs(left_hadamard_deriv_oracle(fs, of, t) -
                           expansion::approx_operator(fs, of, t, ec));
            bd = bounds::bound_deriv_E1(bl) + bounds::bound_deriv_E2(bl);
            record(err <= bd, "left derivative", t, bigN, err, bd);
        }

        if (t >= 5.0) continue;  // right-side operators stop short of b
        bounds::BoundInputs br = bounds::bound_inputs_for(fs, of, t, 1, 2,
                                                          expansion::Side::right);
        for (const int bigN : {2, 3, 4}) {
            br.N = bigN;
            expansion::ExpansionConfig ec;
            ec.n = 1;
            ec.N = bigN;
            ec.side = expansion::Side::right;

            ec.kind = expansion::OperatorKind::integral;
            double err = std::abs(right_integral_oracle(fs, of, t) -
                                  expansion::approx_operator(fs, of, t, ec));
            double bd = bounds::bound_right_EN(br);
            record(err <= bd, "right integral", t, bigN, err, bd);

            ec.kind = expansion::OperatorKind::marchaud;
            err = std::abs(right_marchaud_oracle(fs, of, t) -
                           expansion::approx_operator(fs, of, t, ec));
            bd = bounds::bound_right_E1(br);
            record(err <= bd, "right marchaud-form", t, bigN, err, bd);

            ec.kind = expansion::OperatorKind::hadamard_deriv;
            err = std::abs(right_hadamard_deriv_oracle(fs, of, t) -
                           expansion::approx_operator(fs, of, t, ec));
            bd = bounds::bound_right_E1(br) + bounds::bound_right_E2(br);
            record(err <= bd, "right derivative", t, bigN, err, bd);
        }
    }
    Outcome oc;
    oc.pass = violations == 0;
    oc.detail = oc.pass ? "all " + std::to_string(checked) + " comparisons within bounds"
                        : first + " (" + std::to_string(violations) + "/" +
                              std::to_string(checked) + " violations)";
    return oc;
}

// --- criterion 4 -----------------------------------------------------------

Outcome run_l2_decrease() {
    const OrderFunction of = variable_order();
    const FunctionSpec fs = logsq();
    quadrature::QuadratureConfig qc;
    qc.rel_tol = 1e-6;
    qc.abs_tol = 1e-9;
    qc.max_subdivisions = 2000;
    const auto l2_for = [&](expansion::OperatorKind kind, int n, int bigN) {
        const LogPowerKind ck = kind == expansion::OperatorKind::integral
                                    ? LogPowerKind::integral
                                : kind == expansion::OperatorKind::marchaud
                                    ? LogPowerKind::marchaud
                                    : LogPowerKind::hadamard_deriv;
        expansion::ExpansionConfig ec;
        ec.n = n;
        ec.N = bigN;
        ec.kind = kind;
        return solvers::l2_error(
            [&](double t) { return closed_form_logpower(ck, 2.0, of, 1.0, t); },
            [&](double t) { return expansion::approx_operator(fs, of, t, ec); }, 1.0,
            5.0, qc);
    };
    const char* names[] = {"integral", "derivative", "marchaud-form"};
    const expansion::OperatorKind kinds[] = {expansion::OperatorKind::integral,
                                             expansion::OperatorKind::hadamard_deriv,
                                             expansion::OperatorKind::marchaud};
    std::string bad;
    std::ostringstream summary;
    for (int i = 0; i < 3; ++i) {
        const double e2 = l2_for(kinds[i], 1, 2);
        const double e3 = l2_for(kinds[i], 1, 3);
        const double e4 = l2_for(kinds[i], 1, 4);
        if (!(e2 > e3 && e3 > e4)) {
            bad = std::string(names[i]) + " L2 not strictly decreasing in N: " +
                  num(e2) + ", " + num(e3) + ", " + num(e4);
            break;
        }
        // Deeper pointwise expansions may only tie (several are exact for
        // this data), so the depth sweep allows round-off slack.
        const double d2 = l2_for(kinds[i], 2, 4);
        const double d3 = l2_for(kinds[i], 3, 4);
        if (!(d2 <= e4 + 1e-10 && d3 <= d2 + 1e-10)) {
            bad = std::string(names[i]) + " L2 increases with depth: " + num(e4) +
                  ", " + num(d2) + ", " + num(d3);
            break;
        }
        if (i) summary << ", ";
        summary << names[i] << " N-sweep " << num(e2) << " > " << num(e3) << " > "
                << num(e4);
    }
    Outcome oc;
    oc.pass = bad.empty();
    oc.detail = oc.pass ? summary.str() : bad;
    return oc;
}

// --- criterion 5 -----------------------------------------------------------

Outcome run_derivative_decomposition() {
    const FunctionSpec fs = logsq();

    // Constant order: the two derivative forms must coincide.
    double worst_const = 0.0;
    for (const double alpha : {0.25, 0.5, 0.75}) {
        const OrderFunction of = OrderFunction::constant(alpha, 1.0, 5.0);
        for (const double t : sample_grid()) {
            worst_const = std::max(worst_const,
                                   std::abs(left_hadamard_deriv_oracle(fs, of, t) -
                                            left_marchaud_oracle(fs, of, t)));
        }
    }

    // Variable order: a centered difference of the defining kernel
    // integral (order moving with the evaluation point, reciprocal-gamma
    // prefactor held at the outer evaluation point) must match the
    // decomposed derivative value.
    const OrderFunction of = variable_order();
    quadrature::QuadratureConfig tight;
    tight.rel_tol = 1e-12;
    tight.abs_tol = 1e-13;
    tight.max_subdivisions = 2000;
    const auto kernel = [&](double s) {
        return quadrature::hadamard_weighted_integral(
                   [&fs](double tau) { return fs.value(tau); }, 1.0, s,
                   -of.alpha(s), false, tight)
            .value;
    };
    const double h = 1e-5;
    double worst_var = 0.0;
    for (const double t : {1.5, 2.2, 3.0, 4.1, 4.9}) {
        const double fd = specfun::gamma_reciprocal(1.0 - of.alpha(t)) * t *
                          (kernel(t + h) - kernel(t - h)) / (2.0 * h);
        const double assembled = left_hadamard_deriv_oracle(fs, of, t, tight);
        worst_var = std::max(worst_var, std::abs(fd - assembled));
    }

    Outcome oc;
    oc.pass = worst_const <= 1e-6 && worst_var <= 1e-6;
    oc.detail = "constant-order form gap " + num(worst_const) +
                ", defining-derivative residual " + num(worst_var) +
                " (tolerance 1e-6)";
    return oc;
}

// --- criterion 6 -----------------------------------------------------------

Outcome run_initial_value_solver() {
    const double t0 = now_seconds();
    const OrderFunction of = variable_order();
    const double exact_b = std::pow(std::log(5.0), 2.0);
    quadrature::QuadratureConfig qc;
    qc.rel_tol = 1e-9;
    qc.abs_tol = 1e-12;
    qc.max_subdivisions = 5000;
    std::vector<double> l2(6, 0.0);
    double end_err5 = 0.0;
    for (int bigN = 2; bigN <= 5; ++bigN) {
        solvers::FdeProblem pr{
            .of = of,
            .a = 1.0,
            .b = 5.0,
            .rhs =
                [&of](double t, double x) {
                    const double lt = std::log(t);
                    return model_forcing(of, t) + lt * lt - x;
                },
            .x_a = 0.0,
            .N = bigN,
            .epsilon = 1e-4,
            .step = 0.0};
        const solvers::TrajectorySolution sol = solvers::fde_solve(pr);
        const auto fn = solvers::trajectory_interpolant(sol);
        l2[static_cast<std::size_t>(bigN)] = solvers::l2_error(
            [](double t) {
                const double lt = std::log(t);
                return lt * lt;
            },
            fn, 1.0, 5.0, qc);
        if (bigN == 5) end_err5 = std::abs(sol.x.back() - exact_b);
    }
    const double elapsed = now_seconds() - t0;
    const bool small = l2[3] <= 0.1 && l2[4] <= 0.1 && l2[5] <= 0.1;
    const bool monotone = l2[2] >= l2[3] && l2[3] >= l2[4] && l2[4] >= l2[5];
    Outcome oc;
    oc.pass = small && monotone && end_err5 <= 0.05 && elapsed <= 60.0;
    oc.detail = "L2 " + num(l2[2]) + " >= " + num(l2[3]) + " >= " + num(l2[4]) +
                " >= " + num(l2[5]) + ", endpoint error " + num(end_err5) +
                " (limit 0.05), " + num(elapsed) + "s (limit 60s)";
    return oc;
}

// --- criterion 7 -----------------------------------------------------------

Outcome run_variational_solver() {
    const double t0 = now_seconds();
    const OrderFunction of = variable_order();
    solvers::FvpProblem pr{
        .of = of,
        .a = 1.0,
        .b = 5.0,
        .target = [&of](double t) { return model_forcing(of, t); },
        .x_a = 0.0,
        .x_b = std::pow(std::log(5.0), 2.0),
        .N = 3,
        .epsilon = 0.0,
        .step = 0.0,
        .newton_tol = 1e-10,
        .max_newton_iters = 50};
    const solvers::TrajectorySolution sol = solvers::fvp_solve(pr);
    quadrature::QuadratureConfig qc;
    qc.rel_tol = 1e-9;
    qc.abs_tol = 1e-12;
    qc.max_subdivisions = 5000;
    const double l2 = solvers::l2_error(
        [](double t) {
            const double lt = std::log(t);
            return lt * lt;
        },
        solvers::trajectory_interpolant(sol), 1.0, 5.0, qc);
    const double elapsed = now_seconds() - t0;
    const double residual = sol.diagnostics.residual_norm;
    const double objective = sol.diagnostics.objective;
    const bool ok_res = residual <= 1e-8;
    const bool ok_obj = objective <= 1e-3;
    const bool ok_l2 = l2 <= 0.1;
    const bool ok_time = elapsed <= 60.0;
    Outcome oc;
    oc.pass = ok_res && ok_obj && ok_l2 && ok_time;
    oc.detail = std::string("boundary residual ") + num(residual) +
                (ok_res ? " <= 1e-8" : " > 1e-8") + ", objective " + num(objective) +
                (ok_obj ? " <= 1e-3" : " > 1e-3 (residual tracking floor of this "
                                       "problem; see README)") +
                ", L2 " + num(l2) + (ok_l2 ? " <= 0.1" : " > 0.1") + ", " +
                num(elapsed) + "s (limit 60s)";
    return oc;
}

// --- criterion 8 -----------------------------------------------------------

Outcome run_specfun_identities() {
    double worst_reflection = 0.0;
    for (double z = 0.05; z < 0.975; z += 0.05) {
        const double lhs = specfun::gamma(z) * specfun::gamma(1.0 - z);
        const double expected = 3.14159265358979323846 / specfun::sin_pi(z);
        worst_reflection =
            std::max(worst_reflection, std::abs(lhs - expected) / std::abs(expected));
    }
    double worst_recurrence = 0.0;
    for (const double z : {0.3, 1.7, -0.7, 4.2, -2.3}) {
        const double lhs = specfun::gamma(z + 1.0);
        const double rhs = z * specfun::gamma(z);
        worst_recurrence =
            std::max(worst_recurrence, std::abs(lhs - rhs) / std::abs(lhs));
    }

    bool envelope_ok = true;
    std::string counterexample;
    for (int ai = 1; ai <= 9 && envelope_ok; ++ai) {
        const double alpha = ai / 10.0;
        const double scale = std::exp(alpha * alpha - alpha);
        for (int k = 1; k <= 200; ++k) {
            const double magnitude = std::abs(specfun::gen_binomial(alpha, k));
            const double envelope = scale * std::pow(k, alpha - 1.0);
            if (magnitude > envelope) {
                envelope_ok = false;
                counterexample = "coefficient magnitude " + num(magnitude) +
                                 " exceeds envelope " + num(envelope) + " at alpha=" +
                                 num(alpha) + ", k=" + std::to_string(k);
                break;
            }
        }
    }

    Outcome oc;
    const bool gam_ok = worst_reflection <= 1e-12 && worst_recurrence <= 1e-12;
    oc.pass = gam_ok && envelope_ok;
    if (oc.pass) {
        oc.detail = "reflection " + num(worst_reflection) + ", recurrence " +
                    num(worst_recurrence) + ", envelope holds through k=200";
    } else if (!gam_ok) {
        oc.detail = "gamma identity error: reflection " + num(worst_reflection) +
                    ", recurrence " + num(worst_recurrence);
    } else {
        oc.detail = counterexample;
    }
    return oc;
}

// --- criterion 9 -----------------------------------------------------------

Outcome run_caputo_dual_route() {
    const OrderFunction of = variable_order();
    const FunctionSpec fs = FunctionSpec::log_poly({{1.0, 0.0}, {1.0, 2.0}}, 1.0, 5.0);
    const FunctionSpec shifted = fs.shifted_by(fs.value(1.0));
    double worst = 0.0;
    for (const double t : sample_grid()) {
        const double direct = caputo_left_oracle(fs, of, t);
        const double via_shift = left_hadamard_deriv_oracle(shifted, of, t);
        worst = std::max(worst, std::abs(direct - via_shift) / std::abs(direct));
    }
    Outcome oc;
    oc.pass = worst <= 1e-7;
    oc.detail = "max relative gap " + num(worst) + " (tolerance 1e-7)";
    return oc;
}

struct Criterion {
    int id;
    const char* label;
    Outcome (*run)();
};

const Criterion kCriteria[] = {
    {1, "operator values match log-power closed forms", run_closed_form_agreement},
    {2, "integral expansion reproduces its polynomial identity", run_polynomial_identity},
    {3, "truncation bounds dominate the observed errors", run_bound_soundness},
    {4, "L2 error decreases with truncation and depth", run_l2_decrease},
    {5, "derivative decomposition is consistent", run_derivative_decomposition},
    {6, "initial-value solver converges on the model problem", run_initial_value_solver},
    {7, "variational solver meets residual, objective, and L2 targets",
     run_variational_solver},
    {8, "gamma identities hold and binomial magnitudes stay enveloped",
     run_specfun_identities},
    {9, "shift-invariant derivative agrees along both routes", run_caputo_dual_route},
};

}  // namespace

int main(int argc, char** argv) {
    int selected = 0;  // 0 = all
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            selected = std::atoi(argv[++i]);
            if (selected < 1 || selected > 9) {
                std::fprintf(stderr, "allowed: --criterion 1..9\n");
                return 2;
            }
        } else {
            std::fprintf(stderr, "usage: %s [--criterion k]\n", argv[0]);
            return 2;
        }
    }
    (void)now_seconds();
    bool all_pass = true;
    for (const Criterion& c : kCriteria) {
        if (selected != 0 && c.id != selected) continue;
        Outcome oc;
        try {
            oc = c.run();
        } catch (const std::exception& e) {
            oc.pass = false;
            oc.detail = std::string("unexpected exception: ") + e.what();
        }
        if (oc.pass) {
            std::printf("[PASS] criterion %d: %s (%s)\n", c.id, c.label,
                        oc.detail.c_str());
        } else {
            std::printf("[FAIL] criterion %d: %s: %s\n", c.id, c.label,
                        oc.detail.c_str());
        }
        std::fflush(stdout);
        all_pass = all_pass && oc.pass;
    }
    return all_pass ? 0 : 1;
}
