#include "hadvo/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <string>

#include "hadvo/expansion.hpp"

namespace hadvo::solvers {

namespace {

/// Smallest pivot magnitude we are willing to divide by when solving the
/// assembled relation for x'.
constexpr double kPivotFloor = 1e-250;

double t_of_ell(double a, double ell) { return a * std::exp(std::exp(ell)); }

/// Integration mesh, uniform in ell = ln(ln(t/a)).
struct Mesh {
    double a = 0.0;
    double b = 0.0;
    double epsilon = 0.0;
    int steps = 0;
    double ell0 = 0.0;
    double h = 0.0;

    [[nodiscard]] double ell_at(int i) const { return ell0 + i * h; }
    [[nodiscard]] double t_at(int i) const {
        if (i == 0) return a + epsilon;
        if (i == steps) return b;
        return t_of_ell(a, ell_at(i));
    }
};

Mesh make_mesh(const OrderFunction& of, double a, double b, double epsilon,
               double step, const char* who) {
    if (!(a > 0.0 && a < b)) {
        throw std::invalid_argument(std::string(who) + ": requires 0 < a < b");
    }
    if (of.a() > a || of.b() < b) {
        throw std::invalid_argument(std::string(who) +
                                    ": order function does not cover [a, b]");
    }
    Mesh m;
    m.a = a;
    m.b = b;
    m.epsilon = epsilon == 0.0 ? 1e-4 * (b - a) : epsilon;
    if (!(m.epsilon > 0.0) || !(a + m.epsilon < b)) {
        throw std::invalid_argument(std::string(who) +
                                    ": start offset must satisfy 0 < epsilon < b - a");
    }
    const double span = b - a - m.epsilon;
    const double st = step == 0.0 ? span / 2000.0 : step;
    if (!(st > 0.0)) {
        throw std::invalid_argument(std::string(who) + ": step must be positive");
    }
    m.steps = static_cast<int>(std::max<long long>(1, std::llround(span / st)));
    m.ell0 = std::log(std::log1p(m.epsilon / a));
    const double ell1 = std::log(std::log(b / a));
    m.h = (ell1 - m.ell0) / m.steps;
    return m;
}

void check_finite(const std::vector<double>& y, const char* who) {
    for (const double v : y) {
        if (!std::isfinite(v)) {
            throw Divergence(std::string(who) + ": non-finite state encountered");
        }
    }
}

/// x' from the assembled n = 1 relation; V points at V_2..V_N.
double fde_xprime(const FdeProblem& pr, double t, double x, const double* V) {
    if (!(t > pr.a)) {
        throw SingularAssembly("fde_assemble: t must exceed the lower terminal a");
    }
    const double alpha = pr.of.alpha(t);
    const expansion::CoefficientSet cs = expansion::coeffs_deriv(alpha, 1, pr.N);
    const double big_l = std::log(t / pr.a);
    const double pivot = cs.A[1] * std::pow(big_l, 1.0 - alpha) * t;
    if (!(std::fabs(pivot) > kPivotFloor)) {
        throw SingularAssembly("fde_assemble: vanishing x' coefficient (t too close to a)");
    }
    double acc = pr.rhs(t, x) - cs.A[0] * std::pow(big_l, -alpha) * x;
    for (int k = 2; k <= pr.N; ++k) {
        acc -= cs.b_at(k) * std::pow(big_l, 1.0 - k - alpha) * V[k - 2];
    }
    return acc / pivot;
}

/// Coefficient bundle for the Hamiltonian system at one point.
struct HamCoeffs {
    double alpha = 0.0;
    double big_l = 0.0;
    double a0 = 0.0;
    double a1 = 0.0;
    std::vector<double> b;  ///< b[k-2] = B(k), k = 2..N
};

HamCoeffs ham_coeffs(const FvpProblem& pr, double t) {
    if (!(t > pr.a)) {
        throw SingularAssembly("fvp system: t must exceed the lower terminal a");
    }
    HamCoeffs hc;
    hc.alpha = pr.of.alpha(t);
    hc.big_l = std::log(t / pr.a);
    const expansion::CoefficientSet cs = expansion::coeffs_deriv(hc.alpha, 1, pr.N);
    hc.a0 = cs.A[0];
    hc.a1 = cs.A[1];
    if (!(std::fabs(hc.a1 * t) > kPivotFloor)) {
        throw SingularAssembly("fvp system: vanishing leading coefficient");
    }
    hc.b.resize(static_cast<std::size_t>(pr.N - 1));
    for (int k = 2; k <= pr.N; ++k) hc.b[static_cast<std::size_t>(k - 2)] = cs.b_at(k);
    return hc;
}

/// d/dt of (x, V_2..V_N) given lambda_1; state points at x followed by V.
void fvp_state_rhs(const FvpProblem& pr, double t, const HamCoeffs& hc,
                   const double* state, double lambda1, double* deriv) {
    const double a1t = hc.a1 * t;
    const double x = state[0];
    double xp = pr.target(t) * std::pow(hc.big_l, hc.alpha - 1.0) / a1t -
                std::pow(hc.big_l, 2.0 * hc.alpha - 2.0) / (2.0 * a1t * a1t) * lambda1 -
                hc.a0 / (hc.big_l * a1t) * x;
    for (int k = 2; k <= pr.N; ++k) {
        xp -= hc.b[static_cast<std::size_t>(k - 2)] * std::pow(hc.big_l, -k) / a1t *
              state[k - 1];
    }
    deriv[0] = xp;
    for (int k = 2; k <= pr.N; ++k) {
        deriv[k - 1] = (k - 1) * std::pow(hc.big_l, k - 2.0) * x / t;
    }
}

/// d/dt of (lambda_1..lambda_N); lam points at lambda_1.
void fvp_costate_rhs(const FvpProblem& pr, double t, const HamCoeffs& hc,
                     const double* lam, double* deriv) {
    const double a1t = hc.a1 * t;
    double l1p = hc.a0 / (hc.big_l * a1t) * lam[0];
    for (int k = 2; k <= pr.N; ++k) {
        l1p -= (k - 1) * std::pow(hc.big_l, k - 2.0) / t * lam[k - 1];
    }
    deriv[0] = l1p;
    for (int k = 2; k <= pr.N; ++k) {
        deriv[k - 1] =
            hc.b[static_cast<std::size_t>(k - 2)] * std::pow(hc.big_l, -k) / a1t * lam[0];
    }
}

/// Objective integrand of the variational problem as a function of t.
double fvp_objective_integrand(double t, const HamCoeffs& hc, double lambda1) {
    const double a1t = hc.a1 * t;
    const double u_gap = lambda1 * std::pow(hc.big_l, hc.alpha - 1.0) / (2.0 * a1t);
    return u_gap * u_gap;
}

/// One classical 4th-order step of y' = f(ell, y) from ell to ell + h.
template <typename Rhs>
void rk4_step(const Rhs& f, double ell, double h, std::vector<double>& y,
              std::vector<double>& k1, std::vector<double>& k2, std::vector<double>& k3,
              std::vector<double>& k4, std::vector<double>& tmp) {
    const std::size_t n = y.size();
    f(ell, y, k1);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
    f(ell + 0.5 * h, tmp, k2);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
    f(ell + 0.5 * h, tmp, k3);
    for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
    f(ell + h, tmp, k4);
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
}

/// Dense linear solve with partial pivoting; used for the Newton update.
std::vector<double> solve_linear(std::vector<std::vector<double>> m,
                                 std::vector<double> rhs) {
    const int n = static_cast<int>(rhs.size());
    double scale = 0.0;
    for (const auto& row : m) {
        for (const double v : row) scale = std::max(scale, std::fabs(v));
    }
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r) {
            if (std::fabs(m[r][col]) > std::fabs(m[piv][col])) piv = r;
        }
        if (!(std::fabs(m[piv][col]) > 1e-14 * (1.0 + scale))) {
            throw RankDeficient("fvp_solve: shooting Jacobian is numerically singular");
        }
        std::swap(m[piv], m[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = col + 1; r < n; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
            rhs[r] -= f * rhs[col];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int r = n - 1; r >= 0; --r) {
        double acc = rhs[r];
        for (int c = r + 1; c < n; ++c) acc -= m[r][c] * x[static_cast<std::size_t>(c)];
        x[static_cast<std::size_t>(r)] = acc / m[r][r];
    }
    return x;
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (const double e : v) s += e * e;
    return std::sqrt(s);
}

/// Everything one shooting evaluation produces.
struct Shot {
    std::vector<double> residual;             ///< (x(b)-x_b, z_2..z_N)
    std::vector<double> lambda1_half;         ///< lambda_1 at all half-nodes
    std::vector<std::vector<double>> lambda;  ///< full costate at full nodes
    std::vector<double> x;                    ///< x at full nodes
    std::vector<std::vector<double>> v;       ///< V_2..V_N at full nodes
};

/// Integrate the closed linear costate subsystem backward from t = b with
/// terminal value z, then the state subsystem forward from t = a+epsilon,
/// sampling lambda_1 at the stored half-nodes for the forward stages.
Shot evaluate_shot(const FvpProblem& pr, const Mesh& mesh,
                   const std::vector<double>& z) {
    const int n_state = pr.N;
    const int half_count = 2 * mesh.steps + 1;
    const double hh = 0.5 * mesh.h;

    Shot shot;
    shot.lambda1_half.resize(static_cast<std::size_t>(half_count));
    shot.lambda.assign(static_cast<std::size_t>(mesh.steps) + 1, {});

    const auto costate_ell = [&pr](double ell, const std::vector<double>& lam,
                                   std::vector<double>& dlam) {
        const double t = t_of_ell(pr.a, ell);
        const HamCoeffs hc = ham_coeffs(pr, t);
        fvp_costate_rhs(pr, t, hc, lam.data(), dlam.data());
        const double scale = t * hc.big_l;  // d t / d ell
        for (double& d : dlam) d *= scale;
    };

    std::vector<double> lam = z;
    std::vector<double> k1(lam.size()), k2(lam.size()), k3(lam.size()), k4(lam.size()),
        tmp(lam.size());
    shot.lambda1_half[static_cast<std::size_t>(half_count - 1)] = lam[0];
    shot.lambda[static_cast<std::size_t>(mesh.steps)] = lam;
    for (int j = half_count - 1; j > 0; --j) {
        const double ell = mesh.ell0 + j * hh;
        rk4_step(costate_ell, ell, -hh, lam, k1, k2, k3, k4, tmp);
        check_finite(lam, "fvp_solve");
        shot.lambda1_half[static_cast<std::size_t>(j - 1)] = lam[0];
        if ((j - 1) % 2 == 0) shot.lambda[static_cast<std::size_t>((j - 1) / 2)] = lam;
    }

    // Forward sweep for (x, V_2..V_N) with lambda_1 interleaved from the
    // backward sweep's half-nodes (middle stages share the midpoint value).
    std::vector<double> s(static_cast<std::size_t>(n_state), 0.0);
    s[0] = pr.x_a;
    shot.x.resize(static_cast<std::size_t>(mesh.steps) + 1);
    shot.v.assign(static_cast<std::size_t>(mesh.steps) + 1,
                  std::vector<double>(static_cast<std::size_t>(pr.N - 1)));
    const auto record = [&](int node, const std::vector<double>& state) {
        shot.x[static_cast<std::size_t>(node)] = state[0];
        for (int k = 2; k <= pr.N; ++k) {
            shot.v[static_cast<std::size_t>(node)][static_cast<std::size_t>(k - 2)] =
                state[static_cast<std::size_t>(k - 1)];
        }
    };
    record(0, s);

    std::vector<double> sk1(s.size()), sk2(s.size()), sk3(s.size()), sk4(s.size()),
        stmp(s.size());
    const auto state_ell = [&pr](double ell, double lambda1,
                                 const std::vector<double>& y, std::vector<double>& dy) {
        const double t = t_of_ell(pr.a, ell);
        const HamCoeffs hc = ham_coeffs(pr, t);
        fvp_state_rhs(pr, t, hc, y.data(), lambda1, dy.data());
        const double scale = t * hc.big_l;
        for (double& d : dy) d *= scale;
    };
    for (int i = 0; i < mesh.steps; ++i) {
        const double ell = mesh.ell_at(i);
        const double l1_0 = shot.lambda1_half[static_cast<std::size_t>(2 * i)];
        const double l1_m = shot.lambda1_half[static_cast<std::size_t>(2 * i + 1)];
        const double l1_1 = shot.lambda1_half[static_cast<std::size_t>(2 * i + 2)];
        state_ell(ell, l1_0, s, sk1);
        for (std::size_t q = 0; q < s.size(); ++q) stmp[q] = s[q] + 0.5 * mesh.h * sk1[q];
        state_ell(ell + 0.5 * mesh.h, l1_m, stmp, sk2);
        for (std::size_t q = 0; q < s.size(); ++q) stmp[q] = s[q] + 0.5 * mesh.h * sk2[q];
        state_ell(ell + 0.5 * mesh.h, l1_m, stmp, sk3);
        for (std::size_t q = 0; q < s.size(); ++q) stmp[q] = s[q] + mesh.h * sk3[q];
        state_ell(ell + mesh.h, l1_1, stmp, sk4);
        for (std::size_t q = 0; q < s.size(); ++q) {
            s[q] += mesh.h / 6.0 * (sk1[q] + 2.0 * sk2[q] + 2.0 * sk3[q] + sk4[q]);
        }
        check_finite(s, "fvp_solve");
        record(i + 1, s);
    }

    shot.residual.resize(static_cast<std::size_t>(pr.N));
    shot.residual[0] = s[0] - pr.x_b;
    for (int k = 2; k <= pr.N; ++k) {
        shot.residual[static_cast<std::size_t>(k - 1)] =
            z[static_cast<std::size_t>(k - 1)];
    }
    return shot;
}

/// Composite Simpson in ell over the half-node samples of the objective
/// integrand (matches the 4th-order accuracy of the trajectory itself).
double reconstruct_objective(const FvpProblem& pr, const Mesh& mesh,
                             const std::vector<double>& lambda1_half) {
    const auto g = [&](int half_node) {
        const double ell = mesh.ell0 + half_node * 0.5 * mesh.h;
        const double t = t_of_ell(pr.a, ell);
        const HamCoeffs hc = ham_coeffs(pr, t);
        return fvp_objective_integrand(
                   t, hc, lambda1_half[static_cast<std::size_t>(half_node)]) *
               t * hc.big_l;
    };
    double acc = 0.0;
    for (int i = 0; i < mesh.steps; ++i) {
        acc += mesh.h / 6.0 * (g(2 * i) + 4.0 * g(2 * i + 1) + g(2 * i + 2));
    }
    return acc;
}

}  // namespace

double fde_assemble(const FdeProblem& problem, double t, double x,
                    const std::vector<double>& V) {
    if (problem.N < 2) throw std::invalid_argument("fde_assemble: N must be >= 2");
    if (!problem.rhs) throw std::invalid_argument("fde_assemble: rhs is empty");
    if (static_cast<int>(V.size()) != problem.N - 1) {
        throw std::invalid_argument("fde_assemble: V must hold V_2..V_N");
    }
    return fde_xprime(problem, t, x, V.data());
}

TrajectorySolution fde_solve(const FdeProblem& problem) {
    if (problem.N < 2) throw std::invalid_argument("fde_solve: N must be >= 2");
    if (!problem.rhs) throw std::invalid_argument("fde_solve: rhs is empty");
    const Mesh mesh = make_mesh(problem.of, problem.a, problem.b, problem.epsilon,
                                problem.step, "fde_solve");

    const auto rhs_ell = [&problem](double ell, const std::vector<double>& y,
                                    std::vector<double>& dy) {
        const double t = t_of_ell(problem.a, ell);
        const double big_l = std::exp(ell);
        const double scale = t * big_l;  // d t / d ell
        dy[0] = scale * fde_xprime(problem, t, y[0], y.data() + 1);
        for (int k = 2; k <= problem.N; ++k) {
            dy[static_cast<std::size_t>(k - 1)] =
                scale * (k - 1) * std::pow(big_l, k - 2.0) * y[0] / t;
        }
    };

    TrajectorySolution sol;
    sol.diagnostics.epsilon = mesh.epsilon;
    sol.diagnostics.steps = mesh.steps;
    sol.grid.reserve(static_cast<std::size_t>(mesh.steps) + 1);
    sol.x.reserve(static_cast<std::size_t>(mesh.steps) + 1);
    sol.V.reserve(static_cast<std::size_t>(mesh.steps) + 1);

    std::vector<double> y(static_cast<std::size_t>(problem.N), 0.0);
    y[0] = problem.x_a;
    const auto record = [&sol, &mesh](int node, const std::vector<double>& st) {
        sol.grid.push_back(mesh.t_at(node));
        sol.x.push_back(st[0]);
        sol.V.emplace_back(st.begin() + 1, st.end());
    };
    record(0, y);

    std::vector<double> k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()),
        tmp(y.size());
    for (int i = 0; i < mesh.steps; ++i) {
        rk4_step(rhs_ell, mesh.ell_at(i), mesh.h, y, k1, k2, k3, k4, tmp);
        check_finite(y, "fde_solve");
        record(i + 1, y);
    }
    return sol;
}

std::vector<double> fvp_hamiltonian_rhs(const FvpProblem& problem, double t,
                                        const std::vector<double>& state) {
    if (problem.N < 2) throw std::invalid_argument("fvp_hamiltonian_rhs: N must be >= 2");
    if (!problem.target) {
        throw std::invalid_argument("fvp_hamiltonian_rhs: target is empty");
    }
    if (static_cast<int>(state.size()) != 2 * problem.N) {
        throw std::invalid_argument(
            "fvp_hamiltonian_rhs: state must hold (x, V_2..V_N, lambda_1..lambda_N)");
    }
    const HamCoeffs hc = ham_coeffs(problem, t);
    std::vector<double> deriv(state.size());
    const double* lam = state.data() + problem.N;
    fvp_state_rhs(problem, t, hc, state.data(), lam[0], deriv.data());
    fvp_costate_rhs(problem, t, hc, lam, deriv.data() + problem.N);
    return deriv;
}

TrajectorySolution fvp_solve(const FvpProblem& problem) {
    if (problem.N < 2) throw std::invalid_argument("fvp_solve: N must be >= 2");
    if (!problem.target) throw std::invalid_argument("fvp_solve: target is empty");
    if (!std::isfinite(problem.x_a) || !std::isfinite(problem.x_b)) {
        throw std::invalid_argument("fvp_solve: boundary values must be finite");
    }
    if (!(problem.newton_tol > 0.0) || problem.max_newton_iters < 1) {
        throw std::invalid_argument("fvp_solve: invalid Newton controls");
    }
    const Mesh mesh = make_mesh(problem.of, problem.a, problem.b, problem.epsilon,
                                problem.step, "fvp_solve");

    constexpr double kJacobianStep = 1e-6;
    constexpr int kMaxHalvings = 20;

    std::vector<double> z(static_cast<std::size_t>(problem.N), 0.0);
    double best_norm = std::numeric_limits<double>::infinity();
    int iterations_used = 0;

    std::mt19937 retry_rng(1234567);
    for (int attempt = 0; attempt < 2; ++attempt) {
        if (attempt == 1) {
            std::uniform_real_distribution<double> dist(-1e-2, 1e-2);
            for (double& e : z) e = dist(retry_rng);
        }
        Shot shot = evaluate_shot(problem, mesh, z);
        double rn = norm2(shot.residual);
        best_norm = std::min(best_norm, rn);
        bool stalled = false;
        for (int iter = 0; iter < problem.max_newton_iters && rn > problem.newton_tol;
             ++iter) {
            ++iterations_used;
            // Forward-difference Jacobian, one trajectory pair per column.
            std::vector<std::vector<double>> jac(
                static_cast<std::size_t>(problem.N),
                std::vector<double>(static_cast<std::size_t>(problem.N)));
            for (int col = 0; col < problem.N; ++col) {
                std::vector<double> zp = z;
                zp[static_cast<std::size_t>(col)] += kJacobianStep;
                const Shot sp = evaluate_shot(problem, mesh, zp);
                for (int row = 0; row < problem.N; ++row) {
                    jac[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] =
                        (sp.residual[static_cast<std::size_t>(row)] -
                         shot.residual[static_cast<std::size_t>(row)]) /
                        kJacobianStep;
                }
            }
            std::vector<double> neg(shot.residual.size());
            for (std::size_t q = 0; q < neg.size(); ++q) neg[q] = -shot.residual[q];
            const std::vector<double> delta = solve_linear(jac, neg);

            double damp = 1.0;
            bool accepted = false;
            for (int halving = 0; halving <= kMaxHalvings; ++halving) {
                std::vector<double> trial = z;
                for (std::size_t q = 0; q < trial.size(); ++q) {
                    trial[q] += damp * delta[q];
                }
                Shot ts = evaluate_shot(problem, mesh, trial);
                const double tn = norm2(ts.residual);
                if (tn < rn) {
                    z = std::move(trial);
                    shot = std::move(ts);
                    rn = tn;
                    best_norm = std::min(best_norm, rn);
                    accepted = true;
                    break;
                }
                damp *= 0.5;
            }
            if (!accepted) {
                stalled = true;
                break;
            }
        }
        if (!stalled && rn <= problem.newton_tol) {
            TrajectorySolution sol;
            sol.diagnostics.epsilon = mesh.epsilon;
            sol.diagnostics.steps = mesh.steps;
            sol.diagnostics.residual_norm = rn;
            sol.diagnostics.newton_iterations = iterations_used;
            sol.diagnostics.objective =
                reconstruct_objective(problem, mesh, shot.lambda1_half);
            sol.grid.resize(static_cast<std::size_t>(mesh.steps) + 1);
            for (int i = 0; i <= mesh.steps; ++i) {
                sol.grid[static_cast<std::size_t>(i)] = mesh.t_at(i);
            }
            sol.x = std::move(shot.x);
            sol.V = std::move(shot.v);
            sol.lambda = std::move(shot.lambda);
            return sol;
        }
        z.assign(static_cast<std::size_t>(problem.N), 0.0);
    }
    throw ShootingFailed("fvp_solve: Newton did not reach the shooting tolerance",
                         best_norm);
}

double l2_error(const std::function<double(double)>& f,
                const std::function<double(double)>& g, double a, double b,
                const quadrature::QuadratureConfig& cfg) {
    if (!(a < b)) throw std::invalid_argument("l2_error: requires a < b");
    const auto sq = [&f, &g](double t) {
        const double d = f(t) - g(t);
        return d * d;
    };
    return std::sqrt(std::max(0.0, quadrature::integrate(sq, a, b, cfg).value));
}

std::function<double(double)> trajectory_interpolant(const TrajectorySolution& sol) {
    const std::size_t n = sol.grid.size();
    if (n < 2 || sol.x.size() != n) {
        throw std::invalid_argument(
            "trajectory_interpolant: need at least two consistent grid points");
    }
    auto t = std::make_shared<std::vector<double>>(sol.grid);
    auto x = std::make_shared<std::vector<double>>(sol.x);

    // Three-point slopes on the (non-uniform) grid; one-sided at the ends.
    auto slope = std::make_shared<std::vector<double>>(n);
    const auto& tv = *t;
    const auto& xv = *x;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = (xv[i + 1] - xv[i]) / (tv[i + 1] - tv[i]);
        if (i == 0) (*slope)[0] = d;
        if (i + 2 == n) (*slope)[n - 1] = d;
    }
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double hl = tv[i] - tv[i - 1];
        const double hr = tv[i + 1] - tv[i];
        const double dl = (xv[i] - xv[i - 1]) / hl;
        const double dr = (xv[i + 1] - xv[i]) / hr;
        (*slope)[i] = (hr * dl + hl * dr) / (hl + hr);
    }

    return [t, x, slope](double query) {
        const auto& tg = *t;
        const auto& xg = *x;
        const double q = std::clamp(query, tg.front(), tg.back());
        const auto it = std::upper_bound(tg.begin(), tg.end(), q);
        const std::size_t hi = std::min<std::size_t>(
            std::max<std::ptrdiff_t>(1, it - tg.begin()), tg.size() - 1);
        const std::size_t lo = hi - 1;
        const double h = tg[hi] - tg[lo];
        const double u = (q - tg[lo]) / h;
        const double u2 = u * u;
        const double u3 = u2 * u;
        return (2.0 * u3 - 3.0 * u2 + 1.0) * xg[lo] +
               (u3 - 2.0 * u2 + u) * h * (*slope)[lo] +
               (-2.0 * u3 + 3.0 * u2) * xg[hi] + (u3 - u2) * h * (*slope)[hi];
    };
}

}  // namespace hadvo::solvers
