#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "hadvo/bounds.hpp"
#include "hadvo/expansion.hpp"
#include "hadvo/functions.hpp"
#include "hadvo/operators.hpp"

using namespace hadvo;
using namespace hadvo::bounds;
using namespace hadvo::expansion;

namespace {

OrderFunction standard_order() { return OrderFunction::linear(0.0, 0.1, 1.0, 5.0); }
FunctionSpec standard_function() { return FunctionSpec::log_power(2.0, 1.0, 5.0); }

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("max_abs_seq finds known extrema of log-square") {
    const FunctionSpec fs = standard_function();
    // x'(t) = 2 ln(t)/t has its maximum 2/e at t = e.
    CHECK(max_abs_seq(fs, 1.0, 5.0, SeqMax::x_prime, 1) ==
          doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-9));
    // x_{1,1}(t) = 2/t peaks at the left endpoint.
    CHECK(max_abs_seq(fs, 1.0, 5.0, SeqMax::x_n1, 1) ==
          doctest::Approx(2.0).epsilon(1e-9));
    // Degenerate interval: just the absolute value at the point.
    CHECK(max_abs_seq(fs, 2.0, 2.0, SeqMax::x_prime, 1) ==
          doctest::Approx(2.0 * std::log(2.0) / 2.0).epsilon(1e-14));

    const FunctionSpec flat = FunctionSpec::constant(3.0, 1.0, 5.0);
    CHECK(max_abs_seq(flat, 1.0, 5.0, SeqMax::x_prime, 1) == 0.0);

    CHECK_THROWS_AS((void)max_abs_seq(fs, 3.0, 2.0, SeqMax::x_prime, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)max_abs_seq(fs, 1.0, 5.0, SeqMax::x_prime, 1, 1),
                    std::invalid_argument);
}

TEST_CASE("bound_inputs_for captures the memory interval") {
    const OrderFunction of = standard_order();
    const FunctionSpec fs = standard_function();
    const BoundInputs left = bound_inputs_for(fs, of, 3.0, 1, 4, expansion::Side::left);
    CHECK(left.n == 1);
    CHECK(left.N == 4);
    CHECK(left.t == 3.0);
    CHECK(left.a == 1.0);
    CHECK(left.b == 5.0);
    CHECK(left.alpha_t == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(left.alpha_prime_t == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(left.M_n1 == doctest::Approx(2.0).epsilon(1e-9));           // 2/tau on [1,3]
    CHECK(left.M_x1 == doctest::Approx(2.0 / std::exp(1.0)).epsilon(1e-9));

    const BoundInputs right = bound_inputs_for(fs, of, 3.0, 1, 4, expansion::Side::right);
    CHECK(right.M_n1 == doctest::Approx(2.0 / 3.0).epsilon(1e-9));    // 2/tau on [3,5]
    CHECK(right.M_x1 == doctest::Approx(2.0 * std::log(3.0) / 3.0).epsilon(1e-9));
}

TEST_CASE("bounds dominate the actual truncation errors at a sample point") {
    const OrderFunction of = standard_order();
    const FunctionSpec fs = standard_function();
    const double t = 3.0;
    const int n = 1, N = 3;
    const BoundInputs bl = bound_inputs_for(fs, of, t, n, N, expansion::Side::left);
    const BoundInputs br = bound_inputs_for(fs, of, t, n, N, expansion::Side::right);

    using expansion::ExpansionConfig;
    using expansion::OperatorKind;
    using expansion::Side;

    const double err_li =
        std::abs(left_integral_oracle(fs, of, t) -
                 approx_integral_left(fs, of, t, {n, N, Side::left, OperatorKind::integral}));
    CHECK(err_li <= bound_integral_EN(bl));

    const double err_lm = std::abs(
        left_marchaud_oracle(fs, of, t) -
        approx_marchaud_left(fs, of, t, {n, N, Side::left, OperatorKind::marchaud}));
    CHECK(err_lm <= bound_deriv_E1(bl));

    const double err_ld =
        std::abs(left_hadamard_deriv_oracle(fs, of, t) -
                 approx_hadamard_deriv_left(
                     fs, of, t, {n, N, Side::left, OperatorKind::hadamard_deriv}));
    CHECK(err_ld <= bound_deriv_E1(bl) + bound_deriv_E2(bl));

    const double err_ri = std::abs(
        right_integral_oracle(fs, of, t) -
        approx_integral_right(fs, of, t, {n, N, Side::right, OperatorKind::integral}));
    CHECK(err_ri <= bound_right_EN(br));

    const double err_rm = std::abs(
        right_marchaud_oracle(fs, of, t) -
        approx_marchaud_right(fs, of, t, {n, N, Side::right, OperatorKind::marchaud}));
    CHECK(err_rm <= bound_right_E1(br));

    const double err_rd =
        std::abs(right_hadamard_deriv_oracle(fs, of, t) -
                 approx_hadamard_deriv_right(
                     fs, of, t, {n, N, Side::right, OperatorKind::hadamard_deriv}));
    CHECK(err_rd <= bound_right_E1(br) + bound_right_E2(br));
}

TEST_CASE("bounds shrink as the truncation index grows") {
    const OrderFunction of = standard_order();
    const FunctionSpec fs = standard_function();
    BoundInputs lo_n = bound_inputs_for(fs, of, 4.0, 1, 2, expansion::Side::left);
    BoundInputs hi_n = lo_n;
    hi_n.N = 8;
    CHECK(bound_integral_EN(hi_n) < bound_integral_EN(lo_n));
    CHECK(bound_deriv_E1(hi_n) < bound_deriv_E1(lo_n));
    CHECK(bound_deriv_E2(hi_n) < bound_deriv_E2(lo_n));

    BoundInputs rlo = bound_inputs_for(fs, of, 2.0, 1, 2, expansion::Side::right);
    BoundInputs rhi = rlo;
    rhi.N = 8;
    CHECK(bound_right_EN(rhi) < bound_right_EN(rlo));
    CHECK(bound_right_E1(rhi) < bound_right_E1(rlo));
    CHECK(bound_right_E2(rhi) < bound_right_E2(rlo));
}

TEST_CASE("order-variation bound vanishes for constant order") {
    BoundInputs bi;
    bi.n = 1;
    bi.N = 3;
    bi.t = 3.0;
    bi.a = 1.0;
    bi.b = 5.0;
    bi.alpha_t = 0.5;
    bi.alpha_prime_t = 0.0;
    bi.M_n1 = 1.0;
    bi.M_x1 = 1.0;
    CHECK(bound_deriv_E2(bi) == 0.0);
    CHECK(bound_right_E2(bi) == 0.0);
    CHECK(bound_deriv_E1(bi) > 0.0);
}

TEST_CASE("bounds collapse to zero at the operator terminal") {
    BoundInputs bi;
    bi.n = 1;
    bi.N = 3;
    bi.a = 1.0;
    bi.b = 5.0;
    bi.alpha_t = 0.4;
    bi.alpha_prime_t = 0.1;
    bi.M_n1 = 2.0;
    bi.M_x1 = 1.0;
    bi.t = bi.a;
    CHECK(bound_integral_EN(bi) == 0.0);
    CHECK(bound_deriv_E1(bi) == 0.0);
    CHECK(bound_deriv_E2(bi) == 0.0);
    bi.t = bi.b;
    CHECK(bound_right_EN(bi) == 0.0);
    CHECK(bound_right_E1(bi) == 0.0);
    CHECK(bound_right_E2(bi) == 0.0);
}

TEST_CASE("bound expressions validate their inputs") {
    BoundInputs bi;
    bi.n = 2;
    bi.N = 2;  // needs N >= n + 1
    bi.t = 3.0;
    bi.a = 1.0;
    bi.b = 5.0;
    bi.alpha_t = 0.5;
    bi.M_n1 = 1.0;
    bi.M_x1 = 1.0;
    CHECK_THROWS_AS((void)bound_integral_EN(bi), std::invalid_argument);
    bi.N = 4;
    bi.alpha_t = 1.5;
    CHECK_THROWS_AS((void)bound_deriv_E1(bi), std::invalid_argument);
    bi.alpha_t = 0.5;
    bi.M_n1 = -1.0;
    CHECK_THROWS_AS((void)bound_right_EN(bi), std::invalid_argument);
}

}  // TEST_SUITE
