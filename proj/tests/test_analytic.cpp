#include <cmath>
#include <numbers>

#include "analytic.hpp"
#include "channel.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace dmimo;
using dmimo_test::thrown_code;

namespace {

// Independent oracle: P_nu(z) = 2F1(-nu, nu+1; 1; (1-z)/2), summed directly.
// Converges for |1-z|/2 < 1, i.e. z < 3, which covers every anchor below.
double legendre_series(double nu, double z) {
    const double x = (1.0 - z) / 2.0;
    double term = 1.0, sum = 1.0;
    for (int k = 0; k < 500; ++k) {
        const double a = -nu + k, b = nu + 1.0 + k, c = 1.0 + k;
        term *= a * b / (c * (k + 1.0)) * x;
        sum += term;
        if (std::fabs(term) < 1e-17 * std::fabs(sum)) break;
    }
    return sum;
}

} // namespace

TEST_CASE("legendre evaluation agrees with the hypergeometric series") {
    CHECK(legendre_halfint(0.8, 2.125) ==
          doctest::Approx(1.7596003088349842228).epsilon(1e-10));
    for (double nu : {0.25, 0.5, 0.8, 1.0, 1.5, 2.0})
        for (double z : {1.0, 1.05, 1.5, 2.125, 2.9})
            CHECK(legendre_halfint(nu, z) ==
                  doctest::Approx(legendre_series(nu, z)).epsilon(1e-12));
}

TEST_CASE("legendre degenerate degrees are polynomials") {
    for (double z : {1.0, 1.3, 2.0, 5.0, 40.0}) {
        CHECK(legendre_halfint(0.0, z) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(legendre_halfint(1.0, z) == doctest::Approx(z).epsilon(1e-12));
        CHECK(legendre_halfint(2.0, z) ==
              doctest::Approx((3.0 * z * z - 1.0) / 2.0).epsilon(1e-12));
    }
    CHECK(thrown_code([] { legendre_halfint(0.8, 0.999); }) == ErrorCode::domain);
}

TEST_CASE("interference kernel hits the frozen anchors") {
    CHECK(circle_i0(500.0, 300.0, 2.0) == doctest::Approx(6.25e-6).epsilon(1e-10));
    CHECK(circle_i0(500.0, 300.0, 4.0) == doctest::Approx(8.30078125e-11).epsilon(1e-10));
    CHECK(circle_i0(500.0, 300.0, 6.0) ==
          doctest::Approx(1.5316009521484375e-15).epsilon(1e-10));
    CHECK(circle_i0(500.0, 300.0, 3.6) ==
          doctest::Approx(7.5508885596694252207e-10).epsilon(1e-10));
}

TEST_CASE("interference kernel properties") {
    // Swapping the two radii leaves the kernel unchanged.
    CHECK(circle_i0(500.0, 300.0, 3.6) ==
          doctest::Approx(circle_i0(300.0, 500.0, 3.6)).epsilon(1e-12));
    // A user at the center sees the plain path loss of the ring radius.
    CHECK(circle_i0(500.0, 0.0, 3.6) ==
          doctest::Approx(1.9217990943702899732e-10).epsilon(1e-12));
    CHECK(thrown_code([] { circle_i0(500.0, 500.0, 3.6); }) == ErrorCode::singular);
    CHECK(thrown_code([] { circle_i0(0.0, 300.0, 3.6); }) == ErrorCode::invalid_argument);
    CHECK(thrown_code([] { circle_i0(500.0, -1.0, 3.6); }) == ErrorCode::invalid_argument);
}

TEST_CASE("elementary kernel forms match the quadrature route") {
    CHECK(thrown_code([] { closed_form_i0(500.0, 300.0, 3.0); }) ==
          ErrorCode::invalid_argument);
    for (double v : {2.0, 4.0, 6.0})
        for (double ru : {0.0, 100.0, 300.0, 450.0, 700.0}) {
            const double closed = closed_form_i0(500.0, ru, v);
            const double quad = circle_i0(500.0, ru, v);
            CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
        }
}

TEST_CASE("finite-ring kernel converges to the circle limit") {
    CHECK(riemann_i0(500.0, 300.0, 2.0, 2) == doctest::Approx(1.328125e-5).epsilon(1e-14));
    CHECK(riemann_i0(500.0, 300.0, 3.6, 64) ==
          doctest::Approx(circle_i0(500.0, 300.0, 3.6)).epsilon(1e-9));

    const double err =
        std::fabs(riemann_i0(500.0, 490.0, 3.6, 128) - circle_i0(500.0, 490.0, 3.6));
    CHECK(err <= riemann_error_bound(500.0, 490.0, 3.6, 128));
    CHECK(thrown_code([] { riemann_i0(500.0, 300.0, 3.6, 0); }) ==
          ErrorCode::invalid_argument);
}

TEST_CASE("bound gap coefficient anchors") {
    CHECK(bound_gap_coefficient(2.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bound_gap_coefficient(4.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bound_gap_coefficient(3.0) ==
          doctest::Approx(0.90031631615710606956).epsilon(1e-12));
    CHECK(bound_gap_coefficient(3.6) ==
          doctest::Approx(0.94654370400195256823).epsilon(1e-12));
    CHECK(bound_gap_coefficient(5.0) ==
          doctest::Approx(1.2004217548761414261).epsilon(1e-12));
    CHECK(bound_gap_coefficient(6.0) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(thrown_code([] { bound_gap_coefficient(1.5); }) == ErrorCode::invalid_argument);
}

TEST_CASE("tgamma behaves as the coefficient derivation assumes") {
    const double root_pi = std::sqrt(std::numbers::pi);
    CHECK(std::tgamma(0.5) == doctest::Approx(root_pi).epsilon(1e-12));
    CHECK(std::tgamma(1.5) == doctest::Approx(root_pi / 2.0).epsilon(1e-12));
    CHECK(std::tgamma(2.5) == doctest::Approx(1.329340388179137).epsilon(1e-12));
    CHECK(std::tgamma(5.0) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(std::tgamma(6.0) == doctest::Approx(120.0).epsilon(1e-12));
}

TEST_CASE("bound ordering flips at v = 4") {
    CHECK(bound_ordering(2.0) == BoundOrdering::equal);
    CHECK(bound_ordering(4.0) == BoundOrdering::equal);
    CHECK(bound_ordering(3.0) == BoundOrdering::b1_upper);
    CHECK(bound_ordering(3.6) == BoundOrdering::b1_upper);
    CHECK(bound_ordering(4.5) == BoundOrdering::b1_lower);
    CHECK(bound_ordering(6.0) == BoundOrdering::b1_lower);
}

TEST_CASE("rate bounds straddle the asymptotic rate") {
    const std::size_t M = 300;
    SUBCASE("below the crossover b1 is the upper bound") {
        const double p_eff = 10.0 / path_loss(500.0, 3.0);
        const RateBounds rb = rate_bounds(500.0, 300.0, 3.0, p_eff, M);
        const AsymptoticRate asy = circle_rate(500.0, 300.0, 3.0, p_eff, M);
        CHECK(rb.ordering == BoundOrdering::b1_upper);
        CHECK(rb.b1_bits >= asy.rate_bits);
        CHECK(asy.rate_bits >= rb.b2_bits);
    }
    SUBCASE("above the crossover b1 is the lower bound") {
        const double p_eff = 10.0 / path_loss(500.0, 5.0);
        const RateBounds rb = rate_bounds(500.0, 300.0, 5.0, p_eff, M);
        const AsymptoticRate asy = circle_rate(500.0, 300.0, 5.0, p_eff, M);
        CHECK(rb.ordering == BoundOrdering::b1_lower);
        CHECK(rb.b2_bits >= asy.rate_bits);
        CHECK(asy.rate_bits >= rb.b1_bits);
    }
}

TEST_CASE("asymptotic per-user rate anchor") {
    const double p_eff = 10.0 * std::pow(500.0, 3.6);
    const AsymptoticRate asy = circle_rate(500.0, 300.0, 3.6, p_eff, 300);
    CHECK(asy.rate_bits == doctest::Approx(13.5250580762284).epsilon(1e-6));
    CHECK(asy.i0 == doctest::Approx(7.5508885596694252207e-10).epsilon(1e-10));
    CHECK(asy.z == doctest::Approx((500.0 * 500.0 + 300.0 * 300.0) /
                                   (200.0 * 800.0)).epsilon(1e-14));

    CHECK(general_asymptotic_rate(500.0, 300.0, 3.6, p_eff, 300) ==
          doctest::Approx(asy.rate_bits).epsilon(1e-9));
}
