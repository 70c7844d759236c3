#include <cmath>
#include <complex>
#include <vector>

#include "channel.hpp"
#include "doctest.h"
#include "geometry.hpp"
#include "rng.hpp"
#include "test_util.hpp"

using namespace dmimo;
using dmimo_test::thrown_code;

TEST_CASE("path loss follows the inverse power law") {
    CHECK(path_loss(500.0, 3.6) == doctest::Approx(1.9217990943702899732e-10).epsilon(1e-13));
    CHECK(path_loss(2.0, 2.0) == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(path_loss(10.0, 6.0) == doctest::Approx(1e-6).epsilon(1e-13));
    CHECK(path_loss(1.0, 4.4) == doctest::Approx(1.0).epsilon(1e-15));

    CHECK(thrown_code([] { path_loss(0.0, 3.6); }) == ErrorCode::invalid_argument);
    CHECK(thrown_code([] { path_loss(-2.0, 3.6); }) == ErrorCode::invalid_argument);
    CHECK(thrown_code([] { path_loss(10.0, 1.9); }) == ErrorCode::invalid_argument);
    CHECK(thrown_code([] { path_loss(10.0, 6.1); }) == ErrorCode::invalid_argument);
}

TEST_CASE("path-loss matrix matches an elementwise rebuild") {
    const RingLayout ring = build_ring({1000.0, 500.0, 7});
    const std::vector<Vec2> users{{300.0, 0.0}, {-120.0, 45.0}, {0.0, 710.0}};
    const PathLossMatrix beta = path_loss_matrix(ring, users, 3.6, 1.0);
    REQUIRE(beta.rows() == 7);
    REQUIRE(beta.cols() == 3);
    for (Eigen::Index m = 0; m < beta.rows(); ++m)
        for (Eigen::Index k = 0; k < beta.cols(); ++k) {
            const double d = antenna_user_distance(ring.antennas[static_cast<std::size_t>(m)],
                                                   users[static_cast<std::size_t>(k)]);
            CHECK(beta(m, k) == doctest::Approx(path_loss(d, 3.6)).epsilon(1e-14));
        }
}

TEST_CASE("users inside the guard distance are rejected by name") {
    const RingLayout ring = build_ring({1000.0, 500.0, 4});
    const std::vector<Vec2> users{{499.5, 0.0}};
    try {
        path_loss_matrix(ring, users, 3.6, 1.0);
        FAIL("expected a singular error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::singular);
        const std::string msg = e.what();
        CHECK(msg.find("user 0") != std::string::npos);
        CHECK(msg.find("antenna 0") != std::string::npos);
    }
}

TEST_CASE("constant fading reproduces the large-scale gains exactly") {
    const RingLayout ring = build_ring({1000.0, 500.0, 5});
    const std::vector<Vec2> users{{250.0, 100.0}, {-400.0, 0.0}};
    const PathLossMatrix beta = path_loss_matrix(ring, users, 3.0, 1.0);
    std::mt19937_64 rng = make_substream(1, StreamPurpose::fading_trial, 0);
    const ChannelMatrix g = draw_channel(beta, FadingKind::constant_one, rng);
    for (Eigen::Index m = 0; m < g.rows(); ++m)
        for (Eigen::Index k = 0; k < g.cols(); ++k) {
            CHECK(g(m, k).real() == doctest::Approx(std::sqrt(beta(m, k))).epsilon(1e-14));
            CHECK(g(m, k).imag() == 0.0);
        }
}

TEST_CASE("rayleigh fading has unit power split evenly across parts") {
    std::mt19937_64 rng = make_substream(2016, StreamPurpose::fading_trial, 0);
    Eigen::MatrixXcd h(2000, 2);
    fill_fading(h, FadingKind::rayleigh, rng);

    double power = 0.0, var_re = 0.0, var_im = 0.0;
    std::complex<double> mean{0.0, 0.0};
    const double n = static_cast<double>(h.size());
    for (Eigen::Index k = 0; k < h.cols(); ++k)
        for (Eigen::Index m = 0; m < h.rows(); ++m) {
            power += std::norm(h(m, k));
            mean += h(m, k);
            var_re += h(m, k).real() * h(m, k).real();
            var_im += h(m, k).imag() * h(m, k).imag();
        }
    CHECK(power / n == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::abs(mean) / n < 0.05);
    CHECK(var_re / n == doctest::Approx(0.5).epsilon(0.08));
    CHECK(var_im / n == doctest::Approx(0.5).epsilon(0.08));
}

TEST_CASE("fading fill order is user-outer, antenna-inner") {
    std::mt19937_64 fill_rng = make_substream(9, StreamPurpose::fading_trial, 2);
    Eigen::MatrixXcd h(2, 2);
    fill_fading(h, FadingKind::rayleigh, fill_rng);

    std::mt19937_64 ref_rng = make_substream(9, StreamPurpose::fading_trial, 2);
    const std::complex<double> a = draw_cn(ref_rng, 1.0);
    const std::complex<double> b = draw_cn(ref_rng, 1.0);
    const std::complex<double> c = draw_cn(ref_rng, 1.0);
    const std::complex<double> d = draw_cn(ref_rng, 1.0);
    CHECK(h(0, 0) == a);
    CHECK(h(1, 0) == b);
    CHECK(h(0, 1) == c);
    CHECK(h(1, 1) == d);
}

TEST_CASE("channel draws are deterministic per substream") {
    const RingLayout ring = build_ring({1000.0, 500.0, 6});
    const std::vector<Vec2> users{{100.0, 200.0}, {-300.0, -50.0}};
    const PathLossMatrix beta = path_loss_matrix(ring, users, 3.6, 1.0);

    std::mt19937_64 r1 = make_substream(42, StreamPurpose::fading_trial, 17);
    std::mt19937_64 r2 = make_substream(42, StreamPurpose::fading_trial, 17);
    const ChannelMatrix g1 = draw_channel(beta, FadingKind::rayleigh, r1);
    const ChannelMatrix g2 = draw_channel(beta, FadingKind::rayleigh, r2);
    CHECK(g1 == g2);

    std::mt19937_64 r3 = make_substream(42, StreamPurpose::fading_trial, 18);
    const ChannelMatrix g3 = draw_channel(beta, FadingKind::rayleigh, r3);
    CHECK(g1 != g3);
}

TEST_CASE("draw_cn scales variance as requested") {
    std::mt19937_64 rng = make_substream(5, StreamPurpose::probe_trial, 0);
    double power = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) power += std::norm(draw_cn(rng, 4.0));
    CHECK(power / n == doctest::Approx(4.0).epsilon(0.05));
}
