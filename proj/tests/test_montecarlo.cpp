#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "channel.hpp"
#include "doctest.h"
#include "geometry.hpp"
#include "montecarlo.hpp"
#include "rng.hpp"
#include "test_util.hpp"

using namespace dmimo;
using dmimo_test::thrown_code;

TEST_CASE("effective power undoes the normalization path loss") {
    const double p_eff = effective_power(10.0, 500.0, 3.6);
    CHECK(p_eff * path_loss(500.0, 3.6) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(effective_power(1.0, 2.0, 2.0) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(thrown_code([] { effective_power(0.0, 500.0, 3.6); }) ==
          ErrorCode::invalid_argument);
    CHECK(thrown_code([] { effective_power(10.0, 0.0, 3.6); }) ==
          ErrorCode::invalid_argument);
}

TEST_CASE("zero-forcing rate of a single user is the matched-filter rate") {
    ChannelMatrix g = ChannelMatrix::Ones(4, 1);
    const std::vector<double> rates = zf_instantaneous_rates(g, 1.0);
    REQUIRE(rates.size() == 1);
    // ||g||^2 = 4, so SNR = p * 4 and the rate is log2(5).
    CHECK(rates[0] == doctest::Approx(std::log2(5.0)).epsilon(1e-12));
}

TEST_CASE("orthogonal columns decouple exactly") {
    ChannelMatrix g = ChannelMatrix::Zero(4, 2);
    g(0, 0) = {1.0, 0.0};
    g(1, 0) = {1.0, 0.0};
    g(2, 1) = {1.0, 0.0};
    g(3, 1) = {0.0, 1.0};
    const double p = 3.0;
    const std::vector<double> rates = zf_instantaneous_rates(g, p);
    REQUIRE(rates.size() == 2);
    CHECK(rates[0] == doctest::Approx(std::log2(1.0 + 2.0 * p)).epsilon(1e-12));
    CHECK(rates[1] == doctest::Approx(std::log2(1.0 + 2.0 * p)).epsilon(1e-12));
}

TEST_CASE("zero-forcing SNR equals the residual after projecting out interferers") {
    // Independent oracle: SNR_k = p * || (I - Q Q^H) g_k ||^2 where Q spans the
    // other columns.
    for (auto [m, k] : {std::pair<int, int>{6, 2}, {8, 3}}) {
        std::mt19937_64 rng = make_substream(77, StreamPurpose::fading_trial,
                                             static_cast<std::uint64_t>(m));
        ChannelMatrix g(m, k);
        fill_fading(g, FadingKind::rayleigh, rng);
        const double p = 2.5;
        const std::vector<double> rates = zf_instantaneous_rates(g, p);
        REQUIRE(rates.size() == static_cast<std::size_t>(k));
        for (int target = 0; target < k; ++target) {
            ChannelMatrix others(m, k - 1);
            int col = 0;
            for (int j = 0; j < k; ++j)
                if (j != target) others.col(col++) = g.col(j);
            Eigen::HouseholderQR<ChannelMatrix> qr(others);
            const ChannelMatrix q =
                qr.householderQ() * ChannelMatrix::Identity(m, k - 1);
            const Eigen::VectorXcd resid =
                g.col(target) - q * (q.adjoint() * g.col(target));
            const double snr = p * resid.squaredNorm();
            CHECK(rates[static_cast<std::size_t>(target)] ==
                  doctest::Approx(std::log2(1.0 + snr)).epsilon(1e-8));
        }
    }
}

TEST_CASE("linearly dependent columns are singular") {
    ChannelMatrix g(4, 2);
    std::mt19937_64 rng = make_substream(3, StreamPurpose::fading_trial, 0);
    fill_fading(g, FadingKind::rayleigh, rng);
    g.col(1) = g.col(0);
    CHECK(thrown_code([&] { zf_instantaneous_rates(g, 1.0); }) == ErrorCode::singular);
    CHECK(thrown_code([&] { zf_instantaneous_rates(g, 0.0); }) ==
          ErrorCode::invalid_argument);
    ChannelMatrix wide(2, 4);
    CHECK(thrown_code([&] { zf_instantaneous_rates(wide, 1.0); }) ==
          ErrorCode::invalid_argument);
}

TEST_CASE("a one-trial ergodic estimate replays a manual draw") {
    const RingLayout ring = build_ring({1000.0, 500.0, 8});
    const std::vector<Vec2> users{{300.0, 0.0}, {-100.0, 250.0}};
    const double p_eff = effective_power(10.0, 500.0, 3.6);

    McConfig mc;
    mc.trials = 1;
    mc.master_seed = 99;
    const ErgodicRate est = ergodic_rate(ring, users, 3.6, p_eff, mc);
    CHECK(est.trials_used == 1);
    CHECK(est.resampled == 0);
    CHECK(est.half_width_95 == 0.0);

    const PathLossMatrix beta = path_loss_matrix(ring, users, 3.6, mc.min_distance_m);
    std::mt19937_64 rng = make_substream(99, StreamPurpose::fading_trial, 0);
    const ChannelMatrix g = draw_channel(beta, FadingKind::rayleigh, rng);
    const std::vector<double> rates = zf_instantaneous_rates(g, p_eff);
    CHECK(est.mean_bits == rates[0]);
}

TEST_CASE("ergodic rate is independent of the thread count") {
    const RingLayout ring = build_ring({1000.0, 500.0, 16});
    const std::vector<Vec2> users{{300.0, 0.0}, {50.0, -420.0}, {-600.0, 10.0}};
    const double p_eff = effective_power(10.0, 500.0, 3.6);

    McConfig one;
    one.trials = 40;
    one.master_seed = 2016;
    one.threads = 1;
    McConfig four = one;
    four.threads = 4;

    const ErgodicRate a = ergodic_rate(ring, users, 3.6, p_eff, one);
    const ErgodicRate b = ergodic_rate(ring, users, 3.6, p_eff, four);
    CHECK(a.mean_bits == b.mean_bits);
    CHECK(a.half_width_95 == b.half_width_95);
    CHECK(a.trials_used == b.trials_used);
}

TEST_CASE("with constant fading the interferer layout does not matter") {
    // Under h = 1 every column is the deterministic sqrt(beta) profile; exchanging
    // the two interferers must leave the target's rate untouched.
    const RingLayout ring = build_ring({1000.0, 500.0, 12});
    const double p_eff = effective_power(10.0, 500.0, 3.6);
    McConfig mc;
    mc.trials = 1;
    mc.fading = FadingKind::constant_one;

    const std::vector<Vec2> a{{300.0, 0.0}, {100.0, 620.0}, {-250.0, -40.0}};
    const std::vector<Vec2> b{{300.0, 0.0}, {-250.0, -40.0}, {100.0, 620.0}};
    const ErgodicRate ra = ergodic_rate(ring, a, 3.6, p_eff, mc);
    const ErgodicRate rb = ergodic_rate(ring, b, 3.6, p_eff, mc);
    CHECK(ra.mean_bits == doctest::Approx(rb.mean_bits).epsilon(1e-10));
}

TEST_CASE("ergodic rate grows with transmit power") {
    const RingLayout ring = build_ring({1000.0, 500.0, 16});
    const std::vector<Vec2> users{{300.0, 0.0}, {50.0, -420.0}};
    McConfig mc;
    mc.trials = 50;
    const double lo =
        ergodic_rate(ring, users, 3.6, effective_power(1.0, 500.0, 3.6), mc).mean_bits;
    const double hi =
        ergodic_rate(ring, users, 3.6, effective_power(10.0, 500.0, 3.6), mc).mean_bits;
    CHECK(hi > lo);
}

TEST_CASE("ergodic rate rejects malformed inputs") {
    const RingLayout ring = build_ring({1000.0, 500.0, 2});
    const std::vector<Vec2> users{{300.0, 0.0}, {50.0, -420.0}, {0.0, 100.0}};
    McConfig mc;
    CHECK(thrown_code([&] { ergodic_rate(ring, users, 3.6, 1.0, mc); }) ==
          ErrorCode::invalid_argument);  // M < K

    const RingLayout big = build_ring({1000.0, 500.0, 8});
    McConfig zero;
    zero.trials = 0;
    CHECK(thrown_code([&] { ergodic_rate(big, users, 3.6, 1.0, zero); }) ==
          ErrorCode::invalid_argument);
    CHECK(thrown_code([&] { ergodic_rate(big, users, 3.6, 0.0, mc); }) ==
          ErrorCode::invalid_argument);
    CHECK(thrown_code([&] { ergodic_rate(big, {}, 3.6, 1.0, mc); }) ==
          ErrorCode::invalid_argument);
}

TEST_CASE("concentration probe tracks the 1/M envelopes") {
    const ProbeEntries p64 = lln_probe(64, 400, 2016);
    CHECK(p64.envelope_norm == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
    CHECK(p64.envelope_cross == doctest::Approx(1.0 / 64.0).epsilon(1e-15));
    CHECK(p64.gaussian_norm_msq > p64.envelope_norm / 3.0);
    CHECK(p64.gaussian_norm_msq < p64.envelope_norm * 3.0);
    CHECK(p64.gaussian_cross_msq > p64.envelope_cross / 3.0);
    CHECK(p64.gaussian_cross_msq < p64.envelope_cross * 3.0);
    CHECK(p64.unit_modulus_norm_msq <= 1e-20);
    CHECK(p64.zero_cross_msq == 0.0);

    const ProbeEntries p128 = lln_probe(128, 400, 2016);
    const double ratio = p128.gaussian_norm_msq / p64.gaussian_norm_msq;
    CHECK(ratio > 0.25);
    CHECK(ratio < 0.75);

    CHECK(thrown_code([] { lln_probe(0, 10, 1); }) == ErrorCode::invalid_argument);
    CHECK(thrown_code([] { lln_probe(8, 0, 1); }) == ErrorCode::invalid_argument);
}
