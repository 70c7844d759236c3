#include "montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

#include <Eigen/Eigenvalues>

#include "error.hpp"
#include "mathutil.hpp"
#include "rng.hpp"

namespace dmimo {

double effective_power(double power_linear, double norm_radius_m, double exponent_v) {
    if (!(power_linear > 0.0))
        throw Error(ErrorCode::invalid_argument, "power must be positive");
    return power_linear / path_loss(norm_radius_m, exponent_v);
}

std::vector<double> zf_instantaneous_rates(const ChannelMatrix& g, double p_eff) {
    if (!(p_eff > 0.0))
        throw Error(ErrorCode::invalid_argument, "effective power must be positive");
    const Eigen::Index k = g.cols();
    if (k == 0 || g.rows() < k)
        throw Error(ErrorCode::invalid_argument, "channel matrix must be tall: rows >= cols >= 1");

    const Eigen::MatrixXcd gram = g.adjoint() * g;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(gram);
    if (es.info() != Eigen::Success)
        throw Error(ErrorCode::numeric, "Gram eigendecomposition failed");
    const Eigen::VectorXd& lam = es.eigenvalues();  // ascending
    const double lam_min = lam(0);
    const double lam_max = lam(k - 1);
    if (!(lam_min > 0.0) || lam_max / lam_min > 1e12)
        throw Error(ErrorCode::singular, "Gram matrix is numerically singular");

    const Eigen::MatrixXcd& vec = es.eigenvectors();
    std::vector<double> rates(static_cast<std::size_t>(k));
    for (Eigen::Index i = 0; i < k; ++i) {
        // [(G^H G)^{-1}]_ii through the eigenpairs; SNR_i = p_eff / that entry.
        double inv_ii = 0.0;
        for (Eigen::Index j = 0; j < k; ++j) inv_ii += std::norm(vec(i, j)) / lam(j);
        rates[static_cast<std::size_t>(i)] = log2_1p(p_eff / inv_ii);
    }
    return rates;
}

void run_trials(std::size_t trials, unsigned threads,
                const std::function<void(std::size_t)>& fn) {
    if (trials == 0)
        throw Error(ErrorCode::invalid_argument, "trials must be positive");
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            const std::size_t t = next.fetch_add(1);
            if (t >= trials || failed.load()) return;
            try {
                fn(t);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) first_error = std::current_exception();
                return;
            }
        }
    };

    std::size_t n_threads = threads == 0 ? 1 : threads;
    n_threads = std::min(n_threads, trials);
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }
    if (failed.load()) std::rethrow_exception(first_error);
}

ErgodicRate summarize_trials(const std::vector<double>& values) {
    if (values.empty())
        throw Error(ErrorCode::invalid_argument, "no trial values to summarize");
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / static_cast<double>(values.size());
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);

    ErgodicRate out;
    out.mean_bits = mean;
    out.trials_used = values.size();
    if (values.size() > 1) {
        const double sd = std::sqrt(ss / static_cast<double>(values.size() - 1));
        out.half_width_95 = kz95 * sd / std::sqrt(static_cast<double>(values.size()));
    }
    return out;
}

ErgodicRate ergodic_rate(const RingLayout& ring, const std::vector<Vec2>& users,
                         double exponent_v, double p_eff, const McConfig& mc) {
    if (users.empty())
        throw Error(ErrorCode::invalid_argument, "at least one user is required");
    if (ring.antennas.size() < users.size())
        throw Error(ErrorCode::invalid_argument,
                    "zero-forcing needs at least as many antennas as users");
    if (!(p_eff > 0.0))
        throw Error(ErrorCode::invalid_argument, "effective power must be positive");

    const PathLossMatrix beta = path_loss_matrix(ring, users, exponent_v, mc.min_distance_m);

    std::vector<double> rates(mc.trials, 0.0);
    std::atomic<std::size_t> resampled{0};
    run_trials(mc.trials, mc.threads, [&](std::size_t t) {
        std::mt19937_64 rng = make_substream(mc.master_seed, StreamPurpose::fading_trial, t);
        int consecutive = 0;
        for (;;) {
            try {
                const ChannelMatrix g = draw_channel(beta, mc.fading, rng);
                rates[t] = zf_instantaneous_rates(g, p_eff)[0];
                return;
            } catch (const Error& e) {
                if (e.code() != ErrorCode::singular) throw;
                if (mc.fading == FadingKind::constant_one) throw;  // redraw cannot help
                resampled.fetch_add(1);
                if (++consecutive >= 10)
                    throw Error(ErrorCode::numeric,
                                "channel stayed singular through 10 fading redraws");
            }
        }
    });

    ErgodicRate out = summarize_trials(rates);
    out.resampled = resampled.load();
    return out;
}

ProbeEntries lln_probe(std::size_t dimension_m, std::size_t trials, std::uint64_t master_seed) {
    if (dimension_m == 0)
        throw Error(ErrorCode::invalid_argument, "probe dimension must be positive");
    if (trials == 0)
        throw Error(ErrorCode::invalid_argument, "probe trials must be positive");

    const double m_f = static_cast<double>(dimension_m);
    double norm_acc = 0.0, cross_acc = 0.0, unit_acc = 0.0, zero_acc = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        std::mt19937_64 rng = make_substream(master_seed, StreamPurpose::probe_trial, t);
        std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
        double norm_p = 0.0, norm_u = 0.0;
        std::complex<double> cross{0.0, 0.0};
        std::complex<double> zero_cross{0.0, 0.0};
        for (std::size_t i = 0; i < dimension_m; ++i) {
            const std::complex<double> p = draw_cn(rng, 1.0);
            const std::complex<double> q = draw_cn(rng, 1.0);
            const double theta = angle(rng);
            const std::complex<double> u{std::cos(theta), std::sin(theta)};
            norm_p += std::norm(p);
            norm_u += std::norm(u);
            cross += std::conj(p) * q;
            zero_cross += std::conj(p) * std::complex<double>(0.0, 0.0);
        }
        const double nd = norm_p / m_f - 1.0;
        const double ud = norm_u / m_f - 1.0;
        norm_acc += nd * nd;
        unit_acc += ud * ud;
        cross_acc += std::norm(cross / m_f);
        zero_acc += std::norm(zero_cross / m_f);
    }

    const double t_f = static_cast<double>(trials);
    ProbeEntries out;
    out.gaussian_norm_msq = norm_acc / t_f;
    out.gaussian_cross_msq = cross_acc / t_f;
    out.unit_modulus_norm_msq = unit_acc / t_f;
    out.zero_cross_msq = zero_acc / t_f;
    // Per-entry variance of |p_i|^2 is 1 for CN(0,1); the second moment of the
    // normalized cross term is exactly 1/M.
    out.envelope_norm = 1.0 / m_f;
    out.envelope_cross = 1.0 / m_f;
    return out;
}

} // namespace dmimo
