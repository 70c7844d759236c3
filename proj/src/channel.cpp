#include "channel.hpp"

#include <cmath>
#include <string>

#include "error.hpp"
#include "rng.hpp"

namespace dmimo {

double path_loss(double distance_m, double exponent_v) {
    if (!(distance_m > 0.0))
        throw Error(ErrorCode::invalid_argument, "distance must be positive");
    if (!(exponent_v >= 2.0 && exponent_v <= 6.0))
        throw Error(ErrorCode::invalid_argument, "path-loss exponent must lie in [2, 6]");
    return std::pow(distance_m, -exponent_v);
}

PathLossMatrix path_loss_matrix(const RingLayout& ring, const std::vector<Vec2>& users,
                                double exponent_v, double min_distance_m) {
    const auto m_count = static_cast<Eigen::Index>(ring.antennas.size());
    const auto k_count = static_cast<Eigen::Index>(users.size());
    if (m_count == 0 || k_count == 0)
        throw Error(ErrorCode::invalid_argument, "path_loss_matrix needs antennas and users");
    PathLossMatrix beta(m_count, k_count);
    for (Eigen::Index k = 0; k < k_count; ++k) {
        for (Eigen::Index m = 0; m < m_count; ++m) {
            const double d = antenna_user_distance(ring.antennas[static_cast<std::size_t>(m)],
                                                   users[static_cast<std::size_t>(k)]);
            if (d < min_distance_m)
                throw Error(ErrorCode::singular,
                            "user " + std::to_string(k) + " is within min_distance_m of antenna " +
                                std::to_string(m));
            beta(m, k) = path_loss(d, exponent_v);
        }
    }
    return beta;
}

void fill_fading(Eigen::MatrixXcd& h, FadingKind kind, std::mt19937_64& rng) {
    for (Eigen::Index k = 0; k < h.cols(); ++k) {
        for (Eigen::Index m = 0; m < h.rows(); ++m) {
            switch (kind) {
                case FadingKind::rayleigh:
                    h(m, k) = draw_cn(rng, 1.0);
                    break;
                case FadingKind::constant_one:
                    h(m, k) = std::complex<double>(1.0, 0.0);
                    break;
            }
        }
    }
}

ChannelMatrix draw_channel(const PathLossMatrix& beta, FadingKind kind, std::mt19937_64& rng) {
    ChannelMatrix g(beta.rows(), beta.cols());
    fill_fading(g, kind, rng);
    g.array() *= beta.array().sqrt().cast<std::complex<double>>();
    return g;
}

} // namespace dmimo
