#include "taildep/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace taildep {

namespace {

void check_k(const RadialOrder& ord, std::size_t k) {
    if (k == 0 || k > ord.size()) {
        std::ostringstream msg;
        msg << "k = " << k << " outside [1, " << ord.size() << "]";
        throw std::invalid_argument(msg.str());
    }
    if (k > ord.depth()) {
        std::ostringstream msg;
        msg << "k = " << k << " exceeds the " << ord.depth() << " order statistics kept";
        throw std::invalid_argument(msg.str());
    }
    if (!(ord.radii()[k - 1] > 0.0)) {
        throw std::domain_error("R_(k) is zero; too many origin points for this k");
    }
}

}  // namespace

StatisticValue hill(const RadialOrder& ord, std::size_t k) {
    check_k(ord, k);
    const auto r = ord.radii();
    const double rk = r[k - 1];
    double sum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        sum += std::log(r[i] / rk);
    }
    return {sum / static_cast<double>(k), k, ord.size()};
}

StatisticValue d_star_statistic(const RadialOrder& ord, std::size_t k, const AngularCone& cone) {
    StatisticValue h = hill(ord, k);
    const auto r = ord.radii();
    const auto pairs = ord.pairs();
    const double rk = r[k - 1];
    double excess = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double log_ratio = std::log(r[i] / rk);
        if (log_ratio == 0.0) continue;
        excess += d_star(pairs[i], cone) / rk * log_ratio;
    }
    h.value += excess / static_cast<double>(k);
    return h;
}

StatisticValue t_statistic(const RadialOrder& ord, std::size_t k) {
    check_k(ord, k);
    const auto r = ord.radii();
    const auto theta = ord.thetas();
    const double rk = r[k - 1];
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        num += theta[i] * std::log(r[i] / rk);
        den += theta[i];
    }
    if (!(den > 0.0)) {
        throw std::domain_error("top-k angles sum to zero; T is undefined");
    }
    return {num / den, k, ord.size()};
}

StatisticValue t_tilde_statistic(const RadialOrder& ord, std::size_t k, const AngularCone& cone) {
    if (k == 0 || k > ord.size()) {
        std::ostringstream msg;
        msg << "k = " << k << " outside [1, " << ord.size() << "]";
        throw std::invalid_argument(msg.str());
    }
    const auto r = ord.radii();
    const auto theta = ord.thetas();

    // Masked ranking keeps the relative order of in-cone points; masked-out
    // points carry zero angle and so never move either sum.
    std::vector<std::size_t> inside;
    inside.reserve(k);
    for (std::size_t i = 0; i < ord.depth() && inside.size() < k; ++i) {
        if (r[i] > 0.0 && cone.contains_angle(theta[i])) inside.push_back(i);
    }
    if (inside.size() < k && ord.depth() < ord.size()) {
        throw std::invalid_argument("truncated radial order is too shallow for the masked statistic");
    }
    if (inside.empty()) {
        return {1.0, k, ord.size()};
    }
    const double ref = r[inside.back()];
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i : inside) {
        num += theta[i] * std::log(std::max(r[i] / ref, 1.0));
        den += theta[i];
    }
    return {den > 0.0 ? num / den : 1.0, k, ord.size()};
}

}  // namespace taildep
