#include "taildep/series.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace taildep {

std::vector<double> log_returns(std::span<const double> prices, std::size_t stride) {
    if (stride == 0) {
        throw std::invalid_argument("stride must be positive");
    }
    if (prices.size() <= stride) {
        throw std::invalid_argument("price series must be longer than the stride");
    }
    for (double p : prices) {
        if (!(p > 0.0) || !std::isfinite(p)) {
            throw std::invalid_argument("prices must be positive and finite");
        }
    }
    const std::size_t count = (prices.size() - 1) / stride;
    std::vector<double> out(count);
    for (std::size_t j = 0; j < count; ++j) {
        out[j] = std::log(prices[(j + 1) * stride] / prices[j * stride]);
    }
    return out;
}

std::vector<double> acf(std::span<const double> series, std::size_t max_lag) {
    const std::size_t n = series.size();
    if (max_lag == 0 || n <= max_lag) {
        throw std::invalid_argument("acf needs 0 < max_lag < series length");
    }
    if (std::all_of(series.begin(), series.end(), [&](double v) { return v == series.front(); })) {
        throw std::invalid_argument("acf is undefined for a constant series");
    }
    double mean = 0.0;
    for (double v : series) mean += v;
    mean /= static_cast<double>(n);

    std::vector<double> centered(n);
    for (std::size_t i = 0; i < n; ++i) centered[i] = series[i] - mean;

    auto autocov = [&](std::size_t h) {
        double s = 0.0;
        for (std::size_t t = 0; t + h < n; ++t) s += centered[t] * centered[t + h];
        return s / static_cast<double>(n);
    };
    const double c0 = autocov(0);
    if (!(c0 > 0.0)) {
        throw std::invalid_argument("acf is undefined for a constant series");
    }
    std::vector<double> out(max_lag + 1);
    out[0] = 1.0;
    for (std::size_t h = 1; h <= max_lag; ++h) out[h] = autocov(h) / c0;
    return out;
}

}  // namespace taildep
