// series.hpp
//
// Time-series preparation for return data: strided log returns and the
// sample autocorrelation used to check for serial dependence.

#ifndef TAILDEP_SERIES_HPP
#define TAILDEP_SERIES_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace taildep {

/// r_j = log(p[(j+1) stride] / p[j stride]); a trailing partial window is dropped.
std::vector<double> log_returns(std::span<const double> prices, std::size_t stride);

/// Sample autocorrelation for lags 0..max_lag from the biased (divide by n)
/// autocovariance. Throws std::invalid_argument for a constant series.
std::vector<double> acf(std::span<const double> series, std::size_t max_lag);

}  // namespace taildep

#endif  // TAILDEP_SERIES_HPP
