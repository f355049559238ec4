// estimators.hpp
//
// Tail-index and dependence statistics computed from the k largest L1 radii.
// All four are functions of the ratios R_(i) / R_(k), so they are invariant
// under a common rescaling of the data.

#ifndef TAILDEP_ESTIMATORS_HPP
#define TAILDEP_ESTIMATORS_HPP

#include <cstddef>

#include "taildep/geometry.hpp"

namespace taildep {

struct StatisticValue {
    double value{};
    std::size_t k{};  ///< order statistics used
    std::size_t n{};  ///< sample size
};

/// Hill estimator of 1/alpha: (1/k) sum_{i<=k} log(R_(i) / R_(k)).
///
/// The reference radius is R_(k) itself (the i = k term vanishes), which
/// makes the cone-distance statistic on [0, 1] coincide with it exactly.
/// Requires 1 <= k <= n and R_(k) > 0.
StatisticValue hill(const RadialOrder& ord, std::size_t k);

/// H + (1/k) sum_{i<=k} d*((X*_i, Y*_i), cone) / R_(k) * log(R_(i) / R_(k)).
/// Never below hill(); equal to it bit for bit when the cone is [0, 1].
StatisticValue d_star_statistic(const RadialOrder& ord, std::size_t k, const AngularCone& cone);

/// Angle-weighted Hill estimator sum Theta*_i log(R_(i)/R_(k)) / sum Theta*_i.
/// Throws std::domain_error when the top-k angles sum to zero.
StatisticValue t_statistic(const RadialOrder& ord, std::size_t k);

/// The angle-weighted estimator restricted to the cone: points with angle
/// outside [a, b] get radius and angle zero before ranking.
///
/// Degenerate cases: a zero angle sum gives 1 (0/0 == 1). When fewer than k
/// points fall in the cone the masked R_(k) is zero; the log ratios are then
/// taken against the smallest positive masked radius, which is the only
/// finite reading of the max(., 1) guard.
///
/// Needs a full-depth order unless k in-cone points occur within the kept depth.
StatisticValue t_tilde_statistic(const RadialOrder& ord, std::size_t k, const AngularCone& cone);

}  // namespace taildep

#endif  // TAILDEP_ESTIMATORS_HPP
