// geometry.hpp
//
// Bivariate heavy-tail bookkeeping: L1 polar coordinates, the angular cone
// C[a,b] with its scaled distance, and radial order statistics carrying
// their concomitants.

#ifndef TAILDEP_GEOMETRY_HPP
#define TAILDEP_GEOMETRY_HPP

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace taildep {

struct BivariatePoint {
    double x{};
    double y{};

    friend bool operator==(const BivariatePoint&, const BivariatePoint&) = default;
};

/// Throws std::invalid_argument unless x, y are finite and nonnegative.
void validate_point(const BivariatePoint& p);

/// Nonempty collection of nonnegative finite points. Origin points are
/// allowed; they never reach the top of a radial order unless the whole
/// sample is degenerate.
class BivariateSample {
public:
    explicit BivariateSample(std::vector<BivariatePoint> points);

    [[nodiscard]] std::size_t size() const noexcept { return points_.size(); }
    [[nodiscard]] const BivariatePoint& operator[](std::size_t i) const { return points_[i]; }
    [[nodiscard]] std::span<const BivariatePoint> points() const noexcept { return points_; }

    /// Multiply every coordinate by c > 0.
    [[nodiscard]] BivariateSample scaled(double c) const;

private:
    std::vector<BivariatePoint> points_;
};

struct PolarPoint {
    double r{};      ///< L1 radius x + y
    double theta{};  ///< angle x / (x + y), in [0, 1]
};

/// (x, y) -> (x + y, x / (x + y)). Throws std::domain_error at the origin.
PolarPoint l1_polar(const BivariatePoint& p);

/// (r, theta) -> (r theta, r (1 - theta)).
BivariatePoint from_polar(const PolarPoint& q) noexcept;

/// Closed cone of first-quadrant points whose angle lies in [a, b].
/// a == b is the single ray through theta0 = a.
class AngularCone {
public:
    AngularCone(double a, double b);

    static AngularCone full() { return {0.0, 1.0}; }

    [[nodiscard]] double a() const noexcept { return a_; }
    [[nodiscard]] double b() const noexcept { return b_; }
    [[nodiscard]] double width() const noexcept { return b_ - a_; }
    [[nodiscard]] bool is_ray() const noexcept { return a_ == b_; }
    [[nodiscard]] bool is_full() const noexcept { return a_ == 0.0 && b_ == 1.0; }

    /// Slope of the upper boundary ray y = m_u x, i.e. 1/a - 1 (+inf at a = 0).
    [[nodiscard]] double upper_slope() const noexcept;
    /// Slope of the lower boundary ray y = m_l x, i.e. 1/b - 1 (+inf at b = 0).
    [[nodiscard]] double lower_slope() const noexcept;

    [[nodiscard]] bool contains_angle(double theta) const noexcept { return a_ <= theta && theta <= b_; }

    friend bool operator==(const AngularCone&, const AngularCone&) = default;

private:
    double a_;
    double b_;
};

/// Scaled distance max{(1/b - 1) x - y, y - (1/a - 1) x, 0}.
///
/// An infinite slope drops its term: at a = 0 the upper ray is the y-axis
/// and nothing lies above it. At b = 0 (the y-axis ray itself) every point
/// with x > 0 is infinitely far.
double d_star(const BivariatePoint& p, const AngularCone& cone);

struct GeneralizedPolar {
    double distance{};
    BivariatePoint direction{};
};

/// (d*, p / d*). Only defined off the cone; throws std::domain_error inside.
GeneralizedPolar gpolar(const BivariatePoint& p, const AngularCone& cone);

/// Radii in nonincreasing order with the angle and source pair of each.
/// Equal radii keep their original sample order.
class RadialOrder {
public:
    /// Full order over the sample. Throws if every point is the origin.
    explicit RadialOrder(const BivariateSample& sample);

    /// Only the `depth` largest radii are kept; size() still reports the
    /// sample size. Statistics never look past their k-th order statistic.
    RadialOrder(const BivariateSample& sample, std::size_t depth);

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    [[nodiscard]] std::size_t depth() const noexcept { return sorted_r_.size(); }

    [[nodiscard]] std::span<const double> radii() const noexcept { return sorted_r_; }
    [[nodiscard]] std::span<const double> thetas() const noexcept { return theta_; }
    [[nodiscard]] std::span<const BivariatePoint> pairs() const noexcept { return pairs_; }
    /// Position of each ordered entry in the source sample.
    [[nodiscard]] std::span<const std::size_t> source_index() const noexcept { return index_; }

private:
    std::size_t n_{};
    std::vector<double> sorted_r_;
    std::vector<double> theta_;  // NaN for origin points
    std::vector<BivariatePoint> pairs_;
    std::vector<std::size_t> index_;
};

inline RadialOrder radial_order(const BivariateSample& s) { return RadialOrder(s); }

}  // namespace taildep

#endif  // TAILDEP_GEOMETRY_HPP
