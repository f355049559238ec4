#include "taildep/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace taildep {

void validate_point(const BivariatePoint& p) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || p.x < 0.0 || p.y < 0.0) {
        std::ostringstream msg;
        msg << "point (" << p.x << ", " << p.y << ") must be finite and nonnegative";
        throw std::invalid_argument(msg.str());
    }
}

BivariateSample::BivariateSample(std::vector<BivariatePoint> points) : points_(std::move(points)) {
    if (points_.empty()) {
        throw std::invalid_argument("sample must contain at least one point");
    }
    for (const auto& p : points_) {
        validate_point(p);
    }
}

BivariateSample BivariateSample::scaled(double c) const {
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw std::invalid_argument("scale factor must be positive and finite");
    }
    std::vector<BivariatePoint> out(points_.size());
    std::transform(points_.begin(), points_.end(), out.begin(),
                   [c](const BivariatePoint& p) { return BivariatePoint{c * p.x, c * p.y}; });
    return BivariateSample(std::move(out));
}

PolarPoint l1_polar(const BivariatePoint& p) {
    validate_point(p);
    const double r = p.x + p.y;
    if (r == 0.0) {
        throw std::domain_error("L1 polar transform is undefined at the origin");
    }
    return {r, p.x / r};
}

BivariatePoint from_polar(const PolarPoint& q) noexcept {
    return {q.r * q.theta, q.r * (1.0 - q.theta)};
}

AngularCone::AngularCone(double a, double b) : a_(a), b_(b) {
    if (!(0.0 <= a && a <= b && b <= 1.0)) {
        std::ostringstream msg;
        msg << "cone [" << a << ", " << b << "] must satisfy 0 <= a <= b <= 1";
        throw std::invalid_argument(msg.str());
    }
}

double AngularCone::upper_slope() const noexcept {
    return a_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / a_ - 1.0;
}

double AngularCone::lower_slope() const noexcept {
    return b_ == 0.0 ? std::numeric_limits<double>::infinity() : 1.0 / b_ - 1.0;
}

double d_star(const BivariatePoint& p, const AngularCone& cone) {
    validate_point(p);
    double below = 0.0;
    if (cone.b() == 0.0) {
        if (p.x > 0.0) return std::numeric_limits<double>::infinity();
    } else {
        below = cone.lower_slope() * p.x - p.y;
    }
    double above = 0.0;
    if (cone.a() > 0.0) {
        above = p.y - cone.upper_slope() * p.x;
    }
    return std::max({below, above, 0.0});
}

GeneralizedPolar gpolar(const BivariatePoint& p, const AngularCone& cone) {
    const double d = d_star(p, cone);
    if (!(d > 0.0)) {
        throw std::domain_error("generalized polar coordinates are undefined inside the cone");
    }
    if (!std::isfinite(d)) {
        throw std::domain_error("point is infinitely far from a degenerate axis cone");
    }
    return {d, {p.x / d, p.y / d}};
}

namespace {

std::vector<std::size_t> order_indices(const BivariateSample& s, std::size_t depth) {
    std::vector<double> r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        r[i] = s[i].x + s[i].y;
    }
    std::vector<std::size_t> idx(s.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Strict total order: larger radius first, then lower source index.
    auto cmp = [&r](std::size_t i, std::size_t j) { return r[i] > r[j] || (r[i] == r[j] && i < j); };
    depth = std::min(depth, idx.size());
    if (depth == idx.size()) {
        std::sort(idx.begin(), idx.end(), cmp);
    } else {
        std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(depth), idx.end(), cmp);
        idx.resize(depth);
    }
    return idx;
}

}  // namespace

RadialOrder::RadialOrder(const BivariateSample& sample) : RadialOrder(sample, sample.size()) {}

RadialOrder::RadialOrder(const BivariateSample& sample, std::size_t depth) : n_(sample.size()) {
    if (depth == 0) {
        throw std::invalid_argument("radial order depth must be at least 1");
    }
    index_ = order_indices(sample, depth);
    sorted_r_.reserve(index_.size());
    theta_.reserve(index_.size());
    pairs_.reserve(index_.size());
    for (std::size_t i : index_) {
        const BivariatePoint& p = sample[i];
        const double r = p.x + p.y;
        sorted_r_.push_back(r);
        theta_.push_back(r > 0.0 ? p.x / r : std::numeric_limits<double>::quiet_NaN());
        pairs_.push_back(p);
    }
    if (sorted_r_.front() == 0.0) {
        throw std::invalid_argument("radial order needs at least one point away from the origin");
    }
}

}  // namespace taildep
