#include "taildep/support_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "taildep/estimators.hpp"

namespace taildep {

void SupportFitOptions::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
    if (grid_size < 11) throw std::invalid_argument("grid_size must be at least 11");
    if (refine_iters == 0) throw std::invalid_argument("refine_iters must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
}

double support_objective(const RadialOrder& ord, std::size_t k, double a, double b, double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw std::invalid_argument("lambda must be positive");
    const AngularCone cone(a, b);
    const double h = hill(ord, k).value;
    const double dstar = d_star_statistic(ord, k, cone).value;
    return (b - a) + lambda * std::sqrt(static_cast<double>(k)) * std::fabs(dstar - h);
}

namespace {

struct Vertex {
    double a;
    double b;
    double value;
};

// Euclidean projection onto the triangle {0 <= a <= b <= 1}: the point
// itself when feasible, otherwise the nearest point on one of its edges.
std::pair<double, double> project(double a, double b) {
    if (0.0 <= a && a <= b && b <= 1.0) return {a, b};
    const double m = std::clamp(0.5 * (a + b), 0.0, 1.0);
    const std::pair<double, double> candidates[] = {
        {0.0, std::clamp(b, 0.0, 1.0)},  // edge a = 0
        {std::clamp(a, 0.0, 1.0), 1.0},  // edge b = 1
        {m, m},                          // diagonal a = b
    };
    std::pair<double, double> best = candidates[0];
    double best_d = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
        const double d = (c.first - a) * (c.first - a) + (c.second - b) * (c.second - b);
        if (d < best_d) {
            best_d = d;
            best = c;
        }
    }
    return best;
}

// Grid ordering: objective, then width, then left endpoint.
bool grid_better(const Vertex& lhs, const Vertex& rhs) {
    if (lhs.value != rhs.value) return lhs.value < rhs.value;
    const double wl = lhs.b - lhs.a;
    const double wr = rhs.b - rhs.a;
    if (wl != wr) return wl < wr;
    return lhs.a < rhs.a;
}

class Evaluator {
public:
    Evaluator(const RadialOrder& ord, std::size_t k, double lambda, std::vector<ObjectiveEval>& trace)
        : ord_(ord), k_(k), scale_(lambda * std::sqrt(static_cast<double>(k))), h_(hill(ord, k).value),
          trace_(trace) {}

    Vertex operator()(double a, double b) {
        const auto [pa, pb] = project(a, b);
        const double dstar = d_star_statistic(ord_, k_, AngularCone(pa, pb)).value;
        const double value = (pb - pa) + scale_ * std::fabs(dstar - h_);
        trace_.push_back({pa, pb, value});
        return {pa, pb, value};
    }

private:
    const RadialOrder& ord_;
    std::size_t k_;
    double scale_;
    double h_;
    std::vector<ObjectiveEval>& trace_;
};

Vertex nelder_mead(Evaluator& eval, Vertex start, double step, std::size_t max_iter, double tol) {
    const double s1 = start.a + step <= start.b ? step : -step;
    const double s2 = start.b + step <= 1.0 ? step : -step;
    std::array<Vertex, 3> v{start, eval(start.a + s1, start.b), eval(start.a, start.b + s2)};

    auto by_value = [](const Vertex& l, const Vertex& r) { return grid_better(l, r); };
    for (std::size_t iter = 0; iter < max_iter; ++iter) {
        std::sort(v.begin(), v.end(), by_value);
        const double diameter = std::max(std::hypot(v[1].a - v[0].a, v[1].b - v[0].b),
                                         std::hypot(v[2].a - v[0].a, v[2].b - v[0].b));
        if (diameter < tol) break;

        const double ca = 0.5 * (v[0].a + v[1].a);
        const double cb = 0.5 * (v[0].b + v[1].b);
        const Vertex& worst = v[2];
        const Vertex refl = eval(2.0 * ca - worst.a, 2.0 * cb - worst.b);
        if (refl.value < v[0].value) {
            const Vertex expd = eval(ca + 2.0 * (refl.a - ca), cb + 2.0 * (refl.b - cb));
            v[2] = expd.value < refl.value ? expd : refl;
            continue;
        }
        if (refl.value < v[1].value) {
            v[2] = refl;
            continue;
        }
        const bool outside = refl.value < worst.value;
        const Vertex contr = outside ? eval(ca + 0.5 * (refl.a - ca), cb + 0.5 * (refl.b - cb))
                                     : eval(ca + 0.5 * (worst.a - ca), cb + 0.5 * (worst.b - cb));
        if (contr.value < std::min(refl.value, worst.value)) {
            v[2] = contr;
            continue;
        }
        for (std::size_t j = 1; j < 3; ++j) {
            v[j] = eval(v[0].a + 0.5 * (v[j].a - v[0].a), v[0].b + 0.5 * (v[j].b - v[0].b));
        }
    }
    std::sort(v.begin(), v.end(), by_value);
    return v[0];
}

}  // namespace

SupportEstimate estimate_support(const RadialOrder& ord, std::size_t k, const SupportFitOptions& opts) {
    opts.validate();
    SupportEstimate out;
    const std::size_t g = opts.grid_size;
    out.trace.reserve(g * (g + 1) / 2 + 4 * opts.refine_iters);
    Evaluator eval(ord, k, opts.lambda, out.trace);

    const double step = 1.0 / static_cast<double>(g - 1);
    Vertex best{0.0, 1.0, std::numeric_limits<double>::infinity()};
    for (std::size_t i = 0; i < g; ++i) {
        const double a = static_cast<double>(i) / static_cast<double>(g - 1);
        for (std::size_t j = i; j < g; ++j) {
            const double b = static_cast<double>(j) / static_cast<double>(g - 1);
            const Vertex v = eval(a, b);
            if (grid_better(v, best)) best = v;
        }
    }

    const Vertex refined = nelder_mead(eval, best, step, opts.refine_iters, opts.tol);
    const Vertex& chosen = refined.value <= best.value ? refined : best;
    out.a_hat = chosen.a;
    out.b_hat = chosen.b;
    out.objective_value = chosen.value;
    return out;
}

}  // namespace taildep
