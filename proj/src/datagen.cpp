#include "taildep/datagen.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace taildep::gen {

namespace {

enum StreamTag : std::uint64_t {
    kTagBernoulli = 1,
    kTagZ = 2,
    kTagR1 = 3,
    kTagR2 = 4,
    kTagTheta2 = 5,
};

CounterRng stream_for(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
    return CounterRng(derive_key(seed, tag), index);
}

}  // namespace

void MixtureSpec::validate() const {
    if (!(alpha_main > 0.0) || !(alpha_hidden > 0.0)) {
        throw std::invalid_argument("Pareto indices must be positive");
    }
    if (alpha_hidden < alpha_main) {
        throw std::invalid_argument("hidden component must have the lighter tail (alpha_hidden >= alpha_main)");
    }
    if (!(z_dist.p > 0.0) || !(z_dist.q > 0.0)) {
        throw std::invalid_argument("Beta shape parameters must be positive");
    }
    if (!(mix_prob > 0.0 && mix_prob <= 1.0)) {
        throw std::invalid_argument("mix_prob must lie in (0, 1]");
    }
    if (mix_prob < 1.0 && cone.is_full()) {
        throw std::invalid_argument("off-cone component needs a cone narrower than [0, 1]");
    }
}

double MixtureSpec::on_cone_angle_mean() const {
    return cone.a() + cone.width() * z_dist.p / (z_dist.p + z_dist.q);
}

double MixtureSpec::on_cone_angle_variance() const {
    const double s = z_dist.p + z_dist.q;
    const double z_var = z_dist.p * z_dist.q / (s * s * (s + 1.0));
    return cone.width() * cone.width() * z_var;
}

MixtureSpec example1_spec() {
    return MixtureSpec{2.0, 4.0, AngularCone(0.25, 0.75), BetaShape{0.05, 0.1}, 0.5};
}

MixtureSpec example2_spec() {
    return MixtureSpec{2.0, 4.0, AngularCone(0.25, 0.75), BetaShape{1.0, 2.0}, 0.5};
}

double pareto(double alpha, CounterRng& rng) {
    return std::pow(rng.uniform_pos(), -1.0 / alpha);
}

double log_gamma_variate(double shape, CounterRng& rng) {
    if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be positive");
    if (shape < 1.0) {
        const double boosted = log_gamma_variate(shape + 1.0, rng);
        return boosted + std::log(rng.uniform_pos()) / shape;
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        const double x = rng.normal();
        double v = 1.0 + c * x;
        if (v <= 0.0) continue;
        v = v * v * v;
        const double u = rng.uniform_pos();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2 || std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return std::log(d) + std::log(v);
        }
    }
}

double beta(double p, double q, CounterRng& rng) {
    const double lg1 = log_gamma_variate(p, rng);
    const double lg2 = log_gamma_variate(q, rng);
    // G1 / (G1 + G2) = 1 / (1 + exp(lg2 - lg1)).
    return 1.0 / (1.0 + std::exp(lg2 - lg1));
}

double uniform_off_cone(const AngularCone& cone, CounterRng& rng) {
    const double lower = cone.a();
    const double upper = 1.0 - cone.b();
    const double total = lower + upper;
    if (!(total > 0.0)) {
        throw std::invalid_argument("cone [0, 1] leaves no off-cone angles");
    }
    const double s = rng.uniform() * total;
    if (s < lower) return s;
    // Upper piece mapped onto (b, 1].
    double theta = 1.0 - (s - lower);
    if (theta <= cone.b()) theta = std::nextafter(cone.b(), 2.0);
    return theta;
}

MixtureDraw draw(const MixtureSpec& spec, std::uint64_t seed, std::uint64_t index) {
    CounterRng bern = stream_for(seed, kTagBernoulli, index);
    const bool on_cone = bern.uniform() < spec.mix_prob;
    double r = 0.0;
    double theta = 0.0;
    if (on_cone) {
        CounterRng z_rng = stream_for(seed, kTagZ, index);
        const double z = beta(spec.z_dist.p, spec.z_dist.q, z_rng);
        theta = spec.cone.a() + spec.cone.width() * z;
        CounterRng r_rng = stream_for(seed, kTagR1, index);
        r = pareto(spec.alpha_main, r_rng);
    } else {
        CounterRng t_rng = stream_for(seed, kTagTheta2, index);
        theta = uniform_off_cone(spec.cone, t_rng);
        CounterRng r_rng = stream_for(seed, kTagR2, index);
        r = pareto(spec.alpha_hidden, r_rng);
    }
    return {BivariatePoint{r * theta, r * (1.0 - theta)}, theta, on_cone};
}

BivariateSample generate(const MixtureSpec& spec, std::size_t n, std::uint64_t seed) {
    spec.validate();
    if (n == 0) throw std::invalid_argument("sample size must be at least 1");
    std::vector<BivariatePoint> pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        pts[i] = draw(spec, seed, i).point;
    }
    return BivariateSample(std::move(pts));
}

BivariateSample example1(std::size_t n, std::uint64_t seed) {
    return generate(example1_spec(), n, seed);
}

BivariateSample example2(std::size_t n, std::uint64_t seed) {
    return generate(example2_spec(), n, seed);
}

}  // namespace taildep::gen
