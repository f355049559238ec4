// datagen.hpp
//
// Seeded generators for the two-component mixture
//
//     X = B R1 Th1 + (1 - B) R2 Th2,   Y = B R1 (1 - Th1) + (1 - B) R2 (1 - Th2)
//
// with R1 ~ Pareto(alpha_main), R2 ~ Pareto(alpha_hidden), Th1 = a + (b - a) Z,
// Z ~ Beta(p, q), Th2 uniform off [a, b], B ~ Bernoulli(mix_prob).
//
// Stream layout: point i draws each variable from its own counter stream,
// key derive_key(seed, tag) and stream id i, with tags
//
//     1 = B, 2 = Z (both gamma variates), 3 = R1, 4 = R2, 5 = Th2.
//
// Only the variables a point needs are drawn. Changing one parameter never
// shifts the random numbers feeding another variable, and any index block
// can be generated on its own.

#ifndef TAILDEP_DATAGEN_HPP
#define TAILDEP_DATAGEN_HPP

#include <cstddef>
#include <cstdint>

#include "taildep/geometry.hpp"
#include "taildep/random.hpp"

namespace taildep::gen {

struct BetaShape {
    double p{1.0};
    double q{1.0};
};

struct MixtureSpec {
    double alpha_main{2.0};
    double alpha_hidden{4.0};
    AngularCone cone{0.25, 0.75};
    BetaShape z_dist{};
    double mix_prob{0.5};

    /// Throws std::invalid_argument on a spec that breaks its invariants.
    void validate() const;

    /// Mean and variance of the on-cone angle a + (b - a) Z.
    [[nodiscard]] double on_cone_angle_mean() const;
    [[nodiscard]] double on_cone_angle_variance() const;
};

/// Example 1: Pareto(2) / Pareto(4), cone [0.25, 0.75], Z ~ Beta(0.05, 0.1), mix 0.5.
MixtureSpec example1_spec();
/// Example 2: as example 1 with Z ~ Beta(1, 2).
MixtureSpec example2_spec();

/// P(R > x) = x^-alpha on [1, inf): U^(-1/alpha) with U uniform on (0, 1].
double pareto(double alpha, CounterRng& rng);

/// log of a Gamma(shape, 1) variate. Marsaglia-Tsang squeeze for shape >= 1,
/// boosted by U^(1/shape) below 1; the log form keeps tiny shapes from underflowing.
double log_gamma_variate(double shape, CounterRng& rng);

/// Beta(p, q) as G1 / (G1 + G2) from two gamma variates.
double beta(double p, double q, CounterRng& rng);

/// Uniform on [0, a) U (b, 1], each piece chosen in proportion to its length.
double uniform_off_cone(const AngularCone& cone, CounterRng& rng);

struct MixtureDraw {
    BivariatePoint point;
    double theta{};   ///< angle used to place the point
    bool on_cone{};   ///< true when the Bernoulli picked the main component
};

/// The i-th draw of generate(spec, n, seed); independent of n.
MixtureDraw draw(const MixtureSpec& spec, std::uint64_t seed, std::uint64_t index);

/// n iid draws; deterministic given (spec, n, seed).
BivariateSample generate(const MixtureSpec& spec, std::size_t n, std::uint64_t seed);

BivariateSample example1(std::size_t n, std::uint64_t seed);
BivariateSample example2(std::size_t n, std::uint64_t seed);

}  // namespace taildep::gen

#endif  // TAILDEP_DATAGEN_HPP
