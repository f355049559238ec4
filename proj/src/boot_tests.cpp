#include "taildep/boot_tests.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "taildep/estimators.hpp"
#include "taildep/parallel.hpp"
#include "taildep/statdist.hpp"

namespace taildep::boot {

std::string to_string(TestId id) {
    switch (id) {
        case TestId::H1: return "H1";
        case TestId::H2: return "H2";
        case TestId::H3: return "H3";
    }
    return "?";
}

std::string to_string(Verdict v) {
    return v == Verdict::reject ? "reject" : "fail_to_reject";
}

TestId parse_test_id(const std::string& s) {
    if (s == "H1") return TestId::H1;
    if (s == "H2") return TestId::H2;
    if (s == "H3") return TestId::H3;
    throw std::invalid_argument("unknown test id '" + s + "'");
}

Verdict parse_verdict(const std::string& s) {
    if (s == "reject") return Verdict::reject;
    if (s == "fail_to_reject") return Verdict::fail_to_reject;
    throw std::invalid_argument("unknown verdict '" + s + "'");
}

void TestConfig::validate(std::size_t n) const {
    std::ostringstream msg;
    if (k_n == 0 || k_n >= n) {
        msg << "k_n = " << k_n << " must satisfy 1 <= k_n < n = " << n;
    } else if (k_mn == 0 || k_mn >= m_n) {
        msg << "k_mn = " << k_mn << " must satisfy 1 <= k_mn < m_n = " << m_n;
    } else if (B < 2) {
        msg << "B must be at least 2";
    } else if (!(alpha_sig > 0.0 && alpha_sig < 1.0)) {
        msg << "alpha_sig must lie in (0, 1)";
    } else if (!(lambda > 0.0)) {
        msg << "lambda must be positive";
    } else {
        return;
    }
    throw std::invalid_argument(msg.str());
}

std::size_t default_k(std::size_t n) {
    return std::max<std::size_t>(1, std::min<std::size_t>((n + 9) / 10, 100));
}

std::size_t default_m(std::size_t n, std::size_t k_n) {
    const auto m = static_cast<std::size_t>(std::llround(static_cast<double>(n) / static_cast<double>(k_n)));
    return std::max<std::size_t>(2, m);
}

std::size_t default_k_m(std::size_t m_n) {
    const auto k = static_cast<std::size_t>(std::llround(0.05 * static_cast<double>(m_n)));
    return std::max<std::size_t>(1, std::min(std::max<std::size_t>(5, k), m_n - 1));
}

BivariateSample resample(const BivariateSample& s, std::size_t m, CounterRng& stream) {
    if (m == 0) throw std::invalid_argument("resample size must be at least 1");
    std::vector<BivariatePoint> out(m);
    for (auto& p : out) p = s[stream.below(s.size())];
    return BivariateSample(std::move(out));
}

namespace {

enum StreamTag : std::uint64_t {
    kTagStrong = 0x4831,
    kTagFull = 0x4832,
    kTagWeakT = 0x4833,
    kTagWeakMasked = 0x4834,
};

enum class Stat { dstar, t, t_tilde };

constexpr std::uint64_t kAttemptShift = 48;

// nullopt marks a degenerate resample: zero or tied top-k radii, or a
// statistic that is undefined on it.
std::optional<double> evaluate(const BivariateSample& res, Stat stat, std::size_t k, const AngularCone& cone) {
    try {
        const RadialOrder ord(res, stat == Stat::t_tilde ? res.size() : k);
        const auto r = ord.radii();
        if (!(r[k - 1] > 0.0) || r[0] == r[k - 1]) return std::nullopt;
        switch (stat) {
            case Stat::dstar: return d_star_statistic(ord, k, cone).value;
            case Stat::t: return t_statistic(ord, k).value;
            case Stat::t_tilde: return t_tilde_statistic(ord, k, cone).value;
        }
    } catch (const std::domain_error&) {
    } catch (const std::invalid_argument&) {
    }
    return std::nullopt;
}

struct Batch {
    std::vector<double> values;
    std::size_t redraws{0};
};

// Rounds of redraws keep the outcome independent of scheduling: round j
// redraws, with attempt index j, exactly the resamples still degenerate.
Batch run_batch(const BivariateSample& s, const TestConfig& cfg, StreamTag tag, Stat stat,
                const AngularCone& cone) {
    const std::uint64_t key = derive_key(cfg.seed, tag);
    Batch out;
    out.values.assign(cfg.B, 0.0);
    std::vector<std::size_t> pending(cfg.B);
    std::iota(pending.begin(), pending.end(), std::size_t{0});
    std::vector<char> ok(cfg.B, 0);
    std::size_t draws = 0;
    const std::size_t cap = 10 * cfg.B;

    for (std::uint64_t attempt = 0; !pending.empty(); ++attempt) {
        if (draws + pending.size() > cap) {
            std::ostringstream msg;
            msg << "bootstrap gave up after " << draws << " draws: " << pending.size()
                << " resamples stayed degenerate";
            throw std::runtime_error(msg.str());
        }
        parallel_for(pending.size(), cfg.threads, [&](std::size_t i) {
            const std::size_t t = pending[i];
            CounterRng rng(key, static_cast<std::uint64_t>(t) | (attempt << kAttemptShift));
            const BivariateSample res = resample(s, cfg.m_n, rng);
            if (const auto v = evaluate(res, stat, cfg.k_mn, cone)) {
                out.values[t] = *v;
                ok[t] = 1;
            }
        });
        draws += pending.size();
        std::erase_if(pending, [&](std::size_t t) { return ok[t] != 0; });
    }
    out.redraws = draws - cfg.B;
    return out;
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

// Unbiased (B - 1) sample variance, two passes in index order.
double variance_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return ss / static_cast<double>(v.size() - 1);
}

double full_sample_hill(const BivariateSample& s, std::size_t k_n) {
    const double h = hill(RadialOrder(s, k_n), k_n).value;
    if (!(h > 0.0)) {
        throw std::domain_error("Hill estimate on the full sample is zero; top radii are tied");
    }
    return h;
}

double band_fraction(const std::vector<double>& values, double center, double half_width) {
    std::size_t flagged = 0;
    for (double v : values) {
        if (std::fabs(v - center) > half_width) ++flagged;
    }
    return static_cast<double>(flagged) / static_cast<double>(values.size());
}

}  // namespace

TestReport test_strong(const BivariateSample& s, const AngularCone& cone, const TestConfig& cfg) {
    cfg.validate(s.size());
    const double h = full_sample_hill(s, cfg.k_n);
    const double z = dist::normal_quantile(1.0 - 0.5 * cfg.alpha_sig);
    const double half_width = z * h / std::sqrt(static_cast<double>(cfg.k_mn));

    Batch batch = run_batch(s, cfg, kTagStrong, Stat::dstar, cone);
    const double rate = band_fraction(batch.values, h, half_width);

    TestReport rep;
    rep.test_id = TestId::H1;
    rep.statistic = rate;
    rep.threshold = cfg.alpha_sig;
    rep.verdict = rate > cfg.alpha_sig ? Verdict::reject : Verdict::fail_to_reject;
    rep.auxiliary = {
        {"hill", h},
        {"z", z},
        {"band_half_width", half_width},
        {"rejection_rate", rate},
        {"mean_dstar", mean_of(batch.values)},
        {"cone_a", cone.a()},
        {"cone_b", cone.b()},
    };
    rep.per_resample = std::move(batch.values);
    rep.redraws = batch.redraws;
    return rep;
}

TestReport test_full(const BivariateSample& s, const TestConfig& cfg) {
    cfg.validate(s.size());
    const RadialOrder top(s, cfg.k_n);
    const double h = full_sample_hill(s, cfg.k_n);
    const auto thetas = top.thetas();
    const double theta0 = std::accumulate(thetas.begin(), thetas.begin() + static_cast<std::ptrdiff_t>(cfg.k_n), 0.0) /
                          static_cast<double>(cfg.k_n);

    Batch batch = run_batch(s, cfg, kTagFull, Stat::t, AngularCone::full());
    const double var = variance_of(batch.values);
    const double k_m = static_cast<double>(cfg.k_mn);
    const double stat = k_m * var / (h * h);
    const auto df = static_cast<double>(cfg.B - 1);
    const double threshold = dist::chisq_quantile(1.0 - cfg.alpha_sig, df) / df;

    const double z = dist::normal_quantile(1.0 - 0.5 * cfg.alpha_sig);
    const double half_width = z * h / std::sqrt(k_m);
    const double prop = band_fraction(batch.values, h, half_width);

    TestReport rep;
    rep.test_id = TestId::H2;
    rep.statistic = stat;
    rep.threshold = threshold;
    rep.verdict = stat > threshold ? Verdict::reject : Verdict::fail_to_reject;
    rep.proportion_verdict = prop > cfg.alpha_sig ? Verdict::reject : Verdict::fail_to_reject;
    rep.auxiliary = {
        {"hill", h},
        {"se_boot", std::sqrt(var)},
        {"mean_t", mean_of(batch.values)},
        {"proportion_rate", prop},
        {"band_half_width", half_width},
        {"theta0_hat", theta0},
    };
    rep.per_resample = std::move(batch.values);
    rep.redraws = batch.redraws;
    return rep;
}

TestReport test_weak(const BivariateSample& s, const AngularCone& cone, const TestConfig& cfg) {
    cfg.validate(s.size());
    if (cone.is_full()) {
        throw std::invalid_argument("strong vs weak test needs a cone narrower than [0, 1]");
    }
    Batch plain = run_batch(s, cfg, kTagWeakT, Stat::t, cone);
    Batch masked = run_batch(s, cfg, kTagWeakMasked, Stat::t_tilde, cone);
    const double var_t = variance_of(plain.values);
    const double var_masked = variance_of(masked.values);
    const double ratio = var_t / var_masked;

    const auto df = static_cast<double>(cfg.B - 1);
    const Interval band{dist::f_quantile(0.5 * cfg.alpha_sig, df, df),
                        dist::f_quantile(1.0 - 0.5 * cfg.alpha_sig, df, df)};

    TestReport rep;
    rep.test_id = TestId::H3;
    rep.statistic = ratio;
    rep.threshold = band;
    rep.verdict = (ratio < band.lo || ratio > band.hi) ? Verdict::reject : Verdict::fail_to_reject;
    rep.auxiliary = {
        {"var_t", var_t},
        {"var_t_masked", var_masked},
        {"mean_t", mean_of(plain.values)},
        {"mean_t_masked", mean_of(masked.values)},
        {"cone_a", cone.a()},
        {"cone_b", cone.b()},
    };
    rep.per_resample = std::move(plain.values);
    rep.per_resample_masked = std::move(masked.values);
    rep.redraws = plain.redraws + masked.redraws;
    return rep;
}

}  // namespace taildep::boot
