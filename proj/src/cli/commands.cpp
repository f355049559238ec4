#include "cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "cli/csv.hpp"
#include "cli/report_json.hpp"
#include "taildep/boot_tests.hpp"
#include "taildep/estimators.hpp"
#include "taildep/series.hpp"
#include "taildep/support_fit.hpp"

namespace taildep::cli {

using nlohmann::json;

void DataSource::validate() const {
    if (input.has_value() == generator.has_value()) {
        throw std::invalid_argument("give exactly one data source: --input or --example");
    }
    if (generator && n == 0) throw std::invalid_argument("--n must be positive when generating data");
}

std::vector<std::pair<double, double>> load_pairs(const DataSource& src, std::uint64_t seed) {
    src.validate();
    std::vector<std::pair<double, double>> out;
    if (src.generator) {
        const BivariateSample s = gen::generate(*src.generator, src.n, seed);
        out.reserve(s.size());
        for (const auto& p : s.points()) out.emplace_back(p.x, p.y);
        return out;
    }
    const CsvTable t = read_csv_file(*src.input);
    auto pick = [&](const std::string& name, const char* fallback, std::size_t pos) -> std::size_t {
        if (!name.empty()) return t.column(name);
        if (auto idx = t.find_column(fallback)) return *idx;
        if (pos >= t.header.size()) throw std::invalid_argument(*src.input + ": need two value columns");
        return pos;
    };
    const std::size_t xc = pick(src.x_col, "x", 0);
    const std::size_t yc = pick(src.y_col, "y", 1);
    if (xc == yc) throw std::invalid_argument("x and y columns must differ");
    const auto xs = numeric_column(t, xc);
    const auto ys = numeric_column(t, yc);
    out.reserve(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) out.emplace_back(xs[i], ys[i]);
    return out;
}

BivariateSample load_sample(const DataSource& src, std::uint64_t seed) {
    const auto pairs = load_pairs(src, seed);
    std::vector<BivariatePoint> pts;
    pts.reserve(pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto [x, y] = pairs[i];
        if (src.use_abs) {
            x = std::fabs(x);
            y = std::fabs(y);
        } else if (x < 0.0 || y < 0.0) {
            throw std::invalid_argument("row " + std::to_string(i + 1) +
                                        " has a negative value; pass --abs to fold signs");
        }
        pts.push_back({x, y});
    }
    return BivariateSample(std::move(pts));
}

void write_sample_csv(const BivariateSample& s, std::ostream& out) {
    out << "x,y\n";
    for (const auto& p : s.points()) out << format_double(p.x) << ',' << format_double(p.y) << '\n';
}

void cmd_simulate(const gen::MixtureSpec& spec, std::size_t n, std::uint64_t seed, std::ostream& out) {
    if (n == 0) throw std::invalid_argument("--n must be positive");
    write_sample_csv(gen::generate(spec, n, seed), out);
}

std::size_t cmd_prep(const std::string& input, const PrepOptions& opts, std::ostream& out, std::ostream& acf_out,
                     std::ostream& warn) {
    const CsvTable t = read_csv_file(input);
    std::vector<std::size_t> cols;
    if (opts.price_cols.empty()) {
        for (std::size_t c = 0; c < t.header.size(); ++c) {
            const bool numeric = std::all_of(t.rows.begin(), t.rows.end(),
                                             [&](const auto& row) { return parse_double(row[c]).has_value(); });
            if (numeric) cols.push_back(c);
        }
        if (cols.empty()) throw std::invalid_argument(input + ": no numeric price column");
    } else {
        for (const auto& name : opts.price_cols) cols.push_back(t.column(name));
    }

    std::vector<std::vector<double>> series;
    std::vector<std::vector<double>> acfs;
    std::size_t warnings = 0;
    for (std::size_t c : cols) {
        const std::string& name = t.header[c];
        const auto prices = numeric_column(t, c);
        std::vector<double> ret;
        try {
            ret = log_returns(prices, opts.stride);
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("column '" + name + "': " + e.what());
        }
        if (ret.size() <= opts.max_lag) {
            std::ostringstream msg;
            msg << "column '" << name << "': " << ret.size() << " returns, need more than --max-lag = "
                << opts.max_lag;
            throw std::invalid_argument(msg.str());
        }
        std::vector<double> abs_ret(ret.size());
        std::transform(ret.begin(), ret.end(), abs_ret.begin(), [](double r) { return std::fabs(r); });
        for (const auto* v : {&ret, &abs_ret}) {
            try {
                acfs.push_back(acf(*v, opts.max_lag));
            } catch (const std::invalid_argument& e) {
                warn << "warning: column '" << name << (v == &ret ? "' returns" : "' absolute returns")
                     << ": " << e.what() << "; ACF written as nan\n";
                ++warnings;
                acfs.emplace_back(opts.max_lag + 1, std::numeric_limits<double>::quiet_NaN());
            }
        }
        series.push_back(std::move(ret));
        series.push_back(std::move(abs_ret));
    }

    auto header = [&](std::ostream& os) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const std::string& name = t.header[cols[i]];
            os << ',' << name << "_ret," << name << "_absret";
        }
        os << '\n';
    };

    std::ostringstream ret_header;
    header(ret_header);
    out << ret_header.str().substr(1);
    for (std::size_t r = 0; r < series.front().size(); ++r) {
        for (std::size_t j = 0; j < series.size(); ++j) {
            if (j > 0) out << ',';
            out << format_double(series[j][r]);
        }
        out << '\n';
    }

    acf_out << "lag";
    header(acf_out);
    for (std::size_t lag = 0; lag <= opts.max_lag; ++lag) {
        acf_out << lag;
        for (const auto& a : acfs) acf_out << ',' << format_double(a[lag]);
        acf_out << '\n';
    }
    return warnings;
}

void cmd_support(const BivariateSample& s, const SupportOptions& opts, std::ostream& out) {
    const std::size_t k = opts.k.value_or(boot::default_k(s.size()));
    const RadialOrder ord(s, std::min(k, s.size()));
    SupportFitOptions fit;
    fit.lambda = opts.lambda;
    fit.grid_size = opts.grid;
    const SupportEstimate est = estimate_support(ord, k, fit);
    const double h = hill(ord, k).value;

    if (opts.format == Format::csv) {
        out << "n,k,lambda,hill,a_hat,b_hat,objective_value\n"
            << s.size() << ',' << k << ',' << format_double(opts.lambda) << ',' << format_double(h) << ','
            << format_double(est.a_hat) << ',' << format_double(est.b_hat) << ','
            << format_double(est.objective_value) << '\n';
        return;
    }
    json doc{{"schema_version", kSchemaVersion},
             {"command", "support"},
             {"n", s.size()},
             {"k", k},
             {"lambda", opts.lambda},
             {"hill", h},
             {"estimate", support_to_json(est, opts.trace)}};
    out << doc.dump(2) << '\n';
}

json run_tests(const BivariateSample& s, const TestOptions& opts) {
    const std::size_t n = s.size();
    boot::TestConfig cfg;
    cfg.k_n = opts.k.value_or(boot::default_k(n));
    cfg.m_n = opts.m.value_or(boot::default_m(n, cfg.k_n));
    cfg.k_mn = opts.k_m.value_or(boot::default_k_m(cfg.m_n));
    cfg.B = opts.B;
    cfg.lambda = opts.lambda;
    cfg.alpha_sig = opts.alpha_sig;
    cfg.seed = opts.seed;
    cfg.threads = opts.threads;
    cfg.validate(n);

    const bool all = opts.which == "all";
    const bool strong = all || opts.which == "strong";
    const bool full = all || opts.which == "full";
    const bool weak = all || opts.which == "weak";
    if (!strong && !full && !weak) throw std::invalid_argument("--which must be strong, full, weak or all");

    json doc{{"schema_version", kSchemaVersion}, {"command", "test"}, {"n", n}, {"config", config_to_json(cfg)}};

    std::optional<AngularCone> cone = opts.cone;
    if (strong || weak) {
        if (cone) {
            doc["cone"] = json{{"a", cone->a()}, {"b", cone->b()}, {"source", "given"}};
        } else {
            SupportFitOptions fit;
            fit.lambda = cfg.lambda;
            fit.grid_size = opts.grid;
            const SupportEstimate est = estimate_support(RadialOrder(s, cfg.k_n), cfg.k_n, fit);
            cone = AngularCone(est.a_hat, est.b_hat);
            doc["cone"] = json{{"a", cone->a()}, {"b", cone->b()}, {"source", "estimated"}};
            doc["support"] = support_to_json(est, false);
        }
    }

    json reports = json::array();
    if (strong) reports.push_back(report_to_json(boot::test_strong(s, *cone, cfg)));
    if (full) reports.push_back(report_to_json(boot::test_full(s, cfg)));
    if (weak) reports.push_back(report_to_json(boot::test_weak(s, *cone, cfg)));
    doc["reports"] = std::move(reports);
    return doc;
}

void cmd_test(const BivariateSample& s, const TestOptions& opts, std::ostream& out) {
    const json doc = run_tests(s, opts);
    if (opts.format == Format::json) {
        out << doc.dump(2) << '\n';
        return;
    }
    // Long form: one (test, field, value) row per scalar. Per-resample values
    // are only in the JSON output.
    out << "test_id,field,value\n";
    if (doc.contains("cone")) {
        out << "cone,a," << format_double(doc["cone"]["a"].get<double>()) << '\n'
            << "cone,b," << format_double(doc["cone"]["b"].get<double>()) << '\n'
            << "cone,source," << doc["cone"]["source"].get<std::string>() << '\n';
    }
    for (const auto& r : doc["reports"]) {
        const auto rep = report_from_json(r);
        const std::string id = boot::to_string(rep.test_id);
        out << id << ",verdict," << boot::to_string(rep.verdict) << '\n'
            << id << ",statistic," << format_double(rep.statistic) << '\n';
        if (const auto* iv = std::get_if<boot::Interval>(&rep.threshold)) {
            out << id << ",threshold_lo," << format_double(iv->lo) << '\n'
                << id << ",threshold_hi," << format_double(iv->hi) << '\n';
        } else {
            out << id << ",threshold," << format_double(std::get<double>(rep.threshold)) << '\n';
        }
        if (rep.proportion_verdict) {
            out << id << ",proportion_verdict," << boot::to_string(*rep.proportion_verdict) << '\n';
        }
        out << id << ",redraws," << rep.redraws << '\n';
        for (const auto& [key, value] : rep.auxiliary) out << id << ',' << key << ',' << format_double(value) << '\n';
    }
}

void cmd_diamond(const std::vector<std::pair<double, double>>& data, const DiamondOptions& opts, std::ostream& out,
                 std::ostream& hist_out) {
    if (data.empty()) throw std::invalid_argument("no data");
    if (opts.bins == 0) throw std::invalid_argument("--bins must be positive");
    const std::size_t k = opts.k.value_or(boot::default_k(data.size()));
    if (k == 0 || k > data.size()) throw std::invalid_argument("k must lie in [1, n]");

    std::vector<double> norm(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) norm[i] = std::fabs(data[i].first) + std::fabs(data[i].second);
    std::vector<std::size_t> idx(data.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::partial_sort(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(k), idx.end(),
                      [&](std::size_t i, std::size_t j) { return norm[i] > norm[j] || (norm[i] == norm[j] && i < j); });
    if (!(norm[idx[k - 1]] > 0.0)) throw std::invalid_argument("fewer than k points away from the origin");

    std::vector<std::size_t> counts(opts.bins, 0);
    out << "x,y,theta\n";
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t i = idx[j];
        const double x = data[i].first / norm[i];
        const double y = data[i].second / norm[i];
        const double theta = std::fabs(x);
        out << format_double(x) << ',' << format_double(y) << ',' << format_double(theta) << '\n';
        const auto bin = std::min(static_cast<std::size_t>(theta * static_cast<double>(opts.bins)), opts.bins - 1);
        ++counts[bin];
    }
    hist_out << "bin_lo,bin_hi,count,fraction\n";
    const auto nb = static_cast<double>(opts.bins);
    for (std::size_t b = 0; b < opts.bins; ++b) {
        hist_out << format_double(static_cast<double>(b) / nb) << ',' << format_double(static_cast<double>(b + 1) / nb)
                 << ',' << counts[b] << ',' << format_double(static_cast<double>(counts[b]) / static_cast<double>(k))
                 << '\n';
    }
}

std::string sibling_path(const std::string& path, const std::string& suffix) {
    const std::filesystem::path p(path);
    return (p.parent_path() / (p.stem().string() + suffix + ".csv")).string();
}

namespace {

struct GeneratorFlags {
    std::string example;
    std::optional<double> alpha_main, alpha_hidden, beta_p, beta_q, mix_prob;
    std::string spec_cone;
    std::size_t n{0};

    void add(CLI::App* sub, bool required) {
        auto* ex = sub->add_option("--example", example, "built-in generator: 1, 2 or custom (example 1 base)")
                       ->check(CLI::IsMember({"1", "2", "custom"}));
        if (required) ex->required();
        sub->add_option("--n", n, "number of generated points");
        sub->add_option("--alpha-main", alpha_main, "tail index of the on-cone radius");
        sub->add_option("--alpha-hidden", alpha_hidden, "tail index of the off-cone radius");
        sub->add_option("--beta-p", beta_p, "first shape of the on-cone Beta angle law");
        sub->add_option("--beta-q", beta_q, "second shape of the on-cone Beta angle law");
        sub->add_option("--mix-prob", mix_prob, "probability of the on-cone component");
        sub->add_option("--spec-cone", spec_cone, "generator cone a,b");
    }

    [[nodiscard]] std::optional<gen::MixtureSpec> spec() const;
};

AngularCone parse_cone(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() != 2) throw std::invalid_argument("cone must be given as a,b");
    const auto a = parse_double(parts[0]);
    const auto b = parse_double(parts[1]);
    if (!a || !b) throw std::invalid_argument("cone '" + text + "' is not two numbers");
    return AngularCone(*a, *b);
}

std::optional<gen::MixtureSpec> GeneratorFlags::spec() const {
    if (example.empty()) return std::nullopt;
    gen::MixtureSpec s = example == "2" ? gen::example2_spec() : gen::example1_spec();
    if (alpha_main) s.alpha_main = *alpha_main;
    if (alpha_hidden) s.alpha_hidden = *alpha_hidden;
    if (beta_p) s.z_dist.p = *beta_p;
    if (beta_q) s.z_dist.q = *beta_q;
    if (mix_prob) s.mix_prob = *mix_prob;
    if (!spec_cone.empty()) s.cone = parse_cone(spec_cone);
    s.validate();
    return s;
}

struct SourceFlags {
    std::string input;
    std::string cols;
    bool use_abs{true};
    GeneratorFlags gen;

    void add(CLI::App* sub, bool with_abs) {
        sub->add_option("--input", input, "CSV file with a header row");
        sub->add_option("--cols", cols, "value columns as x,y");
        if (with_abs) sub->add_flag("--abs,!--no-abs", use_abs, "fold signs with |x|, |y| (default on)");
        gen.add(sub, false);
    }

    [[nodiscard]] DataSource source() const {
        DataSource src;
        if (!input.empty()) src.input = input;
        src.generator = gen.spec();
        src.n = gen.n;
        src.use_abs = use_abs;
        if (!cols.empty()) {
            const auto parts = split(cols, ',');
            if (parts.size() != 2 || parts[0].empty() || parts[1].empty()) {
                throw std::invalid_argument("--cols must name two columns as x,y");
            }
            src.x_col = parts[0];
            src.y_col = parts[1];
        }
        src.validate();
        return src;
    }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("TAILDEP_SEED"); env != nullptr && *env != '\0') {
        std::uint64_t v = 0;
        const std::string s(env);
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size()) {
            throw std::invalid_argument("TAILDEP_SEED='" + s + "' is not an unsigned integer");
        }
        return v;
    }
    return 0;
}

// Everything is rendered in memory first so a failing command leaves no
// partial file behind.
void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        std::cout.flush();
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
    if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

Format parse_format(const std::string& s) { return s == "csv" ? Format::csv : Format::json; }

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"Tail dependence classification for bivariate heavy-tailed data"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "taildep 1.0.0");

    std::string output;
    std::optional<std::uint64_t> seed;
    std::string format = "json";
    auto add_output = [&](CLI::App* sub) { sub->add_option("--output", output, "output file (default stdout)"); };
    auto add_seed = [&](CLI::App* sub) {
        sub->add_option("--seed", seed, "RNG seed (default: TAILDEP_SEED, then 0)");
    };
    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    };

    // simulate
    auto* sim = app.add_subcommand("simulate", "write a generated mixture sample as x,y CSV");
    GeneratorFlags sim_gen;
    sim_gen.add(sim, true);
    add_output(sim);
    add_seed(sim);

    // prep
    auto* prep = app.add_subcommand("prep", "strided log returns and their ACF from a price file");
    std::string prep_input;
    std::string acf_output;
    PrepOptions prep_opts;
    prep->add_option("--input", prep_input, "price CSV")->required();
    prep->add_option("--output", output, "returns CSV")->required();
    prep->add_option("--acf-output", acf_output, "ACF CSV (default <output stem>_acf.csv)");
    prep->add_option("--price-col", prep_opts.price_cols, "price column(s); default every numeric column");
    prep->add_option("--stride", prep_opts.stride, "return horizon in rows")->check(CLI::PositiveNumber);
    prep->add_option("--max-lag", prep_opts.max_lag, "largest ACF lag")->check(CLI::PositiveNumber);

    // support
    auto* sup = app.add_subcommand("support", "estimate the angular support [a, b]");
    SourceFlags sup_src;
    SupportOptions sup_opts;
    sup_src.add(sup, true);
    add_output(sup);
    add_seed(sup);
    add_format(sup);
    sup->add_option("--k", sup_opts.k, "number of upper order statistics (default min(ceil(n/10), 100))");
    sup->add_option("--lambda", sup_opts.lambda, "penalty weight");
    sup->add_option("--grid", sup_opts.grid, "coarse grid points per axis");
    sup->add_flag("--trace", sup_opts.trace, "include every objective evaluation (JSON only)");

    // test
    auto* tst = app.add_subcommand("test", "bootstrap tests for strong, full and weak dependence");
    SourceFlags tst_src;
    TestOptions tst_opts;
    std::string tst_cone;
    tst_src.add(tst, true);
    add_output(tst);
    add_seed(tst);
    add_format(tst);
    tst->add_option("--which", tst_opts.which, "strong, full, weak or all")
        ->check(CLI::IsMember({"strong", "full", "weak", "all"}));
    tst->add_option("--cone", tst_cone, "cone a,b for strong/weak; estimated when omitted");
    tst->add_option("--k", tst_opts.k, "k_n (default min(ceil(n/10), 100))");
    tst->add_option("--mn", tst_opts.m, "resample size (default round(n/k))");
    tst->add_option("--kmn", tst_opts.k_m, "order statistics per resample (default max(5, round(0.05 m)))");
    tst->add_option("--B", tst_opts.B, "number of resamples");
    tst->add_option("--lambda", tst_opts.lambda, "penalty weight when the cone is estimated");
    tst->add_option("--alpha-sig", tst_opts.alpha_sig, "significance level");
    tst->add_option("--threads", tst_opts.threads, "worker cap (0 = all cores)");
    tst->add_option("--grid", tst_opts.grid, "coarse grid points per axis when the cone is estimated");

    // diamond
    auto* dia = app.add_subcommand("diamond", "top-k points on the L1 unit diamond and their angle histogram");
    SourceFlags dia_src;
    DiamondOptions dia_opts;
    std::string hist_output;
    dia_src.add(dia, false);
    dia->add_option("--output", output, "points CSV")->required();
    dia->add_option("--hist-output", hist_output, "histogram CSV (default <output stem>_hist.csv)");
    add_seed(dia);
    dia->add_option("--k", dia_opts.k, "number of largest points by |x|+|y|");
    dia->add_option("--bins", dia_opts.bins, "histogram bins on [0, 1]");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (*sim) {
            std::ostringstream out;
            cmd_simulate(*sim_gen.spec(), sim_gen.n, resolve_seed(seed), out);
            emit(output, out.str());
        } else if (*prep) {
            std::ostringstream out, acf_out;
            cmd_prep(prep_input, prep_opts, out, acf_out, std::cerr);
            emit(output, out.str());
            emit(acf_output.empty() ? sibling_path(output, "_acf") : acf_output, acf_out.str());
        } else if (*sup) {
            sup_opts.format = parse_format(format);
            const BivariateSample s = load_sample(sup_src.source(), resolve_seed(seed));
            std::ostringstream out;
            cmd_support(s, sup_opts, out);
            emit(output, out.str());
        } else if (*tst) {
            tst_opts.format = parse_format(format);
            tst_opts.seed = resolve_seed(seed);
            if (!tst_cone.empty()) tst_opts.cone = parse_cone(tst_cone);
            const BivariateSample s = load_sample(tst_src.source(), tst_opts.seed);
            std::ostringstream out;
            cmd_test(s, tst_opts, out);
            emit(output, out.str());
        } else if (*dia) {
            const auto data = load_pairs(dia_src.source(), resolve_seed(seed));
            std::ostringstream out, hist;
            cmd_diamond(data, dia_opts, out, hist);
            emit(output, out.str());
            emit(hist_output.empty() ? sibling_path(output, "_hist") : hist_output, hist.str());
        }
    } catch (const std::exception& e) {
        std::cerr << "taildep: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace taildep::cli
