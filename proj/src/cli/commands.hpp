// commands.hpp
//
// The subcommands of the taildep tool as plain functions, so they can be
// driven from tests without a process boundary. run() is the argv front end.

#ifndef TAILDEP_CLI_COMMANDS_HPP
#define TAILDEP_CLI_COMMANDS_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "taildep/datagen.hpp"
#include "taildep/geometry.hpp"

namespace taildep::cli {

enum class Format { csv, json };

/// Exactly one of input and generator is set.
struct DataSource {
    std::optional<std::string> input;
    std::optional<gen::MixtureSpec> generator;
    std::size_t n{0};  ///< generator only
    std::string x_col;  ///< empty: "x" if present, else the first column
    std::string y_col;  ///< empty: "y" if present, else the second column
    bool use_abs{true};

    void validate() const;
};

/// Raw (x, y) pairs from a file, signs kept.
std::vector<std::pair<double, double>> load_pairs(const DataSource& src, std::uint64_t seed);

/// Sample for the estimators; negative values are folded when use_abs is set
/// and rejected otherwise.
BivariateSample load_sample(const DataSource& src, std::uint64_t seed);

void write_sample_csv(const BivariateSample& s, std::ostream& out);

void cmd_simulate(const gen::MixtureSpec& spec, std::size_t n, std::uint64_t seed, std::ostream& out);

struct PrepOptions {
    std::vector<std::string> price_cols;  ///< empty: every numeric column
    std::size_t stride{2};
    std::size_t max_lag{20};
};

/// Returns go to out, ACF rows to acf_out. Returns the number of warnings.
std::size_t cmd_prep(const std::string& input, const PrepOptions& opts, std::ostream& out, std::ostream& acf_out,
                     std::ostream& warn);

struct SupportOptions {
    std::optional<std::size_t> k;
    double lambda{1.0};
    std::size_t grid{101};
    bool trace{false};
    Format format{Format::json};
};

void cmd_support(const BivariateSample& s, const SupportOptions& opts, std::ostream& out);

struct TestOptions {
    std::string which{"all"};  ///< strong | full | weak | all
    std::optional<AngularCone> cone;
    std::optional<std::size_t> k, m, k_m;
    std::size_t B{2000};
    double lambda{1.0};
    double alpha_sig{0.05};
    std::uint64_t seed{0};
    unsigned threads{0};
    std::size_t grid{101};
    Format format{Format::json};
};

nlohmann::json run_tests(const BivariateSample& s, const TestOptions& opts);
void cmd_test(const BivariateSample& s, const TestOptions& opts, std::ostream& out);

struct DiamondOptions {
    std::optional<std::size_t> k;
    std::size_t bins{20};
};

/// Points on the L1 diamond go to out, the angle histogram to hist_out.
void cmd_diamond(const std::vector<std::pair<double, double>>& data, const DiamondOptions& opts, std::ostream& out,
                 std::ostream& hist_out);

/// "<dir>/<stem><suffix>.csv" next to path.
std::string sibling_path(const std::string& path, const std::string& suffix);

/// Full command line. Exit status 0 on success, 1 on a failed command, and
/// CLI11's codes on usage errors.
int run(int argc, const char* const* argv);

}  // namespace taildep::cli

#endif  // TAILDEP_CLI_COMMANDS_HPP
