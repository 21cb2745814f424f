#pragma once

// Monte Carlo experiments over the minimum-finding loop and the report
// rendering shared by the command-line tool and the acceptance suite.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qmin/minfind.hpp"
#include "qmin/qsearch.hpp"
#include "qmin/stats.hpp"
#include "qmin/table.hpp"

namespace qmin::harness {

enum class Experiment { Run, Lemma1, Success, Cost, Equivalence, Bounds };

std::string_view to_string(Experiment e) noexcept;

inline constexpr std::size_t kExactBackendMaxN = std::size_t{1} << 14;
inline constexpr std::size_t kEquivalenceMaxN = std::size_t{1} << 10;

/// Accepts "distinct" or "dup:<k>". Throws std::invalid_argument.
TableMode parse_mode(std::string_view text);
std::string mode_name(const TableMode& mode);

struct ExperimentConfig {
    Experiment experiment = Experiment::Run;
    std::vector<std::size_t> n{64};
    std::size_t runs = 1;
    std::uint64_t seed = 1;
    BackendKind backend = BackendKind::AnalyticSampler;
    double lambda = 8.0 / 7.0;
    TableMode mode = DistinctPermutation{};
    std::size_t boost = 1;
    BoostMode boost_mode = BoostMode::Repeat;
    std::optional<double> timeout;
    bool infinite = false;       // `run` only: use the uncapped loop
    std::optional<Table> table;  // fixed input table; overrides n and mode
    std::size_t sweep_max = 0;   // `bounds` only
    unsigned workers = 1;        // execution detail, never part of a report

    SearchParams search_params() const;
    /// Sizes to evaluate: the fixed table's size if present, else n.
    std::vector<std::size_t> sizes() const;
    /// Throws std::invalid_argument on inconsistent settings.
    void validate() const;
};

/// Fields of one serialized run record.
struct RunRecord {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    BackendKind backend = BackendKind::AnalyticSampler;
    double lambda = 0.0;
    std::optional<double> cap;
    std::size_t returned_index = 0;
    bool returned_is_minimum = false;
    std::optional<double> first_hit_time;
    double total_spent = 0.0;
    std::size_t loop_passes = 0;
};

std::vector<RunRecord> run_records(const ExperimentConfig& config, std::size_t n);

struct RankRow {
    std::size_t rank = 1;
    double empirical = 0.0;    // per-index ever-chosen frequency
    double theoretical = 0.0;  // 1/r
    double se = 0.0;
    std::size_t samples = 0;   // runs in which the rank occurs
    bool checked = false;
    bool pass = true;
};

struct RankSelectionReport {
    std::size_t n = 0;
    std::size_t runs = 0;
    bool equality = true;  // distinct tables: p = 1/r; duplicates: p <= 1/r
    std::vector<RankRow> rows;
    bool passed = true;
};

/// Ranks with fewer represented runs are reported but not judged.
inline constexpr std::size_t kMinRankSamples = 1000;

RankSelectionReport estimate_rank_selection(const ExperimentConfig& config, std::size_t n);

struct SuccessReport {
    std::size_t n = 0;
    std::size_t runs = 0;
    std::size_t boost = 1;
    std::size_t successes = 0;
    double fraction = 0.0;
    double se = 0.0;
    stats::Interval wilson99;
    double target = 0.5;
    stats::MeanEstimate spent;
    stats::MeanEstimate passes;
    bool passed = false;
};

SuccessReport estimate_success_rate(const ExperimentConfig& config, std::size_t n);

struct CostReport {
    std::size_t n = 0;
    std::size_t runs = 0;
    stats::MeanEstimate first_hit;
    stats::MeanEstimate search_steps;
    stats::MeanEstimate init_steps;
    stats::MeanEstimate passes;
    double m0 = 0.0;
    double search_bound = 0.0;
    double init_bound = 0.0;
    bool m0_pass = false;
    bool search_pass = false;
    bool passed = false;
};

CostReport estimate_expected_cost(const ExperimentConfig& config, std::size_t n);

struct SearchCell {
    std::size_t t = 0;
    stats::ChiSquare joint;  // (class, interrupted, iterations_used) exact vs analytic
    stats::ChiSquare marked_uniform_exact, marked_uniform_analytic;
    stats::ChiSquare unmarked_uniform_exact, unmarked_uniform_analytic;
    double success_exact = 0.0;
    double success_analytic = 0.0;
    bool pass = true;  // every test in the cell at kChiSquareAlpha
};

struct EquivalenceReport {
    std::size_t n = 0;
    std::size_t runs = 0;
    double closed_form_max_error = 0.0;  // t in [0,n], j <= 12
    bool closed_form_pass = true;
    double measurement_max_z = 0.0;      // |p_hat - p| / SE over t in [0,n], j <= 8
    std::size_t measurement_cells_over = 0;  // cells beyond 4 SE
    bool measurement_pass = true;
    double search_budget = 0.0;
    std::vector<SearchCell> cells;
    double min_p_value = 1.0;
    std::size_t chi_square_tests = 0;  // tests with dof > 0
    double family_alpha = 0.0;         // kChiSquareAlpha / chi_square_tests
    bool search_pass = true;           // min_p_value > family_alpha
    double full_success_exact = 0.0;
    double full_success_analytic = 0.0;
    double full_joint_se = 0.0;
    bool full_pass = true;
    bool passed = true;
};

inline constexpr double kChiSquareAlpha = 1e-3;
inline constexpr std::size_t kClosedFormMaxJ = 12;
inline constexpr std::size_t kMeasurementMaxJ = 8;

EquivalenceReport backend_equivalence(const ExperimentConfig& config, std::size_t n);

struct Report {
    std::string json;
    std::string csv;
    bool passed = true;
};

/// Runs config.experiment over every size and renders both formats. With
/// `timing`, the JSON gains a wall-clock duration field and is no longer
/// reproducible byte for byte.
Report execute(const ExperimentConfig& config, bool timing = false);

std::string_view build_id() noexcept;

}  // namespace qmin::harness
