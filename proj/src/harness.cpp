#include "qmin/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qmin/bounds.hpp"
#include "qmin/parallel.hpp"

#ifndef QMIN_BUILD_ID
#define QMIN_BUILD_ID "unknown"
#endif

namespace qmin::harness {
namespace {

using Json = nlohmann::ordered_json;

// Stream layout: every size gets its own master, and each independent task
// under it a fixed sub-index.
constexpr std::uint64_t kMeasureStreams = 1'000'000;
constexpr std::uint64_t kSearchStreams = 2'000'000;
constexpr std::uint64_t kFullAlgorithmStreams = 3'000'000;

std::uint64_t size_seed(const ExperimentConfig& config, std::size_t n) { return derive_seed(config.seed, n); }

Table table_for_run(const ExperimentConfig& config, std::size_t n, Rng& rng) {
    if (config.table) return *config.table;
    return generate_table(n, config.mode, rng);
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

std::string cell(const Json& v) {
    if (v.is_null()) return {};
    if (v.is_string()) return v.get<std::string>();
    return v.dump();
}

struct Table2D {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::initializer_list<Json> values) {
        std::vector<std::string> row;
        row.reserve(values.size());
        for (const auto& v : values) row.push_back(cell(v));
        rows.push_back(std::move(row));
    }

    std::string render() const {
        std::ostringstream out;
        auto line = [&](const std::vector<std::string>& fields) {
            for (std::size_t i = 0; i < fields.size(); ++i) out << (i ? "," : "") << fields[i];
            out << '\n';
        };
        line(header);
        for (const auto& r : rows) line(r);
        return out.str();
    }
};

Json mean_json(const stats::MeanEstimate& m) { return Json{{"mean", m.mean}, {"se", m.se}, {"count", m.count}}; }

Json chi_json(const stats::ChiSquare& c) {
    return Json{{"statistic", c.statistic}, {"dof", c.dof}, {"p_value", c.p_value}};
}

Json config_json(const ExperimentConfig& config) {
    Json j;
    j["experiment"] = to_string(config.experiment);
    j["n"] = config.sizes();
    j["runs"] = config.runs;
    j["seed"] = config.seed;
    j["backend"] = to_string(config.backend);
    j["lambda"] = config.lambda;
    j["mode"] = config.table ? std::string("table") : mode_name(config.mode);
    j["boost"] = config.boost;
    j["boost_mode"] = config.boost_mode == BoostMode::Repeat ? "repeat" : "timeout";
    j["timeout"] = optional_number(config.timeout);
    j["infinite"] = config.infinite;
    if (config.experiment == Experiment::Bounds) j["sweep_max"] = config.sweep_max;
    j["init_charge_policy"] = "lg N charged when a pass starts; a pass starts only if lg N fits under the cap";
    return j;
}

Json record_json(const RunRecord& r) {
    return Json{{"n", r.n},
                {"seed", r.seed},
                {"backend", to_string(r.backend)},
                {"lambda", r.lambda},
                {"cap", optional_number(r.cap)},
                {"returned_index", r.returned_index},
                {"returned_is_minimum", r.returned_is_minimum},
                {"first_hit_time", optional_number(r.first_hit_time)},
                {"total_spent", r.total_spent},
                {"loop_passes", r.loop_passes}};
}

// ---- rank selection --------------------------------------------------

struct RankGroup {
    std::uint32_t rank;
    std::uint32_t size;
    auto operator<=>(const RankGroup&) const = default;
};

struct RankSelectionRun {
    std::vector<RankGroup> chosen;
    std::vector<RankGroup> groups;  // empty for distinct tables: every rank, size 1
};

struct RankTally {
    std::size_t chosen = 0;
    std::size_t represented = 0;
};

}  // namespace

std::string_view to_string(Experiment e) noexcept {
    switch (e) {
        case Experiment::Run: return "run";
        case Experiment::Lemma1: return "lemma1";
        case Experiment::Success: return "success";
        case Experiment::Cost: return "cost";
        case Experiment::Equivalence: return "equivalence";
        case Experiment::Bounds: return "bounds";
    }
    return "unknown";
}

std::string_view build_id() noexcept { return QMIN_BUILD_ID; }

TableMode parse_mode(std::string_view text) {
    if (text == "distinct") return DistinctPermutation{};
    if (text.starts_with("dup:")) {
        auto digits = text.substr(4);
        std::size_t k = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec == std::errc{} && ptr == digits.data() + digits.size() && k >= 1) return Duplicates{k};
    }
    throw std::invalid_argument("mode must be 'distinct' or 'dup:<k>' with k >= 1");
}

std::string mode_name(const TableMode& mode) {
    if (std::holds_alternative<DistinctPermutation>(mode)) return "distinct";
    return "dup:" + std::to_string(std::get<Duplicates>(mode).distinct_values);
}

SearchParams ExperimentConfig::search_params() const {
    SearchParams p;
    p.lambda = lambda;
    return p;
}

std::vector<std::size_t> ExperimentConfig::sizes() const {
    if (table) return {table->size()};
    return n;
}

void ExperimentConfig::validate() const {
    search_params().validate();
    if (runs == 0) throw std::invalid_argument("--runs must be positive");
    if (boost == 0) throw std::invalid_argument("--boost must be positive");
    if (timeout && !(*timeout >= 0.0)) throw std::invalid_argument("--timeout must be non-negative");
    const auto ns = sizes();
    if (ns.empty()) throw std::invalid_argument("at least one --n is required");
    for (auto size : ns) {
        if (size == 0) throw std::invalid_argument("--n must be positive");
        if (experiment == Experiment::Bounds && size < 2) throw std::invalid_argument("bounds need n >= 2");
        if (backend == BackendKind::ExactStatevector && size > kExactBackendMaxN)
            throw std::invalid_argument("exact backend is limited to n <= 16384");
        if (experiment == Experiment::Equivalence && size > kEquivalenceMaxN)
            throw std::invalid_argument("equivalence runs the exact backend and is limited to n <= 1024");
        if (auto* d = std::get_if<Duplicates>(&mode); d && !table && (d->distinct_values > size))
            throw std::invalid_argument("dup:<k> needs k <= n");
    }
}

std::vector<RunRecord> run_records(const ExperimentConfig& config, std::size_t n) {
    const auto params = config.search_params();
    const auto master = size_seed(config, n);
    return run_indexed<RunRecord>(config.runs, config.workers, [&](std::size_t i) {
        Rng rng = make_stream(master, i);
        const Table table = table_for_run(config, n, rng);
        RunResult res;
        if (config.infinite)
            res = find_minimum_infinite(table, config.backend, params, rng);
        else if (config.boost > 1 || config.boost_mode == BoostMode::ExtendedTimeout)
            res = find_minimum_boosted(table, config.backend, params, config.boost, rng, config.boost_mode);
        else
            res = find_minimum(table, config.backend, params, config.timeout, rng);
        return RunRecord{n,
                         config.seed,
                         config.backend,
                         config.lambda,
                         res.cap,
                         res.returned_index,
                         res.returned_is_minimum,
                         res.first_hit_time,
                         res.total_spent,
                         res.loop_passes};
    });
}

RankSelectionReport estimate_rank_selection(const ExperimentConfig& config, std::size_t n) {
    const auto params = config.search_params();
    const auto master = size_seed(config, n);
    const auto records = run_indexed<RankSelectionRun>(config.runs, config.workers, [&](std::size_t i) {
        Rng rng = make_stream(master, i);
        const Table table = table_for_run(config, n, rng);
        const RunResult res = find_minimum_infinite(table, config.backend, params, rng);
        RankSelectionRun rec;
        auto group_of = [&](std::size_t idx) {
            const Value v = table[idx];
            return RankGroup{static_cast<std::uint32_t>(1 + table.count_less(v)),
                             static_cast<std::uint32_t>(table.count_equal(v))};
        };
        for (const auto& change : res.history) rec.chosen.push_back(group_of(change.y));
        if (!table.distinct()) {
            for (std::size_t pos = 0; pos < table.size();) {
                const auto g = group_of(table.sorted_index(pos));
                rec.groups.push_back(g);
                pos += g.size;
            }
        }
        return rec;
    });

    std::map<RankGroup, RankTally> tally;
    std::size_t distinct_runs = 0;
    for (const auto& rec : records) {
        for (auto g : rec.chosen) ++tally[g].chosen;
        if (rec.groups.empty())
            ++distinct_runs;
        else
            for (auto g : rec.groups) ++tally[g].represented;
    }
    if (distinct_runs > 0)
        for (std::uint32_t r = 1; r <= n; ++r) tally[{r, 1}].represented += distinct_runs;

    RankSelectionReport rep;
    rep.n = n;
    rep.runs = config.runs;
    rep.equality = std::holds_alternative<DistinctPermutation>(config.mode) && !config.table;
    if (config.table) rep.equality = config.table->distinct();

    // Per run, X_r = (chosen indices of rank r) / (group size), averaged over
    // runs in which rank r occurs. At most one index of a group is chosen per run.
    std::map<std::uint32_t, std::array<double, 3>> by_rank;  // sum X, sum X^2, runs
    for (const auto& [g, c] : tally) {
        auto& acc = by_rank[g.rank];
        const double s = g.size;
        acc[0] += static_cast<double>(c.chosen) / s;
        acc[1] += static_cast<double>(c.chosen) / (s * s);
        acc[2] += static_cast<double>(c.represented);
    }
    const std::size_t min_samples = std::min(kMinRankSamples, config.runs);
    for (const auto& [r, acc] : by_rank) {
        RankRow row;
        row.rank = r;
        row.samples = static_cast<std::size_t>(acc[2]);
        row.theoretical = 1.0 / static_cast<double>(r);
        if (row.samples == 0) continue;
        const double m = acc[2];
        row.empirical = acc[0] / m;
        if (m > 1.0) row.se = std::sqrt(std::max(0.0, (acc[1] - m * row.empirical * row.empirical) / (m - 1.0)) / m);
        row.checked = row.samples >= min_samples;
        const double tol = std::max(0.01, 3.0 * row.se);
        if (row.checked) {
            row.pass = rep.equality ? std::abs(row.empirical - row.theoretical) <= tol
                                    : row.empirical <= row.theoretical + tol;
            if (rep.equality && r == 1) row.pass = row.pass && row.empirical == 1.0;
        }
        rep.passed = rep.passed && row.pass;
        rep.rows.push_back(row);
    }
    return rep;
}

SuccessReport estimate_success_rate(const ExperimentConfig& config, std::size_t n) {
    const auto records = run_records(config, n);
    SuccessReport rep;
    rep.n = n;
    rep.runs = config.runs;
    rep.boost = config.boost;
    std::vector<double> spent, passes;
    spent.reserve(records.size());
    passes.reserve(records.size());
    for (const auto& r : records) {
        rep.successes += r.returned_is_minimum ? 1 : 0;
        spent.push_back(r.total_spent);
        passes.push_back(static_cast<double>(r.loop_passes));
    }
    rep.fraction = static_cast<double>(rep.successes) / static_cast<double>(rep.runs);
    rep.se = stats::proportion_se(rep.fraction, rep.runs);
    rep.wilson99 = stats::wilson_interval(rep.successes, rep.runs, 0.99);
    rep.spent = stats::mean_estimate(spent);
    rep.passes = stats::mean_estimate(passes);
    if (config.boost > 1) {
        rep.target = 1.0 - std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(config.boost, 1000)));
        rep.passed = rep.fraction + 3.0 * rep.se >= rep.target;
    } else {
        rep.target = 0.5;
        rep.passed = rep.wilson99.lo >= rep.target;
    }
    return rep;
}

CostReport estimate_expected_cost(const ExperimentConfig& config, std::size_t n) {
    const auto params = config.search_params();
    const auto master = size_seed(config, n);
    struct CostRun {
        double first_hit = 0.0;
        double search = 0.0;
        double init = 0.0;
        double passes = 0.0;
    };
    const double lg_n = std::log2(static_cast<double>(n));
    const auto records = run_indexed<CostRun>(config.runs, config.workers, [&](std::size_t i) {
        Rng rng = make_stream(master, i);
        const Table table = table_for_run(config, n, rng);
        const RunResult res = find_minimum_infinite(table, config.backend, params, rng);
        return CostRun{res.first_hit_time.value_or(res.total_spent), static_cast<double>(res.search_iterations),
                       static_cast<double>(res.loop_passes) * lg_n, static_cast<double>(res.loop_passes)};
    });
    std::vector<double> first_hit, search, init, passes;
    for (const auto& r : records) {
        first_hit.push_back(r.first_hit);
        search.push_back(r.search);
        init.push_back(r.init);
        passes.push_back(r.passes);
    }
    CostReport rep;
    rep.n = n;
    rep.runs = config.runs;
    rep.first_hit = stats::mean_estimate(first_hit);
    rep.search_steps = stats::mean_estimate(search);
    rep.init_steps = stats::mean_estimate(init);
    rep.passes = stats::mean_estimate(passes);
    if (n >= 2) {
        rep.m0 = bounds::m0(n);
        rep.search_bound = bounds::expected_search_cost_bound(n);
        rep.init_bound = bounds::expected_init_cost(n);
    }
    rep.m0_pass = rep.first_hit.mean + 3.0 * rep.first_hit.se <= rep.m0 || n == 1;
    rep.search_pass = rep.search_steps.mean + 3.0 * rep.search_steps.se <= rep.search_bound || n == 1;
    rep.passed = rep.m0_pass && rep.search_pass;
    return rep;
}

EquivalenceReport backend_equivalence(const ExperimentConfig& config, std::size_t n) {
    const auto params = config.search_params();
    const auto master = size_seed(config, n);
    EquivalenceReport rep;
    rep.n = n;
    rep.runs = config.runs;

    for (std::size_t t = 0; t <= n; ++t) {
        const auto oracle = SubsetOracle::prefix(n, t);
        auto marked = [&](std::size_t i) { return oracle.is_marked(i); };
        StateVector state = uniform_state(n);
        for (std::size_t j = 0; j <= kClosedFormMaxJ; ++j) {
            if (j > 0) state = grover_iterate(std::move(state), marked);
            const double err = std::abs(state.marked_probability(marked) - success_probability(n, t, j));
            rep.closed_form_max_error = std::max(rep.closed_form_max_error, err);
        }
    }
    rep.closed_form_pass = rep.closed_form_max_error <= 1e-9;

    struct MeasureCell {
        double z = 0.0;
        bool pass = true;
    };
    const std::size_t measure_cells = (n + 1) * (kMeasurementMaxJ + 1);
    const auto measured = run_indexed<MeasureCell>(measure_cells, config.workers, [&](std::size_t c) {
        const std::size_t t = c / (kMeasurementMaxJ + 1);
        const std::size_t j = c % (kMeasurementMaxJ + 1);
        Rng rng = make_stream(master, kMeasureStreams + c);
        const auto oracle = SubsetOracle::random(n, t, rng);
        auto marked = [&](std::size_t i) { return oracle.is_marked(i); };
        StateVector state = uniform_state(n);
        for (std::size_t k = 0; k < j; ++k) state = grover_iterate(std::move(state), marked);
        std::size_t hits = 0;
        for (std::size_t r = 0; r < config.runs; ++r) hits += oracle.is_marked(measure(state, rng)) ? 1 : 0;
        const double p = success_probability(n, t, j);
        const double p_hat = static_cast<double>(hits) / static_cast<double>(config.runs);
        const double se = stats::proportion_se(p, config.runs);
        const double dev = std::abs(p_hat - p);
        if (se < 1e-12) return MeasureCell{dev > 1e-9 ? 1e9 : 0.0, dev <= 1e-9};
        return MeasureCell{dev / se, dev <= 4.0 * se};
    });
    for (const auto& m : measured) {
        rep.measurement_max_z = std::max(rep.measurement_max_z, m.z);
        rep.measurement_cells_over += m.pass ? 0 : 1;
    }
    rep.measurement_pass = rep.measurement_cells_over == 0;

    rep.search_budget = 2.0 * std::sqrt(static_cast<double>(n));
    rep.cells = run_indexed<SearchCell>(n + 1, config.workers, [&](std::size_t t) {
        Rng oracle_rng = make_stream(master, kSearchStreams + 3 * t);
        const auto oracle = SubsetOracle::random(n, t, oracle_rng);
        std::vector<std::size_t> position(n, 0);
        std::size_t marked_seen = 0, unmarked_seen = 0;
        for (std::size_t i = 0; i < n; ++i) position[i] = oracle.is_marked(i) ? marked_seen++ : unmarked_seen++;

        SearchCell cell;
        cell.t = t;
        std::map<std::int64_t, std::size_t> joint[2];
        std::size_t successes[2] = {0, 0};
        for (int b = 0; b < 2; ++b) {
            const auto backend = b == 0 ? BackendKind::ExactStatevector : BackendKind::AnalyticSampler;
            Rng rng = make_stream(master, kSearchStreams + 3 * t + 1 + b);
            std::vector<std::size_t> marked_counts(t, 0), unmarked_counts(n - t, 0);
            for (std::size_t r = 0; r < config.runs; ++r) {
                TimeBudget budget{rep.search_budget};
                const auto out = exponential_search(oracle, params, budget, backend, rng);
                const bool hit = oracle.is_marked(out.index);
                (hit ? marked_counts : unmarked_counts)[position[out.index]]++;
                successes[b] += hit ? 1 : 0;
                const std::int64_t cls = (hit ? 2 : 0) + (out.interrupted ? 1 : 0);
                ++joint[b][cls * 1'000'000'000 + static_cast<std::int64_t>(out.iterations_used)];
            }
            (b == 0 ? cell.marked_uniform_exact : cell.marked_uniform_analytic) = stats::chi_square_uniform(marked_counts);
            (b == 0 ? cell.unmarked_uniform_exact : cell.unmarked_uniform_analytic) =
                stats::chi_square_uniform(unmarked_counts);
        }
        cell.joint = stats::chi_square_homogeneity(joint[0], joint[1]);
        cell.success_exact = static_cast<double>(successes[0]) / static_cast<double>(config.runs);
        cell.success_analytic = static_cast<double>(successes[1]) / static_cast<double>(config.runs);
        cell.pass = cell.joint.p_value > kChiSquareAlpha && cell.marked_uniform_exact.p_value > kChiSquareAlpha &&
                    cell.marked_uniform_analytic.p_value > kChiSquareAlpha &&
                    cell.unmarked_uniform_exact.p_value > kChiSquareAlpha &&
                    cell.unmarked_uniform_analytic.p_value > kChiSquareAlpha;
        if (t == 0) cell.pass = cell.pass && successes[0] == 0 && successes[1] == 0;
        return cell;
    });
    // Per-cell verdicts use kChiSquareAlpha; the report as a whole controls
    // the family-wise rate over all of its tests.
    bool empty_class_ok = true;
    for (const auto& c : rep.cells) {
        for (auto* chi : {&c.joint, &c.marked_uniform_exact, &c.marked_uniform_analytic, &c.unmarked_uniform_exact,
                          &c.unmarked_uniform_analytic}) {
            rep.min_p_value = std::min(rep.min_p_value, chi->p_value);
            rep.chi_square_tests += chi->dof > 0 ? 1 : 0;
        }
        if (c.t == 0) empty_class_ok = empty_class_ok && c.success_exact == 0.0 && c.success_analytic == 0.0;
    }
    rep.family_alpha = kChiSquareAlpha / static_cast<double>(std::max<std::size_t>(rep.chi_square_tests, 1));
    rep.search_pass = empty_class_ok && rep.min_p_value > rep.family_alpha;

    std::size_t full_successes[2] = {0, 0};
    for (int b = 0; b < 2; ++b) {
        const auto backend = b == 0 ? BackendKind::ExactStatevector : BackendKind::AnalyticSampler;
        const auto stream = derive_seed(master, kFullAlgorithmStreams + static_cast<std::uint64_t>(b));
        const auto hits = run_indexed<char>(config.runs, config.workers, [&](std::size_t i) {
            Rng rng = make_stream(stream, i);
            const Table table = table_for_run(config, n, rng);
            return static_cast<char>(find_minimum(table, backend, params, std::nullopt, rng).returned_is_minimum);
        });
        full_successes[b] = static_cast<std::size_t>(std::count(hits.begin(), hits.end(), 1));
    }
    const double runs = static_cast<double>(config.runs);
    rep.full_success_exact = static_cast<double>(full_successes[0]) / runs;
    rep.full_success_analytic = static_cast<double>(full_successes[1]) / runs;
    const double pooled = (rep.full_success_exact + rep.full_success_analytic) / 2.0;
    rep.full_joint_se = std::sqrt(std::max(0.0, 2.0 * pooled * (1.0 - pooled) / runs));
    rep.full_pass = std::abs(rep.full_success_exact - rep.full_success_analytic) <= 3.0 * rep.full_joint_se;

    rep.passed = rep.closed_form_pass && rep.measurement_pass && rep.search_pass && rep.full_pass;
    return rep;
}

Report execute(const ExperimentConfig& config, bool timing) {
    config.validate();
    const auto started = std::chrono::steady_clock::now();
    Json doc;
    doc["experiment"] = to_string(config.experiment);
    doc["build"] = build_id();
    doc["config"] = config_json(config);
    Table2D csv;
    bool passed = true;
    Json results = Json::array();

    switch (config.experiment) {
        case Experiment::Run: {
            csv.header = {"n", "seed", "backend", "lambda", "cap", "returned_index", "returned_is_minimum",
                          "first_hit_time", "total_spent", "loop_passes"};
            for (auto n : config.sizes()) {
                for (const auto& r : run_records(config, n)) {
                    Json rec = record_json(r);
                    std::vector<std::string> row;
                    for (auto& [k, v] : rec.items()) row.push_back(cell(v));
                    csv.rows.push_back(std::move(row));
                    results.push_back(std::move(rec));
                }
            }
            doc["records"] = std::move(results);
            break;
        }
        case Experiment::Lemma1: {
            csv.header = {"n", "rank", "empirical", "theoretical", "se", "samples", "checked", "pass"};
            for (auto n : config.sizes()) {
                const auto rep = estimate_rank_selection(config, n);
                Json ranks = Json::array();
                for (const auto& row : rep.rows) {
                    ranks.push_back(Json{{"rank", row.rank},
                                         {"empirical", row.empirical},
                                         {"theoretical", row.theoretical},
                                         {"se", row.se},
                                         {"samples", row.samples},
                                         {"checked", row.checked},
                                         {"pass", row.pass}});
                    csv.add({rep.n, row.rank, row.empirical, row.theoretical, row.se, row.samples, row.checked,
                             row.pass});
                }
                results.push_back(Json{{"n", rep.n},
                                       {"runs", rep.runs},
                                       {"check", rep.equality ? "equality" : "upper_bound"},
                                       {"ranks", std::move(ranks)},
                                       {"passed", rep.passed}});
                passed = passed && rep.passed;
            }
            doc["results"] = std::move(results);
            break;
        }
        case Experiment::Success: {
            csv.header = {"n", "runs", "boost", "successes", "fraction", "se", "wilson99_lo", "wilson99_hi",
                          "target", "mean_spent", "mean_loop_passes", "pass"};
            for (auto n : config.sizes()) {
                const auto rep = estimate_success_rate(config, n);
                results.push_back(Json{{"n", rep.n},
                                       {"runs", rep.runs},
                                       {"boost", rep.boost},
                                       {"successes", rep.successes},
                                       {"fraction", rep.fraction},
                                       {"se", rep.se},
                                       {"wilson99", Json{{"lo", rep.wilson99.lo}, {"hi", rep.wilson99.hi}}},
                                       {"target", rep.target},
                                       {"spent", mean_json(rep.spent)},
                                       {"loop_passes", mean_json(rep.passes)},
                                       {"passed", rep.passed}});
                csv.add({rep.n, rep.runs, rep.boost, rep.successes, rep.fraction, rep.se, rep.wilson99.lo,
                         rep.wilson99.hi, rep.target, rep.spent.mean, rep.passes.mean, rep.passed});
                passed = passed && rep.passed;
            }
            doc["results"] = std::move(results);
            break;
        }
        case Experiment::Cost: {
            csv.header = {"n", "runs", "mean_first_hit", "se_first_hit", "m0", "mean_search", "se_search",
                          "search_bound", "mean_init", "init_bound", "mean_loop_passes", "pass"};
            for (auto n : config.sizes()) {
                const auto rep = estimate_expected_cost(config, n);
                results.push_back(Json{{"n", rep.n},
                                       {"runs", rep.runs},
                                       {"first_hit_time", mean_json(rep.first_hit)},
                                       {"m0", rep.m0},
                                       {"search_steps", mean_json(rep.search_steps)},
                                       {"search_bound", rep.search_bound},
                                       {"init_steps", mean_json(rep.init_steps)},
                                       {"init_bound", rep.init_bound},
                                       {"loop_passes", mean_json(rep.passes)},
                                       {"m0_pass", rep.m0_pass},
                                       {"search_pass", rep.search_pass},
                                       {"passed", rep.passed}});
                csv.add({rep.n, rep.runs, rep.first_hit.mean, rep.first_hit.se, rep.m0, rep.search_steps.mean,
                         rep.search_steps.se, rep.search_bound, rep.init_steps.mean, rep.init_bound,
                         rep.passes.mean, rep.passed});
                passed = passed && rep.passed;
            }
            doc["results"] = std::move(results);
            break;
        }
        case Experiment::Equivalence: {
            csv.header = {"n", "t", "chi2", "dof", "p_value", "marked_uniform_p_exact", "marked_uniform_p_analytic",
                          "success_exact", "success_analytic", "pass"};
            for (auto n : config.sizes()) {
                const auto rep = backend_equivalence(config, n);
                Json cells = Json::array();
                for (const auto& c : rep.cells) {
                    cells.push_back(Json{{"t", c.t},
                                         {"joint", chi_json(c.joint)},
                                         {"marked_uniform_exact", chi_json(c.marked_uniform_exact)},
                                         {"marked_uniform_analytic", chi_json(c.marked_uniform_analytic)},
                                         {"unmarked_uniform_exact", chi_json(c.unmarked_uniform_exact)},
                                         {"unmarked_uniform_analytic", chi_json(c.unmarked_uniform_analytic)},
                                         {"success_exact", c.success_exact},
                                         {"success_analytic", c.success_analytic},
                                         {"pass", c.pass}});
                    csv.add({rep.n, c.t, c.joint.statistic, c.joint.dof, c.joint.p_value,
                             c.marked_uniform_exact.p_value, c.marked_uniform_analytic.p_value, c.success_exact,
                             c.success_analytic, c.pass});
                }
                results.push_back(Json{{"n", rep.n},
                                       {"runs", rep.runs},
                                       {"closed_form_max_error", rep.closed_form_max_error},
                                       {"closed_form_pass", rep.closed_form_pass},
                                       {"measurement_max_z", rep.measurement_max_z},
                                       {"measurement_cells_over", rep.measurement_cells_over},
                                       {"measurement_pass", rep.measurement_pass},
                                       {"search_budget", rep.search_budget},
                                       {"search_cells", std::move(cells)},
                                       {"min_p_value", rep.min_p_value},
                                       {"chi_square_tests", rep.chi_square_tests},
                                       {"family_alpha", rep.family_alpha},
                                       {"search_pass", rep.search_pass},
                                       {"full_algorithm",
                                        Json{{"success_exact", rep.full_success_exact},
                                             {"success_analytic", rep.full_success_analytic},
                                             {"joint_se", rep.full_joint_se},
                                             {"pass", rep.full_pass}}},
                                       {"passed", rep.passed}});
                passed = passed && rep.passed;
            }
            doc["results"] = std::move(results);
            break;
        }
        case Experiment::Bounds: {
            csv.header = {"n", "m0", "cap", "cap_minus_2m0", "harmonic", "expected_search_cost",
                          "expected_init_cost", "bbht_t1", "bbht_t_n"};
            for (auto n : config.sizes()) {
                const auto rep = bounds::bound_report(n);
                Json bbht = Json::array();
                for (auto [t, b] : rep.bbht) bbht.push_back(Json{{"t", t}, {"bound", b}});
                results.push_back(Json{{"n", rep.n},
                                       {"m0", rep.m0},
                                       {"cap", rep.cap},
                                       {"cap_minus_2m0", rep.cap - 2.0 * rep.m0},
                                       {"harmonic", rep.harmonic},
                                       {"expected_search_cost", rep.search_cost},
                                       {"expected_init_cost", rep.init_cost},
                                       {"bbht", std::move(bbht)}});
                csv.add({rep.n, rep.m0, rep.cap, rep.cap - 2.0 * rep.m0, rep.harmonic, rep.search_cost,
                         rep.init_cost, rep.bbht.front().second, rep.bbht.back().second});
            }
            doc["results"] = std::move(results);
            if (config.sweep_max >= 2) {
                const auto s = bounds::sweep(config.sweep_max);
                doc["sweep"] = Json{{"n_max", s.n_max},
                                    {"search_bound_holds", s.search_bound_holds},
                                    {"init_bound_holds", s.init_bound_holds},
                                    {"cap_identity_holds", s.cap_identity_holds},
                                    {"min_search_slack", s.min_search_slack},
                                    {"min_init_slack", s.min_init_slack},
                                    {"max_cap_deviation", s.max_cap_deviation},
                                    {"first_violation", s.first_violation},
                                    {"passed", s.passed()}};
                passed = s.passed();
            }
            break;
        }
    }

    doc["passed"] = passed;
    if (timing) {
        const auto elapsed = std::chrono::steady_clock::now() - started;
        doc["duration_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
    }
    return Report{doc.dump(2) + "\n", csv.render(), passed};
}

}  // namespace qmin::harness
