// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "qmin/bounds.hpp"
#include "qmin/grover.hpp"
#include "qmin/harness.hpp"
#include "qmin/qsearch.hpp"
#include "qmin/stats.hpp"

#ifndef QMIN_CLI_PATH
#error "QMIN_CLI_PATH must point at the qmin executable"
#endif

using namespace qmin;
using namespace qmin::harness;

namespace {

constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass = true;
    std::string detail;
};

ExperimentConfig make(Experiment e, std::size_t runs) {
    ExperimentConfig c;
    c.experiment = e;
    c.runs = runs;
    c.seed = kSeed;
    return c;
}

// 1. Rank-selection frequency equals 1/r at N=64 for r = 1..10.
Outcome rank_selection_equality() {
    const auto started = std::chrono::steady_clock::now();
    auto c = make(Experiment::Lemma1, 100000);
    const auto rep = estimate_rank_selection(c, 64);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    Outcome o;
    std::ostringstream d;
    double worst = 0.0;
    for (const auto& row : rep.rows) {
        if (row.rank > 10) break;
        const double dev = std::abs(row.empirical - row.theoretical);
        worst = std::max(worst, dev);
        if (dev > 0.01) o.pass = false;
    }
    if (rep.rows.size() < 10 || rep.rows[0].empirical != 1.0) o.pass = false;
    if (seconds >= 120.0) o.pass = false;
    d << "N=64 runs=1e5 max|p-1/r| (r<=10)=" << worst << " p(1)=" << rep.rows[0].empirical
      << " p(2)=" << rep.rows[1].empirical << " time=" << seconds << "s";
    o.detail = d.str();
    return o;
}

// 2. Success probability at the default cap: 99% Wilson lower bound >= 1/2.
Outcome success_probability_half() {
    Outcome o;
    std::ostringstream d;
    for (std::size_t n : {16u, 64u, 256u, 1024u}) {
        auto c = make(Experiment::Success, 10000);
        const auto rep = estimate_success_rate(c, n);
        if (!(rep.wilson99.lo >= 0.5)) o.pass = false;
        d << "N=" << n << " p=" << rep.fraction << " lo99=" << rep.wilson99.lo << "; ";
    }
    o.detail = d.str();
    return o;
}

// 3. Expected time to hold the minimum: mean + 3 SE <= m0, and sqrt-N scaling.
Outcome expected_cost() {
    Outcome o;
    std::ostringstream d;
    for (std::size_t n : {64u, 1024u}) {
        auto c = make(Experiment::Cost, 10000);
        const auto rep = estimate_expected_cost(c, n);
        const double upper = rep.first_hit.mean + 3.0 * rep.first_hit.se;
        if (!(upper <= bounds::m0(n))) o.pass = false;
        d << "N=" << n << " mean+3se=" << upper << " m0=" << bounds::m0(n) << "; ";
    }
    auto c = make(Experiment::Cost, 10000);
    const double mean_1024 = estimate_expected_cost(c, 1024).first_hit.mean;
    const double mean_4096 = estimate_expected_cost(c, 4096).first_hit.mean;
    const double ratio = mean_4096 / mean_1024;
    if (std::abs(ratio - 2.0) > 0.15 * 2.0) o.pass = false;
    d << "mean(4096)/mean(1024)=" << ratio;
    o.detail = d.str();
    return o;
}

// 4. Exponential search: mean iterations + 3 SE <= 4.5 sqrt(N/t).
Outcome subroutine_bound() {
    Outcome o;
    std::ostringstream d;
    double worst_ratio = 0.0;
    for (std::size_t n : {64u, 256u, 1024u}) {
        for (std::size_t t : {std::size_t{1}, std::size_t{2}, n / 16, n / 4}) {
            const auto oracle = SubsetOracle::prefix(n, t);
            Rng rng = make_stream(kSeed, n * 10000 + t);
            std::vector<double> used;
            used.reserve(100000);
            for (int r = 0; r < 100000; ++r) {
                auto budget = TimeBudget::unlimited();
                const auto out = exponential_search(oracle, SearchParams{}, budget, BackendKind::AnalyticSampler, rng);
                used.push_back(static_cast<double>(out.iterations_used));
            }
            const auto est = stats::mean_estimate(used);
            const double bound = bounds::bbht_expected_iterations_bound(n, t);
            const double upper = est.mean + 3.0 * est.se;
            if (!(upper <= bound)) o.pass = false;
            worst_ratio = std::max(worst_ratio, upper / bound);
        }
    }
    d << "12 cells x 1e5 runs, max (mean+3se)/bound=" << worst_ratio;
    o.detail = d.str();
    return o;
}

// 5. Exact statevector against the closed form.
Outcome closed_form_equivalence() {
    Outcome o;
    double worst = 0.0;
    for (std::size_t n = 1; n <= 32; ++n) {
        for (std::size_t t = 0; t <= n; ++t) {
            auto marked = [t](std::size_t i) { return i < t; };
            StateVector s = uniform_state(n);
            for (std::size_t j = 0; j <= 12; ++j) {
                if (j > 0) s = grover_iterate(std::move(s), marked);
                worst = std::max(worst, std::abs(s.marked_probability(marked) - success_probability(n, t, j)));
            }
        }
    }
    auto one = [](std::size_t i) { return i == 2; };
    const double p4 = grover_iterate(uniform_state(4), one).marked_probability(one);
    o.pass = worst <= 1e-9 && std::abs(p4 - 1.0) <= 1e-12;
    std::ostringstream d;
    d << "max error (N<=32, t<=N, j<=12)=" << worst << " N=4,t=1,j=1 p=" << p4;
    o.detail = d.str();
    return o;
}

// 6. Boosting with c=3 and the duplicates upper bound.
Outcome boosting_and_duplicates() {
    Outcome o;
    std::ostringstream d;
    auto c = make(Experiment::Success, 10000);
    c.boost = 3;
    const auto rep = estimate_success_rate(c, 256);
    if (!(rep.fraction + 3.0 * rep.se >= 1.0 - 1.0 / 8.0)) o.pass = false;
    d << "N=256 c=3 p=" << rep.fraction << " target=0.875; ";

    auto dup = make(Experiment::Lemma1, 100000);
    dup.mode = Duplicates{8};
    const auto ranks = estimate_rank_selection(dup, 64);
    double worst = -1.0;
    std::size_t judged = 0;
    for (const auto& row : ranks.rows) {
        if (!row.checked) continue;
        ++judged;
        worst = std::max(worst, row.empirical - row.theoretical);
        if (row.empirical > row.theoretical + 0.01) o.pass = false;
    }
    if (judged == 0) o.pass = false;
    d << "dup:8 N=64 ranks judged=" << judged << " max(p-1/r)=" << worst;
    o.detail = d.str();
    return o;
}

// 7. Closed-form inequalities over n in [2, 10^6].
Outcome bound_sweep() {
    const auto s = bounds::sweep(1'000'000);
    Outcome o;
    o.pass = s.passed();
    std::ostringstream d;
    d << "min search slack=" << s.min_search_slack << " min init slack=" << s.min_init_slack
      << " max |cap-2m0|=" << s.max_cap_deviation;
    o.detail = d.str();
    return o;
}

std::string capture(const std::string& command, int& status) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    status = pclose(pipe);
    return out;
}

// 8. Every subcommand is byte-identical across invocations and worker counts.
Outcome reproducibility() {
    const std::string cli = QMIN_CLI_PATH;
    const std::vector<std::string> commands{
        "run --n 64 --runs 20",
        "run --n 32 --runs 10 --infinite --format csv",
        "lemma1 --n 32 --runs 3000",
        "lemma1 --n 64 --runs 3000 --mode dup:8 --format csv",
        "success --n 16,64 --runs 2000",
        "success --n 64 --runs 500 --boost 3",
        "cost --n 64 --runs 2000",
        "equivalence --n 8 --runs 500",
        "bounds --n 4,1024 --sweep 1000",
    };
    Outcome o;
    std::size_t identical = 0;
    for (const auto& args : commands) {
        int s1 = 0, s2 = 0, s3 = 0;
        const auto base = cli + " " + args + " --seed 99";
        const auto a = capture(base + " --workers 1", s1);
        const auto b = capture(base + " --workers 1", s2);
        const auto c = capture(base + " --workers 3", s3);
        const bool same = !a.empty() && a == b && a == c && s1 == s2 && s1 == s3;
        if (same)
            ++identical;
        else {
            o.pass = false;
            std::cerr << "  not reproducible: " << args << '\n';
        }
    }
    int usage_status = 0;
    capture(cli + " success --backend quantum 2>/dev/null", usage_status);
    const bool usage_ok = WIFEXITED(usage_status) && WEXITSTATUS(usage_status) == 2;
    if (!usage_ok) o.pass = false;
    std::ostringstream d;
    d << identical << "/" << commands.size() << " subcommands identical across repeats and 1 vs 3 workers"
      << "; usage error exit=" << (WIFEXITED(usage_status) ? WEXITSTATUS(usage_status) : -1);
    o.detail = d.str();
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"1 rank selection p(64,r)=1/r within 0.01, r<=10", rank_selection_equality},
        {"2 success probability >= 1/2 (99% Wilson lower bound)", success_probability_half},
        {"3 expected time to minimum <= m0, sqrt(N) scaling", expected_cost},
        {"4 exponential search iterations <= 4.5 sqrt(N/t)", subroutine_bound},
        {"5 statevector equals sin^2((2j+1) theta)", closed_form_equivalence},
        {"6 boosting c=3 >= 7/8, duplicates p <= 1/r + 0.01", boosting_and_duplicates},
        {"7 analytic bound sweep n in [2, 1e6]", bound_sweep},
        {"8 reproducible reports", reproducibility},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << "  [" << o.detail << "]" << std::endl;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
