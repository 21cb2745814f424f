#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qmin/bounds.hpp"
#include "qmin/qsearch.hpp"
#include "qmin/stats.hpp"

using namespace qmin;

namespace {

const BackendKind kBackends[] = {BackendKind::ExactStatevector, BackendKind::AnalyticSampler};

}  // namespace

TEST_CASE("all marked: first draw is j=0 and succeeds", "[qsearch]") {
    for (auto backend : kBackends) {
        Rng rng{1};
        const auto oracle = SubsetOracle::prefix(8, 8);
        for (double b : {0.0, 3.0, 100.0}) {
            TimeBudget budget{b};
            const auto out = exponential_search(oracle, SearchParams{}, budget, backend, rng);
            CHECK(out.iterations_used == 0);
            CHECK_FALSE(out.interrupted);
            CHECK(oracle.is_marked(out.index));
        }
    }
}

TEST_CASE("nothing marked: search consumes the whole budget", "[qsearch]") {
    for (auto backend : kBackends) {
        Rng rng{2};
        const auto oracle = SubsetOracle::prefix(16, 0);
        for (std::size_t b : {0u, 1u, 7u, 50u}) {
            TimeBudget budget{static_cast<double>(b)};
            const auto out = exponential_search(oracle, SearchParams{}, budget, backend, rng);
            CHECK(out.interrupted);
            CHECK(out.iterations_used == b);
            CHECK(budget.remaining() == 0.0);
        }
    }
}

TEST_CASE("a single-entry domain can never iterate", "[qsearch]") {
    Rng rng{3};
    TimeBudget budget{10.0};
    const auto out =
        exponential_search(SubsetOracle::prefix(1, 0), SearchParams{}, budget, BackendKind::AnalyticSampler, rng);
    CHECK(out.interrupted);
    CHECK(out.iterations_used == 0);
}

TEST_CASE("SearchParams validation", "[qsearch]") {
    SearchParams p;
    CHECK_NOTHROW(p.validate());
    p.lambda = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.lambda = 4.0 / 3.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p.lambda = 1.2;
    p.m_cap = 0.5;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    CHECK(SearchParams{}.cap_for(1024) == 32.0);
}

TEST_CASE("parse_backend", "[qsearch]") {
    CHECK(parse_backend("exact") == BackendKind::ExactStatevector);
    CHECK(parse_backend("analytic") == BackendKind::AnalyticSampler);
    CHECK_THROWS_AS(parse_backend("gpu"), std::invalid_argument);
}

TEST_CASE("outcome_distribution", "[qsearch]") {
    auto d = outcome_distribution(4, 1, 1);
    CHECK(d.p_success == Catch::Approx(1.0).margin(1e-12));
    CHECK(d.p_index_given_success() == 1.0);
    d = outcome_distribution(10, 3, 0);
    CHECK(d.p_success == Catch::Approx(0.3));
    CHECK(d.p_index_given_success() == Catch::Approx(1.0 / 3));
    CHECK(d.p_index_given_failure() == Catch::Approx(1.0 / 7));
    // sin^2(5 pi/6), cross-checked against the statevector
    d = outcome_distribution(8, 2, 2);
    CHECK(d.p_success == Catch::Approx(0.25).margin(1e-12));
    auto s = uniform_state(8);
    auto marked = [](std::size_t i) { return i < 2; };
    s = grover_iterate(grover_iterate(std::move(s), marked), marked);
    CHECK(s.marked_probability(marked) == Catch::Approx(0.25).margin(1e-12));
    CHECK_THROWS_AS(outcome_distribution(3, 4, 0), std::domain_error);
}

TEST_CASE("iterations never exceed the budget", "[qsearch][property]") {
    Rng rng{4};
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = uniform_index(rng, 1, 64);
        const std::size_t t = uniform_index(rng, 0, n);
        const double b = uniform_unit(rng) * 40.0;
        const auto oracle = SubsetOracle::random(n, t, rng);
        const auto backend = kBackends[trial % 2];
        TimeBudget budget{b};
        const auto out = exponential_search(oracle, SearchParams{}, budget, backend, rng);
        CHECK(static_cast<double>(out.iterations_used) <= b);
        if (!out.interrupted && t >= 1) CHECK(oracle.is_marked(out.index));
        CHECK(budget.remaining() == Catch::Approx(b - out.iterations_used).margin(1e-9));
    }
}

TEST_CASE("N=1024, t=16 mean iterations within 4.5 sqrt(N/t)", "[qsearch]") {
    const auto oracle = SubsetOracle::prefix(1024, 16);
    Rng rng{5};
    std::vector<double> used;
    for (int r = 0; r < 100000; ++r) {
        auto budget = TimeBudget::unlimited();
        used.push_back(static_cast<double>(
            exponential_search(oracle, SearchParams{}, budget, BackendKind::AnalyticSampler, rng).iterations_used));
    }
    const auto est = stats::mean_estimate(used);
    CHECK(est.mean + 3 * est.se <= bounds::bbht_expected_iterations_bound(1024, 16));
    CHECK(bounds::bbht_expected_iterations_bound(1024, 16) == 36.0);
}

TEST_CASE("successful searches return each marked index uniformly", "[qsearch]") {
    for (auto backend : kBackends) {
        Rng rng{6};
        const std::size_t n = 32, t = 5;
        const auto oracle = SubsetOracle::random(n, t, rng);
        std::vector<std::size_t> counts(n, 0);
        const int runs = 20000;
        for (int r = 0; r < runs; ++r) {
            auto budget = TimeBudget::unlimited();
            ++counts[exponential_search(oracle, SearchParams{}, budget, backend, rng).index];
        }
        const double sigma = std::sqrt((1.0 / t) * (1 - 1.0 / t) / runs);
        for (std::size_t i = 0; i < n; ++i) {
            if (oracle.is_marked(i))
                CHECK(std::abs(counts[i] / double(runs) - 1.0 / t) <= 3 * sigma);
            else
                CHECK(counts[i] == 0);
        }
    }
}

TEST_CASE("backends agree on the joint (class, iterations) law", "[qsearch]") {
    // Tight budget so the interrupted branch shows up in the comparison.
    for (auto [n, t] : {std::pair<std::size_t, std::size_t>{8, 1}, {16, 3}, {32, 1}, {32, 10}, {5, 0}}) {
        Rng pick{7};
        const auto oracle = SubsetOracle::random(n, t, pick);
        std::map<std::int64_t, std::size_t> counts[2];
        for (int b = 0; b < 2; ++b) {
            Rng rng{static_cast<std::uint64_t>(100 + b)};
            for (int r = 0; r < 20000; ++r) {
                TimeBudget budget{2.0 * std::sqrt(static_cast<double>(n))};
                const auto out = exponential_search(oracle, SearchParams{}, budget, kBackends[b], rng);
                const std::int64_t cls = (oracle.is_marked(out.index) ? 2 : 0) + (out.interrupted ? 1 : 0);
                ++counts[b][cls * 1000 + static_cast<std::int64_t>(out.iterations_used)];
            }
        }
        const auto chi = stats::chi_square_homogeneity(counts[0], counts[1]);
        INFO("n=" << n << " t=" << t << " chi2=" << chi.statistic << " dof=" << chi.dof);
        CHECK(chi.p_value > 1e-3);
    }
}
