#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "qmin/random.hpp"
#include "qmin/stats.hpp"

using namespace qmin::stats;
using Catch::Approx;

TEST_CASE("mean_estimate", "[stats]") {
    const std::vector<double> xs{1, 2, 3, 4};
    const auto m = mean_estimate(xs);
    CHECK(m.mean == 2.5);
    CHECK(m.se == Approx(std::sqrt(5.0 / 3.0 / 4.0)));
    CHECK(mean_estimate(std::vector<double>{}).count == 0);
}

TEST_CASE("wilson interval", "[stats]") {
    // z = 2.5758293; 50/100 -> centre 0.5
    const auto w = wilson_interval(50, 100, 0.99);
    CHECK((w.lo + w.hi) / 2 == Approx(0.5));
    CHECK(w.lo == Approx(0.3762).margin(1e-3));
    const auto all = wilson_interval(10000, 10000, 0.99);
    CHECK(all.hi == 1.0);
    CHECK(all.lo == Approx(1.0 / (1.0 + 2.5758293035489 * 2.5758293035489 / 10000)).epsilon(1e-9));
}

TEST_CASE("chi-square homogeneity detects different laws", "[stats]") {
    qmin::Rng rng{1};
    std::map<std::int64_t, std::size_t> a, b, c;
    for (int i = 0; i < 20000; ++i) {
        ++a[static_cast<std::int64_t>(qmin::uniform_index(rng, 0, 9))];
        ++b[static_cast<std::int64_t>(qmin::uniform_index(rng, 0, 9))];
        ++c[static_cast<std::int64_t>(qmin::uniform_index(rng, 0, 10) % 10)];  // 0 doubled
    }
    CHECK(chi_square_homogeneity(a, b).p_value > 1e-3);
    CHECK(chi_square_homogeneity(a, c).p_value < 1e-6);
    CHECK(chi_square_homogeneity(a, b).dof == 9);
}

TEST_CASE("chi-square pools sparse categories", "[stats]") {
    std::map<std::int64_t, std::size_t> a{{0, 100}, {1, 1}, {2, 1}, {3, 100}};
    std::map<std::int64_t, std::size_t> b{{0, 100}, {1, 2}, {3, 100}};
    const auto chi = chi_square_homogeneity(a, b);
    CHECK(chi.dof == 1);
    CHECK(chi.p_value > 0.5);
}

TEST_CASE("chi-square uniform", "[stats]") {
    const std::vector<std::size_t> even{100, 100, 100, 100};
    CHECK(chi_square_uniform(even).statistic == 0.0);
    CHECK(chi_square_uniform(even).p_value == 1.0);
    const std::vector<std::size_t> skew{400, 0, 0, 0};
    CHECK(chi_square_uniform(skew).p_value < 1e-10);
}
