#include "qmin/stats.hpp"

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>
#include <cmath>
#include <stdexcept>

namespace qmin::stats {
namespace {

double upper_tail(double statistic, std::size_t dof) {
    if (dof == 0) return 1.0;
    boost::math::chi_squared dist(static_cast<double>(dof));
    return boost::math::cdf(boost::math::complement(dist, statistic));
}

}  // namespace

MeanEstimate mean_estimate(std::span<const double> samples) {
    MeanEstimate est;
    est.count = samples.size();
    if (samples.empty()) return est;
    double sum = 0.0;
    for (double x : samples) sum += x;
    est.mean = sum / static_cast<double>(samples.size());
    if (samples.size() < 2) return est;
    double ss = 0.0;
    for (double x : samples) ss += (x - est.mean) * (x - est.mean);
    const double var = ss / static_cast<double>(samples.size() - 1);
    est.se = std::sqrt(var / static_cast<double>(samples.size()));
    return est;
}

Interval wilson_interval(std::size_t successes, std::size_t trials, double confidence) {
    if (trials == 0) return {0.0, 1.0};
    if (successes > trials) throw std::invalid_argument("successes exceed trials");
    const double z = boost::math::quantile(boost::math::normal{}, 0.5 + confidence / 2.0);
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

double proportion_se(double p, std::size_t trials) {
    if (trials == 0) return 0.0;
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(trials));
}

ChiSquare chi_square_homogeneity(const std::map<std::int64_t, std::size_t>& a,
                                 const std::map<std::int64_t, std::size_t>& b) {
    std::map<std::int64_t, std::pair<double, double>> joint;
    double na = 0.0, nb = 0.0;
    for (auto [k, c] : a) { joint[k].first += static_cast<double>(c); na += static_cast<double>(c); }
    for (auto [k, c] : b) { joint[k].second += static_cast<double>(c); nb += static_cast<double>(c); }
    if (na == 0.0 || nb == 0.0) return {};
    const double fa = na / (na + nb);
    const double fb = nb / (na + nb);

    std::vector<std::pair<double, double>> cells;
    std::pair<double, double> pending{0.0, 0.0};
    for (const auto& [k, counts] : joint) {
        pending.first += counts.first;
        pending.second += counts.second;
        const double total = pending.first + pending.second;
        if (total * fa >= 5.0 && total * fb >= 5.0) {
            cells.push_back(pending);
            pending = {0.0, 0.0};
        }
    }
    if (pending.first + pending.second > 0.0) {
        if (cells.empty()) cells.push_back(pending);
        else { cells.back().first += pending.first; cells.back().second += pending.second; }
    }

    ChiSquare res;
    for (auto [oa, ob] : cells) {
        const double total = oa + ob;
        const double ea = total * fa, eb = total * fb;
        res.statistic += (oa - ea) * (oa - ea) / ea + (ob - eb) * (ob - eb) / eb;
    }
    res.dof = cells.size() - 1;
    res.p_value = upper_tail(res.statistic, res.dof);
    return res;
}

ChiSquare chi_square_uniform(std::span<const std::size_t> counts, double min_expected) {
    ChiSquare res;
    if (counts.size() < 2) return res;
    double total = 0.0;
    for (auto c : counts) total += static_cast<double>(c);
    if (total == 0.0) return res;
    const double expected = total / static_cast<double>(counts.size());
    if (expected < min_expected) return res;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        res.statistic += d * d / expected;
    }
    res.dof = counts.size() - 1;
    res.p_value = upper_tail(res.statistic, res.dof);
    return res;
}

}  // namespace qmin::stats
