#include "qmin/grover.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qmin {

StateVector StateVector::from_amplitudes(std::vector<Amplitude> amplitudes) {
    if (amplitudes.empty()) throw std::invalid_argument("state vector must have at least one amplitude");
    StateVector s{std::move(amplitudes)};
    if (std::abs(s.norm_squared() - 1.0) > kNormTolerance)
        throw std::invalid_argument("state vector is not normalized");
    return s;
}

double StateVector::norm_squared() const noexcept {
    double acc = 0.0;
    for (const auto& a : amps_) acc += std::norm(a);
    return acc;
}

GroverAngle GroverAngle::of(std::size_t n, std::size_t t) {
    if (n == 0) throw std::domain_error("grover angle needs n >= 1");
    if (t > n)
        throw std::domain_error("marked count " + std::to_string(t) + " exceeds table size " + std::to_string(n));
    double theta;
    if (t == 0)
        theta = 0.0;
    else if (t == n)
        theta = std::numbers::pi / 2.0;
    else
        theta = std::asin(std::sqrt(static_cast<double>(t) / static_cast<double>(n)));
    return {theta, n, t};
}

StateVector uniform_state(std::size_t n) {
    if (n == 0) throw std::invalid_argument("uniform_state: dimension must be positive");
    const double a = 1.0 / std::sqrt(static_cast<double>(n));
    return StateVector{std::vector<Amplitude>(n, Amplitude{a, 0.0})};
}

double success_probability(std::size_t n, std::size_t t, std::size_t j) {
    const auto angle = GroverAngle::of(n, t);
    if (t == 0) return 0.0;
    if (j == 0) return static_cast<double>(t) / static_cast<double>(n);
    const double s = std::sin(static_cast<double>(2 * j + 1) * angle.theta);
    return s * s;
}

std::size_t measure(const StateVector& state, Rng& rng) {
    const double u = uniform_unit(rng);
    double cumulative = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double p = state.probability(i);
        if (p > 0.0) last_nonzero = i;
        cumulative += p;
        if (u < cumulative) return i;
    }
    // u landed in the rounding gap above the accumulated mass
    return last_nonzero;
}

}  // namespace qmin
