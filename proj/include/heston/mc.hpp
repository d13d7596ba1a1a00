#pragma once

#include "heston/params.hpp"
#include "heston/payoff.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace heston {

struct McConfig {
    std::int64_t n_paths = 100000;
    int n_steps = 100;          // Euler steps
    std::uint64_t seed = 1;
    bool antithetic = true;

    void validate() const;      // n_paths >= 2 and even when antithetic
};

struct McEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::int64_t n_effective = 0;  // independent contributions (pairs when antithetic)
};

/// Terminal state of one path in transformed coordinates.
struct TerminalSample {
    double x;
    double y;
};

/// Full-truncation Euler for the uncorrelated-coordinate SDE: the iterate of
/// Y may go negative, every coefficient sees Y^+, and the terminal Y is
/// reported as Y^+. Path i draws from the counter-based stream (seed, i)
/// (stream i/2 with flipped signs for odd i when antithetic), so results do
/// not depend on the parallel schedule.
std::vector<TerminalSample> simulate_terminal(const HestonParams& p, double x0, double y0,
                                              double maturity, const McConfig& cfg);

/// Discounted estimate of E[g(X_T, Y_T)] from pre-simulated samples.
/// Antithetic pairs (2j, 2j+1) contribute one averaged observation.
McEstimate estimate_from_samples(std::span<const TerminalSample> samples,
                                 const std::function<double(double x, double y)>& g,
                                 double discount, bool antithetic);

/// exp(-r T) E[f] by Feynman-Kac: the independent verification oracle for the
/// hybrid scheme.
McEstimate mc_price(const Payoff& f, const HestonParams& p, double s0, double y0, double maturity,
                    const McConfig& cfg);

}  // namespace heston
