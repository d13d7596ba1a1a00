#include "heston/mc.hpp"

#include "heston/parallel.hpp"
#include "heston/rng.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace heston {

void McConfig::validate() const {
    if (n_paths < 2) throw std::invalid_argument("paths must be >= 2");
    if (antithetic && n_paths % 2 != 0)
        throw std::invalid_argument("paths must be even with antithetic sampling");
    if (n_steps < 1) throw std::invalid_argument("steps must be >= 1");
}

std::vector<TerminalSample> simulate_terminal(const HestonParams& p, double x0, double y0,
                                              double maturity, const McConfig& cfg) {
    p.validate();
    cfg.validate();
    if (!(y0 >= 0.0)) throw std::invalid_argument("y0 must be nonnegative");
    if (!(maturity > 0.0)) throw std::invalid_argument("t must be positive");

    const double dt = maturity / cfg.n_steps;
    const double sqrt_dt = std::sqrt(dt);
    const double rb = p.rho_bar();
    const double c0 = p.r - p.delta - p.rho * p.a / p.sigma;  // drift_x(y) = c0 + c1 y
    const double c1 = p.rho * p.b / p.sigma - 0.5;

    std::vector<TerminalSample> samples(static_cast<std::size_t>(cfg.n_paths));

    parallel_for_blocks(samples.size(), 4096, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const std::uint64_t stream = cfg.antithetic ? i / 2 : i;
            const double sign = (cfg.antithetic && (i & 1)) ? -1.0 : 1.0;

            double x = x0;
            double y = y0;
            for (int step = 0; step < cfg.n_steps; ++step) {
                const double yp = y > 0.0 ? y : 0.0;
                assert(yp >= 0.0);
                const double vol = std::sqrt(yp);
                const auto z = normal_pair(cfg.seed, stream, static_cast<std::uint64_t>(step));
                const double dw = sign * z[0] * sqrt_dt;
                const double db = sign * z[1] * sqrt_dt;
                x += (c0 + c1 * yp) * dt + rb * vol * db;
                y += (p.a - p.b * yp) * dt + p.sigma * vol * dw;
            }
            samples[i] = {x, y > 0.0 ? y : 0.0};
        }
    });
    return samples;
}

McEstimate estimate_from_samples(std::span<const TerminalSample> samples,
                                 const std::function<double(double x, double y)>& g,
                                 double discount, bool antithetic) {
    if (samples.size() < 2) throw std::invalid_argument("need at least 2 samples");
    if (antithetic && samples.size() % 2 != 0)
        throw std::invalid_argument("antithetic estimate needs an even sample count");

    const std::size_t m = antithetic ? samples.size() / 2 : samples.size();
    std::vector<double> contrib(m);
    if (antithetic) {
        for (std::size_t j = 0; j < m; ++j)
            contrib[j] = 0.5 * (g(samples[2 * j].x, samples[2 * j].y) +
                                g(samples[2 * j + 1].x, samples[2 * j + 1].y));
    } else {
        for (std::size_t j = 0; j < m; ++j) contrib[j] = g(samples[j].x, samples[j].y);
    }

    // Two-pass mean/variance in a fixed order: estimates are bit-stable for a
    // given seed and config regardless of thread count.
    double sum = 0.0;
    for (double c : contrib) sum += c;
    const double mean = sum / static_cast<double>(m);
    double ss = 0.0;
    for (double c : contrib) {
        const double d = c - mean;
        ss += d * d;
    }
    const double var = m > 1 ? ss / static_cast<double>(m - 1) : 0.0;

    McEstimate est;
    est.mean = discount * mean;
    est.std_error = discount * std::sqrt(var / static_cast<double>(m));
    est.n_effective = static_cast<std::int64_t>(m);
    return est;
}

McEstimate mc_price(const Payoff& f, const HestonParams& p, double s0, double y0, double maturity,
                    const McConfig& cfg) {
    const double x0 = to_transformed(s0, y0, p);
    const std::vector<TerminalSample> samples = simulate_terminal(p, x0, y0, maturity, cfg);
    return estimate_from_samples(
        samples, [&f, &p](double x, double y) { return payoff_transformed(f, x, y, p); },
        std::exp(-p.r * maturity), cfg.antithetic);
}

}  // namespace heston
