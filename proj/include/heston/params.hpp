#pragma once

#include <cmath>
#include <stdexcept>

namespace heston {

/// Heston model parameters:
///   dS = (r - delta) S dt + S sqrt(Y) (rho dW + rho_bar dB)
///   dY = (a - b Y) dt + sigma sqrt(Y) dW
///
/// The Feller condition sigma^2 <= 2a is reported but never required; the
/// scheme and the Monte-Carlo oracle accept both regimes.
struct HestonParams {
    double r = 0.0;      // risk-free rate
    double delta = 0.0;  // dividend yield
    double a = 0.0;      // CIR drift constant, a > 0
    double b = 0.0;      // CIR mean-reversion speed (any sign)
    double sigma = 0.0;  // vol-of-vol, sigma > 0
    double rho = 0.0;    // correlation in (-1, 1)

    void validate() const {
        if (!(a > 0.0)) throw std::invalid_argument("a must be positive");
        if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
        if (!(rho > -1.0 && rho < 1.0)) throw std::invalid_argument("rho must be in (-1, 1)");
    }

    [[nodiscard]] bool feller_satisfied() const noexcept { return sigma * sigma <= 2.0 * a; }
    [[nodiscard]] double rho_bar() const noexcept { return std::sqrt(1.0 - rho * rho); }
};

/// Decorrelating coordinate change (s, y) -> (log(s) - (rho/sigma) y, y).
/// In the new coordinates the noise driving X is independent of the one
/// driving Y, which is what the hybrid scheme exploits.
inline double to_transformed(double s, double y, const HestonParams& p) {
    if (!(s > 0.0)) throw std::domain_error("asset price must be positive");
    return std::log(s) - (p.rho / p.sigma) * y;
}

inline double from_transformed(double x, double y, const HestonParams& p) noexcept {
    return std::exp(x + (p.rho / p.sigma) * y);
}

/// Drift of the transformed log-price X. Affine in y; the sign decides the
/// upwind direction, so callers must not assume either.
inline double drift_x(double y, const HestonParams& p) noexcept {
    return p.r - p.delta - p.rho * p.a / p.sigma + (p.rho * p.b / p.sigma - 0.5) * y;
}

/// Drift of the CIR variance.
inline double drift_y(double y, const HestonParams& p) noexcept {
    return p.a - p.b * y;
}

}  // namespace heston
