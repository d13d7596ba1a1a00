#pragma once

#include "heston/params.hpp"

#include <limits>
#include <utility>
#include <vector>

namespace heston {

/// European payoff evaluated on (asset price, variance). All built-ins are
/// y-independent; the variance argument is part of the contract so custom
/// payoffs can use it.
class Payoff {
public:
    enum class Kind { call, put, digital, constant, identity_asset, table };

    static Payoff call(double strike);
    static Payoff put(double strike);
    /// Indicator of s in [lo, hi); hi may be +infinity. Requires 0 <= lo < hi
    /// strictly (the half-open convention makes lo = hi an empty payoff, which
    /// we reject rather than guess).
    static Payoff digital(double lo, double hi = std::numeric_limits<double>::infinity());
    static Payoff constant(double value);
    /// f(s, y) = s.
    static Payoff identity_asset();
    /// Piecewise linear in s through the given (s, value) points, constant
    /// beyond the first/last abscissa. Points must have s > 0, strictly
    /// increasing.
    static Payoff table(std::vector<std::pair<double, double>> points);

    double operator()(double s, double y) const;

    [[nodiscard]] Kind kind() const noexcept { return kind_; }
    [[nodiscard]] double strike() const noexcept { return k0_; }
    [[nodiscard]] double lower() const noexcept { return k0_; }
    [[nodiscard]] double upper() const noexcept { return k1_; }
    [[nodiscard]] const std::vector<std::pair<double, double>>& points() const noexcept { return pts_; }

private:
    explicit Payoff(Kind kind) : kind_(kind) {}

    Kind kind_;
    double k0_ = 0.0;
    double k1_ = 0.0;
    std::vector<std::pair<double, double>> pts_;
};

/// Payoff composed with the inverse coordinate transform: the terminal datum
/// of the backward recursion as a function of (x, y).
double payoff_transformed(const Payoff& f, double x, double y, const HestonParams& p);

}  // namespace heston
