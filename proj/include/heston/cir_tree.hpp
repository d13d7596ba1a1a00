#pragma once

#include "heston/params.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace heston {

/// Lattice value (sqrt(y0) + (sigma/2)(2k - n) sqrt(h))^2, truncated to 0
/// whenever the square root argument is not positive.
double node_value(double y0, double sigma, double h, int n, int k);

/// Recombining binomial Markov chain approximating the CIR variance process
/// on the time grid {n h}. Level n holds n+1 ordered values; each node below
/// the last level stores the indices of its two children in the next level
/// and the probability of the up jump.
///
/// Jump targets bracket the drifted value y + (a - b y) h from above (k_u)
/// and below (k_d); the up probability matches the first moment of the CIR
/// increment exactly whenever no clamping occurs.
class CIRTree {
public:
    static CIRTree build(double y0, const HestonParams& p, int n_steps, double maturity);

    [[nodiscard]] int n_steps() const noexcept { return n_steps_; }
    [[nodiscard]] double step() const noexcept { return h_; }
    [[nodiscard]] std::size_t node_count() const noexcept { return values_.size(); }
    [[nodiscard]] double max_value() const noexcept { return max_value_; }

    [[nodiscard]] double value(int n, int k) const { return values_[offset(n) + k]; }
    [[nodiscard]] std::span<const double> level(int n) const {
        return {values_.data() + offset(n), static_cast<std::size_t>(n + 1)};
    }

    // Jump data exists for n < n_steps only.
    [[nodiscard]] int jump_up(int n, int k) const { return up_[offset(n) + k]; }
    [[nodiscard]] int jump_down(int n, int k) const { return down_[offset(n) + k]; }
    [[nodiscard]] double prob_up(int n, int k) const { return prob_up_[offset(n) + k]; }

private:
    CIRTree() = default;

    [[nodiscard]] static std::size_t offset(int n) noexcept {
        return static_cast<std::size_t>(n) * (n + 1) / 2;
    }

    int n_steps_ = 0;
    double h_ = 0.0;
    double max_value_ = 0.0;
    std::vector<double> values_;   // all levels, flattened
    std::vector<int> up_;          // levels 0..N-1
    std::vector<int> down_;
    std::vector<double> prob_up_;
};

}  // namespace heston
