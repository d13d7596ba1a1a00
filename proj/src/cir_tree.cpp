#include "heston/cir_tree.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heston {

double node_value(double y0, double sigma, double h, int n, int k) {
    const int j = 2 * k - n;
    if (j == 0) return y0;  // exact: level 0 is {y0}, central nodes stay on it
    const double root = std::sqrt(y0) + 0.5 * sigma * static_cast<double>(j) * std::sqrt(h);
    return root > 0.0 ? root * root : 0.0;
}

namespace {

// Children bracketing the drifted value target = y + mu_Y(y) h in the sorted
// next level. Empty-set fallbacks: k_u = n+1, k_d = 0.
struct JumpPair {
    int up;
    int down;
};

JumpPair jump_indices(std::span<const double> next_level, int k, double target) {
    const int n_next = static_cast<int>(next_level.size()) - 1;  // = n + 1

    // k_u = min{k* in [k+1, n+1] : next[k*] >= target}
    auto first = next_level.begin() + (k + 1);
    auto it = std::lower_bound(first, next_level.end(), target);
    const int ku = it == next_level.end() ? n_next : static_cast<int>(it - next_level.begin());

    // k_d = max{k* in [0, k] : next[k*] <= target}
    auto last = next_level.begin() + (k + 1);
    auto jt = std::upper_bound(next_level.begin(), last, target);
    const int kd = jt == next_level.begin() ? 0 : static_cast<int>(jt - next_level.begin()) - 1;

    return {ku, kd};
}

double jump_prob(double target, double y_up, double y_down) {
    const double denom = y_up - y_down;
    if (!(denom > 0.0)) {
        // Both children truncated to the same value (0). Either choice yields
        // the same law; jump "up".
        return 1.0;
    }
    return std::clamp((target - y_down) / denom, 0.0, 1.0);
}

}  // namespace

CIRTree CIRTree::build(double y0, const HestonParams& p, int n_steps, double maturity) {
    if (n_steps < 1) throw std::invalid_argument("tree needs at least one step");
    if (!(maturity > 0.0)) throw std::invalid_argument("maturity must be positive");
    if (!(y0 >= 0.0)) throw std::invalid_argument("initial variance must be nonnegative");

    CIRTree tree;
    tree.n_steps_ = n_steps;
    tree.h_ = maturity / n_steps;

    const std::size_t total = offset(n_steps) + static_cast<std::size_t>(n_steps) + 1;
    tree.values_.resize(total);
    tree.up_.resize(offset(n_steps));
    tree.down_.resize(offset(n_steps));
    tree.prob_up_.resize(offset(n_steps));

    for (int n = 0; n <= n_steps; ++n) {
        double* lvl = tree.values_.data() + offset(n);
        for (int k = 0; k <= n; ++k) lvl[k] = node_value(y0, p.sigma, tree.h_, n, k);
    }
    tree.max_value_ = *std::max_element(tree.values_.begin(), tree.values_.end());

    for (int n = 0; n < n_steps; ++n) {
        const std::size_t off = offset(n);
        const std::span<const double> next = tree.level(n + 1);
        for (int k = 0; k <= n; ++k) {
            const double y = tree.values_[off + k];
            const double target = y + drift_y(y, p) * tree.h_;
            const JumpPair j = jump_indices(next, k, target);
            tree.up_[off + k] = j.up;
            tree.down_[off + k] = j.down;
            tree.prob_up_[off + k] = jump_prob(target, next[j.up], next[j.down]);
        }
    }
    return tree;
}

}  // namespace heston
