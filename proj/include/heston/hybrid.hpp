#pragma once

#include "heston/cir_tree.hpp"
#include "heston/grid.hpp"
#include "heston/params.hpp"
#include "heston/payoff.hpp"
#include "heston/tridiagonal.hpp"

#include <functional>
#include <span>
#include <unordered_map>
#include <vector>

namespace heston {

/// Terminal datum for the backward recursion, as a function of the
/// transformed coordinates (x, y). Plain payoffs enter through
/// payoff_transformed; mollified payoffs evaluate here directly.
using TransformedPayoff = std::function<double(double x, double y)>;

struct SchemeConfig {
    int n_steps = 100;      // N; time step h = maturity / N
    double dx = 0.01;       // spatial step
    double k_std = 6.0;     // half-width multiplier for the domain truncation
    double maturity = 1.0;  // T

    void validate() const;
};

/// Values on the spatial grid for every tree node of one time level.
struct ValueSurface {
    int level = 0;
    std::vector<std::vector<double>> nodes;  // nodes[k], k = 0..level
};

/// One implicit-step operator per distinct node variance of the tree.
/// Variances repeat heavily across levels (they depend on 2k - n only), so
/// this avoids re-assembly during the backward sweep.
class OperatorCache {
public:
    OperatorCache(const CIRTree& tree, const HestonParams& p, const SpatialGrid& grid);
    [[nodiscard]] const TridiagonalOperator& at(double y) const;
    [[nodiscard]] std::size_t size() const noexcept { return ops_.size(); }

private:
    std::unordered_map<double, TridiagonalOperator> ops_;
};

/// Truncated grid shared by all nodes: centered at x0, half-width
/// |mu_X(y_max)| T + k_std rho_bar sqrt(y_max T) with y_max the largest tree
/// node, so the frozen-coefficient Gaussian keeps negligible mass outside.
SpatialGrid make_scheme_grid(const CIRTree& tree, const HestonParams& p, double x0,
                             const SchemeConfig& cfg);

/// Level-N surface: node k holds f evaluated at every grid point with the
/// node's variance.
ValueSurface terminal_surface(const CIRTree& tree, const SpatialGrid& grid,
                              const TransformedPayoff& f);
ValueSurface terminal_surface(const CIRTree& tree, const SpatialGrid& grid, const Payoff& f,
                              const HestonParams& p);

/// One backward step n+1 -> n: mix the child vectors with the jump
/// probabilities, then apply the implicit solve at the node's variance.
/// The mixture runs before the solve; both orders agree by linearity.
ValueSurface backward_step(const ValueSurface& next, const CIRTree& tree,
                           const OperatorCache& ops, int n);

/// Full backward recursion; returns the root-node values over the grid,
/// i.e. x -> u_0(x, y0) undiscounted.
std::vector<double> price_surface(const TransformedPayoff& f, const HestonParams& p, double y0,
                                  double s0, const SchemeConfig& cfg);
std::vector<double> price_surface(const Payoff& f, const HestonParams& p, double y0, double s0,
                                  const SchemeConfig& cfg);

/// Discounted price at the spot: exp(-r T) times the root value at the grid
/// center (the center is a grid point by construction, no interpolation).
double price(const TransformedPayoff& f, const HestonParams& p, double y0, double s0,
             const SchemeConfig& cfg);
double price(const Payoff& f, const HestonParams& p, double y0, double s0,
             const SchemeConfig& cfg);

struct ConvergenceRow {
    int n_steps = 0;
    double h = 0.0;
    double dx = 0.0;
    double price = 0.0;
    double delta_to_finest = 0.0;
    bool has_order = false;  // set on the last row of each consecutive triple
    bool exact = false;      // both deltas vanished (e.g. constant payoff)
    double order = 0.0;
};

/// Self-convergence table over increasing step counts with dx = dx_scale * h.
/// The observed order on a triple (N0, N1, N2) is
/// log(|p0 - p1| / |p1 - p2|) / log(N1 / N0). Requires >= 3 resolutions.
std::vector<ConvergenceRow> convergence_study(const TransformedPayoff& f, const HestonParams& p,
                                              double y0, double s0, double maturity,
                                              std::span<const int> n_values,
                                              double dx_scale = 1.0, double k_std = 6.0);
std::vector<ConvergenceRow> convergence_study(const Payoff& f, const HestonParams& p, double y0,
                                              double s0, double maturity,
                                              std::span<const int> n_values,
                                              double dx_scale = 1.0, double k_std = 6.0);

}  // namespace heston
