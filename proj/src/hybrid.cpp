#include "heston/hybrid.hpp"

#include "heston/parallel.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace heston {

void SchemeConfig::validate() const {
    if (n_steps < 1) throw std::invalid_argument("n must be >= 1");
    if (!(dx > 0.0)) throw std::invalid_argument("dx must be positive");
    if (!(maturity > 0.0)) throw std::invalid_argument("t must be positive");
    if (!(k_std >= 1.0)) throw std::invalid_argument("kstd must be >= 1");
}

OperatorCache::OperatorCache(const CIRTree& tree, const HestonParams& p, const SpatialGrid& grid) {
    const double h = tree.step();
    // Operators are applied at levels 0..N-1 only.
    for (int n = 0; n < tree.n_steps(); ++n) {
        for (double y : tree.level(n)) {
            if (!ops_.contains(y)) ops_.emplace(y, assemble_operator(y, p, h, grid));
        }
    }
}

const TridiagonalOperator& OperatorCache::at(double y) const {
    const auto it = ops_.find(y);
    if (it == ops_.end())
        throw std::logic_error("operator cache missing a node variance (assembly bug)");
    return it->second;
}

SpatialGrid make_scheme_grid(const CIRTree& tree, const HestonParams& p, double x0,
                             const SchemeConfig& cfg) {
    const double y_max = tree.max_value();
    const double half_width = std::abs(drift_x(y_max, p)) * cfg.maturity +
                              cfg.k_std * p.rho_bar() * std::sqrt(y_max * cfg.maturity);
    return SpatialGrid::centered(x0, cfg.dx, half_width);
}

ValueSurface terminal_surface(const CIRTree& tree, const SpatialGrid& grid,
                              const TransformedPayoff& f) {
    const int n = tree.n_steps();
    ValueSurface surf;
    surf.level = n;
    surf.nodes.resize(n + 1);
    const int m = grid.size();
    parallel_for(static_cast<std::size_t>(n) + 1, [&](std::size_t k) {
        const double y = tree.value(n, static_cast<int>(k));
        auto& v = surf.nodes[k];
        v.resize(m);
        for (int i = 0; i < m; ++i) v[i] = f(grid.point(i), y);
    });
    return surf;
}

ValueSurface terminal_surface(const CIRTree& tree, const SpatialGrid& grid, const Payoff& f,
                              const HestonParams& p) {
    return terminal_surface(tree, grid,
                            [&f, &p](double x, double y) { return payoff_transformed(f, x, y, p); });
}

ValueSurface backward_step(const ValueSurface& next, const CIRTree& tree,
                           const OperatorCache& ops, int n) {
    if (next.level != n + 1) throw std::invalid_argument("surface level must be n + 1");
    if (n < 0 || n >= tree.n_steps()) throw std::invalid_argument("invalid backward level");

    const std::size_t m = next.nodes.front().size();
    ValueSurface out;
    out.level = n;
    out.nodes.resize(n + 1);

    parallel_for(static_cast<std::size_t>(n) + 1, [&](std::size_t k) {
        const int ki = static_cast<int>(k);
        const double y = tree.value(n, ki);
        const double pu = tree.prob_up(n, ki);
        const double pd = 1.0 - pu;
        const std::vector<double>& vu = next.nodes[tree.jump_up(n, ki)];
        const std::vector<double>& vd = next.nodes[tree.jump_down(n, ki)];

        std::vector<double> mix(m);
        for (std::size_t i = 0; i < m; ++i) mix[i] = pu * vu[i] + pd * vd[i];

        auto& node = out.nodes[k];
        node.resize(m);
        std::vector<double> work(m);
        ops.at(y).solve_into(mix, node, work);
    });
    return out;
}

std::vector<double> price_surface(const TransformedPayoff& f, const HestonParams& p, double y0,
                                  double s0, const SchemeConfig& cfg) {
    p.validate();
    cfg.validate();
    if (!(y0 >= 0.0)) throw std::invalid_argument("y0 must be nonnegative");

    const CIRTree tree = CIRTree::build(y0, p, cfg.n_steps, cfg.maturity);
    const double x0 = to_transformed(s0, y0, p);
    const SpatialGrid grid = make_scheme_grid(tree, p, x0, cfg);
    const OperatorCache ops(tree, p, grid);

    ValueSurface surf = terminal_surface(tree, grid, f);
    for (int n = cfg.n_steps - 1; n >= 0; --n) surf = backward_step(surf, tree, ops, n);
    return std::move(surf.nodes.front());
}

std::vector<double> price_surface(const Payoff& f, const HestonParams& p, double y0, double s0,
                                  const SchemeConfig& cfg) {
    return price_surface(
        [&f, &p](double x, double y) { return payoff_transformed(f, x, y, p); }, p, y0, s0, cfg);
}

double price(const TransformedPayoff& f, const HestonParams& p, double y0, double s0,
             const SchemeConfig& cfg) {
    const std::vector<double> root = price_surface(f, p, y0, s0, cfg);
    const int center = static_cast<int>(root.size() / 2);
    return std::exp(-p.r * cfg.maturity) * root[center];
}

double price(const Payoff& f, const HestonParams& p, double y0, double s0,
             const SchemeConfig& cfg) {
    return price([&f, &p](double x, double y) { return payoff_transformed(f, x, y, p); }, p, y0,
                 s0, cfg);
}

std::vector<ConvergenceRow> convergence_study(const TransformedPayoff& f, const HestonParams& p,
                                              double y0, double s0, double maturity,
                                              std::span<const int> n_values, double dx_scale,
                                              double k_std) {
    if (n_values.size() < 3)
        throw std::invalid_argument("convergence study needs at least 3 resolutions");
    for (std::size_t i = 1; i < n_values.size(); ++i)
        if (n_values[i] <= n_values[i - 1])
            throw std::invalid_argument("n-list must be strictly increasing");
    if (!(dx_scale > 0.0)) throw std::invalid_argument("dx-scale must be positive");

    std::vector<ConvergenceRow> rows(n_values.size());
    for (std::size_t i = 0; i < n_values.size(); ++i) {
        SchemeConfig cfg;
        cfg.n_steps = n_values[i];
        cfg.maturity = maturity;
        cfg.dx = dx_scale * maturity / n_values[i];
        cfg.k_std = k_std;
        rows[i].n_steps = cfg.n_steps;
        rows[i].h = maturity / cfg.n_steps;
        rows[i].dx = cfg.dx;
        rows[i].price = price(f, p, y0, s0, cfg);
    }

    const double finest = rows.back().price;
    for (auto& row : rows) row.delta_to_finest = row.price - finest;

    // Observed order on each consecutive triple, attached to its last row.
    const double scale = std::abs(finest) + 1.0;
    for (std::size_t i = 2; i < rows.size(); ++i) {
        const double d1 = rows[i - 2].price - rows[i - 1].price;
        const double d2 = rows[i - 1].price - rows[i].price;
        if (std::abs(d1) <= 1e-13 * scale && std::abs(d2) <= 1e-13 * scale) {
            rows[i].exact = true;
        } else if (d1 != 0.0 && d2 != 0.0) {
            const double ratio = static_cast<double>(rows[i - 1].n_steps) / rows[i - 2].n_steps;
            rows[i].has_order = true;
            rows[i].order = std::log(std::abs(d1) / std::abs(d2)) / std::log(ratio);
        }
    }
    return rows;
}

std::vector<ConvergenceRow> convergence_study(const Payoff& f, const HestonParams& p, double y0,
                                              double s0, double maturity,
                                              std::span<const int> n_values, double dx_scale,
                                              double k_std) {
    return convergence_study(
        [&f, &p](double x, double y) { return payoff_transformed(f, x, y, p); }, p, y0, s0,
        maturity, n_values, dx_scale, k_std);
}

}  // namespace heston
