#include "heston/tridiagonal.hpp"

#include <cmath>
#include <stdexcept>

namespace heston {

double convection_coeff(double y, const HestonParams& p, double h, double dx) {
    return (h / dx) * drift_x(y, p);
}

double diffusion_coeff(double y, const HestonParams& p, double h, double dx) {
    const double rb = p.rho_bar();
    return h * rb * rb * y / (2.0 * dx * dx);
}

TridiagonalOperator::TridiagonalOperator(std::vector<double> lower, std::vector<double> diag,
                                         std::vector<double> upper, double y)
    : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper)), y_(y) {
    if (diag_.size() < 2 || lower_.size() != diag_.size() || upper_.size() != diag_.size())
        throw std::invalid_argument("tridiagonal bands must share a size >= 2");
}

std::vector<double> TridiagonalOperator::solve(std::span<const double> rhs) const {
    std::vector<double> out(rhs.size());
    std::vector<double> work(rhs.size());
    solve_into(rhs, out, work);
    return out;
}

void TridiagonalOperator::solve_into(std::span<const double> rhs, std::span<double> out,
                                     std::span<double> work) const {
    const int n = size();
    if (static_cast<int>(rhs.size()) != n || static_cast<int>(out.size()) != n ||
        static_cast<int>(work.size()) != n)
        throw std::invalid_argument("solve buffers must match operator size");

    // Thomas forward sweep; diagonal dominance keeps the pivots away from 0.
    double piv = diag_[0];
    work[0] = upper_[0] / piv;
    out[0] = rhs[0] / piv;
    for (int i = 1; i < n; ++i) {
        piv = diag_[i] - lower_[i] * work[i - 1];
        work[i] = upper_[i] / piv;
        out[i] = (rhs[i] - lower_[i] * out[i - 1]) / piv;
    }
    for (int i = n - 2; i >= 0; --i) out[i] -= work[i] * out[i + 1];
}

std::vector<double> TridiagonalOperator::apply(std::span<const double> v) const {
    const int n = size();
    if (static_cast<int>(v.size()) != n)
        throw std::invalid_argument("apply vector must match operator size");
    std::vector<double> out(v.size());
    for (int i = 0; i < n; ++i) {
        double acc = diag_[i] * v[i];
        if (i > 0) acc += lower_[i] * v[i - 1];
        if (i + 1 < n) acc += upper_[i] * v[i + 1];
        out[i] = acc;
    }
    return out;
}

TridiagonalOperator assemble_operator(double y, const HestonParams& p, double h,
                                      const SpatialGrid& grid) {
    const int n = grid.size();
    const double alpha = convection_coeff(y, p, h, grid.dx);
    const double beta = diffusion_coeff(y, p, h, grid.dx);
    const double mag = std::abs(alpha);

    std::vector<double> lower(n, 0.0), diag(n, 0.0), upper(n, 0.0);

    const double sub = -beta - (alpha < 0.0 ? mag : 0.0);
    const double mid = 1.0 + 2.0 * beta + mag;
    const double sup = -beta - (alpha > 0.0 ? mag : 0.0);
    for (int i = 1; i + 1 < n; ++i) {
        lower[i] = sub;
        diag[i] = mid;
        upper[i] = sup;
    }

    // Boundary closure: no second difference, and the one-sided convection
    // difference only where upwinding points into the domain. The outflow row
    // drops convection (constant upwind ghost), which keeps the M-matrix sign
    // pattern in all rows at the cost of exact affine transport in that row.
    if (alpha > 0.0) {
        diag[0] = 1.0 + alpha;
        upper[0] = -alpha;
        diag[n - 1] = 1.0;
    } else if (alpha < 0.0) {
        diag[0] = 1.0;
        diag[n - 1] = 1.0 + mag;
        lower[n - 1] = -mag;
    } else {
        diag[0] = 1.0;
        diag[n - 1] = 1.0;
    }

    return {std::move(lower), std::move(diag), std::move(upper), y};
}

}  // namespace heston
