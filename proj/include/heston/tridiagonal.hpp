#pragma once

#include "heston/grid.hpp"
#include "heston/params.hpp"

#include <span>
#include <vector>

namespace heston {

/// Dimensionless upwind convection coefficient (h/dx) * mu_X(y).
double convection_coeff(double y, const HestonParams& p, double h, double dx);

/// Dimensionless diffusion coefficient h rho_bar^2 y / (2 dx^2).
double diffusion_coeff(double y, const HestonParams& p, double h, double dx);

/// One implicit time step of the frozen-coefficient PDE: solving A w = v
/// advances the value vector by h at fixed variance y.
///
/// A has unit row sums, nonpositive off-diagonals and a diagonal that
/// dominates with margin 1 in every row, so the solve preserves constants,
/// maps nonnegative data to nonnegative data and is a contraction in the
/// sup norm. The Thomas sweep needs no pivoting under these invariants.
class TridiagonalOperator {
public:
    TridiagonalOperator(std::vector<double> lower, std::vector<double> diag,
                        std::vector<double> upper, double y);

    [[nodiscard]] int size() const noexcept { return static_cast<int>(diag_.size()); }
    [[nodiscard]] double variance() const noexcept { return y_; }
    [[nodiscard]] std::span<const double> lower() const noexcept { return lower_; }
    [[nodiscard]] std::span<const double> diag() const noexcept { return diag_; }
    [[nodiscard]] std::span<const double> upper() const noexcept { return upper_; }

    /// w with A w = rhs. Allocates its own workspace, so concurrent solves on
    /// one operator are safe.
    [[nodiscard]] std::vector<double> solve(std::span<const double> rhs) const;

    /// Same solve into caller-provided buffers; work must have size() entries.
    /// rhs and out may alias.
    void solve_into(std::span<const double> rhs, std::span<double> out, std::span<double> work) const;

    /// A * v, for residual checks.
    [[nodiscard]] std::vector<double> apply(std::span<const double> v) const;

private:
    std::vector<double> lower_, diag_, upper_;  // lower_[0] and upper_[n-1] are 0
    double y_;
};

/// Assemble the upwinded implicit operator for variance y on the grid.
/// Interior rows follow the upwind stencil; the first and last rows drop the
/// second difference and keep the one-sided convection difference only when
/// it points into the domain, so every row keeps the M-matrix sign pattern
/// and row sum 1.
TridiagonalOperator assemble_operator(double y, const HestonParams& p, double h,
                                      const SpatialGrid& grid);

}  // namespace heston
