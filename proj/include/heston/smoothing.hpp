#pragma once

#include "heston/params.hpp"
#include "heston/payoff.hpp"

#include <functional>
#include <vector>

namespace heston {

using XYFunction = std::function<double(double x, double y)>;

/// Continuous extension of f below the variance boundary: f(x, max(0, y)).
inline double extend(const XYFunction& f, double x, double y_signed) {
    return f(x, y_signed > 0.0 ? y_signed : 0.0);
}

/// Nodes and weights of n-point Gauss-Legendre quadrature on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

/// Convolution of the extended payoff with the compactly supported bump
/// kernel exp(-1/(1-|z|^2)) of radius 1/l, evaluated by a fixed
/// tensor-product Gauss-Legendre rule on the kernel support. The discrete
/// weights are normalized to sum to 1 exactly, so constants pass through
/// unchanged and symmetric node placement kills odd moments; the evaluator
/// agrees with the base payoff wherever the kernel support avoids its kinks.
class MollifiedPayoff {
public:
    MollifiedPayoff(XYFunction base, int smoothing_index, int quadrature_points = 33);

    double operator()(double x, double y) const;

    [[nodiscard]] int smoothing_index() const noexcept { return l_; }
    [[nodiscard]] double kernel_radius() const noexcept { return 1.0 / l_; }
    [[nodiscard]] int quadrature_points() const noexcept { return nq_; }
    /// Scaled quadrature offsets (length nq) and normalized 2-D weights
    /// (row-major nq x nq), exposed for the quadrature invariants.
    [[nodiscard]] const std::vector<double>& offsets() const noexcept { return offsets_; }
    [[nodiscard]] const std::vector<double>& weights() const noexcept { return weights_; }

private:
    XYFunction base_;
    int l_;
    int nq_;
    std::vector<double> offsets_;
    std::vector<double> weights_;
};

MollifiedPayoff mollify(XYFunction f, int smoothing_index, int quadrature_points = 33);
/// Mollify a payoff in the transformed coordinates the scheme works in.
MollifiedPayoff mollify(const Payoff& f, const HestonParams& p, int smoothing_index,
                        int quadrature_points = 33);

}  // namespace heston
