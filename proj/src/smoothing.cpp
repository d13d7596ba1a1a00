#include "heston/smoothing.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace heston {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    if (n < 2) throw std::invalid_argument("quadrature needs at least 2 points");
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);

    // Newton on P_n with the Chebyshev-angle initial guess; fill both halves
    // symmetrically so paired nodes/weights are bitwise negatives/equals.
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) nodes[half - 1] = 0.0;
}

namespace {

double bump(double r2) { return r2 < 1.0 ? std::exp(-1.0 / (1.0 - r2)) : 0.0; }

}  // namespace

MollifiedPayoff::MollifiedPayoff(XYFunction base, int smoothing_index, int quadrature_points)
    : base_(std::move(base)), l_(smoothing_index), nq_(quadrature_points) {
    if (l_ < 1) throw std::invalid_argument("smoothing index must be >= 1");
    if (!base_) throw std::invalid_argument("mollified payoff needs a base function");

    std::vector<double> nodes, w1;
    gauss_legendre(nq_, nodes, w1);

    const double radius = 1.0 / l_;
    offsets_.resize(nq_);
    for (int i = 0; i < nq_; ++i) offsets_[i] = radius * nodes[i];

    weights_.resize(static_cast<std::size_t>(nq_) * nq_);
    double total = 0.0;
    for (int i = 0; i < nq_; ++i) {
        for (int j = 0; j < nq_; ++j) {
            const double r2 = nodes[i] * nodes[i] + nodes[j] * nodes[j];
            const double w = w1[i] * w1[j] * bump(r2);
            weights_[static_cast<std::size_t>(i) * nq_ + j] = w;
            total += w;
        }
    }
    // Normalize by the rule's own mass: the discrete kernel integrates to 1
    // exactly, independent of how well the rule captures the continuum bump.
    for (double& w : weights_) w /= total;
}

double MollifiedPayoff::operator()(double x, double y) const {
    double acc = 0.0;
    for (int i = 0; i < nq_; ++i) {
        const double xi = x - offsets_[i];
        const double* row = weights_.data() + static_cast<std::size_t>(i) * nq_;
        for (int j = 0; j < nq_; ++j) {
            const double w = row[j];
            if (w == 0.0) continue;  // outside the kernel ball
            acc += w * extend(base_, xi, y - offsets_[j]);
        }
    }
    return acc;
}

MollifiedPayoff mollify(XYFunction f, int smoothing_index, int quadrature_points) {
    return MollifiedPayoff(std::move(f), smoothing_index, quadrature_points);
}

MollifiedPayoff mollify(const Payoff& f, const HestonParams& p, int smoothing_index,
                        int quadrature_points) {
    return MollifiedPayoff(
        [f, p](double x, double y) { return payoff_transformed(f, x, y, p); }, smoothing_index,
        quadrature_points);
}

}  // namespace heston
