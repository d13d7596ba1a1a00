#include "heston/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace heston {

Payoff Payoff::call(double strike) {
    if (!(strike > 0.0)) throw std::invalid_argument("call strike must be positive");
    Payoff f(Kind::call);
    f.k0_ = strike;
    return f;
}

Payoff Payoff::put(double strike) {
    if (!(strike > 0.0)) throw std::invalid_argument("put strike must be positive");
    Payoff f(Kind::put);
    f.k0_ = strike;
    return f;
}

Payoff Payoff::digital(double lo, double hi) {
    if (!(lo >= 0.0) || !(lo < hi)) throw std::invalid_argument("digital requires 0 <= lo < hi");
    Payoff f(Kind::digital);
    f.k0_ = lo;
    f.k1_ = hi;
    return f;
}

Payoff Payoff::constant(double value) {
    Payoff f(Kind::constant);
    f.k0_ = value;
    return f;
}

Payoff Payoff::identity_asset() { return Payoff(Kind::identity_asset); }

Payoff Payoff::table(std::vector<std::pair<double, double>> points) {
    if (points.empty()) throw std::invalid_argument("table payoff needs at least one point");
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (!(points[i].first > 0.0)) throw std::invalid_argument("table abscissae must be positive");
        if (i > 0 && !(points[i].first > points[i - 1].first))
            throw std::invalid_argument("table abscissae must be strictly increasing");
    }
    Payoff f(Kind::table);
    f.pts_ = std::move(points);
    return f;
}

double Payoff::operator()(double s, double /*y*/) const {
    switch (kind_) {
        case Kind::call:
            return std::max(s - k0_, 0.0);
        case Kind::put:
            return std::max(k0_ - s, 0.0);
        case Kind::digital:
            return (s >= k0_ && s < k1_) ? 1.0 : 0.0;
        case Kind::constant:
            return k0_;
        case Kind::identity_asset:
            return s;
        case Kind::table: {
            if (s <= pts_.front().first) return pts_.front().second;
            if (s >= pts_.back().first) return pts_.back().second;
            auto it = std::upper_bound(pts_.begin(), pts_.end(), s,
                                       [](double v, const auto& pt) { return v < pt.first; });
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double w = (s - lo.first) / (hi.first - lo.first);
            return lo.second + w * (hi.second - lo.second);
        }
    }
    return 0.0;  // unreachable
}

double payoff_transformed(const Payoff& f, double x, double y, const HestonParams& p) {
    return f(from_transformed(x, y, p), y);
}

}  // namespace heston
