#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace aspsim {

/// Monotone path parameter s(tau) on tau = t/T in [0,1] with s(0)=0, s(1)=1.
class Schedule {
  public:
    static Schedule linear() { return Schedule{}; }

    static Schedule power(double p) {
        if (!(p > 0.0)) throw std::invalid_argument("power schedule needs p > 0");
        Schedule s;
        s.kind_ = Kind::Power;
        s.p_ = p;
        return s;
    }

    /// Piecewise-linear through (tau, s) knots; must start at (0,0), end at
    /// (1,1), with tau strictly increasing and s non-decreasing.
    static Schedule tabulated(std::vector<std::pair<double, double>> knots) {
        if (knots.size() < 2 || knots.front() != std::pair{0.0, 0.0} ||
            knots.back() != std::pair{1.0, 1.0})
            throw std::invalid_argument("tabulated schedule must run from (0,0) to (1,1)");
        for (std::size_t i = 1; i < knots.size(); ++i) {
            if (!(knots[i].first > knots[i - 1].first))
                throw std::invalid_argument("tabulated schedule: tau must increase strictly");
            if (knots[i].second < knots[i - 1].second)
                throw std::invalid_argument("tabulated schedule: s must be non-decreasing");
        }
        Schedule s;
        s.kind_ = Kind::Tabulated;
        s.knots_ = std::move(knots);
        return s;
    }

    double s(double tau) const {
        tau = std::clamp(tau, 0.0, 1.0);
        switch (kind_) {
            case Kind::Linear: return tau;
            case Kind::Power: return std::pow(tau, p_);
            case Kind::Tabulated: {
                auto it = std::upper_bound(knots_.begin(), knots_.end(), tau,
                                           [](double v, const auto& k) { return v < k.first; });
                if (it == knots_.begin()) return knots_.front().second;
                if (it == knots_.end()) return knots_.back().second;
                auto lo = *(it - 1);
                auto hi = *it;
                double f = (tau - lo.first) / (hi.first - lo.first);
                return lo.second + f * (hi.second - lo.second);
            }
        }
        return tau;
    }

    std::string describe() const {
        switch (kind_) {
            case Kind::Linear: return "linear";
            case Kind::Power: return "power:" + std::to_string(p_);
            case Kind::Tabulated: return "tabulated[" + std::to_string(knots_.size()) + "]";
        }
        return "linear";
    }

  private:
    enum class Kind { Linear, Power, Tabulated };
    Kind kind_ = Kind::Linear;
    double p_ = 1.0;
    std::vector<std::pair<double, double>> knots_;
};

} // namespace aspsim
