#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace boselab {

/// Nonnegative, compactly supported, spherically symmetric interaction
/// profile V(r).  The same profile is reused for the 1D interval problems,
/// where r is read as |x|.
class RadialPotential {
public:
    RadialPotential() = default;

    RadialPotential(std::function<double(double)> profile, double support_radius,
                    double strength = 1.0)
        : profile_(std::move(profile)),
          support_radius_(support_radius),
          strength_(strength) {
        if (support_radius_ <= 0.0)
            throw std::invalid_argument("RadialPotential: support_radius must be positive");
    }

    /// V(r); zero beyond the support radius by construction.
    double operator()(double r) const {
        if (!profile_ || r >= support_radius_) return 0.0;
        double v = strength_ * profile_(r);
        if (v < 0.0)
            throw std::domain_error("RadialPotential: attractive values are unsupported");
        return v;
    }

    double support_radius() const { return support_radius_; }
    double strength() const { return strength_; }
    bool is_zero() const { return !profile_ || strength_ == 0.0; }

    /// V == 0 everywhere.
    static RadialPotential zero() {
        RadialPotential p;
        p.support_radius_ = 1.0;
        return p;
    }

    /// V(r) = V0 for r < R.
    static RadialPotential square_well(double v0, double radius) {
        return RadialPotential([](double) { return 1.0; }, radius, v0);
    }

    /// Smooth compactly supported bump V(r) = V0 * exp(1 - R^2/(R^2 - r^2)).
    static RadialPotential bump(double v0, double radius) {
        return RadialPotential(
            [radius](double r) {
                double d = radius * radius - r * r;
                if (d <= 0.0) return 0.0;
                return std::exp(1.0 - radius * radius / d);
            },
            radius, v0);
    }

private:
    std::function<double(double)> profile_;
    double support_radius_ = 0.0;
    double strength_ = 1.0;
};

} // namespace boselab
