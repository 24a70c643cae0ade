#include "declab/tfvlasov/fields.hpp"

#include <cmath>
#include <numbers>

namespace declab::tfvlasov {

DensityField::DensityField(SpatialGrid grid, RealVector values)
    : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (grid_.geometry == GridGeometry::line1d)
        throw GeometryMismatchError("densities live on radial or periodic grids");
    if (values_.size() != grid_.n)
        throw ValidationError("density length does not match grid");
    for (int i = 0; i < values_.size(); ++i)
        if (values_(i) < 0.0)
            throw NegativeDensityError("negative density at node " + std::to_string(i));
}

double DensityField::integral() const {
    const double h = grid_.spacing();
    double acc = 0.0;
    if (grid_.geometry == GridGeometry::radial3d) {
        for (int i = 0; i < values_.size(); ++i) {
            const double r = grid_.coord(i);
            acc += values_(i) * r * r;
        }
        return 4.0 * std::numbers::pi * acc * h;
    }
    return values_.sum() * h;
}

PotentialField::PotentialField(SpatialGrid grid, RealVector values)
    : grid_(grid), values_(std::move(values)) {
    grid_.validate();
    if (values_.size() != grid_.n)
        throw ValidationError("potential length does not match grid");
    if (grid_.geometry == GridGeometry::periodic1d)
        values_.array() -= values_.mean(); // gauge fix
}

double PotentialField::sample(double coordinate) const {
    const double h = grid_.spacing();
    const int n = grid_.n;
    double u; // fractional node index
    switch (grid_.geometry) {
        case GridGeometry::radial3d: u = std::abs(coordinate) / h - 0.5; break;
        case GridGeometry::periodic1d: {
            double x = std::fmod(coordinate, grid_.extent);
            if (x < 0) x += grid_.extent;
            u = x / h;
            break;
        }
        default: u = (coordinate - grid_.origin) / h;
    }
    if (grid_.geometry == GridGeometry::periodic1d) {
        const int i0 = static_cast<int>(std::floor(u));
        const double f = u - i0;
        return (1 - f) * values_((i0 % n + n) % n) + f * values_(((i0 + 1) % n + n) % n);
    }
    // clamped linear interpolation on bounded grids
    if (u <= 0.0) return values_(0);
    if (u >= n - 1) return values_(n - 1);
    const int i0 = static_cast<int>(u);
    const double f = u - i0;
    return (1 - f) * values_(i0) + f * values_(i0 + 1);
}

} // namespace declab::tfvlasov
