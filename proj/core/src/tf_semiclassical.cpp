#include "declab/tfvlasov/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace declab::tfvlasov {

namespace {

// second-order first/second derivatives at node i; one-sided at bounded ends
struct Stencil {
    double first;
    double second;
};

Stencil derivatives(const RealVector& v, int i, double h, bool periodic) {
    const int n = static_cast<int>(v.size());
    auto at = [&](int j) {
        if (periodic) return v(((j % n) + n) % n);
        return v(std::clamp(j, 0, n - 1));
    };
    if (periodic || (i > 0 && i < n - 1))
        return {(at(i + 1) - at(i - 1)) / (2 * h), (at(i + 1) - 2 * at(i) + at(i - 1)) / (h * h)};
    if (i == 0)
        return {(-3 * v(0) + 4 * v(1) - v(2)) / (2 * h),
                (2 * v(0) - 5 * v(1) + 4 * v(2) - v(3)) / (h * h)};
    return {(3 * v(n - 1) - 4 * v(n - 2) + v(n - 3)) / (2 * h),
            (2 * v(n - 1) - 5 * v(n - 2) + 4 * v(n - 3) - v(n - 4)) / (h * h)};
}

} // namespace

Complex wigner_kirkwood_factor(const PotentialField& v, int x_index, double t,
                               const PhysicalConstants& k) {
    k.validate();
    const SpatialGrid& grid = v.grid();
    if (x_index < 0 || x_index >= grid.n)
        throw ValidationError("x_index outside grid");
    const bool periodic = grid.geometry == GridGeometry::periodic1d;
    const Stencil d = derivatives(v.values(), x_index, grid.spacing(), periodic);

    double laplacian = d.second;
    if (grid.geometry == GridGeometry::radial3d)
        laplacian += 2.0 * d.first / grid.coord(x_index);
    const double grad_sq = d.first * d.first;

    const double hb = k.hbar;
    const Complex bracket(t * t / (hb * hb) * laplacian,
                          -t * t * t / (hb * hb * hb) * grad_sq);
    return 1.0 + (hb * hb / (12.0 * k.mass)) * bracket;
}

Complex tf_propagator(const Vec3& x, const Vec3& x_prime, double t, const PotentialField* v,
                      const PhysicalConstants& k) {
    k.validate();
    if (t == 0.0) throw SingularTimeError("propagator is singular at t = 0");
    const double hb = k.hbar;
    const double mag = std::pow(k.mass / (2.0 * std::numbers::pi * hb * std::abs(t)), 1.5);
    const double branch = -0.75 * std::numbers::pi * (t > 0 ? 1.0 : -1.0);

    double dist_sq = 0.0;
    Vec3 mid{};
    for (int a = 0; a < 3; ++a) {
        const double d = x[a] - x_prime[a];
        dist_sq += d * d;
        mid[a] = 0.5 * (x[a] + x_prime[a]);
    }
    double phase = k.mass * dist_sq / (2.0 * hb * t) + branch;
    if (v != nullptr) {
        const double coord = v->grid().geometry == GridGeometry::radial3d
                                 ? std::sqrt(mid[0] * mid[0] + mid[1] * mid[1] + mid[2] * mid[2])
                                 : mid[0];
        phase -= (t / hb) * v->sample(coord);
    }
    return mag * std::polar(1.0, phase);
}

} // namespace declab::tfvlasov
