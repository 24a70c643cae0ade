#include "declab/tfvlasov/functional.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace declab::tfvlasov {

namespace {

double tf_prefactor(const PhysicalConstants& k) {
    return 0.3 * (k.hbar * k.hbar / k.mass) * std::pow(3.0 * std::numbers::pi * std::numbers::pi, 2.0 / 3.0);
}

double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - phi * (b - a);
    double d = a + phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

} // namespace

RealVector tf_kinetic_density(const DensityField& rho, const PhysicalConstants& k) {
    k.validate();
    const double c = tf_prefactor(k);
    return c * rho.values().array().pow(5.0 / 3.0).matrix();
}

RealVector fermi_energy(const DensityField& rho, const PhysicalConstants& k) {
    k.validate();
    const double c = 0.5 * (k.hbar * k.hbar / k.mass) *
                     std::pow(3.0 * std::numbers::pi * std::numbers::pi, 2.0 / 3.0);
    return c * rho.values().array().pow(2.0 / 3.0).matrix();
}

double tf_energy(const DensityField& rho, const PhysicalConstants& k) {
    k.validate();
    if (rho.grid().geometry != GridGeometry::radial3d)
        throw GeometryMismatchError("tf_energy is defined on radial grids");
    const double number = rho.integral();
    const double z = static_cast<double>(k.z_charges);
    if (number > 0.0 && std::abs(number - z) / z > 1e-6)
        throw NeutralityViolationError("density integrates to " + std::to_string(number) +
                                       " but Z = " + std::to_string(k.z_charges));

    const auto& v = rho.values();
    const SpatialGrid& grid = rho.grid();
    const double dr = grid.spacing();
    const double fourpi = 4.0 * std::numbers::pi;
    const double e2 = k.charge * k.charge;

    const RealVector tau = tf_kinetic_density(rho, k);
    double kinetic = 0.0, attraction = 0.0;
    for (int i = 0; i < v.size(); ++i) {
        const double r = grid.coord(i);
        kinetic += tau(i) * r * r;
        attraction += v(i) * r;
    }
    kinetic *= fourpi * dr;
    attraction *= -z * e2 * fourpi * dr;

    // Hartree term: Phi(r) = 4 pi e^2 [ (1/r) int_0^r rho r'^2 dr' + int_r^R rho r' dr' ]
    const int n = static_cast<int>(v.size());
    RealVector inner(n), outer(n);
    double acc = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = grid.coord(i);
        acc += v(i) * r * r * dr;
        inner(i) = acc;
    }
    acc = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        outer(i) = acc; // strictly-outside shells
        acc += v(i) * grid.coord(i) * dr;
    }
    double hartree = 0.0;
    for (int i = 0; i < n; ++i) {
        const double r = grid.coord(i);
        const double phi_r = fourpi * (inner(i) / r + outer(i));
        hartree += v(i) * phi_r * r * r;
    }
    hartree *= 0.5 * e2 * fourpi * dr;

    return kinetic + attraction + hartree;
}

TfMinimum minimize_tf_energy(const PhysicalConstants& k, const TfProfileFamily& family) {
    k.validate();
    if (family.p_min <= 6.5 || family.p_max <= family.p_min)
        throw ValidationError("profile exponent range must satisfy 6.5 < p_min < p_max");
    const double z = static_cast<double>(k.z_charges);

    // Energy at (lambda, p): grid in scaled units u = lambda r so quadrature
    // error is lambda-independent.
    auto energy_at = [&](double lambda, double p) {
        SpatialGrid grid{GridGeometry::radial3d, family.n_grid, family.u_max / lambda, 0.0};
        RealVector values(family.n_grid);
        for (int i = 0; i < family.n_grid; ++i) {
            const double u = lambda * grid.coord(i);
            values(i) = std::pow(lambda, 3) * std::pow(1.0 + u, -p);
        }
        DensityField raw(grid, std::move(values));
        const double scale = z / raw.integral(); // enforce neutrality numerically
        DensityField rho(grid, RealVector(scale * raw.values()));
        return tf_energy(rho, k);
    };

    // E(lambda) = T lambda^2 - B lambda is convex with a single interior
    // minimum; bracket it generously around the virial estimate.
    auto best_lambda = [&](double p) {
        const double e1 = energy_at(1.0, p);
        const double e2 = energy_at(2.0, p);
        // from two samples of T l^2 - B l recover the stationary point
        const double t_coeff = (e2 - 2.0 * e1) / 2.0;
        const double b_coeff = t_coeff - e1;
        double guess = t_coeff > 0 ? std::max(b_coeff / (2.0 * t_coeff), 0.1) : 1.0;
        return golden_section_min([&](double l) { return energy_at(l, p); }, 0.2 * guess,
                                  5.0 * guess, 1e-6 * guess);
    };

    TfMinimum out;
    out.shape_p = golden_section_min(
        [&](double p) { return energy_at(best_lambda(p), p); }, family.p_min, family.p_max,
        1e-4 * (family.p_max - family.p_min));
    out.lambda = best_lambda(out.shape_p);
    out.energy = energy_at(out.lambda, out.shape_p);
    return out;
}

} // namespace declab::tfvlasov
