#include "declab/tfvlasov/dispersion.hpp"

#include <cmath>
#include <numbers>

#include "declab/errors.hpp"

namespace declab::tfvlasov {

namespace {

using Complex = std::complex<double>;

// Trapezoidal rule along the shifted contour t = s - i, which the Landau
// prescription allows as long as the pole stays above it (Im zeta > -1).
// Keeping the pole at least half a unit away from the contour makes the
// trapezoid error decay like e^{-2 pi d / h} with d >= 1/2.
Complex z_contour(Complex zeta) {
    constexpr double range = 9.0;
    constexpr double h = 0.01;
    const int n = static_cast<int>(2 * range / h);
    Complex acc(0.0, 0.0);
    for (int i = 0; i <= n; ++i) {
        const Complex t(-range + i * h, -1.0);
        const double w = (i == 0 || i == n) ? 0.5 : 1.0;
        acc += w * std::exp(-t * t) / (t - zeta);
    }
    return acc * h / std::sqrt(std::numbers::pi);
}

} // namespace

Complex plasma_z(Complex zeta) {
    if (zeta.imag() > -0.5) return z_contour(zeta);
    // deeper into the lower half plane: reflect and add the residue term
    const Complex upper = z_contour(std::conj(zeta));
    return std::conj(upper) +
           Complex(0.0, 2.0 * std::sqrt(std::numbers::pi)) * std::exp(-zeta * zeta);
}

Complex plasma_z_prime(Complex zeta) { return -2.0 * (1.0 + zeta * plasma_z(zeta)); }

DispersionRoot langmuir_dispersion_root(double k) {
    if (k <= 0.0) throw ValidationError("wavenumber must be positive");
    const double s2k = std::sqrt(2.0) * k;
    auto dielectric = [&](Complex omega) {
        const Complex zeta = omega / s2k;
        return 1.0 + (1.0 + zeta * plasma_z(zeta)) / (k * k);
    };
    auto dielectric_prime = [&](Complex omega) {
        const Complex zeta = omega / s2k;
        return (plasma_z(zeta) + zeta * plasma_z_prime(zeta)) / (k * k * s2k);
    };

    DispersionRoot root;
    Complex omega(std::sqrt(1.0 + 3.0 * k * k), -0.01); // Bohm-Gross start
    for (int it = 0; it < 80; ++it) {
        const Complex f = dielectric(omega);
        root.residual = std::abs(f);
        root.iterations = it;
        if (root.residual < 1e-13) break;
        omega -= f / dielectric_prime(omega);
    }
    if (root.residual > 1e-10)
        throw FitFailedError("dispersion Newton iteration did not converge");
    root.omega = omega;
    return root;
}

} // namespace declab::tfvlasov
