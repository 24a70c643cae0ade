#ifndef DECLAB_TFVLASOV_DISPERSION_HPP
#define DECLAB_TFVLASOV_DISPERSION_HPP

#include <complex>

namespace declab::tfvlasov {

/// Plasma dispersion function Z(zeta) = pi^{-1/2} int e^{-t^2} / (t - zeta) dt
/// on the Landau contour. Evaluated by trapezoidal quadrature in the upper
/// half plane (geometric convergence for entire integrands) and analytic
/// continuation Z(zeta) = conj(Z(conj zeta)) + 2 i sqrt(pi) e^{-zeta^2} below
/// the axis.
std::complex<double> plasma_z(std::complex<double> zeta);

/// d Z / d zeta = -2 (1 + zeta Z).
std::complex<double> plasma_z_prime(std::complex<double> zeta);

struct DispersionRoot {
    std::complex<double> omega; // Re: oscillation frequency, Im: damping rate (< 0 damped)
    double residual = 0.0;
    int iterations = 0;
};

/// Least-damped Langmuir root of 1 + (1/k^2)[1 + zeta Z(zeta)] = 0 with
/// zeta = omega / (sqrt(2) k), in normalized units (plasma frequency and
/// thermal velocity both 1). Newton iteration from the Bohm-Gross guess.
DispersionRoot langmuir_dispersion_root(double k);

} // namespace declab::tfvlasov

#endif
