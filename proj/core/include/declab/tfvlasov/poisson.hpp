#ifndef DECLAB_TFVLASOV_POISSON_HPP
#define DECLAB_TFVLASOV_POISSON_HPP

#include "declab/tfvlasov/fields.hpp"

namespace declab::tfvlasov {

/// Spectral solve of V'' = 4 pi e^2 (rho - background) on a periodic grid,
/// zero-mean gauge. The inversion uses the symbol of the second-difference
/// Laplacian, so applying the discrete Laplacian to the result reproduces the
/// source to roundoff. The point-charge term of the 3D problem is replaced by
/// the uniform neutralizing background (jellium); the source must have zero
/// mean to 1e-10 or NonNeutralSourceError is thrown.
PotentialField poisson_solve(const DensityField& rho, double background,
                             const PhysicalConstants& k);

/// Spectral first derivative of a periodic field (Nyquist mode dropped).
RealVector spectral_gradient(const PotentialField& v);

} // namespace declab::tfvlasov

#endif
