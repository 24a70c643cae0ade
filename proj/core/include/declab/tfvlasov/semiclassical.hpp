#ifndef DECLAB_TFVLASOV_SEMICLASSICAL_HPP
#define DECLAB_TFVLASOV_SEMICLASSICAL_HPP

#include <array>
#include <complex>

#include "declab/tfvlasov/fields.hpp"

namespace declab::tfvlasov {

using Complex = std::complex<double>;

/// Leading semiclassical correction bracket
///   1 + (hbar^2 / 12 m) [ (t^2/hbar^2) Lap V - i (t^3/hbar^3) |grad V|^2 ]
/// at grid node `x_index`, with second-order central differences (one-sided
/// at bounded-grid ends). |factor - 1| of order one signals that the
/// evolution is no longer classical.
Complex wigner_kirkwood_factor(const PotentialField& v, int x_index, double t,
                               const PhysicalConstants& k);

using Vec3 = std::array<double, 3>;

/// Thomas-Fermi single-particle propagator
///   (m / 2 pi i hbar t)^{3/2} exp[ i m (x-x')^2 / 2 hbar t - (i t/hbar) V((x+x')/2) ],
/// principal branch: (1/i)^{3/2} = e^{-3 i pi / 4} for t > 0.
/// Pass nullptr for a free particle. Throws SingularTimeError at t = 0.
Complex tf_propagator(const Vec3& x, const Vec3& x_prime, double t, const PotentialField* v,
                      const PhysicalConstants& k);

} // namespace declab::tfvlasov

#endif
