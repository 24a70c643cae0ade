#ifndef DECLAB_TFVLASOV_FUNCTIONAL_HPP
#define DECLAB_TFVLASOV_FUNCTIONAL_HPP

#include "declab/tfvlasov/fields.hpp"

namespace declab::tfvlasov {

/// Thomas-Fermi kinetic-energy density tau = (3/10)(hbar^2/m)(3 pi^2)^{2/3} rho^{5/3},
/// evaluated pointwise.
RealVector tf_kinetic_density(const DensityField& rho, const PhysicalConstants& k);

/// Local Fermi energy E_F = (hbar^2/2m)(3 pi^2)^{2/3} rho^{2/3}; satisfies
/// tau = (3/5) rho E_F pointwise.
RealVector fermi_energy(const DensityField& rho, const PhysicalConstants& k);

/// Total energy on a radial grid:
///   E = int tau  -  Z e^2 int rho / r  +  (e^2/2) int int rho rho' / |x - x'|,
/// the Hartree term via the shell theorem (inner/outer cumulative integrals).
/// The density must integrate to Z within 1e-6 relative (neutrality).
double tf_energy(const DensityField& rho, const PhysicalConstants& k);

/// Scaling-family minimizer used by the energy-scaling study: densities
/// rho(r) = Z lambda^3 h_p(lambda r) with h_p(u) ~ (1 + u)^{-p}, normalized
/// on the grid; E is minimized over lambda (inner) and p (outer) by nested
/// golden-section searches.
struct TfMinimum {
    double energy = 0.0;
    double lambda = 0.0;
    double shape_p = 0.0;
};

struct TfProfileFamily {
    double p_min = 7.5;
    double p_max = 12.0;
    double u_max = 60.0; // grid extent in scaled units
    int n_grid = 2048;
};

TfMinimum minimize_tf_energy(const PhysicalConstants& k, const TfProfileFamily& family = {});

} // namespace declab::tfvlasov

#endif
