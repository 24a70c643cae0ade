#ifndef DECLAB_DICKE_STUDIES_HPP
#define DECLAB_DICKE_STUDIES_HPP

#include <functional>
#include <span>

#include "declab/dicke/dicke.hpp"
#include "declab/lab/result_table.hpp"

namespace declab::dicke {

/// Full width at half maximum of the revival-probability peak |<U_F>|^2 at
/// t = 2 pi / omega, extracted by linear interpolation between samples on a
/// grid refined to 1/(10 N g).
double revival_fwhm(const DickeParams& p, const RadiationState& state);

/// FWHM of an arbitrary peaked profile around t_peak; `resolution` sets the
/// sampling step and `half_window` the search range on each side.
double peak_fwhm(const std::function<double(double)>& profile, double t_peak,
                 double half_window, double resolution);

/// One row (n_atoms, fwhm, analytic width 1/(N g)) per N, analytic path only.
/// Throws FitFailedError for fewer than 3 N values; N must be increasing.
lab::ResultTable collapse_study(double omega, double g, std::span<const int> n_atoms,
                                int fock_cutoff);

/// Rows (t, |<U_full>|, |<U_F>|, | |<U_full>| - |<U_F>| |), both factors
/// propagated exactly on the composite space.
lab::ResultTable delta_robustness(const DickeParams& p, const RadiationState& state,
                                  std::span<const double> t_grid);

} // namespace declab::dicke

#endif
