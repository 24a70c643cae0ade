#ifndef DECLAB_DICKE_DICKE_HPP
#define DECLAB_DICKE_DICKE_HPP

#include <complex>
#include <span>
#include <vector>

#include "declab/qcore/evolve.hpp"
#include "declab/qcore/operators.hpp"

namespace declab::dicke {

using qcore::Complex;
using qcore::ComplexVector;
using qcore::Operator;

/// Knobs of the single-mode model: H = omega a†a + (delta/2) sum_i sigma3_i
///                                    + g sum_i sigma1_i (a† + a).
/// delta = 0 selects the integrable Hamiltonian H_F.
struct DickeParams {
    double omega = 1.0;
    double delta = 0.0;
    double g = 0.1;
    int n_atoms = 1;
    int fock_cutoff = 16;

    void validate() const;
};

/// Eigenvalue sector s of sum_i sigma1_i; |s| <= N and s = N (mod 2).
/// Full polarization is s = N.
struct PolarizationSector {
    PolarizationSector(int s_, int n_atoms);
    int s;
};

/// Radiation state sum_n c_n |n> on the truncated mode; sum |c_n|^2 = 1 to 1e-12.
class RadiationState {
public:
    explicit RadiationState(ComplexVector coefficients);

    static RadiationState vacuum(int fock_cutoff);
    static RadiationState number(int fock_cutoff, int n);
    /// Coherent state truncated at the cutoff and renormalized.
    static RadiationState coherent(int fock_cutoff, Complex alpha);

    int fock_cutoff() const { return static_cast<int>(c_.size()) - 1; }
    const ComplexVector& coefficients() const { return c_; }
    /// Largest n with |c_n| > 1e-14.
    int max_support() const;

private:
    ComplexVector c_;
};

// --- Hamiltonians on the composite space (field factor first) ---------------

Operator build_dicke_hamiltonian(const DickeParams& p);
/// The delta -> 0 Hamiltonian; commutes with sum_i sigma1_i = 2 Jx.
Operator build_hf_hamiltonian(const DickeParams& p);

// --- closed-form ingredients of U_F(t) --------------------------------------

/// Accumulated c-number phase xi(t) = (s g / omega)^2 (omega t - sin omega t).
double evolution_phase(double t, const PolarizationSector& sector, const DickeParams& p);

/// Displacement amplitude alpha(t) = (s g / omega)(1 - e^{i omega t}).
Complex displacement_amplitude(double t, const PolarizationSector& sector, const DickeParams& p);

/// <U_F(t)> for a frozen polarization sector:
///   e^{i xi} sum_{m,n} c_m* c_n e^{-i m omega t} <m|D(alpha)|n>,
/// with the displaced-number matrix element evaluated from associated
/// Laguerre polynomials and log-factorials.
/// Throws CutoffTooSmallError if the state has support within 2 levels of the cutoff.
Complex analytic_expectation(double t, const RadiationState& state, const DickeParams& p,
                             const PolarizationSector& sector);

/// Collapse envelope exp[-(N g / omega)^2 (1 - cos omega t)] (fully polarized, s = N).
double envelope(double t, const DickeParams& p);

/// Characteristic revival-peak width 1/(N g).
double recurrence_width(const DickeParams& p);

// --- exact-propagation oracle runs ------------------------------------------

struct ExactRun {
    std::vector<double> t;
    std::vector<Complex> expectation; // <psi0| e^{-iHt} |psi0>
    double max_cutoff_occupation = 0.0;
    bool truncation_suspect = false; // occupation of level M exceeded 1e-8
    int fock_cutoff = 0;
};

/// Propagates c ⊗ |s=N>_x exactly under the full Hamiltonian (use_full_h)
/// or under H_F, recording <U(t)> and the top-Fock-level occupation.
ExactRun exact_expectation_run(const DickeParams& p, const RadiationState& state,
                               std::span<const double> t_grid, bool use_full_h);

/// Smallest cutoff keeping the top-level occupation of a fully polarized run
/// comfortably below the 1e-8 flag threshold.
int adequate_fock_cutoff(const DickeParams& p, const RadiationState& state);

} // namespace declab::dicke

#endif
