#ifndef DECLAB_SPINFID_SPINFID_HPP
#define DECLAB_SPINFID_SPINFID_HPP

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "declab/lab/result_table.hpp"
#include "declab/lab/rng.hpp"
#include "declab/qcore/evolve.hpp"
#include "declab/qcore/operators.hpp"

namespace declab::spinfid {

using qcore::Complex;
using qcore::ComplexMatrix;
using qcore::ComplexVector;

/// One bounded Hermitian term of H = sum_i H_i, supported on a single site or
/// an adjacent pair. Pair matrices are 4x4 in the basis |site, site+1> with
/// the first site as the fast index.
struct LocalTerm {
    std::vector<int> sites; // one site, or {i, i+1}
    ComplexMatrix matrix;   // 2x2 or 4x4, Hermitian to 1e-12
};

class LocalHamiltonianEnsemble {
public:
    LocalHamiltonianEnsemble(int n_sites, std::vector<LocalTerm> terms, std::string model_tag);

    int n_sites() const { return n_sites_; }
    const std::vector<LocalTerm>& terms() const { return terms_; }
    const std::string& model_tag() const { return model_tag_; }

    /// Largest eigenvalue magnitude over all terms (the bound C').
    double max_term_bound() const;

private:
    int n_sites_;
    std::vector<LocalTerm> terms_;
    std::string model_tag_;
};

/// Unentangled N-site state; every local 2-vector normalized to 1e-12.
class ProductState {
public:
    explicit ProductState(std::vector<Eigen::Vector2cd> locals);
    int n_sites() const { return static_cast<int>(locals_.size()); }
    const Eigen::Vector2cd& local(int i) const { return locals_[i]; }

    /// Amplitudes on the full 2^N space; site i maps to bit i of the basis
    /// index, component 0 being spin-up (sigma3 = +1).
    ComplexVector embed() const;

private:
    std::vector<Eigen::Vector2cd> locals_;
};

struct TheoremReport {
    double sigma_sq = 0.0; // variance of H in the product state
    double c_lower = 0.0;  // sigma^2 / N
    double c_prime = 0.0;  // max spectral bound over terms
    bool hypotheses_met = false;
};

// --- operations --------------------------------------------------------------

/// Variance <H^2> - <H>^2 via the local covariance decomposition: terms with
/// disjoint support are uncorrelated under product states, so only
/// overlapping pairs are evaluated, on their joint (<= 3 site) local space.
/// Works for arbitrary N; never touches the 2^N space.
double variance(const LocalHamiltonianEnsemble& ens, const ProductState& phi);

/// Dense H on the full 2^N space (test oracle and evaluator backend).
ComplexMatrix dense_hamiltonian(const LocalHamiltonianEnsemble& ens);

/// H |psi> applied term by term on the full space without forming dense H.
ComplexVector apply_hamiltonian(const LocalHamiltonianEnsemble& ens, const ComplexVector& psi);

/// Survival amplitude/fidelity sharing one eigendecomposition across times.
class FidelityEvaluator {
public:
    FidelityEvaluator(const LocalHamiltonianEnsemble& ens, const ProductState& phi,
                      int max_dim = qcore::kDefaultExactDimLimit);
    Complex amplitude(double t) const; // <phi| e^{-iHt} |phi>
    double fidelity(double t) const;   // |amplitude|^2
    double sigma_sq() const { return sigma_sq_; }

private:
    Eigen::VectorXd energies_;
    Eigen::VectorXd weights_; // |<E_k|phi>|^2
    double sigma_sq_;
};

/// Exact F(t) = |<phi|e^{-iHt}|phi>|^2; 2^N must stay within the
/// exact-diagonalization limit.
double fidelity(const LocalHamiltonianEnsemble& ens, const ProductState& phi, double t,
                int max_dim = qcore::kDefaultExactDimLimit);

/// The limiting law e^{-sigma^2 t^2}.
double gaussian_prediction(double sigma_sq, double t);

/// Checks sigma^2/N >= C and max term bound <= C'.
TheoremReport check_hypotheses(const LocalHamiltonianEnsemble& ens, const ProductState& phi,
                               double c, double c_prime);

/// (sigma^2, q) with F(t) = 1 - sigma^2 t^2 + q t^4 + O(t^6);
/// q = c4/12 + sigma^4/4 assembled from the exact moments <H^k>, k <= 4.
std::pair<double, double> short_time_coefficients(const LocalHamiltonianEnsemble& ens,
                                                  const ProductState& phi,
                                                  int max_dim = qcore::kDefaultExactDimLimit);

// --- built-in model families --------------------------------------------------

struct SpinModel {
    LocalHamiltonianEnsemble ensemble;
    ProductState state;
};

namespace models {

/// H_i = (delta/2) sigma3 on every site; with the +x product state this has
/// sigma^2 = N delta^2 / 4 and closed-form fidelity cos^{2N}(delta t / 2).
SpinModel independent_field(int n_sites, double delta);

/// Open-boundary transverse Ising: J sigma3 sigma3 on bonds, h sigma1 on sites.
SpinModel transverse_ising(int n_sites, double coupling, double field);

/// Random Hermitian single-site + adjacent-pair terms and a random product state.
SpinModel randomized(int n_sites, lab::SplitMix64& rng);

ProductState all_plus_x(int n_sites);
ProductState all_up(int n_sites);
ProductState random_product(int n_sites, lab::SplitMix64& rng);

} // namespace models

/// For each N: D(N) = max over the rescaled grid of |F(tau/sigma) - e^{-tau^2}|.
/// Emits rows (n_sites, sigma_sq, sup_deviation).
enum class Family { independent_field, transverse_ising };
lab::ResultTable convergence_study(Family family, std::span<const int> n_list,
                                   std::span<const double> tau_grid, double delta,
                                   double coupling, double field);

} // namespace declab::spinfid

#endif
