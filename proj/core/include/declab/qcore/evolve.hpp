#ifndef DECLAB_QCORE_EVOLVE_HPP
#define DECLAB_QCORE_EVOLVE_HPP

#include <complex>

#include "declab/qcore/operators.hpp"

namespace declab::qcore {

/// Normalized state vector; ||psi|| = 1 to 1e-12 is enforced at construction.
class StateVector {
public:
    explicit StateVector(ComplexVector amplitudes);

    /// Rescales the input to unit norm (zero vectors are rejected).
    static StateVector normalized(ComplexVector amplitudes);

    int dim() const { return static_cast<int>(amps_.size()); }
    const ComplexVector& amplitudes() const { return amps_; }
    Complex operator[](int i) const { return amps_(i); }

private:
    ComplexVector amps_;
};

inline constexpr int kDefaultExactDimLimit = 4096;

/// Exact propagator e^{-iHt} built from one eigendecomposition of H and
/// reused across time samples (hbar = 1). Diagonal and real-symmetric
/// Hamiltonians take cheaper factorization paths.
class Propagator {
public:
    explicit Propagator(const Operator& hamiltonian,
                        int max_dim = kDefaultExactDimLimit);

    StateVector apply(const StateVector& psi0, double t) const;

    /// <psi0| e^{-iHt} |psi0> without forming the evolved state each call.
    Complex survival_amplitude(const StateVector& psi0, double t) const;

    /// Overlaps <E_k|psi> with the eigenbasis, ordered like eigenvalues().
    ComplexVector eigenbasis_amplitudes(const StateVector& psi) const;

    int dim() const { return static_cast<int>(eigenvalues_.size()); }
    const RealVector& eigenvalues() const { return eigenvalues_; }

private:
    enum class Kind { diagonal, real_symmetric, hermitian };
    Kind kind_;
    RealVector eigenvalues_;
    RealMatrix real_vectors_;      // real_symmetric path
    ComplexMatrix complex_vectors_; // hermitian path
    ComplexVector to_eigenbasis(const ComplexVector& v) const;
    ComplexVector from_eigenbasis(const ComplexVector& v) const;
};

/// One-shot convenience around Propagator.
StateVector evolve(const Operator& hamiltonian, const StateVector& psi0, double t,
                   int max_dim = kDefaultExactDimLimit);

/// <psi|A|psi>; dimensions must match.
Complex expectation(const StateVector& psi, const Operator& a);

} // namespace declab::qcore

#endif
