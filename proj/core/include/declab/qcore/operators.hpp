#ifndef DECLAB_QCORE_OPERATORS_HPP
#define DECLAB_QCORE_OPERATORS_HPP

#include <complex>
#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "declab/errors.hpp"

namespace declab::qcore {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Operators are dense complex matrices throughout; the dimensions in play
/// (exact-diagonalization scale) never justify a sparse representation.
using Operator = ComplexMatrix;

/// Bosonic mode truncated at `cutoff` photons; operators act on dimension cutoff+1.
struct TruncatedFockSpace {
    explicit TruncatedFockSpace(int cutoff_) : cutoff(cutoff_) {
        if (cutoff < 1) throw ValidationError("Fock cutoff must be >= 1");
    }
    int cutoff;
    int dim() const { return cutoff + 1; }
};

/// N two-level atoms restricted to the symmetric sector j = N/2 (dimension N+1).
struct CollectiveSpinSpace {
    explicit CollectiveSpinSpace(int n_atoms_) : n_atoms(n_atoms_) {
        if (n_atoms < 1) throw ValidationError("atom count must be >= 1");
    }
    int n_atoms;
    int dim() const { return n_atoms + 1; }
    double j() const { return 0.5 * n_atoms; }
};

inline double hermiticity_defect(const Operator& a) {
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

inline bool is_hermitian(const Operator& a, double tol = 1e-12) {
    return a.rows() == a.cols() && hermiticity_defect(a) < tol;
}

inline void require_hermitian(const Operator& a, double tol = 1e-12) {
    if (a.rows() != a.cols())
        throw NonHermitianError("operator is not square");
    if (double d = hermiticity_defect(a); d >= tol)
        throw NonHermitianError("hermiticity defect " + std::to_string(d));
}

/// (a, a†) on the truncated mode: a|n> = sqrt(n)|n-1>, a†|n> = sqrt(n+1)|n+1>,
/// a†|M> = 0 by truncation.
std::pair<Operator, Operator> fock_ladder(const TruncatedFockSpace& space);

/// (Jx, Jz) for j = N/2 in the |j,m> basis ordered by ascending m.
/// The collective sums map as sum_i sigma1_i = 2 Jx, sum_i sigma3_i = 2 Jz.
std::pair<Operator, Operator> collective_spin(const CollectiveSpinSpace& space);

inline constexpr std::int64_t kDefaultTensorDimLimit = 1 << 15;

/// Kronecker product with field factor first, spin factor second:
/// index = n_field * dim_spin + m_spin.
Operator tensor(const Operator& a, const Operator& b,
                std::int64_t max_dim = kDefaultTensorDimLimit);

} // namespace declab::qcore

#endif
