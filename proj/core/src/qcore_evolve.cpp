#include "declab/qcore/evolve.hpp"

#include <cmath>
#include <mutex>

#define LAPACK_COMPLEX_CPP
#include <lapacke.h>

namespace declab::qcore {

namespace {

constexpr double kNormTol = 1e-12;

// Factorizations run one at a time; parallel sweeps stay safe regardless of
// how the LAPACK backend handles concurrent callers.
std::mutex lapack_mutex;

bool is_structurally_diagonal(const Operator& h) {
    for (int c = 0; c < h.cols(); ++c)
        for (int r = 0; r < h.rows(); ++r)
            if (r != c && h(r, c) != Complex(0.0, 0.0)) return false;
    return true;
}

bool is_structurally_real(const Operator& h) {
    for (int c = 0; c < h.cols(); ++c)
        for (int r = 0; r < h.rows(); ++r)
            if (h(r, c).imag() != 0.0) return false;
    return true;
}

} // namespace

StateVector::StateVector(ComplexVector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw ValidationError("empty state vector");
    const double n = amps_.norm();
    if (std::abs(n - 1.0) > kNormTol)
        throw ValidationError("state vector norm " + std::to_string(n) + " not 1 within 1e-12");
}

StateVector StateVector::normalized(ComplexVector amplitudes) {
    const double n = amplitudes.norm();
    if (n == 0.0) throw ValidationError("cannot normalize a zero vector");
    amplitudes /= n;
    return StateVector(std::move(amplitudes));
}

Propagator::Propagator(const Operator& hamiltonian, int max_dim) {
    require_hermitian(hamiltonian);
    const int n = static_cast<int>(hamiltonian.rows());
    if (n > max_dim)
        throw DimensionTooLargeError("dimension " + std::to_string(n) +
                                     " exceeds exact-diagonalization limit " +
                                     std::to_string(max_dim));
    if (is_structurally_diagonal(hamiltonian)) {
        kind_ = Kind::diagonal;
        eigenvalues_ = hamiltonian.diagonal().real();
        return;
    }
    if (is_structurally_real(hamiltonian)) {
        kind_ = Kind::real_symmetric;
        real_vectors_ = hamiltonian.real();
        eigenvalues_.resize(n);
        const std::lock_guard<std::mutex> lock(lapack_mutex);
        const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                        real_vectors_.data(), n, eigenvalues_.data());
        if (info != 0) throw Error("dsyevd failed with info " + std::to_string(info));
        return;
    }
    kind_ = Kind::hermitian;
    complex_vectors_ = hamiltonian;
    eigenvalues_.resize(n);
    const std::lock_guard<std::mutex> lock(lapack_mutex);
    const int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'L', n,
        reinterpret_cast<lapack_complex_double*>(complex_vectors_.data()), n,
        eigenvalues_.data());
    if (info != 0) throw Error("zheevd failed with info " + std::to_string(info));
}

ComplexVector Propagator::to_eigenbasis(const ComplexVector& v) const {
    switch (kind_) {
        case Kind::diagonal: return v;
        case Kind::real_symmetric:
            return real_vectors_.transpose() * v.real() +
                   Complex(0, 1) * (real_vectors_.transpose() * v.imag());
        default: return complex_vectors_.adjoint() * v;
    }
}

ComplexVector Propagator::from_eigenbasis(const ComplexVector& v) const {
    switch (kind_) {
        case Kind::diagonal: return v;
        case Kind::real_symmetric:
            return real_vectors_ * v.real() + Complex(0, 1) * (real_vectors_ * v.imag());
        default: return complex_vectors_ * v;
    }
}

StateVector Propagator::apply(const StateVector& psi0, double t) const {
    if (psi0.dim() != dim()) throw DimensionMismatchError("state/propagator dimension mismatch");
    ComplexVector amps = to_eigenbasis(psi0.amplitudes());
    for (int k = 0; k < amps.size(); ++k)
        amps(k) *= std::polar(1.0, -eigenvalues_(k) * t);
    ComplexVector out = from_eigenbasis(amps);
    const double n = out.norm();
    if (std::abs(n - 1.0) > 1e-10)
        throw Error("unitarity loss: evolved norm " + std::to_string(n));
    return StateVector(std::move(out));
}

ComplexVector Propagator::eigenbasis_amplitudes(const StateVector& psi) const {
    if (psi.dim() != dim()) throw DimensionMismatchError("state/propagator dimension mismatch");
    return to_eigenbasis(psi.amplitudes());
}

Complex Propagator::survival_amplitude(const StateVector& psi0, double t) const {
    if (psi0.dim() != dim()) throw DimensionMismatchError("state/propagator dimension mismatch");
    const ComplexVector amps = to_eigenbasis(psi0.amplitudes());
    Complex acc(0.0, 0.0);
    for (int k = 0; k < amps.size(); ++k)
        acc += std::norm(amps(k)) * std::polar(1.0, -eigenvalues_(k) * t);
    return acc;
}

StateVector evolve(const Operator& hamiltonian, const StateVector& psi0, double t, int max_dim) {
    return Propagator(hamiltonian, max_dim).apply(psi0, t);
}

Complex expectation(const StateVector& psi, const Operator& a) {
    if (a.rows() != psi.dim() || a.cols() != psi.dim())
        throw DimensionMismatchError("operator/state dimension mismatch");
    return psi.amplitudes().dot(a * psi.amplitudes());
}

} // namespace declab::qcore
