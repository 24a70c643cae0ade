#include "declab/dicke/dicke.hpp"

#include <cmath>

namespace declab::dicke {

using qcore::CollectiveSpinSpace;
using qcore::TruncatedFockSpace;

void DickeParams::validate() const {
    if (omega <= 0.0) throw ValidationError("omega must be positive");
    if (g <= 0.0) throw ValidationError("g must be positive");
    if (delta < 0.0) throw ValidationError("delta must be non-negative");
    if (n_atoms < 1) throw ValidationError("n_atoms must be >= 1");
    if (fock_cutoff < 1) throw ValidationError("fock_cutoff must be >= 1");
}

PolarizationSector::PolarizationSector(int s_, int n_atoms) : s(s_) {
    if (std::abs(s) > n_atoms || (n_atoms - s) % 2 != 0)
        throw ValidationError("sector s = " + std::to_string(s) +
                              " is not an eigenvalue of sum sigma1 for N = " +
                              std::to_string(n_atoms));
}

RadiationState::RadiationState(ComplexVector coefficients) : c_(std::move(coefficients)) {
    if (c_.size() < 2) throw ValidationError("radiation state needs cutoff >= 1");
    const double n2 = c_.squaredNorm();
    if (std::abs(n2 - 1.0) > 1e-12)
        throw ValidationError("radiation coefficients not normalized");
}

RadiationState RadiationState::vacuum(int fock_cutoff) { return number(fock_cutoff, 0); }

RadiationState RadiationState::number(int fock_cutoff, int n) {
    if (n < 0 || n > fock_cutoff) throw ValidationError("number state outside cutoff");
    ComplexVector c = ComplexVector::Zero(fock_cutoff + 1);
    c(n) = 1.0;
    return RadiationState(std::move(c));
}

RadiationState RadiationState::coherent(int fock_cutoff, Complex alpha) {
    ComplexVector c(fock_cutoff + 1);
    // c_n = alpha^n / sqrt(n!) e^{-|alpha|^2/2}, built by the stable ratio recurrence
    c(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n <= fock_cutoff; ++n) c(n) = c(n - 1) * alpha / std::sqrt(double(n));
    c /= c.norm();
    return RadiationState(std::move(c));
}

int RadiationState::max_support() const {
    for (int n = static_cast<int>(c_.size()) - 1; n >= 0; --n)
        if (std::abs(c_(n)) > 1e-14) return n;
    return 0;
}

Operator build_dicke_hamiltonian(const DickeParams& p) {
    p.validate();
    const TruncatedFockSpace fock(p.fock_cutoff);
    const CollectiveSpinSpace spin(p.n_atoms);
    const auto [a, adag] = fock_ladder(fock);
    const auto [jx, jz] = collective_spin(spin);
    const Operator eye_f = Operator::Identity(fock.dim(), fock.dim());
    const Operator eye_s = Operator::Identity(spin.dim(), spin.dim());

    Operator h = p.omega * qcore::tensor(Operator(adag * a), eye_s);
    h += p.delta * qcore::tensor(eye_f, jz);              // (delta/2) sum sigma3 = delta Jz
    h += p.g * qcore::tensor(Operator(a + adag), Operator(2.0 * jx));
    return h;
}

Operator build_hf_hamiltonian(const DickeParams& p) {
    DickeParams q = p;
    q.delta = 0.0;
    return build_dicke_hamiltonian(q);
}

} // namespace declab::dicke
