#include "declab/spinfid/spinfid.hpp"

#include <algorithm>
#include <cmath>

namespace declab::spinfid {

namespace {

// Product of the local states over a site set, ordered so that the k-th set
// member maps to bit k of the joint basis index.
ComplexVector joint_state(const ProductState& phi, const std::vector<int>& sites) {
    const int n = static_cast<int>(sites.size());
    ComplexVector v(std::size_t(1) << n);
    for (std::size_t z = 0; z < static_cast<std::size_t>(v.size()); ++z) {
        Complex amp(1.0, 0.0);
        for (int k = 0; k < n; ++k) amp *= phi.local(sites[k])((z >> k) & 1);
        v(z) = amp;
    }
    return v;
}

// Embed a term into the joint space of `sites` (which must contain its support).
ComplexMatrix embed_in_union(const LocalTerm& term, const std::vector<int>& sites) {
    const int n = static_cast<int>(sites.size());
    std::vector<int> pos(term.sites.size());
    for (std::size_t k = 0; k < term.sites.size(); ++k) {
        const auto it = std::find(sites.begin(), sites.end(), term.sites[k]);
        pos[k] = static_cast<int>(it - sites.begin());
    }
    const std::size_t dim = std::size_t(1) << n;
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    const int local_dim = static_cast<int>(term.matrix.rows());
    for (std::size_t z = 0; z < dim; ++z) {
        int b = 0;
        for (std::size_t k = 0; k < pos.size(); ++k) b |= ((z >> pos[k]) & 1) << k;
        for (int bp = 0; bp < local_dim; ++bp) {
            const Complex m = term.matrix(bp, b);
            if (m == Complex(0, 0)) continue;
            std::size_t zp = z;
            for (std::size_t k = 0; k < pos.size(); ++k) {
                zp &= ~(std::size_t(1) << pos[k]);
                zp |= std::size_t((bp >> k) & 1) << pos[k];
            }
            out(zp, z) += m;
        }
    }
    return out;
}

bool supports_overlap(const LocalTerm& a, const LocalTerm& b) {
    for (int s : a.sites)
        if (std::find(b.sites.begin(), b.sites.end(), s) != b.sites.end()) return true;
    return false;
}

std::vector<int> support_union(const LocalTerm& a, const LocalTerm& b) {
    std::vector<int> u = a.sites;
    for (int s : b.sites)
        if (std::find(u.begin(), u.end(), s) == u.end()) u.push_back(s);
    std::sort(u.begin(), u.end());
    return u;
}

} // namespace

double variance(const LocalHamiltonianEnsemble& ens, const ProductState& phi) {
    if (phi.n_sites() != ens.n_sites())
        throw SupportMismatchError("state and ensemble site counts differ");
    const auto& terms = ens.terms();
    const std::size_t nt = terms.size();

    // per-term local expectations
    std::vector<Complex> mean(nt);
    for (std::size_t i = 0; i < nt; ++i) {
        const ComplexVector v = joint_state(phi, terms[i].sites);
        mean[i] = v.dot(terms[i].matrix * v);
    }

    double sigma_sq = 0.0;
    for (std::size_t i = 0; i < nt; ++i) {
        for (std::size_t j = i; j < nt; ++j) {
            if (j > i && !supports_overlap(terms[i], terms[j])) continue; // uncorrelated
            const std::vector<int> u = support_union(terms[i], terms[j]);
            const ComplexVector v = joint_state(phi, u);
            const ComplexMatrix a = embed_in_union(terms[i], u);
            const ComplexMatrix b = embed_in_union(terms[j], u);
            const Complex corr = v.dot(a * (b * v)) - mean[i] * mean[j];
            sigma_sq += (j == i) ? corr.real() : 2.0 * corr.real();
        }
    }
    return sigma_sq;
}

FidelityEvaluator::FidelityEvaluator(const LocalHamiltonianEnsemble& ens,
                                     const ProductState& phi, int max_dim) {
    if (phi.n_sites() != ens.n_sites())
        throw SupportMismatchError("state and ensemble site counts differ");
    if (ens.n_sites() >= 63 || (std::int64_t(1) << ens.n_sites()) > max_dim)
        throw DimensionTooLargeError("2^" + std::to_string(ens.n_sites()) +
                                     " exceeds the exact-diagonalization limit");
    const ComplexMatrix h = dense_hamiltonian(ens);
    const qcore::StateVector psi = qcore::StateVector::normalized(phi.embed());
    const qcore::Propagator prop(h, max_dim);
    const ComplexVector amps = prop.eigenbasis_amplitudes(psi);
    energies_ = prop.eigenvalues();
    weights_.resize(amps.size());
    for (int k = 0; k < amps.size(); ++k) weights_(k) = std::norm(amps(k));
    const double mu1 = weights_.dot(energies_);
    const double mu2 = weights_.dot(energies_.cwiseProduct(energies_));
    sigma_sq_ = mu2 - mu1 * mu1;
}

Complex FidelityEvaluator::amplitude(double t) const {
    Complex acc(0.0, 0.0);
    for (int k = 0; k < energies_.size(); ++k) {
        if (weights_(k) == 0.0) continue;
        acc += weights_(k) * std::polar(1.0, -energies_(k) * t);
    }
    return acc;
}

double FidelityEvaluator::fidelity(double t) const { return std::norm(amplitude(t)); }

double fidelity(const LocalHamiltonianEnsemble& ens, const ProductState& phi, double t,
                int max_dim) {
    return FidelityEvaluator(ens, phi, max_dim).fidelity(t);
}

double gaussian_prediction(double sigma_sq, double t) {
    if (sigma_sq < 0.0) throw ValidationError("sigma_sq must be non-negative");
    return std::exp(-sigma_sq * t * t);
}

TheoremReport check_hypotheses(const LocalHamiltonianEnsemble& ens, const ProductState& phi,
                               double c, double c_prime) {
    if (c <= 0.0) throw ValidationError("the lower-bound constant C must be positive");
    TheoremReport report;
    report.sigma_sq = variance(ens, phi);
    report.c_lower = report.sigma_sq / ens.n_sites();
    report.c_prime = ens.max_term_bound();
    report.hypotheses_met = report.c_lower >= c && report.c_prime <= c_prime;
    return report;
}

std::pair<double, double> short_time_coefficients(const LocalHamiltonianEnsemble& ens,
                                                  const ProductState& phi, int max_dim) {
    if (phi.n_sites() != ens.n_sites())
        throw SupportMismatchError("state and ensemble site counts differ");
    if (ens.n_sites() >= 63 || (std::int64_t(1) << ens.n_sites()) > max_dim)
        throw DimensionTooLargeError("2^" + std::to_string(ens.n_sites()) +
                                     " exceeds the exact-diagonalization limit");
    ComplexVector psi = phi.embed();
    psi /= psi.norm();
    const ComplexVector h1 = apply_hamiltonian(ens, psi);
    const ComplexVector h2 = apply_hamiltonian(ens, h1);
    const double mu1 = psi.dot(h1).real();
    const double mu2 = h1.squaredNorm();
    const double mu3 = h1.dot(h2).real();
    const double mu4 = h2.squaredNorm();
    const double sigma_sq = mu2 - mu1 * mu1;
    // F(t) = 1 - sigma^2 t^2 + q t^4 + O(t^6), q = c4/12 + sigma^4/4
    const double c4 = mu4 - 4.0 * mu1 * mu3 + 6.0 * mu1 * mu1 * mu2 - 3.0 * std::pow(mu1, 4);
    const double q = c4 / 12.0 + sigma_sq * sigma_sq / 4.0;
    return {sigma_sq, q};
}

} // namespace declab::spinfid
