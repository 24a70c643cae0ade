#include "declab/spinfid/spinfid.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace declab::spinfid {

namespace {

void validate_term(const LocalTerm& term, int n_sites) {
    const std::size_t ns = term.sites.size();
    if (ns != 1 && ns != 2)
        throw ValidationError("term support must be a single site or an adjacent pair");
    for (int s : term.sites)
        if (s < 0 || s >= n_sites)
            throw SupportMismatchError("term references site " + std::to_string(s) +
                                       " outside [0, " + std::to_string(n_sites) + ")");
    if (ns == 2 && term.sites[1] != term.sites[0] + 1)
        throw ValidationError("pair terms must act on adjacent sites (i, i+1)");
    const int dim = ns == 1 ? 2 : 4;
    if (term.matrix.rows() != dim || term.matrix.cols() != dim)
        throw ValidationError("term matrix dimension does not match its support");
    if ((term.matrix - term.matrix.adjoint()).cwiseAbs().maxCoeff() >= 1e-12)
        throw NonHermitianError("local term is not Hermitian");
}

} // namespace

LocalHamiltonianEnsemble::LocalHamiltonianEnsemble(int n_sites, std::vector<LocalTerm> terms,
                                                   std::string model_tag)
    : n_sites_(n_sites), terms_(std::move(terms)), model_tag_(std::move(model_tag)) {
    if (n_sites_ < 1) throw ValidationError("ensemble needs at least one site");
    for (const auto& t : terms_) validate_term(t, n_sites_);
}

double LocalHamiltonianEnsemble::max_term_bound() const {
    double bound = 0.0;
    for (const auto& t : terms_) {
        Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(t.matrix, Eigen::EigenvaluesOnly);
        bound = std::max(bound, es.eigenvalues().cwiseAbs().maxCoeff());
    }
    return bound;
}

ProductState::ProductState(std::vector<Eigen::Vector2cd> locals) : locals_(std::move(locals)) {
    if (locals_.empty()) throw ValidationError("product state needs at least one site");
    for (const auto& v : locals_)
        if (std::abs(v.norm() - 1.0) > 1e-12)
            throw ValidationError("local state is not normalized");
}

ComplexVector ProductState::embed() const {
    const int n = n_sites();
    const std::size_t dim = std::size_t(1) << n;
    ComplexVector psi(dim);
    for (std::size_t z = 0; z < dim; ++z) {
        Complex amp(1.0, 0.0);
        for (int i = 0; i < n; ++i) amp *= locals_[i]((z >> i) & 1);
        psi(z) = amp;
    }
    return psi;
}

ComplexMatrix dense_hamiltonian(const LocalHamiltonianEnsemble& ens) {
    const int n = ens.n_sites();
    const std::size_t dim = std::size_t(1) << n;
    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (const auto& term : ens.terms()) {
        if (term.sites.size() == 1) {
            const int i = term.sites[0];
            for (std::size_t z = 0; z < dim; ++z) {
                const int b = (z >> i) & 1;
                for (int bp = 0; bp < 2; ++bp) {
                    const Complex m = term.matrix(bp, b);
                    if (m == Complex(0, 0)) continue;
                    const std::size_t zp = (z & ~(std::size_t(1) << i)) | (std::size_t(bp) << i);
                    h(zp, z) += m;
                }
            }
        } else {
            const int i = term.sites[0];
            const int j = term.sites[1];
            for (std::size_t z = 0; z < dim; ++z) {
                const int b = ((z >> i) & 1) | (((z >> j) & 1) << 1);
                for (int bp = 0; bp < 4; ++bp) {
                    const Complex m = term.matrix(bp, b);
                    if (m == Complex(0, 0)) continue;
                    std::size_t zp = z & ~((std::size_t(1) << i) | (std::size_t(1) << j));
                    zp |= (std::size_t(bp & 1) << i) | (std::size_t((bp >> 1) & 1) << j);
                    h(zp, z) += m;
                }
            }
        }
    }
    return h;
}

ComplexVector apply_hamiltonian(const LocalHamiltonianEnsemble& ens, const ComplexVector& psi) {
    const int n = ens.n_sites();
    const std::size_t dim = std::size_t(1) << n;
    if (static_cast<std::size_t>(psi.size()) != dim)
        throw DimensionMismatchError("state dimension is not 2^N");
    ComplexVector out = ComplexVector::Zero(dim);
    for (const auto& term : ens.terms()) {
        if (term.sites.size() == 1) {
            const int i = term.sites[0];
            for (std::size_t z = 0; z < dim; ++z) {
                const int b = (z >> i) & 1;
                const std::size_t zf = z ^ (std::size_t(1) << i);
                out(z) += term.matrix(b, b) * psi(z) + term.matrix(b, 1 - b) * psi(zf);
            }
        } else {
            const int i = term.sites[0];
            const int j = term.sites[1];
            for (std::size_t z = 0; z < dim; ++z) {
                const int b = ((z >> i) & 1) | (((z >> j) & 1) << 1);
                const std::size_t base =
                    z & ~((std::size_t(1) << i) | (std::size_t(1) << j));
                for (int bs = 0; bs < 4; ++bs) {
                    const Complex m = term.matrix(b, bs);
                    if (m == Complex(0, 0)) continue;
                    const std::size_t zs =
                        base | (std::size_t(bs & 1) << i) | (std::size_t((bs >> 1) & 1) << j);
                    out(z) += m * psi(zs);
                }
            }
        }
    }
    return out;
}

namespace models {

namespace {
const Eigen::Matrix2cd kSigma1 = (Eigen::Matrix2cd() << 0, 1, 1, 0).finished();
const Eigen::Matrix2cd kSigma3 = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
} // namespace

ProductState all_plus_x(int n_sites) {
    Eigen::Vector2cd plus;
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return ProductState(std::vector<Eigen::Vector2cd>(n_sites, plus));
}

ProductState all_up(int n_sites) {
    Eigen::Vector2cd up;
    up << 1.0, 0.0;
    return ProductState(std::vector<Eigen::Vector2cd>(n_sites, up));
}

ProductState random_product(int n_sites, lab::SplitMix64& rng) {
    std::vector<Eigen::Vector2cd> locals(n_sites);
    for (auto& v : locals) {
        v << Complex(rng.next_gaussian(), rng.next_gaussian()),
            Complex(rng.next_gaussian(), rng.next_gaussian());
        v.normalize();
    }
    return ProductState(std::move(locals));
}

SpinModel independent_field(int n_sites, double delta) {
    std::vector<LocalTerm> terms;
    terms.reserve(n_sites);
    for (int i = 0; i < n_sites; ++i)
        terms.push_back({{i}, ComplexMatrix(0.5 * delta * kSigma3)});
    return {LocalHamiltonianEnsemble(n_sites, std::move(terms), "independent-field"),
            all_plus_x(n_sites)};
}

SpinModel transverse_ising(int n_sites, double coupling, double field) {
    std::vector<LocalTerm> terms;
    const Eigen::Matrix4cd zz = Eigen::kroneckerProduct(kSigma3, kSigma3).eval();
    for (int i = 0; i + 1 < n_sites; ++i)
        terms.push_back({{i, i + 1}, ComplexMatrix(coupling * zz)});
    for (int i = 0; i < n_sites; ++i)
        terms.push_back({{i}, ComplexMatrix(field * kSigma1)});
    return {LocalHamiltonianEnsemble(n_sites, std::move(terms), "transverse-ising"),
            all_up(n_sites)};
}

SpinModel randomized(int n_sites, lab::SplitMix64& rng) {
    auto random_hermitian = [&rng](int d) {
        ComplexMatrix m(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c)
                m(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
        return ComplexMatrix(0.5 * (m + m.adjoint()));
    };
    std::vector<LocalTerm> terms;
    for (int i = 0; i < n_sites; ++i) terms.push_back({{i}, random_hermitian(2)});
    for (int i = 0; i + 1 < n_sites; ++i)
        terms.push_back({{i, i + 1}, random_hermitian(4)});
    return {LocalHamiltonianEnsemble(n_sites, std::move(terms), "randomized"),
            random_product(n_sites, rng)};
}

} // namespace models

} // namespace declab::spinfid
