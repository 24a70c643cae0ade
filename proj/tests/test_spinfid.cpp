#include <doctest.h>

#include <cmath>

#include "declab/lab/fit.hpp"
#include "declab/lab/rng.hpp"
#include "declab/spinfid/spinfid.hpp"

using namespace declab;
using spinfid::LocalHamiltonianEnsemble;
using spinfid::LocalTerm;
using spinfid::ProductState;
using qcore::Complex;
using qcore::ComplexMatrix;
using qcore::ComplexVector;

namespace {

// dense full-space variance, the oracle for the local-covariance path
double dense_variance(const LocalHamiltonianEnsemble& ens, const ProductState& phi) {
    const ComplexMatrix h = spinfid::dense_hamiltonian(ens);
    ComplexVector psi = phi.embed();
    psi /= psi.norm();
    const ComplexVector hpsi = h * psi;
    const double mu1 = psi.dot(hpsi).real();
    const double mu2 = hpsi.squaredNorm();
    return mu2 - mu1 * mu1;
}

} // namespace

TEST_CASE("variance of built-in models") {
    SUBCASE("independent field anchor: sigma^2 = N delta^2 / 4") {
        for (int n : {1, 3, 8, 40}) {
            const auto model = spinfid::models::independent_field(n, 0.7);
            CHECK(spinfid::variance(model.ensemble, model.state) ==
                  doctest::Approx(n * 0.49 / 4.0).epsilon(1e-13));
        }
    }
    SUBCASE("eigenstate has zero variance") {
        const auto model = spinfid::models::independent_field(5, 1.0);
        const auto up = spinfid::models::all_up(5);
        CHECK(std::abs(spinfid::variance(model.ensemble, up)) < 1e-13);
    }
    SUBCASE("transverse Ising against the dense oracle") {
        lab::SplitMix64 rng(31);
        const auto model = spinfid::models::transverse_ising(8, 1.0, 0.6);
        const auto state = spinfid::models::random_product(8, rng);
        const double local = spinfid::variance(model.ensemble, state);
        CHECK(local == doctest::Approx(dense_variance(model.ensemble, state)).epsilon(1e-10));
    }
    SUBCASE("randomized ensembles against the dense oracle") {
        lab::SplitMix64 rng(77);
        for (int rep = 0; rep < 6; ++rep) {
            const int n = 2 + int(rng.next_u64() % 7);
            const auto model = spinfid::models::randomized(n, rng);
            const double local = spinfid::variance(model.ensemble, model.state);
            const double dense = dense_variance(model.ensemble, model.state);
            CHECK(local == doctest::Approx(dense).epsilon(1e-10));
        }
    }
    SUBCASE("site-count mismatch rejected") {
        const auto model = spinfid::models::independent_field(4, 1.0);
        const auto phi = spinfid::models::all_up(5);
        CHECK_THROWS_AS(spinfid::variance(model.ensemble, phi), SupportMismatchError);
    }
}

TEST_CASE("ensemble validation") {
    const Eigen::Matrix2cd nonherm = (Eigen::Matrix2cd() << 0, 1, 0, 0).finished();
    CHECK_THROWS_AS(LocalHamiltonianEnsemble(2, {LocalTerm{{0}, nonherm}}, "bad"),
                    NonHermitianError);
    const Eigen::Matrix2cd pauli_z = (Eigen::Matrix2cd() << 1, 0, 0, -1).finished();
    CHECK_THROWS_AS(LocalHamiltonianEnsemble(2, {LocalTerm{{5}, pauli_z}}, "bad"),
                    SupportMismatchError);
    CHECK_THROWS_AS(
        LocalHamiltonianEnsemble(4, {LocalTerm{{0, 2}, Eigen::Matrix4cd::Identity()}}, "bad"),
        ValidationError);
}

TEST_CASE("fidelity") {
    SUBCASE("t = 0 gives one") {
        const auto model = spinfid::models::transverse_ising(6, 1.0, 1.0);
        CHECK(spinfid::fidelity(model.ensemble, model.state, 0.0) ==
              doctest::Approx(1.0).epsilon(1e-13));
    }
    SUBCASE("independent-field closed form") {
        const auto model = spinfid::models::independent_field(8, 1.0);
        const spinfid::FidelityEvaluator eval(model.ensemble, model.state);
        for (double t : {0.3, 1.0, 2.2, 4.9}) {
            const double expected = std::pow(std::cos(0.5 * t), 16);
            CHECK(eval.fidelity(t) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("commuting single-site ensembles factorize over sites") {
        // product state, single-site terms: F = prod of per-site survival
        lab::SplitMix64 rng(5);
        const int n = 5;
        std::vector<LocalTerm> terms;
        std::vector<Eigen::Vector2cd> locals;
        for (int i = 0; i < n; ++i) {
            ComplexMatrix m(2, 2);
            for (int r = 0; r < 2; ++r)
                for (int c = 0; c < 2; ++c)
                    m(r, c) = Complex(rng.next_gaussian(), rng.next_gaussian());
            m = (0.5 * (m + m.adjoint())).eval();
            terms.push_back({{i}, m});
            Eigen::Vector2cd v;
            v << Complex(rng.next_gaussian(), rng.next_gaussian()),
                Complex(rng.next_gaussian(), rng.next_gaussian());
            locals.push_back(v.normalized());
        }
        const LocalHamiltonianEnsemble ens(n, terms, "commuting");
        const ProductState phi(locals);
        const double t = 0.8;
        double product = 1.0;
        for (int i = 0; i < n; ++i) {
            Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(terms[i].matrix);
            Complex amp(0, 0);
            for (int k = 0; k < 2; ++k) {
                const Complex overlap = es.eigenvectors().col(k).dot(locals[i]);
                amp += std::norm(overlap) * std::polar(1.0, -es.eigenvalues()(k) * t);
            }
            product *= std::norm(amp);
        }
        CHECK(spinfid::fidelity(ens, phi, t) == doctest::Approx(product).epsilon(1e-12));
    }
    SUBCASE("time-reversal symmetry") {
        lab::SplitMix64 rng(13);
        const auto model = spinfid::models::randomized(6, rng);
        const spinfid::FidelityEvaluator eval(model.ensemble, model.state);
        for (double t : {0.2, 1.4, 3.3})
            CHECK(eval.fidelity(t) == doctest::Approx(eval.fidelity(-t)).epsilon(1e-12));
    }
    SUBCASE("dimension guard") {
        const auto model = spinfid::models::independent_field(13, 1.0);
        CHECK_THROWS_AS(spinfid::fidelity(model.ensemble, model.state, 1.0),
                        DimensionTooLargeError);
    }
}

TEST_CASE("gaussian prediction") {
    CHECK(spinfid::gaussian_prediction(2.0, 0.0) == 1.0);
    CHECK(spinfid::gaussian_prediction(1.0, 1.0) == doctest::Approx(std::exp(-1.0)));
    // matches 1 - sigma^2 t^2 to fourth order
    const double s2 = 0.7, t = 1e-3;
    CHECK(std::abs(spinfid::gaussian_prediction(s2, t) - (1.0 - s2 * t * t)) < 1e-11);
    CHECK_THROWS_AS(spinfid::gaussian_prediction(-1.0, 0.5), ValidationError);
}

TEST_CASE("hypothesis checks") {
    SUBCASE("independent-field anchor values") {
        const auto model = spinfid::models::independent_field(6, 1.0);
        const auto report =
            spinfid::check_hypotheses(model.ensemble, model.state, 0.2, 0.6);
        CHECK(report.c_lower == doctest::Approx(0.25).epsilon(1e-13));
        CHECK(report.c_prime == doctest::Approx(0.5).epsilon(1e-13));
        CHECK(report.hypotheses_met);
    }
    SUBCASE("zero-variance state fails the lower bound") {
        const auto model = spinfid::models::independent_field(6, 1.0);
        const auto up = spinfid::models::all_up(6);
        const auto report = spinfid::check_hypotheses(model.ensemble, up, 0.2, 0.6);
        CHECK(report.sigma_sq == doctest::Approx(0.0));
        CHECK(!report.hypotheses_met);
    }
    SUBCASE("variance per site stabilizes across chain lengths") {
        lab::SplitMix64 rng(41);
        double prev = 0.0;
        for (int n : {4, 8, 12}) {
            const auto model = spinfid::models::transverse_ising(n, 1.0, 1.0);
            const auto state = spinfid::models::random_product(n, rng);
            const double per_site = spinfid::variance(model.ensemble, state) / n;
            if (prev != 0.0) CHECK(per_site == doctest::Approx(prev).epsilon(0.6));
            prev = per_site;
        }
    }
}

TEST_CASE("short-time coefficients") {
    SUBCASE("eigenstate gives (0, 0)") {
        const auto model = spinfid::models::independent_field(5, 1.0);
        const auto up = spinfid::models::all_up(5);
        const auto [s2, q] = spinfid::short_time_coefficients(model.ensemble, up);
        CHECK(std::abs(s2) < 1e-12);
        CHECK(std::abs(q) < 1e-12);
    }
    SUBCASE("sigma^2 agrees with the variance path") {
        lab::SplitMix64 rng(23);
        const auto model = spinfid::models::randomized(7, rng);
        const auto [s2, q] = spinfid::short_time_coefficients(model.ensemble, model.state);
        CHECK(s2 == doctest::Approx(spinfid::variance(model.ensemble, model.state))
                        .epsilon(1e-10));
    }
    SUBCASE("finite-difference of the exact fidelity reproduces -2 sigma^2") {
        const auto model = spinfid::models::independent_field(6, 1.0);
        const auto [s2, q] = spinfid::short_time_coefficients(model.ensemble, model.state);
        const spinfid::FidelityEvaluator eval(model.ensemble, model.state);
        const double h = 1e-4;
        const double second = (eval.fidelity(h) - 2.0 + eval.fidelity(-h)) / (h * h);
        CHECK(second == doctest::Approx(-2.0 * s2).epsilon(1e-3));
    }
    SUBCASE("quartic term predicts the fidelity residue") {
        lab::SplitMix64 rng(3);
        const auto model = spinfid::models::transverse_ising(6, 1.0, 0.8);
        const auto [s2, q] = spinfid::short_time_coefficients(model.ensemble, model.state);
        const spinfid::FidelityEvaluator eval(model.ensemble, model.state);
        for (double t : {3e-3, 1e-2, 2e-2}) {
            const double resid = eval.fidelity(t) - (1.0 - s2 * t * t);
            CHECK(resid == doctest::Approx(q * t * t * t * t).epsilon(1e-2));
        }
    }
    SUBCASE("fitted quadratic coefficient of -log F equals sigma^2 to 0.1%") {
        lab::SplitMix64 rng(15);
        for (const auto& model :
             {spinfid::models::independent_field(8, 1.0),
              spinfid::models::transverse_ising(8, 1.0, 1.0),
              spinfid::models::randomized(6, rng)}) {
            const auto [s2, q] = spinfid::short_time_coefficients(model.ensemble, model.state);
            const spinfid::FidelityEvaluator eval(model.ensemble, model.state);
            const double sigma = std::sqrt(s2);
            // least squares of -log F = a t^2 + b t^4 on (0, 0.01/sigma]
            double s22 = 0, s24 = 0, s44 = 0, sy2 = 0, sy4 = 0;
            for (int i = 1; i <= 20; ++i) {
                const double t = 0.01 / sigma * i / 20.0;
                const double y = -std::log(eval.fidelity(t));
                const double t2 = t * t, t4 = t2 * t2;
                s22 += t2 * t2;
                s24 += t2 * t4;
                s44 += t4 * t4;
                sy2 += y * t2;
                sy4 += y * t4;
            }
            const double det = s22 * s44 - s24 * s24;
            const double a = (sy2 * s44 - sy4 * s24) / det;
            CHECK(a == doctest::Approx(s2).epsilon(1e-3));
        }
    }
}

TEST_CASE("convergence study") {
    std::vector<double> taus(31);
    for (int i = 0; i < 31; ++i) taus[i] = 3.0 * i / 30.0;

    SUBCASE("independent-field deviation decreases with N") {
        const std::vector<int> ns{4, 12};
        const auto table =
            spinfid::convergence_study(spinfid::Family::independent_field, ns, taus, 1.0,
                                       0.0, 0.0);
        REQUIRE(table.n_rows() == 2);
        CHECK(table.at(1, 2) < table.at(0, 2));
    }
    SUBCASE("single-N input yields a single row") {
        const std::vector<int> ns{6};
        const auto table = spinfid::convergence_study(spinfid::Family::transverse_ising,
                                                      ns, taus, 1.0, 1.0, 1.0);
        CHECK(table.n_rows() == 1);
        CHECK(table.at(0, 0) == 6.0);
    }
    SUBCASE("tau = 0 contributes zero deviation") {
        const std::vector<int> ns{4};
        const std::vector<double> zero{0.0};
        const auto table = spinfid::convergence_study(spinfid::Family::independent_field,
                                                      ns, zero, 1.0, 0.0, 0.0);
        CHECK(table.at(0, 2) < 1e-13);
    }
}
