#include <doctest.h>

#include <cmath>
#include <numbers>

#include "declab/dicke/studies.hpp"
#include "declab/lab/fit.hpp"
#include "declab/lab/rng.hpp"

using namespace declab;
using dicke::DickeParams;
using dicke::PolarizationSector;
using dicke::RadiationState;
using qcore::Complex;
using qcore::ComplexVector;
using qcore::Operator;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<double> time_grid(double t_max, int n) {
    std::vector<double> ts(n);
    for (int i = 0; i < n; ++i) ts[i] = t_max * i / (n - 1);
    return ts;
}
} // namespace

TEST_CASE("dicke hamiltonian construction") {
    SUBCASE("decoupled limit: oscillator spectrum with (N+1)-fold degeneracy") {
        // g is required positive; make the coupling negligible instead of zero
        DickeParams p{1.0, 0.0, 1e-14, 3, 6};
        const Operator h = dicke::build_dicke_hamiltonian(p);
        Eigen::SelfAdjointEigenSolver<Operator> es(h);
        const auto& w = es.eigenvalues();
        for (int n = 0; n <= 6; ++n)
            for (int d = 0; d < 4; ++d)
                CHECK(w(n * 4 + d) == doctest::Approx(n).epsilon(1e-10));
    }
    SUBCASE("hermiticity for random valid parameters") {
        lab::SplitMix64 rng(2);
        for (int rep = 0; rep < 4; ++rep) {
            DickeParams p{0.5 + rng.next_double(), rng.next_double(),
                          0.05 + 0.3 * rng.next_double(), 2 + int(rng.next_u64() % 5),
                          8 + int(rng.next_u64() % 8)};
            const Operator h = dicke::build_dicke_hamiltonian(p);
            CHECK(qcore::hermiticity_defect(h) < 1e-12);
        }
    }
    SUBCASE("single atom at resonance: lowest Rabi splitting about 2g") {
        const double g = 0.01;
        DickeParams p{1.0, 1.0, g, 1, 24};
        const Operator h = dicke::build_dicke_hamiltonian(p);
        Eigen::SelfAdjointEigenSolver<Operator> es(h);
        const double split = es.eigenvalues()(2) - es.eigenvalues()(1);
        CHECK(split == doctest::Approx(2.0 * g).epsilon(2e-2));
    }
    SUBCASE("parameter validation") {
        CHECK_THROWS_AS(dicke::build_dicke_hamiltonian(DickeParams{-1.0, 0.0, 0.1, 2, 4}),
                        ValidationError);
        CHECK_THROWS_AS(dicke::build_dicke_hamiltonian(DickeParams{1.0, 0.0, -0.1, 2, 4}),
                        ValidationError);
    }
}

TEST_CASE("integrable hamiltonian H_F") {
    DickeParams p{1.0, 0.7, 0.25, 4, 12};
    SUBCASE("equals the full hamiltonian at delta = 0") {
        DickeParams q = p;
        q.delta = 0.0;
        const Operator a = dicke::build_hf_hamiltonian(p);
        const Operator b = dicke::build_dicke_hamiltonian(q);
        CHECK((a - b).cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("commutes with the total polarization") {
        const Operator h = dicke::build_hf_hamiltonian(p);
        const auto [jx, jz] = qcore::collective_spin(qcore::CollectiveSpinSpace(p.n_atoms));
        const Operator pol = qcore::tensor(
            Operator::Identity(p.fock_cutoff + 1, p.fock_cutoff + 1), Operator(2.0 * jx));
        CHECK((h * pol - pol * h).cwiseAbs().maxCoeff() < 1e-12);
    }
    SUBCASE("sector spectrum matches the displaced oscillator") {
        // freeze the spin sector: H_s = w n + s g (a + a†) has levels
        // n w - s^2 g^2 / w up to truncation corrections
        const double omega = 1.0, g = 0.2;
        const int s = 4, m = 60;
        const auto [a, adag] = qcore::fock_ladder(qcore::TruncatedFockSpace(m));
        const Operator h_sector =
            omega * (adag * a) + (s * g) * (a + adag);
        Eigen::SelfAdjointEigenSolver<Operator> es(h_sector);
        for (int n = 0; n < 10; ++n)
            CHECK(es.eigenvalues()(n) ==
                  doctest::Approx(n * omega - s * s * g * g / omega).epsilon(1e-10));
    }
}

TEST_CASE("polarization sector validation") {
    CHECK_NOTHROW(PolarizationSector(4, 4));
    CHECK_NOTHROW(PolarizationSector(-2, 4));
    CHECK_THROWS_AS(PolarizationSector(3, 4), ValidationError);
    CHECK_THROWS_AS(PolarizationSector(6, 4), ValidationError);
}

TEST_CASE("evolution phase xi") {
    DickeParams p{2.0, 0.0, 0.3, 5, 8};
    const PolarizationSector s(5, 5);
    CHECK(dicke::evolution_phase(0.0, s, p) == 0.0);
    const double t = kTwoPi / p.omega;
    const double expected = std::pow(5 * 0.3 / 2.0, 2) * kTwoPi;
    CHECK(dicke::evolution_phase(t, s, p) == doctest::Approx(expected).epsilon(1e-14));
    // quadratic in the sector eigenvalue
    DickeParams p2{2.0, 0.0, 0.3, 10, 8};
    const PolarizationSector s2(10, 10);
    for (double tt : {0.3, 1.1, 4.0})
        CHECK(dicke::evolution_phase(tt, s2, p2) ==
              doctest::Approx(4.0 * dicke::evolution_phase(tt, s, p)).epsilon(1e-13));
}

TEST_CASE("displacement amplitude alpha") {
    DickeParams p{1.5, 0.0, 0.2, 3, 8};
    const PolarizationSector s(3, 3);
    CHECK(std::abs(dicke::displacement_amplitude(0.0, s, p)) == 0.0);
    const double t_half = std::numbers::pi / p.omega;
    CHECK(std::abs(dicke::displacement_amplitude(t_half, s, p) -
                   Complex(2.0 * 3 * 0.2 / 1.5, 0.0)) < 1e-14);
    for (double t : time_grid(8.0, 17)) {
        const Complex a = dicke::displacement_amplitude(t, s, p);
        const double expected =
            2.0 * std::pow(3 * 0.2 / 1.5, 2) * (1.0 - std::cos(p.omega * t));
        CHECK(std::norm(a) == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("analytic expectation") {
    SUBCASE("vacuum modulus equals the envelope") {
        DickeParams p{1.0, 0.0, 0.25, 6, 16};
        const PolarizationSector s(6, 6);
        const auto vac = RadiationState::vacuum(p.fock_cutoff);
        for (double t : time_grid(kTwoPi, 23)) {
            const double lhs = std::abs(dicke::analytic_expectation(t, vac, p, s));
            CHECK(lhs == doctest::Approx(dicke::envelope(t, p)).epsilon(1e-12));
        }
    }
    SUBCASE("full revival at one period for several states") {
        DickeParams p{1.0, 0.0, 0.3, 8, 40};
        const PolarizationSector s(8, 8);
        for (const auto& state :
             {RadiationState::vacuum(40), RadiationState::number(40, 3),
              RadiationState::coherent(40, Complex(1.2, 0.0))}) {
            const double mod = std::abs(dicke::analytic_expectation(kTwoPi, state, p, s));
            CHECK(std::abs(mod - 1.0) < 1e-10);
        }
    }
    SUBCASE("modulus is periodic with period 2 pi / omega") {
        DickeParams p{1.4, 0.0, 0.2, 5, 40};
        const PolarizationSector s(5, 5);
        const auto state = RadiationState::coherent(40, Complex(0.8, 0.3));
        for (double t : time_grid(4.0, 9)) {
            const double a = std::abs(dicke::analytic_expectation(t, state, p, s));
            const double b =
                std::abs(dicke::analytic_expectation(t + kTwoPi / p.omega, state, p, s));
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
        }
    }
    SUBCASE("modulus never exceeds one") {
        lab::SplitMix64 rng(9);
        DickeParams p{1.0, 0.0, 0.4, 7, 32};
        const PolarizationSector s(7, 7);
        ComplexVector c(33);
        for (int i = 0; i <= 32; ++i)
            c(i) = i <= 20 ? Complex(rng.next_gaussian(), rng.next_gaussian()) : 0.0;
        const RadiationState state(c / c.norm());
        for (double t : time_grid(kTwoPi, 40))
            CHECK(std::abs(dicke::analytic_expectation(t, state, p, s)) <= 1.0 + 1e-12);
    }
    SUBCASE("cutoff guard") {
        DickeParams p{1.0, 0.0, 0.1, 2, 8};
        const PolarizationSector s(2, 2);
        const auto state = RadiationState::number(8, 7); // within 2 of the cutoff
        CHECK_THROWS_AS(dicke::analytic_expectation(0.5, state, p, s), CutoffTooSmallError);
    }
}

TEST_CASE("analytic expectation matches exact propagation") {
    DickeParams p{1.0, 0.0, 0.2, 4, 32};
    const PolarizationSector s(4, 4);
    const auto state = RadiationState::number(32, 1);
    const auto ts = time_grid(kTwoPi, 50);
    const auto run = dicke::exact_expectation_run(p, state, ts, false);
    REQUIRE(!run.truncation_suspect);
    double max_dev = 0.0;
    for (std::size_t i = 0; i < ts.size(); ++i)
        max_dev = std::max(max_dev,
                           std::abs(run.expectation[i] -
                                    dicke::analytic_expectation(ts[i], state, p, s)));
    CHECK(max_dev < 1e-8);
}

TEST_CASE("short-time gaussian decay of the envelope") {
    // -log |<U_F>|^2 / t^2 -> N^2 g^2 as t -> 0 (vacuum state)
    for (int n : {4, 8}) {
        DickeParams p{1.0, 0.0, 0.1, n, 8};
        const double t = 1e-3 / (n * p.g);
        const double rate = -2.0 * std::log(dicke::envelope(t, p)) / (t * t);
        CHECK(rate == doctest::Approx(n * n * p.g * p.g).epsilon(1e-3));
    }
}

TEST_CASE("envelope values") {
    DickeParams p{1.0, 0.0, 0.1, 2, 8};
    CHECK(dicke::envelope(0.0, p) == 1.0);
    CHECK(dicke::envelope(std::numbers::pi, p) == doctest::Approx(std::exp(-0.08)));
    // near zero the envelope is Gaussian with rate N^2 g^2 / 2
    const double t = 1e-3;
    CHECK(std::log(dicke::envelope(t, p)) ==
          doctest::Approx(-0.5 * 4 * 0.01 * t * t).epsilon(1e-6));
}

TEST_CASE("recurrence width") {
    CHECK(dicke::recurrence_width(DickeParams{1.0, 0.0, 0.1, 10, 8}) ==
          doctest::Approx(1.0));
    CHECK(dicke::recurrence_width(DickeParams{1.0, 0.0, 0.1, 20, 8}) ==
          doctest::Approx(0.5));
    SUBCASE("envelope FWHM matches the closed form for strong collapse") {
        for (int n : {50, 64, 100}) {
            DickeParams p{1.0, 0.0, 0.1, n, 8};
            const double b = n * p.g;
            auto profile = [&](double t) { return dicke::envelope(t, p); };
            const double measured =
                dicke::peak_fwhm(profile, kTwoPi, 6.0 / b, 1.0 / (10.0 * b * 10.0));
            const double expected = 2.0 * std::sqrt(2.0 * std::log(2.0)) / b;
            CHECK(measured == doctest::Approx(expected).epsilon(1e-2));
        }
    }
}

TEST_CASE("collapse study") {
    SUBCASE("slope of the width fit is -1") {
        const std::vector<int> ns{4, 8, 16, 32};
        const auto table = dicke::collapse_study(1.0, 0.1, ns, 8);
        REQUIRE(table.n_rows() == 4);
        std::vector<double> xs, ys;
        for (std::size_t r = 0; r < 4; ++r) {
            xs.push_back(table.at(r, 0));
            ys.push_back(table.at(r, 1));
            CHECK(table.at(r, 2) == doctest::Approx(1.0 / (xs.back() * 0.1)));
        }
        const auto fit = lab::fit_power_law(xs, ys);
        CHECK(fit.exponent > -1.05);
        CHECK(fit.exponent < -0.95);
        for (std::size_t r = 1; r < 4; ++r) CHECK(ys[r] < ys[r - 1]);
    }
    SUBCASE("fewer than three atom numbers is rejected") {
        const std::vector<int> ns{6};
        CHECK_THROWS_AS(dicke::collapse_study(1.0, 0.1, ns, 8), FitFailedError);
    }
}

TEST_CASE("delta robustness") {
    const auto ts = time_grid(kTwoPi, 40);
    SUBCASE("delta = 0 gives identical dynamics") {
        DickeParams p{1.0, 0.0, 0.3, 4, 32};
        const auto table =
            dicke::delta_robustness(p, RadiationState::vacuum(32), ts);
        for (std::size_t r = 0; r < table.n_rows(); ++r)
            CHECK(table.at(r, 3) < 1e-10);
    }
    SUBCASE("deviation starts at zero and is smaller at collapse than at revival") {
        DickeParams p{1.0, 0.1, 0.3, 6, 48};
        const auto table =
            dicke::delta_robustness(p, RadiationState::vacuum(48), ts);
        CHECK(table.at(0, 3) < 1e-12);
        // first collapse near t = pi, first revival near t = 2 pi
        double dev_collapse = 0.0, dev_revival = 0.0;
        for (std::size_t r = 0; r < table.n_rows(); ++r) {
            const double t = table.at(r, 0);
            if (std::abs(t - std::numbers::pi) < 0.5) dev_collapse = std::max(dev_collapse, table.at(r, 3));
            if (std::abs(t - kTwoPi) < 0.5) dev_revival = std::max(dev_revival, table.at(r, 3));
        }
        CHECK(dev_collapse < dev_revival);
    }
}

TEST_CASE("truncation flag trips when the displaced state hits the cutoff") {
    DickeParams p{1.0, 0.0, 0.3, 12, 64};
    const auto ts = time_grid(kTwoPi, 25);
    const auto run = dicke::exact_expectation_run(p, RadiationState::vacuum(64), ts, false);
    CHECK(run.truncation_suspect);
    CHECK(run.max_cutoff_occupation > 1e-8);

    const int m2 = dicke::adequate_fock_cutoff(p, RadiationState::vacuum(64));
    DickeParams p2 = p;
    p2.fock_cutoff = m2;
    const auto run2 = dicke::exact_expectation_run(p2, RadiationState::vacuum(m2), ts, false);
    CHECK(!run2.truncation_suspect);
}
