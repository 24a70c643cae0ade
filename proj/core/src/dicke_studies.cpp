#include "declab/dicke/studies.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace declab::dicke {

using qcore::Propagator;
using qcore::StateVector;

namespace {

// c ⊗ |s = N>_x on the composite space (field factor first)
StateVector polarized_initial_state(const DickeParams& p, const RadiationState& state) {
    const qcore::CollectiveSpinSpace spin(p.n_atoms);
    const auto [jx, jz] = collective_spin(spin);
    Eigen::SelfAdjointEigenSolver<qcore::ComplexMatrix> es(2.0 * jx);
    qcore::ComplexVector chi = es.eigenvectors().col(spin.dim() - 1); // eigenvalue +N
    qcore::ComplexVector psi(state.coefficients().size() * spin.dim());
    for (int n = 0; n < state.coefficients().size(); ++n)
        for (int m = 0; m < spin.dim(); ++m)
            psi(n * spin.dim() + m) = state.coefficients()(n) * chi(m);
    return StateVector::normalized(std::move(psi));
}

} // namespace

ExactRun exact_expectation_run(const DickeParams& p, const RadiationState& state,
                               std::span<const double> t_grid, bool use_full_h) {
    p.validate();
    if (state.fock_cutoff() != p.fock_cutoff)
        throw DimensionMismatchError("radiation state cutoff differs from params cutoff");
    const Operator h = use_full_h ? build_dicke_hamiltonian(p) : build_hf_hamiltonian(p);
    const Propagator prop(h);
    const StateVector psi0 = polarized_initial_state(p, state);
    const int ns = p.n_atoms + 1;
    const int top = p.fock_cutoff * ns;

    ExactRun run;
    run.fock_cutoff = p.fock_cutoff;
    run.t.assign(t_grid.begin(), t_grid.end());
    run.expectation.reserve(t_grid.size());
    for (double t : t_grid) {
        const StateVector psit = prop.apply(psi0, t);
        run.expectation.push_back(psi0.amplitudes().dot(psit.amplitudes()));
        double occ = 0.0;
        for (int m = 0; m < ns; ++m) occ += std::norm(psit[top + m]);
        run.max_cutoff_occupation = std::max(run.max_cutoff_occupation, occ);
    }
    run.truncation_suspect = run.max_cutoff_occupation > 1e-8;
    return run;
}

int adequate_fock_cutoff(const DickeParams& p, const RadiationState& state) {
    // peak mean occupation of the displaced run is |2 N g / omega|^2
    const double nbar = std::pow(2.0 * p.n_atoms * p.g / p.omega, 2);
    const int m = static_cast<int>(
        std::ceil(nbar + 12.0 * std::sqrt(nbar + 1.0) + state.max_support() + 25.0));
    return std::max(m, p.fock_cutoff);
}

double peak_fwhm(const std::function<double(double)>& profile, double t_peak,
                 double half_window, double resolution) {
    if (resolution <= 0.0 || half_window <= resolution)
        throw ValidationError("peak_fwhm: bad window/resolution");
    const int n_side = static_cast<int>(std::ceil(half_window / resolution));
    const double peak = profile(t_peak);
    if (peak <= 0.0) throw FitFailedError("peak_fwhm: non-positive peak value");
    const double half = 0.5 * peak;

    auto crossing = [&](int dir) {
        double prev = peak;
        for (int i = 1; i <= n_side; ++i) {
            const double t = t_peak + dir * i * resolution;
            const double v = profile(t);
            if (v <= half) {
                // linear interpolation between the straddling samples
                const double frac = (prev - half) / (prev - v);
                return (i - 1 + frac) * resolution;
            }
            prev = v;
        }
        throw FitFailedError("peak_fwhm: half-maximum not reached inside window");
    };
    return crossing(+1) + crossing(-1);
}

double revival_fwhm(const DickeParams& p, const RadiationState& state) {
    const PolarizationSector full(p.n_atoms, p.n_atoms);
    const double t_peak = 2.0 * std::numbers::pi / p.omega;
    const double res = 1.0 / (10.0 * p.n_atoms * p.g);
    const double half_window =
        std::min(8.0 / (p.n_atoms * p.g), 0.45 * t_peak); // stay clear of the neighbors
    auto profile = [&](double t) {
        return std::norm(analytic_expectation(t, state, p, full));
    };
    return peak_fwhm(profile, t_peak, half_window, res);
}

lab::ResultTable collapse_study(double omega, double g, std::span<const int> n_atoms,
                                int fock_cutoff) {
    if (n_atoms.size() < 3)
        throw FitFailedError("collapse_study needs at least 3 atom counts");
    if (!std::is_sorted(n_atoms.begin(), n_atoms.end()))
        throw ValidationError("collapse_study expects an increasing N list");
    lab::ResultTable table({{"n_atoms", "1"}, {"fwhm", "omega^-1"}, {"analytic_width", "omega^-1"}});
    for (int n : n_atoms) {
        DickeParams p{omega, 0.0, g, n, fock_cutoff};
        const RadiationState state = RadiationState::number(fock_cutoff, 1);
        const double w = revival_fwhm(p, state);
        table.add_row(std::array{static_cast<double>(n), w, recurrence_width(p)});
    }
    return table;
}

lab::ResultTable delta_robustness(const DickeParams& p, const RadiationState& state,
                                  std::span<const double> t_grid) {
    const ExactRun full = exact_expectation_run(p, state, t_grid, true);
    const ExactRun hf = exact_expectation_run(p, state, t_grid, false);
    lab::ResultTable table(
        {{"t", "omega^-1"}, {"abs_u_full", "1"}, {"abs_u_hf", "1"}, {"abs_deviation", "1"}});
    for (std::size_t i = 0; i < full.t.size(); ++i) {
        const double af = std::abs(full.expectation[i]);
        const double ah = std::abs(hf.expectation[i]);
        table.add_row(std::array{full.t[i], af, ah, std::abs(af - ah)});
    }
    return table;
}

} // namespace declab::dicke
