#ifndef DECLAB_TFVLASOV_VLASOV_HPP
#define DECLAB_TFVLASOV_VLASOV_HPP

#include <memory>
#include <span>
#include <vector>

#include "declab/lab/result_table.hpp"
#include "declab/tfvlasov/fields.hpp"
#include "declab/tfvlasov/poisson.hpp"

namespace declab::tfvlasov {

struct PhaseSpaceGridSpec {
    int nx = 128;
    int nv = 256;
    double length = 4.0 * 3.14159265358979323846; // periodic in x
    double v_max = 6.0;                           // v in [-v_max, v_max], cell-centered

    void validate() const;
    double dx() const { return length / nx; }
    double dv() const { return 2.0 * v_max / nv; }
    double x(int i) const { return i * dx(); }
    double v(int j) const { return -v_max + (j + 0.5) * dv(); }
};

/// W(x, v) on the periodic-x, bounded-v grid; stored as a (nv x nx) matrix.
struct PhaseSpaceDistribution {
    PhaseSpaceGridSpec spec;
    Eigen::MatrixXd w; // w(j, i) = W(x_i, v_j)

    double mass() const { return w.sum() * spec.dx() * spec.dv(); }
    double momentum() const;
    RealVector density() const; // int W dv per x node

    /// Validates W >= 0 (initial-state invariant).
    static PhaseSpaceDistribution from_values(PhaseSpaceGridSpec spec, Eigen::MatrixXd w);
};

/// Semi-Lagrangian Vlasov-Poisson stepper with cubic-spline interpolation:
/// Strang split as half x-advection, Poisson solve + full velocity kick,
/// half x-advection. The electrostatic acceleration is +grad V / m for the
/// potential solved from V'' = 4 pi e^2 (rho - background); with the Fermi
/// term enabled the kick uses (grad V - grad E_F) / m.
///
/// CFL preconditions enforced per step: max|v| dt <= dx and max|a| dt <= dv.
/// Advection is conservative by construction (periodic splines conserve the
/// discrete sum exactly; the bounded-v direction leaks only through
/// negligible boundary values, which are monitored).
class VlasovSolver {
public:
    enum class ForceModel {
        self_consistent, // Poisson force (plus the Fermi term when enabled)
        none,            // pure advection, for ballistic accuracy tests
    };

    VlasovSolver(PhaseSpaceGridSpec spec, PhysicalConstants constants, bool fermi_term,
                 ForceModel force = ForceModel::self_consistent);
    ~VlasovSolver();
    VlasovSolver(const VlasovSolver&) = delete;
    VlasovSolver& operator=(const VlasovSolver&) = delete;

    struct StepInfo {
        double field_energy = 0.0; // int |grad V|^2 dx at the half step
    };
    StepInfo step(PhaseSpaceDistribution& w, double dt) const;

    /// Acceleration field from the current density (diagnostic access).
    RealVector acceleration(const PhaseSpaceDistribution& w) const;
    double field_energy(const PhaseSpaceDistribution& w) const;

    const PhysicalConstants& constants() const { return constants_; }

private:
    class PeriodicSpline;
    class NaturalSpline;
    struct FieldSolve {
        RealVector acceleration;
        double field_energy = 0.0;
    };

    PhaseSpaceGridSpec spec_;
    PhysicalConstants constants_;
    bool fermi_term_;
    ForceModel force_model_;
    std::unique_ptr<PeriodicSpline> x_spline_;
    std::unique_ptr<NaturalSpline> v_spline_;

    FieldSolve solve_fields(const PhaseSpaceDistribution& w) const;
    void advect_x(PhaseSpaceDistribution& w, double dt) const;
    void kick_v(PhaseSpaceDistribution& w, double dt, const RealVector& accel) const;
    void check_boundary_leak(const PhaseSpaceDistribution& w) const;
};

// --- benchmark runs ----------------------------------------------------------

struct LandauRunParams {
    enum class Profile { maxwell, two_stream };
    Profile profile = Profile::maxwell;
    double k_mode = 0.5;   // perturbation wavenumber; box length is 2 pi / k
    double epsilon = 1e-3; // <= 0.01 (linear regime)
    int nx = 128;
    int nv = 256;
    double v_max = 6.0;
    double v0 = 2.4; // beam speed for the two-stream profile
    double t_final = 60.0;
    double dt = 0.0; // 0 selects 0.9 dx / v_max
    bool fermi_term = false;
    double hbar = 1.0; // enters only through the Fermi term
    int sample_stride = 1;
};

/// Initial state W0(v) (1 + eps cos(k x)) in normalized units (plasma
/// frequency and thermal velocity 1, i.e. 4 pi e^2 = 1 with unit mean
/// density). Emits rows (t, field_energy, total_mass, momentum).
lab::ResultTable landau_run(const LandauRunParams& params);

struct EnvelopeFit {
    double gamma = 0.0; // amplitude rate: field energy decays as e^{2 gamma t}
    double rms_residual = 0.0;
    int n_peaks = 0;
    bool from_peaks = true; // false: monotone-growth fallback fit
};

/// Fits the exponential envelope of the field-energy series: on the peak
/// maxima when at least 4 oscillation peaks exist (the first peak is dropped
/// as transient), otherwise on the raw tail when the series grows.
/// Throws FitFailedError if neither applies.
EnvelopeFit fit_field_envelope(std::span<const double> ts, std::span<const double> es,
                               double t_min = 0.0, double t_max = 1e300);

enum class StabilityVerdict { damped, undamped, no_signal };

/// DAMPED when the fitted rate is negative with fit residual below the
/// confidence threshold, NO_SIGNAL when the field energy never rises above
/// the numerical floor, UNDAMPED otherwise.
StabilityVerdict stability_verdict(const lab::ResultTable& run,
                                   double residual_threshold = 0.5);

const char* to_string(StabilityVerdict v);

} // namespace declab::tfvlasov

#endif
