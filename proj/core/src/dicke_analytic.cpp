#include "declab/dicke/dicke.hpp"

#include <cmath>
#include <numbers>

namespace declab::dicke {

double evolution_phase(double t, const PolarizationSector& sector, const DickeParams& p) {
    p.validate();
    const double b = sector.s * p.g / p.omega;
    return b * b * (p.omega * t - std::sin(p.omega * t));
}

Complex displacement_amplitude(double t, const PolarizationSector& sector,
                               const DickeParams& p) {
    p.validate();
    const double b = sector.s * p.g / p.omega;
    return b * (1.0 - std::polar(1.0, p.omega * t));
}

namespace {

// <m|D(alpha)|n> for m >= n:
//   sqrt(n!/m!) alpha^{m-n} e^{-|alpha|^2/2} L_n^{(m-n)}(|alpha|^2);
// m < n follows by D(alpha)† = D(-alpha).  Magnitudes are assembled in log
// space so large cutoffs and strong displacements stay in range.
struct DisplacedNumberTable {
    // laguerre(k, n) = L_n^{(k)}(x) for n + k <= cutoff
    std::vector<std::vector<double>> laguerre;
    double x;

    DisplacedNumberTable(int cutoff, double x_) : x(x_) {
        laguerre.resize(cutoff + 1);
        for (int k = 0; k <= cutoff; ++k) {
            auto& row = laguerre[k];
            row.resize(cutoff - k + 1);
            row[0] = 1.0;
            if (row.size() > 1) row[1] = 1.0 + k - x;
            for (int n = 1; n + 1 < static_cast<int>(row.size()); ++n)
                row[n + 1] = ((2 * n + 1 + k - x) * row[n] - (n + k) * row[n - 1]) / (n + 1);
        }
    }
};

} // namespace

Complex analytic_expectation(double t, const RadiationState& state, const DickeParams& p,
                             const PolarizationSector& sector) {
    p.validate();
    const int cutoff = state.fock_cutoff();
    if (state.max_support() > cutoff - 2)
        throw CutoffTooSmallError("radiation state has support within 2 levels of cutoff " +
                                  std::to_string(cutoff));

    const Complex alpha = displacement_amplitude(t, sector, p);
    const double x = std::norm(alpha);
    const ComplexVector& c = state.coefficients();
    const int nmax = state.max_support();

    Complex sum(0.0, 0.0);
    if (x == 0.0) {
        // D(0) = 1: only the diagonal survives
        for (int n = 0; n <= nmax; ++n)
            sum += std::norm(c(n)) * std::polar(1.0, -n * p.omega * t);
    } else {
        const DisplacedNumberTable tab(nmax, x);
        const double lr = 0.5 * std::log(x); // log |alpha|
        const double th = std::arg(alpha);
        std::vector<double> lgam(nmax + 2);
        for (int n = 0; n <= nmax + 1; ++n) lgam[n] = std::lgamma(n + 1.0);

        for (int k = 0; k <= nmax; ++k) {
            for (int n = 0; n + k <= nmax; ++n) {
                const int m = n + k;
                if (std::abs(c(m)) == 0.0 && std::abs(c(n)) == 0.0) continue;
                const double mag =
                    std::exp(0.5 * (lgam[n] - lgam[m]) + k * lr - 0.5 * x) * tab.laguerre[k][n];
                // upper element <m|D|n>, m >= n
                const Complex dmn = mag * std::polar(1.0, k * th);
                sum += std::conj(c(m)) * c(n) * std::polar(1.0, -m * p.omega * t) * dmn;
                if (k > 0) {
                    // lower element <n|D|m> = sqrt(n!/m!) (-conj(alpha))^{m-n} e^{-x/2} L_n^{(k)}(x)
                    const Complex dnm =
                        mag * std::pow(-1.0, k) * std::polar(1.0, -k * th);
                    sum += std::conj(c(n)) * c(m) * std::polar(1.0, -n * p.omega * t) * dnm;
                }
            }
        }
    }
    return std::polar(1.0, evolution_phase(t, sector, p)) * sum;
}

double envelope(double t, const DickeParams& p) {
    p.validate();
    const double b = p.n_atoms * p.g / p.omega;
    return std::exp(-b * b * (1.0 - std::cos(p.omega * t)));
}

double recurrence_width(const DickeParams& p) {
    p.validate();
    return 1.0 / (p.n_atoms * p.g);
}

} // namespace declab::dicke
