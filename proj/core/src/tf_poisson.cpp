#include "declab/tfvlasov/poisson.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

namespace declab::tfvlasov {

namespace {

std::vector<std::complex<double>> forward(const RealVector& f) {
    Eigen::FFT<double> fft;
    std::vector<double> in(f.data(), f.data() + f.size());
    std::vector<std::complex<double>> out;
    fft.fwd(out, in);
    return out;
}

RealVector inverse(std::vector<std::complex<double>>& spec, int n) {
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> out;
    fft.inv(out, spec);
    RealVector v(n);
    for (int i = 0; i < n; ++i) v(i) = out[i].real();
    return v;
}

} // namespace

PotentialField poisson_solve(const DensityField& rho, double background,
                             const PhysicalConstants& k) {
    k.validate();
    if (rho.grid().geometry != GridGeometry::periodic1d)
        throw GeometryMismatchError("poisson_solve expects a periodic grid");
    const SpatialGrid& grid = rho.grid();
    const int n = grid.n;
    const double dx = grid.spacing();
    const double coeff = 4.0 * std::numbers::pi * k.charge * k.charge;

    RealVector src = coeff * (rho.values().array() - background).matrix();
    const double mean = src.mean();
    if (std::abs(mean) > 1e-10 * std::max(1.0, src.cwiseAbs().maxCoeff()))
        throw NonNeutralSourceError("source mean " + std::to_string(mean) +
                                    " (neutralizing background mismatch)");

    auto spec = forward(src);
    spec[0] = 0.0; // zero-mean gauge
    for (int m = 1; m < n; ++m) {
        const double sym = -(2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * m / n)) / (dx * dx);
        spec[m] /= sym;
    }
    return PotentialField(grid, inverse(spec, n));
}

RealVector spectral_gradient(const PotentialField& v) {
    if (v.grid().geometry != GridGeometry::periodic1d)
        throw GeometryMismatchError("spectral_gradient expects a periodic grid");
    const int n = v.grid().n;
    const double length = v.grid().extent;
    auto spec = forward(v.values());
    for (int m = 0; m < n; ++m) {
        const int mm = m <= n / 2 ? m : m - n;
        double km = 2.0 * std::numbers::pi * mm / length;
        if (n % 2 == 0 && m == n / 2) km = 0.0; // drop Nyquist
        spec[m] *= std::complex<double>(0.0, km);
    }
    return inverse(spec, n);
}

} // namespace declab::tfvlasov
