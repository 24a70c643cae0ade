#ifndef DECLAB_TFVLASOV_FIELDS_HPP
#define DECLAB_TFVLASOV_FIELDS_HPP

#include <Eigen/Dense>

#include "declab/errors.hpp"

namespace declab::tfvlasov {

using RealVector = Eigen::VectorXd;

/// All strictly positive; hbar stays an explicit parameter in this module.
struct PhysicalConstants {
    double hbar = 1.0;
    double mass = 1.0;
    double charge = 1.0;
    int z_charges = 1;

    void validate() const {
        if (hbar <= 0 || mass <= 0 || charge <= 0)
            throw ValidationError("physical constants must be strictly positive");
        if (z_charges < 1) throw ValidationError("Z must be >= 1");
    }
};

enum class GridGeometry {
    radial3d,   // cell-centered radii r_i = (i + 1/2) dr, volume element 4 pi r^2 dr
    periodic1d, // x_i = i dx on [0, L)
    line1d      // bounded segment, nodes inclusive of both ends
};

struct SpatialGrid {
    GridGeometry geometry = GridGeometry::periodic1d;
    int n = 0;
    double extent = 0.0; // L (periodic), r_max (radial), or segment length (line)
    double origin = 0.0; // left end for line grids

    void validate() const {
        if (n < 4) throw ValidationError("grid needs at least 4 points");
        if (extent <= 0) throw ValidationError("grid extent must be positive");
    }
    double spacing() const {
        return geometry == GridGeometry::line1d ? extent / (n - 1) : extent / n;
    }
    double coord(int i) const {
        switch (geometry) {
            case GridGeometry::radial3d: return (i + 0.5) * spacing();
            case GridGeometry::periodic1d: return i * spacing();
            default: return origin + i * spacing();
        }
    }
};

/// Non-negative particle density on a radial or periodic grid.
class DensityField {
public:
    DensityField(SpatialGrid grid, RealVector values);
    const SpatialGrid& grid() const { return grid_; }
    const RealVector& values() const { return values_; }
    /// Particle number: 4 pi int rho r^2 dr (radial) or int rho dx (periodic).
    double integral() const;

private:
    SpatialGrid grid_;
    RealVector values_;
};

/// Real potential on any grid geometry; periodic potentials are gauge-fixed
/// to zero spatial mean at construction.
class PotentialField {
public:
    PotentialField(SpatialGrid grid, RealVector values);
    const SpatialGrid& grid() const { return grid_; }
    const RealVector& values() const { return values_; }
    double value_at_node(int i) const { return values_(i); }
    /// Linear interpolation at an arbitrary coordinate (radius for radial grids).
    double sample(double coordinate) const;

private:
    SpatialGrid grid_;
    RealVector values_;
};

} // namespace declab::tfvlasov

#endif
